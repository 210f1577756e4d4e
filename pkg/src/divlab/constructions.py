"""Shift orbits and the circular-shift counterexample family.

``P_k`` is ``Q_k`` with every complement of a member of ``F_k`` swapped for
that member. :func:`apply_swap` does the same for any valid set of
complement-pair swaps, which is also how the projective construction is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import limits
from .errors import BudgetExceeded, ConstructionError, FamilyError
from .setfam import (
    Family,
    IntersectingResult,
    SubsetWord,
    complement_family,
    degree_profile,
    family_difference,
    family_union,
    full_mask,
    is_intersecting,
    is_regular,
    subset_from_elements,
)

MAX_QK_K = 31  # 2k+1 <= 63


def circular_shift(a: SubsetWord) -> SubsetWord:
    """Map every element i to i+1, and n back to 1."""
    n = a.n
    top = a.bits >> (n - 1)
    return SubsetWord(((a.bits << 1) & full_mask(n)) | top, n)


@dataclass(frozen=True)
class ShiftOrbit:
    seed: SubsetWord
    n: int
    orbit: Family


def shift_orbit(seed: SubsetWord) -> ShiftOrbit:
    words, cur = [], seed
    for _ in range(seed.n):
        words.append(cur.bits)
        cur = circular_shift(cur)
    return ShiftOrbit(seed, seed.n, Family(seed.n, words))


def seed_Lk(k: int) -> SubsetWord:
    """{1,2,4} together with the odd numbers 7, 9, ..., 2k-1, inside [2k+1]."""
    if k < 3:
        raise FamilyError(f"seed L_k needs k >= 3, got {k}")
    return subset_from_elements([1, 2, 4, *range(7, 2 * k, 2)], 2 * k + 1)


def build_Fk(k: int) -> Family:
    """Orbit of ``seed_Lk(k)``; size, uniformity, intersection and regularity
    are all checked here and any failure raises :class:`ConstructionError`."""
    seed = seed_Lk(k)
    fam = shift_orbit(seed).orbit
    n = 2 * k + 1
    if len(fam) != n:
        raise ConstructionError(f"F_{k} has {len(fam)} members, expected {n}")
    bad = np.flatnonzero(fam.sizes() != k)
    if bad.size:
        raise ConstructionError(f"F_{k} member of wrong size", fam[int(bad[0])])
    inter = is_intersecting(fam, method="pairwise")
    if not inter:
        raise ConstructionError(f"F_{k} is not intersecting", inter.witness)
    reg = is_regular(fam)
    if reg.degree != k:
        raise ConstructionError(f"F_{k} is not regular of degree {k}", reg.witness)
    return fam


def _check_qk_budget(k: int, budget: int | None) -> None:
    if k < 1 or k > MAX_QK_K:
        raise FamilyError(f"Q_k needs 1 <= k <= {MAX_QK_K}, got {k}")
    size = 1 << (2 * k)
    if not limits.fits(size, budget):
        raise BudgetExceeded(
            f"Q_{k} has {size} members ({size * limits.WORD_BYTES} bytes), "
            f"over the budget of {limits.budget_bytes(budget)} bytes"
        )


def build_Qk(k: int, budget: int | None = None) -> Family:
    """All subsets of [2k+1] with at least k+1 elements (2^(2k) of them)."""
    _check_qk_budget(k, budget)
    n = 2 * k + 1
    chunk = 1 << min(n, 22)
    parts = []
    for lo in range(0, 1 << n, chunk):
        w = np.arange(lo, lo + chunk, dtype=np.uint64)
        parts.append(w[np.bitwise_count(w) >= k + 1])
    return Family._trusted(n, np.concatenate(parts))


def contains_all(base: Family, words: np.ndarray) -> np.ndarray:
    """Boolean mask: which of ``words`` are members of ``base``."""
    if base.words.size == 0:
        return np.zeros(words.shape, dtype=bool)
    pos = np.searchsorted(base.words, words)
    pos[pos >= base.words.size] = 0
    return base.words[pos] == words


def build_Pk(k: int, budget: int | None = None) -> Family:
    fk = build_Fk(k)
    qk = build_Qk(k, budget)
    fbar = complement_family(fk)
    missing = np.flatnonzero(~contains_all(qk, fbar.words))
    if missing.size:
        raise ConstructionError("complement of F_k not inside Q_k", fbar[int(missing[0])])
    return family_union(fk, family_difference(qk, fbar))


@dataclass(frozen=True)
class SwapPlan:
    """Swap out ``complement(S)`` for ``S`` for every ``S`` in ``small_side``."""

    base: Family
    small_side: Family | Sequence[SubsetWord]


def _small_words(plan: SwapPlan) -> np.ndarray:
    small = plan.small_side
    if isinstance(small, Family):
        if small.n != plan.base.n:
            raise FamilyError(f"ground-size mismatch: {plan.base.n} vs {small.n}")
        return small.words
    words = []
    for s in small:
        if s.n != plan.base.n:
            raise FamilyError(f"ground-size mismatch: {plan.base.n} vs {s.n}")
        words.append(s.bits)
    arr = np.asarray(words, dtype=np.uint64)
    uniq, counts = np.unique(arr, return_counts=True)
    if np.any(counts > 1):
        dup = SubsetWord(int(uniq[np.argmax(counts > 1)]), plan.base.n)
        raise FamilyError(f"duplicate small set {dup}")
    return uniq


def _validated(plan: SwapPlan) -> tuple[np.ndarray, np.ndarray]:
    n = plan.base.n
    small = _small_words(plan)
    inside = contains_all(plan.base, small)
    if inside.any():
        s = SubsetWord(int(small[np.argmax(inside)]), n)
        raise FamilyError(f"small set {s} already in base")
    comps = small ^ np.uint64(full_mask(n))
    present = contains_all(plan.base, comps)
    if not present.all():
        s = SubsetWord(int(small[np.argmin(present)]), n)
        raise FamilyError(f"complement of small set {s} missing from base")
    return small, np.sort(comps)


def apply_swap(plan: SwapPlan) -> Family:
    """``(base minus complements of small_side) union small_side``.

    The result has the same size as ``base``. Intersection is not checked
    here; see :func:`swap_is_intersecting`.
    """
    small, comps = _validated(plan)
    n = plan.base.n
    kept = np.setdiff1d(plan.base.words, comps, assume_unique=True)
    return Family._trusted(n, np.union1d(kept, small))


def swap_is_intersecting(plan: SwapPlan) -> IntersectingResult:
    """Decide whether ``apply_swap(plan)`` is intersecting from its parts.

    The result is intersecting iff the kept part of ``base`` is, the small side
    is, and no kept member is disjoint from a small set. Witness pairs are
    reported in canonical order of the swapped family.
    """
    small, comps = _validated(plan)
    n = plan.base.n
    kept = Family._trusted(n, np.setdiff1d(plan.base.words, comps, assume_unique=True))
    small_fam = Family._trusted(n, small)
    witnesses = []
    for part in (kept, small_fam):
        r = is_intersecting(part)
        if not r:
            witnesses.append(tuple(sorted(r.witness)))
    for s in small:
        hits = np.flatnonzero((kept.words & s) == 0)
        if hits.size:
            a, b = SubsetWord(int(s), n), kept[int(hits[0])]
            witnesses.append(tuple(sorted((a, b))))
    if not witnesses:
        return IntersectingResult(True)
    return IntersectingResult(False, min(witnesses))
