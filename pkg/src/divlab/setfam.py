"""Subsets of [n] as machine words and families of them.

Element ``i`` of ``[n] = {1, ..., n}`` lives at bit ``i - 1`` of an unsigned
64-bit word, so ``n`` is capped at 63. A :class:`Family` keeps its members in
a sorted, duplicate-free ``uint64`` array; ascending word value is the
canonical order used for iteration, witnesses and serialization.

A note on notation: the shift map of the constructions and the common degree
of a regular family are traditionally both written sigma. Here they are
separate things, :func:`divlab.constructions.circular_shift` and the
``degree`` field returned by :func:`is_regular`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import _parallel
from .errors import FamilyError

MIN_N = 3
MAX_N = 63

# pairwise scans above this many pairs switch to the up-closure test
PAIRWISE_LIMIT = 10_000_000
CLOSURE_MAX_N = 26


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or not MIN_N <= n <= MAX_N:
        raise FamilyError(f"ground size n={n!r} outside supported range {MIN_N}..{MAX_N}")


def full_mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True, order=True)
class SubsetWord:
    """One subset of [n]; ``bits`` has bit i-1 set iff element i is present."""

    bits: int
    n: int

    def __post_init__(self):
        _check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise FamilyError(f"bits {self.bits:#x} do not fit ground size {self.n}")

    @property
    def elements(self) -> tuple[int, ...]:
        b, out, i = self.bits, [], 1
        while b:
            if b & 1:
                out.append(i)
            b >>= 1
            i += 1
        return tuple(out)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, x: int) -> bool:
        return 1 <= x <= self.n and bool(self.bits >> (x - 1) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def subset_from_elements(elements: Iterable[int], n: int) -> SubsetWord:
    _check_n(n)
    bits = 0
    for x in elements:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            raise FamilyError(f"element {x!r} is not an integer")
        if not 1 <= x <= n:
            raise FamilyError(f"element {x} outside [1, {n}]")
        bit = 1 << (int(x) - 1)
        if bits & bit:
            raise FamilyError(f"duplicate element {x}")
        bits |= bit
    return SubsetWord(bits, n)


def complement(a: SubsetWord) -> SubsetWord:
    return SubsetWord(full_mask(a.n) ^ a.bits, a.n)


class Family:
    """Immutable, canonically ordered set of subsets of [n]."""

    __slots__ = ("n", "words")

    def __init__(self, n: int, words=()):
        _check_n(n)
        arr = np.unique(np.asarray(words, dtype=np.uint64).ravel())
        if arr.size and int(arr[-1]) >> n:
            raise FamilyError(f"member {int(arr[-1]):#x} does not fit ground size {n}")
        arr.flags.writeable = False
        self.n = int(n)
        self.words = arr

    @classmethod
    def _trusted(cls, n: int, words: np.ndarray) -> "Family":
        # words must already be sorted, unique and in range
        fam = cls.__new__(cls)
        words = np.ascontiguousarray(words, dtype=np.uint64)
        words.flags.writeable = False
        fam.n = int(n)
        fam.words = words
        return fam

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], n: int) -> "Family":
        return cls(n, [subset_from_elements(s, n).bits for s in sets])

    @classmethod
    def from_subsets(cls, subsets: Iterable[SubsetWord], n: int) -> "Family":
        words = []
        for s in subsets:
            if s.n != n:
                raise FamilyError(f"member {s} has ground size {s.n}, expected {n}")
            words.append(s.bits)
        return cls(n, words)

    def __len__(self) -> int:
        return int(self.words.size)

    def __iter__(self) -> Iterator[SubsetWord]:
        n = self.n
        return (SubsetWord(int(w), n) for w in self.words)

    def __getitem__(self, idx: int) -> SubsetWord:
        return SubsetWord(int(self.words[idx]), self.n)

    def __contains__(self, a) -> bool:
        if isinstance(a, SubsetWord):
            if a.n != self.n:
                return False
            a = a.bits
        i = int(np.searchsorted(self.words, np.uint64(a)))
        return i < self.words.size and int(self.words[i]) == a

    def __eq__(self, other) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.words, other.words)

    __hash__ = None

    def sizes(self) -> np.ndarray:
        return np.bitwise_count(self.words).astype(np.int64)

    def as_sets(self) -> list[tuple[int, ...]]:
        return [s.elements for s in self]

    def __repr__(self) -> str:
        head = ", ".join(str(s) for s in list(self)[:4])
        more = ", ..." if len(self) > 4 else ""
        return f"Family(n={self.n}, size={len(self)}: [{head}{more}])"


def _check_same_ground(f: Family, g: Family) -> None:
    if f.n != g.n:
        raise FamilyError(f"ground-size mismatch: {f.n} vs {g.n}")


def complement_family(f: Family) -> Family:
    return Family._trusted(f.n, np.sort(f.words ^ np.uint64(full_mask(f.n))))


def family_union(f: Family, g: Family) -> Family:
    _check_same_ground(f, g)
    return Family._trusted(f.n, np.union1d(f.words, g.words))


def family_difference(f: Family, g: Family) -> Family:
    _check_same_ground(f, g)
    return Family._trusted(f.n, np.setdiff1d(f.words, g.words, assume_unique=True))


# ---------------------------------------------------------------- degrees


@dataclass(frozen=True)
class DegreeProfile:
    n: int
    counts: tuple[int, ...]
    total: int

    def degree(self, x: int) -> int:
        """Number of members containing element ``x`` (1-based)."""
        return self.counts[x - 1]


@dataclass(frozen=True)
class DiversityResult:
    diversity: int
    argmax_element: int
    max_degree: int


def _degree_counts(words: np.ndarray, n: int, workers: int | None = None) -> np.ndarray:
    def count(lo, hi):
        chunk = words[lo:hi]
        return np.array(
            [np.count_nonzero(chunk & np.uint64(1 << x)) for x in range(n)], dtype=np.int64
        )

    parts = _parallel.map_chunks(count, int(words.size), workers, min_chunk=1 << 16)
    return np.sum(parts, axis=0, dtype=np.int64) if parts else np.zeros(n, dtype=np.int64)


def degree_profile(f: Family, workers: int | None = None) -> DegreeProfile:
    counts = _degree_counts(f.words, f.n, workers)
    return DegreeProfile(f.n, tuple(int(c) for c in counts), len(f))


def diversity(f: Family, profile: DegreeProfile | None = None) -> DiversityResult:
    """``|F|`` minus the largest star; ties go to the smallest element."""
    if len(f) == 0:
        raise FamilyError("diversity of the empty family is undefined")
    profile = profile or degree_profile(f)
    top = max(profile.counts)
    arg = profile.counts.index(top) + 1
    return DiversityResult(profile.total - top, arg, top)


@dataclass(frozen=True)
class RegularityResult:
    degree: int | None
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.degree is not None


def is_regular(f: Family, profile: DegreeProfile | None = None) -> RegularityResult:
    """Common degree of all elements, or a pair of elements that differ."""
    if len(f) == 0:
        raise FamilyError("regularity of the empty family is undefined")
    counts = (profile or degree_profile(f)).counts
    for x, c in enumerate(counts[1:], start=2):
        if c != counts[0]:
            return RegularityResult(None, (1, x))
    return RegularityResult(counts[0])


# ------------------------------------------------------------ intersecting


@dataclass(frozen=True)
class IntersectingResult:
    intersecting: bool
    witness: tuple[SubsetWord, SubsetWord] | None = None

    def __bool__(self) -> bool:
        return self.intersecting


def _first_disjoint_pairwise(words: np.ndarray, workers: int | None) -> tuple[int, int] | None:
    m = int(words.size)

    def scan(lo, hi):
        for i in range(lo, hi):
            hits = np.flatnonzero((words[i + 1 :] & words[i]) == 0)
            if hits.size:
                return i, i + 1 + int(hits[0])
        return None

    # rows get shorter as i grows, so cut more chunks than workers
    w = _parallel.get_workers() if workers is None else workers
    found = _parallel.map_chunks(scan, m, workers=w if w == 1 else 4 * w, min_chunk=64)
    found = [p for p in found if p is not None]
    return min(found) if found else None


def up_closure(words: np.ndarray, n: int) -> np.ndarray:
    """Boolean indicator over all 2^n words of supersets of some member."""
    up = np.zeros(1 << n, dtype=bool)
    up[words.astype(np.int64)] = True
    for b in range(n):
        view = up.reshape(-1, 2, 1 << b)
        view[:, 1, :] |= view[:, 0, :]
    return up


def _first_disjoint_closure(words: np.ndarray, n: int) -> tuple[int, int] | None:
    # B in F with B <= complement(A) exactly when complement(A) is in the up-closure
    up = up_closure(words, n)
    comps = (words ^ np.uint64(full_mask(n))).astype(np.int64)
    bad = np.flatnonzero(up[comps])
    if not bad.size:
        return None
    i = int(bad[0])
    j = int(np.flatnonzero((words & words[i]) == 0)[0])
    return (i, j) if i < j else (j, i)


def is_intersecting(
    f: Family, method: str = "auto", workers: int | None = None
) -> IntersectingResult:
    """Check every unordered pair of members for a common element.

    The witness is the first disjoint pair ``(i, j)``, ``i < j``, in canonical
    member order, identical for every method and worker count. An empty-set
    member makes the family non-intersecting and appears in the witness. The
    empty family is vacuously intersecting.

    ``method`` is ``"pairwise"`` (explicit scan of all pairs), ``"closure"``
    (superset closure over all 2^n words, n <= 26) or ``"auto"``.
    """
    words, m, n = f.words, len(f), f.n
    if m == 0:
        return IntersectingResult(True)
    if words[0] == 0:
        other = f[1] if m > 1 else f[0]
        return IntersectingResult(False, (f[0], other))
    if method == "auto":
        pairs = m * (m - 1) // 2
        method = "pairwise" if pairs <= PAIRWISE_LIMIT or n > CLOSURE_MAX_N else "closure"
    if method == "pairwise":
        hit = _first_disjoint_pairwise(words, workers)
    elif method == "closure":
        if n > CLOSURE_MAX_N:
            raise FamilyError(f"closure method supports n <= {CLOSURE_MAX_N}")
        hit = _first_disjoint_closure(words, n)
    else:
        raise ValueError(f"unknown method {method!r}")
    if hit is None:
        return IntersectingResult(True)
    return IntersectingResult(False, (f[hit[0]], f[hit[1]]))


# ------------------------------------------------------------------ upsets


@dataclass(frozen=True)
class UpsetResult:
    upset: bool
    witness: tuple[SubsetWord, int] | None = None

    def __bool__(self) -> bool:
        return self.upset


def is_upset(f: Family) -> UpsetResult:
    """Closed under adding one element; witness is ``(A, x)`` with A+x missing."""
    words = f.words
    worst = None  # (member index, element)
    for x in range(1, f.n + 1):
        bit = np.uint64(1 << (x - 1))
        idx = np.flatnonzero((words & bit) == 0)
        if not idx.size:
            continue
        grown = words[idx] | bit
        pos = np.searchsorted(words, grown)
        pos[pos >= words.size] = 0
        missing = idx[words[pos] != grown]
        if missing.size:
            cand = (int(missing[0]), x)
            if worst is None or cand[0] < worst[0]:
                worst = cand
    if worst is None:
        return UpsetResult(True)
    return UpsetResult(False, (f[worst[0]], worst[1]))
