"""Maximum-diversity search over maximal intersecting families.

Adding a set to an intersecting family raises its size by one and its largest
star by at most one, so diversity never drops; the maximum is therefore always
attained by a maximal intersecting family. Over [n] with n odd such a family
holds exactly one set from each complementary pair {A, complement(A)}: it
cannot hold both (they are disjoint) and if it held neither, the larger one of
the pair would meet every member and could be added. Both searches below work
in that space of pair choices.

``exhaustive_max_diversity`` enumerates all 2^(2^(n-1)) choices (n <= 5).
``hillclimb_diversity`` walks it by single pair swaps, optionally with block
moves that swap a whole family in at once. Hill-climb results are lower
bounds, nothing more.

Randomness comes from numpy's PCG64 (O'Neill's permuted congruential
generator, 128-bit state, XSL-RR output) read through ``random_raw`` so the
byte stream, and hence every report, is fixed by the seed on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _parallel
from .constructions import build_Qk
from .errors import FamilyError
from .setfam import (
    Family,
    SubsetWord,
    diversity,
    full_mask,
    is_intersecting,
)

EXHAUSTIVE_MAX_N = 5
HILLCLIMB_MIN_N, HILLCLIMB_MAX_N = 7, 25


@dataclass(frozen=True)
class SearchReport:
    ground_n: int
    best_diversity: int
    best_family: Family
    visited: int
    method: str
    rng_seed: int | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "method": self.method,
            "n": str(self.ground_n),
            "best_diversity": str(self.best_diversity),
            "best_family_size": str(len(self.best_family)),
            "visited": str(self.visited),
        }
        if self.rng_seed is not None:
            out["rng_seed"] = str(self.rng_seed)
        out.update({k: str(v) for k, v in self.extra.items()})
        return out


def _check_odd(n: int) -> None:
    if n % 2 == 0:
        raise FamilyError(f"n must be odd, got {n}")


def _small_sides(n: int) -> np.ndarray:
    w = np.arange(1 << n, dtype=np.uint64)
    return w[np.bitwise_count(w) <= (n - 1) // 2]


# ------------------------------------------------------------- exhaustive


def exhaustive_max_diversity(n: int, workers: int | None = None) -> SearchReport:
    """True maximum diversity over all intersecting families on [n], n in {3, 5}.

    Ties between maximizers go to the smallest family in canonical order
    (members sorted, then compared lexicographically).
    """
    _check_odd(n)
    if n > EXHAUSTIVE_MAX_N:
        raise FamilyError(
            f"exhaustive search supports n <= {EXHAUSTIVE_MAX_N}; use hillclimb_diversity"
        )
    if n < 3:
        raise FamilyError(f"n must be >= 3, got {n}")
    reps = _small_sides(n)
    comps = reps ^ np.uint64(full_mask(n))
    npairs = int(reps.size)
    # disjoint[p, r, b, c]: choice b for pair p and c for pair r gives disjoint sets
    sides = np.stack([reps, comps], axis=1)
    disjoint = (sides[:, None, :, None] & sides[None, :, None, :]) == 0
    total = 1 << npairs

    def scan(lo, hi):
        c = np.arange(lo, hi, dtype=np.int64)
        bits = ((c[:, None] >> np.arange(npairs)) & 1).astype(bool)
        chosen = np.where(bits, comps[None, :], reps[None, :])
        bad = np.zeros(c.size, dtype=bool)
        for p in range(npairs):
            for r in range(p + 1, npairs):
                bad |= disjoint[p, r][bits[:, p].astype(int), bits[:, r].astype(int)]
        deg = np.stack(
            [np.count_nonzero(chosen & np.uint64(1 << x), axis=1) for x in range(n)], axis=1
        )
        div = npairs - deg.max(axis=1)
        ok = np.flatnonzero(~bad)
        if not ok.size:
            return None, 0
        best = int(div[ok].max())
        winners = np.sort(chosen[ok[div[ok] == best]], axis=1)
        first = winners[np.lexsort(winners.T[::-1])[0]]
        return (best, tuple(int(w) for w in first)), int(ok.size)

    parts = _parallel.map_chunks(scan, total, workers, min_chunk=1 << 12)
    found = [p for p, _ in parts if p is not None]
    n_intersecting = sum(cnt for _, cnt in parts)
    best_div = max(d for d, _ in found)
    best_words = min(w for d, w in found if d == best_div)
    fam = Family(n, best_words)
    return SearchReport(
        n,
        best_div,
        fam,
        visited=total,
        method="exhaustive",
        extra={"intersecting_candidates": n_intersecting},
    )


# -------------------------------------------------------------- hill climb


class _Rng:
    """Uniform draws from the raw PCG64 stream, by rejection (no modulo bias)."""

    def __init__(self, seed: int):
        self._bits = np.random.PCG64(seed)

    def _raw(self) -> int:
        return int(self._bits.random_raw())

    def below(self, m: int) -> int:
        limit = (1 << 64) - ((1 << 64) % m)
        while True:
            r = self._raw()
            if r < limit:
                return r % m

    def random(self) -> float:
        return (self._raw() >> 11) * (1.0 / (1 << 53))


def _bit_vector(word: int, n: int) -> np.ndarray:
    return np.array([(word >> x) & 1 for x in range(n)], dtype=np.int64)


class ClimbState:
    """A maximal intersecting family stored as one chosen set per pair.

    ``words[p]`` is the member chosen from pair ``p``; degrees are kept up to
    date so a swap costs O(n) to score.
    """

    def __init__(self, family: Family):
        n = family.n
        _check_odd(n)
        inter = is_intersecting(family)
        if not inter:
            raise FamilyError(f"start family is not intersecting: {inter.witness}")
        if len(family) != 1 << (n - 1):
            raise FamilyError(
                f"start family is not maximal: {len(family)} members, need {1 << (n - 1)}"
            )
        self.n = n
        self.full = full_mask(n)
        self.small = _small_sides(n)
        small_of = np.where(
            np.bitwise_count(family.words) <= (n - 1) // 2,
            family.words,
            family.words ^ np.uint64(self.full),
        )
        order = np.argsort(small_of)
        if not np.array_equal(small_of[order], self.small):
            raise FamilyError("start family is not maximal: some complementary pair is missing")
        self.words = family.words[order].copy()
        self.pair_of = {int(s): p for p, s in enumerate(self.small)}
        counts = [np.count_nonzero(self.words & np.uint64(1 << x)) for x in range(n)]
        self.degrees = np.array(counts, dtype=np.int64)

    @property
    def size(self) -> int:
        return int(self.words.size)

    def family(self) -> Family:
        return Family(self.n, self.words)

    def diversity(self) -> int:
        return self.size - int(self.degrees.max())

    def pair_index(self, word: int) -> int:
        small = min(word, word ^ self.full, key=lambda w: w.bit_count())
        return self.pair_of[small]

    def keeps_intersecting(self, incoming: int) -> bool:
        # the outgoing complement is the only member allowed to miss it
        return int(np.count_nonzero((self.words & np.uint64(incoming)) == 0)) == 1

    def swapped_degrees(self, incoming: int) -> np.ndarray:
        return (
            self.degrees
            + _bit_vector(incoming, self.n)
            - _bit_vector(incoming ^ self.full, self.n)
        )

    def swap(self, incoming: int) -> None:
        p = self.pair_index(incoming)
        self.degrees = self.swapped_degrees(incoming)
        self.words[p] = incoming


@dataclass(frozen=True)
class PairSwapMove:
    incoming: SubsetWord
    delta_diversity: int

    @property
    def small_set(self) -> SubsetWord:
        a = self.incoming
        if len(a) <= (a.n - 1) // 2:
            return a
        return SubsetWord(a.bits ^ full_mask(a.n), a.n)


def pair_swap_delta(state: ClimbState, a: SubsetWord) -> PairSwapMove:
    """Change in diversity from swapping ``complement(a)`` out and ``a`` in."""
    if a.n != state.n:
        raise FamilyError(f"ground-size mismatch: {state.n} vs {a.n}")
    p = state.pair_index(a.bits)
    if int(state.words[p]) == a.bits:
        raise FamilyError(f"{a} is already a member")
    new = state.swapped_degrees(a.bits)
    return PairSwapMove(a, int(state.degrees.max()) - int(new.max()))


def _excess(degrees: np.ndarray, target: int) -> int:
    return int(np.clip(degrees - target, 0, None).sum())


def hillclimb_diversity(
    n: int,
    start: Family | None = None,
    rng_seed: int = 0,
    max_steps: int = 10_000,
    *,
    samples: int = 8,
    noise: float = 0.05,
    patience: int = 50,
    blocks: Sequence[Family] = (),
    block_rate: float = 0.1,
    check_interval: int = 0,
) -> SearchReport:
    """Local search for high diversity by complement-pair swaps.

    Plain diversity is flat or falling around Q_k (any single swap raises some
    degree), so moves are scored by the total excess of the degrees over a
    target one below the best maximum degree seen so far. Each step draws
    ``samples`` random pairs, keeps the feasible swap of least excess and
    takes it if the excess does not grow (plateau moves included), or anyway
    with probability ``noise``. After ``patience`` steps without a new lowest
    excess the walk jumps back to the state that had it.

    ``blocks`` adds moves that swap in every member of one family at once,
    accepted only if diversity strictly rises. They are first applied greedily
    until none helps, then drawn during the walk with probability
    ``block_rate``. ``check_interval`` > 0 re-verifies the full family every that many
    steps. The returned family is the best one seen, always re-verified.
    """
    _check_odd(n)
    if not HILLCLIMB_MIN_N <= n <= HILLCLIMB_MAX_N:
        raise FamilyError(f"hill climb supports {HILLCLIMB_MIN_N} <= n <= {HILLCLIMB_MAX_N}")
    if start is None:
        start = build_Qk((n - 1) // 2)
    if start.n != n:
        raise FamilyError(f"start family has n={start.n}, expected {n}")
    state = ClimbState(start)
    for b in blocks:
        if b.n != n:
            raise FamilyError(f"block has n={b.n}, expected {n}")
    rng = _Rng(rng_seed)
    full = state.full
    # greedy block pass first, so e.g. the whole projective swap is reachable
    while any(_try_block(state, b) for b in blocks):
        pass

    best_div = state.diversity()
    best_words = state.words.copy()
    target = int(state.degrees.max()) - 1
    excess = _excess(state.degrees, target)
    low_excess, low_words, low_deg, stale = excess, state.words.copy(), state.degrees.copy(), 0
    visited = 0

    for step in range(max_steps):
        if blocks and rng.random() < block_rate:
            block = blocks[rng.below(len(blocks))]
            visited += 1
            _try_block(state, block)
        else:
            pick = None
            for _ in range(samples):
                p = rng.below(state.size)
                incoming = int(state.words[p]) ^ full
                visited += 1
                if not state.keeps_intersecting(incoming):
                    continue
                e = _excess(state.swapped_degrees(incoming), target)
                if pick is None or e < pick[0]:
                    pick = (e, incoming)
            if pick is not None and (pick[0] <= excess or rng.random() < noise):
                state.swap(pick[1])
        if check_interval and step % check_interval == 0:
            _assert_state(state)

        div = state.diversity()
        if div > best_div:
            best_div, best_words = div, state.words.copy()
            target = int(state.degrees.max()) - 1
            low_excess = None
        excess = _excess(state.degrees, target)
        if low_excess is None or excess < low_excess:
            low_excess, stale = excess, 0
            low_words, low_deg = state.words.copy(), state.degrees.copy()
        else:
            stale += 1
            if patience and stale > patience:
                state.words, state.degrees = low_words.copy(), low_deg.copy()
                excess, stale = low_excess, 0

    best = Family(n, best_words)
    if not is_intersecting(best):  # pragma: no cover - guarded by every move
        raise AssertionError("hill climb produced a non-intersecting family")
    if diversity(best).diversity != best_div:  # pragma: no cover
        raise AssertionError("incremental diversity drifted from recomputation")
    return SearchReport(
        n,
        best_div,
        best,
        visited=visited,
        method="hillclimb",
        rng_seed=rng_seed,
        extra={"max_steps": max_steps},
    )


def _try_block(state: ClimbState, block: Family) -> bool:
    comps = block.words ^ np.uint64(state.full)
    pos = [state.pair_index(int(w)) for w in block.words]
    current = state.words[pos]
    todo = np.flatnonzero(current == comps)
    if not todo.size:
        return False
    trial = state.words.copy()
    for t in todo:
        trial[pos[t]] = block.words[t]
    incoming = block.words[todo]
    for a in incoming:
        if np.count_nonzero((trial & a) == 0):
            return False
    deg = state.degrees.copy()
    for a in incoming:
        deg += _bit_vector(int(a), state.n) - _bit_vector(int(a) ^ state.full, state.n)
    if int(deg.max()) >= int(state.degrees.max()):
        return False
    state.words, state.degrees = trial, deg
    return True


def _assert_state(state: ClimbState) -> None:
    fam = state.family()
    if len(fam) != state.size or not is_intersecting(fam):
        raise AssertionError("climb state lost maximality or intersection")
