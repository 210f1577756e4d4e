"""Desarguesian projective planes PG(2, q) and the line-containing families.

Points are the nonzero triples over GF(q) scaled so their first nonzero
coordinate is 1, numbered 1..n in lexicographic order (n = q^2 + q + 1).
Lines are given by the same normalized triples under the dot-product
incidence. Every plane axiom is checked when the plane is built.

``A_i`` is the family of i-point sets that contain at least one full line, for
``q + 1 <= i <= (q^2 + q) / 2``; their union ``A`` is swapped into ``Q_k``
(k = (q^2 + q) / 2) to give the second counterexample family.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb

import numpy as np

from . import limits
from .constructions import SwapPlan, apply_swap, build_Qk
from .errors import BudgetExceeded, ConstructionError, FamilyError
from .setfam import Family, degree_profile, is_regular

MAX_Q = 7  # n = 57 for q = 7; q = 8 would overflow a 63-bit word
AXIOM_CHECK_MAX_Q = 9
DEFAULT_ENUM_BUDGET = 1 << 24  # candidate words examined by enumerate_Ai


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _prime_power(q: int) -> tuple[int, int] | None:
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            return (p, e) if r == 1 else None
    return None


@dataclass(frozen=True, eq=False)
class FiniteField:
    """Field of order ``q`` with elements labelled 0..q-1 and full tables.

    For prime ``q`` the labels are residues mod q. For ``q = p^e`` a label is
    the base-p digit string of a polynomial's coefficients (lowest first).
    """

    q: int
    p: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is unused and set to 0

    def check_axioms(self) -> None:
        q, add, mul = self.q, self.add, self.mul
        r = np.arange(q)
        if not (np.array_equal(add, add.T) and np.array_equal(mul, mul.T)):
            raise ConstructionError("field operations are not commutative")
        if not (np.array_equal(add[0], r) and np.array_equal(mul[1], r)):
            raise ConstructionError("0 or 1 is not an identity")
        if not np.all(add[r, self.neg] == 0):
            raise ConstructionError("missing additive inverse")
        nz = r[1:]
        if not np.all(mul[nz, self.inv[nz]] == 1):
            bad = int(nz[np.argmax(mul[nz, self.inv[nz]] != 1)])
            raise ConstructionError("missing multiplicative inverse", bad)
        a, b, c = np.meshgrid(r, r, r, indexing="ij")
        if not np.array_equal(add[add[a, b], c], add[a, add[b, c]]):
            raise ConstructionError("addition is not associative")
        if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
            raise ConstructionError("multiplication is not associative")
        if not np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]]):
            raise ConstructionError("distributivity fails")


def _inverse_table(mul: np.ndarray) -> np.ndarray:
    q = mul.shape[0]
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        hits = np.flatnonzero(mul[a] == 1)
        if hits.size:
            inv[a] = hits[0]
    return inv


def _prime_field(p: int) -> FiniteField:
    r = np.arange(p)
    add = (r[:, None] + r[None, :]) % p
    mul = (r[:, None] * r[None, :]) % p
    neg = (-r) % p
    return FiniteField(p, p, add, mul, neg, _inverse_table(mul))


def _extension_field(p: int, e: int, modulus) -> FiniteField:
    # modulus: monic degree-e coefficients, highest power first, e.g. x^2+1 -> [1, 0, 1]
    coeffs = [int(c) % p for c in modulus]
    if len(coeffs) != e + 1 or coeffs[0] != 1:
        raise FamilyError(f"modulus must be a monic polynomial of degree {e}")
    q = p**e
    digits = np.array([[(a // p**j) % p for j in range(e)] for a in range(q)])
    weights = p ** np.arange(e)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    low = [(-c) % p for c in reversed(coeffs[1:])]  # x^e = sum low[j] x^j

    def times(a, b):
        prod = [0] * (2 * e - 1)
        for i in range(e):
            for j in range(e):
                prod[i + j] += digits[a][i] * digits[b][j]
        for d in range(2 * e - 2, e - 1, -1):
            c, prod[d] = prod[d] % p, 0
            for j in range(e):
                prod[d - e + j] += c * low[j]
        return sum((prod[j] % p) * p**j for j in range(e))

    mul = np.array([[times(a, b) for b in range(q)] for a in range(q)])
    neg = ((-digits) % p) @ weights
    return FiniteField(q, p, add, mul, neg, _inverse_table(mul))


def make_field(q: int, modulus=None) -> FiniteField:
    """Field of odd order ``q``.

    Prime ``q`` works out of the box. An odd prime power such as 9 needs an
    irreducible ``modulus`` (monic coefficients, highest power first); an
    irreducible choice is detected by the axiom check.
    """
    if q == 2:
        raise FamilyError("q = 2 is excluded: the constructions need odd q")
    if q < 2 or q % 2 == 0:
        raise FamilyError(f"q = {q} is not an odd prime power")
    pe = _prime_power(q)
    if pe is None:
        raise FamilyError(f"q = {q} is not a prime power")
    p, e = pe
    if e == 1:
        field = _prime_field(p)
    elif modulus is None:
        raise FamilyError(
            f"q = {q} = {p}^{e} is not prime; pass modulus=<irreducible polynomial "
            f"of degree {e} over GF({p})> to build the extension field"
        )
    else:
        field = _extension_field(p, e, modulus)
    if q <= AXIOM_CHECK_MAX_Q:
        field.check_axioms()
    return field


@dataclass(frozen=True, eq=False)
class PlaneGeometry:
    q: int
    n: int
    field: FiniteField
    points: tuple[tuple[int, int, int], ...]
    line_coords: tuple[tuple[int, int, int], ...]
    line_words: tuple[int, ...]  # bit word of each line, same order as line_coords

    @property
    def k(self) -> int:
        return (self.q * self.q + self.q) // 2

    @property
    def lines(self) -> Family:
        return Family(self.n, self.line_words)

    def point_index(self, coords) -> int:
        return self.points.index(tuple(coords)) + 1


def _normalized_triples(field: FiniteField) -> list[tuple[int, int, int]]:
    out = []
    for t in product(range(field.q), repeat=3):
        nz = [c for c in t if c]
        if nz and nz[0] == 1:
            out.append(t)
    return out  # product() already yields lexicographic order


def _check_plane(plane: PlaneGeometry) -> None:
    q, n = plane.q, plane.n
    words = np.array(plane.line_words, dtype=np.uint64)
    sizes = np.bitwise_count(words)
    if len(words) != n or len(set(plane.line_words)) != n:
        raise ConstructionError(f"expected {n} distinct lines")
    if np.any(sizes != q + 1):
        raise ConstructionError("line with wrong number of points", int(np.argmax(sizes != q + 1)))
    reg = is_regular(plane.lines)
    if reg.degree != q + 1:
        raise ConstructionError(f"points do not lie on {q + 1} lines each", reg.witness)
    meet = np.bitwise_count(words[:, None] & words[None, :])
    off = ~np.eye(n, dtype=bool)
    if np.any(meet[off] != 1):
        a, b = np.argwhere(off & (meet != 1))[0]
        raise ConstructionError("two lines do not meet in exactly one point", (int(a), int(b)))
    for x in range(n):
        for y in range(x + 1, n):
            pair = np.uint64((1 << x) | (1 << y))
            joins = int(np.count_nonzero((words & pair) == pair))
            if joins != 1:
                raise ConstructionError(f"points {x + 1},{y + 1} lie on {joins} common lines")


def build_plane(q: int, modulus=None) -> PlaneGeometry:
    if q > MAX_Q:
        raise FamilyError(f"q = {q} gives more than 63 points; supported q <= {MAX_Q}")
    field = make_field(q, modulus)
    pts = _normalized_triples(field)
    n = q * q + q + 1
    add, mul = field.add, field.mul
    line_words = []
    for u in pts:
        w = 0
        for idx, x in enumerate(pts):
            dot = add[add[mul[u[0], x[0]], mul[u[1], x[1]]], mul[u[2], x[2]]]
            if dot == 0:
                w |= 1 << idx
        line_words.append(w)
    plane = PlaneGeometry(q, n, field, tuple(pts), tuple(pts), tuple(line_words))
    _check_plane(plane)
    return plane


# ---------------------------------------------------------------- A_i layers


def _combinations(positions, r: int) -> np.ndarray:
    """All words made of ``r`` bits chosen from ``positions``."""
    words = np.zeros(1, dtype=np.uint64)
    last = np.full(1, -1)
    for _ in range(r):
        parts_w, parts_l = [], []
        for j, pos in enumerate(positions):
            sel = last < j
            if sel.any():
                parts_w.append(words[sel] | np.uint64(1 << pos))
                parts_l.append(np.full(int(sel.sum()), j))
        if not parts_w:
            return np.zeros(0, dtype=np.uint64)
        words, last = np.concatenate(parts_w), np.concatenate(parts_l)
    return words


def _contains_a_line(cands: np.ndarray, line_words) -> np.ndarray:
    hit = np.zeros(cands.shape, dtype=bool)
    for lw in line_words:
        lw = np.uint64(lw)
        hit |= (cands & lw) == lw
    return hit


def _check_layer(plane: PlaneGeometry, i: int) -> None:
    q, k = plane.q, plane.k
    if not q + 1 <= i <= k:
        raise FamilyError(f"layer i = {i} outside {q + 1}..{k}")


def enumerate_Ai(
    plane: PlaneGeometry, i: int, budget: int | None = None, method: str = "auto"
) -> Family:
    """All i-subsets of points that contain some line.

    ``"filter"`` runs through every i-subset of [n] and keeps those that
    contain a line; ``"extend"`` adds i-q-1 further points to each line and
    deduplicates. ``budget`` caps the number of candidate words either way.
    """
    _check_layer(plane, i)
    n, q = plane.n, plane.q
    budget = DEFAULT_ENUM_BUDGET if budget is None else budget
    filter_cost, extend_cost = comb(n, i), n * comb(n - q - 1, i - q - 1)
    if method == "auto":
        method = "filter" if filter_cost <= budget else "extend"
    cost = filter_cost if method == "filter" else extend_cost
    if method not in ("filter", "extend"):
        raise ValueError(f"unknown method {method!r}")
    if cost > budget:
        raise BudgetExceeded(
            f"A_{i} at q={q} needs {cost} candidate words (budget {budget}); "
            "use bounds.bonferroni_lower for a lower bound instead"
        )
    if method == "filter":
        cands = _combinations(range(n), i)
        words = cands[_contains_a_line(cands, plane.line_words)]
    else:
        parts = []
        for lw in plane.line_words:
            rest = [b for b in range(n) if not lw >> b & 1]
            parts.append(_combinations(rest, i - q - 1) | np.uint64(lw))
        words = np.concatenate(parts)
    return Family(n, words)


def build_A(plane: PlaneGeometry, budget: int | None = None) -> Family:
    layers = [enumerate_Ai(plane, i, budget) for i in range(plane.q + 1, plane.k + 1)]
    return Family(plane.n, np.concatenate([f.words for f in layers]))


@dataclass(frozen=True)
class LayerStats:
    i: int
    size: int
    degree: int | None  # None when the layer is not regular


def layer_stats(plane: PlaneGeometry, budget: int | None = None) -> list[LayerStats]:
    out = []
    for i in range(plane.q + 1, plane.k + 1):
        layer = enumerate_Ai(plane, i, budget)
        out.append(LayerStats(i, len(layer), is_regular(layer, degree_profile(layer)).degree))
    return out


def build_Rk(
    plane: PlaneGeometry, budget: int | None = None, enum_budget: int | None = None
) -> Family:
    """``Q_k`` with the complement of every member of ``A`` swapped for it."""
    k = plane.k
    if 2 * k + 1 != plane.n:  # pragma: no cover - arithmetic identity
        raise ConstructionError("n != 2k+1")
    qk_size = 1 << (2 * k)
    if not limits.fits(qk_size, budget):
        raise BudgetExceeded(
            f"R_k at q={plane.q} needs Q_{k} with {qk_size} members, over the budget of "
            f"{limits.budget_bytes(budget)} bytes"
        )
    return apply_swap(SwapPlan(build_Qk(k, budget), build_A(plane, enum_budget)))
