"""Exact closed-form quantities: Python ints and ``Fraction`` only, no floats."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

from .errors import DivlabError, FamilyError


def binomial(a: int, b: int) -> int:
    """C(a, b), taken to be 0 when b < 0 or b > a."""
    if a < 0:
        raise ValueError(f"binomial needs a >= 0, got {a}")
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def div_Qk_formula(k: int) -> int:
    """Diversity of Q_k: sum of C(2k, i) for i = k+1 .. 2k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return sum(binomial(2 * k, i) for i in range(k + 1, 2 * k + 1))


def qk_degree_formula(k: int) -> int:
    """Common degree of Q_k: sum of C(2k, i) for i = k .. 2k."""
    return sum(binomial(2 * k, i) for i in range(k, 2 * k + 1))


def plane_params(q: int) -> tuple[int, int]:
    """``(n, k)`` for PG(2, q): n = q^2+q+1 and k = (q^2+q)/2."""
    return q * q + q + 1, (q * q + q) // 2


def _check_q(q: int) -> None:
    if q < 3 or q % 2 == 0:
        raise FamilyError(f"q = {q} is not an odd prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r = q
    while r % p == 0:
        r //= p
    if r != 1:
        raise FamilyError(f"q = {q} is not an odd prime power")


@dataclass(frozen=True)
class BonferroniBound:
    q: int
    i: int
    middle: int  # n C(n-q-1, i-q-1) - C(n,2) C(n-2q-1, i-2q-1)
    final: Fraction  # (n/2) C(n-q-1, i-q-1)

    @property
    def chain_holds(self) -> bool:
        return self.middle >= self.final


def bonferroni_lower(q: int, i: int) -> BonferroniBound:
    """Two-term inclusion-exclusion lower bound on the number of i-point sets
    containing a line of PG(2, q), and the simplified bound below it.

    Whether the middle term really dominates the simplified one is reported by
    ``chain_holds``, not assumed.
    """
    _check_q(q)
    n, _ = plane_params(q)
    if not 1 <= i <= n:
        raise FamilyError(f"i = {i} outside 1..{n}")
    base = binomial(n - q - 1, i - q - 1) if i >= q + 1 else 0
    pairs = binomial(n, 2) * (binomial(n - 2 * q - 1, i - 2 * q - 1) if i >= 2 * q + 1 else 0)
    return BonferroniBound(q, i, n * base - pairs, Fraction(n, 2) * base)


def theorem22_rhs(q: int) -> Fraction:
    """Sum over i = q+1 .. k of (n - 2i)/2 * C(n-q-1, i-q-1)."""
    _check_q(q)
    n, k = plane_params(q)
    return sum(
        (Fraction(n - 2 * i, 2) * binomial(n - q - 1, i - q - 1) for i in range(q + 1, k + 1)),
        Fraction(0),
    )


class NonRegularLayer(DivlabError):
    pass


def ledger_delta(layers: Iterable) -> int:
    """Sum of |A_i| - 2 deg(A_i) over regular layers.

    Layers are ``(size, degree)`` pairs or objects with ``size``, ``degree``
    and ``i`` attributes. The sum is how much swapping the layers into Q_k
    raises its diversity; a layer without a common degree makes it undefined.
    """
    total = 0
    for idx, layer in enumerate(layers):
        if hasattr(layer, "size"):
            size, degree, name = layer.size, layer.degree, f"A_{layer.i}"
        else:
            (size, degree), name = layer, f"#{idx}"
        if degree is None:
            raise NonRegularLayer(f"layer {name} (size {size}) is not regular")
        total += size - 2 * degree
    return total
