from fractions import Fraction

import pytest

from divlab.bounds import (
    NonRegularLayer,
    binomial,
    bonferroni_lower,
    div_Qk_formula,
    ledger_delta,
    qk_degree_formula,
    theorem22_rhs,
)
from divlab.errors import FamilyError
from divlab.projective import LayerStats

from oracles import pascal


def test_binomial_examples():
    assert binomial(6, 4) == 15
    assert binomial(6, -2) == 0
    assert binomial(6, 7) == 0
    assert binomial(12, 7) == 792
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_binomial_matches_pascal():
    tri = pascal(64)
    for a in range(65):
        for b in range(a + 1):
            assert binomial(a, b) == tri[a][b]


def test_div_qk_examples():
    assert div_Qk_formula(3) == 22
    assert div_Qk_formula(6) == 1586
    assert div_Qk_formula(1) == 1


@pytest.mark.parametrize("k", range(1, 31))
def test_div_qk_decomposition(k):
    # |Q_k| minus its common degree
    assert div_Qk_formula(k) == 2 ** (2 * k) - sum(binomial(2 * k, i) for i in range(k, 2 * k + 1))
    assert qk_degree_formula(k) == 2 ** (2 * k) - div_Qk_formula(k)


def test_bonferroni_q3():
    b5 = bonferroni_lower(3, 5)
    assert (b5.middle, b5.final) == (117, Fraction(117, 2))
    b6 = bonferroni_lower(3, 6)
    assert (b6.middle, b6.final) == (468, Fraction(234))
    assert b5.chain_holds and b6.chain_holds


def test_bonferroni_q5_i15():
    b = bonferroni_lower(5, 15)
    assert b.middle == 31 * binomial(25, 9) - 465 * binomial(20, 4)
    assert b.final == Fraction(31, 2) * binomial(25, 9)
    assert isinstance(b.middle, int) and isinstance(b.final, Fraction)
    assert b.chain_holds


@pytest.mark.parametrize("q", [3, 5, 7])
def test_bonferroni_chain_whole_range(q):
    k = (q * q + q) // 2
    for i in range(q + 2, k + 1):
        assert bonferroni_lower(q, i).chain_holds


def test_bonferroni_rejects():
    with pytest.raises(FamilyError):
        bonferroni_lower(3, 0)
    with pytest.raises(FamilyError):
        bonferroni_lower(3, 14)
    with pytest.raises(FamilyError):
        bonferroni_lower(4, 5)


def test_theorem22_rhs():
    assert theorem22_rhs(3) == 34
    assert theorem22_rhs(3) == Fraction(5, 2) + Fraction(27, 2) + Fraction(36, 2)
    r5 = theorem22_rhs(5)
    assert isinstance(r5, Fraction) and r5 > 0
    for q in (3, 5, 7, 9):
        n, k = q * q + q + 1, (q * q + q) // 2
        assert all(n - 2 * i >= 1 for i in range(q + 1, k + 1))


def test_theorem22_rhs_rejects_even():
    with pytest.raises(FamilyError):
        theorem22_rhs(4)


def test_ledger_delta():
    assert ledger_delta([(13, 4), (117, 45), (468, 216)]) == 68
    assert ledger_delta([(13, 4)]) == 13 - 8
    assert ledger_delta([]) == 0


def test_ledger_delta_non_regular():
    with pytest.raises(NonRegularLayer, match="A_5"):
        ledger_delta([LayerStats(4, 13, 4), LayerStats(5, 117, None)])
