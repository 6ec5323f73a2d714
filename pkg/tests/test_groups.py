from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from flatchain.chains import CoordChain, Iv, Pt
from flatchain.errors import SignatureMismatch, ValidationError
from flatchain.groups import (ChainCoefficients, CoefficientValue, Integers,
                              Rationals, Residues)

INT = Integers()
RAT = Rationals()

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=64)


def test_integer_examples():
    assert INT.add(3, -3) == 0
    assert INT.norm(-3) == 3
    assert INT.is_zero(INT.add(5, INT.neg(5)))


def test_residue_examples():
    g2 = Residues(2)
    assert g2.add(1, 1) == 0
    g5 = Residues(5)
    assert g5.norm(4) == 1
    # oracle: the distance to 0 along the cycle, enumerated
    for m in range(1, 13):
        g = Residues(m)
        for r in range(m):
            assert g.norm(r) == min(r, m - r)


@given(st.integers(-100, 100), st.integers(-100, 100))
def test_integer_norm_axioms(a, b):
    assert INT.norm(INT.add(a, b)) <= INT.norm(a) + INT.norm(b)
    assert INT.norm(INT.neg(a)) == INT.norm(a)
    assert (INT.norm(a) == 0) == (a == 0)


@given(rationals, rationals)
def test_rational_norm_axioms(a, b):
    a, b = RAT.canon(a), RAT.canon(b)
    assert RAT.norm(RAT.add(a, b)) <= RAT.norm(a) + RAT.norm(b)
    assert RAT.norm(RAT.neg(a)) == RAT.norm(a)


@given(st.integers(1, 12), st.integers(-30, 30), st.integers(-30, 30))
def test_residue_norm_axioms(m, a, b):
    g = Residues(m)
    a, b = g.canon(a), g.canon(b)
    assert g.norm(g.add(a, b)) <= g.norm(a) + g.norm(b)
    assert g.norm(g.neg(a)) == g.norm(a)
    assert (g.norm(a) == 0) == g.is_zero(a)


def _segment(a, b, coeff):
    return CoordChain.build(2, 1, INT,
                            [((Iv(Fraction(a), Fraction(b)), Pt(Fraction(0))),
                              coeff)])


def test_nested_norm_is_inner_mass():
    g = ChainCoefficients(2, 1, INT)
    c = _segment(0, 3, 2)
    assert g.norm(c) == c.mass() == 6
    d = _segment(1, 2, -2)
    total = g.add(c, d)
    assert g.norm(total) == total.mass() == 4
    assert g.norm(total) <= g.norm(c) + g.norm(d)


def test_nested_rejects_wrong_signature():
    g = ChainCoefficients(2, 1, INT)
    with pytest.raises(SignatureMismatch):
        g.canon(CoordChain.empty(3, 1, INT))
    with pytest.raises(ValidationError):
        ChainCoefficients(2, 1, ChainCoefficients(2, 0, INT))


def test_descriptor_mismatch_raises():
    with pytest.raises(SignatureMismatch):
        CoefficientValue(INT, 1).add(CoefficientValue(Residues(3), 1))


def test_float_payload_rejected():
    with pytest.raises(ValidationError):
        RAT.canon(0.5)
    with pytest.raises(ValidationError):
        INT.canon(True)
