import random
from fractions import Fraction

import pytest

from flatchain.chains import CoordChain, Iv, Pt, box_chain, iv, pt, single_cell
from flatchain.errors import DomainError, SignatureMismatch
from flatchain.groups import ChainCoefficients, Integers, Rationals
from flatchain.randgen import rand_coord_chain, rand_tensor_chain
from flatchain.tensor import (Split, TensorChain, bidegrees, chi, chi_tensor,
                              classify, d1, d2, iota, iota_inv, jdecomp)

INT = Integers()
SP = Split(1, 1)


def test_classify_examples():
    assert classify((Iv(Fraction(0), Fraction(1)), Pt(Fraction(0))), SP) == (1, 0)
    assert classify((Pt(Fraction(0)), Iv(Fraction(0), Fraction(1))), SP) == (0, 1)
    assert classify((Iv(Fraction(0), Fraction(1)),) * 2, SP) == (1, 1)


def test_bidegrees():
    assert bidegrees(SP, 1) == [(0, 1), (1, 0)]
    assert bidegrees(Split(2, 1), 2) == [(1, 1), (2, 0)]


def test_homogeneity_enforced():
    mixed = single_cell(2, INT, [iv(0, 1), pt(0)], 1)
    with pytest.raises(SignatureMismatch):
        TensorChain(SP, 0, 1, mixed)


def test_jdecomp_square_boundary():
    bd = box_chain(INT, [(0, 1), (0, 1)], 1).boundary()
    parts = jdecomp(bd, SP)
    assert parts[(1, 0)].mass() == 2  # two horizontal edges
    assert parts[(0, 1)].mass() == 2  # two vertical edges
    total = parts[(1, 0)].body.add(parts[(0, 1)].body)
    assert total == bd


def test_jdecomp_pure_identity():
    t = rand_tensor_chain(random.Random(1), SP, 1, 0, INT)
    parts = jdecomp(t.body, SP)
    assert parts[(1, 0)].body == t.body
    assert parts[(0, 1)].is_empty()


def test_d1_unit_square():
    tsq = TensorChain(SP, 1, 1, box_chain(INT, [(0, 1), (0, 1)], 1))
    out = d1(tsq)
    coeffs = {cell[0].q: v.payload for cell, v in out.body.terms}
    assert coeffs == {Fraction(1): 1, Fraction(0): -1}


def test_d2_sign_convention():
    # slot-2 boundary of a (1,1)-cell carries the extra factor (-1)**k1
    tsq = TensorChain(SP, 1, 1, box_chain(INT, [(0, 1), (0, 1)], 1))
    out = d2(tsq)
    coeffs = {cell[1].q: v.payload for cell, v in out.body.terms}
    assert coeffs == {Fraction(1): -1, Fraction(0): 1}


def test_partial_boundaries_anticommute():
    rng = random.Random(7)
    for _ in range(50):
        n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
        sp = Split(n1, n2)
        t = rand_tensor_chain(rng, sp, rng.randint(1, n1), rng.randint(1, n2),
                              INT)
        assert d1(d2(t)).body == d2(d1(t)).neg().body


def test_partial_boundary_degree_guard():
    t = rand_tensor_chain(random.Random(2), SP, 0, 1, INT)
    with pytest.raises(DomainError):
        d1(t)


def test_boundary_splitting():
    rng = random.Random(5)
    for _ in range(50):
        n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
        sp = Split(n1, n2)
        k1, k2 = rng.randint(1, n1), rng.randint(1, n2)
        t = rand_tensor_chain(rng, sp, k1, k2, INT)
        parts = jdecomp(t.body.boundary(), sp)
        assert parts[(k1 - 1, k2)].body == d1(t).body
        assert parts[(k1, k2 - 1)].body == d2(t).body


def test_iota_worked_example():
    t = TensorChain(SP, 1, 1, box_chain(INT, [(0, 1), (0, 2)], 3))
    nested = iota(t)
    assert isinstance(nested.group, ChainCoefficients)
    assert nested.n == 1 and nested.k == 1
    (acell, val), = nested.terms
    assert acell == (Iv(Fraction(0), Fraction(1)),)
    assert val.payload.mass() == 6
    assert nested.mass() == t.mass() == 6
    assert iota_inv(nested, SP).body == t.body


def test_iota_roundtrip_random():
    rng = random.Random(11)
    for _ in range(50):
        n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
        sp = Split(n1, n2)
        t = rand_tensor_chain(rng, sp, rng.randint(0, n1), rng.randint(0, n2),
                              rng.choice((INT, Rationals())))
        nested = iota(t)
        assert nested.mass() == t.mass()
        assert iota_inv(nested, sp).body == t.body


def test_chi_examples():
    c = CoordChain.build(2, 0, INT, [((Pt(Fraction(0)), Pt(Fraction(1))), 3),
                                     ((Pt(Fraction(2)), Pt(Fraction(0))), -1)])
    assert chi(c).payload == 2
    assert chi(CoordChain.empty(2, 0, INT)).payload == 0
    with pytest.raises(DomainError):
        chi(box_chain(INT, [(0, 1)], 1))


def test_chi_tensor_agrees_with_body():
    rng = random.Random(3)
    for _ in range(50):
        t = rand_tensor_chain(rng, SP, 0, 0, rng.choice((INT, Rationals())))
        assert chi_tensor(t).payload == chi(t.body).payload
