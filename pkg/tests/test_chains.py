import random
from fractions import Fraction

import pytest

from flatchain.chains import (CoordChain, Iv, Pt, box_chain, iv, pt,
                              single_cell)
from flatchain.errors import DegenerateInput, DomainError, SignatureMismatch
from flatchain.groups import Integers, Rationals, Residues
from flatchain.randgen import rand_coord_chain, rand_fraction

INT = Integers()


def test_degenerate_interval_rejected():
    with pytest.raises(DegenerateInput):
        iv(1, 1)
    with pytest.raises(DegenerateInput):
        iv(2, 1)


def test_overlay_example():
    # [0,2]*1 + [1,3]*(-1) -> [0,1]*1 + [2,3]*(-1)
    a = single_cell(1, INT, [iv(0, 2)], 1)
    b = single_cell(1, INT, [iv(1, 3)], -1)
    s = a.add(b)
    assert [(c, v.payload) for c, v in s.terms] == [
        ((Iv(Fraction(0), Fraction(1)),), 1),
        ((Iv(Fraction(2), Fraction(3)),), -1),
    ]


def test_disjoint_terms_kept():
    a = single_cell(1, INT, [iv(0, 1)], 1)
    b = single_cell(1, INT, [iv(1, 2)], 1)
    s = a.add(b)
    # equal coefficients across the shared endpoint merge to one interval
    assert s == single_cell(1, INT, [iv(0, 2)], 1)
    c = single_cell(1, INT, [iv(1, 2)], -1)
    assert len(a.add(c).terms) == 2


def test_cancellation():
    a = single_cell(2, INT, [iv(0, 1), pt(Fraction(1, 2))], 3)
    assert a.add(a.neg()).is_empty()


def test_normal_form_is_representation_independent():
    whole = box_chain(INT, [(0, 2), (0, 2)], 1)
    left = box_chain(INT, [(0, 1), (0, 2)], 1)
    right = box_chain(INT, [(1, 2), (0, 2)], 1)
    assert left.add(right) == whole
    top = box_chain(INT, [(0, 2), (1, 2)], 1)
    bottom = box_chain(INT, [(0, 2), (0, 1)], 1)
    assert top.add(bottom) == whole


def test_boundary_square():
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    bd = sq.boundary()
    assert bd.mass() == 4
    assert bd.boundary().is_empty()


def test_boundary_cube_squared_zero():
    cube = box_chain(INT, [(0, 1)] * 3, 1)
    assert cube.boundary().boundary().is_empty()


def test_boundary_segment_orientation():
    seg = single_cell(2, INT, [iv(0, 1), pt(0)], 1)
    bd = seg.boundary()
    coeffs = {cell[0].q: v.payload for cell, v in bd.terms}
    assert coeffs == {Fraction(0): -1, Fraction(1): 1}


def test_boundary_of_points_rejected():
    c = single_cell(1, INT, [pt(0)], 1)
    with pytest.raises(DomainError):
        c.boundary()


def test_mass_examples():
    c = box_chain(INT, [(0, 1), (0, 3)], 2)
    assert c.mass() == 6
    assert CoordChain.empty(2, 2, INT).mass() == 0


def test_mass_residue_norm():
    c = single_cell(1, Residues(5), [iv(0, 2)], 4)
    assert c.mass() == 2  # |4| = 1 in the mod-5 norm, times length 2


def test_translate_and_box():
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    moved = sq.translate([5, 5])
    assert moved.support_box().lo == (Fraction(5), Fraction(5))
    assert moved.support_box().hi == (Fraction(6), Fraction(6))
    assert moved.mass() == sq.mass()
    assert CoordChain.empty(2, 1, INT).support_box() is None


def test_translate_boundary_commutes_random():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(1, 4)
        k = rng.randint(1, n)
        c = rand_coord_chain(rng, n, k, INT, terms=3)
        y = [rand_fraction(rng) for _ in range(n)]
        assert c.translate(y).boundary() == c.boundary().translate(y)
        assert c.translate(y).mass() == c.mass()


def test_boundary_squared_random():
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randint(2, 4)
        k = rng.randint(2, n)
        c = rand_coord_chain(rng, n, k, rng.choice((INT, Rationals())), terms=3)
        assert c.boundary().boundary().is_empty()


def test_signature_mismatch():
    a = single_cell(1, INT, [iv(0, 1)], 1)
    b = single_cell(1, Rationals(), [iv(0, 1)], Fraction(1))
    with pytest.raises(SignatureMismatch):
        a.add(b)
    with pytest.raises(SignatureMismatch):
        a.translate([1, 2])
