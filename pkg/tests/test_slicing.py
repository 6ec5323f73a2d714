import random
from fractions import Fraction

import pytest

from flatchain.chains import box_chain, iv, pt, single_cell
from flatchain.errors import DegenerateSlice, SignatureMismatch
from flatchain.groups import Integers
from flatchain.randgen import rand_coord_chain, rand_figure, rand_fraction
from flatchain.slicing import (Figure, FigureInterval, closed, complement,
                               figures_equal, halfopen, intersect, line,
                               restrict, slice0_coord, slicing_mass,
                               slicing_mass_by_axes, slicing_mass_tensor,
                               union)
from flatchain.tensor import Split, jdecomp

INT = Integers()


def test_interval_flags():
    f = FigureInterval(Fraction(0), Fraction(1), True, False)
    assert f.contains(Fraction(0))
    assert not f.contains(Fraction(1))
    assert f.contains(Fraction(1, 2))


def test_figure_intersection_example():
    J = Figure(2, ((closed(0, 2), line()),))
    K = Figure(2, ((closed(1, 3), line()),))
    expected = Figure(2, ((closed(1, 2), line()),))
    assert figures_equal(intersect(J, K), expected)


def test_figure_complement_laws():
    J = Figure(2, ((closed(0, 2), closed(-1, 1)),))
    assert figures_equal(union(J, complement(J)), Figure.whole(2))
    assert figures_equal(complement(complement(J)), J)
    assert figures_equal(intersect(J, complement(J)), Figure.empty(2))


def test_figure_laws_random():
    rng = random.Random(8)
    for _ in range(25):
        n = rng.randint(1, 2)
        J = rand_figure(rng, n, boxes=rng.randint(1, 2))
        assert figures_equal(complement(complement(J)), J)
        assert figures_equal(union(J, J), J)
        assert figures_equal(union(J, complement(J)), Figure.whole(n))


def test_restrict_clips_square():
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    half = Figure(2, ((FigureInterval(None, Fraction(1, 2), False, True),
                       line()),))
    out = restrict(sq, half)
    assert out == box_chain(INT, [(0, Fraction(1, 2)), (0, 1)], 1)
    assert restrict(sq, Figure.whole(2)) == sq
    assert out.mass() <= sq.mass()


def test_restrict_halfopen_additivity():
    seg = single_cell(1, INT, [iv(0, 2)], 1)
    J1 = Figure(1, ((halfopen(0, 1),),))
    J2 = Figure(1, ((closed(1, 2),),))
    assert restrict(seg, union(J1, J2)) == \
        restrict(seg, J1).add(restrict(seg, J2)) == seg


def test_restrict_point_factor_uses_flags():
    vert = single_cell(2, INT, [pt(1), iv(0, 1)], 1)
    J_open = Figure(2, ((FigureInterval(Fraction(0), Fraction(1), True, False),
                         line()),))
    J_closed = Figure(2, ((closed(0, 1), line()),))
    assert restrict(vert, J_open).is_empty()
    assert restrict(vert, J_closed) == vert


def test_restrict_composition_and_shift():
    rng = random.Random(21)
    for _ in range(50):
        n = rng.randint(1, 2)
        c = rand_coord_chain(rng, n, rng.randint(0, n), INT, terms=2)
        J = rand_figure(rng, n, boxes=1)
        K = rand_figure(rng, n, boxes=1)
        x = [rand_fraction(rng, -1, 1, dens=(7, 11)) for _ in range(n)]
        y = [rand_fraction(rng, -1, 1, dens=(5,)) for _ in range(n)]
        assert restrict(restrict(c, J, x), K, x) == restrict(c, intersect(J, K), x)
        assert restrict(c, J.translate(y), x) == \
            restrict(c, J, [a + b for a, b in zip(x, y)])


def test_restrict_commutes_with_jdecomp():
    rng = random.Random(31)
    sp = Split(1, 1)
    for _ in range(25):
        c = rand_coord_chain(rng, 2, rng.randint(0, 2), INT, terms=2)
        J = rand_figure(rng, 2, boxes=1)
        x = [rand_fraction(rng, -1, 1, dens=(9,)) for _ in range(2)]
        restricted = restrict(c, J, x)
        for bd, part in jdecomp(c, sp).items():
            assert restrict(part.body, J, x) == jdecomp(restricted, sp)[bd].body


def test_restriction_l1_continuity_experiment():
    # approximations converging in mass keep their restrictions converging:
    # the averaged mass of the restricted difference is bounded by the
    # difference's own mass, sampled over shifts
    rng = random.Random(5)
    c = rand_coord_chain(rng, 2, 1, INT, terms=2)
    J = rand_figure(rng, 2, boxes=1)
    for denom in (2, 8, 32):
        extra = single_cell(2, INT, [iv(0, Fraction(1, denom)), pt(0)], 1)
        approx = c.add(extra)
        gap = Fraction(0)
        trials = 20
        for _ in range(trials):
            x = [rand_fraction(rng, -1, 1, dens=(13,)) for _ in range(2)]
            gap += restrict(approx, J, x).sub(restrict(c, J, x)).mass()
        assert gap / trials <= extra.mass()


def test_escape_to_infinity_experiment():
    c = box_chain(INT, [(0, 1), (0, 1)], 1)
    for ell in (1, 2, 5):
        window = Figure.from_bounds([(-ell, ell), (-ell, ell)])
        outside = complement(window)
        if ell >= 2:
            assert restrict(c, outside).is_empty()


def test_slice0_square():
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    sl = slice0_coord(sq, (0, 1), [Fraction(1, 2), Fraction(1, 2)])
    (cell, val), = sl.terms
    assert val.payload == 1
    assert cell == (pt(Fraction(1, 2)), pt(Fraction(1, 2)))


def test_slice0_family_mismatch_empty():
    horiz = single_cell(2, INT, [iv(0, 1), pt(0)], 1)
    assert slice0_coord(horiz, (1,), [Fraction(1, 3)]).is_empty()


def test_slice0_degenerate_raises():
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    with pytest.raises(DegenerateSlice):
        slice0_coord(sq, (0, 1), [Fraction(0), Fraction(1, 2)])
    with pytest.raises(SignatureMismatch):
        slice0_coord(sq, (0,), [Fraction(1, 2)])


def test_slicing_mass_equals_mass():
    rng = random.Random(17)
    for _ in range(50):
        n = rng.randint(1, 4)
        c = rand_coord_chain(rng, n, rng.randint(0, n), INT, terms=3)
        assert slicing_mass(c) == c.mass()


def test_slicing_mass_breakdown():
    bd = box_chain(INT, [(0, 1), (0, 1)], 1).boundary()
    per = slicing_mass_by_axes(bd)
    assert per[(0,)] == 2 and per[(1,)] == 2
    assert slicing_mass(bd) == 4
