import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from flatchain.errors import DegenerateInput, DegenerateSlice, DomainError
from flatchain.groups import Integers
from flatchain.randgen import rand_fraction, rand_simplex
from flatchain.simplices import (Simplex, SimplexChain, grassmann_average,
                                 interiors_overlap)
from flatchain.tensor import chi

INT = Integers()


def test_degenerate_simplex_rejected():
    with pytest.raises(DegenerateInput):
        Simplex(((0, 0), (1, 1), (2, 2)))


def test_triangle_area():
    t = Simplex(((0, 0), (1, 0), (0, 1)))
    assert t.volume_sq() == Fraction(1, 4)
    chain = SimplexChain.build(2, 2, INT, [(t, 2)])
    assert chain.cell_mass_sq() == [Fraction(1)]  # (|2| * 1/2)^2


def test_projection_lengths():
    seg = Simplex(((0, 0), (3, 4)))
    assert seg.proj_mass((0,)) == 3
    assert seg.proj_mass((1,)) == 4
    assert seg.proj_mass_sum() == 7


def test_projection_identity_case():
    t = Simplex(((0, 0), (1, 0), (0, 1)))
    assert t.proj_mass((0, 1)) == Fraction(1, 2)
    with pytest.raises(DomainError):
        t.proj_mass((0,))


def test_cauchy_binet_random():
    rng = random.Random(12)
    for _ in range(200):
        n = rng.choice((3, 4))
        k = rng.randint(1, 2)
        s = rand_simplex(rng, n, k)
        lhs = sum((s.minor(g) ** 2 for g in combinations(range(n), k)),
                  Fraction(0))
        assert lhs == s.volume_sq() * math.factorial(k) ** 2


def test_hypotenuse_boundary_mass():
    t = Simplex(((0, 0), (1, 0), (0, 1)))
    bd = SimplexChain.build(2, 2, INT, [(t, 3)]).boundary()
    # the edge on the line x0 + x1 = 1 has length sqrt(2)
    hyp = [s for s, _ in bd.terms
           if all(v[0] + v[1] == 1 for v in s.vertices)]
    assert len(hyp) == 1
    assert hyp[0].volume_sq() == 2
    assert bd.boundary().is_empty()


def test_slice_point_example():
    seg = Simplex(((0, 0), (3, 4)))
    point, sign = seg.slice_point((0,), [Fraction(3, 2)])
    assert point == (Fraction(3, 2), Fraction(2))
    assert sign == 1
    assert seg.slice_point((0,), [Fraction(7)]) is None
    with pytest.raises(DegenerateSlice):
        seg.slice_point((0,), [Fraction(0)])


def test_slice0_chain_and_cycle_balance():
    t = Simplex(((0, 0), (1, 0), (0, 1)))
    cyc = SimplexChain.build(2, 2, INT, [(t, 1)]).boundary()
    sl = cyc.slice0((0,), [Fraction(1, 3)])
    assert chi(sl).is_zero()
    assert len(sl.terms) == 2


def test_slicing_mass_examples():
    seg = SimplexChain.build(2, 1, INT, [(Simplex(((0, 0), (3, 4))), 1)])
    assert seg.slicing_mass() == 7
    t1 = Simplex(((0, 0), (1, 0), (1, 1)))
    t2 = Simplex(((0, 0), (1, 1), (0, 1)))
    sq = SimplexChain.build(2, 2, INT, [(t1, 1), (t2, 1)])
    assert sq.slicing_mass() == 1


def test_slicing_mass_bounds_sample():
    rng = random.Random(3)
    for _ in range(50):
        s = rand_simplex(rng, 4, 2)
        msl_sq = s.proj_mass_sum() ** 2
        assert s.volume_sq() <= msl_sq <= 6 * s.volume_sq()


def test_overlap_predicate():
    t1 = Simplex(((0, 0), (1, 0), (1, 1)))
    t2 = Simplex(((0, 0), (1, 1), (0, 1)))
    t3 = Simplex(((0, 0), (1, 0), (0, 1)))
    assert not interiors_overlap(t1, t2)
    assert interiors_overlap(t1, t3)
    with pytest.raises(DegenerateInput):
        SimplexChain.build(2, 2, INT, [(t1, 1), (t3, 1)])


def test_riemann_oracle_for_slicing_mass():
    # midpoint sweep of 0-slice masses against the projection formula
    seg = SimplexChain.build(2, 1, INT, [(Simplex(((0, 0), (3, 4))), 2)])
    exact = float(seg.slicing_mass())
    total = 0.0
    samples = 2000
    for ax, width in ((0, Fraction(3)), (1, Fraction(4))):
        acc = Fraction(0)
        for t in range(samples):
            x = width * Fraction(2 * t + 1, 2 * samples)
            sl = seg.slice0((ax,), [x])
            acc += sum((v.norm() for _, v in sl.terms), Fraction(0))
        total += float(acc * width / samples)
    assert abs(total - exact) <= 0.01 * exact


def test_grassmann_full_dimension_zero_variance():
    t = Simplex(((0, 0), (1, 0), (0, 1)))
    est = grassmann_average(t, 100, 1)
    assert est.stderr <= 1e-12
    assert abs(est.mean - est.mass) <= 1e-9


def test_grassmann_rotation_invariance():
    s = Simplex(((0, 0, 0), (3, 4, 0)))
    # the same segment, rotated into another coordinate plane
    r = Simplex(((0, 0, 0), (0, 3, 4)))
    a = grassmann_average(s, 4000, 2)
    b = grassmann_average(r, 4000, 3)
    assert abs(a.mean - b.mean) <= 3 * (a.stderr + b.stderr)


def test_grassmann_needs_samples():
    with pytest.raises(DomainError):
        grassmann_average(Simplex(((0, 0), (1, 1))), 10, 0)
