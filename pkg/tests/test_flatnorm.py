import random
from fractions import Fraction

import pytest

from flatchain.chains import CoordChain, box_chain, iv, pt, single_cell
from flatchain.errors import SignatureMismatch, UnsupportedInput
from flatchain.flatnorm import (FlatWitness, InducedComplex, flat_dist,
                                flat_norm_grid, induced_complex, n_norm,
                                n_norm_tensor, subordinate,
                                tensor_flat_norm_grid)
from flatchain.groups import Integers, Rationals, Residues
from flatchain.randgen import rand_coord_chain, rand_tensor_chain
from flatchain.slicing import slicing_mass
from flatchain.tensor import Split, TensorChain, chi, chi_tensor, d1, d2, jdecomp

INT = Integers()
RAT = Rationals()


def test_induced_complex_counts():
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    cx = induced_complex([sq])
    assert cx.cell_count() == 9
    assert len(cx.cells(0)) == 4
    assert len(cx.cells(1)) == 4
    assert len(cx.cells(2)) == 1
    cx2 = induced_complex([sq], refinement=2)
    assert cx2.breakpoints[0] == (Fraction(0), Fraction(1, 2), Fraction(1))


def test_induced_complex_count_formula():
    rng = random.Random(2)
    for _ in range(20):
        n = rng.randint(1, 3)
        c = rand_coord_chain(rng, n, rng.randint(0, n), INT, terms=2)
        cx = induced_complex([c])
        total = sum(len(cx.cells(k)) for k in range(n + 1))
        assert total == cx.cell_count()


def test_subordinate_requires_breakpoints():
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    cx = induced_complex([sq])
    other = box_chain(INT, [(0, Fraction(1, 3)), (0, 1)], 1)
    with pytest.raises(SignatureMismatch):
        subordinate(other, cx)


def test_flat_norm_square_boundary():
    bd = box_chain(INT, [(0, 1), (0, 1)], 1).boundary()
    cx = induced_complex([bd])
    for backend in ("exhaustive", "lp"):
        w = flat_norm_grid(bd, cx, backend)
        assert w.value == 1
        assert w.s.mass() == 1 and w.r.is_empty()
    w = flat_norm_grid(bd, cx, "lp", lp_backend="exact")
    assert w.value == 1


def test_flat_norm_empty_and_top_degree():
    empty = CoordChain.empty(2, 0, INT)
    cx = induced_complex([box_chain(INT, [(0, 1), (0, 1)], 1)])
    assert flat_norm_grid(empty, cx).value == 0
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    w = flat_norm_grid(sq, cx)  # no 3-cells: witness is the chain itself
    assert w.value == sq.mass() and w.s.is_empty()


def test_flat_norm_residues_exhaustive():
    g = Residues(3)
    bd = box_chain(g, [(0, 1), (0, 1)], 2).boundary()
    cx = induced_complex([bd])
    w = flat_norm_grid(bd, cx, "exhaustive")
    # filling with coefficient 1 leaves boundary 2+1=0 mod 3; |2|=1 each edge
    assert w.value == 1
    with pytest.raises(UnsupportedInput):
        flat_norm_grid(bd, cx, "lp")


def test_witness_value_matches_masses():
    rng = random.Random(5)
    for _ in range(20):
        c = rand_coord_chain(rng, 2, rng.randint(0, 1), INT, terms=2)
        w = flat_norm_grid(c, induced_complex([c]), "lp")
        assert w.value == w.r.mass() + w.s.mass()
        assert w.r.add(w.s.boundary() if not w.s.is_empty()
                       else CoordChain.empty(c.n, c.k, c.group)) == c
        assert w.value <= c.mass()


def test_refinement_monotone():
    bd = box_chain(INT, [(0, 1), (0, 1)], 1).boundary()
    vals = [flat_norm_grid(bd, induced_complex([bd], refinement=r), "lp").value
            for r in (1, 2, 4)]
    assert vals[0] >= vals[1] >= vals[2]


def test_tensor_flat_norm_example():
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    t = d1(d2(TensorChain(Split(1, 1), 1, 1, sq)))
    cx = induced_complex([sq])
    w = tensor_flat_norm_grid(t, cx, "exhaustive")
    assert w.value == 1
    assert w.r11 is not None and w.r11.mass() == 1
    assert tensor_flat_norm_grid(t, cx, "lp").value == 1
    # the plain flat norm of the same four points needs mass 2
    assert flat_norm_grid(t.body, cx, "exhaustive").value == 2


def test_tensor_flat_norm_empty():
    t = TensorChain.empty(Split(1, 1), 0, 0, INT)
    cx = induced_complex([box_chain(INT, [(0, 1), (0, 1)], 1)])
    assert tensor_flat_norm_grid(t, cx).value == 0


def test_chi_bounds():
    rng = random.Random(9)
    for _ in range(30):
        c = rand_coord_chain(rng, 2, 0, rng.choice((INT, RAT)), terms=3)
        assert chi(c).norm() <= flat_norm_grid(c, induced_complex([c])).value
    sp = Split(1, 1)
    for _ in range(30):
        t = rand_tensor_chain(rng, sp, 0, 0, INT, terms=2)
        bound = tensor_flat_norm_grid(t, induced_complex([t.body])).value
        assert chi_tensor(t).norm() <= bound


def test_flat_dist_translate_prism():
    # distance between a square boundary and a small translate is bounded by
    # the swept prism: 2*delta per side pair plus lower order
    bd = box_chain(INT, [(0, 1), (0, 1)], 1).boundary()
    delta = Fraction(1, 8)
    moved = bd.translate([delta, 0])
    d = flat_dist(bd, moved, refinement=1)
    assert d <= 2 * delta + 4 * delta * delta + delta


def test_flat_dist_metric_properties():
    rng = random.Random(13)
    a = rand_coord_chain(rng, 2, 1, INT, terms=2)
    b = rand_coord_chain(rng, 2, 1, INT, terms=2)
    cx = induced_complex([a, b])
    assert flat_dist(a, a, cx) == 0
    assert flat_dist(a, b, cx) == flat_dist(b, a, cx)


def test_n_norm_square():
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    nn = n_norm(sq)
    assert nn.mass_based == 5
    assert nn.slicing_based == 5


def test_n_norm_slicing_equals_mass_based():
    rng = random.Random(23)
    for _ in range(30):
        n = rng.randint(1, 3)
        c = rand_coord_chain(rng, n, rng.randint(0, n), INT, terms=2)
        nn = n_norm(c)
        assert nn.mass_based == nn.slicing_based


def test_n_norm_tensor_pure_part_isometry():
    rng = random.Random(29)
    sp = Split(1, 1)
    for _ in range(30):
        t = rand_tensor_chain(rng, sp, rng.randint(0, 1), rng.randint(0, 1),
                              INT, terms=2)
        pure = jdecomp(t.body, sp)[(t.k1, t.k2)]
        assert n_norm_tensor(pure).slicing_based == n_norm(t.body).slicing_based


def test_nested_coefficients_unsupported():
    from flatchain.groups import ChainCoefficients
    g = ChainCoefficients(1, 0, INT)
    inner = CoordChain.build(1, 0, INT, [((pt(0),), 1)])
    c = CoordChain.build(1, 0, g, [((pt(0),), inner)])
    with pytest.raises(UnsupportedInput):
        flat_norm_grid(c, induced_complex([c]))
