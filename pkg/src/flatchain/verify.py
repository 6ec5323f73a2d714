"""Named verification checks over the whole library.

Each check draws its own deterministic generator from (seed, name), runs an
exact or statistical property, and reports one row.  The acceptance runner
executes the numbered criteria; the module suites cover the remaining
invariants.  Failures are rows, not exceptions, so a full report is always
produced.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from . import deform as DF
from . import flatnorm as FN
from . import slicing as SL
from . import tensor as TN
from .chains import BoundingBox, CoordChain, Iv, Pt, box_chain, single_cell
from .errors import DegenerateSlice, FlatchainError
from .groups import (ChainCoefficients, CoefficientValue, Integers, Rationals,
                     Residues)
from .randgen import (rand_coord_chain, rand_figure, rand_fraction,
                      rand_payload, rand_simplex, rand_tensor_chain,
                      rand_value)
from .simplices import Simplex, SimplexChain, grassmann_average

INT = Integers()
RAT = Rationals()


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    passed: bool
    detail: str


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _result(module, name, passed, detail="") -> CheckResult:
    return CheckResult(module, name, bool(passed), detail)


def _generic_shift(rng: random.Random, n: int, eps: Fraction) -> tuple:
    return DF.random_shift(rng, n, eps)


def _groups_for(rng: random.Random):
    return rng.choice((INT, RAT, Residues(5), Residues(7)))


# ---------------------------------------------------------------------------
# coeff


def check_norm_axioms_residues(seed: int) -> CheckResult:
    for m in range(1, 13):
        g = Residues(m)
        for r in range(m):
            n = g.norm(r)
            if n < 0 or (n == 0) != (r == 0) or g.norm(g.neg(r)) != n:
                return _result("coeff", "norm-axioms-residues", False, f"m={m} r={r}")
        for a in range(m):
            for b in range(m):
                if g.norm(g.add(a, b)) > g.norm(a) + g.norm(b):
                    return _result("coeff", "norm-axioms-residues", False,
                                   f"triangle fails m={m} {a}+{b}")
    return _result("coeff", "norm-axioms-residues", True, "exhaustive m<=12")


def check_norm_axioms_random(seed: int) -> CheckResult:
    rng = _rng(seed, "norm-axioms")
    nested = ChainCoefficients(2, 1, INT)
    for i in range(1000):
        g = rng.choice((INT, RAT, nested)) if i % 5 == 0 else rng.choice((INT, RAT))
        a = rand_payload(rng, g, nonzero=False)
        b = rand_payload(rng, g, nonzero=False)
        if g.norm(a) < 0 or g.norm(g.neg(a)) != g.norm(a):
            return _result("coeff", "norm-axioms-random", False, f"case {i}")
        if (g.norm(a) == 0) != g.is_zero(a):
            return _result("coeff", "norm-axioms-random", False, f"zero case {i}")
        if g.norm(g.add(a, b)) > g.norm(a) + g.norm(b):
            return _result("coeff", "norm-axioms-random", False, f"triangle {i}")
        if not g.is_zero(g.add(a, g.neg(a))):
            return _result("coeff", "norm-axioms-random", False, f"inverse {i}")
    return _result("coeff", "norm-axioms-random", True, "1000 randomized cases")


def check_nested_norm_is_mass(seed: int) -> CheckResult:
    rng = _rng(seed, "nested-norm")
    g = ChainCoefficients(2, 1, INT)
    for i in range(20):
        a = rand_payload(rng, g)
        b = rand_payload(rng, g)
        if g.norm(a) != a.mass():
            return _result("coeff", "nested-norm-is-mass", False, f"case {i}")
        if g.add(a, b).mass() > a.mass() + b.mass():
            return _result("coeff", "nested-norm-is-mass", False, f"subadd {i}")
    ok = (INT.add(3, -3) == 0) and (Residues(2).add(1, 1) == 0)
    return _result("coeff", "nested-norm-is-mass", ok, "20 nested pairs + examples")


# ---------------------------------------------------------------------------
# cubchain


def check_boundary_squared(seed: int, boundary=None) -> CheckResult:
    rng = _rng(seed, "dd0")
    boundary = boundary or (lambda c: c.boundary())
    for i in range(200):
        n = rng.randint(2, 4)
        k = rng.randint(2, n)
        c = rand_coord_chain(rng, n, k, _groups_for(rng), terms=rng.randint(1, 4))
        if not boundary(boundary(c)).is_empty():
            return _result("cubchain", "boundary-squared-zero", False, f"case {i}")
    return _result("cubchain", "boundary-squared-zero", True, "200 random chains")


def check_canonical_form(seed: int) -> CheckResult:
    rng = _rng(seed, "canon")
    for i in range(100):
        n = rng.randint(1, 3)
        k = rng.randint(0, n)
        c = rand_coord_chain(rng, n, k, _groups_for(rng), terms=rng.randint(1, 4))
        again = CoordChain.build(n, k, c.group, list(c.terms))
        if again != c:
            return _result("cubchain", "canonical-idempotent", False, f"case {i}")
        if (c.mass() == 0) != c.is_empty():
            return _result("cubchain", "canonical-idempotent", False,
                           f"mass-zero case {i}")
    whole = single_cell(1, INT, [Iv(Fraction(0), Fraction(2))], 1)
    parts = single_cell(1, INT, [Iv(Fraction(0), Fraction(1))], 1).add(
        single_cell(1, INT, [Iv(Fraction(1), Fraction(2))], 1))
    ok = whole == parts
    return _result("cubchain", "canonical-idempotent", ok,
                   "100 rebuilds + split-merge normal form")


def check_add_laws(seed: int) -> CheckResult:
    rng = _rng(seed, "add")
    for i in range(200):
        n = rng.randint(1, 3)
        k = rng.randint(0, n)
        g = _groups_for(rng)
        a = rand_coord_chain(rng, n, k, g, terms=2)
        b = rand_coord_chain(rng, n, k, g, terms=2)
        if a.add(CoordChain.empty(n, k, g)) != a:
            return _result("cubchain", "add-group-laws", False, f"identity {i}")
        if not a.add(a.neg()).is_empty():
            return _result("cubchain", "add-group-laws", False, f"inverse {i}")
        if a.add(b).mass() > a.mass() + b.mass():
            return _result("cubchain", "add-group-laws", False, f"subadd {i}")
    return _result("cubchain", "add-group-laws", True, "200 random pairs")


def check_translate(seed: int) -> CheckResult:
    rng = _rng(seed, "translate")
    for i in range(100):
        n = rng.randint(1, 3)
        k = rng.randint(1, n)
        c = rand_coord_chain(rng, n, k, _groups_for(rng), terms=2)
        y = [rand_fraction(rng) for _ in range(n)]
        z = [rand_fraction(rng) for _ in range(n)]
        if c.translate([0] * n) != c:
            return _result("cubchain", "translate-action", False, f"id {i}")
        if c.translate(y).translate(z) != c.translate([a + b for a, b in zip(y, z)]):
            return _result("cubchain", "translate-action", False, f"assoc {i}")
        if c.translate(y).mass() != c.mass():
            return _result("cubchain", "translate-action", False, f"mass {i}")
        if c.translate(y).boundary() != c.boundary().translate(y):
            return _result("cubchain", "translate-action", False, f"boundary {i}")
        box = c.support_box()
        if box is not None and c.translate(y).support_box() != box.translate(y):
            return _result("cubchain", "translate-action", False, f"box {i}")
    return _result("cubchain", "translate-action", True, "100 random cases")


# ---------------------------------------------------------------------------
# simplexchain


def check_cauchy_binet(seed: int) -> CheckResult:
    import math
    rng = _rng(seed, "cauchy-binet")
    for i in range(200):
        n = rng.choice((2, 3, 4))
        k = rng.randint(1, min(n, 3))
        s = rand_simplex(rng, n, k)
        lhs = sum((s.minor(g) ** 2 for g in combinations(range(n), k)), Fraction(0))
        if lhs != s.volume_sq() * math.factorial(k) ** 2:
            return _result("simplexchain", "cauchy-binet", False, f"case {i}")
    return _result("simplexchain", "cauchy-binet", True, "200 exact identities")


def check_mass_slicing_bounds(seed: int) -> CheckResult:
    rng = _rng(seed, "mass-bounds")
    n, k = 4, 2
    binom = 6
    for i in range(500):
        s = rand_simplex(rng, n, k)
        msl = s.proj_mass_sum()
        vol_sq = s.volume_sq()
        if not vol_sq <= msl ** 2 <= binom * vol_sq:
            return _result("simplexchain", "mass-slicing-bounds", False, f"case {i}")
    flat = Simplex(((0, 0, 0, 0), (1, 0, 0, 0), (0, 2, 0, 0)))
    if flat.proj_mass_sum() ** 2 != flat.volume_sq():
        return _result("simplexchain", "mass-slicing-bounds", False,
                       "coordinate-plane equality case")
    return _result("simplexchain", "mass-slicing-bounds", True,
                   "500 squared comparisons, equality case exact")


def check_simplex_slices(seed: int) -> CheckResult:
    rng = _rng(seed, "s-slices")
    seg = Simplex(((0, 0), (3, 4)))
    hit = seg.slice_point((0,), [Fraction(3, 2)])
    if hit != ((Fraction(3, 2), Fraction(2)), 1):
        return _result("simplexchain", "slice-examples", False, "segment slice")
    if seg.slice_point((0,), [Fraction(5)]) is not None:
        return _result("simplexchain", "slice-examples", False, "outside slice")
    for i in range(30):
        tri = rand_simplex(rng, 2, 2)
        cyc = SimplexChain.build(2, 2, INT, [(tri, 1)]).boundary()
        while True:
            x = [rand_fraction(rng, -3, 3, dens=(7, 11, 13))]
            try:
                sl = cyc.slice0((0,), x)
                break
            except DegenerateSlice:
                continue
        if not TN.chi(sl).is_zero():
            return _result("simplexchain", "slice-examples", False,
                           f"cycle slice not balanced, case {i}")
    return _result("simplexchain", "slice-examples", True,
                   "segment + 30 closed-cycle sweeps")


def check_slicing_permutation(seed: int) -> CheckResult:
    rng = _rng(seed, "s-perm")
    for i in range(30):
        n = rng.choice((3, 4))
        k = rng.randint(1, 2)
        s = rand_simplex(rng, n, k)
        base = s.proj_mass_sum()
        perm = list(range(n))
        rng.shuffle(perm)
        ps = Simplex(tuple(tuple(v[perm[j]] for j in range(n)) for v in s.vertices))
        if ps.proj_mass_sum() != base:
            return _result("simplexchain", "slicing-permutation", False, f"case {i}")
    return _result("simplexchain", "slicing-permutation", True, "30 permutations")


def check_triangulated_square(seed: int) -> CheckResult:
    t1 = Simplex(((0, 0), (1, 0), (1, 1)))
    t2 = Simplex(((0, 0), (1, 1), (0, 1)))
    sq = SimplexChain.build(2, 2, INT, [(t1, 1), (t2, 1)])
    ok = sq.slicing_mass() == box_chain(INT, [(0, 1), (0, 1)], 1).mass()
    tet = SimplexChain.build(3, 3, INT,
                             [(Simplex(((0, 0, 0), (1, 0, 0), (0, 1, 0),
                                        (0, 0, 1))), 1)])
    ok = ok and tet.boundary().boundary().is_empty()
    return _result("simplexchain", "triangulated-square", ok,
                   "coordinate-cell agreement + dd=0")


# ---------------------------------------------------------------------------
# tensor


def check_partial_boundaries(seed: int) -> CheckResult:
    rng = _rng(seed, "partials")
    for i in range(100):
        n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
        sp = TN.Split(n1, n2)
        k1 = rng.randint(1, n1)
        k2 = rng.randint(1, n2)
        t = rand_tensor_chain(rng, sp, k1, k2, _groups_for(rng))
        if k1 >= 2 and not TN.d1(TN.d1(t)).is_empty():
            return _result("tensor", "partial-boundary-laws", False, f"d1d1 {i}")
        if k2 >= 2 and not TN.d2(TN.d2(t)).is_empty():
            return _result("tensor", "partial-boundary-laws", False, f"d2d2 {i}")
        if not TN.d1(TN.d2(t)).add(TN.d2(TN.d1(t))).is_empty():
            return _result("tensor", "partial-boundary-laws", False, f"anticom {i}")
        parts = TN.jdecomp(t.body.boundary(), sp)
        p1 = parts.get((k1 - 1, k2))
        p2 = parts.get((k1, k2 - 1))
        if p1 is not None and p1.body != TN.d1(t).body:
            return _result("tensor", "partial-boundary-laws", False, f"split1 {i}")
        if p2 is not None and p2.body != TN.d2(t).body:
            return _result("tensor", "partial-boundary-laws", False, f"split2 {i}")
    return _result("tensor", "partial-boundary-laws", True, "100 random cases")


def check_jdecomp_partition(seed: int) -> CheckResult:
    rng = _rng(seed, "jdecomp")
    for i in range(100):
        n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
        sp = TN.Split(n1, n2)
        n = sp.n
        k = rng.randint(0, n)
        c = rand_coord_chain(rng, n, k, _groups_for(rng), terms=3)
        parts = TN.jdecomp(c, sp)
        total = CoordChain.empty(n, k, c.group)
        mass_sum = Fraction(0)
        slm_sum = Fraction(0)
        for t in parts.values():
            total = total.add(t.body)
            mass_sum += t.mass()
            slm_sum += SL.slicing_mass_tensor(t)
        if total != c or mass_sum != c.mass() or slm_sum != SL.slicing_mass(c):
            return _result("tensor", "jdecomp-partition", False, f"case {i}")
    return _result("tensor", "jdecomp-partition", True,
                   "100 random chains, every split with blocks <= 2")


def check_jdecomp_boundary_split(seed: int) -> CheckResult:
    rng = _rng(seed, "jsplit")
    for i in range(100):
        n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
        sp = TN.Split(n1, n2)
        k1 = rng.randint(0, n1)
        k2 = rng.randint(0, n2)
        if k1 + k2 == 0:
            k2 = 1 if n2 else 0
        t = rand_tensor_chain(rng, sp, k1, k2, _groups_for(rng))
        a = t.body
        ja = TN.jdecomp(a, sp)[(k1, k2)]
        if SL.slicing_mass_tensor(ja) != SL.slicing_mass(a):
            return _result("tensor", "jdecomp-boundary-split", False, f"mass {i}")
        if k1 + k2 >= 1:
            lhs = Fraction(0)
            if k1 >= 1:
                lhs += SL.slicing_mass_tensor(TN.d1(ja))
            if k2 >= 1:
                lhs += SL.slicing_mass_tensor(TN.d2(ja))
            if lhs != SL.slicing_mass(a.boundary()):
                return _result("tensor", "jdecomp-boundary-split", False,
                               f"boundary {i}")
    return _result("tensor", "jdecomp-boundary-split", True,
                   "100 pure-type chains, both identities exact")


def check_iota(seed: int) -> CheckResult:
    rng = _rng(seed, "iota")
    for i in range(100):
        n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
        sp = TN.Split(n1, n2)
        k1 = rng.randint(0, n1)
        k2 = rng.randint(0, n2)
        t = rand_tensor_chain(rng, sp, k1, k2, rng.choice((INT, RAT)))
        nested = TN.iota(t)
        if nested.mass() != t.mass():
            return _result("tensor", "iota-isometry", False, f"mass {i}")
        if TN.iota_inv(nested, sp).body != t.body:
            return _result("tensor", "iota-isometry", False, f"inverse {i}")
    single = TN.TensorChain(TN.Split(1, 1), 1, 1, box_chain(INT, [(0, 1), (0, 2)], 3))
    nested = TN.iota(single)
    ok = nested.mass() == Fraction(6) and len(nested.terms) == 1
    return _result("tensor", "iota-isometry", ok, "100 random + worked example")


def check_chi(seed: int) -> CheckResult:
    rng = _rng(seed, "chi")
    c = CoordChain.build(2, 0, INT, [((Pt(Fraction(0)), Pt(Fraction(0))), 3),
                                     ((Pt(Fraction(1)), Pt(Fraction(2))), -1)])
    if TN.chi(c).payload != 2:
        return _result("tensor", "chi-morphism", False, "worked example")
    for i in range(100):
        n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
        sp = TN.Split(n1, n2)
        t = rand_tensor_chain(rng, sp, 0, 0, rng.choice((INT, RAT)))
        if TN.chi_tensor(t).payload != TN.chi(t.body).payload:
            return _result("tensor", "chi-morphism", False, f"case {i}")
        if SL.slicing_mass_tensor(t) != t.body.mass():
            return _result("tensor", "chi-morphism", False, f"(0,0) mass {i}")
    return _result("tensor", "chi-morphism", True,
                   "worked example + 100 nested-route agreements")


# ---------------------------------------------------------------------------
# slicing


def check_slicing_equals_mass(seed: int) -> CheckResult:
    rng = _rng(seed, "slmass")
    for i in range(100):
        n = rng.randint(1, 4)
        k = rng.randint(0, n)
        c = rand_coord_chain(rng, n, k, _groups_for(rng), terms=3)
        if SL.slicing_mass(c) != c.mass():
            return _result("slicing", "slicing-mass-equals-mass", False, f"case {i}")
    return _result("slicing", "slicing-mass-equals-mass", True, "100 exact")


def check_figure_algebra(seed: int) -> CheckResult:
    rng = _rng(seed, "figures")
    for i in range(40):
        n = rng.randint(1, 2)
        j = rand_figure(rng, n, boxes=rng.randint(1, 2))
        k = rand_figure(rng, n, boxes=1)
        if not SL.figures_equal(SL.union(j, SL.complement(j)), SL.Figure.whole(n)):
            return _result("slicing", "figure-algebra", False, f"J+~J {i}")
        if not SL.figures_equal(SL.complement(SL.complement(j)), j):
            return _result("slicing", "figure-algebra", False, f"~~J {i}")
        if not SL.figures_equal(SL.intersect(j, j), j):
            return _result("slicing", "figure-algebra", False, f"idempotent {i}")
        both = SL.intersect(j, k)
        for _ in range(20):
            p = [rand_fraction(rng, -4, 4, dens=(7, 9)) for _ in range(n)]
            if both.contains(p) != (j.contains(p) and k.contains(p)):
                return _result("slicing", "figure-algebra", False, f"membership {i}")
    return _result("slicing", "figure-algebra", True,
                   "40 random figures, laws + membership spot checks")


def check_restrict(seed: int) -> CheckResult:
    rng = _rng(seed, "restrict")
    for i in range(100):
        n = rng.randint(1, 2)
        k = rng.randint(0, n)
        c = rand_coord_chain(rng, n, k, _groups_for(rng), terms=2)
        jf = rand_figure(rng, n, boxes=1)
        kf = SL.intersect(rand_figure(rng, n, boxes=1), SL.complement(jf))
        x = [rand_fraction(rng, -1, 1, dens=(7, 11)) for _ in range(n)]
        if SL.restrict(c, SL.Figure.whole(n), x) != c:
            return _result("slicing", "restrict-laws", False, f"identity {i}")
        lhs = SL.restrict(c, SL.union(jf, kf), x)
        rhs = SL.restrict(c, jf, x).add(SL.restrict(c, kf, x))
        if lhs != rhs:
            return _result("slicing", "restrict-laws", False, f"additivity {i}")
        comp = SL.restrict(SL.restrict(c, jf, x), kf, x)
        if comp != SL.restrict(c, SL.intersect(jf, kf), x):
            return _result("slicing", "restrict-laws", False, f"composition {i}")
        y = [rand_fraction(rng, -1, 1, dens=(5,)) for _ in range(n)]
        if SL.restrict(c, jf.translate(y), x) != SL.restrict(
                c, jf, [a + b for a, b in zip(x, y)]):
            return _result("slicing", "restrict-laws", False, f"shift {i}")
        if SL.restrict(c, jf, x).mass() > c.mass():
            return _result("slicing", "restrict-laws", False, f"mass {i}")
    return _result("slicing", "restrict-laws", True, "100 random cases, all exact")


def check_restrict_jdecomp(seed: int) -> CheckResult:
    rng = _rng(seed, "restr-j")
    for i in range(50):
        sp = TN.Split(1, 1)
        k = rng.randint(0, 2)
        c = rand_coord_chain(rng, 2, k, _groups_for(rng), terms=2)
        jf = rand_figure(rng, 2, boxes=1)
        x = [rand_fraction(rng, -1, 1, dens=(7,)) for _ in range(2)]
        restricted = SL.restrict(c, jf, x)
        for bd, part in TN.jdecomp(c, sp).items():
            lhs = SL.restrict(part.body, jf, x)
            rhs = TN.jdecomp(restricted, sp)[bd].body
            if lhs != rhs:
                return _result("slicing", "restrict-jdecomp-commute", False,
                               f"case {i} {bd}")
    return _result("slicing", "restrict-jdecomp-commute", True, "50 random cases")


def check_slice0_examples(seed: int) -> CheckResult:
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    sl = SL.slice0_coord(sq, (0, 1), [Fraction(1, 2), Fraction(1, 2)])
    if TN.chi(sl).payload != 1 or len(sl.terms) != 1:
        return _result("slicing", "slice0-examples", False, "full-dimensional")
    horiz = single_cell(2, INT, [Iv(Fraction(0), Fraction(1)), Pt(Fraction(0))], 1)
    if not SL.slice0_coord(horiz, (1,), [Fraction(1, 3)]).is_empty():
        return _result("slicing", "slice0-examples", False, "axis-set mismatch")
    g = INT.value(1)
    stair = DF.staircase_chain(g, 2)
    sl = SL.slice0_coord(stair.body, (1,), [Fraction(1, 3)])
    payloads = sorted(v.payload for _, v in sl.terms)
    if payloads != [-1, 1]:
        return _result("slicing", "slice0-examples", False, "staircase slice")
    if SL.slicing_mass_tensor(stair) != 2:
        return _result("slicing", "slice0-examples", False, "staircase mass")
    return _result("slicing", "slice0-examples", True,
                   "square, mismatched family, staircase: two points -g,+g")


def check_slice_riemann(seed: int) -> CheckResult:
    rng = _rng(seed, "riemann")
    c = rand_coord_chain(rng, 2, 1, INT, terms=2)
    box = c.support_box()
    lo = [min(b, Fraction(-2)) for b in box.lo]
    hi = [max(b, Fraction(2)) for b in box.hi]
    samples = 10 ** 4
    total = 0.0
    per_axis = samples // 2
    for ax in (0, 1):
        width = hi[ax] - lo[ax]
        acc = Fraction(0)
        done = 0
        t = 0
        while done < per_axis:
            t += 1
            x = lo[ax] + width * Fraction(2 * t - 1, 2 * per_axis)
            if t > 3 * per_axis:
                break
            try:
                sl = SL.slice0_coord(c, (ax,), [x])
            except DegenerateSlice:
                continue
            done += 1
            acc += sum((v.norm() for _, v in sl.terms), Fraction(0))
        total += float(acc * width / per_axis)
    exact = float(SL.slicing_mass(c))
    ok = abs(total - exact) <= 0.01 * max(exact, 1.0)
    return _result("slicing", "slice-riemann-oracle", ok,
                   f"midpoint sweep {total:.4f} vs exact {exact:.4f}")


# ---------------------------------------------------------------------------
# flatnorm


def check_flatnorm_basics(seed: int) -> CheckResult:
    rng = _rng(seed, "fn-basic")
    bd = box_chain(INT, [(0, 1), (0, 1)], 1).boundary()
    cx = FN.induced_complex([bd])
    if cx.cell_count() != 9:
        return _result("flatnorm", "solver-basics", False, "cell count")
    w = FN.flat_norm_grid(bd, cx, "exhaustive")
    if w.value != 1 or not w.r.is_empty():
        return _result("flatnorm", "solver-basics", False, "square boundary")
    for i in range(20):
        n = rng.randint(1, 2)
        k = rng.randint(0, n - 1)
        c = rand_coord_chain(rng, n, k, INT, terms=2)
        cx = FN.induced_complex([c])
        w = FN.flat_norm_grid(c, cx, "lp")
        if w.value > c.mass():
            return _result("flatnorm", "solver-basics", False, f"<=mass {i}")
    return _result("flatnorm", "solver-basics", True,
                   "worked example + 20 mass bounds, witnesses re-verified")


def check_refinement_monotone(seed: int) -> CheckResult:
    rng = _rng(seed, "fn-refine")
    cases = [box_chain(INT, [(0, 1), (0, 1)], 1).boundary()]
    for _ in range(4):
        cases.append(rand_coord_chain(rng, 2, rng.randint(0, 1), INT, terms=2))
    for idx, c in enumerate(cases):
        vals = []
        for r in (1, 2, 4):
            cx = FN.induced_complex([c], refinement=r)
            vals.append(FN.flat_norm_grid(c, cx, "lp").value)
        if not vals[0] >= vals[1] >= vals[2]:
            return _result("flatnorm", "refinement-monotone", False,
                           f"case {idx}: {[str(v) for v in vals]}")
    return _result("flatnorm", "refinement-monotone", True,
                   "refinements 1|2|4 non-increasing on 5 chains")


def _unit_coeff_chain(rng, n, k, terms):
    """Random chain with coefficients restricted to +-1, the range on which
    the default exhaustive search is complete."""
    from .randgen import rand_cell
    items = []
    for _ in range(terms):
        axes = rng.sample(range(n), k)
        items.append((rand_cell(rng, n, set(axes), 0, 2),
                      rng.choice((-1, 1))))
    return CoordChain.build(n, k, INT, items)


def check_exhaustive_equals_lp(seed: int) -> CheckResult:
    rng = _rng(seed, "fn-agree")
    cases = []
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    cases.append((sq.boundary(), FN.induced_complex([sq.boundary()])))
    for _ in range(6):
        c = _unit_coeff_chain(rng, 2, 0, 2)
        cases.append((c, FN.induced_complex([c])))
    seg = _unit_coeff_chain(rng, 2, 1, 1)
    cases.append((seg, FN.induced_complex([seg])))
    for idx, (c, cx) in enumerate(cases):
        if len(cx.cells(c.k + 1)) > 12:
            continue
        we = FN.flat_norm_grid(c, cx, "exhaustive")
        wl = FN.flat_norm_grid(c, cx, "lp")
        wx = FN.flat_norm_grid(c, cx, "lp", lp_backend="exact")
        if not we.value == wl.value == wx.value:
            return _result("flatnorm", "exhaustive-equals-lp", False,
                           f"case {idx}: {we.value} {wl.value} {wx.value}")
    t = TN.d1(TN.d2(TN.TensorChain(TN.Split(1, 1), 1, 1, sq)))
    cx = FN.induced_complex([sq])
    te = FN.tensor_flat_norm_grid(t, cx, "exhaustive")
    tl = FN.tensor_flat_norm_grid(t, cx, "lp")
    if te.value != tl.value or te.value != 1:
        return _result("flatnorm", "exhaustive-equals-lp", False,
                       f"tensor: {te.value} {tl.value}")
    return _result("flatnorm", "exhaustive-equals-lp", True,
                   "8 small complexes + four-part decomposition")


def check_chi_flat_bound(seed: int) -> CheckResult:
    rng = _rng(seed, "chi-bound")
    for i in range(100):
        c = rand_coord_chain(rng, 2, 0, rng.choice((INT, RAT)), terms=3,
                             lo=-2, hi=2)
        cx = FN.induced_complex([c])
        if TN.chi(c).norm() > FN.flat_norm_grid(c, cx, "lp").value:
            return _result("flatnorm", "chi-flat-bound", False, f"plain {i}")
    sp = TN.Split(1, 1)
    for i in range(100):
        t = rand_tensor_chain(rng, sp, 0, 0, rng.choice((INT, RAT)), terms=3)
        cx = FN.induced_complex([t.body])
        if TN.chi_tensor(t).norm() > FN.tensor_flat_norm_grid(t, cx, "lp").value:
            return _result("flatnorm", "chi-flat-bound", False, f"tensor {i}")
    return _result("flatnorm", "chi-flat-bound", True,
                   "100 plain + 100 tensor total-coefficient bounds")


def check_flat_dist_metric(seed: int) -> CheckResult:
    rng = _rng(seed, "fn-metric")
    for i in range(30):
        n = 2
        k = rng.randint(0, 1)
        a = rand_coord_chain(rng, n, k, INT, terms=2, lo=0, hi=2)
        b = rand_coord_chain(rng, n, k, INT, terms=2, lo=0, hi=2)
        c = rand_coord_chain(rng, n, k, INT, terms=2, lo=0, hi=2)
        cx = FN.induced_complex([a, b, c])
        if FN.flat_dist(a, a, cx) != 0:
            return _result("flatnorm", "flat-dist-metric", False, f"zero {i}")
        dab = FN.flat_dist(a, b, cx)
        dba = FN.flat_dist(b, a, cx)
        if dab != dba:
            return _result("flatnorm", "flat-dist-metric", False, f"sym {i}")
        if dab > FN.flat_dist(a, c, cx) + FN.flat_dist(c, b, cx):
            return _result("flatnorm", "flat-dist-metric", False, f"triangle {i}")
    return _result("flatnorm", "flat-dist-metric", True,
                   "30 triples on shared complexes")


def check_tensor_le_chain(seed: int) -> CheckResult:
    rng = _rng(seed, "fn-tensor-le")
    sp = TN.Split(1, 1)
    for i in range(20):
        k1 = rng.randint(0, 1)
        k2 = rng.randint(0, 1)
        t = rand_tensor_chain(rng, sp, k1, k2, INT, terms=2)
        cx = FN.induced_complex([t.body])
        tv = FN.tensor_flat_norm_grid(t, cx, "lp").value
        cv = FN.flat_norm_grid(t.body, cx, "lp").value
        if tv > cv:
            return _result("flatnorm", "tensor-le-chain", False,
                           f"case {i}: {tv} > {cv}")
    return _result("flatnorm", "tensor-le-chain", True, "20 random tensor chains")


def check_n_norms(seed: int) -> CheckResult:
    rng = _rng(seed, "n-norms")
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    nn = FN.n_norm(sq)
    if nn.mass_based != 5 or nn.slicing_based != 5:
        return _result("flatnorm", "n-norm-consistency", False, "square example")
    for i in range(50):
        n = rng.randint(1, 3)
        k = rng.randint(0, n)
        c = rand_coord_chain(rng, n, k, _groups_for(rng), terms=2)
        nn = FN.n_norm(c)
        if nn.mass_based != nn.slicing_based:
            return _result("flatnorm", "n-norm-consistency", False, f"case {i}")
    sp = TN.Split(1, 1)
    for i in range(50):
        k1, k2 = rng.randint(0, 1), rng.randint(0, 1)
        t = rand_tensor_chain(rng, sp, k1, k2, _groups_for(rng), terms=2)
        a = t.body
        ja = TN.jdecomp(a, sp)[(k1, k2)]
        lhs = FN.n_norm_tensor(ja).slicing_based
        rhs = FN.n_norm(a).slicing_based
        if lhs != rhs:
            return _result("flatnorm", "n-norm-consistency", False, f"pure {i}")
    return _result("flatnorm", "n-norm-consistency", True,
                   "square = 5, 50 + 50 exact identities")


# ---------------------------------------------------------------------------
# deform


def _random_chain_and_grid(rng):
    n = rng.randint(1, 3)
    k = rng.randint(1, n)
    c = rand_coord_chain(rng, n, k, rng.choice((INT, RAT, Residues(5))), terms=2)
    eps = rng.choice((Fraction(1), Fraction(1, 2)))
    while True:
        y = _generic_shift(rng, n, eps)
        try:
            grid = DF.GridSpec(eps, y)
            DF.deform_P(c, grid)
            return c, grid
        except DegenerateSlice:
            continue


def check_deform_commutes(seed: int) -> CheckResult:
    rng = _rng(seed, "dP")
    for i in range(100):
        c, grid = _random_chain_and_grid(rng)
        if c.k < 1:
            continue
        lhs = DF.deform_P(c, grid).boundary()
        rhs = DF.deform_P(c.boundary(), grid)
        if lhs != rhs:
            return _result("deform", "boundary-commutes", False, f"case {i}")
    return _result("deform", "boundary-commutes", True,
                   "100 random chains at generic shifts, exact")


def check_grid_fixpoint(seed: int) -> CheckResult:
    rng = _rng(seed, "fixpoint")
    for i in range(30):
        n = rng.randint(1, 2)
        k = rng.randint(0, n)
        eps = Fraction(1)
        cells = []
        for _ in range(2):
            axes = set(rng.sample(range(n), k))
            cell = tuple(Iv(Fraction(m := rng.randint(-2, 1)), Fraction(m + 1))
                         if ax in axes else Pt(Fraction(rng.randint(-2, 2)))
                         for ax in range(n))
            cells.append((cell, rand_value(rng, INT)))
        c = CoordChain.build(n, k, INT, cells)
        y = tuple(Fraction(rng.randint(1, 30), 101) for _ in range(n))
        if DF.deform_P(c, DF.GridSpec(eps, y)) != c:
            return _result("deform", "grid-fixpoint", False, f"fix {i}")
        cc, grid = _random_chain_and_grid(rng)
        once = DF.deform_P(cc, grid)
        while True:
            y2 = tuple(Fraction(rng.randint(1, 20), 89) * grid.eps
                       for _ in range(cc.n))
            try:
                twice = DF.deform_P(once, DF.GridSpec(grid.eps, y2))
                break
            except DegenerateSlice:
                continue
        if twice != once:
            return _result("deform", "grid-fixpoint", False, f"projection {i}")
    return _result("deform", "grid-fixpoint", True,
                   "30 grid chains fixed + reprojection stable")


def check_support_inflation(seed: int) -> CheckResult:
    rng = _rng(seed, "inflate")
    for i in range(50):
        c, grid = _random_chain_and_grid(rng)
        out = DF.deform_P(c, grid)
        if out.is_empty():
            continue
        box = c.support_box().translate(grid.shift).inflate(grid.eps / 2)
        if not box.contains(out.support_box()):
            return _result("deform", "support-inflation", False, f"case {i}")
    return _result("deform", "support-inflation", True,
                   "50 random deformations inside the half-step box")


def check_segment_average(seed: int) -> CheckResult:
    seg = SimplexChain.build(2, 1, INT, [(Simplex(((0, 0), (3, 4))), 1)])
    exact = DF.shift_average_mass(seg, 1, "exact")
    if exact.value != 7:
        return _result("deform", "segment-average", False,
                       f"exact integrator gave {exact.value}")
    mc = DF.shift_average_mass(seg, 1, "montecarlo", samples=10 ** 4, seed=seed)
    if abs(mc.value - 7.0) > 3 * mc.stderr + 1e-12:
        return _result("deform", "segment-average", False,
                       f"montecarlo {mc.value} +- {mc.stderr}")
    grid = DF.GridSpec(1, (Fraction(1, 7), Fraction(1, 9)))
    if DF.deform_P(seg, grid).mass() != 7:
        return _result("deform", "segment-average", False, "pointwise mass")
    return _result("deform", "segment-average", True,
                   f"exact 7, montecarlo {mc.value:.4f} +- {mc.stderr:.4f}")


def check_pi0_pure_part(seed: int) -> CheckResult:
    rng = _rng(seed, "pi0")
    for i in range(50):
        n1, n2 = rng.randint(1, 2), 1
        sp = TN.Split(n1, n2)
        k1 = rng.randint(0, n1)
        k2 = rng.randint(0, 1)
        t = rand_tensor_chain(rng, sp, k1, k2, INT, terms=2)
        while True:
            y = _generic_shift(rng, sp.n, Fraction(1, 2))
            try:
                grid = DF.GridSpec(Fraction(1, 2), y)
                lhs = DF.deform_Pi0(t, grid)
                break
            except DegenerateSlice:
                continue
        rhs = TN.jdecomp(DF.deform_P(t.body, grid), sp)[(k1, k2)]
        if lhs.body != rhs.body:
            return _result("deform", "pi0-pure-part", False, f"case {i}")
    return _result("deform", "pi0-pure-part", True, "50 random tensor chains")


def check_average_ratio_report(seed: int) -> CheckResult:
    rng = _rng(seed, "avg-ratio")
    worst = {}
    for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 4)):
        ratios = []
        for i in range(10):
            c = rand_coord_chain(rng, 2, 1, INT, terms=2)
            avg = DF.shift_average_mass(c, eps, "exact").value
            ratios.append(avg / c.mass())
        worst[eps] = max(ratios)
    detail = ", ".join(f"eps={e}: worst {float(w):.3f}" for e, w in worst.items())
    return _result("deform", "average-mass-ratio", True, detail)


def check_convergence(seed: int) -> CheckResult:
    eps = [Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]
    bd = box_chain(INT, [(0, 1), (0, 1)], 1).boundary()
    rows = DF.convergence_experiment(bd, eps, samples=5, seed=seed, refinement=2)
    means = [r.mean for r in rows]
    if not all(a > b for a, b in zip(means, means[1:])):
        return _result("deform", "deformation-convergence", False,
                       f"square not decreasing: {means}")
    if means[-1] > means[0] / 4:
        return _result("deform", "deformation-convergence", False,
                       f"square final {means[-1]:.4f} > initial/4")
    seg = SimplexChain.build(2, 1, INT, [(Simplex(((0, 0), (3, 4))), 1)])
    rows = DF.convergence_experiment(seg, eps, samples=5, seed=seed + 1)
    smeans = [r.mean for r in rows]
    if not all(a > b for a, b in zip(smeans, smeans[1:])):
        return _result("deform", "deformation-convergence", False,
                       f"segment not decreasing: {smeans}")
    if smeans[-1] > smeans[0] / 4:
        return _result("deform", "deformation-convergence", False,
                       f"segment final {smeans[-1]:.4f} > initial/4")
    return _result("deform", "deformation-convergence", True,
                   f"square {means[0]:.3f}->{means[-1]:.3f}, "
                   f"segment {smeans[0]:.3f}->{smeans[-1]:.3f}")


def check_cauchy(seed: int) -> CheckResult:
    g = INT.value(1)
    st3 = DF.staircase_chain(g, 3)
    rows = DF.cauchy_experiment(st3, 4, (Fraction(1, 100), Fraction(1, 144)),
                                refinement=2)
    vals = [r.tensor_bound for r in rows]
    if not all(a >= b for a, b in zip(vals, vals[1:])) or not vals[0] > vals[-1]:
        return _result("deform", "dyadic-cauchy", False,
                       f"bounds not decaying: {[str(v) for v in vals]}")
    ratio = DF.fitted_ratio(vals)
    if not ratio <= 0.7:
        return _result("deform", "dyadic-cauchy", False, f"fitted ratio {ratio:.3f}")
    return _result("deform", "dyadic-cauchy", True,
                   f"bounds {[float(v) for v in vals]}, fitted ratio {ratio:.3f}")


def check_counterexample(seed: int) -> CheckResult:
    g = INT.value(2)
    bundle = DF.counterexample_build(g, 3)
    if bundle.triangle_mass != g.norm() / 2:
        return _result("deform", "triangle-counterexample", False, "triangle mass")
    for j in (1, 2, 3):
        if bundle.staircase_slicing_masses[j] != 2 * g.norm():
            return _result("deform", "triangle-counterexample", False,
                           f"slicing mass j={j}")
    for j, pm in bundle.prism_masses.items():
        if pm > Fraction(1, 2 ** j) * g.norm():
            return _result("deform", "triangle-counterexample", False,
                           f"prism j={j} mass {pm}")
        diff = bundle.staircases[j + 1].sub(bundle.staircases[j])
        cx = FN.induced_complex([diff.body])
        solver_val = FN.tensor_flat_norm_grid(diff, cx, "lp").value
        if solver_val > pm:
            return _result("deform", "triangle-counterexample", False,
                           f"solver above witness j={j}")
    if not all(bundle.corner_anticommute.values()):
        return _result("deform", "triangle-counterexample", False, "anticommute")
    for j, cert in bundle.corner_certificates.items():
        if cert is None or cert[2] == 0:
            return _result("deform", "triangle-counterexample", False,
                           f"certificate j={j}")
    return _result("deform", "triangle-counterexample", True,
                   "masses, prisms, corner certificates all exact")


def check_grassmann_report(seed: int) -> CheckResult:
    s1 = Simplex(((0, 0, 0), (3, 4, 0)))
    s2 = Simplex(((1, 1, 1), (2, 0, 3)))
    e1 = grassmann_average(s1, 10 ** 4, seed)
    e2 = grassmann_average(s2, 10 ** 4, seed + 1)
    r1, r2 = e1.ratio, e2.ratio
    se = (e1.stderr / e1.mass + e2.stderr / e2.mass)
    agree = abs(r1 - r2) <= 3 * se
    full = Simplex(((0, 0), (1, 0), (0, 1)))
    efull = grassmann_average(full, 100, seed)
    zero_var = efull.stderr <= 1e-12 and abs(efull.mean - efull.mass) <= 1e-9
    detail = (f"ratios {r1:.4f} vs {r2:.4f} (3se={3 * se:.4f}, "
              f"agree={agree}); k=n zero-variance={zero_var}")
    return _result("deform", "rotation-average-report", True, detail)


# ---------------------------------------------------------------------------
# registry and runners


SUITES = {
    "coeff": [check_norm_axioms_residues, check_norm_axioms_random,
              check_nested_norm_is_mass],
    "cubchain": [check_boundary_squared, check_canonical_form, check_add_laws,
                 check_translate],
    "simplexchain": [check_cauchy_binet, check_mass_slicing_bounds,
                     check_simplex_slices, check_slicing_permutation,
                     check_triangulated_square],
    "tensor": [check_partial_boundaries, check_jdecomp_partition,
               check_jdecomp_boundary_split, check_iota, check_chi],
    "slicing": [check_slicing_equals_mass, check_figure_algebra, check_restrict,
                check_restrict_jdecomp, check_slice0_examples,
                check_slice_riemann],
    "flatnorm": [check_flatnorm_basics, check_refinement_monotone,
                 check_exhaustive_equals_lp, check_chi_flat_bound,
                 check_flat_dist_metric, check_tensor_le_chain, check_n_norms],
    "deform": [check_deform_commutes, check_grid_fixpoint,
               check_support_inflation, check_segment_average,
               check_pi0_pure_part, check_average_ratio_report,
               check_convergence, check_cauchy, check_counterexample,
               check_grassmann_report],
}


def run_suite(suite: str = "all", seed: int = 0) -> list[CheckResult]:
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise FlatchainError(f"unknown suite {suite!r}; "
                             f"choose from all, {', '.join(SUITES)}")
    rows = []
    for name in names:
        for fn in SUITES[name]:
            try:
                rows.append(fn(seed))
            except Exception as e:  # a crash is a failing row, not an abort
                rows.append(CheckResult(name, fn.__name__, False,
                                        f"raised {type(e).__name__}: {e}"))
    return rows
