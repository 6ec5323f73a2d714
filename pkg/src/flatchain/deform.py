"""Grid deformation of chains and tensor chains, exact shift averaging, and
the experiment runners built on them.

The deformation of a chain onto the scale-eps grid assigns to every k-face F
of the grid the total coefficient of the translated chain's 0-slice along
the affine plane spanned by F's dual face, restricted to that dual face.
For a cell whose interval axes are gamma this reduces to counting the dual
hyperplane centers crossed by the cell (coordinate cells) or to solving for
the slice point of each crossed center (simplex cells), and binning the
slice point into the half-open dual box of the remaining axes.  Grid faces
and dual faces both carry the canonical increasing-axis orientation, whose
pairing is consistent across all face types; boundary and deformation then
commute exactly, and grid chains are fixed points for small generic shifts.

Shifts are generic when no input coordinate lands on a dual hyperplane
(a half-step plus a multiple of eps); ties raise DegenerateSlice and the
samplers draw a fresh shift.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Sequence

from .chains import CoordChain, Iv, Pt, cell_axes
from .errors import DegenerateSlice, DomainError, UnsupportedInput
from .flatnorm import (InducedComplex, flat_norm_grid, induced_complex,
                       tensor_flat_norm_grid)
from .groups import CoefficientValue
from .simplices import Simplex, SimplexChain
from .slicing import slicing_mass_tensor
from .tensor import Split, TensorChain, d1, d2


@dataclass(frozen=True)
class GridSpec:
    eps: Fraction
    shift: tuple

    def __post_init__(self):
        eps = Fraction(self.eps)
        if eps <= 0:
            raise DomainError("grid scale must be positive")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "shift",
                           tuple(Fraction(t) for t in self.shift))


def dual_index(q: Fraction, eps: Fraction) -> int:
    """Index m of the half-open dual box [eps(m-1/2), eps(m+1/2)) holding q."""
    t = q / eps + Fraction(1, 2)
    if t.denominator == 1:
        raise DegenerateSlice(f"coordinate {q} lies on a dual hyperplane")
    return math.floor(t)


def _center_range(a: Fraction, b: Fraction, eps: Fraction) -> range:
    """Grid indices m with eps*(m+1/2) strictly inside (a, b); endpoints on a
    center are rejected as degenerate."""
    ta = a / eps - Fraction(1, 2)
    tb = b / eps - Fraction(1, 2)
    if ta.denominator == 1 or tb.denominator == 1:
        raise DegenerateSlice("cell endpoint lies on a dual hyperplane")
    return range(math.floor(ta) + 1, math.floor(tb) + 1)


def deform_P(c, grid: GridSpec) -> CoordChain:
    """Project a chain onto the k-faces of the scale-eps grid after
    translating it by the grid shift.  Exact; commutes with the boundary."""
    eps = grid.eps
    moved = c.translate(grid.shift)
    group = moved.group if isinstance(moved, CoordChain) else moved.group
    acc: dict = {}

    def put(face, payload):
        if face in acc:
            s = group.add(acc[face], payload)
            if group.is_zero(s):
                del acc[face]
            else:
                acc[face] = s
        else:
            acc[face] = payload

    if isinstance(moved, CoordChain):
        for cell, val in moved.terms:
            ranges = []
            for f in cell:
                if isinstance(f, Iv):
                    ranges.append([(True, m) for m in _center_range(f.a, f.b, eps)])
                else:
                    ranges.append([(False, dual_index(f.q, eps))])
            for combo in iproduct(*ranges):
                face = tuple(Iv(eps * m, eps * (m + 1)) if isiv else Pt(eps * m)
                             for isiv, m in combo)
                put(face, val.payload)
    elif isinstance(moved, SimplexChain):
        from itertools import combinations
        n, k = moved.n, moved.k
        for s, val in moved.terms:
            spans = [(min(v[ax] for v in s.vertices), max(v[ax] for v in s.vertices))
                     for ax in range(n)]
            for gamma in combinations(range(n), k):
                if s.minor(gamma) == 0:
                    continue
                ranges = []
                for ax in gamma:
                    lo, hi = spans[ax]
                    if lo == hi:
                        ranges.append(range(0))
                    else:
                        ranges.append(_center_range(lo, hi, eps))
                for ms in iproduct(*ranges):
                    x = [eps * (m + Fraction(1, 2)) for m in ms]
                    hit = s.slice_point(gamma, x)
                    if hit is None:
                        continue
                    point, sign = hit
                    face = []
                    gi = 0
                    for ax in range(n):
                        if ax in gamma:
                            face.append(Iv(eps * ms[gi], eps * (ms[gi] + 1)))
                            gi += 1
                        else:
                            face.append(Pt(eps * dual_index(point[ax], eps)))
                    payload = val.payload if sign > 0 else group.neg(val.payload)
                    put(tuple(face), payload)
    else:
        raise UnsupportedInput(f"cannot deform {type(moved).__name__}")
    return CoordChain.build(c.n, c.k, group, list(acc.items()))


def deform_Pi0(t: TensorChain, grid: GridSpec) -> TensorChain:
    """Deformation of a tensor chain onto the grid's faces of its own type;
    on homogeneous chains this is the plain deformation of the body, which
    preserves the type cell by cell."""
    return TensorChain(t.split, t.k1, t.k2, deform_P(t.body, grid))


# ---------------------------------------------------------------------------
# Exact shift averaging


@dataclass(frozen=True)
class ShiftBoxDecomposition:
    """Partition of the shift torus [0,1)^n into boxes on which the crossing
    combinatorics of the scaled translates are constant; the average of the
    deformed mass is the box-volume-weighted sum of per-box values."""

    eps: Fraction
    axis_breaks: tuple  # per axis: sorted breakpoints inside (0,1)
    boxes: tuple  # ((center z, weight, mass), ...)

    @property
    def average(self) -> Fraction:
        return sum((w * m for _, w, m in self.boxes), Fraction(0))


def _axis_coordinates(c) -> list[set]:
    out = [set() for _ in range(c.n)]
    if isinstance(c, CoordChain):
        for cell, _ in c.terms:
            for ax, f in enumerate(cell):
                if isinstance(f, Pt):
                    out[ax].add(f.q)
                else:
                    out[ax].update((f.a, f.b))
    else:
        for s, _ in c.terms:
            for v in s.vertices:
                for ax, q in enumerate(v):
                    out[ax].add(q)
    return out


def shift_box_decomposition(c: CoordChain, eps) -> ShiftBoxDecomposition:
    eps = Fraction(eps)
    breaks = []
    for coords in _axis_coordinates(c):
        s = set()
        for q in coords:
            s.add((Fraction(1, 2) - q / eps) % 1)
        breaks.append(sorted(s))
    axes = []
    for bs in breaks:
        pts = [Fraction(0)] + [b for b in bs if b != 0] + [Fraction(1)]
        axes.append(list(zip(pts, pts[1:])))
    boxes = []
    for combo in iproduct(*axes):
        z = tuple((lo + hi) / 2 for lo, hi in combo)
        w = Fraction(1)
        for lo, hi in combo:
            w *= hi - lo
        y = tuple(eps * t for t in z)
        m = deform_P(c, GridSpec(eps, y)).mass()
        boxes.append((z, w, m))
    return ShiftBoxDecomposition(eps, tuple(tuple(b) for b in breaks), tuple(boxes))


def _segment_exact_average(chain: SimplexChain, eps: Fraction) -> Fraction:
    """Exact shift-averaged deformed mass for a single oriented segment: the
    per-axis crossing count is piecewise constant in that axis' shift alone
    and distinct crossings land on distinct faces, so the axes decouple."""
    if chain.k != 1 or len(chain.terms) != 1:
        raise UnsupportedInput("exact averaging needs a single segment")
    s, val = chain.terms[0]
    gnorm = val.norm()
    total = Fraction(0)
    for ax in range(chain.n):
        lo = min(v[ax] for v in s.vertices)
        hi = max(v[ax] for v in s.vertices)
        if lo == hi:
            continue
        crit = sorted({(Fraction(1, 2) - q / eps) % 1 for q in (lo, hi)})
        pts = [Fraction(0)] + [b for b in crit if b != 0] + [Fraction(1)]
        for za, zb in zip(pts, pts[1:]):
            z = (za + zb) / 2
            count = len(_center_range(lo + eps * z, hi + eps * z, eps))
            total += (zb - za) * count
    return gnorm * eps * total


@dataclass(frozen=True)
class AverageMassResult:
    kind: str
    value: Fraction | float
    stderr: float | None = None
    samples: int | None = None


def random_shift(rng: random.Random, n: int, eps) -> tuple:
    """Uniform rational shift in [0, eps)^n with a fine dyadic denominator."""
    eps = Fraction(eps)
    return tuple(eps * Fraction(rng.getrandbits(48), 2 ** 48) for _ in range(n))


def random_shift_centered(rng: random.Random, n: int, eps) -> tuple:
    """Uniform rational shift in the half-step box (-eps/2, eps/2)^n, on
    which the deformation fixes grid chains."""
    eps = Fraction(eps)
    return tuple(eps * (Fraction(rng.getrandbits(48), 2 ** 48) - Fraction(1, 2))
                 for _ in range(n))


def shift_average_mass(c, eps, mode: str = "exact", samples: int = 1000,
                       seed: int = 0) -> AverageMassResult:
    """Average of the deformed mass over uniform shifts of the scaled torus:
    exact breakpoint-box integration for coordinate chains and single
    segments, Monte-Carlo sampling otherwise."""
    eps = Fraction(eps)
    if mode == "exact":
        if isinstance(c, CoordChain):
            return AverageMassResult("exact", shift_box_decomposition(c, eps).average)
        if isinstance(c, SimplexChain):
            return AverageMassResult("exact", _segment_exact_average(c, eps))
        raise UnsupportedInput(f"cannot average {type(c).__name__}")
    if mode != "montecarlo":
        raise UnsupportedInput(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    vals = []
    while len(vals) < samples:
        y = random_shift(rng, c.n, eps)
        try:
            vals.append(float(deform_P(c, GridSpec(eps, y)).mass()))
        except DegenerateSlice:
            continue
    mean = sum(vals) / samples
    var = sum((v - mean) ** 2 for v in vals) / (samples - 1) if samples > 1 else 0.0
    return AverageMassResult("montecarlo", mean, math.sqrt(var / samples), samples)


# ---------------------------------------------------------------------------
# Convergence of the deformations to the identity


@dataclass(frozen=True)
class ConvergenceRow:
    eps: Fraction
    mean: float
    stderr: float
    samples: int


def _face_endpoints(cell) -> tuple[tuple, tuple]:
    ax = cell_axes(cell)[0]
    if ax == 0:
        return (cell[0].a, cell[1].q), (cell[0].b, cell[1].q)
    return (cell[0].q, cell[1].a), (cell[0].q, cell[1].b)


def _face_crossing(cell, p: tuple, q: tuple, eps: Fraction) -> tuple:
    """Point where the segment p->q meets the dual hyperplane of a grid
    edge: the coordinate on the edge's interval axis is the dual center."""
    ax = cell_axes(cell)[0]
    x = (cell[ax].a + cell[ax].b) / 2
    t = (x - p[ax]) / (q[ax] - p[ax])
    return tuple(a + t * (b - a) for a, b in zip(p, q))


def _segment_deform_bound(s: Simplex, val: CoefficientValue,
                          grid: GridSpec) -> float:
    """Flat-distance upper bound between a translated plane segment and its
    deformation, from an explicit thin filling: the deformed staircase path
    is laddered against the segment's own crossing points, and the exact
    residual D - dS (end caps and skipped degenerate rungs, all of grid
    scale) is charged at its mass.  Soundness needs only the exact identity
    F(D) <= M(S) + M(D - dS), which holds for every filling."""
    if s.n != 2 or s.k != 1:
        raise UnsupportedInput("explicit witness is implemented for plane segments")
    eps = grid.eps
    group = val.group
    p = tuple(c + d for c, d in zip(s.vertices[0], grid.shift))
    q = tuple(c + d for c, d in zip(s.vertices[1], grid.shift))
    chain = SimplexChain.build(2, 1, group, [(s, val)])
    P = deform_P(chain, grid)
    if P.is_empty():
        return SimplexChain.build(2, 1, group, [(Simplex((p, q)), val)],
                                  check_overlap=False).mass()

    # Orient each deformed edge along the traversal and walk the staircase
    # path from the deformed start vertex.
    vp = tuple(eps * dual_index(t, eps) for t in p)
    out_edges: dict = {}
    for cell, w in P.terms:
        a, b = _face_endpoints(cell)
        if w.payload == val.payload:
            out_edges.setdefault(a, []).append((b, cell))
        else:
            out_edges.setdefault(b, []).append((a, cell))
    walk = [vp]
    faces = []
    node = vp
    for _ in range(len(P.terms)):
        nxt, cell = out_edges[node].pop()
        walk.append(nxt)
        faces.append(cell)
        node = nxt

    crossings = [_face_crossing(cell, p, q, eps) for cell in faces]
    crossings.append(q)
    # Subdivide the translated segment at its crossing points so the rung
    # edges of the filling cancel it piecewise.
    pieces = [p] + crossings
    d_items = []
    for a, b in zip(pieces, pieces[1:]):
        if a != b:
            d_items.append((Simplex((a, b)), val))
    for cell, w in P.terms:
        a, b = _face_endpoints(cell)
        d_items.append((Simplex((a, b)), w.neg()))
    diff = SimplexChain.build(2, 1, group, d_items, check_overlap=False)
    s_items = []
    for i, cell in enumerate(faces):
        c_i = crossings[i]
        for tri in ((c_i, walk[i], walk[i + 1]),
                    (c_i, walk[i + 1], crossings[i + 1])):
            try:
                s_items.append((Simplex(tri), val.neg()))
            except DegenerateInput:
                continue  # flat rung: zero area, residual absorbs its edges
    filler = SimplexChain.build(2, 2, group, s_items, check_overlap=False)
    if filler.is_empty():
        return diff.mass()
    resid_items = list(diff.terms)
    for cell, w in filler.boundary(check_overlap=False).terms:
        resid_items.append((cell, w.neg()))
    residual = SimplexChain.build(2, 1, group, resid_items, check_overlap=False)
    return filler.mass() + residual.mass()


def _translate_sweep_bound(s: Simplex, val: CoefficientValue,
                           shift: tuple) -> float:
    """Flat-distance upper bound between a plane segment and its translate:
    the swept parallelogram plus axis-aligned connector pairs at both ends."""
    p, q = s.vertices
    y = shift
    area = abs((q[0] - p[0]) * y[1] - (q[1] - p[1]) * y[0])
    connectors = 2 * (abs(y[0]) + abs(y[1]))
    return float(val.norm() * (area + connectors))


def convergence_experiment(c, epsilons: Sequence, samples: int, seed: int,
                           refinement: int = 1) -> list[ConvergenceRow]:
    """Shift-averaged flat-distance upper bounds between the shifted-then-
    deformed chain and the chain itself, per grid scale.  Coordinate chains
    use the grid LP bound on the complex induced by the difference; plane
    segments use the explicit ladder witness plus the translation sweep."""
    epsilons = [Fraction(e) for e in epsilons]
    if any(b >= a for a, b in zip(epsilons, epsilons[1:])):
        raise DomainError("grid scales must be strictly decreasing")
    rng = random.Random(seed)
    rows = []
    for eps in epsilons:
        vals = []
        while len(vals) < samples:
            y = random_shift_centered(rng, c.n, eps)
            grid = GridSpec(eps, y)
            try:
                if isinstance(c, CoordChain):
                    diff = deform_P(c, grid).sub(c)
                    if diff.is_empty():
                        vals.append(0.0)
                        continue
                    cx = induced_complex([diff], margin=0, refinement=refinement)
                    vals.append(float(flat_norm_grid(diff, cx).value))
                else:
                    if len(c.terms) != 1:
                        raise UnsupportedInput("need a single segment")
                    s, val = c.terms[0]
                    vals.append(float(_segment_deform_bound(s, val, grid))
                                + _translate_sweep_bound(s, val, grid.shift))
            except DegenerateSlice:
                continue
        mean = sum(vals) / samples
        var = sum((v - mean) ** 2 for v in vals) / (samples - 1) if samples > 1 else 0.0
        rows.append(ConvergenceRow(eps, mean, math.sqrt(var / samples), samples))
    return rows


# ---------------------------------------------------------------------------
# Dyadic refinement Cauchy experiment


@dataclass(frozen=True)
class CauchyRow:
    level: int
    eps: Fraction
    tensor_bound: Fraction
    chain_bound: Fraction


def cauchy_experiment(t: TensorChain, levels: int, y: Sequence,
                      refinement: int = 1) -> list[CauchyRow]:
    """Flat-distance upper bounds between deformations at successive dyadic
    scales eps_j = 2**-j under one fixed shift.  Reports both the four-part
    tensor bound and the plain chain bound on a shared complex per level."""
    y = tuple(Fraction(v) for v in y)
    qs = [deform_Pi0(t, GridSpec(Fraction(1, 2 ** j), y))
          for j in range(levels + 1)]
    rows = []
    for j in range(levels):
        diff = qs[j + 1].sub(qs[j])
        if diff.is_empty():
            rows.append(CauchyRow(j, Fraction(1, 2 ** j), Fraction(0), Fraction(0)))
            continue
        cx = induced_complex([diff.body], margin=0, refinement=refinement)
        tb = tensor_flat_norm_grid(diff, cx).value
        cb = flat_norm_grid(diff.body, cx).value
        rows.append(CauchyRow(j, Fraction(1, 2 ** j), tb, cb))
    return rows


def fitted_ratio(values: Sequence[Fraction]) -> float:
    """Geometric mean of successive ratios; nan when a denominator is 0."""
    pairs = [(float(a), float(b)) for a, b in zip(values, values[1:])]
    if not pairs or any(a == 0 for a, _ in pairs):
        return float("nan")
    prod = 1.0
    for a, b in pairs:
        prod *= b / a
    return prod ** (1.0 / len(pairs))


# ---------------------------------------------------------------------------
# Triangle counterexample constructions


def staircase_chain(g: CoefficientValue, j: int) -> TensorChain:
    """The j-th staircase approximation: the negated left edge plus one
    vertical segment of height 2**-j centered on each anti-diagonal sample
    point x = 1 - t, t = (i + 1/2) * 2**-j."""
    split = Split(1, 1)
    group = g.group
    half = Fraction(1, 2 ** (j + 1))
    items = [((Pt(Fraction(0)), Iv(Fraction(0), Fraction(1))), g.neg())]
    for i in range(2 ** j):
        t = Fraction(2 * i + 1, 2 ** (j + 1))
        items.append(((Pt(1 - t), Iv(t - half, t + half)), g))
    return TensorChain(split, 0, 1, CoordChain.build(2, 1, group, items))


def staircase_prism(g: CoefficientValue, j: int) -> TensorChain:
    """Explicit (1,1) filling whose slot-1 boundary is exactly the difference
    of successive staircases; its mass is 2**-(j+2)."""
    split = Split(1, 1)
    group = g.group
    h = Fraction(1, 2 ** (j + 2))
    items = []
    for i in range(2 ** j):
        a = Fraction(i, 2 ** j)
        a_m = a + Fraction(1, 2 ** (j + 1))
        a_t = a + Fraction(1, 2 ** j)
        x_c = 1 - Fraction(2 * i + 1, 2 ** (j + 1))
        items.append(((Iv(x_c, x_c + h), Iv(a, a_m)), g))
        items.append(((Iv(x_c - h, x_c), Iv(a_m, a_t)), g.neg()))
    return TensorChain(split, 1, 1, CoordChain.build(2, 2, group, items))


def triangle_staircase_area(g: CoefficientValue, j: int) -> TensorChain:
    """Union of columns under the staircase heights: the cubical 2-chain
    approximating the positively oriented corner triangle."""
    split = Split(1, 1)
    group = g.group
    items = []
    for i in range(2 ** j):
        lo = Fraction(i, 2 ** j)
        hi = Fraction(i + 1, 2 ** j)
        height = 1 - Fraction(2 * i + 1, 2 ** (j + 1))
        items.append(((Iv(lo, hi), Iv(Fraction(0), height)), g))
    return TensorChain(split, 1, 1, CoordChain.build(2, 2, group, items))


def antidiagonal_profile(c: CoordChain) -> list[tuple]:
    """Total coefficient of the points below the moving anti-diagonal line
    x + y = s, per interval of s between consecutive point diagonals.
    Returns (s_lo, s_hi, coefficient norm) rows."""
    from .tensor import chi

    if c.k != 0:
        raise DomainError("profile is defined for 0-chains")
    diag = sorted({sum((f.q for f in cell), Fraction(0)) for cell, _ in c.terms})
    rows = []
    for lo, hi in zip(diag, diag[1:]):
        s = (lo + hi) / 2
        below = [(cell, val) for cell, val in c.terms
                 if sum((f.q for f in cell), Fraction(0)) < s]
        total = CoordChain.build(c.n, 0, c.group, below)
        rows.append((lo, hi, chi(total).norm()))
    return rows


@dataclass(frozen=True)
class CounterexampleBundle:
    triangle: SimplexChain
    triangle_mass: Fraction
    staircases: dict
    staircase_slicing_masses: dict
    prism_masses: dict
    corner_chains: dict
    corner_anticommute: dict
    corner_certificates: dict


def counterexample_build(g: CoefficientValue, j_max: int) -> CounterexampleBundle:
    """Triangle, staircase approximations of its slot-1 boundary, explicit
    prism fillings between successive staircases, and the corner 0-chains
    with their anti-diagonal nonvanishing certificates."""
    if g.is_zero():
        raise DomainError("need a nonzero coefficient")
    tri = Simplex(((0, 0), (1, 0), (0, 1)))
    triangle = SimplexChain.build(2, 2, g.group, [(tri, g)])
    vol_sq = tri.volume_sq()
    assert vol_sq == Fraction(1, 4)
    triangle_mass = g.norm() / 2

    staircases = {j: staircase_chain(g, j) for j in range(j_max + 2)}
    slms = {j: slicing_mass_tensor(staircases[j]) for j in range(1, j_max + 1)}
    prisms = {}
    for j in range(j_max + 1):
        diff = staircases[j + 1].sub(staircases[j])
        prism = staircase_prism(g, j)
        if d1(prism).body != diff.body:
            raise AssertionError("prism filling does not match the difference")
        prisms[j] = prism.mass()
    corners = {}
    anticommute = {}
    certificates = {}
    for j in range(1, j_max + 1):
        area = triangle_staircase_area(g, j)
        b = d1(d2(area))
        anticommute[j] = (b.body == d2(d1(area)).neg().body)
        corners[j] = b
        profile = antidiagonal_profile(b.body)
        best = max(profile, key=lambda r: r[2]) if profile else None
        certificates[j] = best
    return CounterexampleBundle(triangle, triangle_mass, staircases, slms,
                                prisms, corners, anticommute, certificates)
