"""Grid flat norms: witness-based decompositions on finite cubical complexes.

The flat norm of a chain is the infimum of mass(R) + mass(S) over
decompositions A = R + dS.  Here the search is restricted to fillers S
supported on the (k+1)-cells of a finite cubical complex induced by the
input, which yields an exact upper bound together with an explicit witness.
Witness identities are always re-verified with exact chain arithmetic, so a
returned value is trustworthy regardless of the solver backend.

Backends: "lp" solves the continuous relaxation (variables split into
positive/negative parts, objective weighted by cell volumes) either with
float HiGHS followed by exact rounding of the witness, or with the exact
rational simplex solver; "exhaustive" enumerates filler coefficients over a
declared finite range and is the oracle for small instances.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as iproduct
from typing import Sequence

import numpy as np

from . import lp as rational_lp
from .chains import Cell, CoordChain, Iv, Pt, cell_volume
from .errors import SignatureMismatch, UnsupportedInput
from .groups import CoefficientValue, Integers, Rationals, Residues
from .slicing import slicing_mass
from .tensor import TensorChain, classify, d1, d2

LP_BACKEND_ENV = "FLATCHAIN_LP_BACKEND"


@dataclass(frozen=True)
class InducedComplex:
    """Finite cubical complex given by per-axis sorted breakpoints; its cells
    are all products of breakpoints and consecutive breakpoint intervals."""

    breakpoints: tuple  # per axis: tuple of sorted Fractions

    @property
    def n(self) -> int:
        return len(self.breakpoints)

    def cells(self, k: int) -> list[Cell]:
        out: list[Cell] = []
        if not 0 <= k <= self.n:
            return out
        axes_opts = []
        for bp in self.breakpoints:
            ivs = [Iv(a, b) for a, b in zip(bp, bp[1:])]
            pts = [Pt(q) for q in bp]
            axes_opts.append((pts, ivs))
        for gamma in combinations(range(self.n), k):
            pools = [axes_opts[ax][1] if ax in gamma else axes_opts[ax][0]
                     for ax in range(self.n)]
            if any(not p for p in pools):
                continue
            out.extend(iproduct(*pools))
        return out

    def cell_count(self) -> int:
        c = 1
        for bp in self.breakpoints:
            c *= 2 * (len(bp) - 1) + 1
        return c


def induced_complex(chains: Sequence[CoordChain], margin=0,
                    refinement: int = 1) -> InducedComplex:
    """Breakpoints of all cells of all chains, extended by `margin` per side
    and with every gap subdivided `refinement`-fold."""
    if not chains:
        raise UnsupportedInput("need at least one chain")
    n = chains[0].n
    margin = Fraction(margin)
    if refinement < 1:
        raise UnsupportedInput("refinement must be >= 1")
    per_axis: list[set] = [set() for _ in range(n)]
    for c in chains:
        if c.n != n:
            raise SignatureMismatch("mixed ambient dimensions")
        for cell, _ in c.terms:
            for ax, f in enumerate(cell):
                if isinstance(f, Pt):
                    per_axis[ax].add(f.q)
                else:
                    per_axis[ax].add(f.a)
                    per_axis[ax].add(f.b)
    bps = []
    for s in per_axis:
        if not s:
            s = {Fraction(0)}
        lo, hi = min(s), max(s)
        if margin > 0:
            s = s | {lo - margin, hi + margin}
        base = sorted(s)
        full = []
        for a, b in zip(base, base[1:]):
            full.append(a)
            for t in range(1, refinement):
                full.append(a + (b - a) * t / refinement)
        full.append(base[-1])
        bps.append(tuple(full))
    return InducedComplex(tuple(bps))


def subordinate(c: CoordChain, cx: InducedComplex) -> dict[Cell, object]:
    """Refine a chain's cells onto the complex grid; maps grid cells to
    coefficient payloads.  Raises if an endpoint is not a breakpoint."""
    if c.n != cx.n:
        raise SignatureMismatch("chain and complex dimensions differ")
    vec: dict[Cell, object] = {}
    for cell, val in c.terms:
        pools = []
        for ax, f in enumerate(cell):
            bp = cx.breakpoints[ax]
            if isinstance(f, Pt):
                if f.q not in bp:
                    raise SignatureMismatch(
                        f"coordinate {f.q} on axis {ax} is not a breakpoint")
                pools.append([f])
            else:
                if f.a not in bp or f.b not in bp:
                    raise SignatureMismatch(
                        f"endpoints {f.a},{f.b} on axis {ax} are not breakpoints")
                i, j = bp.index(f.a), bp.index(f.b)
                pools.append([Iv(a, b) for a, b in zip(bp[i:j], bp[i + 1:j + 1])])
        for sub in iproduct(*pools):
            if sub in vec:
                s = c.group.add(vec[sub], val.payload)
                if c.group.is_zero(s):
                    del vec[sub]
                else:
                    vec[sub] = s
            else:
                vec[sub] = val.payload
    return vec


@dataclass(frozen=True)
class FlatWitness:
    value: Fraction
    r: CoordChain
    s: CoordChain
    backend: str
    lp_objective: float | None = None


@dataclass(frozen=True)
class TensorFlatWitness:
    value: Fraction
    r00: TensorChain
    r10: TensorChain | None
    r01: TensorChain | None
    r11: TensorChain | None
    backend: str
    lp_objective: float | None = None

    def parts(self):
        return {bd: t for bd, t in
                (("r00", self.r00), ("r10", self.r10),
                 ("r01", self.r01), ("r11", self.r11)) if t is not None}


def _norm_weights(group, cells):
    return [cell_volume(cell) for cell in cells]


def _as_int_vector(group, payloads):
    if isinstance(group, (Integers, Residues)):
        return [int(v) for v in payloads]
    raise UnsupportedInput("exhaustive backend needs integer or residue "
                           "coefficients")


def _boundary_columns(cells, columns_of, group):
    """Signed incidence of each generator cell on the target cells, computed
    by applying the actual operator to a singleton chain."""
    index = {cell: i for i, cell in enumerate(columns_of)}
    cols = []
    for cell in cells:
        col = []
        for bcell, bval in group(cell):
            if bcell not in index:
                raise SignatureMismatch("complex is not boundary-closed")
            col.append((index[bcell], bval))
        cols.append(col)
    return cols


def _lp_impl(name: str | None) -> str:
    impl = name or os.environ.get(LP_BACKEND_ENV, "highs")
    if impl not in ("highs", "exact"):
        raise UnsupportedInput(f"unknown LP implementation {impl!r}")
    return impl


def _round_payload(group, x: float):
    if isinstance(group, Integers):
        return int(round(x))
    return Fraction(x).limit_denominator(10 ** 6)


def _solve_decomposition(target_vec, target_w, gen_groups, lp_impl):
    """Shared LP core.

    target_vec: list of Fractions (RHS per constrained cell).
    target_w: volume weights of the constrained cells (for the R part).
    gen_groups: list of (columns, weights) per filler group, where columns[j]
      is a sparse signed incidence list [(row, +-1), ...].
    Returns (filler_solutions, lp_objective_float) where filler_solutions is
    a list of float vectors aligned with gen_groups.
    """
    m0 = len(target_vec)
    sizes = [len(cols) for cols, _ in gen_groups]
    nfill = sum(sizes)
    if lp_impl == "exact":
        ncols = 2 * nfill + 2 * m0
        A = [[Fraction(0)] * ncols for _ in range(m0)]
        c = [Fraction(0)] * ncols
        off = 0
        for (cols, ws) in gen_groups:
            for j, col in enumerate(cols):
                for row, sgn in col:
                    A[row][2 * (off + j)] = Fraction(sgn)
                    A[row][2 * (off + j) + 1] = Fraction(-sgn)
                c[2 * (off + j)] = Fraction(ws[j])
                c[2 * (off + j) + 1] = Fraction(ws[j])
            off += len(cols)
        base = 2 * nfill
        for i in range(m0):
            A[i][base + 2 * i] = Fraction(1)
            A[i][base + 2 * i + 1] = Fraction(-1)
            c[base + 2 * i] = Fraction(target_w[i])
            c[base + 2 * i + 1] = Fraction(target_w[i])
        status, x, value = rational_lp.solve_eq(c, A, [Fraction(v) for v in target_vec])
        if status != rational_lp.OPTIMAL:
            raise UnsupportedInput(f"exact LP returned {status}")
        sols = []
        off = 0
        for size in sizes:
            sols.append([float(x[2 * (off + j)] - x[2 * (off + j) + 1])
                         for j in range(size)])
            off += size
        return sols, float(value)

    from scipy.optimize import linprog
    from scipy.sparse import coo_matrix

    ncols = 2 * nfill + 2 * m0
    rows_i, cols_i, data = [], [], []
    obj = np.zeros(ncols)
    off = 0
    for (cols, ws) in gen_groups:
        for j, col in enumerate(cols):
            for row, sgn in col:
                rows_i.extend((row, row))
                cols_i.extend((2 * (off + j), 2 * (off + j) + 1))
                data.extend((float(sgn), -float(sgn)))
            obj[2 * (off + j)] = obj[2 * (off + j) + 1] = float(ws[j])
        off += len(cols)
    base = 2 * nfill
    for i in range(m0):
        rows_i.extend((i, i))
        cols_i.extend((base + 2 * i, base + 2 * i + 1))
        data.extend((1.0, -1.0))
        obj[base + 2 * i] = obj[base + 2 * i + 1] = float(target_w[i])
    A = coo_matrix((data, (rows_i, cols_i)), shape=(m0, ncols))
    b = np.array([float(v) for v in target_vec])
    res = linprog(obj, A_eq=A.tocsr(), b_eq=b, bounds=(0, None), method="highs")
    if not res.success:
        raise UnsupportedInput(f"LP solver failed: {res.message}")
    x = res.x
    sols = []
    off = 0
    for size in sizes:
        sols.append([x[2 * (off + j)] - x[2 * (off + j) + 1] for j in range(size)])
        off += size
    return sols, float(res.fun)


def _exhaustive_best(target_vec, target_w, gen_groups, group, coeff_range):
    """Enumerate filler coefficients over coeff_range (all groups jointly)
    with chunked numpy arithmetic; returns integer solution vectors."""
    m0 = len(target_vec)
    sizes = [len(cols) for cols, _ in gen_groups]
    nfill = sum(sizes)
    if isinstance(group, Residues):
        choices = np.arange(group.m, dtype=np.int64)
        norm_tab = np.minimum(np.arange(group.m), group.m - np.arange(group.m))
    else:
        choices = np.array(sorted(coeff_range), dtype=np.int64)
        norm_tab = None
    den = 1
    for w in list(target_w) + [w for _, ws in gen_groups for w in ws]:
        den = den * Fraction(w).denominator // math.gcd(den, Fraction(w).denominator)
    w0 = np.array([int(Fraction(w) * den) for w in target_w], dtype=np.int64)
    wf = np.array([int(Fraction(w) * den) for _, ws in gen_groups for w in ws],
                  dtype=np.int64)
    B = np.zeros((m0, nfill), dtype=np.int64)
    off = 0
    for cols, _ in gen_groups:
        for j, col in enumerate(cols):
            for row, sgn in col:
                B[row, off + j] = sgn
        off += len(cols)
    tv = np.array([int(v) for v in target_vec], dtype=np.int64)

    nch = len(choices)
    total = nch ** nfill
    if total > 4_000_000:
        raise UnsupportedInput(
            f"exhaustive search over {total} assignments is too large")
    best_val = None
    best_combo = None
    chunk = 200_000
    pows = nch ** np.arange(nfill, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // pows[None, :]) % nch
        s = choices[digits]  # (chunk, nfill)
        resid = tv[None, :] - s @ B.T
        if isinstance(group, Residues):
            rmod = np.mod(resid, group.m)
            rnorm = norm_tab[rmod]
            snorm = norm_tab[np.mod(s, group.m)]
        else:
            rnorm = np.abs(resid)
            snorm = np.abs(s)
        vals = rnorm @ w0 + snorm @ wf
        i = int(vals.argmin())
        if best_val is None or vals[i] < best_val:
            best_val = int(vals[i])
            best_combo = s[i].copy()
    sols = []
    off = 0
    for size in sizes:
        sols.append([int(v) for v in best_combo[off:off + size]])
        off += size
    return sols, Fraction(best_val, den)


def _chain_from_vec(n, k, group, cells, coeffs) -> CoordChain:
    items = [(cell, v) for cell, v in zip(cells, coeffs) if not group.is_zero(v)]
    return CoordChain.build(n, k, group, items)


def flat_norm_grid(c: CoordChain, cx: InducedComplex, backend: str = "lp",
                   coeff_range: Sequence[int] = (-1, 0, 1),
                   lp_backend: str | None = None) -> FlatWitness:
    """Minimal mass(R) + mass(S) with S supported on the complex's
    (k+1)-cells and R := c - dS.  The witness identity is re-verified with
    exact arithmetic before returning."""
    if not isinstance(c.group, (Integers, Rationals, Residues)):
        raise UnsupportedInput("flat norm needs scalar coefficients")
    if isinstance(c.group, Residues) and backend != "exhaustive":
        raise UnsupportedInput("residue coefficients need the exhaustive backend")
    kcells = cx.cells(c.k)
    kindex = {cell: i for i, cell in enumerate(kcells)}
    vec = subordinate(c, cx)
    target = [c.group.zero()] * len(kcells)
    for cell, payload in vec.items():
        target[kindex[cell]] = payload
    scells = cx.cells(c.k + 1)
    w0 = _norm_weights(c.group, kcells)

    if not scells:
        witness = FlatWitness(c.mass(), c, CoordChain.empty(c.n, c.k + 1, c.group),
                              backend)
        _check_witness(c, witness)
        return witness

    def bcols(cell):
        one = CoordChain.build(c.n, c.k + 1, c.group,
                               [(cell, c.group.canon(_unit(c.group)))])
        return [(f, 1 if v.payload == _unit(c.group) else -1)
                for f, v in one.boundary().terms]

    cols = _boundary_columns(scells, kcells, bcols)
    ws = _norm_weights(c.group, scells)

    if backend == "exhaustive":
        ivec = _as_int_vector(c.group, target)
        sols, _ = _exhaustive_best(ivec, w0, [(cols, ws)], c.group, coeff_range)
        s_coeffs = sols[0]
        lp_obj = None
    elif backend == "lp":
        impl = _lp_impl(lp_backend)
        sols, lp_obj = _solve_decomposition(
            [Fraction(v) for v in target], w0, [(cols, ws)], impl)
        s_coeffs = [_round_payload(c.group, v) for v in sols[0]]
    else:
        raise UnsupportedInput(f"unknown backend {backend!r}")

    s_chain = _chain_from_vec(c.n, c.k + 1, c.group, scells, s_coeffs)
    r_chain = c.sub(s_chain.boundary())
    witness = FlatWitness(r_chain.mass() + s_chain.mass(), r_chain, s_chain,
                          backend, lp_obj)
    _check_witness(c, witness)
    return witness


def _unit(group):
    return Fraction(1) if isinstance(group, Rationals) else 1


def _check_witness(c: CoordChain, w: FlatWitness) -> None:
    if w.r.add(w.s.boundary() if not w.s.is_empty() else
               CoordChain.empty(c.n, c.k, c.group)) != c:
        raise AssertionError("witness identity failed exact re-verification")
    if w.value != w.r.mass() + w.s.mass():
        raise AssertionError("witness value does not match its masses")


def tensor_flat_norm_grid(t: TensorChain, cx: InducedComplex,
                          backend: str = "lp",
                          coeff_range: Sequence[int] = (-1, 0, 1),
                          lp_backend: str | None = None) -> TensorFlatWitness:
    """Minimal total mass of a four-part decomposition
    t = R00 + d1 R10 + d2 R01 + d1 d2 R11 on the complex."""
    body = t.body
    group = body.group
    if not isinstance(group, (Integers, Rationals, Residues)):
        raise UnsupportedInput("flat norm needs scalar coefficients")
    if isinstance(group, Residues) and backend != "exhaustive":
        raise UnsupportedInput("residue coefficients need the exhaustive backend")
    split = t.split

    def cells_of(k1, k2):
        if k1 > split.n1 or k2 > split.n2 or k1 < 0 or k2 < 0:
            return []
        return [cell for cell in cx.cells(k1 + k2)
                if classify(cell, split) == (k1, k2)]

    kcells = cells_of(t.k1, t.k2)
    kindex = {cell: i for i, cell in enumerate(kcells)}
    vec = subordinate(body, cx)
    target = [group.zero()] * len(kcells)
    for cell, payload in vec.items():
        if cell not in kindex:
            raise SignatureMismatch("cell type escapes the declared bidegree")
        target[kindex[cell]] = payload
    w0 = _norm_weights(group, kcells)

    specs = []  # (name, k1, k2, operator)
    unit = _unit(group)

    def singleton(k1, k2, cell):
        return TensorChain(split, k1, k2,
                           CoordChain.build(split.n, k1 + k2, group,
                                            [(cell, group.canon(unit))]))

    def op10(cell):
        return [(f, 1 if v.payload == unit else -1)
                for f, v in d1(singleton(t.k1 + 1, t.k2, cell)).body.terms]

    def op01(cell):
        return [(f, 1 if v.payload == unit else -1)
                for f, v in d2(singleton(t.k1, t.k2 + 1, cell)).body.terms]

    def op11(cell):
        return [(f, 1 if v.payload == unit else -1)
                for f, v in d1(d2(singleton(t.k1 + 1, t.k2 + 1, cell))).body.terms]

    for name, kk1, kk2, op in (("r10", t.k1 + 1, t.k2, op10),
                               ("r01", t.k1, t.k2 + 1, op01),
                               ("r11", t.k1 + 1, t.k2 + 1, op11)):
        cells = cells_of(kk1, kk2)
        if cells:
            specs.append((name, kk1, kk2, cells,
                          _boundary_columns(cells, kcells, op),
                          _norm_weights(group, cells)))

    gen_groups = [(cols, ws) for _, _, _, _, cols, ws in specs]
    if not gen_groups:
        witness = TensorFlatWitness(body.mass(), t, None, None, None, backend)
        _check_tensor_witness(t, witness)
        return witness

    if backend == "exhaustive":
        ivec = _as_int_vector(group, target)
        sols, _ = _exhaustive_best(ivec, w0, gen_groups, group, coeff_range)
        lp_obj = None
    elif backend == "lp":
        impl = _lp_impl(lp_backend)
        sols, lp_obj = _solve_decomposition(
            [Fraction(v) for v in target], w0, gen_groups, impl)
        sols = [[_round_payload(group, v) for v in sol] for sol in sols]
    else:
        raise UnsupportedInput(f"unknown backend {backend!r}")

    parts = {"r10": None, "r01": None, "r11": None}
    filled = t  # running remainder: t - d(parts)
    for (name, kk1, kk2, cells, _, _), sol in zip(specs, sols):
        chain = TensorChain(split, kk1, kk2,
                            _chain_from_vec(split.n, kk1 + kk2, group, cells, sol))
        parts[name] = chain
        if name == "r10":
            filled = filled.sub(d1(chain)) if not chain.is_empty() else filled
        elif name == "r01":
            filled = filled.sub(d2(chain)) if not chain.is_empty() else filled
        else:
            filled = filled.sub(d1(d2(chain))) if not chain.is_empty() else filled
    r00 = filled
    value = r00.mass() + sum(p.mass() for p in parts.values() if p is not None)
    witness = TensorFlatWitness(value, r00, parts["r10"], parts["r01"],
                                parts["r11"], backend, lp_obj)
    _check_tensor_witness(t, witness)
    return witness


def _check_tensor_witness(t: TensorChain, w: TensorFlatWitness) -> None:
    acc = w.r00
    if w.r10 is not None and not w.r10.is_empty():
        acc = acc.add(d1(w.r10))
    if w.r01 is not None and not w.r01.is_empty():
        acc = acc.add(d2(w.r01))
    if w.r11 is not None and not w.r11.is_empty():
        acc = acc.add(d1(d2(w.r11)))
    if acc.body != t.body:
        raise AssertionError("tensor witness identity failed re-verification")
    total = w.r00.mass() + sum(p.mass() for p in
                               (w.r10, w.r01, w.r11) if p is not None)
    if w.value != total:
        raise AssertionError("tensor witness value does not match its masses")


def flat_dist(a: CoordChain, b: CoordChain, cx: InducedComplex | None = None,
              backend: str = "lp", margin=0, refinement: int = 1,
              **kw) -> Fraction:
    """Grid flat distance: flat_norm_grid(a - b); an upper bound for the
    flat metric, exact on its witness."""
    d = a.sub(b)
    if d.is_empty():
        return Fraction(0)
    if cx is None:
        cx = induced_complex([d], margin=margin, refinement=refinement)
    return flat_norm_grid(d, cx, backend, **kw).value


@dataclass(frozen=True)
class NNorms:
    mass_based: Fraction
    slicing_based: Fraction


def n_norm(c: CoordChain) -> NNorms:
    """Mass plus boundary mass, in both the mass and slicing-mass variants
    (they agree on coordinate chains)."""
    bm = c.boundary().mass() if c.k >= 1 else Fraction(0)
    bs = slicing_mass(c.boundary()) if c.k >= 1 else Fraction(0)
    return NNorms(c.mass() + bm, slicing_mass(c) + bs)


def n_norm_tensor(t: TensorChain) -> NNorms:
    m1 = d1(t).mass() if t.k1 >= 1 else Fraction(0)
    m2 = d2(t).mass() if t.k2 >= 1 else Fraction(0)
    s1 = slicing_mass(d1(t).body) if t.k1 >= 1 else Fraction(0)
    s2 = slicing_mass(d2(t).body) if t.k2 >= 1 else Fraction(0)
    return NNorms(t.mass() + m1 + m2, slicing_mass(t.body) + s1 + s2)
