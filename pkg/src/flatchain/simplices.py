"""Oriented rational simplices and simplicial chains.

These provide the general (non axis-aligned) polyhedral cells: exact
Gram-determinant masses, coordinate-plane projections (whose squares satisfy
the Cauchy-Binet identity), 0-slices along coordinate planes, and a
Monte-Carlo rotation average of the summed projection masses.

Masses of single cells are exposed in exact squared form (a rational), so
mass comparisons can be decided without tolerances; only the summed mass of
a multi-cell chain is a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from . import lp
from .chains import CoordChain, Pt
from .errors import DegenerateInput, DegenerateSlice, DomainError, SignatureMismatch
from .groups import CoefficientValue, GroupDescriptor

Vec = tuple  # tuple[Fraction, ...]


def _det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination with pivoting."""
    m = [row[:] for row in rows]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, size):
            f = m[r][col] * inv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def _rank(rows: list[list[Fraction]]) -> int:
    m = [row[:] for row in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    rank = 0
    for col in range(nc):
        piv = next((r for r in range(rank, nr) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        for r in range(nr):
            if r != rank and m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == nr:
            break
    return rank


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve a square nonsingular system; None if singular."""
    size = len(rows)
    m = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(size):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][-1] for r in range(size)]


@dataclass(frozen=True)
class Simplex:
    """k-simplex given by k+1 ordered rational vertices in R^n; the vertex
    order is the orientation."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(tuple(Fraction(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise DegenerateInput("simplex needs at least one vertex")
        n = len(verts[0])
        if any(len(v) != n for v in verts):
            raise DegenerateInput("vertices with mixed dimensions")
        if _rank(self.edges()) != self.k:
            raise DegenerateInput("degenerate simplex: edge vectors are dependent")

    @property
    def n(self) -> int:
        return len(self.vertices[0])

    @property
    def k(self) -> int:
        return len(self.vertices) - 1

    def edges(self) -> list[list[Fraction]]:
        v0 = self.vertices[0]
        return [[x - y for x, y in zip(v, v0)] for v in self.vertices[1:]]

    def volume_sq(self) -> Fraction:
        """Squared k-volume: det(E E^T) / (k!)^2."""
        E = self.edges()
        gram = [[sum((a * b for a, b in zip(r1, r2)), Fraction(0)) for r2 in E]
                for r1 in E]
        f = math.factorial(self.k)
        return _det(gram) / (f * f)

    def volume(self) -> float:
        return math.sqrt(float(self.volume_sq()))

    def minor(self, gamma: Sequence[int]) -> Fraction:
        """Signed determinant of the edge columns indexed by gamma."""
        if len(gamma) != self.k:
            raise DomainError(f"need |gamma| = {self.k}, got {len(gamma)}")
        E = self.edges()
        return _det([[row[g] for g in gamma] for row in E])

    def proj_mass(self, gamma: Sequence[int]) -> Fraction:
        """k-volume of the orthogonal projection onto the gamma-plane."""
        return abs(self.minor(gamma)) / math.factorial(self.k)

    def proj_mass_sum(self) -> Fraction:
        return sum((self.proj_mass(g) for g in combinations(range(self.n), self.k)),
                   Fraction(0))

    def slice_point(self, gamma: Sequence[int], x: Sequence):
        """Intersection with the plane {p : p_g = x_g for g in gamma}.

        Returns (point, sign) with sign = sgn det of the gamma-minor, or None
        when the plane misses the open cell (or the projection is degenerate).
        Raises DegenerateSlice when the plane hits the cell boundary.
        """
        gamma = tuple(gamma)
        x = [Fraction(v) for v in x]
        if len(gamma) != self.k or len(x) != self.k:
            raise DomainError("gamma and x must have length k")
        E = self.edges()
        cols = [[row[g] for g in gamma] for row in E]
        d = _det(cols)
        if d == 0:
            return None  # projection onto the gamma-plane is lower-dimensional
        v0 = self.vertices[0]
        rhs = [x[i] - v0[gamma[i]] for i in range(self.k)]
        # lam solves lam . E[:,gamma] = rhs
        lam = _solve([[cols[r][c] for r in range(self.k)] for c in range(self.k)], rhs)
        s = sum(lam, Fraction(0))
        if any(l < 0 for l in lam) or s > 1:
            return None
        if any(l == 0 for l in lam) or s == 1:
            raise DegenerateSlice("slice plane hits the cell boundary")
        point = tuple(v0[j] + sum((lam[i] * E[i][j] for i in range(self.k)),
                                  Fraction(0)) for j in range(self.n))
        return point, (1 if d > 0 else -1)

    def hull_contains(self, points: Sequence[Vec]) -> bool:
        E = self.edges()
        v0 = self.vertices[0]
        for p in points:
            rows = E + [[x - y for x, y in zip(p, v0)]]
            if _rank(rows) != self.k:
                return False
        return True

    def coords_in_hull(self, p: Vec) -> list[Fraction]:
        """Edge-basis coordinates of a point of the affine hull."""
        E = self.edges()
        for gamma in combinations(range(self.n), self.k):
            cols = [[row[g] for g in gamma] for row in E]
            if _det(cols) != 0:
                v0 = self.vertices[0]
                rhs = [p[g] - v0[g] for g in gamma]
                return _solve([[cols[r][c] for r in range(self.k)]
                               for c in range(self.k)], rhs)
        raise DegenerateInput("no invertible coordinate minor")


def interiors_overlap(s: Simplex, t: Simplex) -> bool:
    """Exact test whether two k-simplices with k >= 1 share interior
    H^k-measure.  Distinct affine hulls never do; equal hulls reduce to an
    LP feasibility problem in hull coordinates."""
    if s.k != t.k or s.n != t.n:
        raise SignatureMismatch("simplices of different signature")
    if s.k == 0:
        return s.vertices == t.vertices
    if not (s.hull_contains(t.vertices) and t.hull_contains(s.vertices)):
        return False
    k = s.k
    mu = [s.coords_in_hull(v) for v in t.vertices]
    M = [[mu[i + 1][j] - mu[0][j] for j in range(k)] for i in range(k)]
    Minv_rows = []
    for i in range(k):
        rhs = [Fraction(1) if j == i else Fraction(0) for j in range(k)]
        Minv_rows.append(_solve([[M[r][c] for r in range(k)] for c in range(k)], rhs))
    # Barycentric forms of p in s: (p_1, ..., p_k, 1 - sum p).
    # In t: nu = M^-T (p - mu0), forms (nu_1, ..., nu_k, 1 - sum nu).
    # Maximize tau subject to all forms >= tau.
    cons = []
    rhs = []
    for i in range(k):  # -p_i + tau <= 0
        row = [Fraction(0)] * (k + 1)
        row[i] = Fraction(-1)
        row[k] = Fraction(1)
        cons.append(row)
        rhs.append(Fraction(0))
    row = [Fraction(1)] * k + [Fraction(1)]  # sum p + tau <= 1
    cons.append(row)
    rhs.append(Fraction(1))
    for i in range(k):  # -nu_i(p) + tau <= 0
        coef = [-Minv_rows[j][i] for j in range(k)]
        const = sum((Minv_rows[j][i] * mu[0][j] for j in range(k)), Fraction(0))
        cons.append(coef + [Fraction(1)])
        rhs.append(-const)
    coef = [sum(Minv_rows[j][i] for i in range(k)) for j in range(k)]
    const = sum((coef[j] * mu[0][j] for j in range(k)), Fraction(0))
    cons.append(coef + [Fraction(1)])  # sum nu + tau <= 1
    rhs.append(Fraction(1) + const)
    c_obj = [Fraction(0)] * k + [Fraction(1)]
    status, _, value = lp.maximize_ub(c_obj, cons, rhs)
    return status == lp.OPTIMAL and value > 0


def _canonical_simplex(s: Simplex) -> tuple[Simplex, int]:
    order = sorted(range(len(s.vertices)), key=lambda i: s.vertices[i])
    sign = 1
    perm = list(order)
    for i in range(len(perm)):  # parity by selection swaps
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return Simplex(tuple(s.vertices[i] for i in order)), sign


@dataclass(frozen=True)
class SimplexChain:
    n: int
    k: int
    group: GroupDescriptor
    terms: tuple  # ((Simplex, CoefficientValue), ...) sorted, vertex-sorted cells

    @staticmethod
    def build(n: int, k: int, group: GroupDescriptor, items, *,
              check_overlap: bool = True) -> "SimplexChain":
        acc: dict[tuple, object] = {}
        for s, val in items:
            if s.n != n or s.k != k:
                raise SignatureMismatch("cell signature mismatch")
            payload = val.payload if isinstance(val, CoefficientValue) else val
            payload = group.canon(payload)
            cs, sign = _canonical_simplex(s)
            if sign < 0:
                payload = group.neg(payload)
            key = cs.vertices
            acc[key] = group.add(acc[key], payload) if key in acc else payload
        terms = tuple(sorted(
            ((Simplex(vs), CoefficientValue(group, v)) for vs, v in acc.items()
             if not group.is_zero(v)), key=lambda t: t[0].vertices))
        chain = SimplexChain(n, k, group, terms)
        if check_overlap and k >= 1:
            chain.check_null_intersections()
        return chain

    @staticmethod
    def empty(n: int, k: int, group: GroupDescriptor) -> "SimplexChain":
        return SimplexChain(n, k, group, ())

    def is_empty(self) -> bool:
        return not self.terms

    def check_null_intersections(self) -> None:
        cells = [s for s, _ in self.terms]
        for a, b in combinations(cells, 2):
            if interiors_overlap(a, b):
                raise DegenerateInput(
                    "simplicial cells overlap on a positive-measure set")

    def mass(self) -> float:
        return float(sum(v.norm() * s.volume() for s, v in self.terms))

    def cell_mass_sq(self) -> list[Fraction]:
        """Exact squared mass per term, |g|^2 * vol^2."""
        return [v.norm() ** 2 * s.volume_sq() for s, v in self.terms]

    def boundary(self, *, check_overlap: bool = False) -> "SimplexChain":
        if self.k == 0:
            raise DomainError("boundary of a 0-chain is undefined")
        items = []
        for s, val in self.terms:
            for i in range(self.k + 1):
                face = Simplex(s.vertices[:i] + s.vertices[i + 1:])
                items.append((face, val if i % 2 == 0 else val.neg()))
        return SimplexChain.build(self.n, self.k - 1, self.group, items,
                                  check_overlap=check_overlap)

    def slicing_mass(self) -> Fraction:
        """Sum over cells of |g| * sum_gamma proj_mass; exact.  Requires the
        pairwise null-intersection invariant (no slice cancellation)."""
        self.check_null_intersections()
        return sum((v.norm() * s.proj_mass_sum() for s, v in self.terms),
                   Fraction(0))

    def slice0(self, gamma: Sequence[int], x: Sequence) -> CoordChain:
        """0-slice along the coordinate plane fixing the gamma axes at x."""
        gamma = tuple(gamma)
        items = []
        for s, val in self.terms:
            hit = s.slice_point(gamma, x)
            if hit is None:
                continue
            point, sign = hit
            cell = tuple(Pt(c) for c in point)
            items.append((cell, val if sign > 0 else val.neg()))
        return CoordChain.build(self.n, 0, self.group, items)

    def translate(self, y: Sequence) -> "SimplexChain":
        y = tuple(Fraction(t) for t in y)
        terms = tuple((Simplex(tuple(tuple(a + b for a, b in zip(v, y))
                                     for v in s.vertices)), val)
                      for s, val in self.terms)
        return SimplexChain(self.n, self.k, self.group, terms)


@dataclass(frozen=True)
class GrassmannEstimate:
    n: int
    k: int
    samples: int
    mean: float
    stderr: float
    mass: float
    ratio: float


def _haar_rotation(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * np.sign(np.diag(r))


def grassmann_average(s: Simplex, samples: int, seed: int) -> GrassmannEstimate:
    """Monte-Carlo average over Haar-random rotations of the summed
    coordinate projection masses of the rotated cell.

    Per-sample generators are derived from (seed, index), so the stream does
    not depend on evaluation order.
    """
    if samples < 100:
        raise DomainError("need at least 100 samples")
    E = np.array([[float(x) for x in row] for row in s.edges()])
    fact = math.factorial(s.k)
    gammas = list(combinations(range(s.n), s.k))
    vals = np.empty(samples)
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        R = _haar_rotation(rng, s.n)
        ER = E @ R
        vals[i] = sum(abs(np.linalg.det(ER[:, g])) for g in gammas) / fact
    mean = float(vals.mean())
    stderr = float(vals.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    mass = s.volume()
    return GrassmannEstimate(s.n, s.k, samples, mean, stderr, mass,
                             mean / mass if mass else float("nan"))
