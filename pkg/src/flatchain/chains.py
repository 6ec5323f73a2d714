"""Coordinate polyhedral chains: axis-aligned cells with exact rational
endpoints and group coefficients.

A cell is a product of one factor per axis, each factor either a point or a
nondegenerate closed interval; its dimension is the number of interval
factors.  Chains are finite formal sums of cells.  Cells carry no stored
orientation: the implied orientation is the wedge of the interval axes in
increasing index order, and coefficients absorb all signs.

Canonical form
--------------
Two term lists represent the same chain iff they induce the same coefficient
function on positive-measure boxes.  The normal form computed here is unique:
terms are grouped by (interval-axis set, off-axis point coordinates), each
group is overlaid on the common endpoint refinement, coefficients are summed,
zero boxes dropped, and finally every breakpoint across which the coefficient
function has no jump anywhere is removed again, so e.g. [0,2] and [0,1]+[1,2]
normalize identically.  Chain equality is equality of normal forms.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, NamedTuple, Sequence

from .errors import DegenerateInput, DomainError, SignatureMismatch
from .groups import CoefficientValue, GroupDescriptor


class Pt(NamedTuple):
    q: Fraction


class Iv(NamedTuple):
    a: Fraction
    b: Fraction


Factor = "Pt | Iv"
Cell = tuple  # tuple of Pt/Iv, one per axis


def pt(q) -> Pt:
    return Pt(Fraction(q))


def iv(a, b) -> Iv:
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise DegenerateInput(f"interval needs a < b, got [{a}, {b}]")
    return Iv(a, b)


def make_cell(factors: Sequence) -> Cell:
    out = []
    for f in factors:
        if isinstance(f, Pt):
            out.append(Pt(Fraction(f.q)))
        elif isinstance(f, Iv):
            out.append(iv(f.a, f.b))
        else:
            raise DegenerateInput(f"cell factor must be Pt or Iv, got {f!r}")
    return tuple(out)


def cell_axes(cell: Cell) -> tuple[int, ...]:
    return tuple(i for i, f in enumerate(cell) if isinstance(f, Iv))


def cell_dim(cell: Cell) -> int:
    return sum(1 for f in cell if isinstance(f, Iv))


def cell_volume(cell: Cell) -> Fraction:
    v = Fraction(1)
    for f in cell:
        if isinstance(f, Iv):
            v *= f.b - f.a
    return v


def _cell_key(cell: Cell):
    # Pt sorts before Iv at equal position; Fractions compare exactly.
    return tuple((0, f.q, f.q) if isinstance(f, Pt) else (1, f.a, f.b) for f in cell)


class BoundingBox(NamedTuple):
    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]

    def inflate(self, r: Fraction) -> "BoundingBox":
        r = Fraction(r)
        return BoundingBox(tuple(x - r for x in self.lo), tuple(x + r for x in self.hi))

    def translate(self, y: Sequence) -> "BoundingBox":
        return BoundingBox(tuple(x + Fraction(t) for x, t in zip(self.lo, y)),
                           tuple(x + Fraction(t) for x, t in zip(self.hi, y)))

    def contains(self, other: "BoundingBox") -> bool:
        return all(a <= c for a, c in zip(self.lo, other.lo)) and \
            all(c <= b for b, c in zip(self.hi, other.hi))


def _factor_span(f) -> tuple[Fraction, Fraction]:
    return (f.q, f.q) if isinstance(f, Pt) else (f.a, f.b)


def _overlay_group(axes: tuple[int, ...], cells: list, values: list,
                   group: GroupDescriptor):
    """Overlay equal-axis-set, equal-plane cells on their common endpoint
    refinement, sum coefficients, drop zeros, then remove jump-free
    breakpoints.  Yields (cell, value) pairs in minimal form."""
    if not axes:
        total = values[0]
        for v in values[1:]:
            total = group.add(total, v)
        if not group.is_zero(total):
            yield cells[0], total
        return

    # Per overlay axis: sorted breakpoints collected from all cells.
    bps = []
    for ax in axes:
        s = set()
        for c in cells:
            f = c[ax]
            s.add(f.a)
            s.add(f.b)
        bps.append(sorted(s))

    # Sum coefficients on the full refinement grid.
    grid: dict[tuple[int, ...], object] = {}
    for c, v in zip(cells, values):
        ranges = []
        for ax, bp in zip(axes, bps):
            f = c[ax]
            ranges.append(range(bisect_left(bp, f.a), bisect_left(bp, f.b)))
        for idx in iproduct(*ranges):
            if idx in grid:
                grid[idx] = group.add(grid[idx], v)
            else:
                grid[idx] = v
    grid = {idx: v for idx, v in grid.items() if not group.is_zero(v)}
    if not grid:
        return

    # A breakpoint is essential iff the coefficient function jumps across it
    # somewhere (absent boxes count as zero; the outside counts as zero).
    keep = []
    for pos, bp in enumerate(bps):
        nslabs = len(bp) - 1
        used = {idx[pos] for idx in grid}
        flags = []
        for t in range(len(bp)):
            if t == 0 or t == nslabs:
                flags.append((t if t == 0 else t - 1) in used)
                continue
            jump = False
            for idx, v in grid.items():
                if idx[pos] == t - 1:
                    other = grid.get(idx[:pos] + (t,) + idx[pos + 1:])
                    if other != v:
                        jump = True
                        break
                elif idx[pos] == t:
                    if idx[:pos] + (t - 1,) + idx[pos + 1:] not in grid:
                        jump = True
                        break
            flags.append(jump)
        keep.append([t for t, f in enumerate(flags) if f])

    # Rebuild boxes on the surviving breakpoints; within each merged span the
    # coefficient is constant, so any inner slab is a valid representative.
    span_lists = []
    for bp, ks in zip(bps, keep):
        spans = []
        for lo_t, hi_t in zip(ks, ks[1:]):
            spans.append((bp[lo_t], bp[hi_t], lo_t))
        span_lists.append(spans)
    template = list(cells[0])
    for combo in iproduct(*span_lists):
        rep = tuple(s[2] for s in combo)
        v = grid.get(rep)
        if v is None:
            continue
        for ax, (lo, hi, _) in zip(axes, combo):
            template[ax] = Iv(lo, hi)
        yield tuple(template), v


def _canonical_terms(n: int, k: int, group: GroupDescriptor,
                     items: Iterable) -> tuple:
    buckets: dict[tuple, tuple[list, list]] = {}
    for cell, val in items:
        if len(cell) != n:
            raise SignatureMismatch(f"cell has {len(cell)} axes, chain has {n}")
        if cell_dim(cell) != k:
            raise SignatureMismatch(f"cell dimension {cell_dim(cell)} != degree {k}")
        payload = val.payload if isinstance(val, CoefficientValue) else val
        if isinstance(val, CoefficientValue) and val.group != group:
            raise SignatureMismatch("coefficient group mismatch")
        payload = group.canon(payload)
        axes = cell_axes(cell)
        plane = tuple(f.q for f in cell if isinstance(f, Pt))
        key = (axes, plane)
        cs, vs = buckets.setdefault(key, ([], []))
        cs.append(cell)
        vs.append(payload)
    out = []
    for (axes, _), (cs, vs) in buckets.items():
        for cell, v in _overlay_group(axes, cs, vs, group):
            out.append((cell, CoefficientValue(group, v)))
    out.sort(key=lambda t: _cell_key(t[0]))
    return tuple(out)


@dataclass(frozen=True)
class CoordChain:
    n: int
    k: int
    group: GroupDescriptor
    terms: tuple  # sorted ((cell, CoefficientValue), ...), canonical

    @staticmethod
    def build(n: int, k: int, group: GroupDescriptor, items: Iterable) -> "CoordChain":
        if not 0 <= k <= n:
            raise SignatureMismatch(f"degree k={k} outside 0..{n}")
        return CoordChain(n, k, group, _canonical_terms(n, k, group, items))

    @staticmethod
    def empty(n: int, k: int, group: GroupDescriptor) -> "CoordChain":
        return CoordChain(n, k, group, ())

    def is_empty(self) -> bool:
        return not self.terms

    def _same_signature(self, other: "CoordChain") -> None:
        if (self.n, self.k, self.group) != (other.n, other.k, other.group):
            raise SignatureMismatch(
                f"chain signatures differ: ({self.n},{self.k},{self.group}) vs "
                f"({other.n},{other.k},{other.group})")

    def add(self, other: "CoordChain") -> "CoordChain":
        self._same_signature(other)
        return CoordChain.build(self.n, self.k, self.group,
                                list(self.terms) + list(other.terms))

    def neg(self) -> "CoordChain":
        return CoordChain(self.n, self.k, self.group,
                          tuple((c, v.neg()) for c, v in self.terms))

    def sub(self, other: "CoordChain") -> "CoordChain":
        return self.add(other.neg())

    def mass(self) -> Fraction:
        return sum((v.norm() * cell_volume(c) for c, v in self.terms), Fraction(0))

    def boundary(self) -> "CoordChain":
        """Cubical boundary: the j-th interval axis (in increasing axis
        order) contributes (-1)**(j-1) * (top - bottom)."""
        if self.k == 0:
            raise DomainError("boundary of a 0-chain is undefined")
        items = []
        for cell, val in self.terms:
            j = 0
            for ax, f in enumerate(cell):
                if not isinstance(f, Iv):
                    continue
                j += 1
                signed = val if j % 2 == 1 else val.neg()
                top = cell[:ax] + (Pt(f.b),) + cell[ax + 1:]
                bot = cell[:ax] + (Pt(f.a),) + cell[ax + 1:]
                items.append((top, signed))
                items.append((bot, signed.neg()))
        return CoordChain.build(self.n, self.k - 1, self.group, items)

    def translate(self, y: Sequence) -> "CoordChain":
        y = tuple(Fraction(t) for t in y)
        if len(y) != self.n:
            raise SignatureMismatch("shift vector length != ambient dimension")
        terms = []
        for cell, val in self.terms:
            moved = tuple(
                Pt(f.q + y[i]) if isinstance(f, Pt) else Iv(f.a + y[i], f.b + y[i])
                for i, f in enumerate(cell))
            terms.append((moved, val))
        terms.sort(key=lambda t: _cell_key(t[0]))
        return CoordChain(self.n, self.k, self.group, tuple(terms))

    def support_box(self) -> BoundingBox | None:
        if not self.terms:
            return None
        lo = [None] * self.n
        hi = [None] * self.n
        for cell, _ in self.terms:
            for i, f in enumerate(cell):
                a, b = _factor_span(f)
                if lo[i] is None or a < lo[i]:
                    lo[i] = a
                if hi[i] is None or b > hi[i]:
                    hi[i] = b
        return BoundingBox(tuple(lo), tuple(hi))

    def coefficients(self) -> list[CoefficientValue]:
        return [v for _, v in self.terms]


def single_cell(n: int, group: GroupDescriptor, factors: Sequence,
                coeff) -> CoordChain:
    cell = make_cell(factors)
    return CoordChain.build(n, cell_dim(cell), group, [(cell, coeff)])


def box_chain(group: GroupDescriptor, bounds: Sequence[tuple], coeff) -> CoordChain:
    """Full-dimensional box [a1,b1]x...x[an,bn] with one coefficient."""
    factors = [iv(a, b) for a, b in bounds]
    return single_cell(len(factors), group, factors, coeff)
