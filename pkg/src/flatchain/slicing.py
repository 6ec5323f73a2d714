"""Figures, restriction of chains to translated figures, and coordinate
0-slices with their slicing masses.

A figure is a finite union of axis-aligned product intervals, each factor
bounded or unbounded with independent open/closed endpoint flags.  Figures
form an algebra under intersection, union and complement.  The canonical
form overlays all endpoint breakpoints, records which elementary grid pieces
(open gaps and breakpoint hyperplanes) are covered, and drops breakpoints
across which membership never changes, so set-equal figures compare equal.

Restriction clips each cell of a chain to a translated figure.  Endpoint
ties are broken by the figure's own flags; clipped fragments of lower
dimension carry no k-measure and are discarded.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Sequence

from .chains import CoordChain, Iv, Pt, cell_axes, cell_volume
from .errors import DegenerateInput, DegenerateSlice, SignatureMismatch
from .tensor import TensorChain


@dataclass(frozen=True)
class FigureInterval:
    lo: Fraction | None = None
    hi: Fraction | None = None
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        lo = None if self.lo is None else Fraction(self.lo)
        hi = None if self.hi is None else Fraction(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo is None and self.lo_closed:
            raise DegenerateInput("unbounded endpoint cannot be closed")
        if hi is None and self.hi_closed:
            raise DegenerateInput("unbounded endpoint cannot be closed")
        if lo is not None and hi is not None:
            if lo > hi or (lo == hi and not (self.lo_closed and self.hi_closed)):
                raise DegenerateInput("empty interval")

    def contains(self, q: Fraction) -> bool:
        if self.lo is not None and (q < self.lo or (q == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (q > self.hi or (q == self.hi and not self.hi_closed)):
            return False
        return True

    def shifted(self, d: Fraction) -> "FigureInterval":
        return FigureInterval(None if self.lo is None else self.lo + d,
                              None if self.hi is None else self.hi + d,
                              self.lo_closed, self.hi_closed)


def closed(a, b) -> FigureInterval:
    return FigureInterval(Fraction(a), Fraction(b), True, True)


def halfopen(a, b) -> FigureInterval:
    return FigureInterval(Fraction(a), Fraction(b), True, False)


def line() -> FigureInterval:
    return FigureInterval(None, None, False, False)


Box = tuple  # tuple[FigureInterval, ...]


@dataclass(frozen=True)
class Figure:
    n: int
    boxes: tuple  # tuple[Box, ...]

    def __post_init__(self):
        for box in self.boxes:
            if len(box) != self.n:
                raise SignatureMismatch("box dimension does not match figure")

    @staticmethod
    def whole(n: int) -> "Figure":
        return Figure(n, (tuple(line() for _ in range(n)),))

    @staticmethod
    def empty(n: int) -> "Figure":
        return Figure(n, ())

    @staticmethod
    def from_bounds(bounds: Sequence[tuple]) -> "Figure":
        """Single closed box [a1,b1] x ... x [an,bn]."""
        return Figure(len(bounds), (tuple(closed(a, b) for a, b in bounds),))

    def contains(self, point: Sequence) -> bool:
        point = [Fraction(q) for q in point]
        return any(all(f.contains(q) for f, q in zip(box, point))
                   for box in self.boxes)

    def translate(self, y: Sequence) -> "Figure":
        y = [Fraction(t) for t in y]
        return Figure(self.n, tuple(
            tuple(f.shifted(d) for f, d in zip(box, y)) for box in self.boxes))


# An elementary piece on one axis: ("o", lo, hi) open gap or ("p", q) point.

def _axis_pieces(breaks: list[Fraction]) -> list[tuple]:
    if not breaks:
        return [("o", None, None)]
    pieces = [("o", None, breaks[0])]
    for i, b in enumerate(breaks):
        pieces.append(("p", b))
        nxt = breaks[i + 1] if i + 1 < len(breaks) else None
        pieces.append(("o", b, nxt))
    return pieces


def _piece_rep(piece: tuple) -> Fraction:
    if piece[0] == "p":
        return piece[1]
    lo, hi = piece[1], piece[2]
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    return (lo + hi) / 2


@dataclass(frozen=True)
class FigureDecomposition:
    """Per-axis elementary pieces and the set of covered piece-index tuples."""

    n: int
    pieces: tuple  # per axis tuple of pieces
    covered: frozenset

    def to_figure(self) -> Figure:
        boxes = []
        for idx in sorted(self.covered):
            box = []
            for ax, i in enumerate(idx):
                p = self.pieces[ax][i]
                if p[0] == "p":
                    box.append(closed(p[1], p[1]))
                else:
                    box.append(FigureInterval(p[1], p[2], False, False))
            boxes.append(tuple(box))
        return Figure(self.n, tuple(boxes))


def decompose(fig: Figure, extra_breaks: Sequence[Sequence] = ()) -> FigureDecomposition:
    """Elementary decomposition on the figure's own breakpoints (plus any
    extra ones), followed by removal of breakpoints across which membership
    never changes.  Set-equal figures decompose identically."""
    breaks = []
    for ax in range(fig.n):
        s = set()
        for box in fig.boxes:
            f = box[ax]
            if f.lo is not None:
                s.add(f.lo)
            if f.hi is not None:
                s.add(f.hi)
        if extra_breaks:
            s.update(Fraction(v) for v in extra_breaks[ax])
        breaks.append(sorted(s))
    pieces = [_axis_pieces(b) for b in breaks]
    reps = [[_piece_rep(p) for p in axis] for axis in pieces]
    covered = set()
    for idx in iproduct(*(range(len(axis)) for axis in pieces)):
        point = [reps[ax][i] for ax, i in enumerate(idx)]
        if fig.contains(point):
            covered.add(idx)

    # Drop breakpoints whose removal does not change membership anywhere.
    for ax in range(fig.n):
        keep = []
        for t, b in enumerate(breaks[ax]):
            lo_i, pt_i, hi_i = 2 * t, 2 * t + 1, 2 * t + 2
            essential = False
            others = [range(len(p)) for a, p in enumerate(pieces) if a != ax]
            for rest in iproduct(*others):
                def at(i):
                    c = list(rest)
                    c[ax:ax] = [i]
                    return tuple(c) in covered

                if not (at(lo_i) == at(pt_i) == at(hi_i)):
                    essential = True
                    break
            if essential:
                keep.append(b)
        if len(keep) != len(breaks[ax]):
            breaks[ax] = keep
    pieces = [_axis_pieces(b) for b in breaks]
    reps = [[_piece_rep(p) for p in axis] for axis in pieces]
    covered = set()
    for idx in iproduct(*(range(len(axis)) for axis in pieces)):
        point = [reps[ax][i] for ax, i in enumerate(idx)]
        if fig.contains(point):
            covered.add(idx)
    return FigureDecomposition(fig.n, tuple(tuple(p) for p in pieces),
                               frozenset(covered))


def canonical(fig: Figure) -> Figure:
    return decompose(fig).to_figure()


def figures_equal(a: Figure, b: Figure) -> bool:
    if a.n != b.n:
        raise SignatureMismatch("figure dimensions differ")
    return decompose(a) == decompose(b)


def intersect(a: Figure, b: Figure) -> Figure:
    if a.n != b.n:
        raise SignatureMismatch("figure dimensions differ")
    boxes = []
    for ba in a.boxes:
        for bb in b.boxes:
            out = []
            for fa, fb in zip(ba, bb):
                if fa.lo is None:
                    lo, lc = fb.lo, fb.lo_closed
                elif fb.lo is None or fb.lo < fa.lo:
                    lo, lc = fa.lo, fa.lo_closed
                elif fa.lo < fb.lo:
                    lo, lc = fb.lo, fb.lo_closed
                else:
                    lo, lc = fa.lo, fa.lo_closed and fb.lo_closed
                if fa.hi is None:
                    hi, hc = fb.hi, fb.hi_closed
                elif fb.hi is None or fb.hi > fa.hi:
                    hi, hc = fa.hi, fa.hi_closed
                elif fa.hi > fb.hi:
                    hi, hc = fb.hi, fb.hi_closed
                else:
                    hi, hc = fa.hi, fa.hi_closed and fb.hi_closed
                if lo is not None and hi is not None:
                    if lo > hi or (lo == hi and not (lc and hc)):
                        out = None
                        break
                out.append(FigureInterval(lo, hi, lc, hc))
            if out is not None:
                boxes.append(tuple(out))
    return canonical(Figure(a.n, tuple(boxes)))


def union(a: Figure, b: Figure) -> Figure:
    if a.n != b.n:
        raise SignatureMismatch("figure dimensions differ")
    return canonical(Figure(a.n, a.boxes + b.boxes))


def complement(a: Figure) -> Figure:
    dec = decompose(a)
    universe = set(iproduct(*(range(len(axis)) for axis in dec.pieces)))
    flipped = FigureDecomposition(a.n, dec.pieces,
                                  frozenset(universe - set(dec.covered)))
    return canonical(flipped.to_figure())


def _clip_factor(factor, piece):
    """Clip one cell factor to one elementary piece; None drops the box."""
    if isinstance(factor, Pt):
        if piece[0] == "p":
            return factor if factor.q == piece[1] else None
        lo, hi = piece[1], piece[2]
        if (lo is None or factor.q > lo) and (hi is None or factor.q < hi):
            return factor
        return None
    if piece[0] == "p":
        return None  # measure-zero fragment of an interval factor
    lo = factor.a if piece[1] is None else max(factor.a, piece[1])
    hi = factor.b if piece[2] is None else min(factor.b, piece[2])
    if lo < hi:
        return Iv(lo, hi)
    return None


def restrict(c: CoordChain, fig: Figure, x: Sequence | None = None) -> CoordChain:
    """Exact clipping of a finite-mass chain to the translated figure x+J."""
    if fig.n != c.n:
        raise SignatureMismatch("figure dimension does not match chain")
    if x is not None:
        fig = fig.translate(x)
    dec = decompose(fig)
    items = []
    for cell, val in c.terms:
        for idx in dec.covered:
            clipped = []
            for ax, i in enumerate(idx):
                f = _clip_factor(cell[ax], dec.pieces[ax][i])
                if f is None:
                    clipped = None
                    break
                clipped.append(f)
            if clipped is not None:
                items.append((tuple(clipped), val))
    return CoordChain.build(c.n, c.k, c.group, items)


def restrict_tensor(t: TensorChain, fig: Figure,
                    x: Sequence | None = None) -> TensorChain:
    return TensorChain(t.split, t.k1, t.k2, restrict(t.body, fig, x))


def slice0_coord(c: CoordChain, gamma: Sequence[int], x: Sequence) -> CoordChain:
    """0-slice along the plane fixing the gamma axes at x.  Cells whose
    interval-axis set is exactly gamma and whose intervals contain x
    contribute their point part with coefficient +g; a slice through a cell
    endpoint raises DegenerateSlice."""
    gamma = tuple(sorted(gamma))
    if len(gamma) != c.k:
        raise SignatureMismatch(f"need |gamma| = {c.k}")
    x = [Fraction(v) for v in x]
    items = []
    for cell, val in c.terms:
        if cell_axes(cell) != gamma:
            for ax, xi in zip(gamma, x):
                f = cell[ax]
                if isinstance(f, Iv) and (f.a == xi or f.b == xi):
                    raise DegenerateSlice(f"slice hits an endpoint on axis {ax}")
            continue
        inside = True
        for ax, xi in zip(gamma, x):
            f = cell[ax]
            if f.a == xi or f.b == xi:
                raise DegenerateSlice(f"slice hits an endpoint on axis {ax}")
            if not f.a < xi < f.b:
                inside = False
                break
        if not inside:
            continue
        point = list(cell)
        for ax, xi in zip(gamma, x):
            point[ax] = Pt(xi)
        items.append((tuple(point), val))
    return CoordChain.build(c.n, 0, c.group, items)


def slicing_mass_by_axes(c: CoordChain) -> dict[tuple[int, ...], Fraction]:
    """Per-plane-family contribution to the slicing mass.  On a canonical
    chain only the family matching a cell's own interval axes meets it in a
    set of positive measure, so each cell contributes |g| * volume to its
    own family."""
    out: dict[tuple[int, ...], Fraction] = {}
    for cell, val in c.terms:
        key = cell_axes(cell)
        out[key] = out.get(key, Fraction(0)) + val.norm() * cell_volume(cell)
    return out


def slicing_mass(c: CoordChain) -> Fraction:
    return sum(slicing_mass_by_axes(c).values(), Fraction(0))


def slicing_mass_tensor(t: TensorChain) -> Fraction:
    """Slicing mass with the plane families restricted to the chain's type;
    homogeneity makes every cell's own family admissible."""
    return slicing_mass(t.body)
