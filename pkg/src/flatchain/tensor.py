"""Bigraded coordinate chains under a coordinate split of the ambient space.

The ambient axes are split into a leading block of n1 axes and a trailing
block of n2 axes.  A cell of a k-chain is of type (k1, k2) when it carries k1
interval axes in the leading block and k2 in the trailing block; a tensor
chain is a chain all of whose cells share one type.  This module provides the
type classification and decomposition of plain chains, the two partial
boundaries (the trailing one carries the sign (-1)**k1), the reinterpretation
of a tensor chain as a leading-block chain with chain-valued coefficients
(a mass isometry), and the total-coefficient morphism on 0-chains.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chains import Cell, CoordChain, Iv, Pt, cell_axes
from .errors import DomainError, SignatureMismatch
from .groups import ChainCoefficients, CoefficientValue, GroupDescriptor


@dataclass(frozen=True)
class Split:
    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise DomainError("split blocks must be nonnegative")

    @property
    def n(self) -> int:
        return self.n1 + self.n2


def bidegrees(split: Split, k: int) -> list[tuple[int, int]]:
    """All admissible types (k1, k2) with k1 + k2 = k."""
    return [(k1, k - k1) for k1 in range(max(0, k - split.n2),
                                         min(split.n1, k) + 1)]


def classify(cell: Cell, split: Split) -> tuple[int, int]:
    k1 = sum(1 for f in cell[:split.n1] if isinstance(f, Iv))
    k2 = sum(1 for f in cell[split.n1:] if isinstance(f, Iv))
    return k1, k2


@dataclass(frozen=True)
class TensorChain:
    split: Split
    k1: int
    k2: int
    body: CoordChain

    def __post_init__(self):
        if self.body.n != self.split.n:
            raise SignatureMismatch("body ambient dimension does not match split")
        if self.body.k != self.k1 + self.k2:
            raise SignatureMismatch("body degree does not match bidegree")
        for cell, _ in self.body.terms:
            if classify(cell, self.split) != (self.k1, self.k2):
                raise SignatureMismatch(
                    f"cell of type {classify(cell, self.split)} in a "
                    f"({self.k1},{self.k2})-chain")

    @staticmethod
    def empty(split: Split, k1: int, k2: int,
              group: GroupDescriptor) -> "TensorChain":
        return TensorChain(split, k1, k2, CoordChain.empty(split.n, k1 + k2, group))

    @property
    def group(self) -> GroupDescriptor:
        return self.body.group

    def is_empty(self) -> bool:
        return self.body.is_empty()

    def mass(self) -> Fraction:
        return self.body.mass()

    def add(self, other: "TensorChain") -> "TensorChain":
        if (self.split, self.k1, self.k2) != (other.split, other.k1, other.k2):
            raise SignatureMismatch("tensor signatures differ")
        return TensorChain(self.split, self.k1, self.k2, self.body.add(other.body))

    def neg(self) -> "TensorChain":
        return TensorChain(self.split, self.k1, self.k2, self.body.neg())

    def sub(self, other: "TensorChain") -> "TensorChain":
        return self.add(other.neg())

    def translate(self, y: Sequence) -> "TensorChain":
        return TensorChain(self.split, self.k1, self.k2, self.body.translate(y))


def jdecomp(c: CoordChain, split: Split) -> dict[tuple[int, int], TensorChain]:
    """Partition a chain's terms by cell type.  The bodies sum back to the
    input and the masses of the components sum to its mass."""
    if c.n != split.n:
        raise SignatureMismatch("chain ambient dimension does not match split")
    parts: dict[tuple[int, int], list] = {bd: [] for bd in bidegrees(split, c.k)}
    for cell, val in c.terms:
        parts[classify(cell, split)].append((cell, val))
    return {bd: TensorChain(split, bd[0], bd[1],
                            CoordChain.build(c.n, c.k, c.group, items))
            for bd, items in parts.items()}


def _partial_boundary(t: TensorChain, block: int) -> TensorChain:
    split = t.split
    lo, hi = (0, split.n1) if block == 1 else (split.n1, split.n)
    kslot = t.k1 if block == 1 else t.k2
    if kslot == 0:
        raise DomainError(f"slot-{block} degree is 0")
    global_sign = 1 if block == 1 else (-1) ** t.k1
    items = []
    for cell, val in t.body.terms:
        j = 0
        for ax in range(lo, hi):
            f = cell[ax]
            if not isinstance(f, Iv):
                continue
            j += 1
            sign = global_sign * (1 if j % 2 == 1 else -1)
            signed = val if sign > 0 else val.neg()
            top = cell[:ax] + (Pt(f.b),) + cell[ax + 1:]
            bot = cell[:ax] + (Pt(f.a),) + cell[ax + 1:]
            items.append((top, signed))
            items.append((bot, signed.neg()))
    body = CoordChain.build(t.body.n, t.body.k - 1, t.group, items)
    if block == 1:
        return TensorChain(split, t.k1 - 1, t.k2, body)
    return TensorChain(split, t.k1, t.k2 - 1, body)


def d1(t: TensorChain) -> TensorChain:
    """Boundary in the leading block; lowers the type to (k1-1, k2)."""
    return _partial_boundary(t, 1)


def d2(t: TensorChain) -> TensorChain:
    """Boundary in the trailing block with the extra sign (-1)**k1; lowers
    the type to (k1, k2-1)."""
    return _partial_boundary(t, 2)


def iota(t: TensorChain) -> CoordChain:
    """Reinterpret a (k1,k2)-chain as a k1-chain over the leading block whose
    coefficients are k2-chains over the trailing block.  Mass is preserved
    exactly."""
    split = t.split
    inner_group = ChainCoefficients(split.n2, t.k2, t.group)
    buckets: dict[Cell, list] = {}
    for cell, val in t.body.terms:
        buckets.setdefault(cell[:split.n1], []).append((cell[split.n1:], val))
    items = []
    for acell, inner_items in buckets.items():
        inner = CoordChain.build(split.n2, t.k2, t.group, inner_items)
        items.append((acell, CoefficientValue(inner_group, inner)))
    return CoordChain.build(split.n1, t.k1, inner_group, items)


def iota_inv(c: CoordChain, split: Split) -> TensorChain:
    if not isinstance(c.group, ChainCoefficients):
        raise SignatureMismatch("expected a chain with chain-valued coefficients")
    inner: ChainCoefficients = c.group
    if c.n != split.n1 or inner.n != split.n2:
        raise SignatureMismatch("split does not match the nested signature")
    items = []
    for acell, val in c.terms:
        for bcell, bval in val.payload.terms:
            items.append((acell + bcell, bval))
    body = CoordChain.build(split.n, c.k + inner.k, inner.inner, items)
    return TensorChain(split, c.k, inner.k, body)


def chi(c: CoordChain) -> CoefficientValue:
    """Total coefficient of a 0-chain."""
    if c.k != 0:
        raise DomainError("chi is defined on 0-chains")
    total = CoefficientValue(c.group, c.group.zero())
    for _, val in c.terms:
        total = total.add(val)
    return total


def chi_tensor(t: TensorChain) -> CoefficientValue:
    """Total coefficient of a (0,0)-chain, computed through the nested
    reinterpretation; agrees with chi of the body."""
    if (t.k1, t.k2) != (0, 0):
        raise DomainError("chi_tensor is defined on (0,0)-chains")
    outer = iota(t)
    inner = chi(outer)  # a chain-valued coefficient over the trailing block
    return chi(inner.payload)
