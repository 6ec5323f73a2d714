"""Seeded random chains, simplices and figures for the verification suite.

Everything draws from an explicit random.Random so that suites are exactly
reproducible; endpoints come from a modest rational lattice to keep overlay
arithmetic small.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .chains import CoordChain, Iv, Pt
from .errors import DegenerateInput
from .groups import (ChainCoefficients, CoefficientValue, GroupDescriptor,
                     Integers, Rationals, Residues)
from .simplices import Simplex, SimplexChain
from .slicing import Figure, FigureInterval
from .tensor import Split, TensorChain


def rand_fraction(rng: random.Random, lo: int = -3, hi: int = 3,
                  dens=(1, 2, 3, 4, 8)) -> Fraction:
    den = rng.choice(dens)
    return Fraction(rng.randint(lo * den, hi * den), den)


def rand_payload(rng: random.Random, group: GroupDescriptor, nonzero: bool = True):
    while True:
        if isinstance(group, Integers):
            v = rng.randint(-4, 4)
        elif isinstance(group, Residues):
            v = rng.randrange(group.m)
        elif isinstance(group, Rationals):
            v = rand_fraction(rng, -4, 4)
        elif isinstance(group, ChainCoefficients):
            v = rand_coord_chain(rng, group.n, group.k, group.inner,
                                 terms=rng.randint(1, 2))
        else:
            raise DegenerateInput(f"cannot draw from {group!r}")
        if not nonzero or not group.is_zero(group.canon(v)):
            return group.canon(v)


def rand_value(rng: random.Random, group: GroupDescriptor,
               nonzero: bool = True) -> CoefficientValue:
    return CoefficientValue(group, rand_payload(rng, group, nonzero))


def rand_cell(rng: random.Random, n: int, axes, lo: int = -3, hi: int = 3):
    cell = []
    for ax in range(n):
        if ax in axes:
            a = rand_fraction(rng, lo, hi - 1)
            b = a + rand_fraction(rng, 0, 2, dens=(1, 2, 4)) + Fraction(1, 4)
            cell.append(Iv(a, b))
        else:
            cell.append(Pt(rand_fraction(rng, lo, hi)))
    return tuple(cell)


def rand_coord_chain(rng: random.Random, n: int, k: int,
                     group: GroupDescriptor, terms: int = 3,
                     lo: int = -3, hi: int = 3) -> CoordChain:
    axline = list(combinations(range(n), k))
    items = []
    for _ in range(terms):
        axes = rng.choice(axline)
        items.append((rand_cell(rng, n, axes, lo, hi), rand_value(rng, group)))
    return CoordChain.build(n, k, group, items)


def rand_tensor_chain(rng: random.Random, split: Split, k1: int, k2: int,
                      group: GroupDescriptor, terms: int = 3) -> TensorChain:
    alpha = list(combinations(range(split.n1), k1))
    beta = list(combinations(range(split.n1, split.n), k2))
    items = []
    for _ in range(terms):
        axes = set(rng.choice(alpha)) | set(rng.choice(beta))
        items.append((rand_cell(rng, split.n, axes), rand_value(rng, group)))
    return TensorChain(split, k1, k2,
                       CoordChain.build(split.n, k1 + k2, group, items))


def rand_simplex(rng: random.Random, n: int, k: int,
                 lo: int = -3, hi: int = 3) -> Simplex:
    while True:
        verts = tuple(tuple(rand_fraction(rng, lo, hi) for _ in range(n))
                      for _ in range(k + 1))
        try:
            return Simplex(verts)
        except DegenerateInput:
            continue


def rand_simplex_chain(rng: random.Random, n: int, k: int,
                       group: GroupDescriptor) -> SimplexChain:
    return SimplexChain.build(n, k, group,
                              [(rand_simplex(rng, n, k), rand_value(rng, group))])


def rand_figure(rng: random.Random, n: int, boxes: int = 2) -> Figure:
    out = []
    for _ in range(boxes):
        box = []
        for _ in range(n):
            if rng.random() < 0.2:
                box.append(FigureInterval(None, None, False, False))
                continue
            a = rand_fraction(rng)
            b = a + rand_fraction(rng, 0, 2) + Fraction(1, 3)
            box.append(FigureInterval(a, b, rng.random() < 0.5, rng.random() < 0.5))
        out.append(tuple(box))
    return Figure(n, tuple(out))


def rand_point(rng: random.Random, n: int) -> tuple:
    return tuple(rand_fraction(rng, -2, 2, dens=(5, 7, 9, 11)) for _ in range(n))
