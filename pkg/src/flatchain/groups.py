"""Abelian normed coefficient groups and their values.

Four concrete groups are provided: integers with absolute value, residues
mod m with the quotient norm min(r, m-r), exact rationals with absolute
value, and chain-valued coefficients whose norm is the mass of the carried
chain.  Every payload is kept in a canonical form so that value equality is
plain equality, and every norm is an exact nonnegative Fraction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import SignatureMismatch, ValidationError


class GroupDescriptor:
    """Group law + norm for one coefficient group.  Subclasses are frozen
    dataclasses so descriptors compare and hash structurally."""

    def canon(self, payload: Any) -> Any:
        raise NotImplementedError

    def add(self, x: Any, y: Any) -> Any:
        raise NotImplementedError

    def neg(self, x: Any) -> Any:
        raise NotImplementedError

    def norm(self, x: Any) -> Fraction:
        raise NotImplementedError

    def zero(self) -> Any:
        raise NotImplementedError

    def is_zero(self, x: Any) -> bool:
        raise NotImplementedError

    def value(self, payload: Any) -> "CoefficientValue":
        return CoefficientValue(self, self.canon(payload))


@dataclass(frozen=True)
class Integers(GroupDescriptor):
    def canon(self, payload):
        if isinstance(payload, bool) or not isinstance(payload, int):
            raise ValidationError(f"integer payload expected, got {payload!r}")
        return payload

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def norm(self, x) -> Fraction:
        return Fraction(abs(x))

    def zero(self):
        return 0

    def is_zero(self, x) -> bool:
        return x == 0


@dataclass(frozen=True)
class Residues(GroupDescriptor):
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValidationError("modulus must be a positive integer")

    def canon(self, payload):
        if isinstance(payload, bool) or not isinstance(payload, int):
            raise ValidationError(f"residue payload expected, got {payload!r}")
        return payload % self.m

    def add(self, x, y):
        return (x + y) % self.m

    def neg(self, x):
        return (-x) % self.m

    def norm(self, x) -> Fraction:
        r = x % self.m
        return Fraction(min(r, self.m - r))

    def zero(self):
        return 0

    def is_zero(self, x) -> bool:
        return x % self.m == 0


@dataclass(frozen=True)
class Rationals(GroupDescriptor):
    def canon(self, payload):
        if isinstance(payload, float):
            raise ValidationError("float coefficients are not allowed; use Fraction")
        return Fraction(payload)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def norm(self, x) -> Fraction:
        return abs(Fraction(x))

    def zero(self):
        return Fraction(0)

    def is_zero(self, x) -> bool:
        return x == 0


@dataclass(frozen=True)
class ChainCoefficients(GroupDescriptor):
    """Coefficients that are themselves coordinate chains of a fixed
    signature; the norm is the chain's mass.  Nesting stops here: the inner
    group may not itself be chain-valued."""

    n: int
    k: int
    inner: GroupDescriptor

    def __post_init__(self):
        if isinstance(self.inner, ChainCoefficients):
            raise ValidationError("chain-valued coefficients may not nest")

    def _check(self, payload):
        sig = (getattr(payload, "n", None), getattr(payload, "k", None),
               getattr(payload, "group", None))
        if sig != (self.n, self.k, self.inner):
            raise SignatureMismatch(
                f"inner chain signature {sig} does not match descriptor "
                f"({self.n}, {self.k}, {self.inner})")
        return payload

    def canon(self, payload):
        # Chains are canonical by construction; only the signature is checked.
        return self._check(payload)

    def add(self, x, y):
        return x.add(y)

    def neg(self, x):
        return x.neg()

    def norm(self, x) -> Fraction:
        return x.mass()

    def zero(self):
        from .chains import CoordChain

        return CoordChain.empty(self.n, self.k, self.inner)

    def is_zero(self, x) -> bool:
        return x.is_empty()


@dataclass(frozen=True)
class CoefficientValue:
    """A canonical element of a coefficient group."""

    group: GroupDescriptor
    payload: Any

    def _same(self, other: "CoefficientValue") -> None:
        if self.group != other.group:
            raise SignatureMismatch(
                f"coefficient groups differ: {self.group} vs {other.group}")

    def add(self, other: "CoefficientValue") -> "CoefficientValue":
        self._same(other)
        return CoefficientValue(self.group, self.group.add(self.payload, other.payload))

    def neg(self) -> "CoefficientValue":
        return CoefficientValue(self.group, self.group.neg(self.payload))

    def norm(self) -> Fraction:
        return self.group.norm(self.payload)

    def is_zero(self) -> bool:
        return self.group.is_zero(self.payload)


INT = Integers()
RAT = Rationals()
