"""Ordinals below omega squared.

Every walk length and wdistance in a rank-1 graph has the form
``w*tau1 + tau0`` with natural coefficients, so an :class:`Ordinal` is just
that pair.  Ordinals at or above ``w**2`` cannot be represented at all.

Coefficients may also be symbolic values (see :mod:`nsgraph.symbolic`) so the
same arithmetic runs inside closed-form distance oracles that are evaluated
over whole residue classes of indices.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import total_ordering

MAX_COEFF = 2**63 - 1


class OrdinalOverflow(ArithmeticError):
    pass


class Ordering(str, enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def _is_concrete(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _check(v, what: str):
    if _is_concrete(v):
        if v < 0:
            raise ValueError(f"{what} must be a natural number, got {v}")
        if v > MAX_COEFF:
            raise OrdinalOverflow(f"{what} exceeds {MAX_COEFF}")
        return v
    if hasattr(v, "at"):  # an unbound Affine template
        return v
    if hasattr(v, "eventually_sign"):
        if v < 0:
            raise ValueError(f"{what} is eventually negative")
        return v
    raise TypeError(f"bad ordinal coefficient {v!r}")


@total_ordering
@dataclass(frozen=True, eq=False)
class Ordinal:
    """The ordinal ``w*tau1 + tau0``."""

    tau1: int = 0
    tau0: int = 0

    def __post_init__(self):
        _check(self.tau1, "tau1")
        _check(self.tau0, "tau0")

    @classmethod
    def finite(cls, k) -> Ordinal:
        return cls(0, k)

    @classmethod
    def omega(cls, k=1) -> Ordinal:
        return cls(k, 0)

    @property
    def is_finite(self):
        return self.tau1 == 0

    def __add__(self, other):
        if _is_concrete(other):
            other = Ordinal(0, other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return natural_sum(self, other)

    __radd__ = __add__

    def __mul__(self, k):
        return scale(self, k)

    __rmul__ = __mul__

    def __eq__(self, other):
        if _is_concrete(other):
            other = Ordinal(0, other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.tau1 == other.tau1 and self.tau0 == other.tau0

    def __hash__(self):
        return hash((self.tau1, self.tau0))

    def __lt__(self, other):
        if _is_concrete(other):
            other = Ordinal(0, other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        if self.tau1 == other.tau1:
            return self.tau0 < other.tau0
        return self.tau1 < other.tau1

    def __str__(self):
        return format_ordinal(self)

    def __repr__(self):
        return f"Ordinal({self.tau1!r}, {self.tau0!r})"


ZERO = Ordinal(0, 0)
OMEGA = Ordinal(1, 0)


def natural_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Hessenberg sum; below w**2 it is componentwise addition."""
    return Ordinal(_checked(a.tau1 + b.tau1), _checked(a.tau0 + b.tau0))


def scale(a: Ordinal, k) -> Ordinal:
    """``a`` natural-summed with itself ``k`` times."""
    if _is_concrete(k) and k < 0:
        raise ValueError("scale factor must be natural")
    return Ordinal(_checked(a.tau1 * k), _checked(a.tau0 * k))


def compare(a: Ordinal, b: Ordinal) -> Ordering:
    if a.tau1 != b.tau1:
        return Ordering.LESS if a.tau1 < b.tau1 else Ordering.GREATER
    if a.tau0 != b.tau0:
        return Ordering.LESS if a.tau0 < b.tau0 else Ordering.GREATER
    return Ordering.EQUAL


def _checked(v):
    if _is_concrete(v) and v > MAX_COEFF:
        raise OrdinalOverflow(f"coefficient {v} exceeds {MAX_COEFF}")
    return v


def format_ordinal(a: Ordinal) -> str:
    """Render as ``w*T1+T0``; zero parts are dropped (``7``, ``w*1``)."""
    t1, t0 = _coeff(a.tau1), _coeff(a.tau0)
    if a.tau1 == 0:
        return t0 if _is_concrete(a.tau0) else str(a.tau0)
    if a.tau0 == 0:
        return f"w*{t1}"
    return f"w*{t1}+{t0}"


def _coeff(v) -> str:
    return str(v) if _is_concrete(v) else f"({v})"


_ORD_RE = re.compile(r"^\s*(?:w\*(\d+)(?:\s*\+\s*(\d+))?|(\d+))\s*$")


def parse_ordinal(text: str) -> Ordinal:
    m = _ORD_RE.match(text)
    if not m:
        raise ValueError(f"not an ordinal below w^2: {text!r}")
    if m.group(3) is not None:
        return Ordinal(0, int(m.group(3)))
    return Ordinal(int(m.group(1)), int(m.group(2) or 0))
