"""Affine index arithmetic over residue classes.

A definable sequence stores, for each residue class ``n = r (mod p)`` past a
start index, terms whose integer leaves are affine in ``n``.  To compute a
derived sequence (a distance profile, an agreement set, a midpoint) we run the
ordinary Python code once per residue class with ``n`` replaced by a
:class:`Sym`.  Arithmetic on ``Sym`` stays affine; comparisons are decided
for all sufficiently large ``n`` in the class and the point where the answer
becomes stable is recorded on the shared :class:`ClassContext`.  Floor
division that is not affine on the class raises :class:`Refine`, asking the
caller to split the class.

The same code run with plain ints gives the concrete values, which is how
prefixes are filled in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


class NonAffine(ValueError):
    """The requested operation leaves the affine fragment."""


class Refine(Exception):
    """Split every residue class into ``factor`` finer classes and retry."""

    def __init__(self, factor: int):
        super().__init__(factor)
        self.factor = factor


@dataclass(frozen=True)
class Affine:
    """``slope*n + const`` with rational coefficients (integer-valued where used)."""

    slope: Fraction = Fraction(0)
    const: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "const", Fraction(self.const))

    def at(self, n: int) -> int:
        v = self.slope * n + self.const
        if v.denominator != 1:
            raise ValueError(f"{self} is not integral at n={n}")
        return int(v)

    def compose(self, inner: Affine) -> Affine:
        return Affine(self.slope * inner.slope, self.slope * inner.const + self.const)

    @property
    def is_constant(self) -> bool:
        return self.slope == 0

    def __str__(self):
        return format_affine(self)


def format_affine(a: Affine) -> str:
    def frac(x: Fraction) -> str:
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    if a.slope == 0:
        return frac(a.const)
    s = "n" if a.slope == 1 else f"{frac(a.slope)}*n"
    if a.const == 0:
        return s
    sign = "+" if a.const > 0 else "-"
    return f"{s}{sign}{frac(abs(a.const))}"


@dataclass
class ClassContext:
    """The index class ``{n >= start : n = residue (mod modulus)}``."""

    residue: int
    modulus: int
    start: int
    threshold: int = 0
    notes: list = field(default_factory=list)

    def __post_init__(self):
        self.threshold = max(self.threshold, self.start)

    @property
    def n(self) -> Sym:
        return Sym(Fraction(1), Fraction(0), self)

    def require(self, n0: int):
        if n0 > self.threshold:
            self.threshold = n0

    def first_member_at_or_after(self, n0: int) -> int:
        n0 = max(n0, self.start)
        return n0 + ((self.residue - n0) % self.modulus)


def _as_fraction_pair(v, ctx):
    if isinstance(v, Sym):
        return v.slope, v.const
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(0), Fraction(v)
    if isinstance(v, Fraction):
        return Fraction(0), v
    raise TypeError(f"cannot mix {type(v).__name__} with a symbolic index")


class Sym:
    """An affine function of ``n`` restricted to one residue class."""

    __slots__ = ("slope", "const", "ctx")
    __hash__ = None

    def __init__(self, slope, const, ctx: ClassContext):
        self.slope = Fraction(slope)
        self.const = Fraction(const)
        self.ctx = ctx

    def _new(self, slope, const):
        return Sym(slope, const, self.ctx)

    def affine(self) -> Affine:
        return Affine(self.slope, self.const)

    def __repr__(self):
        return f"Sym({format_affine(self.affine())} | n={self.ctx.residue} mod {self.ctx.modulus})"

    # arithmetic
    def __add__(self, other):
        s, c = _as_fraction_pair(other, self.ctx)
        return self._new(self.slope + s, self.const + c)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.slope, -self.const)

    def __sub__(self, other):
        s, c = _as_fraction_pair(other, self.ctx)
        return self._new(self.slope - s, self.const - c)

    def __rsub__(self, other):
        s, c = _as_fraction_pair(other, self.ctx)
        return self._new(s - self.slope, c - self.const)

    def __mul__(self, other):
        if isinstance(other, Sym):
            if other.slope == 0:
                other = other.const
            elif self.slope == 0:
                return other * self.const
            else:
                raise NonAffine("product of two index-dependent terms")
        if isinstance(other, bool) or not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self._new(self.slope * other, self.const * other)

    __rmul__ = __mul__

    def __floordiv__(self, q):
        if isinstance(q, Sym):
            if q.slope != 0:
                raise NonAffine("division by an index-dependent term")
            q = q.const
        q = Fraction(q)
        if q.denominator != 1 or q <= 0:
            raise NonAffine("floor division needs a positive integer divisor")
        q = int(q)
        step = self.slope * self.ctx.modulus
        if step.denominator != 1:
            raise NonAffine(f"{self!r} is not integral on its class")
        step = int(step)
        if step % q:
            raise Refine(q // math.gcd(step, q))
        base = self.slope * self.ctx.residue + self.const
        if base.denominator != 1:
            raise NonAffine(f"{self!r} is not integral on its class")
        rem = int(base) % q
        return self._new(self.slope / q, (self.const - rem) / q)

    def __mod__(self, q):
        return self - (self // q) * q

    def __abs__(self):
        return self if self >= 0 else -self

    def __index__(self):
        if self.slope != 0:
            raise NonAffine(f"{self!r} is not constant")
        return int(self.const)

    __int__ = __index__

    # eventual comparisons
    def eventually_sign(self) -> int:
        """Sign of the value for all large ``n`` in the class; records the threshold."""
        s, c = self.slope, self.const
        if s == 0:
            return (c > 0) - (c < 0)
        root = -c / s
        self.ctx.require(math.floor(root) + 1)
        return 1 if s > 0 else -1

    def _cmp(self, other) -> int:
        s, c = _as_fraction_pair(other, self.ctx)
        return Sym(self.slope - s, self.const - c, self.ctx).eventually_sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __ne__(self, other):
        try:
            return self._cmp(other) != 0
        except TypeError:
            return NotImplemented

    def __bool__(self):
        return self.eventually_sign() != 0


def ceil_div(a, q: int):
    """``ceil(a / q)`` for ints or symbolic values."""
    return -((-a) // q)


def is_symbolic(v) -> bool:
    return isinstance(v, Sym)
