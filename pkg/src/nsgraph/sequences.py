"""Definable sequences: explicit prefix plus periodic affine tail.

A term is a *template*: any value (node reference, ordinal, int, bool, tuple)
whose integer leaves may be :class:`~nsgraph.symbolic.Affine` in the index.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .symbolic import Affine, ClassContext, NonAffine, Refine, Sym

MAX_PERIOD = 1 << 14


def _map_leaves(v, fn):
    if isinstance(v, (Affine, Sym)) or (isinstance(v, int) and not isinstance(v, bool)):
        return fn(v)
    if isinstance(v, tuple):
        return tuple(_map_leaves(x, fn) for x in v)
    if isinstance(v, list):
        return [_map_leaves(x, fn) for x in v]
    if dataclasses.is_dataclass(v) and not isinstance(v, type):
        changes = {f.name: _map_leaves(getattr(v, f.name), fn) for f in dataclasses.fields(v)}
        return dataclasses.replace(v, **changes)
    return v


def instantiate(template, n: int):
    return _map_leaves(template, lambda x: x.at(n) if isinstance(x, Affine) else x)


def _bind_leaf(x, ctx):
    if isinstance(x, Affine):
        if x.slope == 0 and x.const.denominator == 1:
            return int(x.const)
        return Sym(x.slope, x.const, ctx)
    return x


def bind(template, ctx: ClassContext):
    return _map_leaves(template, lambda x: _bind_leaf(x, ctx))


def substitute(template, m):
    """Replace the index variable by ``m`` (an int or a :class:`Sym`)."""
    def leaf(x):
        if isinstance(x, Affine):
            if isinstance(m, Sym):
                return m * x.slope + x.const if x.slope else _bind_const(x)
            return x.at(m)
        return x
    return _map_leaves(template, leaf)


def _bind_const(x: Affine):
    if x.const.denominator != 1:
        raise NonAffine(f"non-integral constant {x}")
    return int(x.const)


def freeze(value):
    """Turn a symbolic value back into a template (constants become ints)."""
    def leaf(x):
        if isinstance(x, Sym):
            if x.slope == 0:
                if x.const.denominator != 1:
                    raise NonAffine(f"non-integral constant {x!r}")
                return int(x.const)
            return Affine(x.slope, x.const)
        if isinstance(x, Affine) and x.slope == 0 and x.const.denominator == 1:
            return int(x.const)
        return x
    return _map_leaves(value, leaf)


def has_index(template) -> bool:
    found = []
    _map_leaves(template, lambda x: found.append(x) or x if isinstance(x, Affine) and x.slope else x)
    return bool(found)


@dataclass(frozen=True)
class DefinableSequence:
    """``prefix[n]`` for ``n < len(prefix)``, else ``terms[n % period]`` at ``n``."""

    prefix: tuple = ()
    period: int = 1
    terms: tuple = (0,)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.period < 1 or len(self.terms) != self.period:
            raise ValueError("terms must cover every residue of the period exactly once")

    @property
    def start(self) -> int:
        return len(self.prefix)

    @classmethod
    def constant(cls, value) -> DefinableSequence:
        return cls((), 1, (value,))

    @classmethod
    def from_function(cls, fn: Callable[[Any], Any]) -> DefinableSequence:
        return lift(lambda n: fn(n))

    def template_for(self, n: int):
        return self.terms[n % self.period]

    def at(self, n: int):
        if n < 0:
            raise IndexError(n)
        if n < self.start:
            return self.prefix[n]
        return instantiate(self.terms[n % self.period], n)

    def __getitem__(self, n: int):
        return self.at(n)

    def values(self, upto: int) -> list:
        return [self.at(n) for n in range(upto)]

    def value_at(self, m):
        """Evaluate at an int index or at a symbolic index inside a lift."""
        if not isinstance(m, Sym):
            return self.at(int(m))
        ctx = m.ctx
        step = m.slope * ctx.modulus
        if step.denominator != 1:
            raise NonAffine("index map is not integral")
        step = int(step)
        if step % self.period:
            raise Refine(self.period // math.gcd(step, self.period))
        if not m >= self.start:
            raise NonAffine("index map is eventually below the tail start")
        base = m.slope * ctx.residue + m.const
        if base.denominator != 1:
            raise NonAffine("index map is not integral")
        return substitute(self.terms[int(base) % self.period], m)

    def normalized(self) -> DefinableSequence:
        terms = list(self.terms)
        period = self.period
        for d in sorted(_divisors(period)):
            if all(terms[r] == terms[r % d] for r in range(period)):
                terms, period = terms[:d], d
                break
        prefix = list(self.prefix)
        while prefix:
            n = len(prefix) - 1
            try:
                same = prefix[-1] == instantiate(terms[n % period], n)
            except (ValueError, TypeError):
                same = False  # the template leaves its domain before the tail starts
            if not same:
                break
            prefix.pop()
        return DefinableSequence(tuple(prefix), period, tuple(terms))

    def describe(self) -> str:
        parts = []
        if self.prefix:
            parts.append("[" + ", ".join(str(v) for v in self.prefix) + "]")
        cls = ["n%{}={}: {}".format(self.period, r, _fmt(t)) for r, t in enumerate(self.terms)]
        if self.period == 1:
            cls = [_fmt(self.terms[0])]
        parts.append("then " + "; ".join(cls) if self.prefix else "; ".join(cls))
        return " ".join(parts)


def _fmt(t) -> str:
    return str(t)


def _divisors(p: int):
    return [d for d in range(1, p + 1) if p % d == 0]


def lift(fn: Callable, *seqs: DefinableSequence, min_start: int = 0) -> DefinableSequence:
    """The sequence ``n -> fn(n, seqs[0][n], seqs[1][n], ...)``.

    ``fn`` is called once per residue class with symbolic arguments and once
    per prefix index with concrete ones; it must not branch on anything but
    comparisons of its arguments.
    """
    period = math.lcm(*(s.period for s in seqs)) if seqs else 1
    start = max([min_start] + [s.start for s in seqs])
    while True:
        try:
            terms, thresholds = [], []
            for r in range(period):
                ctx = ClassContext(r, period, start)
                args = [bind(s.terms[r % s.period], ctx) for s in seqs]
                out = fn(ctx.n, *args)
                terms.append(freeze(out))
                thresholds.append(ctx.threshold)
            break
        except Refine as e:
            period *= e.factor
            if period > MAX_PERIOD:
                raise NonAffine("residue refinement exceeded the period limit") from None
    tail_start = max([start] + thresholds)
    prefix = tuple(fn(n, *(s.at(n) for s in seqs)) for n in range(tail_start))
    return DefinableSequence(prefix, period, tuple(terms)).normalized()


def affine_sequence(slope, const=0) -> DefinableSequence:
    """The integer sequence ``slope*n + const``."""
    return DefinableSequence((), 1, (freeze(Affine(Fraction(slope), Fraction(const))),))


def _fit(v1, n1: int, v2, n2: int):
    """Template through ``(n1, v1)`` and ``(n2, v2)``, or ``None`` if shapes differ."""
    if isinstance(v1, bool) or isinstance(v2, bool):
        return v1 if v1 == v2 else None
    if isinstance(v1, int) and isinstance(v2, int):
        slope = Fraction(v2 - v1, n2 - n1)
        return freeze(Affine(slope, v1 - slope * n1))
    if type(v1) is not type(v2):
        return None
    if isinstance(v1, tuple):
        if len(v1) != len(v2):
            return None
        parts = [_fit(a, n1, b, n2) for a, b in zip(v1, v2)]
        return None if any(p is None for p in parts) else tuple(parts)
    if dataclasses.is_dataclass(v1):
        changes = {}
        for f in dataclasses.fields(v1):
            a, b = getattr(v1, f.name), getattr(v2, f.name)
            if isinstance(a, (int, tuple)) or dataclasses.is_dataclass(a):
                p = _fit(a, n1, b, n2)
                if p is None:
                    return None
                changes[f.name] = p
            elif a != b:
                return None
        return dataclasses.replace(v1, **changes)
    return v1 if v1 == v2 else None


def infer_affine(values: list, max_period: int = 4, min_points: int = 3):
    """Fit a :class:`DefinableSequence` to ``values`` (a finite prefix of it).

    Tries tails starting as early as possible and periods up to
    ``max_period``; every class needs ``min_points`` observations.  Returns
    ``None`` when nothing fits.
    """
    total = len(values)
    for start in range(total):
        for p in range(1, max_period + 1):
            if total - start < p * min_points:
                break
            terms = []
            for r in range(p):
                idx = [n for n in range(start, total) if n % p == r]
                t = _fit(values[idx[0]], idx[0], values[idx[1]], idx[1])
                if t is None or any(instantiate(t, n) != values[n] for n in idx):
                    break
                terms.append(t)
            else:
                # terms[r] must sit at residue r mod p
                order = [None] * p
                for r, t in enumerate(terms):
                    order[r] = t
                return DefinableSequence(tuple(values[:start]), p, tuple(order)).normalized()
    return None
