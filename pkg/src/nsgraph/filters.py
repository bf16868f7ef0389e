"""Eventually periodic index sets and ultrafilter verdicts.

A fixed free ultrafilter on the naturals cannot be constructed, so membership
questions are answered by an :class:`UltrafilterOracle` that returns one of
three verdicts.  Every oracle agrees with every free ultrafilter on finite and
cofinite sets; a ``residue_chain`` oracle additionally commits to a nested
chain of residue classes, which decides sets such as "the even indices".
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class OracleConfigError(ValueError):
    pass


class Kind(str, enum.Enum):
    FINITE = "finite"
    COFINITE = "cofinite"
    MIXED = "mixed"


class FilterVerdict(str, enum.Enum):
    IN = "in_filter"
    OUT = "not_in_filter"
    UNDETERMINED = "undetermined"

    def __invert__(self) -> FilterVerdict:
        return {FilterVerdict.IN: FilterVerdict.OUT, FilterVerdict.OUT: FilterVerdict.IN}.get(
            self, FilterVerdict.UNDETERMINED)

    def __and__(self, other: FilterVerdict) -> FilterVerdict:
        if FilterVerdict.OUT in (self, other):
            return FilterVerdict.OUT
        if self is other is FilterVerdict.IN:
            return FilterVerdict.IN
        return FilterVerdict.UNDETERMINED

    @property
    def determined(self) -> bool:
        return self is not FilterVerdict.UNDETERMINED


@dataclass(frozen=True)
class IndexSet:
    """Membership of ``n < offset`` is ``prefix[n]``; beyond it ``period[n % len(period)]``."""

    prefix: tuple = ()
    period: tuple = (False,)

    def __post_init__(self):
        prefix = tuple(bool(b) for b in self.prefix)
        period = tuple(bool(b) for b in self.period)
        if not period:
            raise ValueError("period must be nonempty")
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @property
    def offset(self) -> int:
        return len(self.prefix)

    def __contains__(self, n: int) -> bool:
        if n < self.offset:
            return self.prefix[n]
        return self.period[n % len(self.period)]

    # constructors
    @classmethod
    def empty(cls) -> IndexSet:
        return cls((), (False,))

    @classmethod
    def everything(cls) -> IndexSet:
        return cls((), (True,))

    @classmethod
    def finite(cls, members: Iterable[int]) -> IndexSet:
        members = set(members)
        top = max(members) + 1 if members else 0
        return cls(tuple(n in members for n in range(top)), (False,))

    @classmethod
    def tail(cls, start: int) -> IndexSet:
        return cls((False,) * start, (True,))

    @classmethod
    def residue(cls, modulus: int, residue: int, start: int = 0) -> IndexSet:
        period = tuple(r == residue % modulus for r in range(modulus))
        prefix = tuple(False for _ in range(start))
        return cls(prefix, period)

    @classmethod
    def from_predicate(cls, pred, offset: int, period: int) -> IndexSet:
        return cls(tuple(pred(n) for n in range(offset)),
                   tuple(pred(offset + ((r - offset) % period)) for r in range(period)))

    # structure
    def classify(self) -> Kind:
        if not any(self.period):
            return Kind.FINITE
        if all(self.period):
            return Kind.COFINITE
        return Kind.MIXED

    def normalized(self) -> IndexSet:
        period = self.period
        p = len(period)
        for d in range(1, p + 1):
            if p % d == 0 and all(period[r] == period[r % d] for r in range(p)):
                period = period[:d]
                break
        prefix = list(self.prefix)
        while prefix and prefix[-1] == period[(len(prefix) - 1) % len(period)]:
            prefix.pop()
        return IndexSet(tuple(prefix), period)

    def _combine(self, other: IndexSet, op) -> IndexSet:
        p = math.lcm(len(self.period), len(other.period))
        off = max(self.offset, other.offset)
        return IndexSet.from_predicate(lambda n: op(n in self, n in other), off, p).normalized()

    def union(self, other: IndexSet) -> IndexSet:
        return self._combine(other, lambda a, b: a or b)

    def intersect(self, other: IndexSet) -> IndexSet:
        return self._combine(other, lambda a, b: a and b)

    def complement(self) -> IndexSet:
        return IndexSet(tuple(not b for b in self.prefix), tuple(not b for b in self.period))

    def difference(self, other: IndexSet) -> IndexSet:
        return self.intersect(other.complement())

    __or__ = union
    __and__ = intersect
    __invert__ = complement

    def issubset(self, other: IndexSet) -> bool:
        return self.difference(other).is_empty()

    def is_empty(self) -> bool:
        return not any(self.prefix) and not any(self.period)

    def eventually_contains(self, modulus: int, residue: int) -> bool:
        """Does the set contain all large ``n`` with ``n = residue (mod modulus)``?"""
        p = math.lcm(len(self.period), modulus)
        return all(self.period[n % len(self.period)]
                   for n in range(p) if n % modulus == residue % modulus)

    def eventually_disjoint(self, modulus: int, residue: int) -> bool:
        return self.complement().eventually_contains(modulus, residue)

    def members(self, upto: int) -> list:
        return [n for n in range(upto) if n in self]

    def to_json(self) -> dict:
        return {"prefix": [int(b) for b in self.prefix], "offset": self.offset,
                "period": [int(b) for b in self.period]}

    @classmethod
    def from_json(cls, data: dict) -> IndexSet:
        prefix = list(data.get("prefix", []))
        offset = data.get("offset", len(prefix))
        if offset != len(prefix):
            raise ValueError("offset must equal the prefix length")
        return cls(tuple(bool(b) for b in prefix), tuple(bool(b) for b in data["period"]))

    def __str__(self):
        kind = self.classify().value
        bits = "".join("1" if b else "0" for b in self.period)
        return f"IndexSet({kind}, prefix={self.offset} bits, period={bits})"


def classify(s: IndexSet) -> Kind:
    return s.classify()


def union(s: IndexSet, t: IndexSet) -> IndexSet:
    return s.union(t)


def intersect(s: IndexSet, t: IndexSet) -> IndexSet:
    return s.intersect(t)


def complement(s: IndexSet) -> IndexSet:
    return s.complement()


@dataclass(frozen=True)
class UltrafilterOracle:
    """``frechet`` or a refining ``residue_chain`` of ``(modulus, residue)`` pairs."""

    kind: str = "frechet"
    chain: tuple = field(default=())

    def __post_init__(self):
        if any(int(m) < 1 for m, _ in self.chain):
            raise OracleConfigError("residue moduli must be positive")
        object.__setattr__(self, "chain", tuple((int(m), int(r) % int(m)) for m, r in self.chain))
        if self.kind not in ("frechet", "residue_chain"):
            raise OracleConfigError(f"unknown oracle kind {self.kind!r}")
        if self.kind == "frechet" and self.chain:
            raise OracleConfigError("the frechet oracle takes no residue chain")
        if self.kind == "residue_chain":
            if not self.chain:
                raise OracleConfigError("residue_chain needs at least one (modulus, residue) pair")
            prev_m, prev_r = 1, 0
            for m, r in self.chain:
                if m < 1 or m % prev_m or r % prev_m != prev_r:
                    raise OracleConfigError(
                        f"({m}, {r}) does not refine ({prev_m}, {prev_r})")
                prev_m, prev_r = m, r

    @classmethod
    def frechet(cls) -> UltrafilterOracle:
        return cls("frechet")

    @classmethod
    def residues(cls, pairs: Sequence[tuple]) -> UltrafilterOracle:
        return cls("residue_chain", tuple(pairs))

    @classmethod
    def parse(cls, text: str) -> UltrafilterOracle:
        """``frechet`` or ``residues=m1:r1,m2:r2,...``."""
        text = text.strip()
        if text == "frechet":
            return cls.frechet()
        if text.startswith("residues="):
            pairs = []
            for item in text[len("residues="):].split(","):
                m, _, r = item.partition(":")
                try:
                    pairs.append((int(m), int(r)))
                except ValueError:
                    raise OracleConfigError(f"bad residue pair {item!r}") from None
            return cls.residues(pairs)
        raise OracleConfigError(f"unknown oracle {text!r}")

    def __str__(self):
        if self.kind == "frechet":
            return "frechet"
        return "residues=" + ",".join(f"{m}:{r}" for m, r in self.chain)

    def verdict(self, s: IndexSet) -> FilterVerdict:
        kind = s.classify()
        if kind is Kind.COFINITE:
            return FilterVerdict.IN
        if kind is Kind.FINITE:
            return FilterVerdict.OUT
        if self.kind == "residue_chain":
            # the deepest class is the smallest; it decides whenever any class does
            m, r = self.chain[-1]
            if s.eventually_contains(m, r):
                return FilterVerdict.IN
            if s.eventually_disjoint(m, r):
                return FilterVerdict.OUT
        return FilterVerdict.UNDETERMINED


FRECHET = UltrafilterOracle.frechet()


def verdict(o: UltrafilterOracle, s: IndexSet) -> FilterVerdict:
    return o.verdict(s)
