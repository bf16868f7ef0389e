"""Hypernodes, hyperbranches and hyperordinals over a fixed presentation.

A hypernode is the class of a definable node sequence modulo agreement on a
set in the ultrafilter.  Every question about hypernodes reduces to an
:class:`~nsgraph.filters.IndexSet`, built by running ordinary code over the
sequences with :func:`~nsgraph.sequences.lift`, and then to an oracle verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .filters import FRECHET, FilterVerdict, IndexSet, UltrafilterOracle
from .graphone import OneGraphPresentation, wdistance
from .graphzero import GraphError, GraphPresentation, NodeRef, Unresolved, UnsupportedOperation, distance
from .ordinals import Ordinal, Ordering
from .sequences import DefinableSequence, bind, has_index, instantiate, lift
from .symbolic import ClassContext


class RankMismatch(GraphError):
    pass


def index_set(seq: DefinableSequence) -> IndexSet:
    """The set ``{n : seq[n]}`` of a boolean sequence."""
    return IndexSet(tuple(bool(b) for b in seq.prefix), tuple(bool(b) for b in seq.terms)).normalized()


def where(fn, *seqs: DefinableSequence) -> IndexSet:
    return index_set(lift(fn, *seqs))


def graph_rank(g) -> int:
    return 1 if isinstance(g, OneGraphPresentation) else 0


@dataclass(frozen=True)
class Hypernode:
    graph: object
    seq: DefinableSequence
    rank: int = field(default=-1)

    def __post_init__(self):
        rank = self._infer_rank()
        if self.rank not in (-1, rank):
            raise RankMismatch(f"sequence holds rank-{rank} nodes, not rank {self.rank}")
        object.__setattr__(self, "rank", rank)

    def _infer_rank(self) -> int:
        g = self.graph
        checked = _validate_nodes(g, self.seq)
        if graph_rank(g) == 0:
            return 0
        kinds = {1 if g.is_one_node(x) else 0 for x in checked}
        if len(kinds) > 1:
            # minority indices are ignored: pick the kind that holds on the tail classes
            tail_kinds = [1 if g.is_one_node(instantiate(t, self.seq.start + r)) else 0
                          for r, t in enumerate(self.seq.terms)]
            if len(set(tail_kinds)) > 1:
                raise RankMismatch("sequence mixes 0-nodes and 1-nodes on infinitely many indices")
            return tail_kinds[0]
        return kinds.pop()

    @classmethod
    def const(cls, g, x: NodeRef) -> Hypernode:
        return cls(g, DefinableSequence.constant(x))

    @classmethod
    def of(cls, g, fn) -> Hypernode:
        """The hypernode ``[fn(n)]``; ``fn`` follows the rules of :func:`lift`."""
        return cls(g, lift(lambda n: fn(n)))

    def at(self, n: int) -> NodeRef:
        return self.seq.at(n)

    def standard_node(self, o: UltrafilterOracle = FRECHET) -> Optional[NodeRef]:
        """The node ``x`` with ``{n : x_n = x}`` in the ultrafilter, if there is one."""
        for t in dict.fromkeys(self.seq.terms):
            if has_index(t):
                continue
            x = t
            agree = where(lambda n, y: y == x, self.seq)
            if o.verdict(agree) is FilterVerdict.IN:
                return x
        return None

    def is_standard(self, o: UltrafilterOracle = FRECHET) -> bool:
        return self.standard_node(o) is not None

    def describe(self) -> str:
        return self.seq.describe()

    def __str__(self):
        return f"[{self.seq.describe()}]"


def _validate_nodes(g, seq: DefinableSequence) -> list:
    out = list(seq.prefix)
    for r, t in enumerate(seq.terms):
        ctx = ClassContext(r, seq.period, seq.start)
        x = bind(t, ctx)
        if not g.is_valid(x):
            raise GraphError(f"sequence term {t} is not a node of {g.name} for large n")
        n0 = ctx.first_member_at_or_after(ctx.threshold)
        out.append(instantiate(t, n0))
        for n in range(seq.start, n0):
            if n % seq.period == r and not g.is_valid(instantiate(t, n)):
                raise GraphError(f"sequence term at n={n} is not a node of {g.name}")
    for x in seq.prefix:
        g.check_node(x)
    return out


def _same_space(a: Hypernode, b: Hypernode):
    if a.graph is not b.graph and a.graph.name != b.graph.name:
        raise GraphError("hypernodes live over different presentations")


def hn_equal(a: Hypernode, b: Hypernode, o: UltrafilterOracle = FRECHET) -> FilterVerdict:
    if a.rank != b.rank:
        raise RankMismatch(f"cannot compare a rank-{a.rank} and a rank-{b.rank} hypernode")
    _same_space(a, b)
    return o.verdict(where(lambda n, x, y: x == y, a.seq, b.seq))


@dataclass(frozen=True)
class Hyperbranch:
    a: Hypernode
    b: Hypernode

    def validity(self, o: UltrafilterOracle = FRECHET) -> FilterVerdict:
        g = self.a.graph
        if graph_rank(g) != 0:
            raise UnsupportedOperation("hyperbranches are checked on 0-graphs")
        return o.verdict(where(lambda n, x, y: g.is_branch(x, y), self.a.seq, self.b.seq))

    def is_standard(self, o: UltrafilterOracle = FRECHET) -> bool:
        return self.a.is_standard(o) and self.b.is_standard(o)


@dataclass(frozen=True)
class HyperOrdinal:
    seq: DefinableSequence

    def at(self, n: int) -> Ordinal:
        return self.seq.at(n)

    def values(self, upto: int) -> list:
        return self.seq.values(upto)

    @classmethod
    def const(cls, a: Ordinal) -> HyperOrdinal:
        return cls(DefinableSequence.constant(a))

    def describe(self) -> str:
        return self.seq.describe()


def pointwise_distance(g, budget: int = 64):
    """``(x, y) -> Ordinal`` on concrete or symbolic nodes; raises when unresolved."""
    def d(x: NodeRef, y: NodeRef) -> Ordinal:
        if graph_rank(g) == 0:
            v = distance(g, x, y, budget)
            if v is None or isinstance(v, Unresolved):
                raise UnsupportedOperation(f"d({x}, {y}) in {g.name} is {v}")
            return Ordinal(0, v)
        v = wdistance(g, x, y, budget)
        if not isinstance(v, Ordinal):
            raise UnsupportedOperation(f"d({x}, {y}) in {g.name} is {v}")
        return v
    return d


def hyperdistance(a: Hypernode, b: Hypernode, budget: int = 64) -> HyperOrdinal:
    _same_space(a, b)
    d = pointwise_distance(a.graph, budget)
    return HyperOrdinal(lift(lambda n, x, y: d(x, y), a.seq, b.seq))


def ho_compare(a: HyperOrdinal, b: HyperOrdinal, o: UltrafilterOracle = FRECHET):
    """``Ordering`` of the class whose index set the oracle accepts, or ``"undetermined"``."""
    sets = {
        Ordering.LESS: where(lambda n, x, y: x < y, a.seq, b.seq),
        Ordering.EQUAL: where(lambda n, x, y: x == y, a.seq, b.seq),
        Ordering.GREATER: where(lambda n, x, y: x > y, a.seq, b.seq),
    }
    for key, s in sets.items():
        if o.verdict(s) is FilterVerdict.IN:
            return key
    return FilterVerdict.UNDETERMINED


@dataclass(frozen=True)
class TriangleReport:
    ok: bool
    samples: int
    failures: tuple = ()
    holds_on: Optional[IndexSet] = None

    def __bool__(self):
        return self.ok


def hyper_triangle_check(a: Hypernode, b: Hypernode, c: Hypernode, samples: int = 100,
                         budget: int = 64) -> TriangleReport:
    """``d(a,c) <= d(a,b) + d(b,c)`` pointwise and on a cofinite index set."""
    ab, bc, ac = (hyperdistance(p, q, budget) for p, q in ((a, b), (b, c), (a, c)))
    failures = tuple(n for n in range(samples) if not ac.at(n) <= ab.at(n) + bc.at(n))
    holds = where(lambda n, x, y, z: z <= x + y, ab.seq, bc.seq, ac.seq)
    # the inequality holds for every n, so the set is all of N, not merely cofinite
    ok = not failures and holds == IndexSet.everything()
    return TriangleReport(ok, samples, failures, holds)
