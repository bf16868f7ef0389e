"""Finitely presented infinite 0-graphs.

A presentation lists node *families* (a name plus one integer parameter per
slot, each slot ranging over N, Z or a bounded interval) and symbolic edge
rules:

``step``  ``F(p) -- G(p + delta)`` for every valid ``p``;
``hub``   one centre node joined to every member of a family (infinite degree);
``link``  a single fixed branch.

A finite edit list then adds or deletes concrete branches.  Distances come
from a registered closed-form oracle when the presentation names one, and
from a bidirectional BFS otherwise.  BFS treats the whole neighbour family of
a hub as one frontier item, so distances through an infinite-degree node are
still exact.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from itertools import count
from typing import Callable, Iterable, Iterator, Optional, Union


class GraphError(ValueError):
    pass


class InvalidNode(GraphError):
    pass


class UnsupportedOperation(GraphError):
    pass


class PreconditionError(GraphError):
    pass


@dataclass(frozen=True, order=False)
class NodeRef:
    family: str
    params: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))

    def key(self):
        return (self.family, self.params)

    def __str__(self):
        if not self.params:
            return self.family
        return f"{self.family}({','.join(str(p) for p in self.params)})"

    def __repr__(self):
        return f"NodeRef({self})"


_NODE_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(\s*([-+0-9,\s]*)\s*\))?\s*$")


def parse_node(text: str) -> NodeRef:
    m = _NODE_RE.match(text)
    if not m:
        raise GraphError(f"cannot parse node {text!r}")
    body = (m.group(2) or "").strip()
    params = tuple(int(p) for p in body.split(",")) if body else ()
    return NodeRef(m.group(1), params)


def node_key(x: NodeRef):
    """Tie-break order: lexicographic on (family name, params)."""
    return (x.family, x.params)


# ---------------------------------------------------------------- families

Domain = tuple  # (lo, hi); None means unbounded on that side

NAT: Domain = (0, None)
INT: Domain = (None, None)


def _domain_from_json(d) -> Domain:
    if d == "N":
        return NAT
    if d == "Z":
        return INT
    lo, hi = d
    return (lo, hi)


def _domain_to_json(d: Domain):
    if d == NAT:
        return "N"
    if d == INT:
        return "Z"
    return [d[0], d[1]]


def in_domain(v, d: Domain) -> bool:
    lo, hi = d
    if lo is not None and not v >= lo:
        return False
    if hi is not None and not v <= hi:
        return False
    return True


def canonical_values(d: Domain) -> Iterator[int]:
    """0, 1, -1, 2, -2, ... restricted to the domain; finite domains ascend."""
    lo, hi = d
    if lo is not None and hi is not None:
        yield from range(lo, hi + 1)
        return
    if lo is not None:
        yield from count(lo)
        return
    if hi is not None:
        yield from count(hi, -1)
        return
    yield 0
    for k in count(1):
        yield k
        yield -k


@dataclass(frozen=True)
class Family:
    name: str
    domains: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.domains)

    @property
    def is_finite(self) -> bool:
        return all(lo is not None and hi is not None for lo, hi in self.domains)


@dataclass(frozen=True)
class StepRule:
    src: str
    dst: str
    delta: tuple


@dataclass(frozen=True)
class HubRule:
    center: NodeRef
    family: str


@dataclass(frozen=True)
class LinkRule:
    u: NodeRef
    v: NodeRef


@dataclass(frozen=True)
class Edit:
    op: str  # "add" | "delete"
    u: NodeRef
    v: NodeRef


Rule = Union[StepRule, HubRule, LinkRule]


@dataclass(frozen=True)
class Unresolved:
    """Budget exhausted; the true distance is at least ``lower_bound``."""

    lower_bound: int

    def __str__(self):
        return f"unresolved(>={self.lower_bound})"


@dataclass(frozen=True)
class FamilyItem:
    """All members of a family except ``excluded`` (a BFS frontier item)."""

    family: str
    excluded: frozenset = frozenset()

    def __contains__(self, x: NodeRef) -> bool:
        return x.family == self.family and x not in self.excluded


@dataclass(frozen=True)
class Neighbors:
    nodes: tuple
    infinite: bool = False


class _Incomplete(Exception):
    pass


ORACLES: dict = {}


@dataclass(frozen=True)
class ZeroOracle:
    """Closed-form companions of a presentation.

    ``distance(x, y)`` returns an int, ``None`` for "no 0-path", or
    ``NotImplemented`` when it does not apply; ``geodesic(x, v, t)`` returns the
    node at distance ``t`` from ``x`` on the canonical x-v geodesic.  Both
    must also accept symbolic parameters.
    """

    distance: Callable
    geodesic: Optional[Callable] = None
    sphere: Optional[Callable] = None


def register_oracle(name: str, oracle) -> None:
    ORACLES[name] = oracle


@dataclass(frozen=True)
class GraphPresentation:
    name: str
    families: tuple
    rules: tuple = ()
    edits: tuple = ()
    flags: dict = field(default_factory=dict, hash=False, compare=False)
    base: Optional[NodeRef] = None
    oracle: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "families", tuple(self.families))
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "edits", tuple(self.edits))
        object.__setattr__(self, "_fam", {f.name: f for f in self.families})
        self._check_rules()

    # -- structure
    def family(self, name: str) -> Family:
        try:
            return self._fam[name]
        except KeyError:
            raise InvalidNode(f"unknown family {name!r}") from None

    @property
    def locally_finite(self) -> bool:
        return bool(self.flags.get("locally_finite", False))

    @property
    def oracle_bundle(self):
        if self.oracle is None:
            return None
        try:
            return ORACLES[self.oracle]
        except KeyError:
            raise GraphError(f"unknown oracle {self.oracle!r}") from None

    def is_valid(self, x: NodeRef) -> bool:
        f = self._fam.get(x.family)
        if f is None or len(x.params) != f.arity:
            return False
        return all(in_domain(p, d) for p, d in zip(x.params, f.domains))

    def check_node(self, x: NodeRef) -> NodeRef:
        if not self.is_valid(x):
            raise InvalidNode(f"{x} is not a node of {self.name}")
        return x

    def _check_rules(self):
        for r in self.rules:
            if isinstance(r, StepRule):
                a, b = self.family(r.src), self.family(r.dst)
                if a.arity != b.arity or len(r.delta) != a.arity:
                    raise GraphError(f"step rule {r} has mismatched arity")
                if r.src == r.dst and not any(r.delta):
                    raise GraphError(f"step rule {r} would create self-loops")
            elif isinstance(r, HubRule):
                self.check_node(r.center)
                if r.center.family == r.family:
                    raise GraphError("a hub cannot join its own family")
            elif isinstance(r, LinkRule):
                self.check_node(r.u), self.check_node(r.v)
                if r.u == r.v:
                    raise GraphError("link rule would be a self-loop")
        for e in self.edits:
            if e.op not in ("add", "delete"):
                raise GraphError(f"bad edit op {e.op!r}")
            self.check_node(e.u), self.check_node(e.v)
            if e.u == e.v:
                raise GraphError("edit would create a self-loop")

    # -- adjacency
    def _rule_adjacent(self, u: NodeRef, v: NodeRef) -> bool:
        for r in self.rules:
            if isinstance(r, StepRule):
                if u.family == r.src and v.family == r.dst and \
                        v.params == tuple(p + d for p, d in zip(u.params, r.delta)):
                    return True
                if v.family == r.src and u.family == r.dst and \
                        u.params == tuple(p + d for p, d in zip(v.params, r.delta)):
                    return True
            elif isinstance(r, HubRule):
                if (u == r.center and v.family == r.family) or (v == r.center and u.family == r.family):
                    return True
            elif (u == r.u and v == r.v) or (u == r.v and v == r.u):
                return True
        return False

    def _edit_state(self, u: NodeRef, v: NodeRef):
        state = None
        for e in self.edits:
            if (u == e.u and v == e.v) or (u == e.v and v == e.u):
                state = e.op
        return state

    def is_branch(self, u: NodeRef, v: NodeRef) -> bool:
        """Works for concrete and symbolic node parameters alike."""
        if not (self.is_valid(u) and self.is_valid(v)) or u == v:
            return False
        state = self._edit_state(u, v)
        if state == "delete":
            return False
        if state == "add":
            return True
        return self._rule_adjacent(u, v)

    def _finite_neighbors(self, x: NodeRef) -> list:
        out = []
        for r in self.rules:
            if isinstance(r, StepRule):
                if x.family == r.src:
                    out.append(NodeRef(r.dst, tuple(p + d for p, d in zip(x.params, r.delta))))
                if x.family == r.dst:
                    out.append(NodeRef(r.src, tuple(p - d for p, d in zip(x.params, r.delta))))
            elif isinstance(r, HubRule):
                if x.family == r.family:
                    out.append(r.center)
            else:
                if x == r.u:
                    out.append(r.v)
                elif x == r.v:
                    out.append(r.u)
        for e in self.edits:
            if e.op == "add":
                if x == e.u:
                    out.append(e.v)
                elif x == e.v:
                    out.append(e.u)
        seen, res = set(), []
        for y in out:
            if y not in seen and y != x and self.is_valid(y) and self._edit_state(x, y) != "delete":
                seen.add(y)
                res.append(y)
        return res

    def _hubs_at(self, x: NodeRef) -> list:
        return [r for r in self.rules if isinstance(r, HubRule) and r.center == x]

    def _hub_item(self, r: HubRule) -> FamilyItem:
        excluded = frozenset(
            e.v if e.u == r.center else e.u for e in self.edits
            if e.op == "delete" and r.center in (e.u, e.v)
            and (e.v if e.u == r.center else e.u).family == r.family)
        return FamilyItem(r.family, excluded)

    def adjacent_items(self, item) -> list:
        """BFS expansion: concrete neighbours plus one item per hub family."""
        if isinstance(item, NodeRef):
            res = list(self._finite_neighbors(item))
            for r in self._hubs_at(item):
                fi = self._hub_item(r)
                res = [y for y in res if y not in fi]
                res.append(fi)
            return res
        return self._family_item_neighbors(item)

    def _family_item_neighbors(self, fi: FamilyItem) -> list:
        fam = self.family(fi.family)
        touched = [e for e in self.edits if e.op == "delete"
                   and (e.u.family == fi.family or e.v.family == fi.family)]
        hub_deletes = {e for e in touched for r in self._hubs_at(e.u) + self._hubs_at(e.v)
                       if r.family == fi.family}
        if set(touched) - hub_deletes:
            raise _Incomplete("deleted branch inside a hub family")
        res = []
        for r in self.rules:
            if isinstance(r, HubRule) and r.family == fi.family:
                res.append(r.center)
            elif isinstance(r, StepRule):
                for src, dst, sign in ((r.src, r.dst, 1), (r.dst, r.src, -1)):
                    if src != fi.family:
                        continue
                    if dst == fi.family and not fi.excluded:
                        continue
                    if fi.excluded or not self._covers(fam, self.family(dst), [sign * d for d in r.delta]):
                        raise _Incomplete(f"image of {fi.family} under {r} is partial")
                    res.append(FamilyItem(dst))
            elif isinstance(r, LinkRule):
                for a, b in ((r.u, r.v), (r.v, r.u)):
                    if a in fi:
                        res.append(b)
        for e in self.edits:
            if e.op == "add":
                for a, b in ((e.u, e.v), (e.v, e.u)):
                    if a in fi:
                        res.append(b)
        return res

    @staticmethod
    def _covers(src: Family, dst: Family, delta) -> bool:
        for (slo, shi), (dlo, dhi), d in zip(src.domains, dst.domains, delta):
            lo = None if slo is None else slo + d
            hi = None if shi is None else shi + d
            if lo is not None and (dlo is None or lo > dlo):
                return False
            if hi is not None and (dhi is None or hi < dhi):
                return False
        return True

    def neighbors(self, x: NodeRef, budget: int = 64) -> Neighbors:
        """Neighbours of ``x``; an infinite hub family is cut at ``budget`` members."""
        self.check_node(x)
        items = self.adjacent_items(x)
        nodes, infinite = [], False
        for it in items:
            if isinstance(it, NodeRef):
                nodes.append(it)
                continue
            fam = self.family(it.family)
            taken = 0
            for params in _enumerate_params(fam):
                y = NodeRef(fam.name, params)
                if y in it.excluded or y == x:
                    continue
                if taken >= budget:
                    infinite = True
                    break
                nodes.append(y)
                taken += 1
        finite_part = sorted((y for y in nodes if not _from_hub(y, items)), key=node_key)
        hub_part = [y for y in nodes if _from_hub(y, items)]
        return Neighbors(tuple(finite_part + hub_part), infinite)

    def canonical_neighbors(self, x: NodeRef) -> list:
        nb = self.neighbors(x)
        if nb.infinite:
            raise UnsupportedOperation(f"{x} has infinitely many neighbours")
        return sorted(nb.nodes, key=node_key)

    # -- serialization
    def to_json(self) -> dict:
        rules = []
        for r in self.rules:
            if isinstance(r, StepRule):
                rules.append({"kind": "step", "from": r.src, "to": r.dst, "delta": list(r.delta)})
            elif isinstance(r, HubRule):
                rules.append({"kind": "hub", "center": str(r.center), "family": r.family})
            else:
                rules.append({"kind": "link", "u": str(r.u), "v": str(r.v)})
        return {
            "rank": 0,
            "name": self.name,
            "families": [{"name": f.name, "domains": [_domain_to_json(d) for d in f.domains]}
                         for f in self.families],
            "edge_rules": rules,
            "edits": [{"op": e.op, "u": str(e.u), "v": str(e.v)} for e in self.edits],
            "flags": dict(self.flags),
            "base": str(self.base) if self.base is not None else None,
            "oracle": self.oracle,
        }

    @classmethod
    def from_json(cls, data: dict) -> GraphPresentation:
        fams = [Family(f["name"], tuple(_domain_from_json(d) for d in f.get("domains", [])))
                for f in data["families"]]
        rules = []
        for r in data.get("edge_rules", []):
            kind = r.get("kind")
            if kind == "step":
                rules.append(StepRule(r["from"], r["to"], tuple(r["delta"])))
            elif kind == "hub":
                rules.append(HubRule(parse_node(r["center"]), r["family"]))
            elif kind == "link":
                rules.append(LinkRule(parse_node(r["u"]), parse_node(r["v"])))
            else:
                raise GraphError(f"unknown edge rule kind {kind!r}")
        edits = [Edit(e["op"], parse_node(e["u"]), parse_node(e["v"])) for e in data.get("edits", [])]
        base = parse_node(data["base"]) if data.get("base") else None
        return cls(data.get("name", "graph"), tuple(fams), tuple(rules), tuple(edits),
                   dict(data.get("flags", {})), base, data.get("oracle"))

    def with_edits(self, edits: Iterable[Edit], name: Optional[str] = None) -> GraphPresentation:
        return GraphPresentation(name or self.name, self.families, self.rules,
                                 tuple(self.edits) + tuple(edits), dict(self.flags), self.base, None)


def _from_hub(y: NodeRef, items) -> bool:
    return any(isinstance(it, FamilyItem) and y in it for it in items)


def _enumerate_params(fam: Family) -> Iterator[tuple]:
    if fam.arity == 0:
        yield ()
        return
    if fam.arity == 1:
        for v in canonical_values(fam.domains[0]):
            yield (v,)
        return
    if fam.is_finite:
        from itertools import product
        yield from product(*(range(lo, hi + 1) for lo, hi in fam.domains))
        return
    # diagonal enumeration by max |param|
    from itertools import product
    for radius in count(0):
        for params in product(*(range(-radius, radius + 1) for _ in fam.domains)):
            if max(abs(p) for p in params) == radius and all(in_domain(p, d) for p, d in zip(params, fam.domains)):
                yield params


def load_graph(path: str):
    with open(path) as fh:
        data = json.load(fh)
    if data.get("rank", 0) == 1:
        from .graphone import OneGraphPresentation
        return OneGraphPresentation.from_json(data)
    return GraphPresentation.from_json(data)


# ---------------------------------------------------------------- distances

def distance(g: GraphPresentation, x: NodeRef, y: NodeRef, budget: int = 64,
             use_oracle: bool = True):
    """Exact graph distance, ``None`` if there is no path, or :class:`Unresolved`."""
    g.check_node(x), g.check_node(y)
    if x == y:
        return 0
    if use_oracle and g.oracle_bundle is not None:
        d = g.oracle_bundle.distance(x, y)
        if d is not NotImplemented:
            return d
    if _symbolic(x) or _symbolic(y):
        raise UnsupportedOperation(f"{g.name}: symbolic distances need a closed-form oracle")
    return bfs_distance(g, x, y, budget)


def _symbolic(x: NodeRef) -> bool:
    return any(not isinstance(p, int) for p in x.params)


class _Side:
    def __init__(self, root):
        self.nodes = {root: 0}
        self.fams: dict = {}
        self.by_family: dict = {root.family: [(0, root)]}
        self.frontier = [root]
        self.depth = 0

    def depth_of(self, x: NodeRef):
        best = self.nodes.get(x)
        for fi, d in self.fams.items():
            if x in fi and (best is None or d < best):
                best = d
        return best

    def seen(self, item) -> bool:
        return item in self.nodes if isinstance(item, NodeRef) else item in self.fams

    def add(self, item, d):
        if isinstance(item, NodeRef):
            self.nodes[item] = d
            self.by_family.setdefault(item.family, []).append((d, item))
        else:
            self.fams[item] = d


def _meet(item, d, other: _Side):
    if isinstance(item, NodeRef):
        od = other.depth_of(item)
        return None if od is None else d + od
    best = None
    for fi, od in other.fams.items():
        if fi.family == item.family:
            best = d + od if best is None else min(best, d + od)
    for od, x in other.by_family.get(item.family, []):
        if x in item:
            best = d + od if best is None else min(best, d + od)
            break
    return best


def bfs_distance(g: GraphPresentation, x: NodeRef, y: NodeRef, budget: int = 64):
    if x == y:
        return 0
    fwd, bwd = _Side(x), _Side(y)
    best = None
    incomplete = False
    while True:
        if best is not None and best <= fwd.depth + bwd.depth + 1:
            return best
        if fwd.depth + bwd.depth >= budget:
            return Unresolved(fwd.depth + bwd.depth + 1) if best is None else \
                (best if best <= fwd.depth + bwd.depth + 1 else Unresolved(fwd.depth + bwd.depth + 1))
        side, other = (fwd, bwd) if len(fwd.frontier) <= len(bwd.frontier) else (bwd, fwd)
        if not side.frontier:
            if best is not None:
                return best
            return Unresolved(fwd.depth + bwd.depth + 1) if incomplete else None
        nxt = []
        d = side.depth + 1
        for item in side.frontier:
            try:
                adj = g.adjacent_items(item)
            except _Incomplete:
                incomplete = True
                continue
            for z in adj:
                if side.seen(z) or (isinstance(z, NodeRef) and side.depth_of(z) is not None):
                    continue
                side.add(z, d)
                nxt.append(z)
                m = _meet(z, d, other)
                if m is not None and (best is None or m < best):
                    best = m
        side.frontier = nxt
        side.depth = d
        if incomplete and best is None and not nxt:
            return Unresolved(fwd.depth + bwd.depth + 1)


def distances_from(g: GraphPresentation, source: NodeRef, radius: int) -> dict:
    """Exact distances to every node within ``radius`` (locally finite graphs)."""
    g.check_node(source)
    dist = {source: 0}
    frontier = [source]
    for d in range(1, radius + 1):
        nxt = []
        for u in frontier:
            for z in g.adjacent_items(u):
                if not isinstance(z, NodeRef):
                    raise UnsupportedOperation(f"{g.name} is not locally finite")
                if z not in dist:
                    dist[z] = d
                    nxt.append(z)
        frontier = nxt
        if not frontier:
            break
    return dist


def sphere(g: GraphPresentation, x0: NodeRef, n: int) -> frozenset:
    """``{x : d(x0, x) = n}``."""
    if not g.locally_finite:
        raise UnsupportedOperation(f"sphere needs a locally finite presentation; {g.name} is not")
    g.check_node(x0)
    frontier, seen = {x0}, {x0}
    for _ in range(n):
        nxt = set()
        for u in frontier:
            for z in g.adjacent_items(u):
                if not isinstance(z, NodeRef):
                    raise UnsupportedOperation(f"{g.name} is not locally finite")
                if z not in seen:
                    seen.add(z)
                    nxt.add(z)
        frontier = nxt
    return frozenset(frontier)


def neighbors(g: GraphPresentation, x: NodeRef, budget: int = 64) -> Neighbors:
    return g.neighbors(x, budget)
