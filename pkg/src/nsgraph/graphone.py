"""Rank-1 transfinite graphs and their walk-based distances.

A :class:`OneGraphPresentation` wraps a 0-graph whose connected components
are the 0-sections.  Each section family lists its named 0-tips together with
the 1-node each tip belongs to; each 1-node family may also embed one 0-node.
All templates use one variable ``k`` (the section or 1-node parameter).

Distances are ordinals ``w*tau1 + tau0``.  The solver runs Dijkstra on a
quotient whose vertices are the terminal 0-nodes and the 1-nodes.  Moving
between two vertices that touch a common section costs

* ``w*2`` when both touch it through tips (an endless 0-walk),
* ``w`` when exactly one does (a one-ended 0-walk),
* the section's finite 0-distance when neither does.

Two consecutive branch-only moves through a 1-node stay in the section of its
embedded 0-node, so they merge into one finite 0-walk; a reported sketch
never enters and leaves a 1-node through branches alone.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import count, islice
from typing import Iterator, Optional

from .exprs import ANY, format_template, instantiate_template, parse_template, solve_template
from .graphzero import (
    ORACLES, GraphError, GraphPresentation, InvalidNode, NodeRef, PreconditionError,
    Unresolved, UnsupportedOperation, _domain_from_json, _domain_to_json, canonical_values,
    in_domain, node_key, parse_node,
)
from .ordinals import OMEGA, ZERO, Ordinal


class IllegalWalk(GraphError):
    pass


@dataclass(frozen=True)
class TipSpec:
    name: str
    one_node: NodeRef  # template in k
    routing: bool = True


@dataclass(frozen=True)
class SectionFamily:
    name: str
    domains: tuple = ()
    tips: tuple = ()
    members: tuple = ()  # (zero family, number of leading params naming the section)


@dataclass(frozen=True)
class OneNodeFamily:
    name: str
    domains: tuple = ()
    embedded: Optional[NodeRef] = None  # template in k


@dataclass(frozen=True)
class TipRef:
    section: NodeRef
    name: str

    def __str__(self):
        return f"{self.section}.{self.name}"


@dataclass(frozen=True)
class OneNodeRef:
    ref: NodeRef
    tips: tuple = ()
    embedded_zero_node: Optional[NodeRef] = None
    more_tips: bool = False

    def __str__(self):
        return str(self.ref)


@dataclass(frozen=True)
class OneOracle:
    """Closed-form companions of a 1-graph.

    ``wdistance(x, y)`` returns an :class:`Ordinal` (or ``NotImplemented``);
    ``geodesic_at(x, v, t)`` returns the first node ``w`` on a canonical
    geodesic walk from ``x`` to ``v`` with ``d(x, w).tau1 >= t``.
    """

    wdistance: callable
    geodesic_at: Optional[callable] = None


TIP, BRANCH, NODE = "tip", "branch", "node"


@dataclass(frozen=True)
class Segment:
    """One 0-walk inside ``section``; ``steps`` counts its branch traversals."""

    section: NodeRef
    start: NodeRef
    start_mode: str
    end: NodeRef
    end_mode: str
    steps: int = 0

    @property
    def length(self) -> Ordinal:
        tips = (self.start_mode == TIP) + (self.end_mode == TIP)
        return Ordinal(tips, self.steps)

    def reversed(self) -> Segment:
        return Segment(self.section, self.end, self.end_mode, self.start, self.start_mode, self.steps)

    def __str__(self):
        return f"{self.start}-[{self.start_mode}|{self.section}|{self.steps}|{self.end_mode}]-{self.end}"


@dataclass(frozen=True)
class WalkSketch:
    start: NodeRef
    segments: tuple = ()
    end: Optional[NodeRef] = None

    @property
    def length(self) -> Ordinal:
        return walk_length(self)

    @property
    def one_nodes(self) -> list:
        return [s.end for s in self.segments[:-1]]

    def __str__(self):
        if not self.segments:
            return str(self.start)
        return " ".join(str(s) for s in self.segments)


def walk_length(w: WalkSketch) -> Ordinal:
    """Natural sum of the segment lengths."""
    total = ZERO
    for s in w.segments:
        total = total + s.length
    return total


@dataclass
class OneGraphPresentation:
    name: str
    zero_graph: GraphPresentation
    section_families: tuple
    one_families: tuple
    flags: dict = field(default_factory=dict)
    oracle: Optional[str] = None

    def __post_init__(self):
        self.section_families = tuple(self.section_families)
        self.one_families = tuple(self.one_families)
        self._sec = {s.name: s for s in self.section_families}
        self._one = {f.name: f for f in self.one_families}
        self._member = {}
        for s in self.section_families:
            if len(s.domains) > 1:
                raise GraphError("section families take at most one parameter")
            for fam, lead in s.members:
                self.zero_graph.family(fam)
                self._member[fam] = (s.name, lead)
        for f in self.one_families:
            if len(f.domains) > 1:
                raise GraphError("1-node families take at most one parameter")
            if f.name in self._member or f.name in {z.name for z in self.zero_graph.families}:
                raise GraphError(f"1-node family {f.name!r} clashes with a 0-node family")
        for z in self.zero_graph.families:
            if z.name not in self._member:
                raise GraphError(f"0-node family {z.name!r} belongs to no section family")

    rank = 1

    @property
    def base(self) -> Optional[NodeRef]:
        return self.zero_graph.base

    @property
    def oracle_bundle(self):
        if self.oracle is None:
            return None
        return ORACLES[self.oracle]

    @property
    def locally_finite(self) -> bool:
        return False

    # -- node kinds
    def is_one_node(self, x: NodeRef) -> bool:
        f = self._one.get(x.family)
        return f is not None and len(x.params) == len(f.domains) and \
            all(in_domain(p, d) for p, d in zip(x.params, f.domains))

    def is_zero_node(self, x: NodeRef) -> bool:
        return self.zero_graph.is_valid(x)

    def is_valid(self, x: NodeRef) -> bool:
        return self.is_one_node(x) or self.is_zero_node(x)

    def check_node(self, x: NodeRef) -> NodeRef:
        if not self.is_valid(x):
            raise InvalidNode(f"{x} is not a node of {self.name}")
        return x

    def is_section(self, s: NodeRef) -> bool:
        f = self._sec.get(s.family)
        return f is not None and len(s.params) == len(f.domains) and \
            all(in_domain(p, d) for p, d in zip(s.params, f.domains))

    def section_of(self, u: NodeRef) -> NodeRef:
        fam, lead = self._member[u.family]
        return NodeRef(fam, u.params[:lead])

    def embedded(self, x: NodeRef) -> Optional[NodeRef]:
        f = self._one[x.family]
        if f.embedded is None:
            return None
        e = instantiate_template(f.embedded, x.params[0] if x.params else 0)
        return e if self.is_zero_node(e) else None

    def owner(self, u: NodeRef) -> Optional[NodeRef]:
        """The 1-node that embeds the 0-node ``u``, if any."""
        for f in self.one_families:
            if f.embedded is None:
                continue
            sol = solve_template(f.embedded, u)
            if sol is None:
                continue
            if f.domains:
                if sol is ANY:
                    continue
                x = NodeRef(f.name, (sol,))
            else:
                x = NodeRef(f.name, ())
            if self.is_one_node(x) and self.embedded(x) == u:
                return x
        return None

    def maximal(self, x: NodeRef) -> NodeRef:
        """Nonmaximal 0-nodes are measured from the 1-node containing them."""
        if self.is_zero_node(x):
            return self.owner(x) or x
        return x

    # -- incidence
    def _tip_owner(self, spec: TipSpec, s: NodeRef) -> Optional[NodeRef]:
        x = instantiate_template(spec.one_node, s.params[0] if s.params else 0)
        return x if self.is_one_node(x) else None

    def modes_in(self, x: NodeRef, s: NodeRef) -> dict:
        """``{mode: detail}`` for how the 1-node ``x`` touches section ``s``."""
        out = {}
        if not self.is_section(s) or x.family not in self._one:
            return out
        tips = [t.name for t in self._sec[s.family].tips if self._tip_owner(t, s) == x]
        if tips:
            out[TIP] = tuple(tips)
        e = self.embedded(x)
        if e is not None and self.section_of(e) == s:
            out[BRANCH] = e
        return out

    def _section_params(self, fam: SectionFamily) -> Iterator[tuple]:
        if not fam.domains:
            yield ()
            return
        for v in canonical_values(fam.domains[0]):
            yield (v,)

    def iter_sections(self, x: NodeRef) -> Iterator[NodeRef]:
        """Sections incident to the 1-node ``x``; may be infinite."""
        seen = set()
        e = self.embedded(x)
        if e is not None:
            s = self.section_of(e)
            seen.add(s)
            yield s
        finite, infinite = [], []
        for fam in self.section_families:
            for spec in fam.tips:
                sol = solve_template(spec.one_node, x)
                if sol is None:
                    continue
                if sol is ANY:
                    infinite.append(fam)
                elif not fam.domains:
                    finite.append(NodeRef(fam.name, ()))
                else:
                    s = NodeRef(fam.name, (sol,))
                    if self.is_section(s):
                        finite.append(s)
        for s in sorted(finite, key=node_key):
            if s not in seen:
                seen.add(s)
                yield s
        if infinite:
            gens = [(NodeRef(f.name, p) for p in self._section_params(f)) for f in infinite]
            for group in _roundrobin(gens):
                if group not in seen:
                    seen.add(group)
                    yield group

    def iter_one_nodes(self, s: NodeRef) -> Iterator[NodeRef]:
        """1-nodes incident to section ``s``; may be infinite."""
        fam = self._sec[s.family]
        seen = set()
        for spec in fam.tips:
            x = self._tip_owner(spec, s)
            if x is not None and x not in seen:
                seen.add(x)
                yield x
        for f in self.one_families:
            if f.embedded is None or f.embedded.family not in self._member:
                continue
            sfam, lead = self._member[f.embedded.family]
            if sfam != s.family:
                continue
            if lead == 0:
                values = canonical_values(f.domains[0]) if f.domains else iter([None])
                for v in values:
                    x = NodeRef(f.name, () if v is None else (v,))
                    if x not in seen and self.embedded(x) is not None:
                        seen.add(x)
                        yield x
            else:
                sol = solve_template(NodeRef("s", f.embedded.params[:lead]), NodeRef("s", s.params))
                if sol is None or sol is ANY:
                    continue
                x = NodeRef(f.name, (sol,) if f.domains else ())
                if x not in seen and self.is_one_node(x) and self.embedded(x) is not None:
                    seen.add(x)
                    yield x

    def routing(self, x: NodeRef) -> bool:
        """False for 1-nodes reached only through non-routing tips (dead ends)."""
        for s in islice(self.iter_sections(x), 4):
            m = self.modes_in(x, s)
            if BRANCH in m:
                return True
            if any(t.routing for t in self._sec[s.family].tips if t.name in m.get(TIP, ())):
                return True
        return False

    def one_node(self, x: NodeRef, budget: int = 16) -> OneNodeRef:
        if not self.is_one_node(x):
            raise InvalidNode(f"{x} is not a 1-node of {self.name}")
        secs = list(islice(self.iter_sections(x), budget + 1))
        tips = tuple(TipRef(s, t) for s in secs[:budget] for t in self.modes_in(x, s).get(TIP, ()))
        return OneNodeRef(x, tips, self.embedded(x), len(secs) > budget)

    def boundary_one_nodes(self, s: NodeRef, budget: int = 64) -> frozenset:
        if not self.is_section(s):
            raise InvalidNode(f"{s} is not a section of {self.name}")
        xs = list(islice(self.iter_one_nodes(s), budget + 1))
        if len(xs) > budget:
            raise UnsupportedOperation(f"{s} has infinitely many incident 1-nodes")
        return frozenset(x for x in xs if len(list(islice(self.iter_sections(x), 2))) >= 2)

    def one_adjacent(self, x: NodeRef, y: NodeRef, budget: int = 64) -> bool:
        """Incident to a common 0-section."""
        for s in islice(self.iter_sections(x), budget):
            if self.modes_in(y, s):
                return True
        return False

    def section_distance(self, u: NodeRef, v: NodeRef, budget: int = 64):
        from .graphzero import distance
        return distance(self.zero_graph, u, v, budget)

    # -- truncation and serialization
    def truncated(self, section_range: tuple, one_range: tuple, name: Optional[str] = None):
        """Restrict every one-parameter section and 1-node family to the given ranges."""
        from .graphzero import Family
        lo, hi = section_range
        secs = tuple(SectionFamily(f.name, tuple(_clip(d, lo, hi) for d in f.domains), f.tips, f.members)
                     for f in self.section_families)
        olo, ohi = one_range
        ones = tuple(OneNodeFamily(f.name, tuple(_clip(d, olo, ohi) for d in f.domains), f.embedded)
                     for f in self.one_families)
        fams = []
        for z in self.zero_graph.families:
            _, lead = self._member[z.name]
            doms = tuple(_clip(d, lo, hi) if i < lead else d for i, d in enumerate(z.domains))
            fams.append(Family(z.name, doms))
        zg = GraphPresentation(self.zero_graph.name, tuple(fams), self.zero_graph.rules,
                               self.zero_graph.edits, dict(self.zero_graph.flags),
                               self.zero_graph.base, self.zero_graph.oracle)
        return OneGraphPresentation(name or f"{self.name}[{lo}..{hi}]", zg, secs, ones,
                                    dict(self.flags), None)

    def to_json(self) -> dict:
        data = self.zero_graph.to_json()
        data.update({
            "rank": 1,
            "name": self.name,
            "zero_name": self.zero_graph.name,
            "flags": dict(self.flags),
            "zero_flags": dict(self.zero_graph.flags),
            "zero_oracle": self.zero_graph.oracle,
            "oracle": self.oracle,
            "sections": [{"name": s.name, "domains": [_domain_to_json(d) for d in s.domains],
                          "members": [{"family": f, "lead": lead} for f, lead in s.members]}
                         for s in self.section_families],
            "tip_table": [{"section": s.name, "tip": t.name, "one_node": format_template(t.one_node),
                           "routing": t.routing}
                          for s in self.section_families for t in s.tips],
            "one_nodes": [{"name": f.name, "domains": [_domain_to_json(d) for d in f.domains],
                           "embedded": format_template(f.embedded) if f.embedded else None}
                          for f in self.one_families],
        })
        return data

    @classmethod
    def from_json(cls, data: dict) -> OneGraphPresentation:
        zdata = dict(data)
        zdata.update({"rank": 0, "name": data.get("zero_name", data.get("name", "graph")),
                      "flags": data.get("zero_flags", {}), "oracle": data.get("zero_oracle")})
        zg = GraphPresentation.from_json(zdata)
        tips: dict = {}
        for t in data.get("tip_table", []):
            tips.setdefault(t["section"], []).append(
                TipSpec(t["tip"], parse_template(t["one_node"]), bool(t.get("routing", True))))
        secs = tuple(SectionFamily(s["name"], tuple(_domain_from_json(d) for d in s.get("domains", [])),
                                   tuple(tips.get(s["name"], [])),
                                   tuple((m["family"], int(m["lead"])) for m in s["members"]))
                     for s in data["sections"])
        ones = tuple(OneNodeFamily(f["name"], tuple(_domain_from_json(d) for d in f.get("domains", [])),
                                   parse_template(f["embedded"]) if f.get("embedded") else None)
                     for f in data["one_nodes"])
        return cls(data.get("name", "graph"), zg, secs, ones, dict(data.get("flags", {})), data.get("oracle"))


def _clip(d, lo, hi):
    a, b = d
    a = lo if a is None else max(a, lo)
    b = hi if b is None else min(b, hi)
    return (a, b)


def _roundrobin(gens):
    gens = list(gens)
    while gens:
        alive = []
        for g in gens:
            try:
                yield next(g)
                alive.append(g)
            except StopIteration:
                pass
        gens = alive


# ---------------------------------------------------------------- solver

def _okey(o: Ordinal):
    return (o.tau1, o.tau0)


def _links(g: OneGraphPresentation, a: NodeRef, b: NodeRef, s: NodeRef, budget: int):
    """Cheapest single 0-walk in ``s`` from ``a`` to ``b`` as a :class:`Segment`."""
    def ends(x):
        if g.is_zero_node(x):
            return [(NODE, x)] if g.section_of(x) == s else []
        m = g.modes_in(x, s)
        out = []
        if TIP in m:
            out.append((TIP, None))
        if BRANCH in m:
            out.append((BRANCH, m[BRANCH]))
        return out

    best, lower = None, None
    for ma, ua in ends(a):
        for mb, ub in ends(b):
            if ma == TIP or mb == TIP:
                seg = Segment(s, a, ma, b, mb, 0)
            else:
                d = g.section_distance(ua, ub, budget)
                if isinstance(d, Unresolved):
                    lb = Ordinal(0, d.lower_bound)
                    lower = lb if lower is None or lb < lower else lower
                    continue
                if d is None:
                    continue
                seg = Segment(s, a, ma, b, mb, d)
            if best is None or seg.length < best.length:
                best = seg
    return best, lower


def solve(g: OneGraphPresentation, x: NodeRef, y: NodeRef, budget: int = 64, max_states: int = 20000):
    """``(distance, sketch)``, ``(None, None)`` when not 1-wconnected, or ``(Unresolved, None)``."""
    g.check_node(x), g.check_node(y)
    x, y = g.maximal(x), g.maximal(y)
    if x == y:
        return ZERO, WalkSketch(x, (), x)
    tie = count()
    dist = {x: ZERO}
    pred: dict = {}
    heap = [(_okey(ZERO), next(tie), x)]
    bound: Optional[Ordinal] = None
    done = set()

    def relax(c, u, seg):
        if seg is None:
            return
        nc = c + seg.length
        if seg.end not in dist or nc < dist[seg.end]:
            dist[seg.end] = nc
            pred[seg.end] = (u, seg)
            heapq.heappush(heap, (_okey(nc), next(tie), seg.end))

    def note_skip(c, lb):
        nonlocal bound
        cand = c + lb
        if bound is None or cand < bound:
            bound = cand

    # Nodes near the target are always enumerated, so a skipped 1-node needs
    # at least two more segments; one entered through a branch must leave
    # through a tip, which costs at least w.
    if g.is_zero_node(y):
        target_secs = [g.section_of(y)]
    else:
        target_secs = list(islice(g.iter_sections(y), budget))
    near, complete = {y}, True
    for s in target_secs:
        it = g.iter_one_nodes(s)
        near.update(islice(it, budget))
        complete = complete and next(it, None) is None
    near_secs = set(target_secs)
    for v in near:
        if g.is_one_node(v):
            near_secs.update(islice(g.iter_sections(v), budget))
    far = Ordinal(0, 1 if complete else 0)

    while heap:
        _, _, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        c = dist[u]
        if u == y:
            if bound is not None and bound < c:
                return Unresolved(bound), None
            return c, _reconstruct(x, y, pred)
        if len(done) > max_states:
            return Unresolved(c), None
        if u != x and g.is_zero_node(u):
            continue  # only the source 0-node is expanded
        if u != x and not g.routing(u):
            continue
        if g.is_zero_node(u):
            secs = [g.section_of(u)]
        else:
            it = g.iter_sections(u)
            secs = list(islice(it, budget))
            if next(it, None) is not None:
                # skipped sections come from tip families: leave by a tip, then
                # either arrive by a tip and go on, or arrive by a branch and leave by a tip
                note_skip(c, _skipped_section_floor(g) + far)
                secs += [s for s in near_secs if s not in secs and g.modes_in(u, s)]
        for s in secs:
            if g.is_zero_node(y) and g.section_of(y) == s:
                seg, lb = _links(g, u, y, s, budget)
                relax(c, u, seg)
                if lb is not None:
                    note_skip(c, lb)
            it = g.iter_one_nodes(s)
            others = list(islice(it, budget))
            if next(it, None) is not None:
                # skipped 1-nodes of a section are reached through their embedded 0-nodes
                leave = Ordinal(1, 0) if TIP in g.modes_in(u, s) else Ordinal(0, 1)
                note_skip(c, leave + Ordinal(1, 0) + far)
                others += [v for v in near if v not in others and g.is_one_node(v) and g.modes_in(v, s)]
            for v in others:
                if v == u or v in done:
                    continue
                seg, lb = _links(g, u, v, s, budget)
                relax(c, u, seg)
                if lb is not None:
                    note_skip(c, lb)
    if bound is not None:
        return Unresolved(bound), None
    return None, None


def _skipped_section_floor(g: OneGraphPresentation) -> Ordinal:
    """Least cost of leaving by a tip into an unseen section and moving on from there."""
    best = None
    for fam in g.section_families:
        kinds = []
        for t in fam.tips:
            one = g._one[t.one_node.family]
            kinds.append(Ordinal(2, 0) + (Ordinal(0, 1) if one.embedded is not None else Ordinal(1, 0)))
        for one in g.one_families:
            if one.embedded is not None and g._member.get(one.embedded.family, (None,))[0] == fam.name:
                kinds.append(Ordinal(2, 0))
        for k in kinds:
            if best is None or k < best:
                best = k
    return best if best is not None else Ordinal(2, 0)


def _reconstruct(x, y, pred) -> WalkSketch:
    segs = []
    cur = y
    while cur != x:
        prev, seg = pred[cur]
        segs.append(seg)
        cur = prev
    segs.reverse()
    merged = []
    for seg in segs:
        if merged and merged[-1].end_mode == BRANCH and seg.start_mode == BRANCH:
            last = merged.pop()
            seg = Segment(last.section, last.start, last.start_mode, seg.end, seg.end_mode,
                          last.steps + seg.steps)
        merged.append(seg)
    return WalkSketch(x, tuple(merged), y)


def wdistance(g: OneGraphPresentation, x: NodeRef, y: NodeRef, budget: int = 64, use_oracle: bool = True):
    """Ordinal wdistance, ``None`` if no walk exists, or :class:`Unresolved`."""
    g.check_node(x), g.check_node(y)
    if use_oracle and g.oracle_bundle is not None:
        d = g.oracle_bundle.wdistance(g.maximal(x), g.maximal(y))
        if d is not NotImplemented:
            return d
    if any(not isinstance(p, int) for p in x.params + y.params):
        raise UnsupportedOperation(f"{g.name}: symbolic wdistances need a closed-form oracle")
    d, _ = solve(g, x, y, budget)
    return d


def geodesic(g: OneGraphPresentation, x: NodeRef, y: NodeRef, budget: int = 64) -> WalkSketch:
    d, sketch = solve(g, x, y, budget)
    if sketch is None:
        raise UnsupportedOperation(f"no geodesic found between {x} and {y} ({d})")
    return sketch


# ---------------------------------------------------------------- legality

def check_walk(g: OneGraphPresentation, w: WalkSketch, budget: int = 64) -> list:
    """Problems with ``w`` (empty when legal).  Independent of the solver."""
    problems = []
    segs = w.segments
    if not segs:
        return [] if w.end in (None, w.start) else ["empty walk between distinct nodes"]
    if segs[0].start != w.start or segs[-1].end != w.end:
        problems.append("terminal nodes do not match the segments")
    for i, s in enumerate(segs):
        if not g.is_section(s.section):
            problems.append(f"segment {i}: {s.section} is not a section")
            continue
        for node, mode in ((s.start, s.start_mode), (s.end, s.end_mode)):
            if mode == NODE:
                if not g.is_zero_node(node) or g.section_of(node) != s.section:
                    problems.append(f"segment {i}: {node} is not a 0-node of {s.section}")
            elif mode in (TIP, BRANCH):
                if not g.is_one_node(node) or mode not in g.modes_in(node, s.section):
                    problems.append(f"segment {i}: {node} does not reach {s.section} by {mode}")
            else:
                problems.append(f"segment {i}: unknown mode {mode!r}")
        if TIP not in (s.start_mode, s.end_mode):
            a = s.start if s.start_mode == NODE else g.embedded(s.start)
            b = s.end if s.end_mode == NODE else g.embedded(s.end)
            if a is not None and b is not None:
                d = g.section_distance(a, b, budget)
                if isinstance(d, int) and (s.steps < d or (s.steps - d) % 2):
                    problems.append(f"segment {i}: no 0-walk of {s.steps} steps (distance {d})")
        elif s.steps:
            problems.append(f"segment {i}: tip segments carry no finite part here")
    for i in range(len(segs) - 1):
        a, b = segs[i], segs[i + 1]
        if a.end != b.start:
            problems.append(f"segments {i} and {i + 1} do not meet")
        elif TIP not in (a.end_mode, b.start_mode):
            problems.append(f"1-node {a.end} is entered and left through branches")
    return problems


def vacuous_clause(w: WalkSketch) -> bool:
    """A one-segment walk touching no tip, where the tip-alternation rule for walks holds only vacuously."""
    return len(w.segments) == 1 and TIP not in (w.segments[0].start_mode, w.segments[0].end_mode)


def section_walk_exists(g: OneGraphPresentation, s: NodeRef, x: NodeRef, y: NodeRef,
                        budget: int = 64) -> WalkSketch:
    """A 0-walk in ``s`` reaching both 1-nodes (possibly the same one twice)."""
    mx, my = g.modes_in(x, s), g.modes_in(y, s)
    if not mx or not my:
        raise PreconditionError(f"{x} and {y} must both be incident to {s}")
    seg, _ = _links(g, x, y, s, budget)
    if seg is None:
        raise PreconditionError(f"no 0-walk in {s} reaches {x} and {y}")
    if x == y and seg.start_mode != TIP:
        # a walk that leaves and returns through branches is trivial; go up a tip instead
        if TIP in mx:
            seg = Segment(s, x, TIP, y, TIP, 0)
    return WalkSketch(x, (seg,), y)


@dataclass(frozen=True)
class LemmaReport:
    applicable: bool
    case: str
    distance: object = None
    sketch: Optional[WalkSketch] = None
    ok: bool = True
    reason: str = ""


def lemma10_checks(g: OneGraphPresentation, a: NodeRef, b: NodeRef, budget: int = 64) -> LemmaReport:
    """Lower bound ``w`` for walks that must cross a boundary 1-node."""
    if g.is_one_node(a) and g.is_one_node(b):
        if a == b or g.one_adjacent(a, b, budget):
            return LemmaReport(False, "one_nodes", reason="1-nodes are 1-adjacent")
        case = "one_nodes"
    elif g.is_zero_node(a) and g.is_zero_node(b):
        if g.section_of(a) == g.section_of(b):
            return LemmaReport(False, "zero_nodes", reason="same section")
        if g.maximal(a) != a or g.maximal(b) != b:
            return LemmaReport(False, "zero_nodes", reason="nonmaximal 0-node")
        case = "zero_nodes"
    else:
        return LemmaReport(False, "mixed", reason="mixed node kinds")
    d, sketch = solve(g, a, b, budget)
    if not isinstance(d, Ordinal):
        return LemmaReport(True, case, d, None, False, "distance not resolved")
    return LemmaReport(True, case, d, sketch, d.tau1 >= 1)
