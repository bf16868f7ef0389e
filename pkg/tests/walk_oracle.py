"""Brute-force minimal walk lengths on small, explicitly listed 1-graphs.

A model is built by hand (no presentation machinery): each section lists its
0-node adjacency and its tips; every 1-node is reached only through tips.
Walks are enumerated segment by segment with at most ``max_tips`` tip
traversals and ``max_steps`` branch traversals per finite 0-walk, and
lengths are ``(tips, finite steps)`` pairs compared lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from nsgraph.graphzero import NodeRef


@dataclass
class Model:
    adj: dict = field(default_factory=dict)       # section -> {node: [nodes]}
    tips: dict = field(default_factory=dict)      # section -> [(tip name, 1-node)]
    home: dict = field(default_factory=dict)      # 0-node -> section
    one_nodes: set = field(default_factory=set)

    def add_section(self, s, edges, tips):
        a = self.adj.setdefault(s, {})
        for u, v in edges:
            a.setdefault(u, []).append(v)
            a.setdefault(v, []).append(u)
            self.home[u] = self.home[v] = s
        self.tips[s] = list(tips)
        self.one_nodes |= {x for _, x in tips}

    def nodes(self):
        return sorted(self.home, key=str) + sorted(self.one_nodes, key=str)


def _n(f, *p):
    return NodeRef(f, tuple(p))


def diamond_model(sections: int = 3, junctions: int = 3) -> Model:
    m = Model()
    for k in range(sections):
        edges = []
        for i in range(junctions):
            for side in ("l", "r"):
                edges.append((_n("j", k, i), _n(side, k, i)))
                edges.append((_n(side, k, i), _n("j", k, i + 1)))
        m.add_section(_n("C", k), edges,
                      [("left", _n("X", k)), ("right", _n("X", k + 1)), ("zigzag", _n("Z", k))])
    return m


def ladder_model(rungs: int = 3, reach: int = 3) -> Model:
    m = Model()
    for k in range(rungs):
        edges = [(_n("h", k, i), _n("h", k, i + 1)) for i in range(-reach, reach)]
        m.add_section(_n("H", k), edges, [("left", _n("n1", k)), ("right", _n("n1", k + 1))])
    for k in range(rungs + 1):
        edges = [(_n("v", k, i), _n("v", k, i + 1)) for i in range(-reach, reach)]
        m.add_section(_n("V", k), edges, [("up", _n("n1", k)), ("down", _n("g1"))])
    return m


def _walks(adj: dict, a, max_steps: int) -> dict:
    """Least number of steps of a walk from ``a`` to each node, up to ``max_steps``."""
    best = {a: 0}
    layer = {a}
    for s in range(1, max_steps + 1):
        layer = {v for u in layer for v in adj[u]}
        for v in layer:
            best.setdefault(v, s)
    return best


def brute_min(m: Model, x, y, max_tips: int = 3, max_steps: int = 12):
    """Least ``(tips, steps)`` over enumerated legal walks from ``x`` to ``y``, or ``None``."""
    if x == y:
        return (0, 0)
    found = []

    def from_one(X, tips):
        if X == y:
            found.append((tips, 0))
            return
        for s, tl in m.tips.items():
            for name, owner in tl:
                if owner != X:
                    continue
                if tips + 1 <= max_tips and y in m.adj[s]:
                    found.append((tips + 1, 0))
                if tips + 2 <= max_tips:
                    for other, nxt in tl:
                        if other != name:
                            from_one(nxt, tips + 2)

    if x in m.home:
        s = m.home[x]
        reach = _walks(m.adj[s], x, max_steps)
        if y in reach:
            found.append((0, reach[y]))
        if max_tips >= 1:
            for _, owner in m.tips[s]:
                from_one(owner, 1)
    else:
        from_one(x, 0)
    return min(found) if found else None
