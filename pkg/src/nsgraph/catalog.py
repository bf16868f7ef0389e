"""Builtin presentations and their closed-form distance oracles.

Every oracle here is written with plain comparisons, ``abs``, ``min`` and
integer arithmetic so that it evaluates both on concrete parameters and on
the symbolic parameters produced inside :func:`nsgraph.sequences.lift`.
Tests compare each oracle against BFS or the walk solver.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .graphone import OneGraphPresentation, OneNodeFamily, OneOracle, SectionFamily, TipSpec
from .graphzero import (
    INT, NAT, ORACLES, Edit, Family, GraphError, GraphPresentation, HubRule, LinkRule, NodeRef,
    StepRule, ZeroOracle, parse_node, register_oracle,
)
from .exprs import parse_template
from .ordinals import ZERO, Ordinal
from .symbolic import ceil_div


class UnknownBuiltin(GraphError):
    pass


def _x(k):
    return NodeRef("x", (k,))


def _sgn_step(a, b, t):
    """``a`` moved ``t`` steps towards ``b``."""
    return a + t if b >= a else a - t


# ---------------------------------------------------------------- rank 0

def _path_distance(x: NodeRef, y: NodeRef):
    if x.family != "x" or y.family != "x":
        return NotImplemented
    return abs(x.params[0] - y.params[0])


def _path_geodesic(x: NodeRef, v: NodeRef, t):
    return _x(_sgn_step(x.params[0], v.params[0], t))


def _endless_sphere(x0: NodeRef, n: int):
    k = x0.params[0]
    return frozenset({_x(k - n), _x(k + n)})


def _one_ended_sphere(x0: NodeRef, n: int):
    return frozenset(y for y in _endless_sphere(x0, n) if y.params[0] >= 0)


def _ladder_distance(x: NodeRef, y: NodeRef):
    if x == y:
        return 0
    fams = {x.family, y.family}
    if fams == {"x"}:
        return min(abs(x.params[0] - y.params[0]), 2)
    if fams == {"x", "x_g"}:
        return 1
    return NotImplemented


def _ladder_geodesic(x: NodeRef, v: NodeRef, t):
    d = _ladder_distance(x, v)
    if t == 0:
        return x
    if t == d:
        return v
    return NodeRef("x_g")


def _tail_distance(x: NodeRef, y: NodeRef):
    if x.family != "t" and y.family != "t":
        return _ladder_distance(x, y)
    if x.family != "t":
        x, y = y, x
    i = x.params[0]
    if y.family == "t":
        return abs(i - y.params[0])
    if y.family == "x_g":
        return i + 1
    return i + 2


def _tail_geodesic(x: NodeRef, v: NodeRef, t):
    d = _tail_distance(x, v)
    if t == 0:
        return x
    if t == d:
        return v
    if x.family != "t" and v.family != "t":
        return _ladder_geodesic(x, v, t)
    if x.family != "t":
        return _tail_geodesic(v, x, d - t)
    i = x.params[0]
    if v.family == "t":
        return NodeRef("t", (_sgn_step(i, v.params[0], t),))
    if t <= i:
        return NodeRef("t", (i - t,))
    return NodeRef("x_g")


def _p(k, l):
    return NodeRef("p", (k, l))


def _grid_distance(x: NodeRef, y: NodeRef):
    if x.family != "p" or y.family != "p":
        return NotImplemented
    return abs(x.params[0] - y.params[0]) + abs(x.params[1] - y.params[1])


def _grid_geodesic(x: NodeRef, v: NodeRef, t):
    (k, l), (k2, l2) = x.params, v.params
    dk = abs(k2 - k)
    if t <= dk:
        return _p(_sgn_step(k, k2, t), l)
    return _p(k2, _sgn_step(l, l2, t - dk))


def _grid_sphere(x0: NodeRef, n: int):
    k, l = x0.params
    pts = set()
    for a in range(-n, n + 1):
        b = n - abs(a)
        pts.add(_p(k + a, l + b))
        pts.add(_p(k + a, l - b))
    return frozenset(pts)


register_oracle("endless_path", ZeroOracle(_path_distance, _path_geodesic, _endless_sphere))
register_oracle("one_ended_path", ZeroOracle(_path_distance, _path_geodesic, _one_ended_sphere))
register_oracle("grounded_ladder", ZeroOracle(_ladder_distance, _ladder_geodesic))
register_oracle("ladder_with_tail", ZeroOracle(_tail_distance, _tail_geodesic))
register_oracle("grid2d", ZeroOracle(_grid_distance, _grid_geodesic, _grid_sphere))

_INF = {"locally_finite": True, "connected": True, "infinite": True}


def endless_path() -> GraphPresentation:
    return GraphPresentation("endless_path", (Family("x", (INT,)),), (StepRule("x", "x", (1,)),),
                             flags=dict(_INF), base=_x(0), oracle="endless_path")


def one_ended_path() -> GraphPresentation:
    return GraphPresentation("one_ended_path", (Family("x", (NAT,)),), (StepRule("x", "x", (1,)),),
                             flags=dict(_INF), base=_x(0), oracle="one_ended_path")


def grounded_ladder() -> GraphPresentation:
    """Rungs ``x(k)`` in a one-way infinite path, every rung joined to the ground ``x_g``."""
    return GraphPresentation(
        "grounded_ladder", (Family("x", (NAT,)), Family("x_g", ())),
        (StepRule("x", "x", (1,)), HubRule(NodeRef("x_g"), "x")),
        flags={"locally_finite": False, "connected": True, "infinite": True},
        base=_x(0), oracle="grounded_ladder")


def ladder_with_tail() -> GraphPresentation:
    """The grounded ladder plus a one-ended path ``t(k)`` hanging from the ground node."""
    return GraphPresentation(
        "ladder_with_tail", (Family("t", (NAT,)), Family("x", (NAT,)), Family("x_g", ())),
        (StepRule("x", "x", (1,)), HubRule(NodeRef("x_g"), "x"), StepRule("t", "t", (1,)),
         LinkRule(NodeRef("x_g"), NodeRef("t", (0,)))),
        flags={"locally_finite": False, "connected": True, "infinite": True},
        base=NodeRef("t", (0,)), oracle="ladder_with_tail")


def grid2d() -> GraphPresentation:
    return GraphPresentation("grid2d", (Family("p", (INT, INT)),),
                             (StepRule("p", "p", (1, 0)), StepRule("p", "p", (0, 1))),
                             flags=dict(_INF), base=_p(0, 0), oracle="grid2d")


def grid2d_edited(edits: Iterable = ()) -> GraphPresentation:
    """The grid with finitely many branches added or deleted (BFS only)."""
    parsed = []
    for e in edits:
        if isinstance(e, Edit):
            parsed.append(e)
        elif isinstance(e, dict):
            parsed.append(Edit(e["op"], parse_node(e["u"]), parse_node(e["v"])))
        else:
            op, u, v = e
            parsed.append(Edit(op, u if isinstance(u, NodeRef) else parse_node(u),
                               v if isinstance(v, NodeRef) else parse_node(v)))
    g = grid2d()
    return GraphPresentation("grid2d_edited", g.families, g.rules, tuple(parsed),
                             dict(_INF), g.base, None)


def _l1(a: NodeRef, b: NodeRef) -> int:
    return abs(a.params[0] - b.params[0]) + abs(a.params[1] - b.params[1])


def envelope_radius(edits: Iterable[Edit]) -> int:
    """Clearance needed around added branches: half of the most they can save."""
    saved = sum(_l1(e.u, e.v) - 1 for e in edits if e.op == "add")
    return max(1, -(-saved // 2))


def outside_envelope(edits: Iterable[Edit], u: NodeRef, v: NodeRef) -> bool:
    """True when the edits cannot change ``d(u, v)`` from its value in the plain grid.

    Every grid geodesic from ``u`` to ``v`` stays in their bounding box.  If
    no deleted branch touches the box, those geodesics survive; if every
    added branch ends farther than the envelope radius from the box, a
    detour through it costs at least as much as it saves.
    """
    edits = list(edits)
    (k1, l1), (k2, l2) = u.params, v.params
    lo_k, hi_k, lo_l, hi_l = min(k1, k2), max(k1, k2), min(l1, l2), max(l1, l2)

    def gap(x: NodeRef) -> int:
        k, l = x.params
        return max(lo_k - k, 0, k - hi_k) + max(lo_l - l, 0, l - hi_l)

    r = envelope_radius(edits)
    for e in edits:
        if e.op == "delete" and (gap(e.u) == 0 or gap(e.v) == 0):
            return False
        if e.op == "add" and min(gap(e.u), gap(e.v)) <= r:
            return False
    return True


# ---------------------------------------------------------------- rank 1

W = Ordinal(1, 0)


def _rank1_oracle(direct, ends, d1):
    """``d(u,v) = min(direct, min over exits a of u, b of v of c_a + d1(a,b) + c_b)``."""
    def wd(u: NodeRef, v: NodeRef):
        if u == v:
            return ZERO
        best = direct(u, v)
        for a, ca in ends(u):
            for b, cb in ends(v):
                c = ca + d1(a, b) + cb
                if best is None or c < best:
                    best = c
        return best
    return wd


def _chain_geodesic_at(fam: str):
    """Geodesics between 1-nodes ``fam(a)`` spaced ``w*2`` apart."""
    def at(x: NodeRef, v: NodeRef, t):
        if x.family != fam or v.family != fam:
            return NotImplemented
        a, b = x.params[0], v.params[0]
        step = ceil_div(t, 2)
        if abs(b - a) <= step:
            return v
        return NodeRef(fam, (_sgn_step(a, b, step),))
    return at


def _path_zero(fam):
    def d(x: NodeRef, y: NodeRef):
        if x.family != fam or y.family != fam:
            return NotImplemented
        if x.params[0] != y.params[0]:
            return None
        return abs(x.params[1] - y.params[1])
    return d


# endless 1-path: sections P(k) = endless paths p(k, i), i in Z, between X(k) and X(k+1)

def _e1_direct(u, v):
    if u.family == "p" and v.family == "p" and u.params[0] == v.params[0]:
        return Ordinal(0, abs(u.params[1] - v.params[1]))
    return None


def _e1_ends(u):
    if u.family == "p":
        k = u.params[0]
        return [(NodeRef("X", (k,)), W), (NodeRef("X", (k + 1,)), W)]
    return [(u, ZERO)]


def _e1_d1(a, b):
    return Ordinal(2 * abs(a.params[0] - b.params[0]), 0)


register_oracle("endless_1path.sections", ZeroOracle(_path_zero("p")))
register_oracle("endless_1path", OneOracle(_rank1_oracle(_e1_direct, _e1_ends, _e1_d1), _chain_geodesic_at("X")))


def endless_1path() -> OneGraphPresentation:
    zg = GraphPresentation("endless_1path.sections", (Family("p", (INT, INT)),),
                           (StepRule("p", "p", (0, 1)),), flags={"locally_finite": True},
                           base=NodeRef("p", (0, 0)), oracle="endless_1path.sections")
    sec = SectionFamily("P", (INT,), (TipSpec("left", parse_template("X(k)")),
                                      TipSpec("right", parse_template("X(k+1)"))), (("p", 1),))
    return OneGraphPresentation("endless_1path", zg, (sec,), (OneNodeFamily("X", (INT,)),),
                                {"locally_1_finite": True, "one_wconnected": True, "infinite_boundary": True},
                                "endless_1path")


# ladder of endless paths: every branch of the grounded ladder becomes an endless path

def _lp_direct(u, v):
    if u.family == v.family and u.family in ("h", "v") and u.params[0] == v.params[0]:
        return Ordinal(0, abs(u.params[1] - v.params[1]))
    return None


def _lp_ends(u):
    if u.family == "h":
        k = u.params[0]
        return [(NodeRef("n1", (k,)), W), (NodeRef("n1", (k + 1,)), W)]
    if u.family == "v":
        return [(NodeRef("n1", (u.params[0],)), W), (NodeRef("g1"), W)]
    return [(u, ZERO)]


def _lp_d1(a, b):
    if a == b:
        return ZERO
    if a.family == "n1" and b.family == "n1":
        return Ordinal(2 * min(abs(a.params[0] - b.params[0]), 2), 0)
    return Ordinal(2, 0)


def _lp_zero(x, y):
    if x.family != y.family or x.params[0] != y.params[0]:
        return None
    return abs(x.params[1] - y.params[1])


register_oracle("ladder_of_endless_paths.sections", ZeroOracle(_lp_zero))
register_oracle("ladder_of_endless_paths", OneOracle(_rank1_oracle(_lp_direct, _lp_ends, _lp_d1)))


def ladder_of_endless_paths() -> OneGraphPresentation:
    zg = GraphPresentation("ladder_of_endless_paths.sections", (Family("h", (NAT, INT)), Family("v", (NAT, INT))),
                           (StepRule("h", "h", (0, 1)), StepRule("v", "v", (0, 1))),
                           flags={"locally_finite": True}, base=NodeRef("h", (0, 0)),
                           oracle="ladder_of_endless_paths.sections")
    h = SectionFamily("H", (NAT,), (TipSpec("left", parse_template("n1(k)")),
                                    TipSpec("right", parse_template("n1(k+1)"))), (("h", 1),))
    v = SectionFamily("V", (NAT,), (TipSpec("up", parse_template("n1(k)")),
                                    TipSpec("down", parse_template("g1"))), (("v", 1),))
    return OneGraphPresentation("ladder_of_endless_paths", zg, (h, v),
                                (OneNodeFamily("n1", (NAT,)), OneNodeFamily("g1", ())),
                                {"locally_1_finite": True, "one_wconnected": True, "infinite_boundary": True},
                                "ladder_of_endless_paths")


# ladder with endless horizontal paths but the original branches to the ground

def _lm_direct(u, v):
    if u.family == "h" and v.family == "h" and u.params[0] == v.params[0]:
        return Ordinal(0, abs(u.params[1] - v.params[1]))
    return None


def _lm_ends(u):
    if u.family == "h":
        k = u.params[0]
        return [(NodeRef("X", (k,)), W), (NodeRef("X", (k + 1,)), W)]
    return [(u, ZERO)]


def _lm_d1(a, b):
    if a == b:
        return ZERO
    if a.family == "X" and b.family == "X":
        return Ordinal(0, 2)
    return Ordinal(0, 1)


def _lm_zero(x, y):
    if x.family == "h" or y.family == "h":
        if x.family != y.family or x.params[0] != y.params[0]:
            return None
        return abs(x.params[1] - y.params[1])
    if x == y:
        return 0
    if x.family == "e" and y.family == "e":
        return 2
    return 1


register_oracle("ladder_mixed.sections", ZeroOracle(_lm_zero))
register_oracle("ladder_mixed", OneOracle(_rank1_oracle(_lm_direct, _lm_ends, _lm_d1)))


def ladder_mixed() -> OneGraphPresentation:
    """Horizontal branches become endless paths; the ground branches are kept.

    ``e(k)`` is the 0-node of the ground branch at rung ``k``; it sits inside
    the 1-node ``X(k)``.
    """
    zg = GraphPresentation("ladder_mixed.sections",
                           (Family("e", (NAT,)), Family("h", (NAT, INT)), Family("x_g", ())),
                           (StepRule("h", "h", (0, 1)), HubRule(NodeRef("x_g"), "e")),
                           flags={"locally_finite": False}, base=NodeRef("x_g"),
                           oracle="ladder_mixed.sections")
    h = SectionFamily("H", (NAT,), (TipSpec("left", parse_template("X(k)")),
                                    TipSpec("right", parse_template("X(k+1)"))), (("h", 1),))
    star = SectionFamily("S", (), (), (("e", 0), ("x_g", 0)))
    return OneGraphPresentation("ladder_mixed", zg, (h, star),
                                (OneNodeFamily("X", (NAT,), parse_template("e(k)")),),
                                {"locally_1_finite": False, "one_wconnected": True, "infinite_boundary": True},
                                "ladder_mixed")


# chain of diamonds: C(k) starts at j(k,0); its left tip is in X(k), its right tip in X(k+1)

def _pos(u):
    return 2 * u.params[1] + (0 if u.family == "j" else 1)


def _dc_zero(x, y):
    if x.params[0] != y.params[0]:
        return None
    if x.family != y.family and "j" not in (x.family, y.family) and x.params[1] == y.params[1]:
        return 2
    return abs(_pos(x) - _pos(y))


_DIAMOND = ("j", "l", "r")


def _dc_direct(u, v):
    if u.family in _DIAMOND and v.family in _DIAMOND:
        if u.params[0] == v.params[0]:
            return Ordinal(0, _dc_zero(u, v))
        return None
    for a, b in ((u, v), (v, u)):
        if a.family == "Z" and b.family in _DIAMOND and a.params[0] == b.params[0]:
            return W
    return None


def _dc_ends(u):
    if u.family in _DIAMOND or u.family == "Z":
        k = u.params[0]
        c = W if u.family != "Z" else Ordinal(2, 0)
        return [(NodeRef("X", (k,)), c), (NodeRef("X", (k + 1,)), c)]
    return [(u, ZERO)]


register_oracle("diamond_chain.sections", ZeroOracle(_dc_zero))
register_oracle("diamond_chain", OneOracle(_rank1_oracle(_dc_direct, _dc_ends, _e1_d1), _chain_geodesic_at("X")))


def diamond_chain() -> OneGraphPresentation:
    """Chains of diamonds joined through 1-nodes so that only walks connect distant chains.

    Within ``C(k)`` the junctions are ``j(k,i)`` and the diamond sides
    ``l(k,i)`` and ``r(k,i)``.  ``Z(k)`` is a singleton 1-node holding one
    back-and-forth tip of ``C(k)``; it never carries a walk onwards.
    """
    zg = GraphPresentation(
        "diamond_chain.sections", tuple(Family(f, (NAT, NAT)) for f in _DIAMOND),
        (StepRule("j", "l", (0, 0)), StepRule("l", "j", (0, 1)),
         StepRule("j", "r", (0, 0)), StepRule("r", "j", (0, 1))),
        flags={"locally_finite": True}, base=NodeRef("j", (0, 0)), oracle="diamond_chain.sections")
    c = SectionFamily("C", (NAT,), (TipSpec("left", parse_template("X(k)")),
                                    TipSpec("right", parse_template("X(k+1)")),
                                    TipSpec("zigzag", parse_template("Z(k)"), routing=False)),
                      tuple((f, 1) for f in _DIAMOND))
    return OneGraphPresentation("diamond_chain", zg, (c,),
                                (OneNodeFamily("X", (NAT,)), OneNodeFamily("Z", (NAT,))),
                                {"locally_1_finite": True, "one_wconnected": True, "infinite_boundary": True},
                                "diamond_chain")


ZERO_BUILTINS = {
    "endless_path": endless_path,
    "one_ended_path": one_ended_path,
    "grounded_ladder": grounded_ladder,
    "ladder_with_tail": ladder_with_tail,
    "grid2d": grid2d,
    "grid2d_edited": grid2d_edited,
}

ONE_BUILTINS = {
    "endless_1path": endless_1path,
    "ladder_of_endless_paths": ladder_of_endless_paths,
    "ladder_mixed": ladder_mixed,
    "diamond_chain": diamond_chain,
}


def builtin(name: str, edits: Optional[Iterable] = None):
    if name in ZERO_BUILTINS:
        if name == "grid2d_edited":
            return grid2d_edited(edits or ())
        if edits:
            raise GraphError(f"{name} takes no edits")
        return ZERO_BUILTINS[name]()
    if name in ONE_BUILTINS:
        return ONE_BUILTINS[name]()
    raise UnknownBuiltin(f"unknown builtin {name!r}; choose from {sorted(ZERO_BUILTINS) + sorted(ONE_BUILTINS)}")


def builtin_names() -> list:
    return list(ZERO_BUILTINS) + list(ONE_BUILTINS)
