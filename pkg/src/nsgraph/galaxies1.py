"""0-galaxies and 1-galaxies of a rank-1 ultrapower.

0-galaxies use finite bounds ``k`` and 1-galaxies use ``w*k``; both are read
off the same wdistance profiles through :func:`galaxies0.profile_limit`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import islice
from typing import Optional

from .filters import FRECHET, FilterVerdict, UltrafilterOracle
from .galaxies0 import (Answer, ChainDefect, Closeness, CloserResult, GalaxyHandle, Limit, Partition, partition,
                        build_chain, compare_profiles, index_all, order_check, profile_limit,
                        standard_base)
from .graphone import OneGraphPresentation
from .graphzero import NodeRef, PreconditionError, UnsupportedOperation, node_key
from .ordinals import Ordinal, scale
from .sequences import infer_affine, lift
from .ultrapower import Hypernode, RankMismatch, hyperdistance, pointwise_distance, where


def _one_graph(*hs: Hypernode) -> OneGraphPresentation:
    g = hs[0].graph
    if not isinstance(g, OneGraphPresentation):
        raise RankMismatch(f"{g.name} is not a 1-graph")
    return g


def zero_limitedly_distant(a: Hypernode, b: Hypernode, o: UltrafilterOracle = FRECHET,
                           k_max: int = 64) -> Limit:
    """Rank-0 limited distance (finite bounds) between hypernodes of a 1-graph."""
    _one_graph(a, b)
    return profile_limit(hyperdistance(a, b), o, k_max, 0)


def one_limitedly_distant(a: Hypernode, b: Hypernode, o: UltrafilterOracle = FRECHET,
                          k_max: int = 64) -> Limit:
    """``{n : d(a_n, b_n) <= w*k}`` in the filter for some ``k``."""
    _one_graph(a, b)
    return profile_limit(hyperdistance(a, b), o, k_max, 1)


def is_principal_1(a: Hypernode, o: UltrafilterOracle = FRECHET, k_max: int = 64) -> Answer:
    if a.is_standard(o):
        return Answer.YES
    return one_limitedly_distant(a, standard_base(a.graph), o, k_max).answer


@dataclass(frozen=True)
class Galaxy1Handle(GalaxyHandle):
    level: str = "one_galaxy"

    def to_json(self) -> dict:
        out = super().to_json()
        out["level"] = self.level
        return out


# ---------------------------------------------------------------- partitions

def classify_zero_galaxies(samples: list, o: UltrafilterOracle = FRECHET, k_max: int = 64) -> Partition:
    """Group hypernodes (of either rank) by finite limited distance."""
    return partition(samples, lambda a, b: profile_limit(hyperdistance(a, b), o, k_max, 0), "zero_galaxy")


def classify_one_galaxies(samples: list, o: UltrafilterOracle = FRECHET, k_max: int = 64) -> Partition:
    return partition(samples, lambda a, b: profile_limit(hyperdistance(a, b), o, k_max, 1), "one_galaxy")


# ---------------------------------------------------------------- boundary layers

def _boundary_neighbors(g: OneGraphPresentation, x: NodeRef, budget: int) -> set:
    secs = list(islice(g.iter_sections(x), budget + 1))
    if len(secs) > budget:
        raise PreconditionError(f"{x} is incident to infinitely many 0-sections; the boundary layers are not finite")
    out = set()
    for s in secs:
        try:
            out |= g.boundary_one_nodes(s, budget)
        except UnsupportedOperation as e:
            raise PreconditionError(f"{g.name} is not locally 1-finite: {e}") from None
    return out


def boundary_layers(g: OneGraphPresentation, x0: NodeRef, count: int, budget: int = 64) -> list:
    """``[{x0}, X_0, X_1, ...]``: boundary 1-nodes by number of 1-adjacency steps from ``x0``."""
    layers, seen = [{x0}], {x0}
    for _ in range(count):
        nxt = set()
        for y in layers[-1]:
            nxt |= _boundary_neighbors(g, y, budget) - seen
        if not nxt:
            raise PreconditionError(f"{g.name} has only finitely many boundary 1-nodes reachable from {x0}")
        seen |= nxt
        layers.append(nxt)
    return layers


def thm103_path(g: OneGraphPresentation, x0: NodeRef, length: int, lookahead: int = 3,
                budget: int = 64) -> list:
    """``[x0, x_{m_0}, x_{m_1}, ...]``: one 1-node per layer, consecutive ones 1-adjacent."""
    for flag in ("locally_1_finite", "one_wconnected", "infinite_boundary"):
        if not g.flags.get(flag):
            raise PreconditionError(f"{g.name} does not assert {flag}")
    if not g.is_one_node(x0):
        raise PreconditionError(f"{x0} is not a 1-node of {g.name}")
    layers = boundary_layers(g, x0, length + lookahead, budget)
    depth = {y: i for i, layer in enumerate(layers) for y in layer}
    memo = {}

    def leads_on(y, steps):
        if steps == 0:
            return True
        key = (y, steps)
        if key not in memo:
            i = depth[y]
            memo[key] = any(depth.get(z) == i + 1 and leads_on(z, steps - 1)
                            for z in _boundary_neighbors(g, y, budget))
        return memo[key]

    path = [x0]
    for i in range(1, length + 1):
        cands = [y for y in layers[i] if y in _boundary_neighbors(g, path[-1], budget) or i == 1 and g.one_adjacent(x0, y)]
        cands.sort(key=node_key, reverse=True)
        good = [y for y in cands if leads_on(y, lookahead)]
        if not (good or cands):
            raise PreconditionError(f"layer {i} is not reachable from {path[-1]}")
        path.append((good or cands)[0])
    return path


def thm103_witness(g: OneGraphPresentation, x0: NodeRef, sample: int = 32, budget: int = 64) -> Hypernode:
    """A 1-hypernode ``[x_n]`` with ``d(x0, x_n) >= w*n``."""
    path = thm103_path(g, x0, sample + 8, budget=budget)
    seq = infer_affine(path)
    if seq is None:
        raise UnsupportedOperation(f"the layered walk from {x0} in {g.name} has no definable tail")
    d = pointwise_distance(g, budget)
    for n in range(sample + 1):
        if seq.at(n) != path[n]:
            raise UnsupportedOperation(f"inferred sequence disagrees with the layered walk at n={n}")
        if not d(x0, path[n]) >= Ordinal(n, 0):
            raise ChainDefect(f"d({x0}, {path[n]}) = {d(x0, path[n])} is below w*{n}")
    h = Hypernode(g, seq, 1)
    try:
        grows = lift(lambda n, y: d(x0, y) >= Ordinal(n, 0), seq)
    except UnsupportedOperation:
        return h
    if not index_all(grows):
        raise ChainDefect(f"the inferred witness in {g.name} falls below w*n on its tail")
    return h


# ---------------------------------------------------------------- closeness

def _mixed_signs(dz, dy):
    def mixed(n, a, b):
        t1, t0 = a.tau1 - b.tau1, a.tau0 - b.tau0
        return (t1 > 0 and t0 < 0) or (t1 < 0 and t0 > 0)
    return where(mixed, dz.seq, dy.seq)


def closer_than_1(y: Hypernode, z: Hypernode, x: Hypernode, o: UltrafilterOracle = FRECHET,
                  m_max: int = 32, check: bool = True) -> CloserResult:
    """Closeness of 1-galaxies to the principal 1-galaxy, thresholds ``w*m``."""
    _one_graph(y, z, x)
    if check:
        for h, label in ((y, "y"), (z, "z")):
            if is_principal_1(h, o) is Answer.YES:
                raise PreconditionError(f"{label} = {h} lies in the principal 1-galaxy")
    dz, dy = hyperdistance(z, x), hyperdistance(y, x)
    res = compare_profiles(dz, dy, o, m_max, 1)
    bad = _mixed_signs(dz, dy)
    if o.verdict(bad) is not FilterVerdict.OUT:
        note = f"componentwise difference is ill-ordered on {bad}"
        res = CloserResult(res.answer, res.witnesses, res.difference,
                           "; ".join(p for p in (res.diagnostic, note) if p))
    return res


def eq12_holds(x: Hypernode, u: Hypernode, v: Hypernode, o: UltrafilterOracle = FRECHET) -> FilterVerdict:
    """Verdict of ``{n : d(x,v) <= 3 d(x,u) <= 2 d(x,v)}``."""
    du, dv = hyperdistance(x, u), hyperdistance(x, v)
    return o.verdict(where(lambda n, a, b: b <= scale(a, 3) and scale(a, 3) <= scale(b, 2), du.seq, dv.seq))


def chain_thm112(g: OneGraphPresentation, x: Hypernode, v: Hypernode, depth: int,
                 o: UltrafilterOracle = FRECHET, m_max: int = 32, strict: bool = True):
    """``2*depth+1`` 1-galaxies ordered by closeness, ``v``'s in the middle."""
    _one_graph(x, v)
    if not x.is_standard(o):
        raise PreconditionError(f"{x} is not a standard hypernode")
    if one_limitedly_distant(x, v, o).answer is not Answer.NO:
        raise PreconditionError(f"{v} is not known to be outside the principal 1-galaxy")
    chain = build_chain(
        g, x, v, depth, o, 1,
        limited=lambda a, b: one_limitedly_distant(a, b, o),
        closer=lambda a, b, c: closer_than_1(a, b, c, o, m_max, check=False),
        m_max=m_max)
    reps = [h.representative for h in chain.handles]
    defects = []
    for i in range(depth):
        verdict = eq12_holds(x, reps[i], reps[i + 1], o)
        if verdict is not FilterVerdict.IN:
            defects.append(f"one-third rule fails between handles {i} and {i + 1}: {verdict.value}")
    chain.handles = [Galaxy1Handle(h.representative, h.kind, h.evidence) for h in chain.handles]
    chain.ok = chain.ok and not defects
    if strict and not chain.ok:
        raise ChainDefect("chain validation failed: " + "; ".join(defects) + str(chain.to_json()))
    return chain


def partial_order_check_1(handles: list, x: Hypernode, o: UltrafilterOracle = FRECHET, m_max: int = 32):
    reps = [h.representative if isinstance(h, GalaxyHandle) else h for h in handles]
    _one_graph(x, *reps)
    return order_check(reps, x, lambda a, b, c: closer_than_1(a, b, c, o, m_max), o, 1)
