"""Galaxies of a rank-0 ultrapower and the closeness order between them.

Everything here is decided from definable distance profiles: a profile is an
eventually periodic sequence whose tail classes are affine in ``n``, so
"unbounded" is read off the slopes instead of being guessed from a scan.
The same machinery serves rank 1 through the ``level`` argument (0 compares
finite parts, 1 compares coefficients of omega).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .filters import FRECHET, FilterVerdict, IndexSet, UltrafilterOracle
from .graphzero import (GraphError, NodeRef, PreconditionError, UnsupportedOperation,
                        distances_from, node_key)
from .ordinals import Ordinal
from .sequences import DefinableSequence, infer_affine, lift
from .symbolic import Affine, ceil_div, is_symbolic
from .ultrapower import (Hypernode, HyperOrdinal, RankMismatch, graph_rank, hyperdistance,
                         pointwise_distance, where)


class Answer(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNDETERMINED = "undetermined"


class Closeness(str, enum.Enum):
    CLOSER = "closer"
    NOT_CLOSER = "not_closer"
    UNDETERMINED = "undetermined"


class ChainDefect(GraphError):
    """A constructed chain failed its own validation."""


@dataclass(frozen=True)
class Limit:
    answer: Answer
    k: Optional[int] = None
    diagnostic: str = ""

    def __str__(self):
        return f"yes({self.k})" if self.answer is Answer.YES else self.answer.value


# ---------------------------------------------------------------- profiles

def _slope(leaf) -> Fraction:
    return leaf.slope if isinstance(leaf, Affine) else Fraction(0)


def _unbounded_classes(profile: DefinableSequence, level: int) -> IndexSet:
    """Indices on whose tail class the distance exceeds every bound of the given level."""
    bits = []
    for t in profile.terms:
        if level == 0:
            big = _slope(t.tau1) > 0 or t.tau1 != 0 or _slope(t.tau0) > 0
        else:
            big = _slope(t.tau1) > 0
        bits.append(bool(big))
    return IndexSet((False,) * profile.start, tuple(bits)).normalized()


def _bound(k: int, level: int) -> Ordinal:
    return Ordinal(0, k) if level == 0 else Ordinal(k, 0)


def profile_limit(d: HyperOrdinal, o: UltrafilterOracle = FRECHET, k_max: int = 64,
                  level: int = 0) -> Limit:
    """Limited or not, given the distance profile ``d``."""
    seq = d.seq
    unbounded = _unbounded_classes(seq, level)
    if o.verdict(unbounded) is FilterVerdict.IN:
        return Limit(Answer.NO)
    for k in range(k_max + 1):
        b = _bound(k, level)
        if o.verdict(where(lambda n, v: v <= b, seq)) is FilterVerdict.IN:
            return Limit(Answer.YES, k)
    if o.verdict(unbounded) is FilterVerdict.OUT:
        return Limit(Answer.UNDETERMINED, None, f"bounded on the filter but not by k_max={k_max}")
    return Limit(Answer.UNDETERMINED, None,
                 f"the oracle {o} does not decide the unbounded classes {unbounded}")


def _rank0(*hs: Hypernode):
    for h in hs:
        if h.rank != 0:
            raise RankMismatch("rank-0 galaxies need rank-0 hypernodes")


def limitedly_distant(a: Hypernode, b: Hypernode, o: UltrafilterOracle = FRECHET,
                      k_max: int = 64, budget: int = 64) -> Limit:
    _rank0(a, b)
    return profile_limit(hyperdistance(a, b, budget), o, k_max, 0)


def same_galaxy(a: Hypernode, b: Hypernode, o: UltrafilterOracle = FRECHET, k_max: int = 64) -> Answer:
    return limitedly_distant(a, b, o, k_max).answer


def standard_base(g) -> Hypernode:
    base = g.base
    if base is None:
        raise PreconditionError(f"{g.name} declares no base node")
    return Hypernode.const(g, base)


def is_principal(a: Hypernode, o: UltrafilterOracle = FRECHET, k_max: int = 64) -> Answer:
    if a.is_standard(o):
        return Answer.YES
    return limitedly_distant(a, standard_base(a.graph), o, k_max).answer


@dataclass(frozen=True)
class GalaxyHandle:
    representative: Hypernode
    kind: str
    evidence: dict = field(default_factory=dict, compare=False)

    @classmethod
    def of(cls, h: Hypernode, o: UltrafilterOracle = FRECHET, k_max: int = 64) -> GalaxyHandle:
        lim = limitedly_distant(h, standard_base(h.graph), o, k_max)
        kind = {Answer.YES: "principal", Answer.NO: "nonprincipal"}.get(lim.answer, "undetermined")
        return cls(h, kind, {"to_base": str(lim), "k": lim.k})

    def same(self, other: GalaxyHandle, o: UltrafilterOracle = FRECHET) -> Answer:
        return same_galaxy(self.representative, other.representative, o)

    def to_json(self) -> dict:
        return {"representative": self.representative.describe(), "kind": self.kind,
                "evidence": dict(self.evidence)}


# ---------------------------------------------------------------- partitions

@dataclass
class Partition:
    classes: list
    unresolved: list
    level: str

    @property
    def singletons(self) -> list:
        return [c[0] for c in self.classes if len(c) == 1]

    def to_json(self) -> dict:
        return {"level": self.level, "classes": self.classes, "singletons": self.singletons,
                "unresolved": self.unresolved}


def partition(samples: list, related, level: str) -> Partition:
    parent = list(range(len(samples)))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    unresolved = []
    for i in range(len(samples)):
        for j in range(i + 1, len(samples)):
            ans = related(samples[i], samples[j]).answer
            if ans is Answer.YES:
                parent[root(j)] = root(i)
            elif ans is Answer.UNDETERMINED:
                unresolved.append((i, j))
    groups = {}
    for i in range(len(samples)):
        groups.setdefault(root(i), []).append(i)
    return Partition(sorted(groups.values()), unresolved, level)


def classify_galaxies(samples: list, o: UltrafilterOracle = FRECHET, k_max: int = 64) -> Partition:
    """Group rank-0 hypernodes into galaxies."""
    return partition(samples, lambda a, b: limitedly_distant(a, b, o, k_max), "galaxy")


# ---------------------------------------------------------------- König paths

def _lookahead_ok(adj, level, x, n, depth, memo) -> bool:
    if depth == 0:
        return True
    key = (x, depth)
    if key not in memo:
        memo[key] = any(level.get(y) == n + 1 and _lookahead_ok(adj, level, y, n + 1, depth - 1, memo)
                        for y in adj(x))
    return memo[key]


def koenig_path(g, x0: NodeRef, length: int, lookahead: int = 6) -> list:
    """``[x_0, ..., x_length]`` with ``d(x0, x_n) = n`` and ``x_n ~ x_{n+1}``.

    Among the candidates in the next sphere the lexicographically largest
    (by family, then parameters) that still leads ``lookahead`` spheres
    further out is taken.
    """
    flags = g.flags or {}
    missing = [f for f in ("locally_finite", "connected", "infinite") if not flags.get(f)]
    if missing:
        raise PreconditionError(f"{g.name} does not assert {', '.join(missing)}")
    level = distances_from(g, x0, length + lookahead)

    def adj(u):
        return [z for z in g.adjacent_items(u) if isinstance(z, NodeRef)]

    memo = {}
    path = [x0]
    for n in range(length):
        cands = [y for y in adj(path[-1]) if level.get(y) == n + 1]
        if not cands:
            raise PreconditionError(f"sphere {n + 1} around {x0} is empty; {g.name} is not infinite")
        cands.sort(key=node_key, reverse=True)
        good = [y for y in cands if _lookahead_ok(adj, level, y, n + 1, lookahead, memo)]
        path.append((good or cands)[0])
    return path


def koenig_witness(g, x0: NodeRef, sample: int = 64, budget: int = 64) -> Hypernode:
    """A hypernode ``[x_n]`` with ``d(x0, x_n) = n`` for all ``n``."""
    g.check_node(x0)
    path = koenig_path(g, x0, sample + 16)
    seq = infer_affine(path)
    if seq is None:
        raise UnsupportedOperation(f"the König path from {x0} in {g.name} has no definable tail")
    for n in range(sample + 1):
        if seq.at(n) != path[n]:
            raise UnsupportedOperation(f"inferred König sequence disagrees with the path at n={n}")
    h = Hypernode(g, seq)
    d = pointwise_distance(g, budget)
    try:
        exact = lift(lambda n, y: d(x0, y).tau0 == n, seq)
    except UnsupportedOperation:
        return h  # no closed form; the finite check above stands
    if index_all(exact) is not True:
        raise UnsupportedOperation(f"inferred König sequence in {g.name} is not exact on its tail")
    return h


def index_all(bools: DefinableSequence) -> bool:
    return all(bools.prefix) and all(bools.terms)


# ---------------------------------------------------------------- closeness

@dataclass(frozen=True)
class CloserResult:
    answer: Closeness
    witnesses: tuple = ()
    difference: str = ""
    diagnostic: str = ""

    def to_json(self) -> dict:
        return {"answer": self.answer.value, "difference": self.difference,
                "witnesses": [{"m": m, "verdict": v.value} for m, v in self.witnesses],
                "diagnostic": self.diagnostic}


def _coeff(a: Ordinal, level: int):
    return a.tau0 if level == 0 else a.tau1


def difference_profile(dz: HyperOrdinal, dy: HyperOrdinal, level: int) -> DefinableSequence:
    """``d(z,x) - d(y,x)`` read at the given level."""
    if level == 0:
        return lift(lambda n, a, b: a.tau0 - b.tau0, dz.seq, dy.seq)
    # thresholds are multiples of omega, so only the omega coefficients matter
    return lift(lambda n, a, b: a.tau1 - b.tau1, dz.seq, dy.seq)


def compare_profiles(dz: HyperOrdinal, dy: HyperOrdinal, o: UltrafilterOracle = FRECHET,
                     m_max: int = 32, level: int = 0) -> CloserResult:
    """Is ``{n : dz - dy >= m}`` in the filter for every ``m``?"""
    delta = difference_profile(dz, dy, level)
    witnesses = tuple((m, o.verdict(where(lambda n, v: v >= m, delta))) for m in range(1, m_max + 1))
    growing = IndexSet((False,) * delta.start, tuple(_slope(t) > 0 for t in delta.terms)).normalized()
    v = o.verdict(growing)
    if v is FilterVerdict.IN:
        ans, diag = Closeness.CLOSER, ""
    elif v is FilterVerdict.OUT:
        ans, diag = Closeness.NOT_CLOSER, ""
    else:
        ans, diag = Closeness.UNDETERMINED, f"the oracle {o} does not decide the growing classes {growing}"
    return CloserResult(ans, witnesses, delta.describe(), diag)


def closer_than(y: Hypernode, z: Hypernode, x: Hypernode, o: UltrafilterOracle = FRECHET,
                m_max: int = 32, check: bool = True) -> CloserResult:
    """Is the galaxy of ``y`` closer than the galaxy of ``z`` to the principal galaxy?"""
    _rank0(y, z, x)
    if check:
        for h, label in ((y, "y"), (z, "z")):
            if is_principal(h, o) is Answer.YES:
                raise PreconditionError(f"{label} = {h} lies in the principal galaxy")
    return compare_profiles(hyperdistance(z, x), hyperdistance(y, x), o, m_max, 0)


# ---------------------------------------------------------------- chains

def index_map(D: DefinableSequence, extra: DefinableSequence) -> DefinableSequence:
    """``m(n)``: the least ``m`` with ``D(m) >= D(n) + extra(n)``.

    ``D`` must be eventually nondecreasing and unbounded, with affine tail
    classes; the tail case is computed in closed form per class.
    """
    classes = []
    for r, t in enumerate(D.terms):
        if _slope(t) <= 0:
            continue
        a, b = Fraction(t.slope), Fraction(t.const)
        den = math.lcm(a.denominator, b.denominator)
        classes.append((r, int(a * den), int(b * den), den))
    if not classes:
        raise PreconditionError("the distance profile is bounded; no index map exists")
    top = max(D.prefix, default=0)
    P, start = D.period, D.start

    def scan(target: int) -> int:
        m = 0
        while D.at(m) < target:
            m += 1
        return m

    def m_of(n, dn, en):
        target = dn + en
        if not is_symbolic(target):
            return scan(target)
        if not target > top:
            raise PreconditionError("index map target stays below the prefix")
        best = None
        for off, a, b, den in classes:
            r = (start + off) % P
            lb = ceil_div(target * den - b, a)
            m0 = lb if lb >= start else start
            m = m0 + (r - m0) % P
            best = m if best is None or m < best else best
        return best

    return lift(m_of, D, extra)


def _profile(x: Hypernode, h: Hypernode, level: int) -> DefinableSequence:
    return lift(lambda n, a: _coeff(a, level), hyperdistance(x, h).seq)


@dataclass
class Chain:
    handles: list
    adjacent: list
    distinct: list
    ok: bool
    x: Optional[Hypernode] = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "base": self.x.describe() if self.x is not None else None,
            "handles": [h.to_json() for h in self.handles],
            "adjacent": [r.to_json() for r in self.adjacent],
            "distinct": [{"i": i, "j": j, "limitedly_distant": str(v)} for i, j, v in self.distinct],
        }


def _midpoint(g, level):
    oracle = g.oracle_bundle
    if oracle is None or getattr(oracle, "geodesic" if level == 0 else "geodesic_at", None) is None:
        raise UnsupportedOperation(f"{g.name} has no geodesic oracle; midpoints cannot be formed")
    d = pointwise_distance(g)
    if level == 0:
        return lambda n, xn, vn: oracle.geodesic(xn, vn, d(xn, vn).tau0 // 2)
    six = Ordinal(6, 0)

    def third(n, xn, vn):
        dv = d(xn, vn)
        if dv < six:
            return xn
        return oracle.geodesic_at(xn, vn, ceil_div(dv.tau1, 3))
    return third


def build_chain(g, x: Hypernode, v: Hypernode, depth: int, o: UltrafilterOracle,
                level: int, limited, closer, m_max: int) -> Chain:
    mid = _midpoint(g, level) if depth else None
    down, cur = [], v
    for _ in range(depth):
        cur = Hypernode(g, lift(mid, x.seq, cur.seq))
        down.append(cur)
    up, cur = [], v
    for _ in range(depth):
        D = _profile(x, cur, level)
        m = index_map(D, lift(lambda n: n))
        cur = Hypernode(g, lift(lambda n, k, s=cur.seq: s.value_at(k), m))
        up.append(cur)
    reps = list(reversed(down)) + [v] + up
    handles = []
    for h in reps:
        lim = limited(h, x)
        handles.append(GalaxyHandle(h, "nonprincipal" if lim.answer is Answer.NO else "undetermined",
                                    {"to_base": str(lim), "profile": _profile(x, h, level).describe()}))
    adjacent = [closer(reps[i], reps[i + 1], x) for i in range(len(reps) - 1)]
    distinct = [(i, j, limited(reps[i], reps[j]))
                for i in range(len(reps)) for j in range(i + 1, len(reps))]
    ok = (all(h.kind == "nonprincipal" for h in handles)
          and all(r.answer is Closeness.CLOSER and all(w is FilterVerdict.IN for _, w in r.witnesses)
                  for r in adjacent)
          and all(lim.answer is Answer.NO for _, _, lim in distinct))
    return Chain(handles, adjacent, distinct, ok, x)


def chain_thm42(g, x: Hypernode, v: Hypernode, depth: int, o: UltrafilterOracle = FRECHET,
                m_max: int = 32, strict: bool = True) -> Chain:
    """``2*depth+1`` galaxies ordered by closeness to the principal galaxy, ``v``'s in the middle."""
    _rank0(x, v)
    if not x.is_standard(o):
        raise PreconditionError(f"{x} is not a standard hypernode")
    if is_principal(v, o) is not Answer.NO:
        raise PreconditionError(f"{v} is not known to lie outside the principal galaxy")
    chain = build_chain(
        g, x, v, depth, o, 0,
        limited=lambda a, b: limitedly_distant(a, b, o),
        closer=lambda a, b, c: closer_than(a, b, c, o, m_max, check=False),
        m_max=m_max)
    if strict and not chain.ok:
        raise ChainDefect("chain validation failed: " + str(chain.to_json()))
    return chain


# ---------------------------------------------------------------- partial order

@dataclass
class OrderReport:
    ok: bool
    relation: list
    incomparable: list
    violations: list

    def to_json(self) -> dict:
        return {"ok": self.ok, "relation": [[r.value for r in row] for row in self.relation],
                "incomparable": self.incomparable, "violations": self.violations}


def order_check(reps: list, x: Hypernode, closer, o: UltrafilterOracle, level: int,
                m_probe: int = 8) -> OrderReport:
    k = len(reps)
    dists = [hyperdistance(h, x) for h in reps]
    rel = [[closer(reps[i], reps[j], x).answer for j in range(k)] for i in range(k)]
    C = Closeness.CLOSER
    violations, incomparable = [], []
    for i in range(k):
        if rel[i][i] is C:
            violations.append(f"irreflexivity fails at {i}")
        for j in range(i + 1, k):
            if rel[i][j] is C and rel[j][i] is C:
                violations.append(f"antisymmetry fails at ({i}, {j})")
            if rel[i][j] is not C and rel[j][i] is not C:
                incomparable.append((i, j))
    for i in range(k):
        for j in range(k):
            for l in range(k):
                if len({i, j, l}) < 3 or rel[i][j] is not C or rel[j][l] is not C:
                    continue
                if rel[i][l] is not C:
                    violations.append(f"transitivity fails at ({i}, {j}, {l})")
                # d(l) - d(i) = (d(l) - d(j)) + (d(j) - d(i)), so N_il(m) contains N_ij(m) & N_jl(m)
                dij = difference_profile(dists[j], dists[i], level)
                djl = difference_profile(dists[l], dists[j], level)
                dil = difference_profile(dists[l], dists[i], level)
                for m in range(1, m_probe + 1):
                    both = where(lambda n, p, q: p >= m and q >= m, dij, djl)
                    if not both.issubset(where(lambda n, p: p >= m, dil)):
                        violations.append(f"N({i},{l}) misses N({i},{j}) & N({j},{l}) at m={m}")
    return OrderReport(not violations, rel, incomparable, violations)


def partial_order_check(handles: list, x: Hypernode, o: UltrafilterOracle = FRECHET,
                        m_max: int = 32) -> OrderReport:
    reps = [h.representative if isinstance(h, GalaxyHandle) else h for h in handles]
    _rank0(x, *reps)
    return order_check(reps, x, lambda a, b, c: closer_than(a, b, c, o, m_max), o, 0)
