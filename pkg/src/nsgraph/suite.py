"""The worked examples as executable checks.

Each check only calls into the core modules and compares their answers
with what the example asserts; ``verify-examples`` prints the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .catalog import builtin, grid2d_edited, outside_envelope
from .filters import FRECHET, FilterVerdict
from .galaxies0 import Answer, chain_thm42, is_principal, koenig_witness, limitedly_distant, same_galaxy
from .galaxies1 import (chain_thm112, classify_one_galaxies, classify_zero_galaxies,
                        one_limitedly_distant, thm103_witness)
from .graphone import TIP, geodesic, wdistance
from .graphzero import Edit, NodeRef, distance, distances_from
from .ordinals import Ordinal
from .sampling import random_hypernodes
from .ultrapower import Hyperbranch, Hypernode, hyperdistance, where


@dataclass
class Check:
    example: str
    claim: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"example": self.example, "claim": self.claim, "ok": self.ok, "detail": self.detail}


def _x(k):
    return NodeRef("x", (k,))


def _hn(g, fn):
    return Hypernode.of(g, fn)


def ex_endless_path():
    g = builtin("endless_path")
    xn, shifted = _hn(g, lambda n: _x(n)), _hn(g, lambda n: _x(n + 5))
    yield "bounded offset stays in one galaxy", same_galaxy(xn, shifted) is Answer.YES, ""
    yield "[x(n)] is outside the principal galaxy", is_principal(xn) is Answer.NO, ""
    chain = chain_thm42(g, Hypernode.const(g, _x(0)), xn, 1, strict=False)
    yield "galaxies are infinitely many (chain of 3)", chain.ok, ""


def ex_one_ended_path():
    g = builtin("one_ended_path")
    x0, xn = Hypernode.const(g, _x(0)), _hn(g, lambda n: _x(n))
    lim = limitedly_distant(x0, xn)
    yield "[x(0)] and [x(n)] are not limitedly distant", lim.answer is Answer.NO, str(lim)
    pred = _hn(g, lambda n: _x(n - 1 if n >= 1 else 0))
    succ = _hn(g, lambda n: _x(n + 1))
    ok = all(Hyperbranch(xn, h).validity() is FilterVerdict.IN for h in (pred, succ))
    yield "a nonstandard hypernode has a predecessor and a successor", ok, ""


def ex_grounded_ladder():
    g = builtin("grounded_ladder")
    worst = max(distance(g, _x(k), _x(l)) for k in range(65) for l in range(65))
    yield "d(x_k, x_l) <= 2 for k, l <= 64", worst <= 2, f"max {worst}"
    hs = random_hypernodes(g, 12, seed=34)
    lims = [limitedly_distant(a, b) for i, a in enumerate(hs) for b in hs[i + 1:]]
    ok = all(l.answer is Answer.YES and l.k <= 2 for l in lims)
    yield "every two sampled hypernodes are limitedly distant (k <= 2)", ok, ""
    yield "only the principal galaxy", all(is_principal(h) is Answer.YES for h in hs), ""


def ex_ladder_with_tail():
    g = builtin("ladder_with_tail")
    tn = _hn(g, lambda n: NodeRef("t", (n,)))
    ans = same_galaxy(tn, Hypernode.const(g, _x(0)))
    yield "the tail hypernode is in another galaxy", ans is Answer.NO, ans.value
    xn = _hn(g, lambda n: _x(n))
    yield "nonstandard ladder hypernodes are principal", is_principal(xn) is Answer.YES, ""
    chain = chain_thm42(g, Hypernode.const(g, g.base), tn, 1, strict=False)
    yield "infinitely many galaxies (chain of 3)", chain.ok, ""


_EDITS = (Edit("add", NodeRef("p", (0, 0)), NodeRef("p", (2, 1))),
          Edit("delete", NodeRef("p", (1, 1)), NodeRef("p", (1, 2))))


def ex_grid():
    g = builtin("grid2d")
    yield "standard (5,5) is principal", is_principal(Hypernode.const(g, NodeRef("p", (5, 5)))) is Answer.YES, ""
    yield "[(n,0)] is not principal", is_principal(_hn(g, lambda n: NodeRef("p", (n, 0)))) is Answer.NO, ""
    ge = grid2d_edited(_EDITS)
    nodes = [NodeRef("p", (k, l)) for k in range(-6, 7) for l in range(-6, 7) if abs(k) + abs(l) <= 6]
    bad = 0
    for u in nodes:
        d = distances_from(ge, u, 16)
        for v in nodes:
            if outside_envelope(_EDITS, u, v) and d[v] != distance(g, u, v):
                bad += 1
    yield "edited grid agrees with the grid outside the edit envelope", bad == 0, f"{bad} mismatches"


def thm_koenig():
    for name in ("one_ended_path", "grid2d"):
        g = builtin(name)
        w = koenig_witness(g, g.base)
        exact = all(distance(g, g.base, w.at(n)) == n for n in range(65))
        yield f"{name}: König witness {w} is exact and nonprincipal", exact and is_principal(w) is Answer.NO, ""


def ex_endless_1path():
    g = builtin("endless_1path")
    X = [Hypernode.const(g, NodeRef("X", (k,))) for k in range(3)]
    spread = _hn(g, lambda n: NodeRef("p", (n, 0)))
    inner = [Hypernode.const(g, NodeRef("p", (0, 0))), _hn(g, lambda n: NodeRef("p", (0, n)))]
    part = classify_zero_galaxies(X + [spread] + inner)
    yield "each standard 1-hypernode is alone in its 0-galaxy", {0, 1, 2} <= set(part.singletons), str(part.classes)
    yield "a hypernode spread over sections is its own 0-galaxy", 3 in part.singletons, ""
    one = classify_one_galaxies(X + inner)
    yield "standard 1-hypernodes and section hypernodes share the principal 1-galaxy", len(one.classes) == 1, ""
    w = thm103_witness(g, NodeRef("X", (0,)))
    lim = one_limitedly_distant(X[0], w)
    yield f"{w} is not 1-limitedly distant from [X(0)]", lim.answer is Answer.NO, ""


def ex_ladder_of_endless_paths():
    g = builtin("ladder_of_endless_paths")
    ones = random_hypernodes(g, 8, seed=92, rank=1)
    zeros = random_hypernodes(g, 8, seed=93, rank=0)
    top1 = max((hyperdistance(a, b).at(n) for i, a in enumerate(ones) for b in ones[i:] for n in range(20)),
               default=Ordinal())
    w4 = Ordinal(4, 0)
    ok1 = all(FRECHET.verdict(where(lambda n, d: d <= w4, hyperdistance(a, b).seq)) is FilterVerdict.IN
              for i, a in enumerate(ones) for b in ones[i:])
    yield "1-hypernode pairs within w*4", ok1, f"largest sampled {top1}"
    w6 = Ordinal(6, 0)
    ok0 = all(FRECHET.verdict(where(lambda n, d: d <= w6, hyperdistance(a, b).seq)) is FilterVerdict.IN
              for i, a in enumerate(zeros) for b in zeros[i:])
    yield "0-hypernode pairs within w*6", ok0, ""
    part = classify_one_galaxies(ones + zeros)
    yield "exactly one 1-galaxy", len(part.classes) == 1 and not part.unresolved, ""
    zpart = classify_zero_galaxies([Hypernode.const(g, NodeRef("n1", (k,))) for k in range(3)])
    yield "1-hypernodes are singleton 0-galaxies", len(zpart.singletons) == 3, ""


def ex_ladder_mixed():
    g = builtin("ladder_mixed")
    hs = [Hypernode.const(g, NodeRef("X", (k,))) for k in range(4)]
    hs += [_hn(g, lambda n: NodeRef("X", (n,))), Hypernode.const(g, NodeRef("x_g"))]
    part = classify_zero_galaxies(hs)
    yield "1-hypernodes and [x_g] form one 0-galaxy", len(part.classes) == 1, str(part.classes)


def ex_diamond_chain():
    g = builtin("diamond_chain")
    j = lambda k: NodeRef("j", (k, 0))
    d = wdistance(g, j(0), j(2))
    yield "d(x_k, x_(k+2)) = w*4", d == Ordinal(4, 0), str(d)
    sk = geodesic(g, j(0), j(2))
    walk_only = any(s.start_mode == TIP and s.end_mode == TIP for s in sk.segments)
    yield "the geodesic crosses a chain tip to tip, so it is a walk and not a path", walk_only, str(sk)
    X0, Xn = Hypernode.const(g, NodeRef("X", (0,))), _hn(g, lambda n: NodeRef("X", (n,)))
    yield "[X(0)] and [X(n)] are not 1-limitedly distant", one_limitedly_distant(X0, Xn).answer is Answer.NO, ""
    chain = chain_thm112(g, X0, Xn, 2, strict=False)
    yield "rank-1 chain of 5 1-galaxies", chain.ok and len(chain.handles) == 5, ""


EXAMPLES: dict = {
    "endless path": ex_endless_path,
    "one-ended path": ex_one_ended_path,
    "grounded ladder": ex_grounded_ladder,
    "ladder with tail": ex_ladder_with_tail,
    "grid": ex_grid,
    "König witness": thm_koenig,
    "endless 1-path": ex_endless_1path,
    "ladder of endless paths": ex_ladder_of_endless_paths,
    "mixed ladder": ex_ladder_mixed,
    "diamond chain": ex_diamond_chain,
}


def run_examples(only: Callable[[str], bool] = lambda name: True) -> list:
    out = []
    for name, fn in EXAMPLES.items():
        if not only(name):
            continue
        try:
            for claim, ok, detail in fn():
                out.append(Check(name, claim, bool(ok), detail))
        except Exception as e:  # a crash is a failed example, reported like the rest
            out.append(Check(name, "runs without error", False, f"{type(e).__name__}: {e}"))
    return out
