"""Random definable hypernodes for property checks and the examples suite."""

from __future__ import annotations

import random
from typing import Optional

from .graphone import OneGraphPresentation
from .graphzero import NodeRef
from .ultrapower import Hypernode


def _param(rng: random.Random, domain, standard: bool):
    """A function of ``n`` (concrete or symbolic) staying inside ``domain``."""
    lo, hi = domain
    b = rng.randint(0, 6) if lo is not None else rng.randint(-6, 6)
    if lo is not None:
        b = max(b, lo)
    if standard or (lo is not None and hi is not None):
        return lambda n: b
    a = rng.choice([1, 2, 3]) if lo is not None else rng.choice([-2, -1, 1, 2, 3])
    if hi is not None and lo is None:
        a = -abs(a)
    kind = rng.choice(["affine", "half", "parity"])
    if kind == "affine":
        return lambda n: a * n + b
    if kind == "half":
        return lambda n: a * (n // 2) + b
    return lambda n: a * n + b + (n % 2)


def _families(g, rank: Optional[int]):
    if isinstance(g, OneGraphPresentation):
        ones = list(g.one_families)
        zeros = list(g.zero_graph.families)
        if rank == 1:
            return ones
        if rank == 0:
            return zeros
        return ones + zeros
    return list(g.families)


def random_hypernode(g, rng: random.Random, rank: Optional[int] = None,
                     standard: Optional[bool] = None) -> Hypernode:
    fams = _families(g, rank)
    fam = rng.choice(fams)
    if standard is None:
        standard = rng.random() < 0.3
    params = [_param(rng, d, standard) for d in fam.domains]
    h = Hypernode.of(g, lambda n: NodeRef(fam.name, tuple(p(n) for p in params)))
    return h


def random_hypernodes(g, count: int, seed: int = 0, **kw) -> list:
    rng = random.Random(seed)
    return [random_hypernode(g, rng, **kw) for _ in range(count)]
