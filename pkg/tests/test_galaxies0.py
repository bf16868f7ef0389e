import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from explicit import p, x
from nsgraph.catalog import builtin
from nsgraph.filters import FRECHET, FilterVerdict, UltrafilterOracle
from nsgraph.galaxies0 import (Answer, ChainDefect, Closeness, GalaxyHandle, chain_thm42, classify_galaxies,
                               closer_than, index_map, is_principal, koenig_path, koenig_witness,
                               limitedly_distant, partial_order_check, same_galaxy)
from nsgraph.graphzero import NodeRef, PreconditionError, distance
from nsgraph.sampling import random_hypernodes
from nsgraph.sequences import lift
from nsgraph.ultrapower import Hypernode

GRAPHS = ["endless_path", "one_ended_path", "grounded_ladder", "ladder_with_tail", "grid2d"]
WINDOW = range(400, 460)


def scan_limit(a, b):
    """Independent reading of the Frechet answer from concrete distances far out."""
    g = a.graph
    tail = [distance(g, a.at(n), b.at(n)) for n in WINDOW]
    if max(tail) <= 64:
        return Answer.YES, max(tail)
    if min(tail) > 64:
        return Answer.NO, None
    return Answer.UNDETERMINED, None


# -- limited distance against a far-out scan

@settings(max_examples=80)
@given(st.sampled_from(GRAPHS), st.integers(0, 10_000))
def test_limited_distance_matches_scan(name, seed):
    a, b = random_hypernodes(builtin(name), 2, seed=seed)
    lim = limitedly_distant(a, b)
    assert (lim.answer, lim.k) == scan_limit(a, b)


def test_limit_examples():
    g = builtin("endless_path")
    x0 = Hypernode.const(g, x(0))
    assert str(limitedly_distant(x0, Hypernode.of(g, lambda n: x(3)))) == "yes(3)"
    assert limitedly_distant(x0, Hypernode.of(g, lambda n: x(n // 3))).answer is Answer.NO
    mixed = Hypernode.of(g, lambda n: x(n * (n % 2)))
    assert limitedly_distant(x0, mixed).answer is Answer.UNDETERMINED
    assert limitedly_distant(x0, mixed, UltrafilterOracle.residues([(2, 0)])).k == 0
    assert limitedly_distant(x0, mixed, UltrafilterOracle.residues([(2, 1)])).answer is Answer.NO


def test_k_max_caps_the_search():
    g = builtin("endless_path")
    far = Hypernode.const(g, x(100))
    lim = limitedly_distant(Hypernode.const(g, x(0)), far, k_max=64)
    assert lim.answer is Answer.UNDETERMINED and lim.diagnostic


# -- galaxy partition laws

@settings(max_examples=25)
@given(st.sampled_from(GRAPHS), st.integers(0, 10_000))
def test_partition_is_an_equivalence(name, seed):
    hs = random_hypernodes(builtin(name), 6, seed=seed)
    rel = [[same_galaxy(a, b) for b in hs] for a in hs]
    for i in range(6):
        assert rel[i][i] is Answer.YES
        for j in range(6):
            assert rel[i][j] is rel[j][i]
            for k in range(6):
                if rel[i][j] is Answer.YES and rel[j][k] is Answer.YES:
                    assert rel[i][k] is Answer.YES
    part = classify_galaxies(hs)
    for c in part.classes:
        assert all(rel[c[0]][j] is Answer.YES for j in c)


@settings(max_examples=25)
@given(st.sampled_from(GRAPHS), st.integers(0, 10_000))
def test_principal_does_not_depend_on_base(name, seed):
    g = builtin(name)
    (h,) = random_hypernodes(g, 1, seed=seed)
    standards = random_hypernodes(g, 5, seed=seed + 1, standard=True)
    ans = is_principal(h)
    for s in standards:
        assert same_galaxy(h, s) is ans


@settings(max_examples=25)
@given(st.sampled_from(GRAPHS), st.integers(0, 10_000), st.integers(0, 3))
def test_handles_do_not_depend_on_representative(name, seed, shift):
    g = builtin(name)
    (h,) = random_hypernodes(g, 1, seed=seed)
    # a bounded move along the first parameter, where the family has one
    if h.at(0).params:
        moved = Hypernode.of(g, lambda n: (lambda y: NodeRef(y.family, (y.params[0] + shift,) + y.params[1:]))(
            h.seq.value_at(n)))
    else:
        moved = h
    a, b = GalaxyHandle.of(h), GalaxyHandle.of(moved)
    assert a.same(b) is Answer.YES and a.kind == b.kind


# -- König witnesses

@pytest.mark.parametrize("name,x0", [("one_ended_path", x(0)), ("endless_path", x(-4)),
                                     ("grid2d", p(0, 0)), ("grid2d", p(3, -2))])
def test_koenig_witness_is_exact(name, x0):
    g = builtin(name)
    w = koenig_witness(g, x0)
    for n in range(0, 300, 7):
        assert distance(g, x0, w.at(n)) == n
    path = koenig_path(g, x0, 20)
    assert all(g.is_branch(a, b) for a, b in zip(path, path[1:]))
    assert is_principal(w) is Answer.NO


def test_koenig_needs_local_finiteness():
    with pytest.raises(PreconditionError):
        koenig_witness(builtin("grounded_ladder"), x(0))


# -- chains

@pytest.mark.parametrize("name,v", [
    ("one_ended_path", lambda n: x(n)),
    ("endless_path", lambda n: x(-3 * n)),
    ("grid2d", lambda n: p(n, n // 2)),
    ("ladder_with_tail", lambda n: NodeRef("t", (2 * n + 1,))),
])
def test_chain_is_strict(name, v):
    g = builtin(name)
    x0 = Hypernode.const(g, g.base)
    chain = chain_thm42(g, x0, Hypernode.of(g, v), 2)
    assert chain.ok and len(chain.handles) == 5
    reps = [h.representative for h in chain.handles]
    # independent check: the gap between neighbours keeps growing far out
    for a, b in zip(reps, reps[1:]):
        gaps = [distance(g, g.base, b.at(n)) - distance(g, g.base, a.at(n)) for n in (100, 200, 400)]
        assert 0 < gaps[0] < gaps[1] < gaps[2]
    report = partial_order_check(reps, x0)
    assert report.ok and not report.incomparable


def test_chain_rejects_principal_middle():
    g = builtin("endless_path")
    with pytest.raises(PreconditionError):
        chain_thm42(g, Hypernode.const(g, x(0)), Hypernode.const(g, x(5)), 1)
    with pytest.raises(PreconditionError):
        chain_thm42(g, Hypernode.of(g, lambda n: x(n)), Hypernode.of(g, lambda n: x(2 * n)), 1)


def test_index_map_is_least():
    D = lift(lambda n: 3 * n // 2)
    m = index_map(D, lift(lambda n: n))
    for n in range(60):
        target = D.at(n) + n
        assert D.at(m.at(n)) >= target and (m.at(n) == 0 or D.at(m.at(n) - 1) < target)


# -- closeness order

def test_axis_galaxies_are_incomparable():
    g = builtin("grid2d")
    x0 = Hypernode.const(g, p(0, 0))
    a, b = Hypernode.of(g, lambda n: p(n, 0)), Hypernode.of(g, lambda n: p(0, n))
    assert closer_than(a, b, x0).answer is Closeness.NOT_CLOSER
    assert closer_than(b, a, x0).answer is Closeness.NOT_CLOSER
    report = partial_order_check([a, b, Hypernode.of(g, lambda n: p(n, n))], x0)
    assert report.ok and (0, 1) in report.incomparable


def test_closer_witnesses():
    g = builtin("one_ended_path")
    x0 = Hypernode.const(g, x(0))
    res = closer_than(Hypernode.of(g, lambda n: x(n)), Hypernode.of(g, lambda n: x(2 * n)), x0, m_max=8)
    assert res.answer is Closeness.CLOSER
    assert [v for _, v in res.witnesses] == [FilterVerdict.IN] * 8


def test_closer_needs_nonprincipal_arguments():
    g = builtin("one_ended_path")
    x0 = Hypernode.const(g, x(0))
    with pytest.raises(PreconditionError):
        closer_than(Hypernode.const(g, x(4)), Hypernode.of(g, lambda n: x(n)), x0)


def test_undetermined_closeness_under_frechet():
    g = builtin("one_ended_path")
    x0 = Hypernode.const(g, x(0))
    y, z = Hypernode.of(g, lambda n: x(n)), Hypernode.of(g, lambda n: x(n + n * (n % 2)))
    assert closer_than(y, z, x0).answer is Closeness.UNDETERMINED
    assert closer_than(y, z, x0, UltrafilterOracle.residues([(2, 1)])).answer is Closeness.CLOSER
