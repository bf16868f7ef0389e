import pytest
from hypothesis import given
from hypothesis import strategies as st

from nsgraph.graphzero import NodeRef
from nsgraph.ordinals import Ordinal
from nsgraph.sequences import DefinableSequence, affine_sequence, infer_affine, lift
from nsgraph.symbolic import Affine, ClassContext, NonAffine, ceil_div

small = st.integers(min_value=-5, max_value=5)
pos = st.integers(min_value=1, max_value=4)


def agrees(seq, fn, upto=120):
    return all(seq.at(n) == fn(n) for n in range(upto))


@given(small, small, small, pos)
def test_lift_floor_division(a, b, c, q):
    fn = lambda n: a * n + (b * n + c) // q
    assert agrees(lift(fn), fn)


@given(small, small, small, small)
def test_lift_abs_and_min(a, b, c, d):
    fn = lambda n: min(abs(a * n + b), abs(c * n + d))
    assert agrees(lift(fn), fn)


@given(small, pos)
def test_lift_ceil_and_mod(a, q):
    fn = lambda n: ceil_div(a * n + 3, q) + n % q
    assert agrees(lift(fn), fn)


@given(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=6), pos)
def test_lift_nodes_and_ordinals(a, b, q):
    def fn(n):
        k = a * n // q + b
        return NodeRef("x", (k, n % 2)), Ordinal(k, n)
    assert agrees(lift(fn), fn)


@given(st.lists(small, min_size=1, max_size=3), st.integers(min_value=0, max_value=5))
def test_lift_of_sequences(slopes, shift):
    seqs = [affine_sequence(s, shift) for s in slopes]
    out = lift(lambda n, *vs: max(vs) - min(vs), *seqs)
    assert agrees(out, lambda n: max(s * n + shift for s in slopes) - min(s * n + shift for s in slopes))


def test_lift_comparison_thresholds_go_to_prefix():
    fn = lambda n: 1 if n >= 7 else 0
    seq = lift(fn)
    assert seq.start == 7 and seq.terms == (1,)


def test_value_at_symbolic_index():
    base = lift(lambda n: NodeRef("x", (n // 2,)))
    composed = lift(lambda n: base.value_at(3 * n + 1))
    assert agrees(composed, lambda n: NodeRef("x", ((3 * n + 1) // 2,)))


def test_non_affine_is_rejected():
    with pytest.raises(NonAffine):
        lift(lambda n: n * n)


def test_describe_and_constant():
    assert DefinableSequence.constant(NodeRef("x", (3,))).describe() == "x(3)"
    assert lift(lambda n: n // 2).describe() == "n%2=0: 1/2*n; n%2=1: 1/2*n-1/2"


@given(st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=5), st.sampled_from([1, 2, 4]),
       st.lists(st.integers(min_value=0, max_value=9), max_size=3))
def test_infer_affine_recovers_definable_sequences(a, b, q, junk):
    fn = lambda n: NodeRef("p", (a * n // q + b, n % 2))
    values = list(junk) and [NodeRef("q", (j,)) for j in junk]
    values = values + [fn(n) for n in range(len(values), 40)]
    seq = infer_affine(values)
    assert seq is not None
    assert all(seq.at(n) == values[n] for n in range(40))


def test_infer_affine_gives_up_on_quadratics():
    assert infer_affine([n * n for n in range(30)]) is None


def test_affine_helpers():
    f = Affine(2, 1)
    assert f.at(3) == 7 and f.compose(Affine(1, 1)).at(0) == 3
    ctx = ClassContext(1, 2, 0)
    assert (ctx.n * 2 + 1).affine() == Affine(2, 1)
    with pytest.raises(ValueError):
        Affine(Affine(1, 0).slope / 2, 0).at(1)
