"""Exchange matrices, mutation, Markov constant and canonical forms."""
import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiver3.errors import DomainError
from quiver3.generate import random_quiver, random_word
from quiver3.quiver import (
    PERMUTATIONS,
    Quiver,
    canonical_key,
    chebyshev_sequence,
    markov_constant,
    mutate,
    mutate_word,
    opposite,
    parse_quiver,
    sink_source_class,
    triple_text,
)
from quiver3.scalar import FloatScalar, cyclo

WEIGHTS = st.integers(0, 9)


def _sorted_weights(Q):
    return sorted(float(x) for x in Q.weights())


def test_mutate_examples():
    two = Quiver.cyclic(2, 2, 2)
    for k in (1, 2, 3):
        assert mutate(two, k).is_cyclic()
        assert canonical_key(mutate(two, k)) == canonical_key(two)
    path = parse_quiver("acyc(1,1,0)", exact=True)
    assert triple_text(mutate(path, 2)) == "cyc(1,1,1)"
    three = Quiver.cyclic(3, 3, 3)
    results = {k: mutate(three, k) for k in (1, 2, 3)}
    assert all(Q.is_cyclic() for Q in results.values())
    assert all(_sorted_weights(Q) == [3, 3, 6] for Q in results.values())
    assert triple_text(results[2]) == "cyc(6,3,3)"


def test_mutation_matrix_formula():
    signed = (2, -3, 5)
    Q = Quiver.from_signed(*signed)
    b12, b23, b31 = signed
    b = [[0, b12, -b31], [-b12, 0, b23], [b31, -b23, 0]]
    for k in (1, 2, 3):
        kk = k - 1
        want = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                if kk in (i, j):
                    want[i][j] = -b[i][j]
                else:
                    want[i][j] = b[i][j] + (abs(b[i][kk]) * b[kk][j] + b[i][kk] * abs(b[kk][j])) // 2
        got = mutate(Q, k).b
        assert all(got[i][j] == want[i][j] for i in range(3) for j in range(3))


def test_is_cyclic_examples():
    assert Quiver.cyclic(1, 1, 1).is_cyclic()
    assert not parse_quiver("acyc(1,1,0)").is_cyclic()
    assert not Quiver.acyclic(1, 1, cyclo(2, 5)).is_cyclic()
    assert not Quiver.cyclic(1, 1, 0).is_cyclic()


def test_markov_examples():
    assert markov_constant(Quiver.cyclic(1, 1, 1)) == 2
    assert markov_constant(Quiver.cyclic(3, 3, 3)) == 0
    five = cyclo(1, 5)
    assert markov_constant(Quiver.cyclic(five, five, 1)) == 2 + five
    assert markov_constant(Quiver.acyclic(1, 1, 0)) == 2


def test_skew_symmetry_and_zero_diagonal():
    Q = Quiver.from_signed(1, 2, -3)
    for i in range(3):
        assert Q.b[i][i] == 0
        for j in range(3):
            assert Q.b[i][j] == -Q.b[j][i]
    with pytest.raises(DomainError):
        Quiver.from_matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(DomainError):
        Quiver.from_matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]])


def test_parse_forms():
    assert parse_quiver("signed(1,1,-1)").text() == "acyc(1,1,1)"
    assert parse_quiver('{"b":[[0,1,0],[-1,0,1],[0,-1,0]]}').text() == "acyc(1,1,0)"
    with pytest.raises(DomainError):
        parse_quiver("cyc(1,-1,1)")
    with pytest.raises(DomainError):
        parse_quiver("foo")


def test_json_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        Q, _, _ = random_quiver(rng, exact=True, max_length=6)
        assert Quiver.from_json(Q.to_json(), exact=True) == Q


def test_canonical_key_examples():
    Q = Quiver.from_signed(1, 2, -3)
    keys = {canonical_key(Q.relabel(p)) for p in PERMUTATIONS}
    assert len(keys) == 1
    assert canonical_key(Quiver.cyclic(1, 2, 3)) == canonical_key(Quiver.cyclic(1, 3, 2))
    forward = Quiver.from_signed(1, 1, 0)
    backward = Quiver.from_signed(-1, -1, 0)
    assert canonical_key(forward) == canonical_key(backward)
    assert canonical_key(opposite(Q)) == canonical_key(Q)
    assert canonical_key(Quiver.cyclic(1, 1, 1)) != canonical_key(Quiver.acyclic(1, 1, 1))


def test_sink_source_class_examples():
    s2 = cyclo(1, 4)
    classes = set()
    for signs in itertools.product((1, -1), repeat=2):
        Q = Quiver.from_signed(signs[0] * 1, signs[1] * s2, 0)
        classes.add(sink_source_class(Q).text())
    assert classes == {"acyc(2cos(pi/4),1,0)"}
    assert sink_source_class(Quiver.cyclic(1, 1, 1)).text() == "cyc(1,1,1)"
    acyc = parse_quiver("acyc(1,1,-2cos(2pi/5))", exact=True)
    assert sink_source_class(acyc).text() == "acyc(1,1,2cos(2*pi/5))"


def test_chebyshev_examples():
    assert chebyshev_sequence(3, 3, 3, 2) == [6, 15]
    seq = chebyshev_sequence(3, 3, 1, 10)
    assert any(x.sign() < 0 for x in seq)
    assert chebyshev_sequence(3, 3, 3, 0) == []


@settings(max_examples=80, deadline=None)
@given(st.tuples(WEIGHTS, WEIGHTS, WEIGHTS), st.booleans(), st.integers(1, 3))
def test_mutation_is_involution(w, cyclic, k):
    Q = Quiver.cyclic(*w) if cyclic else Quiver.acyclic(*w)
    assert mutate(mutate(Q, k), k) == Q


@settings(max_examples=80, deadline=None)
@given(st.tuples(*[st.floats(0, 5, allow_nan=False)] * 3), st.integers(1, 3))
def test_float_involution(w, k):
    Q = Quiver.cyclic(*[FloatScalar(x) for x in w])
    back = mutate(mutate(Q, k), k)
    for a, b in zip(Q.signed, back.signed):
        assert abs(float(a) - float(b)) <= 1e-12 * max(1.0, max(w) ** 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_markov_invariant_and_skew_on_random_words(seed):
    rng = random.Random(seed)
    Q, seed_quiver, _ = random_quiver(rng, exact=True, max_length=8)
    C = markov_constant(seed_quiver)
    assert markov_constant(Q) == C
    R = mutate_word(Q, random_word(rng, 4))
    for i in range(3):
        for j in range(3):
            assert R.b[i][j] == -R.b[j][i]


@settings(max_examples=60, deadline=None)
@given(st.tuples(WEIGHTS, WEIGHTS, WEIGHTS), st.booleans(), st.sampled_from(PERMUTATIONS))
def test_relabel_preserves_invariants(w, cyclic, perm):
    Q = Quiver.cyclic(*w) if cyclic else Quiver.acyclic(*w)
    P = Q.relabel(perm)
    assert canonical_key(P) == canonical_key(Q)
    assert markov_constant(P) == markov_constant(Q)
    assert P.is_cyclic() == Q.is_cyclic()
