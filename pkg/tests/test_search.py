"""Acyclic representatives within the mutation-distance bounds."""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiver3.classify import MUTATION_CYCLIC, classify
from quiver3.errors import DomainError
from quiver3.generate import random_quiver
from quiver3.quiver import Quiver, markov_constant, mutate_word, sink_source_class
from quiver3.scalar import cyclo, rational
from quiver3.search import find_acyclic, line_bound, line_strategy, spherical_bound


def test_spherical_bound_examples():
    assert spherical_bound(rational(2)) == 4
    assert spherical_bound(rational(3)) == 6
    with pytest.raises(DomainError):
        spherical_bound(rational(4))
    with pytest.raises(DomainError):
        spherical_bound(rational(0))


def test_five_minus_root_five_over_two():
    # (5 - sqrt 5)/2 = 3 - 2cos(pi/5)
    C = markov_constant(Quiver.acyclic(1, cyclo(2, 5), 0))
    assert C == 3 - cyclo(1, 5)
    assert spherical_bound(C) == 3


def test_line_bound_examples():
    assert line_bound(rational(1)) == 3
    assert line_bound(rational(0)) == 2
    assert line_bound(cyclo(1, 5)) == 5
    with pytest.raises(DomainError):
        line_bound(rational(2))


def test_find_acyclic_examples():
    result = find_acyclic(Quiver.cyclic(1, 1, 1))
    assert result.found and len(result.word) == 1 <= spherical_bound(rational(2))
    result = find_acyclic(Quiver.cyclic(3, 3, 3))
    assert not result.found
    assert result.verdict_if_none.verdict == MUTATION_CYCLIC
    s2 = cyclo(1, 4)
    result = find_acyclic(Quiver.cyclic(s2, s2, 1))
    assert result.found and len(result.word) <= 6
    assert sink_source_class(result.quiver) == sink_source_class(Quiver.acyclic(1, s2, 0))


def test_already_acyclic():
    result = find_acyclic(Quiver.acyclic(5, 5, 5))
    assert result.word == [] and result.strategy == "already_acyclic"


def test_hyperbolic_class_found_by_descent():
    result = find_acyclic(Quiver.cyclic(3, 4, 20))
    assert result.found
    assert not mutate_word(Quiver.cyclic(3, 4, 20), result.word).is_cyclic()


def test_line_strategy_budget():
    Q = Quiver.cyclic(1, 3, 3)
    word, _, budget = line_strategy(Q)
    assert word is not None and len(word) <= budget


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_soundness_on_random_quivers(seed):
    rng = random.Random(seed)
    Q, _, _ = random_quiver(rng, exact=True, max_length=8)
    result = find_acyclic(Q)
    assert result.found
    assert not mutate_word(Q, result.word).is_cyclic()
    assert mutate_word(Q, result.word) == result.quiver


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_none_iff_mutation_cyclic(p, q, r):
    Q = Quiver.cyclic(p, q, r)
    assert (not find_acyclic(Q).found) == (classify(Q).verdict == MUTATION_CYCLIC)
