"""Gram matrices, realizations by reflections and pi-rotations, triangles and traces."""
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiver3.errors import DomainError
from quiver3.explore import euclidean_acyclic_representative
from quiver3.generate import random_seed, random_word
from quiver3.geometry import (
    Kind,
    angles_of,
    build_reflection_realization,
    build_rotation_realization,
    check_realization,
    composed_isometry_trace,
    det3,
    gram_of,
    isometry_info,
    mutate_realization,
    positive_count_is_even,
    realize,
    triangle_data,
)
from quiver3.quiver import Quiver, markov_constant, parse_quiver
from quiver3.scalar import FloatScalar, cyclo


def test_gram_of_example():
    g = gram_of(parse_quiver("acyc(1,1,0)"))
    assert [[float(x) for x in row] for row in g] == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]


def test_gram_of_rotation_variant():
    g = gram_of(Quiver.cyclic(3, 4, 5), rotation=True)
    assert [[float(x) for x in row] for row in g] == [[-2, -3, -5], [-3, -2, -4], [-5, -4, -2]]


def test_determinant_examples():
    Q = Quiver.acyclic(1, cyclo(1, 4), cyclo(1, 5))
    assert det3(gram_of(Q)) == -2 * (markov_constant(Q) - 4)
    assert det3(gram_of(Quiver.cyclic(2, 2, 2))) == -32


def test_reflection_spaces():
    assert build_reflection_realization(parse_quiver("acyc(1,1,0)")).space.name == "S2"
    R = build_reflection_realization(euclidean_acyclic_representative(6))
    assert markov_constant(R.quiver) == 4
    assert R.space.name == "E2"
    assert build_reflection_realization(Quiver.acyclic(3, 3, 3)).space.name == "H2"
    with pytest.raises(DomainError) as err:
        build_reflection_realization(Quiver.cyclic(3, 3, 3))
    assert err.value.code == "not_realizable_by_reflections"


def test_reflection_numeric_gram_matches():
    for text in ("acyc(1,1,0)", "acyc(3,3,3)", "cyc(1,1,1)", "acyc(2,2,2)"):
        R = build_reflection_realization(parse_quiver(text))
        assert np.allclose(R.numeric_gram(), R.gram_float(), atol=1e-12)
        assert check_realization(R) == []


def test_rotation_examples():
    R = build_rotation_realization(2, 2, 2)
    assert np.allclose(R.numeric_gram(), -2 * np.ones((3, 3)), atol=1e-12)
    R = build_rotation_realization(3, 3, 2)
    assert np.allclose(R.vectors[0], R.vectors[2], atol=1e-12)
    R = build_rotation_realization(3, 3, 3)
    assert np.allclose(R.numeric_gram(), R.gram_float(), atol=1e-12)
    assert math.isclose(math.acosh(1.5), 0.9624236501192069)
    with pytest.raises(DomainError) as err:
        build_rotation_realization(FloatScalar(2.1), FloatScalar(2.1), FloatScalar(10.0))
    assert err.value.code == "triangle_inequality_fails"
    with pytest.raises(DomainError):
        build_rotation_realization(FloatScalar(1.5), FloatScalar(3.0), FloatScalar(3.0))


def test_rotation_mutation_example():
    R = build_rotation_realization(*[FloatScalar(x) for x in (3.0, 4.0, 4.5)])
    R2 = mutate_realization(R, R.quiver, 2)
    g = R.gram
    assert R2.gram[0][2] == -g[0][2] - g[0][1] * g[1][2]
    assert check_realization(R2, R.quiver.mutate(2)) == []


def test_reflection_mutation_flips_parity():
    Q = Quiver.acyclic(1, 1, 1)
    R = build_reflection_realization(Q)
    assert positive_count_is_even(R) is True
    R2 = mutate_realization(R, Q, 2)
    Q2 = Q.mutate(2)
    assert Q2.is_cyclic()
    assert positive_count_is_even(R2) is False
    assert check_realization(R2, Q2) == []


def test_double_mutation_returns_gram():
    # a double partial rotation is one global isometry, so the Gram returns exactly
    for w in ((3, 3, 3), (2, 2, 2), (3, 4, 5), (cyclo(1, 5) + 2, 3, 3)):
        Q = Quiver.cyclic(*w)
        R = realize(Q)
        for k in (1, 2, 3):
            back = mutate_realization(mutate_realization(R, Q, k), Q.mutate(k), k)
            assert back.gram == R.gram


def test_double_partial_reflection_negates_normal():
    # twice at k reflects every vector in v_k except v_k itself, which returns
    # unchanged; the Gram comes back with row and column k negated
    rng = random.Random(11)
    for _ in range(40):
        Q = random_seed(rng, exact=True, max_n=8)
        R = realize(Q)
        for k in random_word(rng, 6):
            R = mutate_realization(R, Q, k)
            Q = Q.mutate(k)
        if R.kind is not Kind.REFLECTION:
            continue
        for k in (1, 2, 3):
            back = mutate_realization(mutate_realization(R, Q, k), Q.mutate(k), k)
            for i in range(3):
                for j in range(3):
                    flip = -1 if (i == k - 1) != (j == k - 1) else 1
                    assert back.gram[i][j] == flip * R.gram[i][j]
            assert check_realization(back, Q) == []


def test_triangle_examples():
    assert triangle_data(2, 2, 2).delta_sign == 0
    t = triangle_data(3, 3, 3)
    assert t.delta_sign == 1 and math.isclose(t.delta, math.acosh(1.5))
    t = triangle_data(FloatScalar(2.1), FloatScalar(2.1), FloatScalar(10.0))
    assert t.delta_sign == -1 and t.delta < 0
    assert markov_constant(Quiver.cyclic(*[FloatScalar(x) for x in (2.1, 2.1, 10.0)])) == FloatScalar(64.72)
    with pytest.raises(DomainError):
        triangle_data(1, 3, 3)


def test_trace_examples():
    assert math.isclose(composed_isometry_trace(build_rotation_realization(3, 3, 3)), 2, abs_tol=1e-9)
    assert math.isclose(composed_isometry_trace(build_rotation_realization(3, 3, 2)), 0, abs_tol=1e-9)
    R = build_rotation_realization(4, 4, 4)
    assert math.isclose(composed_isometry_trace(R), math.sqrt(20), rel_tol=1e-9)
    info = isometry_info(R)
    assert info.isometry_type == "Hyperbolic"
    assert math.isclose(2 * math.cosh(info.translation_length / 2), math.sqrt(20), rel_tol=1e-9)
    assert isometry_info(build_rotation_realization(3, 3, 3)).isometry_type == "Parabolic"


def test_angles_examples():
    a = angles_of(Quiver.acyclic(1, 2, cyclo(2, 5)))
    assert math.isclose(a[0].radians, math.pi / 3)
    assert a[1].radians == 0
    assert a[2].pi_multiple == Fraction(2, 5)
    with pytest.raises(DomainError):
        angles_of(Quiver.acyclic(1, 3, 0))


def test_realize_picks_kind():
    assert realize(Quiver.cyclic(3, 3, 3)).kind is Kind.ROTATION
    assert realize(Quiver.cyclic(2, 2, 2)).kind is Kind.ROTATION
    assert realize(Quiver.cyclic(1, 1, 1)).kind is Kind.REFLECTION
    assert realize(Quiver.cyclic(3, 3, 4)).kind is Kind.ROTATION
    assert realize(Quiver.cyclic(3, 3, 10)).kind is Kind.REFLECTION


@settings(max_examples=60, deadline=None)
@given(st.floats(2, 6), st.floats(2, 6), st.floats(2, 6))
def test_rotation_gram_matches_coordinates(p, q, r):
    w = [FloatScalar(x) for x in (p, q, r)]
    if triangle_data(*w).delta_sign < 0:
        return
    R = build_rotation_realization(*w)
    assert np.allclose(R.numeric_gram(), R.gram_float(), atol=1e-8 * max(p, q, r) ** 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_exact_coherence_along_words(seed):
    rng = random.Random(seed)
    Q = random_seed(rng, exact=True, max_n=6)
    R = realize(Q)
    for k in random_word(rng, 8):
        R = mutate_realization(R, Q, k)
        Q = Q.mutate(k)
        assert check_realization(R, Q) == []
