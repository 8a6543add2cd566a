"""Closed-form classification, minimality and discreteness."""
import math
import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from quiver3.classify import (
    MUTATION_ACYCLIC,
    MUTATION_CYCLIC,
    classify,
    discreteness,
    distance_ratio,
    match_tilings,
    minimality_note,
)
from quiver3.explore import euclidean_acyclic_representative
from quiver3.generate import random_quiver, random_word
from quiver3.geometry import build_rotation_realization, composed_isometry_trace, triangle_data
from quiver3.quiver import Quiver, mutate_word
from quiver3.scalar import FloatScalar, cyclo


def _float_cyclic(*w):
    return Quiver.cyclic(*[FloatScalar(float(x)) for x in w])


def test_classify_examples():
    assert classify(Quiver.cyclic(1, 5, 9)).verdict == MUTATION_ACYCLIC
    report = classify(Quiver.cyclic(3, 3, 2))
    assert report.verdict == MUTATION_CYCLIC
    assert report.minimal_hint == "(q,q,2) is minimal"
    report = classify(_float_cyclic(2.1, 2.1, 2.1))
    assert report.verdict == MUTATION_CYCLIC
    assert report.isometry_type == "Elliptic"
    assert math.isclose(float(report.markov), 3.969)
    report = classify(Quiver.cyclic(2, 2, 2))
    assert (report.verdict, report.realizations, report.markov) == (MUTATION_CYCLIC, "Both", 4)


def test_classify_geometry_rules():
    assert classify(Quiver.acyclic(1, 1, 0)).geometry == "Sphere"
    assert classify(euclidean_acyclic_representative(5)).geometry == "Euclidean"
    assert classify(Quiver.acyclic(3, 3, 3)).geometry == "Hyperbolic"
    report = classify(Quiver.cyclic(3, 3, 3))
    assert (report.geometry, report.realizations, report.isometry_type) == ("RotationH2", "RotationsOnly", "Parabolic")
    assert classify(Quiver.cyclic(4, 4, 4)).isometry_type == "Hyperbolic"
    assert classify(Quiver.cyclic(2, 3, 4)).verdict == MUTATION_ACYCLIC
    assert classify(Quiver.cyclic(3, 3, 10)).verdict == MUTATION_ACYCLIC


def test_boundary_flag():
    assert classify(_float_cyclic(2, 2, 2 + 1e-10)).boundary_within_tolerance
    assert not classify(_float_cyclic(3, 3, 3)).boundary_within_tolerance
    assert not classify(Quiver.cyclic(2, 2, 2)).boundary_within_tolerance


def test_json_fields():
    data = classify(Quiver.cyclic(3, 3, 3)).to_json()
    assert data["verdict"] == "MutationCyclic" and data["C"] == 0 and data["isometry"] == "Parabolic"


def test_minimality_examples():
    assert minimality_note(Quiver.cyclic(3, 3, 2)) == "(q,q,2) is minimal"
    assert minimality_note(Quiver.cyclic(3, 3, 3)).startswith("minimal element exists")
    assert "trivially minimal" in minimality_note(Quiver.cyclic(2, 2, 2))


def test_distance_ratio():
    # 2cosh(2d) = (2cosh d)^2 - 2, so d(7)/d(3) = 2
    assert distance_ratio(7, 3) == 2
    assert distance_ratio(3, 7) == Fraction(1, 2)
    assert distance_ratio(3, 5) is None


def test_discreteness_examples():
    report = discreteness(Quiver.acyclic(cyclo(1, 3), cyclo(1, 4), 2))
    assert report.status == "Discrete"
    five = euclidean_acyclic_representative(5)
    assert classify(five).geometry == "Euclidean"
    assert discreteness(five).status == "NotDiscrete"
    report = discreteness(Quiver.acyclic(cyclo(1, 2), cyclo(1, 3), cyclo(2, 5)))
    assert (report.status, report.code) == ("Discrete", "spherical_exception")
    report = discreteness(_float_cyclic(2.5, 2.5, 2))
    assert report.status == "Indeterminate"


def test_discreteness_rotation_signatures():
    assert discreteness(Quiver.cyclic(4, 4, 4)).signature == "(0:2,2,2;0;1)"
    assert discreteness(Quiver.cyclic(3, 3, 3)).status == "Discrete"


def test_tiling_table_annotates_only():
    assert isinstance(match_tilings([0, 0, 0]), list)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_classify_constant_on_class(seed):
    rng = random.Random(seed)
    Q, _, _ = random_quiver(rng, exact=True, max_length=6)
    base = classify(Q)
    for _ in range(4):
        R = mutate_word(Q, random_word(rng, 5))
        other = classify(R)
        assert (other.verdict, other.markov, other.realizations) == (base.verdict, base.markov, base.realizations)


@settings(max_examples=60, deadline=None)
@given(st.floats(2, 6), st.floats(2, 6), st.floats(2, 6))
def test_isometry_type_matches_trace(p, q, r):
    w = [FloatScalar(x) for x in (p, q, r)]
    if triangle_data(*w).delta_sign < 0:
        return
    report = classify(Quiver.cyclic(*w))
    if report.verdict != MUTATION_CYCLIC:
        # weights within tolerance of 2 with the other two unequal
        return
    t2 = composed_isometry_trace(build_rotation_realization(*w)) ** 2
    if abs(t2 - 4) < 1e-6:
        return
    assert report.isometry_type == ("Elliptic" if t2 < 4 else "Hyperbolic")
