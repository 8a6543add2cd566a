"""Mutation-class enumeration, finite type, class tables and DOT output."""
import pytest

from quiver3.errors import DomainError
from quiver3.explore import (
    CAP_EXCEEDED,
    FINITE,
    INFINITE_CERTIFIED,
    euclidean_acyclic_representative,
    explore,
    is_mutation_finite,
    table1,
    to_dot,
)
from quiver3.quiver import Quiver, canonical_key, markov_constant, mutate, parse_quiver
from quiver3.scalar import FloatScalar, cyclo


def _classes(G):
    return sorted(c.text() for c in G.sink_source_classes())


def test_explore_examples():
    G = explore(parse_quiver("acyc(1,1,0)"))
    assert G.finiteness == FINITE
    assert _classes(G) == ["acyc(1,1,0)", "cyc(1,1,1)"]
    G = explore(parse_quiver("acyc(1,sqrt(2),0)"))
    assert _classes(G) == ["acyc(2cos(pi/4),1,0)", "cyc(2cos(pi/4),2cos(pi/4),1)"]
    G = explore(parse_quiver("acyc(1,2cos(2pi/5),0)"))
    assert G.finiteness == FINITE
    assert len(G.sink_source_classes()) == 3
    assert markov_constant(G.seed) == 3 - cyclo(1, 5)


def test_float_seed_certified_infinite():
    Q = Quiver.acyclic(FloatScalar(1.1), FloatScalar(1.1), FloatScalar(0.0))
    G = explore(Q, max_nodes=2000)
    assert G.finiteness == INFINITE_CERTIFIED
    assert G.certificates


def test_cap_exceeded_without_certificate():
    Q = Quiver.cyclic(FloatScalar(1.1), FloatScalar(1.1), FloatScalar(1.1))
    G = explore(Q, max_nodes=5)
    assert G.finiteness in (CAP_EXCEEDED, INFINITE_CERTIFIED)
    assert len(G.nodes) <= 5 + 3


def test_bad_caps():
    with pytest.raises(DomainError) as err:
        explore(Quiver.cyclic(1, 1, 1), max_nodes=0)
    assert err.value.code == "bad_caps"


def test_closure_and_regularity():
    G = explore(parse_quiver("acyc(2cos(pi/5),2cos(2pi/5),0)"))
    keys = {canonical_key(Q): i for i, Q in enumerate(G.nodes)}
    for i, Q in enumerate(G.nodes):
        assert sorted(k for src, k, _ in G.edges if src == i) == [1, 2, 3]
        for k in (1, 2, 3):
            assert canonical_key(mutate(Q, k)) in keys
    C = markov_constant(G.seed)
    assert all(markov_constant(Q) == C for Q in G.nodes)


def test_mutation_cyclic_class_stays_cyclic():
    G = explore(Quiver.cyclic(2, 2, 2))
    assert G.finiteness == FINITE and len(G.nodes) == 1
    assert all(Q.is_cyclic() for Q in G.nodes)


def test_finite_examples():
    result = is_mutation_finite(Quiver.cyclic(2, 2, 2))
    assert (result.status, result.family) == ("Finite", "(2,2,2)")
    x = cyclo(1, 7)
    result = is_mutation_finite(Quiver.cyclic(x, x, 2))
    assert result.status == "Finite"
    assert result.detail == {"family": 2, "n": 7, "acyclic_representative_found": True}
    result = is_mutation_finite(Quiver.acyclic(cyclo(1, 5), cyclo(2, 5), 0))
    assert (result.status, result.family, result.detail["family"]) == ("Finite", "spherical", 3)
    result = is_mutation_finite(Quiver.cyclic(1, 1, cyclo(1, 7)))
    assert result.status == "Infinite"
    assert not result.tolerance_caveat


def test_euclidean_representatives():
    for n in range(3, 12):
        rep = euclidean_acyclic_representative(n)
        assert not rep.is_cyclic()
        assert markov_constant(rep) == 4


def test_table1_examples():
    report = table1(parse_quiver("acyc(1,1,0)"))
    assert report.to_json()["acyclic_classes"] == ["acyc(1,1,0)"]
    assert report.to_json()["cyclic_classes"] == ["cyc(1,1,1)"]
    assert report.markov == 2
    report = table1(parse_quiver("acyc(2cos(pi/5),2cos(2pi/5),0)"))
    assert len(report.acyclic) == 2 and len(report.cyclic) == 2 and report.markov == 3
    report = table1(parse_quiver("acyc(1,2cos(pi/5),0)"))
    assert report.to_json()["cyclic_classes"] == ["cyc(2cos(pi/5),2cos(pi/5),1)",
                                                 "cyc(2cos(pi/5),2cos(pi/5),2cos(pi/5))"]
    assert report.markov == 2 + cyclo(1, 5)
    with pytest.raises(DomainError) as err:
        table1(Quiver.cyclic(2, 2, 2))
    assert err.value.code == "not_spherical_finite"


def test_dot_contract():
    G = explore(parse_quiver("acyc(1,1,0)"))
    text = to_dot(G)
    assert text == to_dot(explore(parse_quiver("acyc(1,1,0)")))
    assert text.count("[label=\"") - text.count("->") == len(G.nodes)
    assert text.count("->") == 3 * len(G.nodes)
    assert text.count("fillcolor") == sum(1 for Q in G.nodes if not Q.is_cyclic())
    G = explore(Quiver.cyclic(2, 2, 2))
    assert to_dot(G).count("->") <= 6


def test_dot_styles_acyclic_subset():
    G = explore(parse_quiver("acyc(1,2cos(pi/5),0)"))
    lines = [line for line in to_dot(G).splitlines() if "[label=" in line and "->" not in line]
    styled = [line for line in lines if "fillcolor" in line]
    assert all(line.split('"')[1].startswith("acyc") for line in styled)
    assert all(line.split('"')[1].startswith("cyc") for line in lines if line not in styled)


def test_json_dump():
    data = explore(parse_quiver("acyc(1,1,0)")).to_json()
    assert set(data) >= {"nodes", "edges", "finiteness", "certificates"}
    assert data["finiteness"] == FINITE
