"""Labelled graphs, relative ranges, and generated set families."""
import pytest

from corrkit.errors import BudgetError, UnsupportedSpaceError
from corrkit.labelled import (
    EdgeFamily,
    LabelledGraph,
    build_space,
    concrete_graph,
    desingularize,
    is_left_resolving,
    is_weakly_left_resolving,
    label_set,
    relative_range,
    sink_set,
    truncate_space,
)
from corrkit.setexpr import atoms, tail
from corrkit.spheres import SphereConfig, build_En_graph, build_En_space


@pytest.fixture(scope="module")
def e2():
    cfg = SphereConfig(2)
    return build_En_graph(cfg), build_En_space(cfg)


def test_relative_ranges_frozen(e2):
    g, _ = e2
    a1 = tail("v", 1)
    assert relative_range(g, a1, "g") == tail("v", 2)
    assert relative_range(g, a1, "h") == atoms("w1")
    assert relative_range(g, atoms("u1"), "f1") == atoms("w1", "w2").union(tail("v", 1))
    assert relative_range(g, atoms("w1"), "g").is_empty()


def test_label_sets(e2):
    g, _ = e2
    labs, finite = label_set(g, tail("v", 1))
    assert labs == frozenset({"g", "h"}) and finite
    labs, finite = label_set(g, atoms("w1"))
    assert labs == frozenset() and finite
    assert sink_set(g) == atoms("w1")


def test_resolving_properties(e2):
    g, sp = e2
    ok, witness = is_left_resolving(g)
    assert not ok
    assert witness == ("w1", "h")
    ok, _ = is_weakly_left_resolving(sp)
    assert ok


def test_lattice_membership(e2):
    _, sp = e2
    assert sp.in_lattice(tail("v", 1))
    assert sp.in_lattice(atoms("u1"))
    assert not sp.in_lattice(atoms(("v", 2)))


def test_budget_exhaustion(e2):
    g, _ = e2
    with pytest.raises(BudgetError):
        build_space(g, (), budget=2)


def test_truncation(e2):
    _, sp = e2
    t = truncate_space(sp, 3)
    named = {v for v in t.graph.named_vertices}
    assert named == {"u1", "w1", "w2", ("v", 1), ("v", 2), ("v", 3)}
    assert not t.graph.families
    assert len(t.core) == 7
    # every truncated core set is the clip of a symbolic one
    clips = {c.truncate(3) for c in sp.core if c.truncate(3)}
    assert {frozenset(c.atoms) for c in t.core} == clips


def test_truncation_needs_an_index():
    fam = EdgeFamily("k", 1, ("const", "a"), ("const", "b"), ("const", "k"))
    g = LabelledGraph(frozenset({"a", "b"}), frozenset(), (), (fam,))
    sp = build_space(g)
    with pytest.raises(UnsupportedSpaceError):
        truncate_space(sp, 3)


def test_desingularize_removes_sinks(e2):
    g, _ = e2
    g2, new_bases = desingularize(g)
    assert new_bases == ["w1@d"]
    assert sink_set(g2).is_empty()
    labs, _ = label_set(g2, atoms("w1"))
    assert labs


def test_concrete_graph_roundtrip():
    g = concrete_graph(
        {"x", "y"},
        [("e1", "x", "y", "a"), ("e2", "x", "x", "b")],
    )
    assert relative_range(g, atoms("x"), "a") == atoms("y")
    assert relative_range(g, atoms("x"), "b") == atoms("x")
    sp = build_space(g)
    assert sp.in_lattice(atoms("y"))
