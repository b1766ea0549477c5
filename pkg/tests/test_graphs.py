"""Graphs, paths, covers and morphisms."""

import pytest

from conftest import (SIX_GRAPHS, graph_a1, graph_loop, graph_null,
                      graph_rose2, graph_toeplitz, graph_vw, graph_vwu)
from gral.errors import GralError, XNotRegular
from gral.graphs import (CohnPair, Graph, GraphMorphism, cohn_cover,
                         compose_morphisms, graph_from_dict, graph_to_dict,
                         is_acyclic, morphism_from_dict, morphism_validate,
                         vertex_classify)


def test_vertex_classify_examples():
    sinks, regular = vertex_classify(graph_a1())
    assert sinks == ("v",) and regular == ()
    sinks, regular = vertex_classify(graph_vw())
    assert sinks == ("w",) and regular == ("v",)
    sinks, regular = vertex_classify(graph_loop())
    assert sinks == () and regular == ("v",)


def test_paths_examples():
    loop = graph_loop()
    assert [p.edges for p in loop.paths(2, "v")] == [("e", "e")]
    rose = graph_rose2()
    assert [p.edges for p in rose.paths(2, "v")] == [
        ("e", "e"), ("e", "f"), ("f", "e"), ("f", "f")]
    assert graph_vw().paths(1, "v") == []


def test_path_count_invariants():
    for make in SIX_GRAPHS.values():
        g = make()
        for n in range(4):
            total = len(g.paths(n))
            assert total == sum(len(g.paths(n, v)) for v in g.vertices)
        for v in g.vertices:
            p0 = g.paths(0, v)
            assert len(p0) == 1 and p0[0].src == v and p0[0].dst == v


def test_acyclic_paths_vanish():
    g = graph_vwu()
    assert is_acyclic(g)
    for n in range(len(g.vertices) + 1, len(g.vertices) + 4):
        assert g.paths(n) == []


def test_cohn_cover_examples():
    cover = cohn_cover(graph_vw(), [])
    assert set(cover.vertices) == {"v", "w", "v'"}
    assert [e.name for e in cover.edges] == ["f"]

    cover = cohn_cover(graph_loop(), [])
    assert set(cover.vertices) == {"v", "v'"}
    assert {(e.name, e.src, e.dst) for e in cover.edges} == {
        ("e", "v", "v"), ("e'", "v", "v'")}

    g = graph_toeplitz()
    assert cohn_cover(g, g.regular) == g


def test_cohn_cover_rejects_sinks():
    with pytest.raises(XNotRegular):
        cohn_cover(graph_vw(), ["w"])


def test_primed_name_collision_is_error():
    g = Graph(["v", "v'"], [("e", "v", "v")])
    with pytest.raises(GralError):
        cohn_cover(g, [])


def test_cohn_pair_rejects_nonregular():
    with pytest.raises(XNotRegular):
        CohnPair(graph_a1(), frozenset({"v"}))


def test_morphism_validate_inclusion():
    m = GraphMorphism.make(CohnPair(graph_a1(), frozenset()),
                           CohnPair(graph_vw(), frozenset({"v"})),
                           {"v": "v"}, {})
    assert morphism_validate(m).valid


def test_morphism_validate_noninjective():
    vw = graph_vw()
    m = GraphMorphism.make(CohnPair(vw, frozenset()), CohnPair(vw, frozenset()),
                           {"v": "v", "w": "v"}, {"f": "f"})
    verdict = morphism_validate(m)
    assert not verdict.valid and verdict.failed_condition == "a"


def test_morphism_validate_condition_b_and_c():
    vw, vwu = graph_vw(), graph_vwu()
    # v in Y but psi(v) outside X
    m = GraphMorphism.make(CohnPair(vw, frozenset({"v"})),
                           CohnPair(vwu, frozenset({"w"})),
                           {"v": "v", "w": "w"}, {"f": "f"})
    assert morphism_validate(m).failed_condition == "b"
    # out-edges not bijective: map loop vertex into the rose
    loop, rose = graph_loop(), graph_rose2()
    m2 = GraphMorphism.make(CohnPair(loop, frozenset({"v"})),
                            CohnPair(rose, frozenset({"v"})),
                            {"v": "v"}, {"e": "e"})
    assert morphism_validate(m2).failed_condition == "c"


def test_compose_morphisms():
    a1, vw, vwu = graph_a1(), graph_vw(), graph_vwu()
    m1 = GraphMorphism.make(CohnPair(a1, frozenset()),
                            CohnPair(vw, frozenset({"v"})), {"v": "v"}, {})
    m2 = GraphMorphism.make(CohnPair(vw, frozenset({"v"})),
                            CohnPair(vwu, frozenset({"v", "w"})),
                            {"v": "v", "w": "w"}, {"f": "f"})
    comp = compose_morphisms(m2, m1)
    assert comp.vertex_image("v") == "v"
    assert morphism_validate(comp).valid


def test_is_acyclic_examples():
    assert is_acyclic(graph_vw())
    assert not is_acyclic(graph_loop())
    two = Graph(["v", "w"], [("e", "v", "w"), ("f", "w", "v")])
    assert not is_acyclic(two)
    assert is_acyclic(graph_null())


def test_graph_json_roundtrip():
    obj = {"vertices": ["v", "w"],
           "edges": [{"name": "f", "src": "v", "dst": "w"}],
           "x": []}
    pair = graph_from_dict(obj)
    assert pair.x == frozenset()
    back = graph_to_dict(pair)
    assert back["x"] == []
    # omitted x means Leavitt
    pair2 = graph_from_dict({"vertices": ["v", "w"],
                             "edges": [{"name": "f", "src": "v", "dst": "w"}]})
    assert pair2.x == frozenset({"v"})
    assert "x" not in graph_to_dict(pair2)


def test_morphism_json():
    a1, vw = graph_a1(), graph_vw()
    m = morphism_from_dict(
        {"vmap": {"v": "v"}, "emap": {}, "sourceX": [], "targetX": ["v"]},
        CohnPair(a1, None), CohnPair(vw, None))
    assert morphism_validate(m).valid
    assert m.source.x == frozenset()


def test_duplicate_names_rejected():
    with pytest.raises(GralError):
        Graph(["v", "v"], [])
    with pytest.raises(GralError):
        Graph(["v"], [("v", "v", "v")])
    with pytest.raises(GralError):
        Graph(["v"], [("e", "v", "u")])
