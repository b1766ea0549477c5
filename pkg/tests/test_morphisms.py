"""Cohn functor, Cohn-to-Leavitt isomorphism, chain verification."""

import random

import pytest

from conftest import (graph_a1, graph_loop, graph_vw, graph_vwu,
                      random_element)
from gral.coeffring import ModularRing
from gral.errors import GralError, RelationViolation
from gral.graphs import CohnPair, GraphMorphism
from gral.morphisms import (AlgebraHom, chain_colimit_check, cohn_local_units,
                            cohn_to_leavitt, compose_homs, hom_apply,
                            hom_preimage, identity_hom, induced_hom,
                            verify_graded_iso)
from gral.pathalg import (AlgebraElement, AlgebraSpec, edge_element,
                          format_element, vertex_element, word_element)


def inclusion_a1_vw(ring):
    return GraphMorphism.make(CohnPair(graph_a1(), frozenset()),
                              CohnPair(graph_vw(), frozenset({"v"})),
                              {"v": "v"}, {})


def inclusion_vw_vwu(ring):
    return GraphMorphism.make(CohnPair(graph_vw(), frozenset({"v"})),
                              CohnPair(graph_vwu(), frozenset({"v", "w"})),
                              {"v": "v", "w": "w"}, {"f": "f"})


# -- induced homs ---------------------------------------------------------------


def test_induced_hom_inclusion(z2):
    h = induced_hom(inclusion_a1_vw(z2), z2)
    assert format_element(h.vertex_image("v")) == "v"


def test_induced_hom_identity(z2):
    spec = AlgebraSpec.leavitt(graph_vw(), z2)
    pair = CohnPair(graph_vw(), None)
    ident = GraphMorphism.make(pair, pair,
                               {v: v for v in graph_vw().vertices}, {"f": "f"})
    h = induced_hom(ident, z2)
    assert h.vmap == identity_hom(spec).vmap
    assert h.emap == identity_hom(spec).emap


def test_induced_hom_rejects_invalid(z2):
    vw = graph_vw()
    collapse = GraphMorphism.make(CohnPair(vw, frozenset()), CohnPair(vw, frozenset()),
                                  {"v": "v", "w": "v"}, {"f": "f"})
    with pytest.raises(GralError):
        induced_hom(collapse, z2)


def test_hom_validation_catches_broken_images(z2):
    spec = AlgebraSpec.leavitt(graph_vw(), z2)
    with pytest.raises(RelationViolation) as err:
        AlgebraHom.make(spec, spec,
                        {"v": vertex_element(spec, "v"),
                         "w": vertex_element(spec, "v")},
                        {"f": edge_element(spec, "f")})
    assert err.value.relation in ("(i)", "(ii)", "(iii)", "(iv)", "(v)")


# -- hom_apply --------------------------------------------------------------------


def test_hom_apply_identity_and_laws(z6):
    spec = AlgebraSpec.leavitt(graph_loop(), z6)
    h = identity_hom(spec)
    rng = random.Random(61)
    for _ in range(100):
        x = random_element(spec, rng)
        y = random_element(spec, rng)
        assert hom_apply(h, x) == x
        assert hom_apply(h, x * y) == hom_apply(h, x) * hom_apply(h, y)
        assert hom_apply(h, x + y) == hom_apply(h, x) + hom_apply(h, y)


def test_hom_apply_preserves_degree(z2):
    phi = cohn_to_leavitt(CohnPair(graph_loop(), frozenset()), z2)
    rng = random.Random(67)
    for _ in range(60):
        d = rng.randint(-2, 2)
        x = random_element(AlgebraSpec.cohn(graph_loop(), z2, []), rng, degree=d)
        if x.is_zero:
            continue
        assert hom_apply(phi, x).degree() == d


# -- cohn to leavitt -----------------------------------------------------------------


def test_cohn_to_leavitt_images(z2):
    phi = cohn_to_leavitt(CohnPair(graph_vw(), frozenset()), z2)
    assert format_element(phi.vertex_image("v")) == "v + v'"
    assert format_element(phi.edge_image("f")) == "f"
    phi_loop = cohn_to_leavitt(CohnPair(graph_loop(), frozenset()), z2)
    assert format_element(phi_loop.edge_image("e")) == "e + e'"


def test_cohn_to_leavitt_identity_when_x_regular(z2):
    phi = cohn_to_leavitt(CohnPair(graph_vw(), None), z2)
    assert format_element(phi.vertex_image("v")) == "v"
    assert phi.source.graph == phi.target.graph


def test_relation_v_images_vanish(z2):
    # at X-vertices the relation (v) sum maps to zero in the target
    phi = cohn_to_leavitt(CohnPair(graph_vwu(), frozenset({"v"})), z2)
    src = phi.source
    lhs = phi.vertex_image("v")
    rhs = hom_apply(phi, word_element(src, ["f", "f*"]))
    assert lhs == rhs


# -- graded isomorphism ----------------------------------------------------------------


def test_iso_vw_rank_five(z2):
    phi = cohn_to_leavitt(CohnPair(graph_vw(), frozenset()), z2)
    verdict = verify_graded_iso(phi, 2, 2)
    assert verdict.status == "holds-exactly"
    assert verdict.total_source_rank() == 5
    assert verdict.total_target_rank() == 5


def test_iso_identity(z2):
    spec = AlgebraSpec.leavitt(graph_vwu(), z2)
    assert verify_graded_iso(identity_hom(spec), 2, 3).holds


def test_iso_over_zero_divisors():
    phi = cohn_to_leavitt(CohnPair(graph_vw(), frozenset()), ModularRing(4))
    assert verify_graded_iso(phi, 2, 2).holds


def test_iso_broken_inclusion_fails(z2):
    h = induced_hom(inclusion_a1_vw(z2), z2)
    verdict = verify_graded_iso(h, 1, 1)
    assert verdict.status == "fails"
    assert "unhit target element" in verdict.witness


def test_iso_cyclic_at_bound(z2):
    phi = cohn_to_leavitt(CohnPair(graph_loop(), frozenset()), z2)
    verdict = verify_graded_iso(phi, 2, 2)
    assert verdict.status == "holds-at-bound"


def test_hom_preimage_roundtrip(z2):
    phi = cohn_to_leavitt(CohnPair(graph_vw(), frozenset()), z2)
    rng = random.Random(71)
    for _ in range(40):
        x = random_element(phi.source, rng, max_len=1)
        if not x.is_homogeneous():
            continue
        y = hom_apply(phi, x)
        back = hom_preimage(phi, y, 1)
        assert back is not None and hom_apply(phi, back) == y


# -- transported local units --------------------------------------------------------------


def test_cohn_local_units_transport(z2):
    spec = AlgebraSpec.cohn(graph_vw(), z2, [])
    for word in (["f"], ["f*"], ["f", "f*"], ["v"]):
        x = word_element(spec, word)
        pair = cohn_local_units(x)
        assert pair.left.epsilon * x == x
        assert x * pair.right.epsilon == x
        acc = AlgebraElement.zero(spec)
        for a, b in pair.left.pairs:
            acc = acc + a * b
        assert acc == pair.left.epsilon


# -- chains ---------------------------------------------------------------------------------


def test_chain_three_objects(z2):
    verdict = chain_colimit_check([inclusion_a1_vw(z2), inclusion_vw_vwu(z2)], z2)
    assert verdict.commutes


def test_chain_single_object(z2):
    assert chain_colimit_check([], z2).commutes


def test_chain_mismatched_composite_named(z2):
    bad = GraphMorphism.make(CohnPair(graph_a1(), frozenset()),
                             CohnPair(graph_vwu(), frozenset({"v", "w"})),
                             {"v": "w"}, {})
    verdict = chain_colimit_check(
        [inclusion_a1_vw(z2), inclusion_vw_vwu(z2)], z2,
        claimed_composites={(0, 2): bad})
    assert not verdict.commutes
    assert "generator v" in verdict.detail


def test_functoriality_on_composites(z6):
    m1, m2 = inclusion_a1_vw(z6), inclusion_vw_vwu(z6)
    from gral.graphs import compose_morphisms
    h1 = induced_hom(m1, z6)
    h2 = induced_hom(m2, z6)
    direct = induced_hom(compose_morphisms(m2, m1), z6)
    composed = compose_homs(h2, h1)
    assert direct.vmap == composed.vmap
    assert direct.emap == composed.emap
    assert direct.gmap == composed.gmap
