"""Local units, idempotent generators and graded regularity witnesses."""

import random

import pytest

from conftest import (graph_a1, graph_loop, graph_null, graph_rose2,
                      graph_toeplitz, graph_vw, graph_vwu, random_element)
from gral.coeffring import ModularRing
from gral.errors import (CoefficientRingNotVNR, GralError, ZeroElement)
from gral.pathalg import (AlgebraElement, AlgebraSpec, BlockStructure,
                          MatricialImage, format_element, matricial_decompose,
                          monomial_element, reduced_monomials, vertex_element,
                          word_element)
from gral.regularity import (graded_vnr_verdict, graded_witness_constructive,
                             graded_witness_oracle, idempotent_generator,
                             local_unit_left, local_units, sample_homogeneous)


# -- local units ---------------------------------------------------------------


def test_local_unit_single_monomial(z2):
    spec = AlgebraSpec.leavitt(graph_loop(), z2)
    x = word_element(spec, ["e", "e"])
    unit = local_unit_left(x)
    assert unit.epsilon * x == x
    assert len(unit.pairs) == 1
    a, b = unit.pairs[0]
    assert a == x and a.degree() == 2 and b.degree() == -2


def test_local_unit_ghost_edge(z2):
    spec = AlgebraSpec.leavitt(graph_vw(), z2)
    fs = word_element(spec, ["f*"])
    unit = local_unit_left(fs)
    assert unit.epsilon == vertex_element(spec, "w")
    (a, b), = unit.pairs
    assert a == fs and b == word_element(spec, ["f"])


def test_local_unit_vertex(z2):
    spec = AlgebraSpec.leavitt(graph_vw(), z2)
    v = vertex_element(spec, "v")
    assert local_unit_left(v).epsilon == v


def test_local_unit_component_membership(z6):
    spec = AlgebraSpec.leavitt(graph_rose2(), z6)
    rng = random.Random(31)
    for _ in range(50):
        d = rng.randint(-2, 2)
        x = random_element(spec, rng, degree=d)
        if x.is_zero:
            continue
        pair = local_units(x)
        assert pair.left.epsilon * x == x
        assert x * pair.right.epsilon == x
        for a, b in pair.left.pairs:
            assert a.is_zero or a.degree() == d
            assert b.is_zero or b.degree() == -d
        for a, b in pair.right.pairs:
            assert a.is_zero or a.degree() == -d
            assert b.is_zero or b.degree() == d


def test_local_unit_zero_rejected(z2):
    spec = AlgebraSpec.leavitt(graph_loop(), z2)
    with pytest.raises(ZeroElement):
        local_unit_left(AlgebraElement.zero(spec))


# -- idempotent generators -------------------------------------------------------


def scalar_image(spec, level, value):
    x = vertex_element(spec, "v").scale(value)
    return matricial_decompose(x, level)


def test_idempotent_generator_z6_scalar():
    spec = AlgebraSpec.leavitt(graph_a1(), ModularRing(6))
    structure = BlockStructure(spec, 0)
    c = scalar_image(spec, 0, 2)
    y, us = idempotent_generator(structure, [c])
    assert y.block((0, "v")) == ((4,),)
    assert us[0].block((0, "v")) == ((2,),)
    # brute-force check of the left ideal {0, 2, 4}
    assert {(r * 2) % 6 for r in range(6)} == {0, 2, 4}
    assert {(r * 4) % 6 for r in range(6)} == {0, 2, 4}


def test_idempotent_generator_z2_unit():
    spec = AlgebraSpec.leavitt(graph_a1(), ModularRing(2))
    structure = BlockStructure(spec, 0)
    c = scalar_image(spec, 0, 1)
    y, us = idempotent_generator(structure, [c])
    assert y.block((0, "v")) == ((1,),)


def test_idempotent_generator_matrix_units(z2):
    # M_2(Z/2) realized as the level-1 block of the rose
    spec = AlgebraSpec.leavitt(graph_rose2(), z2)
    structure = BlockStructure(spec, 1)

    def unit(i, j):
        img = {k: [list(r) for r in m] for k, m in
               MatricialImage.zeros(structure).mats.items()}
        img[(1, "v")][i][j] = 1
        return MatricialImage(structure, {k: tuple(tuple(r) for r in m)
                                          for k, m in img.items()})

    e11, e21 = unit(0, 0), unit(1, 0)
    y, us = idempotent_generator(structure, [e11, e21])
    assert y == e11
    assert y * y == y
    assert e11 * y == e11 and e21 * y == e21
    acc = MatricialImage.zeros(structure)
    for u, c in zip(us, [e11, e21]):
        acc = acc + u * c
    assert acc == y


def test_idempotent_generator_refuses_non_vnr():
    spec = AlgebraSpec.leavitt(graph_a1(), ModularRing(4))
    structure = BlockStructure(spec, 0)
    c = scalar_image(spec, 0, 2)
    with pytest.raises(CoefficientRingNotVNR):
        idempotent_generator(structure, [c])


def test_idempotent_generator_random_invariants(z6):
    spec = AlgebraSpec.leavitt(graph_toeplitz(), z6)
    structure = BlockStructure(spec, 2)
    rng = random.Random(41)
    basis = reduced_monomials(spec, degree=0, max_len=2)
    for _ in range(20):
        cs = []
        for _ in range(rng.randint(1, 3)):
            monos = rng.sample(basis, rng.randint(1, 3))
            x = AlgebraElement.make(spec, {m: rng.randrange(1, 6) for m in monos})
            cs.append(matricial_decompose(x, 2))
        y, us = idempotent_generator(structure, cs)
        assert y * y == y
        for c in cs:
            assert c * y == c
        acc = MatricialImage.zeros(structure)
        for u, c in zip(us, cs):
            acc = acc + u * c
        assert acc == y


# -- constructive witnesses --------------------------------------------------------


def test_constructive_witness_loop_edge(z2):
    spec = AlgebraSpec.leavitt(graph_loop(), z2)
    e = word_element(spec, ["e"])
    cert = graded_witness_constructive(e)
    assert cert.witness == word_element(spec, ["e*"])
    assert cert.verified and cert.method == "constructive"


def test_constructive_witness_2f_z6():
    spec = AlgebraSpec.leavitt(graph_vw(), ModularRing(6))
    x = word_element(spec, ["f"], coeff=2)
    cert = graded_witness_constructive(x)
    assert cert.witness == word_element(spec, ["f*"], coeff=2)


def test_constructive_inhomogeneous_rejected(z2):
    spec = AlgebraSpec.leavitt(graph_loop(), z2)
    x = vertex_element(spec, "v") + word_element(spec, ["e"])
    with pytest.raises(GralError):
        graded_witness_constructive(x)


def test_constructive_refuses_non_vnr():
    spec = AlgebraSpec.leavitt(graph_loop(), ModularRing(4))
    with pytest.raises(CoefficientRingNotVNR):
        graded_witness_constructive(word_element(spec, ["e"]))


def test_reflection_consistency(z6):
    spec = AlgebraSpec.leavitt(graph_toeplitz(), z6)
    rng = random.Random(43)
    for _ in range(30):
        x = random_element(spec, rng, degree=-rng.randint(1, 2))
        if x.is_zero:
            continue
        cert = graded_witness_constructive(x)
        mirror = graded_witness_constructive(x.involution())
        assert cert.witness == mirror.witness.involution()
        assert x * cert.witness * x == x


def test_constructive_random_hammer(z6):
    spec = AlgebraSpec.leavitt(graph_rose2(), z6)
    rng = random.Random(47)
    for _ in range(60):
        x = random_element(spec, rng, max_len=2)
        if x.is_zero or not x.is_homogeneous():
            continue
        cert = graded_witness_constructive(x)
        assert x * cert.witness * x == x


def test_constructive_branching_graph_hammer(z6):
    # loop + branch + two sinks: exercises mixed sink/level expansions
    from gral.graphs import Graph
    g = Graph(["a", "b", "c", "d"],
              [("e", "a", "a"), ("f", "a", "b"), ("g", "b", "c"),
               ("h", "b", "d"), ("k", "a", "d")])
    spec = AlgebraSpec.leavitt(g, z6)
    rng = random.Random(53)
    for _ in range(60):
        d = rng.randint(-2, 2)
        x = random_element(spec, rng, degree=d, max_len=2)
        if x.is_zero:
            continue
        cert = graded_witness_constructive(x)
        assert x * cert.witness * x == x


def random_graph(rng):
    nv = rng.randint(1, 4)
    vertices = [f"v{i}" for i in range(nv)]
    edges = []
    for j in range(rng.randint(0, 6)):
        edges.append((f"e{j}", rng.choice(vertices), rng.choice(vertices)))
    from gral.graphs import Graph
    return Graph(vertices, edges)


def test_constructive_random_graphs_stress(z6):
    from gral.coeffring import ModularRing, ProductRing
    rings = [ModularRing(2), ModularRing(3), z6,
             ProductRing([ModularRing(2), ModularRing(3)])]
    rng = random.Random(2024)
    graphs_tried = 0
    witnesses = 0
    while graphs_tried < 20:
        g = random_graph(rng)
        graphs_tried += 1
        spec = AlgebraSpec.leavitt(g, rings[graphs_tried % len(rings)])
        for _ in range(15):
            d = rng.randint(-2, 2)
            x = random_element(spec, rng, degree=d, max_len=2)
            if x.is_zero:
                continue
            cert = graded_witness_constructive(x)
            assert x * cert.witness * x == x
            witnesses += 1
    assert witnesses > 100


def test_verdict_inconclusive_on_cyclic_non_vnr():
    # bounded absences on cyclic graphs are honestly non-exact
    spec = AlgebraSpec.leavitt(graph_loop(), ModularRing(4))
    report = graded_vnr_verdict(spec, 1, 1, samples=0, seed=0)
    assert report.overall == "inconclusive-at-bounds"
    assert any(c.absent and not c.absence_exact for c in report.certificates)


# -- oracle --------------------------------------------------------------------


def test_oracle_exact_absence_2v():
    spec = AlgebraSpec.leavitt(graph_a1(), ModularRing(4))
    cert = graded_witness_oracle(word_element(spec, ["v"], coeff=2), 3)
    assert cert.absent and cert.absence_exact and cert.verified
    assert "degree 0" in cert.searched


def test_oracle_witness_f(z2):
    spec = AlgebraSpec.leavitt(graph_vw(), z2)
    cert = graded_witness_oracle(word_element(spec, ["f"]), 1)
    assert cert.witness == word_element(spec, ["f*"])


def test_oracle_zero_element(z2):
    spec = AlgebraSpec.leavitt(graph_vw(), z2)
    cert = graded_witness_oracle(AlgebraElement.zero(spec), 1)
    assert cert.witness.is_zero and cert.verified


def test_oracle_bounded_absence_not_exact_on_cycles():
    spec = AlgebraSpec.leavitt(graph_loop(), ModularRing(4))
    cert = graded_witness_oracle(word_element(spec, ["e"], coeff=2), 2)
    if cert.absent:
        assert not cert.absence_exact


def test_oracle_agrees_with_constructive_on_acyclic():
    for make in (graph_a1, graph_vw, graph_vwu):
        for n in (2, 6):
            spec = AlgebraSpec.leavitt(make(), ModularRing(n))
            bound = spec.graph.longest_path_length()
            for d in range(-2, 3):
                for m in reduced_monomials(spec, degree=d, max_len=bound):
                    x = monomial_element(spec, m)
                    oracle = graded_witness_oracle(x, bound)
                    constructive = graded_witness_constructive(x)
                    assert not oracle.absent and not constructive.absent
                    assert x * oracle.witness * x == x


# -- verdict --------------------------------------------------------------------


def test_verdict_counterexample_z4_a1():
    spec = AlgebraSpec.leavitt(graph_a1(), ModularRing(4))
    report = graded_vnr_verdict(spec, 3, 3, samples=5, seed=0)
    assert report.overall == "counterexample-found"
    assert format_element(report.counterexample.element) == "2*v"


def test_verdict_null_graph(z2):
    spec = AlgebraSpec.leavitt(graph_null(), z2)
    report = graded_vnr_verdict(spec, 3, 3)
    assert report.overall == "verified-at-bounds"
    assert report.certificates == ()


def test_verdict_toeplitz_z6():
    spec = AlgebraSpec.leavitt(graph_toeplitz(), ModularRing(6))
    report = graded_vnr_verdict(spec, 2, 2, samples=30, seed=3)
    assert report.overall == "verified-at-bounds"
    assert all(c.verified for c in report.certificates)


def test_oracle_over_product_ring(z2xz2):
    spec = AlgebraSpec.leavitt(graph_vw(), z2xz2)
    f = word_element(spec, ["f"])
    cert = graded_witness_oracle(f, 1)
    assert not cert.absent and f * cert.witness * f == f
    x = f.scale((1, 0))
    cert2 = graded_witness_constructive(x)
    assert x * cert2.witness * x == x


def test_verdict_method_forced_oracle(z2):
    spec = AlgebraSpec.leavitt(graph_vw(), z2)
    report = graded_vnr_verdict(spec, 1, 1, samples=5, seed=0, method="oracle")
    assert report.method == "oracle"
    assert report.overall == "verified-at-bounds"


def test_sample_homogeneous_deterministic(z6):
    spec = AlgebraSpec.leavitt(graph_rose2(), z6)
    a = sample_homogeneous(spec, 2, 2, 10, random.Random(9))
    b = sample_homogeneous(spec, 2, 2, 10, random.Random(9))
    assert a == b


def test_certificate_text_stable(z2):
    spec = AlgebraSpec.leavitt(graph_vw(), z2)
    cert = graded_witness_oracle(word_element(spec, ["f"]), 1)
    text = cert.to_text(format_element)
    assert text == ("element=f degree=1 method=oracle witness=f* "
                    "bounds=size=1 verified=true")
