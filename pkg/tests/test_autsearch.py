"""Equitable refinement, the IR search, certificates, and isomorphism."""

import random

import pytest

from arrgraph.autsearch import (automorphism_group, are_isomorphic,
                                brute_force_automorphism_count,
                                canonical_certificate, common_neighborhood,
                                equitable_refinement, unit_partition)
from arrgraph.config import Config
from arrgraph.errors import BudgetError, ValidationError
from arrgraph.graphs import (build_arrangement_graph, build_cayley_graph,
                             candidate_aut_generators, is_automorphism,
                             rank_tuple)
from arrgraph.perms import Permutation, connection_set

SEED = 20240811


def shuffled(graph, rng):
    imgs = list(range(graph.vertex_count))
    rng.shuffle(imgs)
    return graph.relabeled(Permutation(imgs))


# -- refinement ---------------------------------------------------------------


def test_refinement_regular_graph_unchanged():
    g = build_arrangement_graph(4, 2, 2)
    assert equitable_refinement(g, unit_partition(g)) == [list(range(12))]


def test_refinement_path_of_three():
    from arrgraph.graphs import Graph
    p3 = Graph([(0,), (1,), (2,)], [(0, 1), (1, 2)])
    cells = equitable_refinement(p3, unit_partition(p3))
    assert sorted(map(sorted, cells)) == [[0, 2], [1]]


def test_refinement_idempotent(corpus):
    for g in corpus.values():
        once = equitable_refinement(g, unit_partition(g))
        assert equitable_refinement(g, once) == once


def test_refinement_is_equitable(corpus):
    for g in corpus.values():
        cells = equitable_refinement(g, unit_partition(g))
        for cell in cells:
            for other in cells:
                mask = 0
                for v in other:
                    mask |= 1 << v
                counts = {(g.adjacency[v] & mask).bit_count() for v in cell}
                assert len(counts) == 1


def test_refinement_rejects_non_partition():
    g = build_arrangement_graph(4, 2, 2)
    with pytest.raises(ValidationError):
        equitable_refinement(g, [[0, 1], [1, 2]])


# -- automorphism groups ------------------------------------------------------


def test_aut_k4(corpus):
    assert automorphism_group(corpus["K4"]).order == 24


def test_aut_a422():
    assert automorphism_group(build_arrangement_graph(4, 2, 2)).order == 48


def test_aut_cay_s4_transpositions():
    g = build_cayley_graph(4, connection_set(4, "transpositions"))
    assert automorphism_group(g).order == 1152


def test_aut_order_matches_brute_force(corpus):
    for name, g in corpus.items():
        if g.vertex_count <= 8:
            assert automorphism_group(g).order == brute_force_automorphism_count(g), name


def test_aut_petersen(corpus):
    # |Aut(Petersen)| = 120, a classical value
    assert automorphism_group(corpus["petersen"]).order == 120


def test_aut_generators_are_automorphisms(corpus):
    for g in corpus.values():
        result = automorphism_group(g)
        assert all(is_automorphism(g, f) for f in result.generators)
        assert result.chain.order() == result.order


def test_aut_deterministic(corpus):
    for g in corpus.values():
        r1 = automorphism_group(g)
        r2 = automorphism_group(g)
        assert r1.generators == r2.generators
        assert r1.certificate == r2.certificate
        assert r1.canonical_labeling == r2.canonical_labeling


def test_node_budget_exceeded():
    g = build_arrangement_graph(4, 2, 2)
    with pytest.raises(BudgetError):
        automorphism_group(g, Config(node_budget=3))


# -- certificates and isomorphism ---------------------------------------------


def test_certificate_relabeling_invariance(corpus):
    rng = random.Random(SEED)
    for g in corpus.values():
        cert = canonical_certificate(g)
        for _ in range(5):
            assert canonical_certificate(shuffled(g, rng)) == cert


def test_certificate_distinguishes_k4_from_c4(corpus):
    assert canonical_certificate(corpus["K4"]) != canonical_certificate(corpus["C4"])


def test_cay_s4_derangements_isomorphic_a444():
    cay = build_cayley_graph(4, connection_set(4, "derangements"))
    arr = build_arrangement_graph(4, 4, 4)
    assert canonical_certificate(cay) == canonical_certificate(arr)


def test_are_isomorphic_with_witness():
    g = build_arrangement_graph(4, 2, 2)
    rng = random.Random(SEED + 1)
    h = shuffled(g, rng)
    ok, witness = are_isomorphic(g, h)
    assert ok
    for u, v in g.edges():
        assert h.has_edge(witness(u), witness(v))


def test_are_isomorphic_cay_f1_a443():
    cay = build_cayley_graph(4, connection_set(4, "fixed", 1))
    arr = build_arrangement_graph(4, 4, 3)
    ok, witness = are_isomorphic(cay, arr)
    assert ok and witness is not None


def test_are_isomorphic_negative():
    ok, witness = are_isomorphic(build_arrangement_graph(4, 2, 1),
                                 build_arrangement_graph(4, 2, 2))
    assert not ok and witness is None


# -- common neighborhoods -----------------------------------------------------


def test_common_neighborhood_single_vertex():
    g = build_arrangement_graph(4, 2, 2)
    assert common_neighborhood(g, [0]) == set(g.neighbors(0))


def test_common_neighborhood_triangle(corpus):
    k4 = corpus["K4"]
    assert common_neighborhood(k4, [0, 1]) == {2, 3}


def test_common_neighborhood_empty_set_is_all():
    g = build_arrangement_graph(4, 2, 1)
    assert common_neighborhood(g, []) == set(range(12))


def test_common_neighborhood_a422_brute_force():
    g = build_arrangement_graph(4, 2, 2)
    u = rank_tuple((0, 1), 4, 2)  # [1,2]
    v = rank_tuple((1, 0), 4, 2)  # [2,1]
    expected = set(g.neighbors(u)) & set(g.neighbors(v))
    assert common_neighborhood(g, [u, v]) == expected
    # independent re-derivation straight from the adjacency rule
    direct = {w for w in range(12)
              if all(a != b for a, b in zip(g.labels[w], (0, 1)))
              and all(a != b for a, b in zip(g.labels[w], (1, 0)))}
    assert common_neighborhood(g, [u, v]) == direct


def test_neighborhood_covariance(corpus):
    # N(S)^g = N(S^g) for automorphism generators and random subsets
    rng = random.Random(SEED + 2)
    for g in corpus.values():
        result = automorphism_group(g)
        for f in result.generators:
            for _ in range(20):
                size = rng.randint(0, min(4, g.vertex_count))
                s = rng.sample(range(g.vertex_count), size)
                image = {f(v) for v in common_neighborhood(g, s)}
                assert image == common_neighborhood(g, [f(v) for v in s])


# -- containment of the explicit generators -----------------------------------


@pytest.mark.parametrize("n,k,r", [(4, 2, 2), (4, 3, 3), (4, 4, 4), (4, 4, 2)])
def test_candidate_generators_sift_into_aut(n, k, r):
    g = build_arrangement_graph(n, k, r)
    aut = automorphism_group(g)
    for cand in candidate_aut_generators(n, k, r, g):
        assert aut.chain.contains(cand)
