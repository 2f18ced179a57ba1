"""Permutation arithmetic, connection sets, and stabilizer chains."""

import itertools
import math
import random

import pytest

from arrgraph.errors import BudgetError, ValidationError
from arrgraph.perms import (ConnectionSet, Permutation, brute_force_closure,
                            build_stabilizer_chain, connection_set, cycle,
                            enumerate_group, group_order,
                            symmetric_group_generators, transposition)

SEED = 20240811


def P1(*one_based):
    return Permutation.from_one_based(one_based)


def random_perm(rng, degree):
    imgs = list(range(degree))
    rng.shuffle(imgs)
    return Permutation(imgs)


# -- composition and inversion ------------------------------------------------


def test_compose_hand_example():
    assert P1(2, 1, 3).compose(P1(1, 3, 2)) == P1(3, 1, 2)


def test_compose_identity_and_inverse():
    rng = random.Random(SEED)
    for _ in range(50):
        p = random_perm(rng, 6)
        ident = Permutation.identity(6)
        assert p.compose(ident) == p
        assert ident.compose(p) == p
        assert p.compose(p.inverse()) == ident
        assert p.inverse().compose(p) == ident


def test_compose_is_left_to_right():
    p, q = P1(2, 1, 3), P1(1, 3, 2)
    for i in range(3):
        assert p.compose(q)(i) == q(p(i))


def test_compose_degree_mismatch():
    with pytest.raises(ValidationError):
        P1(2, 1).compose(P1(2, 1, 3))


def test_compose_associativity_random():
    rng = random.Random(SEED + 1)
    for _ in range(200):
        d = rng.randint(1, 8)
        p, q, r = (random_perm(rng, d) for _ in range(3))
        assert p.compose(q).compose(r) == p.compose(q.compose(r))


def test_inverse_examples():
    assert P1(2, 3, 1).inverse() == P1(3, 1, 2)
    assert Permutation.identity(5).inverse() == Permutation.identity(5)
    t = transposition(4, 1, 3)
    assert t.inverse() == t


def test_inverse_is_involution_random():
    rng = random.Random(SEED + 2)
    for _ in range(100):
        p = random_perm(rng, rng.randint(1, 9))
        assert p.inverse().inverse() == p


def test_not_a_permutation_rejected():
    for bad in ([0, 0, 1], [1, 2, 3], [0, 2], []):
        with pytest.raises(ValidationError):
            Permutation(bad)


def test_one_based_round_trip():
    p = P1(3, 1, 4, 2)
    assert p.images == (2, 0, 3, 1)
    assert p.to_one_based() == [3, 1, 4, 2]


def test_fixed_point_count():
    assert Permutation.identity(4).fixed_point_count() == 4
    assert P1(2, 1, 3, 4).fixed_point_count() == 2
    assert P1(2, 3, 1, 4).fixed_point_count() == 1


def test_parity_matches_transposition_decomposition():
    # oracle: parity of a product of t transpositions is t mod 2
    rng = random.Random(SEED + 3)
    for _ in range(100):
        d = rng.randint(2, 7)
        t = rng.randint(0, 6)
        p = Permutation.identity(d)
        for _ in range(t):
            a, b = rng.sample(range(d), 2)
            p = p.compose(transposition(d, a, b))
        assert p.parity() == t % 2


# -- connection sets ----------------------------------------------------------


def derangement_count(m):
    # inclusion-exclusion oracle, D_0 = 1
    return sum((-1) ** i * math.factorial(m) // math.factorial(i) for i in range(m + 1))


def test_connection_set_sizes():
    assert len(connection_set(4, "transpositions")) == 6
    assert len(connection_set(4, "derangements")) == 9
    assert len(connection_set(4, "fixed", 1)) == 8


def test_connection_set_defining_predicates():
    for n in range(2, 7):
        t = connection_set(n, "transpositions")
        assert all(p.fixed_point_count() == n - 2 for p in t.elements)
        d = connection_set(n, "derangements")
        assert all(p.fixed_point_count() == 0 for p in d.elements)
        for f in range(0, n - 1):
            fk = connection_set(n, "fixed", f)
            assert all(p.fixed_point_count() == f for p in fk.elements)
            assert {p.inverse() for p in fk.elements} == set(fk.elements)


def test_fixed_coincides_with_named_kinds():
    for n in range(3, 6):
        assert connection_set(n, "fixed", 0).elements == connection_set(n, "derangements").elements
        assert connection_set(n, "fixed", n - 2).elements == connection_set(n, "transpositions").elements


def test_fixed_count_formula():
    # |F_k| = C(n,k) * D_{n-k}, cross-checked by brute-force enumeration
    for n in range(2, 8):
        for k in range(0, n - 1):
            expected = math.comb(n, k) * derangement_count(n - k)
            assert len(connection_set(n, "fixed", k)) == expected


def test_connection_set_rejects_bad_parameters():
    with pytest.raises(ValidationError):
        connection_set(4, "fixed", 3)  # F_{n-1} is empty
    with pytest.raises(ValidationError):
        connection_set(4, "fixed", 4)  # F_n = {identity}
    with pytest.raises(ValidationError):
        connection_set(4, "fixed", -1)
    with pytest.raises(ValidationError):
        connection_set(1, "transpositions")
    with pytest.raises(ValidationError):
        connection_set(4, "involutions")


def test_connection_set_invariants_enforced():
    with pytest.raises(ValidationError):
        ConnectionSet(3, "transpositions", None,
                      frozenset([Permutation.identity(3)]))
    with pytest.raises(ValidationError):
        # a lone 3-cycle is not inverse-closed
        ConnectionSet(3, "derangements", None, frozenset([P1(2, 3, 1)]))


# -- stabilizer chains --------------------------------------------------------


def test_chain_order_s4():
    chain = build_stabilizer_chain([transposition(4, 0, 1), cycle(4)])
    assert group_order(chain) == 24


def test_chain_empty_generators_is_trivial_group():
    chain = build_stabilizer_chain([], degree=5)
    assert group_order(chain) == 1
    assert list(enumerate_group(chain)) == [Permutation.identity(5)]


def test_chain_three_cycles_generate_a4():
    three_cycles = [
        p for p in (Permutation(imgs) for imgs in itertools.permutations(range(4)))
        if sum(1 for i in range(4) if p(i) != i) == 3
    ]
    closure = brute_force_closure(three_cycles)
    assert len(closure) == 12
    chain = build_stabilizer_chain(three_cycles)
    assert group_order(chain) == 12


def test_chain_invariants():
    chain = build_stabilizer_chain([transposition(5, 0, 1), cycle(5)])
    orbits = chain.fundamental_orbits()
    assert math.prod(len(o) for o in orbits) == chain.order() == 120
    base = chain.base
    for level, gens_node in enumerate(chain._nodes()):
        for g in gens_node.generators():
            for b in base[:level]:
                assert g(b) == b


def test_chain_membership():
    chain = build_stabilizer_chain([transposition(4, 0, 1), cycle(4)])
    rng = random.Random(SEED + 4)
    for _ in range(20):
        assert chain.contains(random_perm(rng, 4))
    a4 = build_stabilizer_chain([P1(2, 3, 1, 4), P1(1, 3, 4, 2)])
    assert a4.order() == 12
    assert not a4.contains(transposition(4, 0, 1))


def test_enumerate_group_s3_and_a4():
    s3 = build_stabilizer_chain(symmetric_group_generators(3))
    elems = list(enumerate_group(s3))
    assert len(elems) == len(set(elems)) == 6
    a4 = build_stabilizer_chain([P1(2, 3, 1, 4), P1(1, 3, 4, 2)])
    elems = list(enumerate_group(a4))
    assert len(elems) == len(set(elems)) == 12
    assert all(p.parity() == 0 for p in elems)


def test_enumerate_group_threshold():
    s5 = build_stabilizer_chain(symmetric_group_generators(5))
    with pytest.raises(BudgetError):
        list(enumerate_group(s5, threshold=100))


def test_chain_order_matches_brute_force_closure_random():
    # 20 random generated groups of order <= 5000
    rng = random.Random(SEED + 5)
    checked = 0
    while checked < 20:
        d = rng.randint(2, 6)
        gens = [random_perm(rng, d) for _ in range(rng.randint(1, 3))]
        closure = brute_force_closure(gens, degree=d, limit=5000 + 1)
        if len(closure) > 5000:
            continue
        chain = build_stabilizer_chain(gens, degree=d)
        assert chain.order() == len(closure)
        assert all(chain.contains(p) for p in closure)
        checked += 1


def test_chain_deterministic():
    gens = [transposition(5, 0, 1), cycle(5)]
    c1 = build_stabilizer_chain(gens)
    c2 = build_stabilizer_chain(gens)
    assert c1.base == c2.base
    assert c1.fundamental_orbits() == c2.fundamental_orbits()
    assert list(enumerate_group(c1)) == list(enumerate_group(c2))
