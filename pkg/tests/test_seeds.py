"""Seed mutation, the Laurent phenomenon, g-vectors, and enumeration."""

import random

import pytest

from hivecluster.hive import build_delta, build_sigma
from hivecluster.seeds import (
    ClusterError,
    check_upper_membership,
    enumerate_cluster_variables,
    extract_g_f,
    initial_seed,
    laurent_to_text,
    mutate_seed,
    seed_from_dict,
    seed_to_dict,
    text_to_laurent,
)


def fresh(n):
    return initial_seed(build_delta(n), build_sigma(n))


def test_mutation_involutive_on_seeds():
    rng = random.Random(0)
    for n in (3, 4):
        seed = fresh(n)
        for _ in range(8):
            u = rng.choice(seed.quiver.mutable)
            assert mutate_seed(mutate_seed(seed, u), u).key() == seed.key()
            seed = mutate_seed(seed, rng.choice(seed.quiver.mutable))


def test_laurent_phenomenon_random_walk():
    rng = random.Random(3)
    for n in (4, 5):
        seed = fresh(n)
        for _ in range(12):
            u = rng.choice(seed.quiver.mutable)
            # mutate_seed performs exact division; any failure would raise
            seed = mutate_seed(seed, u)
        for z in seed.cluster.values():
            assert z  # nonzero Laurent polynomial throughout


def test_frozen_mutation_rejected():
    seed = fresh(4)
    with pytest.raises((ClusterError, ValueError)):
        mutate_seed(seed, (0, 1))


@pytest.mark.parametrize("n,nvars,nclusters", [(3, 2, 2), (4, 9, 14)])
def test_enumeration_counts(n, nvars, nclusters):
    res = enumerate_cluster_variables(fresh(n))
    assert res.complete
    assert len(res.variables) == nvars
    assert res.cluster_count == nclusters


def test_g_vectors_unit_for_initial():
    seed = fresh(4)
    verts = seed.quiver.vertices
    for k, v in enumerate(verts):
        g, f = extract_g_f(seed.cluster[v], seed)
        assert g == tuple(int(i == k) for i in range(len(verts)))
        assert f.is_monomial() and f.constant_term() == 1


def test_g_vectors_distinct():
    res = enumerate_cluster_variables(fresh(4))
    gs = [r.g_vector for r in res.variables]
    assert len(set(gs)) == len(gs)


def test_weights_match_g_pairing():
    seed = fresh(4)
    sigma = seed.sigma
    verts = seed.quiver.vertices
    res = enumerate_cluster_variables(seed)
    for r in res.variables:
        w = tuple(
            sum(gi * sigma[v][k] for gi, v in zip(r.g_vector, verts))
            for k in range(len(sigma[verts[0]]))
        )
        assert w == r.weight


def test_upper_membership():
    seed = fresh(4)
    res = enumerate_cluster_variables(seed)
    for r in res.variables:
        assert check_upper_membership(r.expression, seed)
    # a Laurent monomial with a negative frozen exponent is not in the ring
    verts = seed.quiver.vertices
    frozen = next(v for v in verts if v in seed.quiver.frozen)
    bad = seed.cluster[frozen].exact_div(seed.cluster[frozen] ** 2)
    assert not check_upper_membership(bad, seed)


def test_laurent_text_roundtrip():
    seed = fresh(4)
    verts = seed.quiver.vertices
    seed2 = mutate_seed(mutate_seed(seed, (1, 1)), (1, 2))
    for z in seed2.cluster.values():
        s = laurent_to_text(z, verts)
        assert text_to_laurent(s, verts) == z


def test_seed_serialization_roundtrip():
    seed = mutate_seed(fresh(4), (2, 1))
    back = seed_from_dict(seed_to_dict(seed))
    assert back.quiver == seed.quiver
    assert back.cluster == seed.cluster
    assert back.sigma == seed.sigma
