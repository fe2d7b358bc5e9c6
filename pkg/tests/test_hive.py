"""Hive weights, the potential model, and injective presentations."""

import pytest

from hivecluster.hive import (
    JModel,
    build_delta,
    build_sigma,
    f_weight,
    text_to_weight,
    verify_presentations,
    weight_level,
    weight_to_text,
)


def test_sigma_covers_all_vertices():
    for n in (3, 4, 5):
        q = build_delta(n)
        sigma = build_sigma(n)
        assert set(sigma) == set(q.vertices)
        dim = 3 * (n - 1) + 1
        assert all(len(w) == dim for w in sigma.values())


def test_weight_text_roundtrip():
    for n in (3, 4, 5):
        for w in build_sigma(n).values():
            assert text_to_weight(weight_to_text(w)) == w


def test_weight_level_additive():
    s = build_sigma(4)
    a, b = s[(1, 1)], s[(1, 2)]
    merged = tuple(x + y for x, y in zip(a, b))
    assert weight_level(merged) == weight_level(a) + weight_level(b)


@pytest.mark.parametrize("n,dim", [(3, 22), (4, 60), (5, 138)])
def test_jacobian_algebra_dimension(n, dim):
    assert JModel(n).j_dim() == dim


def test_rewriting_confluent():
    for n in (3, 4, 5):
        assert JModel(n).check_confluence()


def test_presentations_verified():
    for n in (3, 4, 5):
        assert verify_presentations(n)


def test_f_weight_matches_sigma():
    for n in (3, 4):
        sigma = build_sigma(n)
        for (i, j), w in sigma.items():
            assert f_weight(i, j, n) == w
