"""Lattice-point enumeration and extremal rays for rational cones/polytopes.

Inequalities are homogeneous rows a with a.x >= 0; inhomogeneous bounds are
encoded with an extra homogenizing coordinate pinned to 1 by an equality.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hivecluster.cones import (
    ConeSystem,
    UnboundedError,
    extremal_rays,
    in_conic_hull,
    lattice_points,
)


def boxed(nv, bounds):
    """Points with 0 <= x_k <= bounds[k]; last coordinate is the slack = 1."""
    sys = ConeSystem(dim=nv + 1)
    for k, hi in enumerate(bounds):
        e = [0] * (nv + 1)
        e[k] = 1
        sys.add_ineq(e)
        e = [0] * (nv + 1)
        e[k] = -1
        e[nv] = hi
        sys.add_ineq(e)
    one = [0] * (nv + 1)
    one[nv] = 1
    sys.add_eq(one, 1)
    return sys


def test_box_count():
    pts = lattice_points(boxed(3, (2, 2, 2)))
    assert len(pts) == 27
    assert (0, 0, 0, 1) in pts and (2, 2, 2, 1) in pts


def test_simplex_count():
    # x,y,z >= 0, x+y+z <= 4: C(7,3) = 35 points
    sys = ConeSystem(dim=4)
    for k in range(3):
        e = [0] * 4
        e[k] = 1
        sys.add_ineq(e)
    sys.add_ineq([-1, -1, -1, 4])
    sys.add_eq([0, 0, 0, 1], 1)
    assert len(lattice_points(sys)) == 35


def test_equalities_respected():
    sys = boxed(2, (5, 7))
    sys.add_eq([1, -1, 0], 0)
    pts = lattice_points(sys)
    assert sorted(pts) == [(k, k, 1) for k in range(6)]


def test_empty_polytope():
    sys = ConeSystem(dim=2)
    sys.add_ineq([1, -3])   # x >= 3
    sys.add_ineq([-1, 2])   # x <= 2
    sys.add_eq([0, 1], 1)
    assert lattice_points(sys) == []


def test_fractional_bounds():
    sys = ConeSystem(dim=2)
    sys.add_ineq([2, -1])   # x >= 1/2
    sys.add_ineq([-2, 7])   # x <= 7/2
    sys.add_eq([0, 1], 1)
    assert sorted(lattice_points(sys)) == [(1, 1), (2, 1), (3, 1)]


def test_unbounded_raises_with_direction():
    sys = ConeSystem(dim=2)
    sys.add_ineq([1, 0])
    sys.add_ineq([0, 1])
    with pytest.raises(UnboundedError) as exc:
        lattice_points(sys)
    d = exc.value.direction
    assert any(d)
    assert sys.contains(d)


def test_extremal_rays_orthant():
    sys = ConeSystem(dim=3)
    sys.add_ineq([1, 0, 0])
    sys.add_ineq([0, 1, 0])
    sys.add_ineq([0, 0, 1])
    rays = extremal_rays(sys)
    assert sorted(rays) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_extremal_rays_cross_section():
    # Cone over a square: 4 rays even though 4 inequalities in dim 3
    sys = ConeSystem(dim=3)
    sys.add_ineq([1, 0, 0])
    sys.add_ineq([-1, 0, 1])
    sys.add_ineq([0, 1, 0])
    sys.add_ineq([0, -1, 1])
    rays = extremal_rays(sys)
    assert sorted(rays) == [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]


def test_in_conic_hull():
    gens = [(1, 0), (1, 1)]
    assert in_conic_hull((2, 1), gens)
    assert not in_conic_hull((0, 1), gens)
    assert not in_conic_hull((-1, 0), gens)


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
@settings(max_examples=25, deadline=None)
def test_box_counts_product(a, b, c):
    assert len(lattice_points(boxed(3, (a, b, c)))) == (a + 1) * (b + 1) * (c + 1)
