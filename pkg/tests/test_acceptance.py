"""Acceptance suite.

One test per criterion; each prints a single "criterion NN: PASS/FAIL" line
and enforces its runtime budget.  All checks are exact (tolerance 0).
Criteria 1-13 exercise only the library; criterion 14 drives the HTTP
service end to end.  Set RUN_SLOW=1 to include the long n=8 mutation
sequences of criterion 12.
"""

import json
import os
import random
import time

import pytest

from hivecluster.cones import extremal_rays, lattice_points
from hivecluster.exact import rank
from hivecluster.hive import JModel, build_delta, build_sigma, coker_sample, weight_level
from hivecluster.lr import (
    g_cone,
    g_polytope,
    lr_coeff,
    lr_polytope,
    phi_apply,
    phi_det,
    to_dict,
    to_vector,
    vertex_order,
    weight_cone_rays,
    wt_to_partitions,
)
from hivecluster.quiver import freeze, mutate_b_matrix
from hivecluster.schofield import (
    check_exchange,
    eval_cluster_variable,
    independence_rank,
    presentation_f,
    presentation_fprime,
    random_rep,
    s_eval,
    special_reps,
)
from hivecluster.seeds import enumerate_cluster_variables, extract_g_f, initial_seed, mutate_seed

RUN_SLOW = os.environ.get("RUN_SLOW") == "1"


def report(num, ok, elapsed, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {num:2d}: {status} ({elapsed:.1f}s) {detail}".rstrip())
    assert ok, f"criterion {num} failed: {detail}"


def random_sigma(n, rng, summands=(1, 3)):
    sigma = build_sigma(n)
    verts = list(sigma)
    total = [0] * len(sigma[verts[0]])
    for _ in range(rng.randint(*summands)):
        w = sigma[rng.choice(verts)]
        total = [a + b for a, b in zip(total, w)]
    return tuple(total)


def random_partition(rng, maxlen, maxpart):
    parts = sorted(
        (rng.randrange(maxpart + 1) for _ in range(rng.randrange(maxlen + 1))),
        reverse=True,
    )
    return tuple(p for p in parts if p)


def test_criterion_01_involutivity():
    t0 = time.time()
    rng = random.Random(101)
    cases = 500
    ok = True
    for _ in range(cases):
        n = rng.choice((3, 4, 5))
        q = build_delta(n)
        sigma = build_sigma(n)
        for _ in range(rng.randrange(4)):
            u = rng.choice(q.mutable)
            sigma = q.mutate_weight(sigma, u)
            q = q.mutate(u)
        u = rng.choice(q.mutable)
        # quiver involutivity
        ok &= q.mutate(u).mutate(u) == q
        # B-matrix involutivity
        b = q.b_matrix()
        k = q.mutable.index(u)
        ok &= mutate_b_matrix(mutate_b_matrix(b, k, len(q.mutable)), k, len(q.mutable)) == b
        # weight-config involutivity
        s1 = q.mutate_weight(sigma, u)
        ok &= q.mutate(u).mutate_weight(s1, u) == sigma
        # g-transport involutivity
        g = {v: rng.randint(-3, 3) for v in q.vertices}
        g1 = q.mutate_g(g, u)
        ok &= q.mutate(u).mutate_g(g1, u) == g
        # freeze commutes with mutation elsewhere
        others = [w for w in q.mutable if w != u]
        if others:
            w = rng.choice(others)
            ok &= freeze(q.mutate(u), {w}) == freeze(q, {w}).mutate(u)
        if not ok:
            break
    # seed involutivity (separate 500 cases on the n=4 exchange graph)
    seed = initial_seed(build_delta(4), build_sigma(4))
    for _ in range(500):
        u = rng.choice(seed.quiver.mutable)
        back = mutate_seed(mutate_seed(seed, u), u)
        ok &= back.key() == seed.key() and back.quiver == seed.quiver
        if not ok:
            break
        seed = mutate_seed(seed, rng.choice(seed.quiver.mutable))
    elapsed = time.time() - t0
    report(1, ok and elapsed < 10, elapsed, f"{cases} cases per operation")


def test_criterion_02_cluster_variable_counts():
    t0 = time.time()
    ok = True
    detail = []
    for n, nvars in ((3, 2), (4, 9), (5, 36)):
        res = enumerate_cluster_variables(initial_seed(build_delta(n), build_sigma(n)))
        ok &= res.complete and len(res.variables) == nvars
        detail.append(f"n={n}:{len(res.variables)}")
        if n == 4:
            ok &= res.cluster_count == 14
            detail.append("clusters=14")
    elapsed = time.time() - t0
    report(2, ok and elapsed < 300, elapsed, " ".join(detail))


def test_criterion_03_dynkin_d6():
    t0 = time.time()
    q = build_delta(5)
    for v in [(1, 3), (2, 1), (1, 1), (1, 2)]:
        q = q.mutate(v)
    ok = q.dynkin_type() == "D6"
    elapsed = time.time() - t0
    report(3, ok and elapsed < 1, elapsed, q.dynkin_type())


def test_criterion_04_ray_counts():
    t0 = time.time()
    ok = len(extremal_rays(g_cone(4))) == 18
    ok &= len(extremal_rays(g_cone(5))) == 45
    ok &= len(weight_cone_rays(4)) == 18
    ok &= len(weight_cone_rays(5)) == 42
    ok &= len(weight_cone_rays(6)) == 112
    elapsed = time.time() - t0
    report(4, ok and elapsed < 300, elapsed, "G4=18 G5=45 W4=18 W5=42 W6=112")


def test_criterion_05_basis_ray_identification():
    t0 = time.time()
    ok = True
    for n in (4, 5):
        q = build_delta(n)
        order = vertex_order(n)
        res = enumerate_cluster_variables(initial_seed(q, build_sigma(n)))
        gset = {
            to_vector({v: g for v, g in zip(q.vertices, r.g_vector)}, n)
            for r in res.variables
        }
        frozen_units = {to_vector({v: 1}, n) for v in q.frozen}
        for ray in extremal_rays(g_cone(n)):
            ok &= tuple(ray) in gset or tuple(ray) in frozen_units
    elapsed = time.time() - t0
    report(5, ok and elapsed < 60, elapsed, "all rays identified")


def test_criterion_06_lr_three_methods():
    t0 = time.time()
    rng = random.Random(606)
    ok = True
    for _ in range(100):
        n = rng.choice((3, 4, 5))
        lam = random_partition(rng, n - 1, 4)
        mu = random_partition(rng, n - 1, 3)
        nu = random_partition(rng, n - 1, 3)
        vals = {
            m: lr_coeff(lam, mu, nu, n, method=m)
            for m in ("triangles", "gcone", "tableaux")
        }
        ok &= len(set(vals.values())) == 1
        if not ok:
            break
    pins = [
        (((3, 2, 1), (2, 1), (2, 1)), 4, 2),
        (((3, 1), (2,), (2,)), 3, 1),
        (((5, 4, 2), (4, 2), (3, 2)), 5, 2),
        (((6, 5, 2), (5, 2), (4, 2)), 6, 2),
    ]
    for (lam, mu, nu), n, value in pins:
        for m in ("triangles", "gcone", "tableaux"):
            ok &= lr_coeff(lam, mu, nu, n, method=m) == value
    # the isotropic n=8 extremal weight has coefficient 2
    sigma8 = [0] * 22
    sigma8[21] = 3
    for idx in (0, 4, 9, 12, 16, 19):
        sigma8[idx] = -1
    lam, mu, nu = wt_to_partitions(tuple(sigma8), 8)
    ok &= lr_coeff(lam, mu, nu, 8, method="tableaux") == 2
    elapsed = time.time() - t0
    report(6, ok and elapsed < 120, elapsed, "100 random triples + pins agree")


def test_criterion_07_phi_checks():
    t0 = time.time()
    ok = all(phi_det(n) in (1, -1) for n in (3, 4, 5, 6))
    rng = random.Random(707)
    for n in (3, 4, 5):
        for _ in range(50):
            sigma = random_sigma(n, rng)
            gp = lattice_points(g_polytope(n, sigma))
            lam, mu, nu = wt_to_partitions(sigma, n)
            lp = set(lattice_points(lr_polytope(lam, mu, nu, n)))
            imgs = {to_vector(phi_apply(to_dict(p, n), n), n) for p in gp}
            ok &= len(imgs) == len(gp) and imgs == lp
            if not ok:
                break
        # level-1 slices carry exactly one point each
        for w in build_sigma(n).values():
            ok &= weight_level(w) == 1
            ok &= len(lattice_points(g_polytope(n, w))) == 1
    elapsed = time.time() - t0
    report(7, ok and elapsed < 120, elapsed, "det phi = +-1, 50 bijections per n")


def test_criterion_08_cokernel_membership():
    t0 = time.time()
    rng = random.Random(808)
    ok = True
    for n in (3, 4):
        jm = JModel(n)
        cone = g_cone(n)
        order = vertex_order(n)
        for k in range(250):
            g = {v: rng.randint(-2, 2) for v in order}
            sample = coker_sample(jm, g, trials=3, seed=k)
            ok &= sample["mu_supported"] == cone.contains(to_vector(g, n))
            if not ok:
                break
    elapsed = time.time() - t0
    report(8, ok and elapsed < 300, elapsed, "500 random g, n=3 and n=4")


def test_criterion_09_schofield_exchange():
    t0 = time.time()
    ok = True
    for n in (3, 4, 5):
        for (i, j) in build_delta(n).mutable:
            ok &= check_exchange(n, i, j, trials=10, seed=909)
    # special representations reproduce the proof tables exactly
    tab_m = {0: (1, 1, 0), 1: (1, 0, 1), 2: (0, -1, 1)}
    tab_mp = {0: (1, 0, 1), 1: (0, -1, 1), 2: (-1, -1, 0)}
    for n in (3, 4, 5, 6):
        for (i, j) in build_delta(n).mutable:
            m, mp = special_reps(n, i, j)
            q, r = divmod(j, 3)
            sgn = (-1) ** q
            for rep, tab in ((m, tab_m), (mp, tab_mp)):
                got = tuple(
                    s_eval(presentation_f(a, b, n), rep)
                    for (a, b) in ((i, j), (i, j + 1), (i, j - 1))
                )
                ok &= got == tuple(sgn * x for x in tab[r])
            for (a, b) in ((i - 1, j), (i + 1, j - 1), (i + 1, j), (i - 1, j + 1)):
                ok &= abs(s_eval(presentation_f(a, b, n), m)) == 1
                ok &= abs(s_eval(presentation_f(a, b, n), mp)) == 1
            ok &= s_eval(presentation_fprime(i, j, n), m) == (-1) ** n
    elapsed = time.time() - t0
    report(9, ok and elapsed < 120, elapsed, "exchange + proof tables, s'(M)=(-1)^n")


def test_criterion_10_algebraic_independence():
    t0 = time.time()
    ok = all(independence_rank(n, seed=10) == rk for n, rk in ((3, 7), (4, 12), (5, 18)))
    elapsed = time.time() - t0
    report(10, ok and elapsed < 300, elapsed, "Jacobian ranks 7/12/18")


def test_criterion_11_isomorphism_consistency():
    t0 = time.time()
    ok = True
    for n in (3, 4):
        q = build_delta(n)
        sigma = build_sigma(n)
        res = enumerate_cluster_variables(initial_seed(q, sigma))
        dim = len(sigma[q.vertices[0]])
        for r in res.variables:
            # weight of the variable is g . sigma_n
            w = tuple(
                sum(gi * sigma[v][k] for gi, v in zip(r.g_vector, q.vertices))
                for k in range(dim)
            )
            ok &= w == r.weight
        for rep_seed in range(5):
            rep = random_rep(n, bound=40, seed=rep_seed)
            for r in res.variables:
                value = eval_cluster_variable(r.expression, rep, n)
                # polynomial in the s-values: denominators cancel exactly
                ok &= value.denominator == 1
            if not ok:
                break
    elapsed = time.time() - t0
    report(11, ok and elapsed < 180, elapsed, "integral at 5 random reps, weights match")


# The n=8 reference data is stated in coordinates related to this artifact's
# by the triangle symmetry transposing (i,j) -> (j,i); the same symmetry swaps
# the first two families of the weight, so both are transformed together here.
N8_GA = {(6, 0): 1, (3, 5): 1, (0, 2): 1, (3, 1): 1, (2, 3): 1, (2, 2): -1, (3, 3): -1}
N8_GB = {(3, 0): 1, (3, 5): 1, (0, 2): 1, (1, 4): 1, (6, 1): 1, (3, 4): -1, (1, 2): -1}
N8_SEQ_A = [(1, 3), (2, 2), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (2, 5), (3, 4), (4, 3), (3, 3), (4, 2), (5, 1), (5, 2)]
N8_SEQ_B = [(5, 2), (4, 2), (4, 3), (3, 3), (3, 4), (2, 4), (1, 4), (2, 3), (1, 3), (2, 2), (1, 2), (2, 1)]


def n8_sigma(swap_ab=False):
    sigma = [0] * 22
    sigma[21] = 3
    drops = (2, 5, 7, 11, 16, 19) if swap_ab else (0, 4, 9, 12, 16, 19)
    for idx in drops:
        sigma[idx] = -1
    return tuple(sigma)


def test_criterion_12_n8_spot_checks():
    t0 = time.time()
    cone = g_cone(8)
    sigma = n8_sigma(swap_ab=True)
    s8 = build_sigma(8)
    order = vertex_order(8)
    dim = len(sigma)
    ok = True
    for g in (N8_GA, N8_GB):
        ok &= cone.contains(to_vector(g, 8))
        pairing = tuple(
            sum(g.get(v, 0) * s8[v][k] for v in order) for k in range(dim)
        )
        ok &= pairing == sigma
    elapsed = time.time() - t0
    report(12, ok and elapsed < 10, elapsed, "both g-vectors in G8, pairing to sigma")


@pytest.mark.skipif(not RUN_SLOW, reason="slow n=8 mutation sequences; set RUN_SLOW=1")
@pytest.mark.parametrize("seq,expected", [(N8_SEQ_A, N8_GA), (N8_SEQ_B, N8_GB)])
def test_criterion_12_slow_n8_sequences(seq, expected):
    seed = initial_seed(build_delta(8), build_sigma(8))
    current = seed
    for v in seq:
        current = mutate_seed(current, v)
    g, _f = extract_g_f(current.cluster[seq[-1]], seed)
    got = {v: x for v, x in zip(seed.quiver.vertices, g) if x}
    assert got == expected


def test_criterion_13_n6_decomposition():
    t0 = time.time()
    from hivecluster.lr import decompose_weight

    sigma = [0] * 16
    sigma[15] = 3
    for idx in (1, 4, 6, 8, 10, 13):
        sigma[idx] = -1
    decs = decompose_weight(tuple(sigma), 6)
    ok = len(decs) == 1

    def wt(drops):
        w = [0] * 16
        w[15] = 1
        for off, k in drops:
            w[off + k - 1] -= 1
        return tuple(w)

    expected = {
        wt([(10, 1), (0, 5)]),
        wt([(0, 2), (5, 4)]),
        wt([(5, 2), (10, 4)]),
    }
    ok &= decs and set(decs[0]) == expected

    # g_0 lies in G6 and its tight inequalities have corank one: extremal ray
    g0 = {(0, 2): 1, (4, 0): 1, (2, 4): 1, (3, 2): 1, (1, 3): 1, (2, 1): 1,
          (1, 2): -1, (3, 1): -1, (2, 3): -1}
    vec = to_vector(g0, 6)
    cone = g_cone(6)
    ok &= cone.contains(vec)
    from fractions import Fraction

    active = [row for row in cone.ineqs if sum(a * x for a, x in zip(row, vec)) == 0]
    active += [e for e, _ in cone.eqs]
    ok &= rank([[Fraction(x) for x in row] for row in active]) == cone.dim - 1
    elapsed = time.time() - t0
    report(13, ok and elapsed < 300, elapsed, "unique decomposition, g0 extremal in G6")


def test_criterion_14_end_to_end_service():
    t0 = time.time()
    from fastapi.testclient import TestClient

    from hivecluster.hive import weight_to_text
    from hivecluster.service import create_app

    client = TestClient(create_app())
    sid = client.post("/sessions", json={"n": 5}).json()["id"]
    seq = [(1, 3), (2, 1), (1, 1), (1, 2)]
    for v in seq:
        assert client.post(f"/sessions/{sid}/mutate", json={"vertex": list(v)}).status_code == 200
    state = json.loads(client.get(f"/sessions/{sid}/state").content)
    ok = state["dynkin_type"] == "D6"

    # byte-identical to a CLI-style replay of the same sequence
    q = build_delta(5)
    sigma = build_sigma(5)
    for v in seq:
        sigma = q.mutate_weight(sigma, v)
        q = q.mutate(v)
    ok &= state["quiver"] == q.to_dict()
    ok &= state["b_matrix"] == q.b_matrix()
    ok &= all(
        entry["weight"] == weight_to_text(sigma[tuple(entry["id"])])
        for entry in state["vertices"]
    )

    # UI history export string round-trips through the CLI parser
    from hivecluster.cli import _parse_seq

    export = ",".join(f"({i},{j})" for i, j in state["history"])
    ok &= _parse_seq(export) == seq
    elapsed = time.time() - t0
    report(14, ok and elapsed < 30, elapsed, "API replay matches CLI, export round-trips")
