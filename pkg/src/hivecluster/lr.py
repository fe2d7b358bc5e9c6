"""Littlewood-Richardson machinery: triangles, the map phi, the g-vector cone,
weight/partition dictionaries, and LR coefficients by three independent methods.
"""

from __future__ import annotations

from math import gcd

from .cones import ConeSystem, extremal_rays, in_conic_hull, lattice_points
from .exact import det_bareiss
from .hive import build_sigma, delta_vertices, f_weight, is_frozen, weight_level


def vertex_order(n: int) -> list[tuple]:
    return sorted(delta_vertices(n))


def to_vector(d: dict, n: int) -> tuple:
    return tuple(d.get(v, 0) for v in vertex_order(n))


def to_dict(vec, n: int) -> dict:
    return {v: x for v, x in zip(vertex_order(n), vec) if x}


# -- the linear map phi -------------------------------------------------------


def phi_matrix(n: int) -> list[list[int]]:
    """h = phi(g): h(i,j) = sum_{l>=j} g(i,l) for j >= 1,
    h(i,0) = sum over all g(k,l) with k >= i."""
    order = vertex_order(n)
    pos = {v: t for t, v in enumerate(order)}
    m = [[0] * len(order) for _ in order]
    for (i, j) in order:
        row = m[pos[(i, j)]]
        if j >= 1:
            for (k, l) in order:
                if k == i and l >= j:
                    row[pos[(k, l)]] = 1
        else:
            for (k, l) in order:
                if k >= i:
                    row[pos[(k, l)]] = 1
    return m


def phi_apply(g: dict, n: int) -> dict:
    vec = to_vector(g, n)
    m = phi_matrix(n)
    return to_dict([sum(r * x for r, x in zip(row, vec)) for row in m], n)


def phi_det(n: int) -> int:
    return det_bareiss(phi_matrix(n))


# -- LR triangles --------------------------------------------------------------


def lr_system(n: int) -> ConeSystem:
    """The homogeneous inequality description of LR triangles of size n."""
    order = vertex_order(n)
    pos = {v: t for t, v in enumerate(order)}
    dim = len(order)
    cone = ConeSystem(dim)

    def row(entries):
        r = [0] * dim
        for v, c in entries:
            if v in pos:
                r[pos[v]] += c
        return r

    for (i, j) in order:
        if i >= 1 and j >= 1:
            cone.add_ineq(row([((i, j), 1)]))
    for i in range(1, n):
        for j in range(1, i + 1):
            cone.add_ineq(
                row(
                    [((k, j), 1) for k in range(i - j + 1)]
                    + [((k, j + 1), -1) for k in range(i - j + 1)]
                )
            )
            cone.add_ineq(
                row(
                    [((i - k, k), 1) for k in range(j)]
                    + [((i + 1 - k, k), -1) for k in range(j + 1)]
                )
            )
    return cone


def triangle_type(h: dict, n: int) -> tuple[tuple, tuple, tuple]:
    """(lambda, mu, nu) of an LR triangle h."""
    mu = [h.get((i, 0), 0) for i in range(1, n)]
    nu = [sum(h.get((k, j), 0) for k in range(n - j + 1)) for j in range(1, n)]
    lam = [sum(h.get((i - k, k), 0) for k in range(i + 1)) for i in range(1, n + 1)]
    return tuple(_strip(lam)), tuple(_strip(mu)), tuple(_strip(nu))


def _strip(seq):
    out = list(seq)
    while out and out[-1] == 0:
        out.pop()
    return out


def lr_polytope(lam, mu, nu, n: int) -> ConeSystem:
    cone = lr_system(n)
    order = vertex_order(n)
    pos = {v: t for t, v in enumerate(order)}
    dim = len(order)

    def row(entries):
        r = [0] * dim
        for v, c in entries:
            if v in pos:
                r[pos[v]] += c
        return r

    lam, mu, nu = _pad(lam, n), _pad(mu, n - 1), _pad(nu, n - 1)
    for i in range(1, n):
        cone.add_eq(row([((i, 0), 1)]), mu[i - 1])
    for j in range(1, n):
        cone.add_eq(row([((k, j), 1) for k in range(n - j + 1)]), nu[j - 1])
    for i in range(1, n + 1):
        cone.add_eq(row([((i - k, k), 1) for k in range(i + 1)]), lam[i - 1])
    return cone


def _pad(p, length):
    p = list(p)
    if len(p) > length:
        raise ValueError("partition too long")
    return p + [0] * (length - len(p))


# -- weights <-> partitions -----------------------------------------------------


def wt_to_partitions(w, n: int) -> tuple[tuple, tuple, tuple]:
    """Partition triple of a dominant T_n weight (layout a;b;c;z)."""
    a = w[: n - 1]
    b = w[n - 1 : 2 * (n - 1)]
    c = w[2 * (n - 1) : 3 * (n - 1)]
    z = w[-1]
    mu = [-sum(a[m - 1] for m in range(l, n)) for l in range(1, n)]
    nu = [-sum(b[m - 1] for m in range(l, n)) for l in range(1, n)]
    lam = [z + sum(c[m - 1] for m in range(n - l + 1, n)) for l in range(1, n + 1)]
    for p in (lam, mu, nu):
        if any(p[k] < p[k + 1] for k in range(len(p) - 1)) or (p and p[-1] < 0):
            raise ValueError("weight not dominant for this map")
    return tuple(_strip(lam)), tuple(_strip(mu)), tuple(_strip(nu))


def partitions_to_wt(lam, mu, nu, n: int) -> tuple:
    lam, mu, nu = _pad(lam, n), _pad(mu, n - 1), _pad(nu, n - 1)
    mu_full = mu + [0]
    nu_full = nu + [0]
    a = [mu_full[l] - mu_full[l - 1] for l in range(1, n)]
    b = [nu_full[l] - nu_full[l - 1] for l in range(1, n)]
    # c_m = lambda_{n-m+1} - lambda_{n-m} for m = 1..n-1; the level z = lambda_1
    c = [lam[n - m] - lam[n - m - 1] for m in range(1, n)]
    return tuple(a + b + c + [lam[0]])


# -- the g-vector cone ----------------------------------------------------------


def g_cone(n: int, literal: bool = False) -> ConeSystem:
    """The cone of g-vectors over Z^{delta_n}.

    The default system is the pullback of the LR inequalities under phi:
    nonnegativity at frozen vertices plus, at each mutable (i,j), three
    sink-directed segment sums.  ``literal=True`` instead sums the three
    source-directed maximal segments (the alternative printed reading);
    the two systems differ and only the default passes the interlocking
    consistency checks.
    """
    order = vertex_order(n)
    pos = {v: t for t, v in enumerate(order)}
    cone = ConeSystem(len(order))

    def row(vs):
        r = [0] * len(order)
        for v in vs:
            if v in pos:
                r[pos[v]] += 1
        return r

    for v in order:
        if is_frozen(v, n):
            cone.add_ineq(row([v]))
    for (i, j) in order:
        if is_frozen((i, j), n):
            continue
        if literal:
            cone.add_ineq(row([(i, l) for l in range(j + 1)]))
            cone.add_ineq(row([(k, j) for k in range(i, n - j + 1)]))
            cone.add_ineq(row([(i - m, j + m) for m in range(i + 1)]))
        else:
            cone.add_ineq(row([(i, l) for l in range(j, n - i + 1)]))
            cone.add_ineq(row([(k, j) for k in range(i + 1)]))
            cone.add_ineq(row([(i + m, j - m) for m in range(j + 1)]))
    return cone


def pair_weight(g: dict, n: int) -> tuple:
    """g . sigma_n, a T_n weight."""
    total = [0] * (3 * n - 2)
    for v, coef in g.items():
        fw = f_weight(v[0], v[1], n)
        total = [t + coef * x for t, x in zip(total, fw)]
    return tuple(total)


def g_polytope(n: int, sigma, literal: bool = False) -> ConeSystem:
    """Slice of the g-cone by the weight equalities g . sigma_n = sigma."""
    cone = g_cone(n, literal)
    order = vertex_order(n)
    weights = [f_weight(i, j, n) for (i, j) in order]
    for r in range(3 * n - 2):
        cone.add_eq([w[r] for w in weights], sigma[r])
    return cone


# -- LR coefficients -------------------------------------------------------------


def count_lr_tableaux(lam, mu, nu) -> int:
    """Backtracking count of LR skew tableaux of shape lambda/mu, content nu."""
    lam, mu = list(lam), list(mu) + [0] * (len(lam) - len(mu))
    nu = list(nu)
    if any(m > l for l, m in zip(lam, mu)):
        return 0
    if sum(lam) - sum(mu) != sum(nu):
        return 0
    cells = []  # reverse reading order: rows top to bottom, right to left
    for r, (l, m) in enumerate(zip(lam, mu)):
        for col in range(l - 1, m - 1, -1):
            cells.append((r, col))
    value = {}
    counts = [0] * (len(nu) + 1)
    total = 0

    def rec(idx):
        nonlocal total
        if idx == len(cells):
            total += 1
            return
        r, col = cells[idx]
        hi = len(nu)
        right = value.get((r, col + 1))
        if right is not None:
            hi = min(hi, right)
        lo = value[(r - 1, col)] + 1 if (r - 1, col) in value else 1
        for v in range(lo, hi + 1):
            if counts[v] >= nu[v - 1]:
                continue
            if v >= 2 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            value[(r, col)] = v
            rec(idx + 1)
            del value[(r, col)]
            counts[v] -= 1

    rec(0)
    return total


def lr_coeff(lam, mu, nu, n: int, method: str = "tableaux") -> int:
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    if method == "tableaux":
        return count_lr_tableaux(lam, mu, nu)
    if method == "triangles":
        return len(lattice_points(lr_polytope(lam, mu, nu, n)))
    if method == "gcone":
        sigma = partitions_to_wt(lam, mu, nu, n)
        return len(lattice_points(g_polytope(n, sigma)))
    raise ValueError(f"unknown method {method!r}")


# -- the weight cone --------------------------------------------------------------


def weight_cone_rays(n: int) -> list[tuple]:
    """Extremal, indivisible generators of the cone of weights of Sigma_n."""
    rays = extremal_rays(g_cone(n))
    weights = sorted({_indivisible(pair_weight(to_dict(r, n), n)) for r in rays})
    out = []
    for k, w in enumerate(weights):
        others = weights[:k] + weights[k + 1 :]
        if not in_conic_hull(w, others):
            out.append(w)
    return out


def _indivisible(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def decompose_weight(sigma, n: int, rays: list | None = None) -> list[tuple]:
    """All multisets of extremal lattice weights summing to sigma."""
    gens = rays if rays is not None else weight_cone_rays(n)
    if any(weight_level(g) < 1 for g in gens):
        raise AssertionError("generator of nonpositive level")
    gens = sorted(gens, key=lambda g: (weight_level(g), g))
    found = []

    def rec(idx, remaining, current):
        if all(x == 0 for x in remaining):
            found.append(tuple(current))
            return
        lvl = remaining[-1]
        if lvl <= 0:
            return
        for k in range(idx, len(gens)):
            if weight_level(gens[k]) <= lvl:
                rec(k, tuple(r - x for r, x in zip(remaining, gens[k])), current + [gens[k]])

    rec(0, tuple(sigma), [])
    return found


def sigma_matrix_rank(n: int) -> int:
    from .exact import rank
    sig = build_sigma(n)
    return rank([list(sig[v]) for v in vertex_order(n)])
