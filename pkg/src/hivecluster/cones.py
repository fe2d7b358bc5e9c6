"""Exact rational polyhedral cones: double description, lattice points, hull tests.

All computations are over Z/Q.  Cones are given by homogeneous inequalities
A x >= 0 with optional equalities E x = d (the inhomogeneous case describes a
polytope slice whose lattice points we enumerate).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd

from .exact import (
    integer_solve,
    invert_matrix,
    kernel_basis,
    rank,
    row_echelon,
)


class NotPointedError(ValueError):
    def __init__(self, lineality):
        self.lineality = lineality
        super().__init__("cone is not pointed; lineality space is nonzero")


class UnboundedError(ValueError):
    def __init__(self, direction):
        self.direction = direction
        super().__init__(f"solution set unbounded in direction {direction}")


@dataclass
class ConeSystem:
    """A x >= 0 plus optional equalities E x = d."""

    dim: int
    ineqs: list = field(default_factory=list)  # integer rows a with a.x >= 0
    eqs: list = field(default_factory=list)  # (integer row e, integer rhs)

    def add_ineq(self, row):
        if len(row) != self.dim:
            raise ValueError("inequality of wrong dimension")
        self.ineqs.append([int(x) for x in row])

    def add_eq(self, row, rhs=0):
        if len(row) != self.dim:
            raise ValueError("equality of wrong dimension")
        self.eqs.append(([int(x) for x in row], int(rhs)))

    def contains(self, x) -> bool:
        return all(_dot(a, x) >= 0 for a in self.ineqs) and all(
            _dot(e, x) == rhs for e, rhs in self.eqs
        )


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _reduce_ray(v):
    """Clear denominators and divide by content: indivisible integer vector."""
    lcm = 1
    for x in v:
        d = x.denominator if isinstance(x, Fraction) else 1
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(x * lcm) for x in v]
    content = 0
    for x in ints:
        content = gcd(content, abs(x))
    if content > 1:
        ints = [x // content for x in ints]
    return tuple(ints)


def extremal_rays(cone: ConeSystem) -> list[tuple]:
    """Extremal rays of a pointed cone {A x >= 0} by double description.

    Equalities are handled by restricting to their integer solution lattice
    first.  Raises NotPointedError with a lineality basis when not pointed.
    """
    if cone.eqs:
        if any(rhs != 0 for _, rhs in cone.eqs):
            raise ValueError("extremal_rays requires homogeneous equalities")
        sol = integer_solve([e for e, _ in cone.eqs], [0] * len(cone.eqs))
        _, kernel = sol
        if not kernel:
            return []
        sub = ConeSystem(len(kernel))
        for a in cone.ineqs:
            sub.add_ineq([_dot(a, k) for k in kernel])
        lifted = {
            _reduce_ray([
                sum(kernel[i][m] * ray[i] for i in range(len(kernel)))
                for m in range(cone.dim)
            ])
            for ray in extremal_rays(sub)
        }
        return sorted(lifted)
    a_rows = cone.ineqs
    d = cone.dim
    lin = kernel_basis(a_rows) if a_rows else [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    if lin:
        raise NotPointedError([_reduce_ray(v) for v in lin])
    # initial simplicial subcone from d independent rows
    idx = _independent_rows(a_rows, d)
    a0 = [a_rows[i] for i in idx]
    inv = invert_matrix(a0)
    rays = [_reduce_ray([inv[r][c] for r in range(d)]) for c in range(d)]
    rest = sorted((i for i in range(len(a_rows)) if i not in set(idx)),
                  key=lambda i: sum(1 for x in a_rows[i] if x))
    processed = list(idx)
    for i in rest:
        a = a_rows[i]
        vals = {r: _dot(a, r) for r in rays}
        pos = [r for r in rays if vals[r] > 0]
        zero = [r for r in rays if vals[r] == 0]
        neg = [r for r in rays if vals[r] < 0]
        if not neg:
            processed.append(i)
            continue
        tight = {
            r: frozenset(k for k in processed if _dot(a_rows[k], r) == 0) for r in rays
        }
        new = []
        for p in pos:
            for m in neg:
                common = tight[p] & tight[m]
                adjacent = not any(
                    r is not p and r is not m and common <= tight[r] for r in rays
                )
                if adjacent:
                    new.append(
                        _reduce_ray([vals[p] * mx - vals[m] * px for px, mx in zip(p, m)])
                    )
        rays = pos + zero + sorted(set(new))
        processed.append(i)
    return sorted(set(_canon_sign(r) for r in rays))


def _canon_sign(r):
    for x in r:
        if x > 0:
            return r
        if x < 0:
            return tuple(-y for y in r)
    return r


def _independent_rows(rows, d):
    chosen = []
    for i in range(len(rows)):
        if rank([rows[j] for j in chosen] + [rows[i]]) > len(chosen):
            chosen.append(i)
            if len(chosen) == d:
                return chosen
    raise ValueError("inequality system is rank-deficient (cone not pointed)")


def lattice_points(cone: ConeSystem) -> list[tuple]:
    """All integer points of {A x >= 0, E x = d}; the set must be bounded.

    Equalities are parameterized exactly over Z; the free parameters are then
    enumerated recursively, with exact interval bounds for each parameter
    obtained by rational linear programming on the remaining system.
    """
    d = cone.dim
    param = _eliminate_equalities(cone)
    if param is None:
        return []
    x0, kernel = param
    f = len(kernel)
    if f == 0:
        return [tuple(x0)] if cone.contains(x0) else []
    # rows become (coeffs over t, const): coeffs.t + const >= 0
    rows = []
    seen = set()
    for a in cone.ineqs:
        coeffs = tuple(_dot(a, k) for k in kernel)
        const = _dot(a, x0)
        if any(coeffs):
            r = _normalize_row(coeffs, const)
            if r not in seen:
                seen.add(r)
                rows.append(r)
        elif const < 0:
            return []
    points = []
    prefix = []

    systems = _fm_chain(rows, f)
    if systems == "empty":
        return []
    if systems is not None:
        t = [0] * f

        def fm_descend(k):
            lo, hi = None, None
            for coeffs, const in systems[k]:
                ck = coeffs[k - 1]
                if ck == 0:
                    continue
                val = const + sum(coeffs[m] * t[m] for m in range(k - 1))
                if ck > 0:
                    b = _ceil_div(-val, ck)
                    lo = b if lo is None else max(lo, b)
                else:
                    b = _floor_div(-val, ck)
                    hi = b if hi is None else min(hi, b)
            if lo is None or hi is None:
                sign = 1 if hi is None else -1
                direction = _reduce_ray([sign * kernel[k - 1][m] for m in range(d)])
                raise UnboundedError(tuple(direction))
            for val in range(lo, hi + 1):
                t[k - 1] = val
                if k == f:
                    ok = all(
                        const + sum(c * tt for c, tt in zip(coeffs, t)) >= 0
                        for coeffs, const in systems[f]
                    )
                    if ok:
                        points.append(
                            tuple(
                                x0[m] + sum(kernel[i][m] * t[i] for i in range(f))
                                for m in range(d)
                            )
                        )
                else:
                    fm_descend(k + 1)

        fm_descend(1)
        return sorted(points)

    def raise_unbounded(k, ray):
        tdir = [Fraction(0)] * k + list(ray)
        den = 1
        for x in tdir:
            den = den * x.denominator // gcd(den, x.denominator)
        tint = [int(x * den) for x in tdir]
        direction = _reduce_ray(
            [sum(kernel[i][m] * tint[i] for i in range(f)) for m in range(d)]
        )
        raise UnboundedError(tuple(direction))

    def descend(rows, k):
        # rows constrain the remaining parameters t_k .. t_{f-1}
        nv = f - k
        if nv == 1:
            lo, hi = None, None
            for (c,), const in rows:
                if c > 0:
                    b = _ceil_div(-const, c)
                    lo = b if lo is None else max(lo, b)
                else:
                    b = _floor_div(const, -c)
                    hi = b if hi is None else min(hi, b)
            if lo is None or hi is None:
                raise_unbounded(k, [Fraction(-1 if hi is not None else 1)])
            for val in range(lo, hi + 1):
                t = prefix + [val]
                points.append(
                    tuple(x0[m] + sum(kernel[i][m] * t[i] for i in range(f)) for m in range(d))
                )
            return
        if nv == 2:
            # bound t_k by eliminating the other parameter directly
            lo, hi = None, None
            pos = [r for r in rows if r[0][1] > 0]
            neg = [r for r in rows if r[0][1] < 0]
            flat = [r for r in rows if r[0][1] == 0]
            derived = list(flat)
            for (pc, pconst) in pos:
                for (nc, nconst) in neg:
                    lam, mu = -nc[1], pc[1]
                    c0 = lam * pc[0] + mu * nc[0]
                    d0 = lam * pconst + mu * nconst
                    derived.append(((c0, 0), d0))
            for (c0, _), d0 in derived:
                if c0 > 0:
                    b = _ceil_div(-d0, c0)
                    lo = b if lo is None else max(lo, b)
                elif c0 < 0:
                    b = _floor_div(d0, -c0)
                    hi = b if hi is None else min(hi, b)
                elif d0 < 0:
                    return
            if lo is None or hi is None:
                # fall back to LP to certify and report a recession ray
                status, value, ray = _lp_min(
                    [Fraction(1 if lo is None else -1), Fraction(0)], rows, nv
                )
                if status == "infeasible":
                    return
                if status == "unbounded":
                    raise_unbounded(k, ray)
                bound = ceil(value) if lo is None else floor(-value)
                lo = bound if lo is None else lo
                hi = bound if hi is None else hi
            for val in range(lo, hi + 1):
                sub = []
                feasible = True
                for coeffs, const in rows:
                    shifted = const + coeffs[0] * val
                    if coeffs[1]:
                        sub.append(((coeffs[1],), shifted))
                    elif shifted < 0:
                        feasible = False
                        break
                if feasible:
                    prefix.append(val)
                    descend(sub, k + 1)
                    prefix.pop()
            return
        obj = [Fraction(0)] * nv
        obj[0] = Fraction(1)
        status, value, ray = _lp_min(obj, rows, nv)
        if status == "infeasible":
            return
        if status == "unbounded":
            raise_unbounded(k, ray)
        lo = ceil(value)
        status, value, ray = _lp_min([-x for x in obj], rows, nv)
        if status == "unbounded":
            raise_unbounded(k, ray)
        hi = floor(-value)
        for val in range(lo, hi + 1):
            sub = []
            feasible = True
            for coeffs, const in rows:
                rest = coeffs[1:]
                shifted = const + coeffs[0] * val
                if any(rest):
                    sub.append((rest, shifted))
                elif shifted < 0:
                    feasible = False
                    break
            if feasible:
                prefix.append(val)
                descend(sub, k + 1)
                prefix.pop()

    descend(rows, 0)
    return sorted(points)


def _fm_chain(rows, f, cap=600):
    """Fourier-Motzkin elimination chain, abandoned if a level exceeds cap.

    Returns the list of per-level systems, "empty" if a contradiction is
    derived, or None when the chain grows past cap rows at some level.
    """
    systems = [None] * (f + 1)
    systems[f] = set(rows)
    for k in range(f, 1, -1):
        nxt = set()
        pos, neg = [], []
        for coeffs, const in systems[k]:
            ck = coeffs[k - 1]
            if ck == 0:
                nxt.add((coeffs, const))
            elif ck > 0:
                pos.append((coeffs, const))
            else:
                neg.append((coeffs, const))
        if len(nxt) + len(pos) * len(neg) > cap:
            return None
        for pc, pconst in pos:
            for nc, nconst in neg:
                lam, mu = -nc[k - 1], pc[k - 1]
                coeffs = tuple(lam * a + mu * b for a, b in zip(pc, nc))
                const = lam * pconst + mu * nconst
                if any(coeffs[: k - 1]):
                    nxt.add(_normalize_row(coeffs, const))
                elif const < 0:
                    return "empty"
        systems[k - 1] = nxt
    return systems


def _eliminate_equalities(cone: ConeSystem):
    """Integer parametrization x = x0 + K t of {E x = d}.

    Equalities with a unit coefficient are eliminated by substitution, which
    keeps the parametrization unimodular and the coefficients small; any
    residual equalities fall back to the Smith-form solver.
    """
    d = cone.dim
    x0 = [0] * d
    kernel_cols = [[int(i == j) for i in range(d)] for j in range(d)]  # columns of K
    residual = []
    for e, rhs in cone.eqs:
        coeffs = [sum(e[i] * col[i] for i in range(d)) for col in kernel_cols]
        const = sum(e[i] * x0[i] for i in range(d)) - rhs
        k = next((idx for idx, c in enumerate(coeffs) if c in (1, -1)), None)
        if k is None:
            if any(coeffs):
                residual.append((coeffs, -const))
            elif const:
                return None
            continue
        s = coeffs[k]
        # t_k = -s * (const + sum_{j != k} coeffs[j] t_j)
        pivot_col = kernel_cols.pop(k)
        coeffs_k = coeffs[:k] + coeffs[k + 1 :]
        for i in range(d):
            x0[i] += pivot_col[i] * (-s * const)
        for j, col in enumerate(kernel_cols):
            cj = -s * coeffs_k[j]
            if cj:
                for i in range(d):
                    col[i] += pivot_col[i] * cj
    if residual:
        sol = integer_solve([c for c, _ in residual], [r for _, r in residual])
        if sol is None:
            return None
        t0, tk = sol
        f = len(kernel_cols)
        new_x0 = [x0[i] + sum(kernel_cols[j][i] * t0[j] for j in range(f)) for i in range(d)]
        new_cols = [
            [sum(kernel_cols[j][i] * kv[j] for j in range(f)) for i in range(d)] for kv in tk
        ]
        x0, kernel_cols = new_x0, new_cols
    return x0, [list(col) for col in kernel_cols]


def _ceil_div(a, b):
    return -((-a) // b)


def _floor_div(a, b):
    return a // b


def _normalize_row(coeffs, const):
    g = 0
    for x in coeffs:
        g = gcd(g, abs(x))
    g = gcd(g, abs(const))
    if g > 1:
        return tuple(x // g for x in coeffs), const // g
    return tuple(coeffs), const


def _simplex_min(tab, basis, cost, ncols):
    """Minimize over the tableau in place (Bland's rule).

    Returns ("optimal", None) or ("unbounded", enter_column).
    """
    m = len(tab)
    red = list(cost) + [Fraction(0)] * (len(tab[0]) - len(cost))
    for i in range(m):
        ci = cost[basis[i]]
        if ci:
            red = [x - ci * z for x, z in zip(red, tab[i])]
    while True:
        enter = next((j for j in range(ncols) if red[j] < 0), None)
        if enter is None:
            return "optimal", None
        ratios = [
            (tab[i][-1] / tab[i][enter], basis[i], i) for i in range(m) if tab[i][enter] > 0
        ]
        if not ratios:
            return "unbounded", enter
        _, _, leave = min(ratios, key=lambda x: (x[0], x[1]))
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f_ = tab[i][enter]
                tab[i] = [x - f_ * z for x, z in zip(tab[i], tab[leave])]
        f_ = red[enter]
        if f_:
            red = [x - f_ * z for x, z in zip(red, tab[leave])]
        basis[leave] = enter


def _lp_min(obj, rows, nv):
    """Minimize obj.t over {t in Q^nv : coeffs.t + const >= 0 for each row}.

    Returns (status, value, ray): ("optimal", min, None), ("infeasible",
    None, None), or ("unbounded", None, ray) with obj.ray < 0 and ray a
    recession direction of the feasible region.
    """
    m = len(rows)
    obj = [Fraction(x) for x in obj]
    if m == 0:
        if any(obj):
            return "unbounded", None, [-x for x in obj]
        return "optimal", Fraction(0), None
    # t = u - v with u, v >= 0 and one slack per row.
    n = 2 * nv + m
    tab, basis = [], []
    for i, (coeffs, const) in enumerate(rows):
        row = [Fraction(coeffs[j]) for j in range(nv)]
        row = row + [-x for x in row] + [Fraction(0)] * m
        row[2 * nv + i] = Fraction(-1)
        rhs = Fraction(-const)
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(int(i == j)) for j in range(m)]
        tab.append(row + art + [rhs])
        basis.append(n + i)
    cost1 = [Fraction(0)] * n + [Fraction(1)] * m
    _simplex_min(tab, basis, cost1, n + m)
    if sum(tab[i][-1] for i in range(len(tab)) if basis[i] >= n) != 0:
        return "infeasible", None, None
    # drive remaining artificials out of the basis; drop redundant rows
    for i in range(len(tab) - 1, -1, -1):
        if basis[i] < n:
            continue
        enter = next((j for j in range(n) if tab[i][j] != 0), None)
        if enter is None:
            del tab[i]
            del basis[i]
            continue
        piv = tab[i][enter]
        tab[i] = [x / piv for x in tab[i]]
        for r in range(len(tab)):
            if r != i and tab[r][enter]:
                f_ = tab[r][enter]
                tab[r] = [x - f_ * z for x, z in zip(tab[r], tab[i])]
        basis[i] = enter
    tab = [row[:n] + [row[-1]] for row in tab]
    cost2 = obj + [-x for x in obj] + [Fraction(0)] * m
    status, enter = _simplex_min(tab, basis, cost2, n)
    if status == "unbounded":
        direction = [Fraction(0)] * n
        direction[enter] = Fraction(1)
        for i in range(len(tab)):
            direction[basis[i]] = -tab[i][enter]
        ray = [direction[j] - direction[nv + j] for j in range(nv)]
        return "unbounded", None, ray
    value = sum(cost2[basis[i]] * tab[i][-1] for i in range(len(tab)))
    return "optimal", value, None


def in_conic_hull(v, generators) -> bool:
    """Exact test whether v = sum lambda_i u_i with lambda_i >= 0 (Q)."""
    if not generators:
        return all(x == 0 for x in v)
    return _phase1_feasible([list(u) for u in generators], list(v))


def _phase1_feasible(gens, target) -> bool:
    """Phase-1 simplex (Bland's rule) for {G^T lambda = target, lambda >= 0}."""
    m = len(target)
    n = len(gens)
    # rows: equations sum_j gens[j][i] * x_j (+ artificial) = target[i]
    a = [[Fraction(gens[j][i]) for j in range(n)] for i in range(m)]
    b = [Fraction(x) for x in target]
    for i in range(m):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]
    # add artificial variables
    total = n + m
    tab = [a[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * n + [Fraction(1)] * m

    def reduced_costs():
        y = [cost[basis[i]] for i in range(m)]
        rc = []
        for j in range(total):
            rc.append(cost[j] - sum(y[i] * tab[i][j] for i in range(m)))
        return rc

    while True:
        rc = reduced_costs()
        enter = next((j for j in range(total) if rc[j] < 0), None)
        if enter is None:
            break
        ratios = [
            (tab[i][-1] / tab[i][enter], basis[i], i)
            for i in range(m)
            if tab[i][enter] > 0
        ]
        if not ratios:
            break
        _, _, leave = min(ratios, key=lambda x: (x[0], x[1]))
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f_ = tab[i][enter]
                tab[i] = [x - f_ * y for x, y in zip(tab[i], tab[leave])]
        basis[leave] = enter
    objective = sum(tab[i][-1] for i in range(m) if basis[i] >= n)
    return objective == 0
