"""Representations of the triple-arm quiver T_n and Schofield semi-invariants.

T_n has three arms of vertices 1..n-1 joined at a central vertex of dimension
n; the standard dimension vector puts dimension k at the k-th vertex of each
arm.  Representations act on row vectors, so the matrix attached to the arrow
k -> k+1 has size k x (k+1) and the path from arm vertex i to the center is
the left-to-right product of the arm matrices from index i on.

A presentation P_1 -> P_0 (P_0 a number of copies of P_n) is evaluated at a
representation N by assembling the block matrix of path values, one row block
per P_1 summand and one column block per P_n copy; its determinant is the
semi-invariant s(f, N).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exact import det_gauss, invert_matrix, mat_mul, rank
from .hive import build_delta, delta_vertices, is_frozen


@dataclass(frozen=True)
class RepTn:
    n: int
    mats: dict  # (arm, k) -> tuple of row tuples (Fraction), size k x (k+1)

    def matrix(self, arm: int, k: int):
        return [list(row) for row in self.mats[(arm, k)]]

    def path(self, arm: int, i: int):
        """Value of the path from arm vertex i to the center (i x n)."""
        n = self.n
        out = self.matrix(arm, i)
        for k in range(i + 1, n):
            out = mat_mul(out, self.matrix(arm, k))
        return out


def make_rep(n: int, mats: dict) -> RepTn:
    frozen = {}
    for arm in (1, 2, 3):
        for k in range(1, n):
            m = mats[(arm, k)]
            if len(m) != k or any(len(row) != k + 1 for row in m):
                raise ValueError(f"matrix at arm {arm}, index {k} must be {k}x{k + 1}")
            frozen[(arm, k)] = tuple(tuple(Fraction(x) for x in row) for row in m)
    return RepTn(n, frozen)


def random_rep(n: int, bound: int = 100, seed: int | None = None) -> RepTn:
    rng = random.Random(seed)
    mats = {
        (arm, k): [[rng.randint(-bound, bound) for _ in range(k + 1)] for _ in range(k)]
        for arm in (1, 2, 3)
        for k in range(1, n)
    }
    return make_rep(n, mats)


# -- presentations ------------------------------------------------------------


@dataclass(frozen=True)
class PresentationMatrix:
    n: int
    summands: tuple  # (arm, index) per P_1 summand, zero summands dropped
    p0_count: int  # number of P_n copies in P_0
    entries: tuple  # entries[r][c] integer coefficient of the path p_index^arm
    weight: tuple  # layout (a_1..a_{n-1}; b_1..b_{n-1}; c_1..c_{n-1}; z)


def _presentation(n, summands, columns):
    """Build a presentation, dropping zero summands (index 0)."""
    kept = [(s, col) for s, col in zip(summands, columns) if s[1] != 0]
    if any(idx >= n or idx < 0 for (_, idx), _ in kept):
        raise ValueError("summand index out of range")
    summs = tuple(s for s, _ in kept)
    p0 = max((max(c) for _, c in kept), default=0) + 1
    entries = tuple(tuple(1 if t in col else 0 for t in range(p0)) for _, col in kept)
    w = [0] * (3 * (n - 1) + 1)
    w[-1] = p0
    for arm, idx in summs:
        w[(arm - 1) * (n - 1) + idx - 1] -= 1
    return PresentationMatrix(n, summs, p0, entries, tuple(w))


def presentation_f(i: int, j: int, n: int) -> PresentationMatrix:
    if (i, j) not in set(delta_vertices(n)):
        raise ValueError(f"({i},{j}) is not a vertex of the hive quiver")
    k = n - i - j
    return _presentation(n, [(1, i), (2, j), (3, k)], [{0}, {0}, {0}])


def presentation_fprime(i: int, j: int, n: int) -> PresentationMatrix:
    if (i, j) not in set(delta_vertices(n)) or is_frozen((i, j), n):
        raise ValueError(f"({i},{j}) is not a mutable vertex of the hive quiver")
    k = n - i - j
    summands = [(1, i - 1), (2, j + 1), (3, k - 1), (1, i + 1), (2, j - 1), (3, k + 1)]
    columns = [{0}, {0}, {0}, {1}, {1}, {0, 1}]
    return _presentation(n, summands, columns)


def s_eval(pres: PresentationMatrix, rep: RepTn) -> Fraction:
    """det of the assembled path-value block matrix."""
    n = pres.n
    if rep.n != n:
        raise ValueError("representation size mismatch")
    total_rows = sum(idx for _, idx in pres.summands)
    if total_rows != n * pres.p0_count:
        raise ValueError("weight pairing nonzero: assembled matrix is not square")
    block = []
    for (arm, idx), row_entries in zip(pres.summands, pres.entries):
        path = rep.path(arm, idx)
        for r in range(idx):
            row = []
            for c in range(pres.p0_count):
                coef = row_entries[c]
                if coef:
                    row.extend(coef * x for x in path[r])
                else:
                    row.extend([Fraction(0)] * n)
            block.append(row)
    return det_gauss(block)


# -- special representations ---------------------------------------------------


def special_reps(n: int, i: int, j: int) -> tuple[RepTn, RepTn]:
    """The two handcrafted representations pinning the exchange identity.

    M: arms 1 and 2 carry the blocks (I_k 0), arm 3 carries (0 I_k); the last
    matrix on arm 2 is the band with 1 at column - row in {i-1, i, i+1}.
    M': same, with the last matrix on arm 1 replaced by the double diagonal
    (I_{n-1} 0) + (0 I_{n-1}).  At M the specialization triple
    (s_{i,j}, s_{i,j+1}, s_{i,j-1}) follows the j mod 3 sign table, the four
    surrounding semi-invariants are units, and s'_{i,j}(M) = (-1)^n.
    """

    def ileft(k):  # (I_k 0)
        return [[1 if c == r else 0 for c in range(k + 1)] for r in range(k)]

    def iright(k):  # (0 I_k)
        return [[1 if c == r + 1 else 0 for c in range(k + 1)] for r in range(k)]

    mats = {}
    for k in range(1, n):
        mats[(1, k)] = ileft(k)
        mats[(2, k)] = ileft(k)
        mats[(3, k)] = iright(k)
    band = [
        [1 if (c - r) in (i - 1, i, i + 1) else 0 for c in range(n)] for r in range(n - 1)
    ]
    mats[(2, n - 1)] = band
    m = make_rep(n, mats)
    mats2 = dict(mats)
    both = [[1 if c in (r, r + 1) else 0 for c in range(n)] for r in range(n - 1)]
    mats2[(1, n - 1)] = both
    m_prime = make_rep(n, mats2)
    return m, m_prime


# -- exchange identity ----------------------------------------------------------

_EXCHANGE_SIGN: dict = {}


def exchange_sign(n: int):
    """The single recorded sign absorbing summand-order conventions, if known."""
    return _EXCHANGE_SIGN.get(n)


def check_exchange(n: int, i: int, j: int, trials: int = 10, seed: int | None = None) -> bool:
    """(-1)^n s_{i,j} s'_{i,j} = s_{i-1,j}s_{i,j+1}s_{i+1,j-1} + s_{i+1,j}s_{i,j-1}s_{i-1,j+1}

    Verified exactly at random representations, up to one constant sign per n
    (recorded on first determination, then enforced).
    """
    f = presentation_f(i, j, n)
    fp = presentation_fprime(i, j, n)
    terms1 = [presentation_f(*v, n) for v in ((i - 1, j), (i, j + 1), (i + 1, j - 1))]
    terms2 = [presentation_f(*v, n) for v in ((i + 1, j), (i, j - 1), (i - 1, j + 1))]
    rng = random.Random(seed)
    sign_n = (-1) ** n
    for _ in range(trials):
        rep = random_rep(n, 20, rng.randrange(1 << 30))
        lhs = sign_n * s_eval(f, rep) * s_eval(fp, rep)
        rhs = Fraction(1)
        for t in terms1:
            rhs *= s_eval(t, rep)
        acc = Fraction(1)
        for t in terms2:
            acc *= s_eval(t, rep)
        rhs += acc
        if lhs == 0 and rhs == 0:
            continue
        if lhs == rhs:
            found = 1
        elif lhs == -rhs:
            found = -1
        else:
            return False
        recorded = _EXCHANGE_SIGN.setdefault(n, found)
        if recorded != found:
            return False
    return True


# -- algebraic independence ------------------------------------------------------


def _jacobian_row(pres: PresentationMatrix, rep: RepTn):
    """Exact gradient of s(pres, .) at rep, via d det A = tr(adj A . dA).

    The block of A produced by summand (arm, idx) and P_n copy c is
    coef * L X_t R for each arm matrix X_t with t >= idx, where L and R are
    the partial path products.  The derivative with respect to X_t is then
    the sum over blocks of coef * (R . adj(A)[colblock, rowblock] . L)^T.
    """
    n = pres.n
    a = []
    row_spans = []
    r0 = 0
    for (arm, idx), row_entries in zip(pres.summands, pres.entries):
        path = rep.path(arm, idx)
        row_spans.append((r0, idx))
        for r in range(idx):
            row = []
            for c in range(pres.p0_count):
                coef = row_entries[c]
                row.extend(coef * x if coef else Fraction(0) for x in path[r])
            a.append(row)
        r0 += idx
    det = det_gauss(a)
    if det == 0:
        return None
    inv = invert_matrix(a)
    adj = [[det * x for x in row] for row in inv]
    grads = {
        (arm, t): [[Fraction(0)] * (t + 1) for _ in range(t)]
        for arm in (1, 2, 3)
        for t in range(1, n)
    }
    for (arm, idx), row_entries, (r0, nrows) in zip(pres.summands, pres.entries, row_spans):
        # prefix products L_t = X_idx ... X_{t-1} (identity for t = idx)
        left = [[Fraction(int(p == q)) for q in range(idx)] for p in range(idx)]
        for t in range(idx, n):
            # R_t = X_{t+1} ... X_{n-1}
            right = [[Fraction(int(p == q)) for q in range(n)] for p in range(t + 1)]
            for s in range(t + 1, n):
                right = mat_mul(right, rep.matrix(arm, s))
            for c in range(pres.p0_count):
                coef = row_entries[c]
                if not coef:
                    continue
                sl = [
                    [adj[c * n + q][r0 + p] for p in range(nrows)] for q in range(n)
                ]
                mid = mat_mul(mat_mul(right, sl), left)  # (t+1) x t
                g = grads[(arm, t)]
                for p in range(t):
                    for q in range(t + 1):
                        g[p][q] += coef * mid[q][p]
            left = mat_mul(left, rep.matrix(arm, t))
    flat = []
    for arm in (1, 2, 3):
        for t in range(1, n):
            for row in grads[(arm, t)]:
                flat.extend(row)
    return flat


def independence_rank(n: int, seed: int | None = None, attempts: int = 5) -> int:
    """Rank of the exact Jacobian of all s_{i,j} at a random integer point."""
    verts = delta_vertices(n)
    rng = random.Random(seed)
    best = 0
    for _ in range(attempts):
        rep = random_rep(n, 20, rng.randrange(1 << 30))
        rows = []
        ok = True
        for (i, j) in verts:
            row = _jacobian_row(presentation_f(i, j, n), rep)
            if row is None:
                ok = False
                break
            rows.append(row)
        if not ok:
            continue
        best = max(best, rank(rows))
        if best == len(verts):
            return best
    return best


# -- evaluation of cluster data ---------------------------------------------------


def s_values(n: int, rep: RepTn) -> dict:
    """s_{i,j}(rep) for every vertex of the hive quiver."""
    return {(i, j): s_eval(presentation_f(i, j, n), rep) for (i, j) in delta_vertices(n)}


def eval_cluster_variable(z, rep: RepTn, n: int, vertices=None) -> Fraction:
    """Substitute x_{i,j} -> s_{i,j}(rep) into a Laurent polynomial.

    The variable slots of z follow the hive quiver's vertex order (pass
    `vertices` explicitly to override).
    """
    if vertices is None:
        vertices = build_delta(n).vertices
    vals = s_values(n, rep)
    ordered = [vals[v] for v in vertices]
    if any(x == 0 for x in ordered):
        raise ValueError("resample: some s_{i,j} vanishes at this representation")
    return z.substitute(ordered)


def rescale_rep(rep: RepTn, diag: dict) -> RepTn:
    """Base-change action of a diagonal group element on the representation.

    diag maps each T_n vertex ((arm, k) or "center") to a list of nonzero
    rationals; the arrow matrix X: t -> h becomes g_t^{-1} X g_h.
    """
    n = rep.n
    mats = {}
    for arm in (1, 2, 3):
        for k in range(1, n):
            gt = diag.get((arm, k), [Fraction(1)] * k)
            gh = (
                diag.get("center", [Fraction(1)] * n)
                if k == n - 1
                else diag.get((arm, k + 1), [Fraction(1)] * (k + 1))
            )
            m = rep.matrix(arm, k)
            mats[(arm, k)] = [
                [m[r][c] * Fraction(gh[c]) / Fraction(gt[r]) for c in range(k + 1)]
                for r in range(k)
            ]
    return make_rep(n, mats)


def presentation_weight_pairing(pres: PresentationMatrix, diag: dict) -> Fraction:
    """prod_v det(g_v)^{sigma(v)} for diagonal g, sigma the presentation weight."""
    n = pres.n
    factor = Fraction(1)
    w = pres.weight
    for arm in (1, 2, 3):
        for k in range(1, n):
            e = w[(arm - 1) * (n - 1) + k - 1]
            if e:
                d = Fraction(1)
                for x in diag.get((arm, k), [Fraction(1)] * k):
                    d *= Fraction(x)
                factor *= d**e
    d = Fraction(1)
    for x in diag.get("center", [Fraction(1)] * n):
        d *= Fraction(x)
    factor *= d ** w[-1]
    return factor


# -- serialization -----------------------------------------------------------------


def rep_to_dict(rep: RepTn) -> dict:
    return {
        "n": rep.n,
        "arms": [
            {
                "arm": arm,
                "index": k,
                "matrix": [[str(x) for x in row] for row in rep.mats[(arm, k)]],
            }
            for arm in (1, 2, 3)
            for k in range(1, rep.n)
        ],
    }


def rep_from_dict(d: dict) -> RepTn:
    n = d["n"]
    mats = {
        (e["arm"], e["index"]): [[Fraction(x) for x in row] for row in e["matrix"]]
        for e in d["arms"]
    }
    return make_rep(n, mats)
