"""Seeds, exchange-relation mutation, and cluster-variable enumeration.

A seed pairs an ice quiver with one Laurent polynomial per vertex, all
expressed in the initial cluster variables (one variable slot per vertex of
the starting quiver, in the quiver's vertex order).  Mutation replaces the
entry at a mutable vertex through the exchange relation

    x'_u = (prod_{v -> u} x_v + prod_{u -> w} x_w) / x_u

computed by exact Laurent division; a failed division means the seed data is
inconsistent and is reported, never ignored.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .exact import ExactDivisionError, LaurentPoly, solve_rational
from .quiver import IceQuiver


class ClusterError(ValueError):
    """An algebraic consistency failure (corrupted seed or bad expression)."""


@dataclass(frozen=True)
class Seed:
    quiver: IceQuiver
    cluster: dict  # vertex -> LaurentPoly in the initial variables
    sigma: dict | None = None  # optional weight configuration

    @property
    def nvars(self) -> int:
        return len(self.quiver.vertices)

    def key(self) -> tuple:
        """Canonical key of the unordered mutable part of the cluster."""
        return tuple(sorted(self.cluster[u].key() for u in self.quiver.mutable))


def initial_seed(quiver: IceQuiver, sigma: dict | None = None) -> Seed:
    nv = len(quiver.vertices)
    cluster = {
        v: LaurentPoly.variable(nv, idx) for idx, v in enumerate(quiver.vertices)
    }
    return Seed(quiver, cluster, sigma)


def mutate_seed(seed: Seed, u) -> Seed:
    """Mutation at a mutable vertex through the exchange relation."""
    q = seed.quiver
    if u in q.frozen:
        raise ValueError("mutation at frozen vertex")
    nv = len(q.vertices)
    p_in = LaurentPoly.const(nv, 1)
    for (v, m) in q.in_arrows(u):
        p_in = p_in * seed.cluster[v] ** m
    p_out = LaurentPoly.const(nv, 1)
    for (w, m) in q.out_arrows(u):
        p_out = p_out * seed.cluster[w] ** m
    try:
        x_new = (p_in + p_out).exact_div(seed.cluster[u])
    except ExactDivisionError as exc:
        raise ClusterError(f"corrupted seed: exchange division failed at {u}") from exc
    cluster = dict(seed.cluster)
    cluster[u] = x_new
    sigma = q.mutate_weight(seed.sigma, u) if seed.sigma is not None else None
    return Seed(q.mutate(u), cluster, sigma)


def exchange_parts(seed: Seed, u) -> tuple[LaurentPoly, LaurentPoly]:
    """The two exchange monomial products (in-product, out-product) at u."""
    q = seed.quiver
    nv = len(q.vertices)
    p_in = LaurentPoly.const(nv, 1)
    for (v, m) in q.in_arrows(u):
        p_in = p_in * seed.cluster[v] ** m
    p_out = LaurentPoly.const(nv, 1)
    for (w, m) in q.out_arrows(u):
        p_out = p_out * seed.cluster[w] ** m
    return p_in, p_out


def y_hat(seed: Seed, u) -> LaurentPoly:
    """The monomial x^{-b_u} in the seed's own cluster variables."""
    q = seed.quiver
    if u in q.frozen:
        raise ValueError("y_hat at frozen vertex")
    nv = len(q.vertices)
    exp = [-q.b_entry(u, v) for v in q.vertices]
    return LaurentPoly.monomial(nv, exp)


def y_hat_initial(seed: Seed, u) -> tuple[LaurentPoly, LaurentPoly]:
    """y_hat of the seed expanded in the initial variables, as (num, den)."""
    q = seed.quiver
    nv = len(q.vertices)
    num = LaurentPoly.const(nv, 1)
    den = LaurentPoly.const(nv, 1)
    for v in q.vertices:
        b = q.b_entry(u, v)
        if b < 0:
            num = num * seed.cluster[v] ** (-b)
        elif b > 0:
            den = den * seed.cluster[v] ** b
    return num, den


def extract_g_f(z: LaurentPoly, seed: Seed) -> tuple[tuple, LaurentPoly]:
    """Split z = x^g * F(y_hat) against a full-rank seed.

    Returns (g over all vertices, F as a polynomial in one variable per
    mutable vertex, constant term 1).  Raises ClusterError when z has no
    such form.
    """
    q = seed.quiver
    b = q.b_matrix()
    nmut = len(b)
    nv = len(q.vertices)
    if not z:
        raise ClusterError("zero has no g-vector")
    # grading w with B w = -1 componentwise: every y_hat gets degree +1
    w = solve_rational(b, [Fraction(-1)] * nmut)
    if w is None:
        raise ClusterError("B-matrix is rank-deficient; grading unavailable")
    degs = {m: sum(Fraction(e) * wi for e, wi in zip(m, w)) for m in z.terms}
    dmin = min(degs.values())
    minimal = [m for m, dv in degs.items() if dv == dmin]
    if len(minimal) != 1:
        raise ClusterError("not in x^g*Z[y] form: minimal monomial not unique")
    g = minimal[0]
    if z.terms[g] != 1:
        raise ClusterError("not in x^g*Z[y] form: minimal coefficient is not 1")
    bt = [[Fraction(b[i][j]) for i in range(nmut)] for j in range(nv)]
    fterms = {}
    for m, c in z.terms.items():
        rhs = [Fraction(gi - mi) for gi, mi in zip(g, m)]
        e = solve_rational(bt, rhs)
        if e is None:
            raise ClusterError("not in x^g*Z[y] form: no exponent solution")
        if any(x.denominator != 1 or x < 0 for x in e):
            raise ClusterError("not in x^g*Z[y] form: exponent not a nonnegative integer")
        fterms[tuple(int(x) for x in e)] = c
    return tuple(g), LaurentPoly(nmut, fterms)


@dataclass(frozen=True)
class ClusterVariableRecord:
    expression: LaurentPoly  # in the initial variables
    g_vector: tuple  # over all vertices, initial order
    f_polynomial: LaurentPoly  # in one variable per mutable vertex
    weight: tuple | None  # g . sigma_n when a weight configuration is attached


@dataclass(frozen=True)
class EnumerationResult:
    variables: tuple  # ClusterVariableRecord, deterministic order
    cluster_count: int
    complete: bool
    initial: Seed


def enumerate_cluster_variables(seed: Seed, budget: int = 100000) -> EnumerationResult:
    """Breadth-first search over seeds, deduplicated by unordered clusters.

    Returns all distinct non-initial data as ClusterVariableRecord entries
    (initial variables included), the number of distinct clusters visited,
    and whether the search finished within budget.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    start = seed
    seen = {start.key()}
    frontier = deque([start])
    variables = {}  # laurent key -> LaurentPoly
    for u in start.quiver.mutable:
        lp = start.cluster[u]
        variables[lp.key()] = lp
    complete = True
    while frontier:
        s = frontier.popleft()
        for u in s.quiver.mutable:
            s2 = mutate_seed(s, u)
            k = s2.key()
            if k in seen:
                continue
            if len(seen) >= budget:
                complete = False
                continue
            seen.add(k)
            lp = s2.cluster[u]
            variables.setdefault(lp.key(), lp)
            frontier.append(s2)
    records = []
    for _, lp in sorted(variables.items()):
        g, f = extract_g_f(lp, start)
        weight = None
        if start.sigma is not None:
            vecs = [start.sigma[v] for v in start.quiver.vertices]
            weight = tuple(
                sum(gi * vec[t] for gi, vec in zip(g, vecs)) for t in range(len(vecs[0]))
            )
        records.append(ClusterVariableRecord(lp, g, f, weight))
    return EnumerationResult(tuple(records), len(seen), complete, start)


def check_upper_membership(z: LaurentPoly, seed: Seed) -> bool:
    """Laurent in this cluster and all adjacent ones, frozen exponents >= 0.

    The seed must be a coordinate seed (each entry a single initial
    variable), e.g. the initial seed or a relabeling of it.
    """
    q = seed.quiver
    nv = len(q.vertices)
    if not z:
        return True
    slot = {}
    for v, lp in seed.cluster.items():
        if not lp.is_monomial():
            raise ValueError("membership check needs a coordinate seed")
        exp, c = lp.monomial_parts()
        if c != 1 or sorted(exp) != [0] * (nv - 1) + [1]:
            raise ValueError("membership check needs a coordinate seed")
        slot[v] = exp.index(1)
    frozen_slots = [slot[v] for v in q.frozen]
    if any(z.min_exponent(i) < 0 for i in frozen_slots):
        return False
    for u in q.mutable:
        if not _laurent_in_adjacent(z, seed, u, slot[u], frozen_slots):
            return False
    return True


def _laurent_in_adjacent(z, seed, u, k, frozen_slots):
    p_in, p_out = exchange_parts(seed, u)
    binom = p_in + p_out
    # split z by the power of x_u
    layers = {}
    for m, c in z.terms.items():
        d = m[k]
        m0 = m[:k] + (0,) + m[k + 1 :]
        layers.setdefault(d, {})[m0] = c
    nv = len(seed.quiver.vertices)
    total = LaurentPoly.zero(nv)
    for d, terms in layers.items():
        part = LaurentPoly(nv, terms)
        if d >= 0:
            part = part * binom**d
        else:
            try:
                part = part.exact_div(binom ** (-d))
            except ExactDivisionError:
                return False
        shift = [0] * nv
        shift[k] = -d  # slot k now carries the adjacent variable x'_u
        total = total + part.shift(shift)
    return all(total.min_exponent(i) >= 0 for i in frozen_slots)


# -- serialization -----------------------------------------------------------

_MONO_RE = re.compile(r"x\[([^\]]+)\](?:\^(-?\d+))?$")


def _vertex_label(v) -> str:
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    return str(v)


def laurent_to_text(lp: LaurentPoly, vertices) -> str:
    """Render as signed integer-coefficient monomials c*x[i,j]^e*..."""
    if not lp:
        return "0"
    pieces = []
    for exp, c in sorted(lp.terms.items(), reverse=True):
        factors = []
        for v, e in zip(vertices, exp):
            if e == 1:
                factors.append(f"x[{_vertex_label(v)}]")
            elif e:
                factors.append(f"x[{_vertex_label(v)}]^{e}")
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


def text_to_laurent(text: str, vertices) -> LaurentPoly:
    """Parse the grammar emitted by laurent_to_text."""
    nv = len(vertices)
    index = {_vertex_label(v): i for i, v in enumerate(vertices)}
    s = text.strip()
    if s == "0":
        return LaurentPoly.zero(nv)
    s = s.replace("- ", "-").replace("+ ", "+")
    chunks = _split_signed(s)
    terms = {}
    for chunk in chunks:
        sign = 1
        body = chunk
        if body.startswith("-"):
            sign, body = -1, body[1:]
        elif body.startswith("+"):
            body = body[1:]
        coef = sign
        exp = [0] * nv
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {chunk!r}")
            m = _MONO_RE.match(factor)
            if m:
                label = m.group(1).replace(" ", "")
                if label not in index:
                    raise ValueError(f"unknown variable x[{label}]")
                exp[index[label]] += int(m.group(2) or 1)
            else:
                coef *= int(factor)
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + coef
    return LaurentPoly(nv, terms)


def _split_signed(s: str) -> list[str]:
    chunks, cur = [], ""
    for i, ch in enumerate(s):
        if ch in "+-" and cur.strip() and s[i - 1] != "^":
            chunks.append(cur.strip())
            cur = ch
        else:
            cur += ch
    if cur.strip():
        chunks.append(cur.strip())
    return chunks


def seed_to_dict(seed: Seed) -> dict:
    verts = seed.quiver.vertices
    out = {
        "quiver": seed.quiver.to_dict(),
        "cluster": {
            _vertex_label(v): laurent_to_text(lp, verts) for v, lp in seed.cluster.items()
        },
    }
    if seed.sigma is not None:
        out["sigma"] = {_vertex_label(v): list(w) for v, w in seed.sigma.items()}
    return out


def seed_from_dict(d: dict) -> Seed:
    q = IceQuiver.from_dict(d["quiver"])
    label_to_vertex = {_vertex_label(v): v for v in q.vertices}
    cluster = {
        label_to_vertex[lbl.replace(" ", "")]: text_to_laurent(txt, q.vertices)
        for lbl, txt in d["cluster"].items()
    }
    sigma = None
    if "sigma" in d:
        sigma = {
            label_to_vertex[lbl.replace(" ", "")]: tuple(w) for lbl, w in d["sigma"].items()
        }
    return Seed(q, cluster, sigma)
