"""The ice hive quiver, its potential, Jacobian algebra, and module computations.

Vertices are pairs (i,j) with i,j >= 0, i+j <= n, excluding the three corners;
a vertex is frozen iff it lies on the boundary.  Arrows come in three kinds:

    a: (i,j) -> (i,j+1)      b: (i,j) -> (i-1,j)      c: (i,j) -> (i+1,j-1)

present whenever both endpoints are vertices and not both frozen.  The
potential is the signed sum of all surviving unit-triangle 3-cycles; its
cyclic derivatives give length-2 commutation and boundary-vanishing
relations, which form a terminating, confluent rewriting system.
"""

from __future__ import annotations

import random
from collections import namedtuple
from fractions import Fraction

from .exact import rank as mat_rank
from .quiver import IceQuiver

Arrow = namedtuple("Arrow", "kind tail")

_STEP = {"a": (0, 1), "b": (-1, 0), "c": (1, -1)}
_ORDER = {"a": 0, "b": 1, "c": 2}


def arrow_head(ar: Arrow) -> tuple:
    di, dj = _STEP[ar.kind]
    return (ar.tail[0] + di, ar.tail[1] + dj)


def arrow_id(ar: Arrow) -> str:
    return f"{ar.kind}({ar.tail[0]},{ar.tail[1]})"


def delta_vertices(n: int) -> list[tuple]:
    if n < 2:
        raise ValueError("n must be >= 2")
    out = []
    for i in range(n + 1):
        for j in range(n + 1 - i):
            if (i, j) in ((0, 0), (0, n), (n, 0)):
                continue
            out.append((i, j))
    return out


def is_frozen(v: tuple, n: int) -> bool:
    i, j = v
    return i == 0 or j == 0 or i + j == n


def delta_arrows(n: int) -> list[Arrow]:
    verts = set(delta_vertices(n))
    out = []
    for v in sorted(verts):
        for kind in "abc":
            ar = Arrow(kind, v)
            h = arrow_head(ar)
            if h in verts and not (is_frozen(v, n) and is_frozen(h, n)):
                out.append(ar)
    return out


def build_delta(n: int) -> IceQuiver:
    verts = delta_vertices(n)
    frozen = {v for v in verts if is_frozen(v, n)}
    arrows = {}
    for ar in delta_arrows(n):
        arrows[(ar.tail, arrow_head(ar))] = 1
    return IceQuiver.make(verts, frozen, arrows, n)


# -- weight configuration ----------------------------------------------------


def f_weight(i: int, j: int, n: int) -> tuple:
    """The level-1 weight e_n - e_i^1 - e_j^2 - e_{n-i-j}^3 (e_0 := 0).

    Coordinate layout: (a_1..a_{n-1}; b_1..b_{n-1}; c_1..c_{n-1}; z).
    """
    w = [0] * (3 * n - 2)
    k = n - i - j
    if i:
        w[i - 1] -= 1
    if j:
        w[(n - 1) + j - 1] -= 1
    if k:
        w[2 * (n - 1) + k - 1] -= 1
    w[-1] = 1
    return tuple(w)


def build_sigma(n: int) -> dict:
    return {(i, j): f_weight(i, j, n) for (i, j) in delta_vertices(n)}


def weight_to_text(w) -> str:
    n = (len(w) + 2) // 3
    parts = [w[: n - 1], w[n - 1 : 2 * (n - 1)], w[2 * (n - 1) : 3 * (n - 1)]]
    return ";".join(",".join(str(x) for x in p) for p in parts) + f";{w[-1]}"


def text_to_weight(s: str) -> tuple:
    blocks = s.split(";")
    if len(blocks) != 4:
        raise ValueError("weight text must have four ';'-separated blocks")
    a, b, c = (
        [int(x) for x in blk.split(",")] if blk.strip() else [] for blk in blocks[:3]
    )
    if not (len(a) == len(b) == len(c)):
        raise ValueError("arm blocks must have equal length")
    return tuple(a + b + c + [int(blocks[3])])


def weight_level(w) -> int:
    return w[-1]


# -- potential and Jacobian algebra ------------------------------------------


def build_potential(n: int) -> list[tuple[int, tuple[Arrow, ...]]]:
    """Signed unit-triangle 3-cycles of Delta_n (empty for n = 3)."""
    present = set(delta_arrows(n))
    terms = []
    for v in sorted(set(delta_vertices(n))):
        i, j = v
        # up triangle: (i,j) -> (i,j+1) -> (i-1,j+1) -> (i,j)
        up = (Arrow("a", (i, j)), Arrow("b", (i, j + 1)), Arrow("c", (i - 1, j + 1)))
        if all(ar in present for ar in up):
            terms.append((1, up))
        # down triangle: (i,j) -> (i,j+1) -> (i+1,j) -> (i,j)
        down = (Arrow("a", (i, j)), Arrow("c", (i, j + 1)), Arrow("b", (i + 1, j)))
        if all(ar in present for ar in down):
            terms.append((-1, down))
    return terms


def cyclic_derivative(potential, arrow: Arrow) -> list[tuple[int, tuple[Arrow, ...]]]:
    """d_x W = sum over factorizations W = u x v of v u."""
    out = []
    for sign, cycle in potential:
        for k, ar in enumerate(cycle):
            if ar == arrow:
                out.append((sign, cycle[k + 1 :] + cycle[:k]))
    return out


def potential_to_dict(n: int) -> dict:
    return {
        "potential": [
            {"sign": sign, "cycle": [arrow_id(ar) for ar in cycle]}
            for sign, cycle in build_potential(n)
        ]
    }


class JModel:
    """Rewriting model of the Jacobian algebra J_n = k Delta_n / (dW_n)."""

    def __init__(self, n: int):
        self.n = n
        self.quiver = build_delta(n)
        self.arrows = delta_arrows(n)
        self.potential = build_potential(n)
        self._out: dict = {}
        for ar in self.arrows:
            self._out.setdefault(ar.tail, []).append(ar)
        # each relation equates (or kills) length-2 paths; orient descending
        # kind words to ascending ones (a < b < c), so rewriting terminates
        self.rules: dict = {}
        for ar in self.arrows:
            terms = cyclic_derivative(self.potential, ar)
            if not terms:
                continue
            if len(terms) == 1:
                self.rules[terms[0][1]] = None
            elif len(terms) == 2:
                (s1, p1), (s2, p2) = terms
                if s1 == s2:
                    raise AssertionError("unexpected derivative signs")
                w1 = tuple(_ORDER[x.kind] for x in p1)
                w2 = tuple(_ORDER[x.kind] for x in p2)
                if w1 > w2:
                    self.rules[p1] = p2
                else:
                    self.rules[p2] = p1
            else:
                raise AssertionError("arrow in more than two potential terms")
        self._maxrule = max((len(k) for k in self.rules), default=2)
        self._complete()
        self._proj_cache: dict = {}
        self._paths_cache: dict = {}

    # -- words ---------------------------------------------------------------

    def normal_form(self, path: tuple) -> tuple | None:
        """Reduce a path to its normal form; None means zero in J_n."""
        p = list(path)
        i = 0
        while i < len(p) - 1:
            hit = False
            for ln in range(2, min(self._maxrule, len(p) - i) + 1):
                key = tuple(p[i : i + ln])
                if key in self.rules:
                    rep = self.rules[key]
                    if rep is None:
                        return None
                    p[i : i + ln] = list(rep)
                    i = max(i - self._maxrule + 1, 0)
                    hit = True
                    break
            if not hit:
                i += 1
        return tuple(p)

    def is_irreducible(self, path: tuple) -> bool:
        for i in range(len(path)):
            for ln in range(2, min(self._maxrule, len(path) - i) + 1):
                if tuple(path[i : i + ln]) in self.rules:
                    return False
        return True

    def _word_key(self, word: tuple | None):
        # well-founded rewriting order: None (zero) < shorter < deglex on kinds
        if word is None:
            return (-1,)
        return (len(word), tuple(_ORDER[a.kind] for a in word), word)

    def _complete(self):
        """Knuth-Bendix completion: resolve overlap ambiguities into new rules."""
        for _ in range(50):
            new = {}
            rules = list(self.rules.items())
            for l1, r1 in rules:
                for l2, r2 in rules:
                    for k in range(1, min(len(l1), len(l2))):
                        if l1[-k:] != l2[:k]:
                            continue
                        tail = l2[k:]
                        w1 = None if r1 is None else self.normal_form(r1 + tail)
                        w2 = None if r2 is None else self.normal_form(l1[:-k] + r2)
                        if w1 != w2:
                            big, small = sorted((w1, w2), key=self._word_key, reverse=True)
                            if big not in self.rules and big not in new:
                                new[big] = small
            if not new:
                return
            self.rules.update(new)
            self._maxrule = max(self._maxrule, max(len(k) for k in new))
        raise RuntimeError("rewriting completion did not stabilize")

    def paths_from(self, u, cap: int = 0) -> list[tuple]:
        """All irreducible paths starting at u (including the empty path)."""
        if u in self._paths_cache:
            return self._paths_cache[u]
        cap = cap or 6 * self.n
        result = [()]
        frontier = [((), u)]
        length = 0
        while frontier:
            length += 1
            if length > cap:
                raise RuntimeError("path cap exceeded; J may be infinite-dimensional")
            nxt = []
            for path, end in frontier:
                for ar in self._out.get(end, []):
                    cand = path + (ar,)
                    if any(
                        cand[-ln:] in self.rules
                        for ln in range(2, min(self._maxrule, len(cand)) + 1)
                    ):
                        continue
                    nxt.append((cand, arrow_head(ar)))
            result.extend(p for p, _ in nxt)
            frontier = nxt
        self._paths_cache[u] = result
        return result

    def path_end(self, u, path: tuple):
        return arrow_head(path[-1]) if path else u

    def proj_basis(self, u) -> dict:
        """Basis of the projective P_u: irreducible paths from u, by endpoint."""
        if u not in self._proj_cache:
            basis: dict = {}
            for p in self.paths_from(u):
                basis.setdefault(self.path_end(u, p), []).append(p)
            self._proj_cache[u] = basis
        return self._proj_cache[u]

    def inj_basis(self, v) -> dict:
        """Dual basis of the injective I_v: irreducible paths ending at v."""
        basis: dict = {}
        for u in self.quiver.vertices:
            for p in self.proj_basis(u).get(v, []):
                basis.setdefault(u, []).append((u, p))
        return basis

    def j_dim(self, cap: int = 0) -> int:
        return sum(len(self.paths_from(u, cap)) for u in self.quiver.vertices)

    def check_confluence(self) -> bool:
        """All overlap ambiguities of the completed system resolve to equal normal forms."""
        rules = list(self.rules.items())
        for l1, r1 in rules:
            for l2, r2 in rules:
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] != l2[:k]:
                        continue
                    tail = l2[k:]
                    w1 = None if r1 is None else self.normal_form(r1 + tail)
                    w2 = None if r2 is None else self.normal_form(l1[:-k] + r2)
                    if w1 != w2:
                        return False
        return True


# -- string modules and injective presentations -------------------------------


def rho_vertex(v: tuple, n: int) -> tuple:
    i, j = v
    return (j, n - i - j)


def rho_arrow(ar: Arrow, n: int) -> Arrow:
    return Arrow({"a": "c", "c": "b", "b": "a"}[ar.kind], rho_vertex(ar.tail, n))


def string_lines(n: int) -> list[dict]:
    """The 3(n-1) boundary-to-boundary straight lines, source to sink.

    Degenerate lines (both endpoints frozen and adjacent, hence no arrow)
    carry the simple module at their sink.
    """
    lines = []
    for d in range(1, n):  # anti-diagonals, kind c, source (0,d)
        lines.append({"family": "c", "index": d,
                      "support": [(k, d - k) for k in range(d + 1)]})
    for i in range(1, n):  # columns, kind a, source (i,0)
        lines.append({"family": "a", "index": i,
                      "support": [(i, l) for l in range(n - i + 1)]})
    for j in range(1, n):  # rows, kind b, source (n-j,j)
        lines.append({"family": "b", "index": j,
                      "support": [(i, j) for i in range(n - j, -1, -1)]})
    for line in lines:
        line["degenerate"] = len(line["support"]) == 2
        line["sink"] = line["support"][-1]
        line["source"] = line["support"][0]
    return lines


def string_dims(line: dict) -> dict:
    if line["degenerate"]:
        return {line["sink"]: 1}
    return {v: 1 for v in line["support"]}


def string_subrep_dims(line: dict) -> list[dict]:
    """Dimension vectors of all submodules: arrow-direction suffixes."""
    supp = [line["sink"]] if line["degenerate"] else line["support"]
    return [{v: 1 for v in supp[k:]} for k in range(len(supp) + 1)]


def injective_presentations(n: int) -> list[dict]:
    """For each string module: sink injective and the connecting length-2 paths.

    Derived for the anti-diagonal family and carried to the other two
    families by the order-3 rotational symmetry of the triangle.
    """
    base = []
    # anti-diagonal d: 0 -> T -> I_(d,0) -> I_(d-1,0) [ + I_(n-1,1) when d = n-1 ]
    for d in range(2, n):
        maps = [((d - 1, 0), (Arrow("a", (d - 1, 0)), Arrow("c", (d - 1, 1))))]
        if d == n - 1:
            maps.append(((n - 1, 1), (Arrow("b", (n - 1, 1)), Arrow("c", (n - 2, 1)))))
        base.append({"family": "c", "index": d, "sink": (d, 0), "maps": maps})
    out = list(base)
    for power, family in ((1, "b"), (2, "a")):
        for pres in base:
            sink, maps = pres["sink"], pres["maps"]
            for _ in range(power):
                sink = rho_vertex(sink, n)
                maps = [
                    (rho_vertex(tgt, n), tuple(rho_arrow(ar, n) for ar in path))
                    for tgt, path in maps
                ]
            idx = next(
                l["index"] for l in string_lines(n) if l["family"] == family and l["sink"] == sink
            )
            out.append({"family": family, "index": idx, "sink": sink, "maps": maps})
    return out


def verify_presentations(n: int, jm: JModel | None = None) -> bool:
    """Check each non-degenerate string is the kernel of its injective map."""
    jm = jm or JModel(n)
    lines = {(l["family"], l["index"]): l for l in string_lines(n)}
    for pres in injective_presentations(n):
        line = lines[(pres["family"], pres["index"])]
        expected = string_dims(line)
        sink = pres["sink"]
        for w in jm.quiver.vertices:
            total = jm.proj_basis(w).get(sink, [])
            image = set()
            for tgt, q in pres["maps"]:
                for p in jm.proj_basis(w).get(tgt, []):
                    nf = jm.normal_form(p + q)
                    if nf is not None:
                        image.add(nf)
            if not image <= set(total):
                return False
            if len(total) - len(image) != expected.get(w, 0):
                return False
    # degenerate strings are the simple injectives at their sinks
    for line in string_lines(n):
        if line["degenerate"]:
            basis = jm.inj_basis(line["sink"])
            dims = {w: len(b) for w, b in basis.items() if b}
            if dims != {line["sink"]: 1}:
                return False
    return True


# -- generic cokernel sampling -------------------------------------------------


def coker_sample(jm: JModel, g: dict, trials: int = 5, seed: int = 0, bound: int = 100) -> dict:
    """Sample generic maps P([g]_+) -> P([-g]_+) and measure the cokernel.

    Returns the dimension vector and frozen support minimized (by total
    frozen dimension) over the trials; mu-supported means empty frozen
    support.
    """
    rng = random.Random(seed)
    pos = [(v, g[v]) for v in sorted(g) if g.get(v, 0) > 0]
    neg = [(v, -g[v]) for v in sorted(g) if g.get(v, 0) < 0]
    p1 = [v for v, m in pos for _ in range(m)]
    p0 = [v for v, m in neg for _ in range(m)]
    hom_paths = {
        (u0, u1): jm.proj_basis(u0).get(u1, []) for u0 in set(p0) for u1 in set(p1)
    }
    best = None
    for _ in range(max(trials, 1)):
        coeffs = {
            (r, c): [Fraction(rng.randint(-bound, bound)) for _ in hom_paths[(u0, u1)]]
            for r, u0 in enumerate(p0)
            for c, u1 in enumerate(p1)
        }
        dims = {}
        for v in jm.quiver.vertices:
            row_basis = [(r, q) for r, u0 in enumerate(p0) for q in jm.proj_basis(u0).get(v, [])]
            col_basis = [(c, q) for c, u1 in enumerate(p1) for q in jm.proj_basis(u1).get(v, [])]
            row_index = {key: idx for idx, key in enumerate(row_basis)}
            mat = [[Fraction(0)] * len(col_basis) for _ in row_basis]
            for cidx, (c, q) in enumerate(col_basis):
                u1 = p1[c]
                for r, u0 in enumerate(p0):
                    paths = hom_paths[(u0, u1)]
                    cs = coeffs[(r, c)]
                    for coef, p in zip(cs, paths):
                        nf = jm.normal_form(p + q)
                        if nf is not None:
                            mat[row_index[(r, nf)]][cidx] += coef
            d = len(row_basis) - (mat_rank(mat) if row_basis and col_basis else 0)
            if d:
                dims[v] = d
        frozen_support = {v for v in dims if v in jm.quiver.frozen}
        score = sum(dims[v] for v in frozen_support)
        if best is None or score < best[0]:
            best = (score, dims, frozen_support)
    return {
        "dims": best[1],
        "frozen_support": best[2],
        "mu_supported": not best[2],
    }
