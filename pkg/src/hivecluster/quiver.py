"""Ice quivers with frozen vertices: mutation, B-matrices, weight and g-vector transport."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

Vertex = Hashable


def _vertex_key(v):
    # tuples sort before ints would fail on mixed ids; normalize via repr class
    return (0, v) if isinstance(v, tuple) else (1, (v,))


@dataclass(frozen=True)
class IceQuiver:
    """An ice quiver: no loops, no 2-cycles, no arrows between frozen vertices.

    ``arrows`` maps ordered pairs (tail, head) to positive multiplicities.
    ``vertices`` lists mutable vertices first, then frozen, each block sorted.
    """

    vertices: tuple
    frozen: frozenset
    arrows: Mapping[tuple, int]
    n: int | None = None

    @staticmethod
    def make(vertices, frozen, arrows, n=None) -> "IceQuiver":
        frozen = frozenset(frozen)
        mut = sorted((v for v in vertices if v not in frozen), key=_vertex_key)
        frz = sorted((v for v in vertices if v in frozen), key=_vertex_key)
        arr = {}
        for (u, v), m in dict(arrows).items():
            if m < 0:
                raise ValueError("negative arrow multiplicity")
            if m:
                arr[(u, v)] = arr.get((u, v), 0) + m
        q = IceQuiver(tuple(mut + frz), frozen, arr, n)
        q.validate()
        return q

    def validate(self):
        vs = set(self.vertices)
        for (u, v), m in self.arrows.items():
            if u not in vs or v not in vs:
                raise ValueError(f"arrow endpoint not a vertex: {(u, v)}")
            if u == v:
                raise ValueError(f"loop at {u}")
            if (v, u) in self.arrows:
                raise ValueError(f"2-cycle between {u} and {v}")
            if u in self.frozen and v in self.frozen:
                raise ValueError(f"arrow between frozen vertices {u} -> {v}")

    @property
    def mutable(self) -> tuple:
        return tuple(v for v in self.vertices if v not in self.frozen)

    def out_arrows(self, u):
        return [(v, m) for (t, v), m in self.arrows.items() if t == u]

    def in_arrows(self, u):
        return [(v, m) for (v, h), m in self.arrows.items() if h == u]

    # -- mutation -----------------------------------------------------------

    def mutate(self, u) -> "IceQuiver":
        """Quiver mutation at a mutable vertex u."""
        if u in self.frozen or u not in self.vertices:
            raise ValueError(f"cannot mutate at {u}")
        arr = dict(self.arrows)
        # step 1: for each path v -> u -> w add composite arrows v -> w,
        # except between two frozen vertices
        for (v, m1) in self.in_arrows(u):
            for (w, m2) in self.out_arrows(u):
                if v in self.frozen and w in self.frozen:
                    continue
                arr[(v, w)] = arr.get((v, w), 0) + m1 * m2
        # step 2: reverse all arrows incident to u
        new_arr = {}
        for (t, h), m in arr.items():
            if t == u or h == u:
                new_arr[(h, t)] = new_arr.get((h, t), 0) + m
            else:
                new_arr[(t, h)] = new_arr.get((t, h), 0) + m
        # step 3: cancel all 2-cycles
        done = set()
        for pair in list(new_arr):
            t, h = pair
            if (h, t) in new_arr and pair not in done:
                k = min(new_arr[pair], new_arr[(h, t)])
                new_arr[pair] -= k
                new_arr[(h, t)] -= k
                done.add(pair)
                done.add((h, t))
        new_arr = {k: m for k, m in new_arr.items() if m}
        return IceQuiver.make(self.vertices, self.frozen, new_arr, self.n)

    # -- B-matrix -----------------------------------------------------------

    def b_entry(self, u, v) -> int:
        return self.arrows.get((u, v), 0) - self.arrows.get((v, u), 0)

    def b_matrix(self) -> list[list[int]]:
        """Rows indexed by mutable vertices, columns by all vertices."""
        return [[self.b_entry(u, v) for v in self.vertices] for u in self.mutable]

    # -- transported data ---------------------------------------------------

    def mutate_weight(self, sigma: Mapping, u) -> dict:
        """Transport a weight configuration along mutation at u."""
        if u in self.frozen:
            raise ValueError("mutation at frozen vertex")
        out = dict(sigma)
        total = None
        for (w, m) in self.out_arrows(u):
            contrib = tuple(m * x for x in sigma[w])
            total = contrib if total is None else tuple(a + b for a, b in zip(total, contrib))
        if total is None:
            total = tuple(0 for _ in sigma[u])
        out[u] = tuple(a - b for a, b in zip(total, sigma[u]))
        return out

    def is_weight_config(self, sigma: Mapping) -> bool:
        """True when every exchange relation is balanced: B sigma = 0."""
        for u in self.mutable:
            acc = None
            for v in self.vertices:
                b = self.b_entry(u, v)
                if b:
                    c = tuple(b * x for x in sigma[v])
                    acc = c if acc is None else tuple(a + y for a, y in zip(acc, c))
            if acc and any(acc):
                return False
        return True

    def mutate_g(self, g: Mapping, u) -> dict:
        """Transport an (extended) g-vector along mutation at u."""
        if u in self.frozen:
            raise ValueError("mutation at frozen vertex")
        gu = g.get(u, 0)
        out = dict(g)
        out[u] = -gu
        for v in self.vertices:
            if v == u:
                continue
            b = self.b_entry(u, v)
            if b > 0:
                out[v] = g.get(v, 0) - b * max(-gu, 0)
            elif b < 0:
                out[v] = g.get(v, 0) - b * max(gu, 0)
        return out

    # -- shape recognition ---------------------------------------------------

    def dynkin_type(self) -> str | None:
        """Dynkin type of the underlying graph of the mutable part, or None."""
        verts = list(self.mutable)
        adj: dict = {v: set() for v in verts}
        for (t, h), m in self.arrows.items():
            if t in adj and h in adj:
                if m != 1:
                    return None
                adj[t].add(h)
                adj[h].add(t)
        comps = []
        seen = set()
        for v in verts:
            if v in seen:
                continue
            comp = []
            stack = [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(comp)
        names = []
        for comp in comps:
            name = _tree_dynkin(comp, adj)
            if name is None:
                return None
            names.append(name)
        names.sort()
        return " + ".join(names) if names else "A0"

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        d = {
            "vertices": [
                {"id": list(v) if isinstance(v, tuple) else v, "frozen": v in self.frozen}
                for v in self.vertices
            ],
            "arrows": [
                {"from": list(t) if isinstance(t, tuple) else t,
                 "to": list(h) if isinstance(h, tuple) else h,
                 "mult": m}
                for (t, h), m in sorted(self.arrows.items(), key=lambda kv: (_vertex_key(kv[0][0]), _vertex_key(kv[0][1])))
            ],
        }
        if self.n is not None:
            d = {"n": self.n, **d}
        return d

    @staticmethod
    def from_dict(d: dict) -> "IceQuiver":
        def conv(x):
            return tuple(x) if isinstance(x, list) else x

        vertices = [conv(v["id"]) for v in d["vertices"]]
        frozen = {conv(v["id"]) for v in d["vertices"] if v["frozen"]}
        arrows = {}
        for a in d["arrows"]:
            arrows[(conv(a["from"]), conv(a["to"]))] = a.get("mult", 1)
        return IceQuiver.make(vertices, frozen, arrows, d.get("n"))


def _tree_dynkin(comp, adj) -> str | None:
    k = len(comp)
    edges = sum(len(adj[v] & set(comp)) for v in comp) // 2
    if edges != k - 1:
        return None  # has a cycle
    degs = sorted(len(adj[v]) for v in comp)
    if k == 1:
        return "A1"
    if degs[-1] <= 2:
        return f"A{k}"
    if degs[-1] > 3 or degs.count(3) > 1:
        return None
    # unique degree-3 node: classify by the three branch lengths
    center = next(v for v in comp if len(adj[v]) == 3)
    lengths = []
    for start in adj[center]:
        ln, prev, cur = 1, center, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if len(nxt) != 1:
                if len(nxt) > 1:
                    return None
                break
            prev, cur = cur, nxt[0]
            ln += 1
        lengths.append(ln)
    lengths.sort()
    if lengths[0] != 1:
        return None
    if lengths[1] == 1:
        return f"D{k}"
    if lengths[1] == 2 and lengths[2] in (2, 3, 4):
        return f"E{k}"
    return None


def freeze(q: IceQuiver, s) -> IceQuiver:
    """Freeze the vertices in s, deleting any arrows now joining two frozen vertices."""
    s = set(s)
    if not s <= set(q.vertices):
        raise ValueError("freezing set contains unknown vertices")
    frozen = q.frozen | s
    arrows = {
        (t, h): m for (t, h), m in q.arrows.items() if not (t in frozen and h in frozen)
    }
    return IceQuiver.make(q.vertices, frozen, arrows, q.n)


def mutate_b_matrix(b: Sequence[Sequence[int]], k: int, nmut: int) -> list[list[int]]:
    """Mutate a rectangular B-matrix (rows = mutable) at mutable index k.

    Implemented as B' = phi_p^T B phi where phi is the identity except in
    row k: phi[k][k] = -1 and phi[k][v] = max(-b[k][v], 0).
    """
    q = len(b[0])
    phi = [[int(i == j) for j in range(q)] for i in range(q)]
    for v in range(q):
        phi[k][v] = -1 if v == k else max(-b[k][v], 0)
    phi_p = [row[:nmut] for row in phi[:nmut]]
    # B' = phi_p^T B phi
    bp = [[sum(b[i][l] * phi[l][j] for l in range(q)) for j in range(q)] for i in range(nmut)]
    return [
        [sum(phi_p[l][i] * bp[l][j] for l in range(nmut)) for j in range(q)]
        for i in range(nmut)
    ]
