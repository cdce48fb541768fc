"""Graphs, bipartite graphs, boundaries, and deterministic generators.

Undirected simple graphs on vertices 0..n-1. The canonical edge order everywhere
(serialization, edge-vertex construction, witnesses) is lexicographic on (u, v)
with u < v; re-running any construction bit-reproduces its output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GivesUp, InvalidInput, NotRegular
from .fields import field_make


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple  # adj[v] = sorted tuple of neighbors

    @property
    def degrees(self) -> tuple:
        return tuple(len(nb) for nb in self.adj)

    def edges(self) -> list:
        out = []
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    out.append((u, v))
        return out

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    def assert_regular(self) -> int:
        degs = set(self.degrees)
        if len(degs) != 1:
            raise NotRegular(f"degrees {sorted(degs)} are not constant")
        return next(iter(degs))

    @property
    def is_regular(self) -> bool:
        return len(set(self.degrees)) == 1

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}


def graph_from_edges(n: int, edges) -> Graph:
    if n < 1:
        raise InvalidInput(f"n={n} must be >= 1")
    seen = set()
    nbrs = [[] for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidInput(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise InvalidInput(f"self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InvalidInput(f"duplicate edge {key}")
        seen.add(key)
        nbrs[u].append(v)
        nbrs[v].append(u)
    return Graph(n, tuple(tuple(sorted(nb)) for nb in nbrs))


def graph_from_json(obj: dict) -> Graph:
    return graph_from_edges(int(obj["n"]), obj["edges"])


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges():
        a[u, v] = 1
        a[v, u] = 1
    return a


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in g.adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


# -- boundaries and counts --------------------------------------------------


def boundary(g: Graph, s) -> set:
    """Union of the neighborhoods of S. May intersect S."""
    out = set()
    for v in s:
        out.update(g.adj[v])
    return out


def star_boundary(g: Graph, s) -> set:
    """Neighbors of S outside S."""
    s = set(s)
    return boundary(g, s) - s


def induced_edge_count(g: Graph, s) -> int:
    s = set(s)
    count = 0
    for u in s:
        for v in g.adj[u]:
            if v in s and u < v:
                count += 1
    return count


# -- generators --------------------------------------------------------------


def gen_complete(n: int) -> Graph:
    if n < 2:
        raise InvalidInput("complete graph needs n >= 2")
    return graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidInput("cycle needs n >= 3")
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gen_circulant(n: int, offsets) -> Graph:
    """Vertices Z_n, u ~ u+s for each offset s. Offsets must lie in 1..n//2."""
    offs = sorted(set(int(s) for s in offsets))
    if not offs:
        raise InvalidInput("need at least one offset")
    for s in offs:
        if not 1 <= s <= n // 2:
            raise InvalidInput(f"offset {s} outside 1..{n // 2}")
    edges = set()
    for u in range(n):
        for s in offs:
            v = (u + s) % n
            if u != v:
                edges.add((min(u, v), max(u, v)))
    return graph_from_edges(n, sorted(edges))


def gen_paley(q: int) -> Graph:
    """Paley graph on GF(q), q = 1 mod 4: u ~ v iff u - v is a nonzero square."""
    # factor q as a prime power
    p = None
    for cand in range(2, q + 1):
        if q % cand == 0:
            p = cand
            break
    if p is None:
        raise InvalidInput(f"q={q} must be a prime power >= 5")
    k, t = 0, q
    while t % p == 0:
        t //= p
        k += 1
    if t != 1:
        raise InvalidInput(f"q={q} is not a prime power")
    if q % 4 != 1:
        raise InvalidInput(f"q={q} must be 1 mod 4 for an undirected Paley graph")
    f = field_make(p, k)
    squares = {f.mul(a, a) for a in range(1, q)}
    edges = set()
    for u in range(q):
        for v in range(u + 1, q):
            if f.sub(u, v) in squares:
                edges.add((u, v))
    return graph_from_edges(q, sorted(edges))


def gen_petersen() -> Graph:
    """Kneser graph on the 2-subsets of a 5-set: disjointness adjacency."""
    from itertools import combinations

    pairs = list(combinations(range(5), 2))
    edges = []
    for i, a in enumerate(pairs):
        for j in range(i + 1, len(pairs)):
            if not set(a) & set(pairs[j]):
                edges.append((i, j))
    return graph_from_edges(10, edges)


# -- deterministic RNG (fixed algorithm so seeds mean the same thing forever) --


class SplitMix64:
    """Counter-based 64-bit generator; tiny, stable across platforms/versions."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        # rejection sampling for an unbiased draw in range(n)
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def gen_random_regular(n: int, d: int, seed: int, max_retries: int = 10_000) -> Graph:
    """d-regular simple graph by rejection-sampled stub pairing.

    Shuffles the nd stubs, pairs them consecutively, and rejects the whole
    pairing on any self-loop or repeated edge. Same (n, d, seed) always yields
    the same graph.
    """
    if n < 1 or d < 1 or d >= n or (n * d) % 2 != 0:
        raise InvalidInput(f"no d-regular simple graph for n={n}, d={d}")
    rng = SplitMix64(seed)
    for _ in range(max_retries):
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            key = (min(u, v), max(u, v))
            if key in edges:
                ok = False
                break
            edges.add(key)
        if ok:
            return graph_from_edges(n, sorted(edges))
    raise GivesUp(f"no simple pairing found in {max_retries} tries (n={n}, d={d})")


# -- bipartite ----------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteGraph:
    """(c, d)-regular bipartite graph: n_in inputs of degree c, n_out outputs of
    degree d. nbrs[i] is input i's output-neighbor list; its order is the
    position map used when inputs are wired into per-output constraints.
    """

    n_in: int
    n_out: int
    nbrs: tuple  # nbrs[i] = tuple of outputs

    def __post_init__(self):
        degs = {len(nb) for nb in self.nbrs}
        if len(self.nbrs) != self.n_in:
            raise InvalidInput("nbrs length != n_in")
        if len(degs) != 1:
            raise NotRegular(f"input degrees {sorted(degs)} not constant")
        out_deg = [0] * self.n_out
        for nb in self.nbrs:
            if len(set(nb)) != len(nb):
                raise InvalidInput("repeated output in one input's neighbor list")
            for o in nb:
                if not 0 <= o < self.n_out:
                    raise InvalidInput(f"output {o} out of range")
                out_deg[o] += 1
        if len(set(out_deg)) != 1:
            raise NotRegular(f"output degrees {sorted(set(out_deg))} not constant")

    @property
    def c(self) -> int:
        return len(self.nbrs[0])

    @property
    def d_out(self) -> int:
        return (self.n_in * self.c) // self.n_out

    def output_neighbor_lists(self) -> list:
        """Per-output list of its inputs, ascending. Constraint wiring order."""
        out = [[] for _ in range(self.n_out)]
        for i, nb in enumerate(self.nbrs):
            for o in nb:
                out[o].append(i)
        return [sorted(lst) for lst in out]

    def to_json(self) -> dict:
        return {
            "n_in": self.n_in,
            "n_out": self.n_out,
            "nbrs": [list(nb) for nb in self.nbrs],
        }


def bipartite_from_json(obj: dict) -> BipartiteGraph:
    return BipartiteGraph(
        int(obj["n_in"]),
        int(obj["n_out"]),
        tuple(tuple(int(o) for o in nb) for nb in obj["nbrs"]),
    )


def bip_boundary(b: BipartiteGraph, t) -> set:
    """Output-side boundary of an input subset."""
    out = set()
    for i in t:
        out.update(b.nbrs[i])
    return out


def edge_vertex_graph(g: Graph) -> BipartiteGraph:
    """Inputs = edges of g in lexicographic order, outputs = vertices; each edge
    is joined to its two endpoints. For d-regular g this is (2, d)-regular with
    n_in = n*d/2.
    """
    g.assert_regular()
    return BipartiteGraph(
        n_in=g.num_edges,
        n_out=g.n,
        nbrs=tuple((u, v) for u, v in g.edges()),
    )


def corpus_small(include_random: bool = True) -> list:
    """Standing verification corpus as (name, graph) pairs: every connected
    regular graph on n <= 8 the generators can produce (circulants subsume the
    completes, cycles, and Paley(5); deduplicated by edge set), plus 3-regular
    n = 10 samples for seeds 1..20."""
    from itertools import combinations

    out = []
    seen = set()
    for n in range(3, 9):
        all_offsets = list(range(1, n // 2 + 1))
        for r in range(1, len(all_offsets) + 1):
            for offs in combinations(all_offsets, r):
                g = gen_circulant(n, offs)
                if not is_connected(g):
                    continue
                key = (n, tuple(g.edges()))
                if key in seen:
                    continue
                seen.add(key)
                label = ",".join(str(s) for s in offs)
                out.append((f"circulant({n};{label})", g))
    if include_random:
        for seed in range(1, 21):
            out.append((f"random(10,3,seed={seed})",
                        gen_random_regular(10, 3, seed)))
    return out


def biadjacency_matrix(b: BipartiteGraph) -> np.ndarray:
    """M with M[i, o] = 1 iff input i joins output o (shape n_in x n_out)."""
    m = np.zeros((b.n_in, b.n_out), dtype=np.int64)
    for i, nb in enumerate(b.nbrs):
        for o in nb:
            m[i, o] = 1
    return m
