"""Finite simple graphs on vertices ``1..n``: matchings, induced structure,
distant leaves.

Vertex ``i`` corresponds to bit ``i - 1`` wherever a bitmask is used, so the
vertex count is capped at 63.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import networkx as nx
import numpy as np

MAX_VERTICES = 63

Edge = tuple[int, int]


class GraphInputError(ValueError):
    """Malformed graph data (loops, out-of-range vertices, unknown families)."""


class GraphDomainError(ValueError):
    """A well-formed graph outside an operation's domain."""


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def bit(v: int) -> int:
    return 1 << (v - 1)


def vertices_of(mask: int) -> list[int]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= bit(v)
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]
    # original labels of vertices 1..n after a relabeling induced_subgraph
    labels: tuple[int, ...] | None = field(default=None, compare=False)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbour bitmask of each vertex; index 0 is unused."""
        adj = [0] * (self.n + 1)
        for u, v in self.edges:
            adj[u] |= bit(v)
            adj[v] |= bit(u)
        return tuple(adj)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> list[int]:
        return vertices_of(self.adjacency[v])

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] & bit(v))

    def covered(self) -> int:
        """Bitmask of non-isolated vertices."""
        m = 0
        for u, v in self.edges:
            m |= bit(u) | bit(v)
        return m

    def remove_vertices(self, drop: Iterable[int]) -> "Graph":
        """Delete the edges at ``drop``; the vertices stay as isolated ones."""
        drop_mask = mask_of(drop)
        return Graph(self.n, frozenset(e for e in self.edges if not (mask_of(e) & drop_mask)))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def __str__(self) -> str:
        body = ", ".join(f"{u}-{v}" for u, v in self.sorted_edges)
        return f"Graph(n={self.n}; {body})"


def graph_from_edges(n: int, pairs: Iterable[Iterable[int]]) -> Graph:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphInputError(f"vertex count {n} outside 1..{MAX_VERTICES}")
    edges = set()
    for pair in pairs:
        u, v = pair
        if u == v:
            raise GraphInputError(f"loop at vertex {u}: ({u}, {v})")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphInputError(f"vertex out of range 1..{n}: ({u}, {v})")
        edges.add(_edge(u, v))
    return Graph(n, frozenset(edges))


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


def path(n: int) -> Graph:
    if n < 1:
        raise GraphInputError("path needs n >= 1")
    return graph_from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphInputError(f"cycle needs n >= 3, got {n}")
    return graph_from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def star(n: int) -> Graph:
    """Star on ``n`` vertices: centre 1 joined to ``2..n`` (so K_{1,n-1})."""
    if n < 1:
        raise GraphInputError("star needs n >= 1")
    return graph_from_edges(n, [(1, i) for i in range(2, n + 1)])


def broom(handle: int, bristles: int) -> Graph:
    """Path on ``handle`` vertices with ``bristles`` leaves hung on its last vertex."""
    if handle < 1 or bristles < 0:
        raise GraphInputError("broom needs handle >= 1 and bristles >= 0")
    n = handle + bristles
    pairs = [(i, i + 1) for i in range(1, handle)]
    pairs += [(handle, handle + j) for j in range(1, bristles + 1)]
    return graph_from_edges(n, pairs)


def disjoint_edges(m: int) -> Graph:
    """Perfect matching on ``2m`` vertices: edges {1,2}, {3,4}, ..."""
    return graph_from_edges(2 * m, [(2 * i + 1, 2 * i + 2) for i in range(m)])


def make_family(kind: str, n: int) -> Graph:
    builders = {"path": path, "cycle": cycle, "star": star}
    if kind not in builders:
        raise GraphInputError(f"unknown family {kind!r}; expected one of {sorted(builders)}")
    return builders[kind](n)


def random_forest(n: int, seed: int) -> Graph:
    """Random forest on ``n`` vertices, deterministic per ``seed``.

    The component count is drawn uniformly, the vertices are shuffled into
    components, and each component of size >= 3 is a uniform labelled tree
    decoded from a random Pruefer sequence.
    """
    if n < 1:
        raise GraphInputError("random_forest needs n >= 1")
    rng = np.random.default_rng(seed)
    c = int(rng.integers(1, n + 1))
    cuts = sorted(rng.choice(np.arange(1, n), size=c - 1, replace=False).tolist()) if c > 1 else []
    order = (rng.permutation(n) + 1).tolist()
    pairs = []
    bounds = [0, *cuts, n]
    for lo, hi in zip(bounds, bounds[1:]):
        comp = order[lo:hi]
        s = len(comp)
        if s == 2:
            pairs.append((comp[0], comp[1]))
        elif s >= 3:
            seq = rng.integers(0, s, size=s - 2).tolist()
            tree = nx.from_prufer_sequence(seq)
            pairs.extend((comp[a], comp[b]) for a, b in tree.edges())
    return graph_from_edges(n, pairs)


# ---------------------------------------------------------------------------
# induced structure
# ---------------------------------------------------------------------------


def induced_subgraph(G: Graph, A: Iterable[int], keep_labels: bool = False) -> Graph:
    """Induced subgraph on ``A``.

    By default the vertices are relabelled ``1..|A|`` in increasing order and
    the original labels are stored in ``labels``.  With ``keep_labels`` the
    ambient ``n`` is kept and vertices outside ``A`` become isolated.
    """
    A = sorted(set(A))
    for v in A:
        if not 1 <= v <= G.n:
            raise GraphInputError(f"vertex {v} not in 1..{G.n}")
    amask = mask_of(A)
    kept = [e for e in G.edges if (mask_of(e) & amask) == mask_of(e)]
    if keep_labels:
        return Graph(G.n, frozenset(kept))
    if not A:
        raise GraphInputError("relabelled induced subgraph needs a nonempty vertex set")
    pos = {v: i + 1 for i, v in enumerate(A)}
    return Graph(len(A), frozenset(_edge(pos[u], pos[v]) for u, v in kept), labels=tuple(A))


def connected_components(G: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in G.vertices:
        if seen & bit(s):
            continue
        comp, queue = [], deque([s])
        seen |= bit(s)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in G.neighbors(u):
                if not seen & bit(w):
                    seen |= bit(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_forest(G: Graph) -> bool:
    return len(G.edges) == G.n - len(connected_components(G))


def is_connected(G: Graph) -> bool:
    return len(connected_components(G)) == 1


def _induced_is_forest(G: Graph, mask: int) -> bool:
    vs = vertices_of(mask)
    if not vs:
        return True
    n_edges = sum(1 for e in G.edges if (mask_of(e) & mask) == mask_of(e))
    return n_edges <= len(vs) - 1 and is_forest(induced_subgraph(G, vs))


def longest_induced_path_order(G: Graph) -> int:
    """Number of vertices on a longest induced path (exhaustive DFS)."""
    if G.n == 0:
        return 0
    adj = G.adjacency
    best = 1

    def extend(last: int, used: int, length: int) -> None:
        nonlocal best
        best = max(best, length)
        for w in vertices_of(adj[last] & ~used):
            # w may touch only `last` among the vertices already on the path
            if (adj[w] & used) == bit(last):
                extend(w, used | bit(w), length + 1)

    for v in G.vertices:
        extend(v, bit(v), 1)
    return best


def tree_longest_path_order(G: Graph) -> int:
    """Longest path (in vertices) of a forest by double BFS per component."""
    if not is_forest(G):
        raise GraphDomainError("double-BFS longest path needs a forest")

    def farthest(src: int) -> tuple[int, int]:
        dist = {src: 1}
        queue = deque([src])
        far = src
        while queue:
            u = queue.popleft()
            if dist[u] > dist[far]:
                far = u
            for w in G.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return far, dist[far]

    best = 0
    for comp in connected_components(G):
        a, _ = farthest(comp[0])
        _, length = farthest(a)
        best = max(best, length)
    return best


# ---------------------------------------------------------------------------
# matchings
# ---------------------------------------------------------------------------


def is_matching(edges: Iterable[Edge]) -> bool:
    used = 0
    for e in edges:
        m = mask_of(e)
        if used & m:
            return False
        used |= m
    return True


def enumerate_k_matchings(G: Graph, k: int) -> Iterator[tuple[Edge, ...]]:
    """All k-matchings in lexicographic order of their sorted edge tuples."""
    if k < 1:
        raise GraphInputError("k must be >= 1")
    edges = G.sorted_edges
    masks = [mask_of(e) for e in edges]

    def rec(start: int, used: int, chosen: list[int]) -> Iterator[tuple[Edge, ...]]:
        if len(chosen) == k:
            yield tuple(edges[i] for i in chosen)
            return
        for i in range(start, len(edges) - (k - len(chosen)) + 1):
            if not used & masks[i]:
                chosen.append(i)
                yield from rec(i + 1, used | masks[i], chosen)
                chosen.pop()

    yield from rec(0, 0, [])


def enumerate_matchings(G: Graph) -> Iterator[tuple[Edge, ...]]:
    """Every nonempty matching, grouped by size."""
    k = 1
    while True:
        found = False
        for M in enumerate_k_matchings(G, k):
            found = True
            yield M
        if not found:
            return
        k += 1


def matching_number(G: Graph) -> int:
    edges = G.sorted_edges
    masks = [mask_of(e) for e in edges]
    best = 0

    def rec(start: int, used: int, size: int) -> None:
        nonlocal best
        best = max(best, size)
        if size + (len(edges) - start) <= best:
            return
        for i in range(start, len(edges)):
            if not used & masks[i]:
                rec(i + 1, used | masks[i], size + 1)

    rec(0, 0, 0)
    return best


def is_gap(G: Graph, e: Iterable[int], f: Iterable[int]) -> bool:
    e, f = _edge(*e), _edge(*f)
    for x in (e, f):
        if x not in G.edges:
            raise GraphInputError(f"{x} is not an edge of the graph")
    if mask_of(e) & mask_of(f):
        return False
    adj = G.adjacency
    return not ((adj[e[0]] | adj[e[1]]) & mask_of(f))


def is_induced_matching(G: Graph, M: Iterable[Edge]) -> bool:
    """E(G_{V(M)}) == M."""
    M = [_edge(*e) for e in M]
    if not is_matching(M):
        return False
    vm = 0
    for e in M:
        vm |= mask_of(e)
    induced = {e for e in G.edges if (mask_of(e) & vm) == mask_of(e)}
    return induced == set(M)


def induced_matching_number(G: Graph) -> int:
    """Largest induced matching, found by the definition E(G_{V(M)}) = M."""
    best = 0
    for M in enumerate_matchings(G):
        if len(M) > best and is_induced_matching(G, M):
            best = len(M)
    return best


def induced_matching_number_by_gaps(G: Graph) -> int:
    """Largest set of edges that are pairwise gaps (second implementation)."""
    edges = G.sorted_edges
    best = 0

    def rec(start: int, chosen: list[Edge]) -> None:
        nonlocal best
        best = max(best, len(chosen))
        for i in range(start, len(edges)):
            if all(is_gap(G, edges[i], c) for c in chosen):
                chosen.append(edges[i])
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    return best


# ---------------------------------------------------------------------------
# distant leaves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistantEdge:
    leaf: int
    support: int


def is_distant_leaf(G: Graph, v: int) -> bool:
    if G.degree(v) != 1:
        return False
    w = G.neighbors(v)[0]
    return sum(1 for x in G.neighbors(w) if G.degree(x) > 1) <= 1


def distant_leaves(G: Graph) -> list[int]:
    return [v for v in G.vertices if is_distant_leaf(G, v)]


def find_distant_edge(G: Graph, prefer: str = "smallest") -> DistantEdge:
    """A distant leaf and its support vertex.

    Leaves in components with at least three vertices are preferred, since
    only those carry the splitting used by the forest recursions.  Among the
    candidates the smallest leaf label wins (``prefer="largest"`` picks the
    largest one, which matches labelling the leaf ``n``).
    """
    if not G.edges:
        raise GraphDomainError("graph has no edges")
    if not is_forest(G):
        raise GraphDomainError("graph is not a forest")
    leaves = distant_leaves(G)
    big = [v for v in leaves if G.degree(G.neighbors(v)[0]) >= 2]
    pool = big or leaves
    v = min(pool) if prefer == "smallest" else max(pool)
    return DistantEdge(v, G.neighbors(v)[0])


def distant_leaf_from_longest_path(G: Graph) -> int:
    """Endpoint of a maximal induced path in a tree component (existence proof).

    Restricted to the component holding the longest path; that endpoint is
    always a distant leaf of a forest.
    """
    if not G.edges or not is_forest(G):
        raise GraphDomainError("need a forest with at least one edge")
    adj = G.adjacency
    best: list[int] = []

    def extend(seq: list[int], used: int) -> None:
        nonlocal best
        if len(seq) > len(best):
            best = list(seq)
        last = seq[-1]
        for w in vertices_of(adj[last] & ~used):
            if (adj[w] & used) == bit(last):
                seq.append(w)
                extend(seq, used | bit(w))
                seq.pop()

    for v in G.vertices:
        if G.degree(v):
            extend([v], bit(v))
    return best[-1]


# ---------------------------------------------------------------------------
# corpora
# ---------------------------------------------------------------------------


def _tree_graphs(order: int) -> list[list[Edge]]:
    if order == 1:
        return [[]]
    if order == 2:
        return [[(0, 1)]]
    return [sorted(t.edges()) for t in nx.nonisomorphic_trees(order)]


def forests(n: int, min_component: int = 1) -> Iterator[Graph]:
    """Every forest on exactly ``n`` vertices up to isomorphism.

    Components smaller than ``min_component`` are excluded (``2`` drops
    isolated vertices).  Edgeless graphs are skipped.
    """
    trees = {s: _tree_graphs(s) for s in range(1, n + 1)}

    def parts(remaining: int, max_size: int, max_idx: int) -> Iterator[list[tuple[int, int]]]:
        # multisets of (size, tree index) in non-increasing order
        if remaining == 0:
            yield []
            return
        for s in range(min(remaining, max_size), min_component - 1, -1):
            top = len(trees[s]) - 1 if s < max_size else max_idx
            for idx in range(top, -1, -1):
                for rest in parts(remaining - s, s, idx):
                    yield [(s, idx), *rest]

    for combo in parts(n, n, len(trees[n]) - 1):
        pairs = []
        offset = 0
        for s, idx in combo:
            pairs.extend((a + offset + 1, b + offset + 1) for a, b in trees[s][idx])
            offset += s
        if pairs:
            yield graph_from_edges(n, pairs)


def forest_corpus(n_max: int, min_component: int = 1) -> list[Graph]:
    out = []
    for n in range(2, n_max + 1):
        out.extend(forests(n, min_component))
    return out


def brooms(n_max: int) -> list[Graph]:
    out = []
    for n in range(3, n_max + 1):
        for bristles in range(2, n - 1):
            out.append(broom(n - bristles, bristles))
    return out


def all_graphs_atlas(n_max: int) -> Iterator[Graph]:
    """Every graph on at most ``n_max <= 7`` vertices up to isomorphism."""
    if n_max > 7:
        raise GraphInputError("the graph atlas only covers up to 7 vertices")
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if 1 <= n <= n_max:
            yield graph_from_edges(n, [(u + 1, v + 1) for u, v in g.edges()])

