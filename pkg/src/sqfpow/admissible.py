"""k-admissible matchings and the admissible matching number aim(G, k).

A matching M is k-admissible when it splits into nonempty parts
M_1, ..., M_r such that edges from different parts form gaps, each
G[V(M_i)] is a forest, and |M_1| + ... + |M_r| <= r + k - 1.

Edges that do not form a gap must share a part, so the finest admissible
candidate is the partition into connected components of the "not a gap"
relation.  Merging components only raises sum - r and never makes an
induced subgraph acyclic, so M is admissible iff that finest partition is.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._accel import njit
from .graphs import (
    Edge,
    Graph,
    GraphDomainError,
    GraphInputError,
    _induced_is_forest,
    enumerate_k_matchings,
    is_forest,
    is_gap,
    is_matching,
    mask_of,
    matching_number,
)

BRUTE_FORCE_LIMIT = 10


def is_k_admissible_sequence(a: Sequence[int], k: int) -> bool:
    if any(x < 1 for x in a):
        raise GraphInputError("sequence entries must be positive")
    return sum(a) <= len(a) + k - 1


@dataclass(frozen=True)
class AdmissibleCertificate:
    matching: tuple[Edge, ...]
    parts: tuple[tuple[Edge, ...], ...]
    k: int

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)


def _normalise(G: Graph, M: Iterable[Iterable[int]]) -> tuple[Edge, ...]:
    edges = tuple(sorted(tuple(sorted(e)) for e in M))
    if not is_matching(edges):
        raise GraphInputError(f"{edges} is not a matching")
    for u, v in edges:
        if not G.has_edge(u, v):
            raise GraphInputError(f"{{{u},{v}}} is not an edge of G")
    return edges


def conflict_components(G: Graph, M: Iterable[Iterable[int]]) -> list[tuple[Edge, ...]]:
    """Components of the relation "e and f are not a gap" on M."""
    edges = _normalise(G, M)
    parent = list(range(len(edges)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            if not is_gap(G, edges[i], edges[j]):
                parent[find(i)] = find(j)
    groups: dict[int, list[Edge]] = {}
    for i, e in enumerate(edges):
        groups.setdefault(find(i), []).append(e)
    return sorted((tuple(g) for g in groups.values()), key=lambda p: p[0])


def _part_ok(G: Graph, part: Sequence[Edge]) -> bool:
    return _induced_is_forest(G, mask_of(v for e in part for v in e))


def is_k_admissible_matching(G: Graph, M: Iterable[Iterable[int]], k: int) -> AdmissibleCertificate | None:
    edges = _normalise(G, M)
    if not edges:
        return None
    parts = conflict_components(G, edges)
    if not all(_part_ok(G, p) for p in parts):
        return None
    if not is_k_admissible_sequence([len(p) for p in parts], k):
        return None
    return AdmissibleCertificate(edges, tuple(parts), k)


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """Every partition of ``items`` into nonempty blocks (restricted growth strings)."""
    if not items:
        return
    blocks: list[list] = []

    def rec(i: int) -> Iterator[list[list]]:
        if i == len(items):
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(items[i])
            yield from rec(i + 1)
            b.pop()
        blocks.append([items[i]])
        yield from rec(i + 1)
        blocks.pop()

    yield from rec(0)


def brute_force_admissible(G: Graph, M: Iterable[Iterable[int]], k: int) -> AdmissibleCertificate | None:
    """Search every partition of M against the literal definition."""
    edges = _normalise(G, M)
    if len(edges) > BRUTE_FORCE_LIMIT:
        raise GraphDomainError(f"|M|={len(edges)} exceeds the brute-force limit {BRUTE_FORCE_LIMIT}")
    for parts in set_partitions(edges):
        if not is_k_admissible_sequence([len(p) for p in parts], k):
            continue
        gaps = all(
            is_gap(G, e, f)
            for a in range(len(parts))
            for b in range(a + 1, len(parts))
            for e in parts[a]
            for f in parts[b]
        )
        if gaps and all(_part_ok(G, p) for p in parts):
            return AdmissibleCertificate(edges, tuple(tuple(p) for p in parts), k)
    return None


def aim(G: Graph, k: int) -> int:
    """Largest size of a k-admissible matching (0 when there is none)."""
    nu = matching_number(G)
    if not 1 <= k <= nu:
        raise GraphInputError(f"k={k} outside 1..{nu}")
    for size in range(nu, 0, -1):
        for M in enumerate_k_matchings(G, size):
            if is_k_admissible_matching(G, M, k) is not None:
                return size
    return 0


@dataclass
class Section4Report:
    reg_identity: dict[int, tuple[int, int]]
    failures: list[str]

    @property
    def holds(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.holds


def verify_section4(G: Graph, field=None) -> Section4Report:
    """reg = aim + k, aim(k) <= aim(k-1) + 1, aim(G - {w,v}, k-1) + 1 <= aim(G, k),
    the aim recursion over G1, G2, G3, and aim(k) >= k."""
    from .monomials import edge_ideal, squarefree_power
    from .resolution import GF2, regularity
    from .splittings import setup_labels, subforests

    field = field or GF2
    if not is_forest(G):
        raise GraphDomainError("graph is not a forest")
    nu = matching_number(G)
    fails: list[str] = []
    aims = {k: aim(G, k) for k in range(1, nu + 1)}
    regs = {}
    I = edge_ideal(G)
    for k in range(1, nu + 1):
        r = regularity(squarefree_power(I, k), field)
        regs[k] = (r, aims[k] + k)
        if r != aims[k] + k:
            fails.append(f"k={k}: reg={r} but aim+k={aims[k] + k}")
        if aims[k] < k:
            fails.append(f"k={k}: aim={aims[k]} < k")
        if k > 1 and aims[k] > aims[k - 1] + 1:
            fails.append(f"k={k}: aim={aims[k]} > aim(k-1)+1={aims[k - 1] + 1}")
        if k > 1 and aims[k] < aims[k - 1]:
            fails.append(f"k={k}: aim not monotone")
    if nu >= 3 and any(G.degree(G.neighbors(v)[0]) >= 2 for v in G.vertices if G.degree(v) == 1):
        lab = setup_labels(G)
        g1, g2, g3 = subforests(G, lab)

        def a(H: Graph, j: int) -> float:
            return aim(H, j) if 1 <= j <= matching_number(H) else -float("inf")

        for k in range(2, nu + 1):
            if a(g2, k - 1) + 1 > aims[k]:
                fails.append(f"k={k}: aim(G-{{w,v}},k-1)+1 > aim(G,k)")
        for k in range(1, nu + 1):
            rhs = max(a(g1, k), a(g2, k - 1) + 1, a(g3, k) + 1)
            if k == 1:
                # aim(G2, 0) is out of range; a single edge {v, w} is still admissible
                rhs = max(rhs, 1)
            if rhs != aims[k]:
                fails.append(f"k={k}: aim recursion gives {rhs}, aim is {aims[k]}")
    return Section4Report(regs, fails)


# ---------------------------------------------------------------------------
# exhaustive corpus of (G, M) with M perfect
# ---------------------------------------------------------------------------


def _cross_pairs(m: int) -> list[tuple[int, int]]:
    """Vertex pairs (0-based) of 2m vertices that are not matching edges {2i, 2i+1}."""
    return [(a, b) for a in range(2 * m) for b in range(a + 1, 2 * m) if a // 2 != b // 2]


def _pattern_group(m: int) -> np.ndarray:
    """Action of the hyperoctahedral group (edge permutations, endpoint flips) on pair indices."""
    pairs = _cross_pairs(m)
    index = {p: i for i, p in enumerate(pairs)}
    rows = []
    for perm in itertools.permutations(range(m)):
        for flips in range(1 << m):
            def img(v: int) -> int:
                e, side = divmod(v, 2)
                return 2 * perm[e] + (side ^ (flips >> e & 1))

            rows.append([index[tuple(sorted((img(a), img(b))))] for a, b in pairs])
    return np.array(rows, dtype=np.int64)


@njit(cache=True)
def _orbit_representatives(group, npairs):
    seen = np.zeros(1 << npairs, dtype=np.bool_)
    reps = []
    for mask in range(1 << npairs):
        if seen[mask]:
            continue
        reps.append(mask)
        for g in range(group.shape[0]):
            image = 0
            for b in range(npairs):
                if mask >> b & 1:
                    image |= 1 << group[g, b]
            seen[image] = True
    return reps


def perfect_matching_patterns(m: int) -> Iterator[tuple[Graph, tuple[Edge, ...]]]:
    """Every graph on 2m vertices containing M = {1,2},{3,4},..., up to isomorphisms fixing M.

    Admissibility of M in any G only depends on G[V(M)], so together with
    all graphs on fewer vertices this covers every (G, M) pair.
    """
    pairs = _cross_pairs(m)
    group = _pattern_group(m)
    matching = tuple((2 * i + 1, 2 * i + 2) for i in range(m))
    for mask in _orbit_representatives(group, len(pairs)):
        extra = [(a + 1, b + 1) for i, (a, b) in enumerate(pairs) if mask >> i & 1]
        yield Graph(2 * m, frozenset(matching) | frozenset(extra)), matching
