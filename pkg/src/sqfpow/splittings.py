"""Betti splittings of squarefree powers.

Covers x-partitions, the tablewise splitting identity, the cone splitting
``(I, x_n)^[k] = I^[k] + x_n I^[k-1]``, the forest splitting at a distant
edge together with all of its intersection identities, and the
Eliahou-Kervaire lcm criterion for Tor-vanishing maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .graphs import Graph, GraphDomainError, bit, find_distant_edge, is_forest, matching_number
from .monomials import (
    Monomial,
    MonomialError,
    MonomialIdeal,
    edge_ideal,
    ideal_intersection,
    ideal_sum,
    minimalize,
    monomial_grade,
    partial_star,
    scale,
    squarefree_power,
    support_key,
    variable_multiple,
    zero_ideal,
)
from .resolution import GF2, BettiTable, FieldSpec, betti_table_or_empty


class SplittingError(ValueError):
    """Precondition failure for a splitting construction."""


@dataclass(frozen=True)
class Splitting:
    whole: MonomialIdeal
    part1: MonomialIdeal
    part2: MonomialIdeal
    checks: Mapping[str, bool] = field(default_factory=dict, compare=False)

    @property
    def intersection(self) -> MonomialIdeal:
        return ideal_intersection(self.part1, self.part2)

    @property
    def is_partition(self) -> bool:
        """G(whole) is the disjoint union of G(part1) and G(part2)."""
        return not (self.part1.gens & self.part2.gens) and self.part1.gens | self.part2.gens == self.whole.gens

    @property
    def degenerate(self) -> bool:
        return self.part1.is_zero or self.part2.is_zero


def x_partition(I: MonomialIdeal, x: int) -> Splitting:
    if I.is_zero:
        raise SplittingError("x-partition of the zero ideal")
    xb = bit(x)
    two = frozenset(g for g in I.gens if g & xb)
    return Splitting(I, MonomialIdeal(I.n, I.gens - two), MonomialIdeal(I.n, two))


@dataclass(frozen=True)
class SplitVerdict:
    holds: bool
    degenerate: bool = False
    cell: tuple[int, int] | None = None
    # (beta_ij(I), beta_ij(I1) + beta_ij(I2), beta_{i-1,j}(I1 cap I2)) at the failing cell
    ranks: tuple[int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.holds


def predicted_table(s: Splitting, field: FieldSpec = GF2) -> dict[tuple[int, int], int]:
    t1 = betti_table_or_empty(s.part1, field)
    t2 = betti_table_or_empty(s.part2, field)
    t12 = betti_table_or_empty(s.intersection, field)
    out: dict[tuple[int, int], int] = {}
    for table in (t1.entries, t2.entries, t12.shifted(1)):
        for ij, b in table.items():
            out[ij] = out.get(ij, 0) + b
    return out


def verify_betti_splitting(s: Splitting, field: FieldSpec = GF2) -> SplitVerdict:
    """Compare beta(I) with beta(I1) + beta(I2) + beta_{i-1}(I1 cap I2)."""
    if not s.is_partition:
        raise SplittingError("generators of the parts do not partition G(I)")
    actual: BettiTable = betti_table_or_empty(s.whole, field)
    predicted = predicted_table(s, field)
    for ij in sorted(set(actual.entries) | set(predicted)):
        if actual[ij] != predicted.get(ij, 0):
            i, j = ij
            t1 = betti_table_or_empty(s.part1, field)[ij] + betti_table_or_empty(s.part2, field)[ij]
            t12 = betti_table_or_empty(s.intersection, field)[(i - 1, j)]
            return SplitVerdict(False, s.degenerate, ij, (actual[ij], t1, t12))
    return SplitVerdict(True, s.degenerate)


# ---------------------------------------------------------------------------
# cone splitting
# ---------------------------------------------------------------------------


def cone(I: MonomialIdeal) -> MonomialIdeal:
    """(I, x_n) in one more variable."""
    n = I.n + 1
    return minimalize(n, I.gens | {bit(n)})


def cone_power_splitting(I: MonomialIdeal, k: int) -> Splitting:
    """(I, x_n)^[k] = I^[k] + x_n I^[k-1] where x_n is a new variable."""
    if I.is_zero:
        raise SplittingError("cone splitting needs a nonzero ideal")
    nu = monomial_grade(I)
    if not 2 <= k <= nu + 1:
        raise SplittingError(f"k={k} outside 2..{nu + 1}")
    n = I.n + 1
    xn = bit(n)
    J = cone(I)
    Ik = squarefree_power(I, k).with_ambient(n)
    Ik1 = squarefree_power(I, k - 1).with_ambient(n)
    whole = squarefree_power(J, k)
    part2 = scale(xn, Ik1)
    s = Splitting(whole, Ik, part2)
    checks = {
        "sum": ideal_sum(Ik, part2) == whole,
        "partition": s.is_partition,
        "intersection": s.intersection == scale(xn, Ik),
    }
    return Splitting(whole, Ik, part2, checks)


@dataclass(frozen=True)
class ConeRow:
    k: int
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def verify_cone_depth_formula(I: MonomialIdeal, field: FieldSpec = GF2) -> list[ConeRow]:
    """g_J(k) = min{g_I(k) + d_k - d_{k-1} - 1, g_I(k-1)} for J = (I, x_n).

    g_I is taken in the ring of I, g_J one variable up; g_I(0) and
    g_I(nu+1) are +inf and d_0 = 0.
    """
    from .resolution import g_value
    from .monomials import initial_degree

    nu = monomial_grade(I)
    J = cone(I)
    nuJ = monomial_grade(J)
    if nuJ != nu + 1:
        raise AssertionError(f"monomial grade of the cone is {nuJ}, expected {nu + 1}")
    inf = float("inf")

    def g(k: int) -> float:
        return g_value(I, k, field) if 1 <= k <= nu else inf

    def d(k: int) -> int:
        return 0 if k == 0 else initial_degree(squarefree_power(I, k))

    rows = []
    for k in range(1, nuJ + 1):
        first = g(k) + d(k) - d(k - 1) - 1 if k <= nu else inf
        rows.append(ConeRow(k, g_value(J, k, field), min(first, g(k - 1))))
    return rows


# ---------------------------------------------------------------------------
# forest splitting at a distant edge
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SetupLabels:
    """Vertices of a distant edge in the roles n, n-1, n-2 and the extra leaves."""

    leaf: int
    support: int
    inner: int
    leaves: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.leaves)

    def relabeling(self, n: int) -> dict[int, int]:
        """Permutation old label -> Setup label (leaf -> n, support -> n-1, inner -> n-2, ...).

        The extra leaves take n-3, n-4, ...; every other vertex keeps its
        relative order in 1..n-3-t.
        """
        roles = [self.leaf, self.support, self.inner, *self.leaves]
        out = {v: n - pos for pos, v in enumerate(roles)}
        rest = [v for v in range(1, n + 1) if v not in out]
        out.update({v: i + 1 for i, v in enumerate(rest)})
        return out


def relabel(G: Graph, perm: Mapping[int, int]) -> Graph:
    return Graph(G.n, frozenset(tuple(sorted((perm[u], perm[v]))) for u, v in G.edges))


def setup_labels(G: Graph, leaf: int | None = None) -> SetupLabels:
    """Pick the distant edge used by the forest splitting.

    If the labelling already has vertex n as a distant leaf whose support is
    n-1 and n-2 is a neighbour of n-1, those roles are used as they stand.
    Otherwise the distant edge comes from :func:`find_distant_edge`.
    """
    if not is_forest(G):
        raise GraphDomainError("graph is not a forest")
    n = G.n
    if leaf is None:
        if (
            n >= 3
            and G.degree(n) == 1
            and G.neighbors(n) == [n - 1]
            and G.has_edge(n - 1, n - 2)
            and sum(1 for x in G.neighbors(n - 1) if G.degree(x) > 1) <= 1
            and (G.degree(n - 2) > 1 or all(G.degree(x) == 1 for x in G.neighbors(n - 1)))
        ):
            leaf = n
        else:
            leaf = find_distant_edge(G).leaf
    if G.degree(leaf) != 1:
        raise GraphDomainError(f"vertex {leaf} is not a leaf")
    w = G.neighbors(leaf)[0]
    others = [x for x in G.neighbors(w) if x != leaf]
    if not others:
        raise GraphDomainError(f"leaf {leaf} sits on an isolated edge; no vertex plays n-2")
    inner = [x for x in others if G.degree(x) > 1]
    if len(inner) > 1:
        raise GraphDomainError(f"leaf {leaf} is not a distant leaf")
    u = inner[0] if inner else min(others)
    return SetupLabels(leaf, w, u, tuple(sorted(x for x in others if x != u)))


@dataclass(frozen=True)
class ForestSplitting:
    graph: Graph
    k: int
    labels: SetupLabels
    whole: MonomialIdeal  # I(G)^[k]
    part1: MonomialIdeal  # I(G1)^[k]
    part2: MonomialIdeal  # x_n x_{n-1} I(G2)^[k-1]
    J: MonomialIdeal  # part1 cap part2, computed
    J1: MonomialIdeal
    J2: MonomialIdeal
    identities: Mapping[str, bool]

    @property
    def t(self) -> int:
        return self.labels.t

    def splitting(self) -> Splitting:
        return Splitting(self.whole, self.part1, self.part2)

    def inner_splitting(self) -> Splitting:
        """J = J1 + J2 (only meaningful when t > 0)."""
        return Splitting(self.J, self.J1, self.J2)

    @property
    def all_hold(self) -> bool:
        return all(self.identities.values())


def subforests(G: Graph, lab: SetupLabels) -> tuple[Graph, Graph, Graph]:
    """G1, G2, G3: induced on V minus {n}, {n, n-1}, {n, n-1, n-2}; ambient kept."""
    g1 = G.remove_vertices([lab.leaf])
    g2 = G.remove_vertices([lab.leaf, lab.support])
    g3 = G.remove_vertices([lab.leaf, lab.support, lab.inner])
    return g1, g2, g3


def forest_power_splitting(G: Graph, k: int, labels: SetupLabels | None = None) -> ForestSplitting:
    """Build every ideal of the forest splitting and check its set identities."""
    if not is_forest(G):
        raise GraphDomainError("graph is not a forest")
    nu = matching_number(G)
    if nu < 3:
        raise GraphDomainError(f"matching number {nu} < 3; use the resolution oracle for the base case")
    if not 1 <= k <= nu:
        raise SplittingError(f"k={k} outside 1..{nu}")
    lab = labels or setup_labels(G)
    n_, n1, n2 = bit(lab.leaf), bit(lab.support), bit(lab.inner)
    g1, g2, g3 = subforests(G, lab)
    P = lambda H, j: squarefree_power(edge_ideal(H), j) if j <= matching_number(H) else zero_ideal(G.n)  # noqa: E731

    whole = P(G, k)
    part1 = P(g1, k)
    G2k1, G2k = P(g2, k - 1), P(g2, k)
    G3k1, G3k = P(g3, k - 1), P(g3, k)
    part2 = scale(n_ | n1, G2k1)

    J = ideal_intersection(part1, part2)
    leafs_I = lambda L: variable_multiple(lab.leaves, L) if lab.leaves else zero_ideal(G.n)  # noqa: E731
    inner_sum = ideal_sum(G3k, scale(n2, G3k1))
    J1 = scale(n_ | n1, inner_sum)
    J2 = scale(n_ | n1, leafs_I(G2k1))

    ids: dict[str, bool] = {}
    ids["eq4"] = ideal_sum(part1, part2) == whole
    ids["partition"] = not (part1.gens & part2.gens) and (part1.gens | part2.gens) == whole.gens
    ids["eq5"] = J == ideal_sum(J1, J2)
    rhs6 = ideal_sum(ideal_sum(scale(n1 | n2, G3k1), scale(n1, leafs_I(G2k1))), G2k)
    ids["eq6"] = part1 == rhs6
    ids["eq7"] = ideal_sum(G2k, scale(n2, G3k1)) == inner_sum
    ids["a"] = ideal_intersection(scale(n1 | n2, G3k1), part2) == scale(n_ | n1 | n2, G3k1)
    ids["b"] = all(
        ideal_intersection(scale(n1 | bit(i), G2k1), part2) == scale(n_ | n1 | bit(i), G2k1) for i in lab.leaves
    )
    ids["c"] = ideal_intersection(G2k, part2) == scale(n_ | n1, G2k)
    ids["J2_nonzero_iff_t"] = (not J2.is_zero) == (lab.t > 0)
    if lab.t > 0:
        ids["lemma26"] = ideal_intersection(J1, J2) == variable_multiple(lab.leaves, J1)
    return ForestSplitting(G, k, lab, whole, part1, part2, J, J1, J2, ids)


# ---------------------------------------------------------------------------
# Eliahou-Kervaire criterion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EkMap:
    domain: MonomialIdeal
    codomain: MonomialIdeal
    assignment: Mapping[int, int]

    def __call__(self, mask: int) -> int:
        return self.assignment[mask]


def canonical_ek_map(J: MonomialIdeal, L: MonomialIdeal, strict: bool = False) -> EkMap:
    """phi(u) = lex-smallest generator of L dividing u with its largest variable removed.

    The construction needs u / x_max(u) in L for every u in G(J); ``strict``
    demands the stronger partial_star(J) inside L.  Either way the largest
    variable of lcm(Omega) is missing from lcm(phi(Omega)), so the result
    always satisfies the lcm criterion.
    """
    if J.n != L.n:
        raise MonomialError("ambient mismatch")
    if J.is_zero or L.is_zero:
        raise SplittingError("EK maps need nonzero ideals")
    if strict:
        for f in partial_star(J).gens:
            if not L.contains(f):
                raise SplittingError(f"partial_star(J) not inside L: {Monomial(f, J.n)} is not in L")
    ordered = sorted(L.gens, key=support_key)
    assignment = {}
    for u in J.sorted_gens:
        if u == 0:
            raise SplittingError("J is the unit ideal")
        top = 1 << (u.bit_length() - 1)
        rest = u ^ top
        image = next((g for g in ordered if g & ~rest == 0), None)
        if image is None:
            raise SplittingError(
                f"{Monomial(u, J.n)}/x{top.bit_length()} = {Monomial(rest, J.n)} is not in L (partial_star(J) not inside L)"
            )
        assignment[u] = image
    return EkMap(J, L, assignment)


@dataclass(frozen=True)
class EkVerdict:
    holds: bool
    exhaustive: bool
    checked: int
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def _subset_lcms(values: np.ndarray) -> np.ndarray:
    out = np.zeros(1 << values.size, dtype=np.int64)
    for b, v in enumerate(values.tolist()):
        lo = 1 << b
        out[lo:2 * lo] = out[:lo] | v
    return out


def verify_ek_criterion(m: EkMap, limit: int = 16, samples: int = 20000, seed: int = 0) -> EkVerdict:
    """lcm(phi(Omega)) must strictly divide lcm(Omega) for every nonempty Omega.

    Exhaustive when |G(J)| <= limit, otherwise ``samples`` random subsets from
    a seeded generator (a pass then only means "not falsified").
    """
    gens = np.array(m.domain.sorted_gens, dtype=np.int64)
    imgs = np.array([m.assignment[int(u)] for u in gens], dtype=np.int64)
    size = gens.size
    if size <= limit:
        lu = _subset_lcms(gens)[1:]
        lp = _subset_lcms(imgs)[1:]
        bad = np.flatnonzero(((lp & ~lu) != 0) | (lp == lu))
        if bad.size:
            omega = int(bad[0]) + 1
            witness = tuple(int(gens[b]) for b in range(size) if omega >> b & 1)
            return EkVerdict(False, True, int(lu.size), witness)
        return EkVerdict(True, True, int(lu.size))
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        pick = rng.random(size) < rng.random()
        if not pick.any():
            continue
        lu = int(np.bitwise_or.reduce(gens[pick]))
        lp = int(np.bitwise_or.reduce(imgs[pick]))
        if lp & ~lu or lp == lu:
            return EkVerdict(False, False, samples, tuple(int(g) for g in gens[pick]))
    return EkVerdict(True, False, samples)


def _canonical_or_unit(J: MonomialIdeal, L: MonomialIdeal) -> EkMap:
    if L.is_unit:
        return EkMap(J, L, {u: 0 for u in J.gens})
    return canonical_ek_map(J, L)


def forest_proof_ek_map(fs: ForestSplitting) -> EkMap:
    """The three-case map G(J) -> G(x_n x_{n-1} I(G2)^[k-1]) of the forest splitting."""
    lab = fs.labels
    G = fs.graph
    _, g2, g3 = subforests(G, lab)
    k = fs.k
    head = bit(lab.leaf) | bit(lab.support)
    n2 = bit(lab.inner)
    leaf_mask = sum(bit(i) for i in lab.leaves)
    P = lambda H, j: squarefree_power(edge_ideal(H), j) if j <= matching_number(H) else zero_ideal(G.n)  # noqa: E731
    G3k, G3k1, G2k1 = P(g3, k), P(g3, k - 1), P(g2, k - 1)
    tilde = _canonical_or_unit(G3k, G3k1).assignment if not G3k.is_zero else {}
    assignment = {}
    for gen in fs.J.gens:
        rest = gen & ~head
        if rest & leaf_mask:
            low = rest & leaf_mask
            u = rest ^ (low & -low)
            if u not in G2k1.gens:
                raise AssertionError(f"case (iii) generator {gen:b} not of the expected form")
            assignment[gen] = head | u
        elif rest & n2:
            u = rest ^ n2
            if u not in G3k1.gens:
                raise AssertionError(f"case (ii) generator {gen:b} not of the expected form")
            assignment[gen] = head | u
        else:
            if rest not in G3k.gens:
                raise AssertionError(f"case (i) generator {gen:b} not of the expected form")
            assignment[gen] = head | tilde[rest]
    return EkMap(fs.J, fs.part2, assignment)


def lemma26_ek_map(fs: ForestSplitting) -> EkMap:
    """The two-case map G((x_{i_1},...,x_{i_t}) J1) -> G(J2) (requires t > 0)."""
    lab = fs.labels
    if lab.t == 0:
        raise SplittingError("t = 0: J2 is zero")
    G = fs.graph
    _, g2, g3 = subforests(G, lab)
    k = fs.k
    head = bit(lab.leaf) | bit(lab.support)
    n2 = bit(lab.inner)
    leaf_mask = sum(bit(i) for i in lab.leaves)
    P = lambda H, j: squarefree_power(edge_ideal(H), j) if j <= matching_number(H) else zero_ideal(G.n)  # noqa: E731
    G3k, G3k1 = P(g3, k), P(g3, k - 1)
    tilde = _canonical_or_unit(G3k, G3k1).assignment if not G3k.is_zero else {}
    domain = variable_multiple(lab.leaves, fs.J1)
    assignment = {}
    for gen in domain.gens:
        xi = gen & leaf_mask
        rest = gen & ~head & ~xi
        if rest & n2:
            assignment[gen] = head | xi | (rest ^ n2)
        else:
            assignment[gen] = head | xi | tilde[rest]
    return EkMap(domain, fs.J2, assignment)
