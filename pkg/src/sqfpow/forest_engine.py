"""Recursions and closed forms for normalized depth and regularity of forests.

For a forest with a distant edge (leaf ``v``, support ``w``, inner
neighbour ``u``, ``t`` further leaves at ``w``) and G1 = G - v,
G2 = G - {v, w}, G3 = G - {v, w, u}, all in the ambient ring of G:

    g(G,k) = min{g(G1,k), g(G2,k-1)-2-t, g(G3,k-1)-3-t, g(G3,k)-2-t}
    reg(G,k) = max{reg(G1,k), reg(G2,k-1)+2, reg(G3,k)+1}

The g formula follows from the two nested splittings: J = J1 + J2 with
J1 cap J2 = (x_{i_1}, ..., x_{i_t}) J1 gives depth(S/J) - 1 =
min{depth(S/J2) - 1, depth(S/J1) - t - 1}.  A variant that drops the last
"- 1" for t > 0 (shifts -2-t, -2-t, -1-t) is kept as ``variant="printed"``;
it disagrees with the oracle, e.g. on the 7-vertex tree
1-2, 1-5, 1-7, 2-3, 2-4, 5-6 at k = 1.

Out-of-range terms are +inf for g and -inf for reg.  Forests with matching
number at most two, or with no distant edge inside a component of three or
more vertices, go to the Hochster oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .graphs import (
    Graph,
    GraphDomainError,
    GraphInputError,
    connected_components,
    cycle,
    is_connected,
    is_forest,
    longest_induced_path_order,
    matching_number,
    path,
)
from .monomials import edge_ideal, squarefree_power
from .resolution import GF2, FieldSpec, betti_table, g_value, regularity
from .splittings import setup_labels, subforests

INF = math.inf


# ---------------------------------------------------------------------------
# canonical form for memoization
# ---------------------------------------------------------------------------


def _ahu(adj: dict[int, list[int]], root: int, parent: int) -> str:
    return "(" + "".join(sorted(_ahu(adj, c, root) for c in adj[root] if c != parent)) + ")"


def _tree_code(G: Graph, comp: list[int]) -> str:
    adj = {v: G.neighbors(v) for v in comp}
    # peel leaves down to the one or two centres
    layer = [v for v in comp if len(adj[v]) <= 1]
    deg = {v: len(adj[v]) for v in comp}
    left = len(comp)
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for x in adj[v]:
                deg[x] -= 1
                if deg[x] == 1:
                    nxt.append(x)
        layer = nxt
    return min(_ahu(adj, c, 0) for c in layer)


def canonical_form(G: Graph) -> tuple:
    """Isomorphism invariant of a forest that keeps the ambient size.

    Two forests on the same n get the same key iff they are isomorphic.
    """
    if not is_forest(G):
        raise GraphDomainError("canonical form is only defined for forests")
    codes = sorted(_tree_code(G, c) for c in connected_components(G) if len(c) > 1)
    return (G.n, tuple(codes))


# ---------------------------------------------------------------------------
# recursions
# ---------------------------------------------------------------------------


def _check(G: Graph, k: int) -> int:
    if not is_forest(G):
        raise GraphDomainError("graph is not a forest")
    nu = matching_number(G)
    if not 1 <= k <= nu:
        raise GraphInputError(f"k={k} outside 1..{nu}")
    return nu


def _splittable(G: Graph, nu: int) -> bool:
    if nu < 3:
        return False
    return any(len(c) > 2 for c in connected_components(G))


def _oracle_g(G: Graph, k: int, fld: FieldSpec) -> int:
    return g_value(edge_ideal(G), k, fld)


def _oracle_reg(G: Graph, k: int, fld: FieldSpec) -> int:
    return regularity(squarefree_power(edge_ideal(G), k), fld)


_G_MEMO: dict[tuple, int] = {}
_REG_MEMO: dict[tuple, int] = {}


def clear_memo() -> None:
    _G_MEMO.clear()
    _REG_MEMO.clear()


VARIANTS = ("derived", "printed")


def _g_combine(t: int, a: float, b: float, c: float, d: float, variant: str) -> float:
    if variant == "printed" and t > 0:
        return min(a, b - 2 - t, c - 2 - t, d - 1 - t)
    if variant not in VARIANTS:
        raise GraphInputError(f"unknown recursion variant {variant!r}")
    return min(a, b - 2 - t, c - 3 - t, d - 2 - t)


def _recurse(G: Graph, k: int, fld: FieldSpec, kind: str, memo: dict | None, variant: str = "derived") -> float:
    nu = matching_number(G)
    if k < 1 or k > nu:
        return INF if kind == "g" else -INF
    key = None
    if memo is not None:
        key = (canonical_form(G), k, fld, variant)
        hit = memo.get(key)
        if hit is not None:
            return hit
    if not _splittable(G, nu):
        value = _oracle_g(G, k, fld) if kind == "g" else _oracle_reg(G, k, fld)
    else:
        lab = setup_labels(G)
        g1, g2, g3 = subforests(G, lab)
        if kind == "g":
            a = _recurse(g1, k, fld, kind, memo, variant)
            b = _recurse(g2, k - 1, fld, kind, memo, variant)
            c = _recurse(g3, k - 1, fld, kind, memo, variant)
            d = _recurse(g3, k, fld, kind, memo, variant)
            value = _g_combine(lab.t, a, b, c, d, variant)
        else:
            value = max(
                _recurse(g1, k, fld, kind, memo),
                _recurse(g2, k - 1, fld, kind, memo) + 2,
                _recurse(g3, k, fld, kind, memo) + 1,
            )
        value = int(value)
    if memo is not None:
        # idempotent: a recomputation must agree with what is stored
        prev = memo.setdefault(key, value)
        if prev != value:
            raise AssertionError(f"memo divergence at {key}: {prev} vs {value}")
    return value


def g_forest(G: Graph, k: int, field: FieldSpec = GF2, memo: bool = True, variant: str = "derived") -> int:
    """g_{I(G)}(k) by the distant-edge recursion."""
    _check(G, k)
    return int(_recurse(G, k, field, "g", _G_MEMO if memo else None, variant))


def reg_forest(G: Graph, k: int, field: FieldSpec = GF2, memo: bool = True) -> int:
    """reg(I(G)^[k]) by the distant-edge recursion."""
    _check(G, k)
    return int(_recurse(G, k, field, "reg", _REG_MEMO if memo else None))


@dataclass(frozen=True)
class RecursionTerms:
    """The four terms of the g recursion at one step, with the labels used."""

    leaf: int
    support: int
    inner: int
    t: int
    g1_k: float
    g2_km1: float
    g3_km1: float
    g3_k: float

    def shifted(self, variant: str = "derived") -> tuple[float, float, float, float]:
        t = self.t
        if variant == "printed" and t > 0:
            return (self.g1_k, self.g2_km1 - 2 - t, self.g3_km1 - 2 - t, self.g3_k - 1 - t)
        return (self.g1_k, self.g2_km1 - 2 - t, self.g3_km1 - 3 - t, self.g3_k - 2 - t)

    def value(self, variant: str = "derived") -> float:
        return min(self.shifted(variant))


def recursion_terms(G: Graph, k: int, field: FieldSpec = GF2, leaf: int | None = None) -> RecursionTerms:
    """Evaluate each term of one recursion step with the oracle."""
    _check(G, k)
    lab = setup_labels(G, leaf)
    g1, g2, g3 = subforests(G, lab)

    def og(H: Graph, j: int) -> float:
        if j < 1 or j > matching_number(H):
            return INF
        return _oracle_g(H, j, field)

    return RecursionTerms(lab.leaf, lab.support, lab.inner, lab.t, og(g1, k), og(g2, k - 1), og(g3, k - 1), og(g3, k))


# ---------------------------------------------------------------------------
# closed forms and theorem checks
# ---------------------------------------------------------------------------


def path_g_closed_form(n: int, k: int) -> int:
    """g_{I(P_n)}(k) = max(ceil(n/3) - k, 0)."""
    if n < 2:
        raise GraphInputError("path closed form needs n >= 2")
    if not 1 <= k <= n // 2:
        raise GraphInputError(f"k={k} outside 1..{n // 2}")
    return max(-(-n // 3) - k, 0)


@dataclass
class Verdict:
    holds: bool
    details: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds


def check_nonincreasing(G: Graph, field: FieldSpec = GF2) -> Verdict:
    """g is non-increasing in k, recursion values match the oracle, and g(nu)
    equals the number of isolated vertices (0 when every vertex is covered)."""
    nu = _check(G, 1)
    v = Verdict(True)
    values = []
    for k in range(1, nu + 1):
        rec = g_forest(G, k, field)
        ora = _oracle_g(G, k, field)
        if rec != ora:
            v.holds = False
            v.details.append(f"k={k}: recursion {rec} != oracle {ora}")
        values.append(ora)
    for k in range(1, nu):
        if values[k] > values[k - 1]:
            v.holds = False
            v.details.append(f"g({k + 1})={values[k]} > g({k})={values[k - 1]}")
    isolated = G.n - G.covered().bit_count()
    if values[-1] != isolated:
        v.holds = False
        v.details.append(f"g(nu)={values[-1]} != {isolated} (isolated vertices)")
    return v


def induced_path_bound(G: Graph, field: FieldSpec = GF2) -> Verdict:
    """nu >= floor(l/2) and g(k) <= ceil((3n-2l)/3) - k, resp. n - l, for k <= floor(l/2)."""
    if not is_connected(G):
        raise GraphInputError("graph is not connected")
    n = G.n
    ell = longest_induced_path_order(G)
    nu = matching_number(G)
    v = Verdict(nu >= ell // 2)
    if not v.holds:
        v.details.append(f"nu={nu} < floor({ell}/2)")
    for k in range(1, ell // 2 + 1):
        bound = -(-(3 * n - 2 * ell) // 3) - k if k <= -(-ell // 3) else n - ell
        g = _oracle_g(G, k, field)
        v.details.append(f"k={k}: g={g} bound={bound}")
        if g > bound:
            v.holds = False
    return v


def char_independence(G: Graph, chars: Iterable[FieldSpec | int], require_forest: bool = True) -> Verdict:
    """Betti tables of every I(G)^[k] agree over the listed fields."""
    if require_forest and not is_forest(G):
        raise GraphDomainError("graph is not a forest")
    fields = [c if isinstance(c, FieldSpec) else FieldSpec(c) for c in chars]
    v = Verdict(True)
    I = edge_ideal(G)
    for k in range(1, matching_number(G) + 1):
        P = squarefree_power(I, k)
        tables = [betti_table(P, f) for f in fields]
        for f, t in zip(fields[1:], tables[1:]):
            if t != tables[0]:
                v.holds = False
                v.details.append(f"k={k}: {fields[0]} and {f} differ")
    return v


@dataclass(frozen=True)
class CycleRow:
    n: int
    k: int
    g_path: int
    g_cycle: int

    @property
    def equal(self) -> bool:
        return self.g_path == self.g_cycle


def cycle_question(n_max: int, field: FieldSpec = GF2, cap: int = 16) -> list[CycleRow]:
    """g of P_n and C_n side by side for n = 3..n_max, every k (k = 1 included)."""
    if n_max > cap:
        raise GraphInputError(f"n_max={n_max} exceeds the cap {cap}")
    rows = []
    for n in range(3, n_max + 1):
        P, C = edge_ideal(path(n)), edge_ideal(cycle(n))
        for k in range(1, n // 2 + 1):
            rows.append(CycleRow(n, k, g_value(P, k, field), g_value(C, k, field)))
    return rows


# ---------------------------------------------------------------------------
# profile
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProfileRow:
    k: int
    d: int
    depth: int
    g: int
    reg: int
    aim: int | None
    source: str


@dataclass(frozen=True)
class ProfileReport:
    graph: Graph
    field: FieldSpec
    rows: tuple[ProfileRow, ...]
    ambient: str = "all n vertices"

    def format(self) -> str:
        head = f"# {self.graph}  field={self.field}  ambient: {self.ambient}"
        cols = f"{'k':>3} {'d_k':>4} {'depth':>6} {'g':>4} {'reg':>4} {'aim':>4} {'aim+k':>6}  source"
        lines = [head, cols]
        for r in self.rows:
            aim = "-" if r.aim is None else str(r.aim)
            aimk = "-" if r.aim is None else str(r.aim + r.k)
            lines.append(f"{r.k:>3} {r.d:>4} {r.depth:>6} {r.g:>4} {r.reg:>4} {aim:>4} {aimk:>6}  {r.source}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.sorted_edges],
            "field": self.field.name,
            "ambient": self.ambient,
            "rows": [r.__dict__ for r in self.rows],
        }


def _is_path_labelled(G: Graph) -> bool:
    return G.edges == path(G.n).edges


def profile(G: Graph, field: FieldSpec = GF2, ks: Iterable[int] | None = None) -> ProfileReport:
    """Per-k table of d_k, depth, g, reg and (for forests) aim."""
    from .admissible import aim

    nu = matching_number(G)
    if nu == 0:
        raise GraphInputError("graph has no edges")
    forest = is_forest(G)
    rows = []
    for k in ks or range(1, nu + 1):
        if not 1 <= k <= nu:
            raise GraphInputError(f"k={k} outside 1..{nu}")
        d = 2 * k
        if _is_path_labelled(G) and G.n >= 2:
            g, source = path_g_closed_form(G.n, k), "closed-form"
            reg = reg_forest(G, k, field)
        elif forest:
            g, reg = g_forest(G, k, field), reg_forest(G, k, field)
            source = "recursion" if _splittable(G, nu) else "oracle"
        else:
            g, reg, source = _oracle_g(G, k, field), _oracle_reg(G, k, field), "oracle"
        a = aim(G, k) if forest else None
        rows.append(ProfileRow(k, d, g + d - 1, g, reg, a, source))
    return ProfileReport(G, field, tuple(rows))
