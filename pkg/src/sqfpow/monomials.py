"""Squarefree monomials and monomial ideals.

A squarefree monomial is stored as the bitmask of its support (variable
``x_i`` is bit ``i - 1``).  The constant monomial 1 is mask 0, so the unit
ideal is ``MonomialIdeal(n, {0})`` and the zero ideal has no generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

from .graphs import Graph, bit, enumerate_k_matchings, mask_of, vertices_of


class MonomialError(ValueError):
    """Ambient mismatch or an operation that would leave the squarefree world."""


@dataclass(frozen=True, order=True)
class Monomial:
    mask: int
    n: int

    @classmethod
    def of(cls, n: int, *variables: int) -> "Monomial":
        return cls(mask_of(variables), n)

    @property
    def support(self) -> list[int]:
        return vertices_of(self.mask)

    @property
    def degree(self) -> int:
        return self.mask.bit_count()

    def __str__(self) -> str:
        return "".join(f"x{i}" for i in self.support) or "1"


def _check_ambient(*items) -> int:
    ns = {x.n for x in items}
    if len(ns) != 1:
        raise MonomialError(f"ambient mismatch: {sorted(ns)}")
    return ns.pop()


def lcm(u: Monomial, v: Monomial) -> Monomial:
    return Monomial(u.mask | v.mask, _check_ambient(u, v))


def divides(u: Monomial, v: Monomial) -> bool:
    _check_ambient(u, v)
    return u.mask & ~v.mask == 0


def coprime(u: Monomial, v: Monomial) -> bool:
    _check_ambient(u, v)
    return u.mask & v.mask == 0


def support_key(mask: int) -> tuple[int, ...]:
    """Sort key: lexicographic order of the sorted support."""
    return tuple(vertices_of(mask))


def minimal_masks(masks: Iterable[int]) -> frozenset[int]:
    """Drop every mask that strictly contains another mask of the set."""
    kept: list[int] = []
    for m in sorted(set(masks), key=int.bit_count):
        if not any(k & ~m == 0 for k in kept):
            kept.append(m)
    return frozenset(kept)


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    gens: frozenset[int]

    def __post_init__(self):
        limit = 1 << self.n
        for g in self.gens:
            if not 0 <= g < limit:
                raise MonomialError(f"generator mask {g:b} outside {self.n} variables")

    @classmethod
    def from_supports(cls, n: int, supports: Iterable[Iterable[int]]) -> "MonomialIdeal":
        return minimalize(n, (mask_of(s) for s in supports))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return 0 in self.gens

    @cached_property
    def sorted_gens(self) -> tuple[int, ...]:
        return tuple(sorted(self.gens, key=lambda g: (g.bit_count(), support_key(g))))

    @property
    def generators(self) -> list[Monomial]:
        return [Monomial(g, self.n) for g in self.sorted_gens]

    def support(self) -> int:
        out = 0
        for g in self.gens:
            out |= g
        return out

    def contains(self, mask: int) -> bool:
        """Membership of the monomial ``mask``."""
        return any(g & ~mask == 0 for g in self.gens)

    def with_ambient(self, n: int) -> "MonomialIdeal":
        if self.support() >> n:
            raise MonomialError(f"ideal uses variables beyond x{n}")
        return MonomialIdeal(n, self.gens)

    def __le__(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(str(Monomial(g, self.n)) for g in self.sorted_gens) + ")"


def minimalize(n: int, gens: Iterable[int | Monomial]) -> MonomialIdeal:
    masks = []
    for g in gens:
        if isinstance(g, Monomial):
            if g.n != n:
                raise MonomialError(f"ambient mismatch: {g.n} vs {n}")
            g = g.mask
        masks.append(g)
    return MonomialIdeal(n, minimal_masks(masks))


def zero_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, frozenset())


def unit_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, frozenset({0}))


def variables_ideal(n: int, variables: Iterable[int]) -> MonomialIdeal:
    return MonomialIdeal(n, frozenset(bit(i) for i in variables))


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    n = _check_ambient(I, J)
    return minimalize(n, I.gens | J.gens)


def ideal_intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    n = _check_ambient(I, J)
    return minimalize(n, (a | b for a in I.gens for b in J.gens))


def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """Product restricted to coprime pairs; raises if a square would appear."""
    n = _check_ambient(I, J)
    out = []
    for a in I.gens:
        for b in J.gens:
            if a & b:
                raise MonomialError("product would leave squarefree world")
            out.append(a | b)
    return minimalize(n, out)


def scale(u: Monomial | int, I: MonomialIdeal) -> MonomialIdeal:
    umask = u.mask if isinstance(u, Monomial) else u
    if isinstance(u, Monomial):
        _check_ambient(u, I)
    for g in I.gens:
        if g & umask:
            raise MonomialError(
                f"scaling by {Monomial(umask, I.n)} would leave squarefree world "
                f"(shares a variable with {Monomial(g, I.n)})"
            )
    return MonomialIdeal(I.n, frozenset(g | umask for g in I.gens))


def variable_multiple(variables: Iterable[int], I: MonomialIdeal) -> MonomialIdeal:
    """(x_{i_1}, ..., x_{i_t}) * I, each product required to stay squarefree."""
    return ideal_product(variables_ideal(I.n, variables), I)


def edge_ideal(G: Graph) -> MonomialIdeal:
    return MonomialIdeal(G.n, frozenset(mask_of(e) for e in G.edges))


def _coprime_products(gens: tuple[int, ...], k: int) -> set[int]:
    out: set[int] = set()

    def rec(start: int, used: int, depth: int) -> None:
        if depth == k:
            out.add(used)
            return
        for i in range(start, len(gens) - (k - depth) + 1):
            if not used & gens[i]:
                rec(i + 1, used | gens[i], depth + 1)

    rec(0, 0, 0)
    return out


@lru_cache(maxsize=65536)
def squarefree_power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    """I^[k]: products of k pairwise coprime minimal generators, minimalized.

    ``k == 0`` gives the unit ideal.
    """
    if k < 0:
        raise MonomialError("k must be >= 0")
    if k == 0:
        return unit_ideal(I.n)
    if I.is_unit:
        raise MonomialError("squarefree powers of the unit ideal are not handled")
    return minimalize(I.n, _coprime_products(I.sorted_gens, k))


def matching_power(G: Graph, k: int) -> MonomialIdeal:
    """I(G)^[k] built from k-matchings (independent of :func:`squarefree_power`)."""
    if k == 0:
        return unit_ideal(G.n)
    return MonomialIdeal(G.n, frozenset(mask_of(v for e in M for v in e) for M in enumerate_k_matchings(G, k)))


@lru_cache(maxsize=65536)
def monomial_grade(I: MonomialIdeal) -> int:
    """Largest pairwise coprime subset of G(I), by branch and bound."""
    gens = sorted(I.gens, key=int.bit_count)
    if I.is_unit:
        raise MonomialError("monomial grade of the unit ideal is undefined")
    best = 0

    def rec(start: int, used: int, size: int) -> None:
        nonlocal best
        best = max(best, size)
        # every further generator takes at least one fresh variable
        free = (I.n - used.bit_count())
        if size + min(len(gens) - start, free) <= best:
            return
        for i in range(start, len(gens)):
            if not used & gens[i]:
                rec(i + 1, used | gens[i], size + 1)

    rec(0, 0, 0)
    return best


def initial_degree(I: MonomialIdeal) -> int:
    if I.is_zero:
        raise MonomialError("initial degree of the zero ideal is undefined")
    return min(g.bit_count() for g in I.gens)


def partial_star(I: MonomialIdeal) -> MonomialIdeal:
    """The ideal generated by all f / x_i, f in G(I), x_i | f."""
    if I.is_zero:
        raise MonomialError("partial_star of the zero ideal")
    if I.is_unit:
        raise MonomialError("partial_star: generator 1 has no variable to remove")
    out = []
    for g in I.gens:
        rest = g
        while rest:
            low = rest & -rest
            out.append(g ^ low)
            rest ^= low
    return minimalize(I.n, out)
