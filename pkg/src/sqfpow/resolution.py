"""Graded Betti numbers of squarefree monomial ideals via Hochster's formula,
and the invariants derived from them.

    beta_{i,j}(I) = sum over |W| = j of dim H~_{j-i-2}(Delta(I)|_W)

where Delta(I) is the Stanley-Reisner complex.  Tables are always reported
for the ideal, not the quotient.  Only supports ``W`` that are unions of
generator supports can contribute (otherwise ``Delta|_W`` is a cone), so by
default the sum runs over the lcm lattice only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .homology import restricted_homology_batch
from .monomials import MonomialIdeal, initial_degree, monomial_grade, squarefree_power

# dense face indicators over 2^m subsets
MAX_SUPPORT = 24


class ResolutionError(ValueError):
    """Zero or unit ideal where a Betti table or invariant is requested."""


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: GF(p) for a prime p, or Q when characteristic is 0."""

    characteristic: int = 2

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1))):
            raise ValueError(f"{p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().lower()
        if t in ("q", "qq", "rationals", "0"):
            return cls(0)
        if t.startswith("gf"):
            t = t[2:]
        try:
            return cls(int(t))
        except ValueError:
            raise ValueError(f"unrecognised field {text!r}; use gf2, gf3, gfp or q") from None

    @property
    def name(self) -> str:
        return "q" if self.characteristic == 0 else f"gf{self.characteristic}"

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"


GF2 = FieldSpec(2)
GF3 = FieldSpec(3)
QQ = FieldSpec(0)


@dataclass(frozen=True)
class BettiTable:
    n: int
    field: FieldSpec
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return dict(self.entries) == dict(other.entries)

    def __hash__(self) -> int:
        return hash(frozenset(self.entries.items()))

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def sorted_items(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self.entries.items())

    @property
    def projdim(self) -> int:
        if not self.entries:
            raise ResolutionError("empty table has no projective dimension")
        return max(i for i, _ in self.entries)

    @property
    def reg(self) -> int:
        if not self.entries:
            raise ResolutionError("empty table has no regularity")
        return max(j - i for i, j in self.entries)

    def shifted(self, di: int) -> dict[tuple[int, int], int]:
        return {(i + di, j): b for (i, j), b in self.entries.items()}

    def format(self) -> str:
        """Macaulay2-style display: rows j - i, columns i."""
        if not self.entries:
            return "(empty)"
        cols = range(self.projdim + 1)
        rows = sorted({j - i for i, j in self.entries})
        width = max(len(str(b)) for b in self.entries.values()) + 1
        lines = ["     " + "".join(f"{i:>{width}}" for i in cols)]
        for r in rows:
            cells = "".join(f"{(self.entries.get((i, i + r), 0) or '.'):>{width}}" for i in cols)
            lines.append(f"{r:>3}: {cells}")
        return "\n".join(lines)


def empty_table(n: int, field: FieldSpec = GF2) -> BettiTable:
    return BettiTable(n, field, {})


@dataclass(frozen=True)
class HomologicalInvariants:
    projdim: int
    depth_quotient: int
    reg: int


# ---------------------------------------------------------------------------
# Stanley-Reisner plumbing
# ---------------------------------------------------------------------------


def stanley_reisner_face(I: MonomialIdeal, F: Iterable[int] | int) -> bool:
    """True iff x_F is not in I."""
    mask = F if isinstance(F, int) else sum(1 << (v - 1) for v in set(F))
    return not I.contains(mask)


def lcm_degrees(I: MonomialIdeal) -> set[int]:
    """Closure of generator supports under union (fixpoint iteration)."""
    if I.is_zero:
        raise ResolutionError("lcm lattice of the zero ideal")
    lattice = set(I.gens)
    frontier = set(lattice)
    while frontier:
        new = {a | b for a in frontier for b in I.gens} - lattice
        lattice |= new
        frontier = new
    return lattice


def _compress(I: MonomialIdeal) -> tuple[list[int], int]:
    """Relabel the variables in the support of I to 0..m-1."""
    support = I.support()
    pos = [i for i in range(I.n) if support >> i & 1]
    m = len(pos)
    if m > MAX_SUPPORT:
        raise ResolutionError(f"ideal involves {m} variables; the oracle handles at most {MAX_SUPPORT}")
    remap = {p: q for q, p in enumerate(pos)}
    gens = []
    for g in I.gens:
        c = 0
        for p in pos:
            if g >> p & 1:
                c |= 1 << remap[p]
        gens.append(c)
    return gens, m


def _superset_or(values: np.ndarray, m: int) -> np.ndarray:
    # values[mask] |= values[mask without b] for every bit b (zeta transform)
    for b in range(m):
        view = values.reshape(-1, 2, 1 << b)
        view[:, 1, :] |= view[:, 0, :]
    return values


def nonface_indicator(gens: list[int], m: int) -> np.ndarray:
    nonface = np.zeros(1 << m, dtype=np.bool_)
    nonface[gens] = True
    return _superset_or(nonface, m)


def lattice_masks(gens: list[int], m: int) -> np.ndarray:
    """Nonzero W equal to the union of the generators inside W."""
    union = np.zeros(1 << m, dtype=np.int64)
    union[gens] = gens
    _superset_or(union, m)
    masks = np.arange(1 << m, dtype=np.int64)
    hit = (union == masks) & (masks != 0)
    return masks[hit]


# ---------------------------------------------------------------------------
# Betti tables
# ---------------------------------------------------------------------------


def _table_from_homology(ws: np.ndarray, hom: np.ndarray) -> dict[tuple[int, int], int]:
    entries: dict[tuple[int, int], int] = {}
    sizes = np.bitwise_count(ws)
    rows, cols = np.nonzero(hom)
    for r, c in zip(rows.tolist(), cols.tolist()):
        j = int(sizes[r])
        d = c - 1
        i = j - d - 2
        if i < 0:
            raise AssertionError(f"homology in impossible degree at W={int(ws[r]):b}, d={d}")
        entries[(i, j)] = entries.get((i, j), 0) + int(hom[r, c])
    return entries


@lru_cache(maxsize=200_000)
def _betti_cached(I: MonomialIdeal, field: FieldSpec, prune: bool) -> BettiTable:
    gens, m = _compress(I)
    nonface = nonface_indicator(gens, m)
    if prune:
        ws = lattice_masks(gens, m)
    else:
        ws = np.arange(1, 1 << m, dtype=np.int64)
    hom = restricted_homology_batch(nonface, ws, m, field.characteristic)
    return BettiTable(I.n, field, _table_from_homology(ws, hom))


def betti_table(I: MonomialIdeal, field: FieldSpec = GF2, prune: bool = True) -> BettiTable:
    """Graded Betti numbers of the ideal I (not of S/I).

    ``prune=False`` sums over every nonempty W instead of the lcm lattice.
    """
    if I.is_zero:
        raise ResolutionError("Betti table of the zero ideal")
    if I.is_unit:
        raise ResolutionError("Betti table of the unit ideal")
    return _betti_cached(I, field, prune)


def betti_table_or_empty(I: MonomialIdeal, field: FieldSpec = GF2) -> BettiTable:
    return empty_table(I.n, field) if I.is_zero else betti_table(I, field)


def clear_cache() -> None:
    _betti_cached.cache_clear()


# ---------------------------------------------------------------------------
# invariants and profiles
# ---------------------------------------------------------------------------


def invariants(I: MonomialIdeal, field: FieldSpec = GF2) -> HomologicalInvariants:
    t = betti_table(I, field)
    pd = t.projdim
    return HomologicalInvariants(projdim=pd, depth_quotient=I.n - pd - 1, reg=t.reg)


def depth_quotient(I: MonomialIdeal, field: FieldSpec = GF2) -> int:
    """depth(S/I); the zero ideal gives the whole ring, depth n."""
    if I.is_zero:
        return I.n
    return invariants(I, field).depth_quotient


def regularity(I: MonomialIdeal, field: FieldSpec = GF2) -> int:
    return invariants(I, field).reg


def projdim(I: MonomialIdeal, field: FieldSpec = GF2) -> int:
    return invariants(I, field).projdim


def g_value(I: MonomialIdeal, k: int, field: FieldSpec = GF2) -> int:
    """Normalized depth g_I(k) = depth(S/I^[k]) - (indeg(I^[k]) - 1)."""
    P = squarefree_power(I, k)
    if P.is_zero:
        raise ResolutionError(f"I^[{k}] is zero")
    return depth_quotient(P, field) - (initial_degree(P) - 1)


def depth_profile(I: MonomialIdeal, field: FieldSpec = GF2) -> dict[int, int]:
    return {k: depth_quotient(squarefree_power(I, k), field) for k in range(1, monomial_grade(I) + 1)}


def g_profile(I: MonomialIdeal, field: FieldSpec = GF2) -> dict[int, int]:
    return {k: g_value(I, k, field) for k in range(1, monomial_grade(I) + 1)}


def reg_profile(I: MonomialIdeal, field: FieldSpec = GF2) -> dict[int, int]:
    return {k: regularity(squarefree_power(I, k), field) for k in range(1, monomial_grade(I) + 1)}
