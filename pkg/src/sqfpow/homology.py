"""Reduced simplicial homology over GF(2), GF(p) and the rationals.

Two entry points:

* :func:`reduced_homology_dims` works on an explicit face list and is the
  readable reference path.
* :func:`restricted_homology_batch` is the hot kernel behind the Betti
  tables.  A complex is given by a dense ``nonface`` indicator over all
  subsets of ``m`` vertices; for every mask ``w`` in a batch it computes the
  reduced homology of the complex restricted to ``w``.  It has a numba
  implementation and a pure-numpy one (see :mod:`sqfpow._accel`).

Homology arrays are indexed by ``d + 1`` so that slot 0 holds
``dim H~_{-1}`` (nonzero only for the irrelevant complex ``{{}}``).
"""

from __future__ import annotations

from itertools import combinations
from math import gcd
from typing import Iterable

import numpy as np

from . import _accel
from ._accel import njit

# Entries above this bound make the int64 rational elimination bail out to
# Python integers; products of two such entries still fit in int64.
_Q_LIMIT = 1 << 30


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------


@njit(cache=True)
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _trailing_zeros_u64(word):
    low = word & (~word + np.uint64(1))
    return _popcount64(low - np.uint64(1))


@njit(cache=True)
def _rank_gf2_nb(row_faces, index, ncols):
    nrows = row_faces.shape[0]
    nwords = (ncols + 63) >> 6
    cap = min(nrows, ncols)
    basis = np.zeros((cap, nwords), np.uint64)
    pivot = np.full(ncols, -1, np.int64)
    row = np.zeros(nwords, np.uint64)
    one = np.uint64(1)
    rank = 0
    for r in range(nrows):
        f = row_faces[r]
        for x in range(nwords):
            row[x] = 0
        g = f
        while g:
            low = g & -g
            col = index[f ^ low]
            row[col >> 6] |= one << np.uint64(col & 63)
            g ^= low
        wi = 0
        while wi < nwords:
            word = row[wi]
            if word == 0:
                wi += 1
                continue
            col = wi * 64 + _trailing_zeros_u64(word)
            pr = pivot[col]
            if pr < 0:
                for x in range(nwords):
                    basis[rank, x] = row[x]
                pivot[col] = rank
                rank += 1
                break
            for x in range(wi, nwords):
                row[x] ^= basis[pr, x]
        if rank == cap:
            break
    return rank


@njit(cache=True)
def _inv_mod(a, p):
    # extended Euclid, a and p coprime
    t, newt = 0, 1
    r, newr = p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


@njit(cache=True)
def _fill_boundary_row(f, index, row, p):
    # signed boundary of face f written into a dense row (p == 0: integers)
    g = f
    j = 0
    while g:
        low = g & -g
        col = index[f ^ low]
        if j % 2 == 0:
            row[col] = 1
        else:
            row[col] = p - 1 if p > 0 else -1
        g ^= low
        j += 1


@njit(cache=True)
def _rank_gfp_nb(row_faces, index, ncols, p):
    nrows = row_faces.shape[0]
    cap = min(nrows, ncols)
    basis = np.zeros((cap, ncols), np.int64)
    pivot = np.full(ncols, -1, np.int64)
    row = np.zeros(ncols, np.int64)
    rank = 0
    for r in range(nrows):
        row[:] = 0
        _fill_boundary_row(row_faces[r], index, row, p)
        for col in range(ncols):
            v = row[col]
            if v == 0:
                continue
            pr = pivot[col]
            if pr < 0:
                inv = _inv_mod(v, p)
                for x in range(col, ncols):
                    row[x] = (row[x] * inv) % p
                for x in range(ncols):
                    basis[rank, x] = row[x]
                pivot[col] = rank
                rank += 1
                break
            for x in range(col, ncols):
                row[x] = (row[x] - v * basis[pr, x]) % p
        if rank == cap:
            break
    return rank


@njit(cache=True)
def _rank_q_nb(row_faces, index, ncols):
    """Fraction-free integer elimination; returns -1 if entries grow too big."""
    nrows = row_faces.shape[0]
    cap = min(nrows, ncols)
    basis = np.zeros((cap, ncols), np.int64)
    pivot = np.full(ncols, -1, np.int64)
    row = np.zeros(ncols, np.int64)
    rank = 0
    for r in range(nrows):
        row[:] = 0
        _fill_boundary_row(row_faces[r], index, row, 0)
        for col in range(ncols):
            v = row[col]
            if v == 0:
                continue
            pr = pivot[col]
            if pr < 0:
                for x in range(ncols):
                    basis[rank, x] = row[x]
                pivot[col] = rank
                rank += 1
                break
            pv = basis[pr, col]
            g = gcd(abs(v), abs(pv))
            a = pv // g
            b = v // g
            content = 0
            for x in range(col, ncols):
                val = a * row[x] - b * basis[pr, x]
                row[x] = val
                if val != 0:
                    content = gcd(content, abs(val))
            if content > 1:
                for x in range(col, ncols):
                    row[x] //= content
            for x in range(col, ncols):
                if abs(row[x]) > _Q_LIMIT:
                    return -1
        if rank == cap:
            break
    return rank


@njit(cache=True)
def _batch_nb(nonface, ws, m, p):
    nw = ws.shape[0]
    out = np.zeros((nw, m + 2), np.int64)
    overflow = np.zeros(nw, np.bool_)
    size = 1 << m
    index = np.zeros(size, np.int64)
    buf = np.empty(size, np.int64)
    counts = np.zeros(m + 2, np.int64)
    starts = np.zeros(m + 3, np.int64)
    fill = np.zeros(m + 3, np.int64)
    ranks = np.zeros(m + 3, np.int64)
    for t in range(nw):
        w = ws[t]
        counts[:] = 0
        nf = 0
        sub = w
        while True:
            if not nonface[sub]:
                buf[nf] = sub
                nf += 1
                counts[_popcount(sub)] += 1
            if sub == 0:
                break
            sub = (sub - 1) & w
        starts[0] = 0
        for c in range(m + 2):
            starts[c + 1] = starts[c] + counts[c]
        for c in range(m + 3):
            fill[c] = starts[c]
        faces = np.empty(nf, np.int64)
        for q in range(nf - 1, -1, -1):
            f = buf[q]
            c = _popcount(f)
            index[f] = fill[c] - starts[c]
            faces[fill[c]] = f
            fill[c] += 1
        ranks[:] = 0
        for c in range(1, m + 1):
            nrows = counts[c]
            ncols = counts[c - 1]
            if nrows == 0 or ncols == 0:
                continue
            rows = faces[starts[c]:starts[c] + nrows]
            if p == 2:
                rk = _rank_gf2_nb(rows, index, ncols)
            elif p == 0:
                rk = _rank_q_nb(rows, index, ncols)
                if rk < 0:
                    overflow[t] = True
                    break
            else:
                rk = _rank_gfp_nb(rows, index, ncols, p)
            ranks[c] = rk
        for c in range(m + 1):
            out[t, c] = counts[c] - ranks[c] - ranks[c + 1]
    return out, overflow


# ---------------------------------------------------------------------------
# numpy / pure Python path
# ---------------------------------------------------------------------------


def _rank_gf2_np(mat: np.ndarray) -> int:
    a = (mat % 2).astype(np.uint8)
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        hits = np.flatnonzero(a[rank:, col])
        if hits.size == 0:
            continue
        piv = rank + hits[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        below = np.flatnonzero(a[:, col])
        below = below[below != rank]
        if below.size:
            a[below] ^= a[rank]
        rank += 1
    return rank


def _rank_gfp_np(mat: np.ndarray, p: int) -> int:
    a = np.mod(mat, p).astype(np.int64)
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        hits = np.flatnonzero(a[rank:, col])
        if hits.size == 0:
            continue
        piv = rank + hits[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        a[rank] = (a[rank] * pow(int(a[rank, col]), -1, p)) % p
        others = np.flatnonzero(a[:, col])
        others = others[others != rank]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, col], a[rank])) % p
        rank += 1
    return rank


def rank_rational(rows: Iterable[dict[int, int]]) -> int:
    """Exact rank over Q of a sparse integer matrix given as row dicts.

    Fraction-free elimination on Python integers; each reduced row is
    divided by its content so entries stay small.
    """
    pivots: dict[int, dict[int, int]] = {}
    for src in rows:
        row = {c: v for c, v in src.items() if v}
        while row:
            col = min(row)
            basis = pivots.get(col)
            if basis is None:
                pivots[col] = row
                break
            v, pv = row[col], basis[col]
            g = gcd(v, pv)
            a, b = pv // g, v // g
            merged: dict[int, int] = {}
            for c in row.keys() | basis.keys():
                val = a * row.get(c, 0) - b * basis.get(c, 0)
                if val:
                    merged[c] = val
            content = 0
            for val in merged.values():
                content = gcd(content, val)
            if content > 1:
                merged = {c: val // content for c, val in merged.items()}
            row = merged
    return len(pivots)


def _dense_to_rows(mat: np.ndarray) -> list[dict[int, int]]:
    return [{int(c): int(mat[r, c]) for c in np.flatnonzero(mat[r])} for r in range(mat.shape[0])]


def matrix_rank(mat: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over GF(p) (p prime) or Q (p == 0)."""
    if mat.size == 0:
        return 0
    if p == 2:
        return _rank_gf2_np(mat)
    if p == 0:
        return rank_rational(_dense_to_rows(mat))
    return _rank_gfp_np(mat, p)


_bitcount = np.bitwise_count


def _restricted_faces_np(nonface: np.ndarray, w: int) -> np.ndarray:
    masks = np.arange(nonface.shape[0], dtype=np.int64)
    keep = ((masks & ~np.int64(w)) == 0) & ~nonface
    return masks[keep]


def _boundary_matrix_np(rows: np.ndarray, cols: np.ndarray, m: int) -> np.ndarray:
    col_index = {int(c): i for i, c in enumerate(cols)}
    mat = np.zeros((rows.shape[0], cols.shape[0]), dtype=np.int64)
    for b in range(m):
        bit = np.int64(1) << b
        has = np.flatnonzero(rows & bit)
        if has.size == 0:
            continue
        sub = rows[has]
        pos = _bitcount(sub & (bit - 1))
        sign = np.where(pos % 2 == 0, 1, -1)
        idx = np.fromiter((col_index[int(x)] for x in sub ^ bit), dtype=np.int64, count=sub.size)
        mat[has, idx] = sign
    return mat


def _restricted_homology_np(nonface: np.ndarray, w: int, m: int, p: int) -> np.ndarray:
    faces = _restricted_faces_np(nonface, w)
    card = _bitcount(faces)
    groups = [faces[card == c] for c in range(m + 1)]
    ranks = np.zeros(m + 3, dtype=np.int64)
    for c in range(1, m + 1):
        if groups[c].size and groups[c - 1].size:
            ranks[c] = matrix_rank(_boundary_matrix_np(groups[c], groups[c - 1], m), p)
    out = np.zeros(m + 2, dtype=np.int64)
    for c in range(m + 1):
        out[c] = groups[c].size - ranks[c] - ranks[c + 1]
    return out


# ---------------------------------------------------------------------------
# public surface
# ---------------------------------------------------------------------------


def restricted_homology_batch(nonface: np.ndarray, ws: np.ndarray, m: int, p: int) -> np.ndarray:
    """Reduced homology of ``Delta|_w`` for each ``w`` in ``ws``.

    ``nonface[mask]`` is True when ``mask`` is not a face; the complex must be
    closed under subsets and contain the empty face.  Returns an array of
    shape ``(len(ws), m + 2)`` with ``dim H~_{d}`` at column ``d + 1``.
    """
    nonface = np.ascontiguousarray(nonface, dtype=np.bool_)
    ws = np.ascontiguousarray(ws, dtype=np.int64)
    if ws.size == 0:
        return np.zeros((0, m + 2), dtype=np.int64)
    if _accel.backend() == "numba":
        out, overflow = _batch_nb(nonface, ws, m, p)
        for t in np.flatnonzero(overflow):
            out[t] = _restricted_homology_np(nonface, int(ws[t]), m, p)
        return out
    return np.stack([_restricted_homology_np(nonface, int(w), m, p) for w in ws])


def reduced_homology_dims(faces: Iterable[Iterable[int]], p: int = 2) -> dict[int, int]:
    """Reduced homology dimensions of an explicitly listed simplicial complex.

    ``faces`` must be closed under taking subsets.  The empty face is added if
    the list is nonempty; an empty list is the void complex, which has no
    homology at all.  Only nonzero dimensions are returned.
    """
    face_set = {frozenset(f) for f in faces}
    if not face_set:
        return {}
    face_set.add(frozenset())
    for f in face_set:
        for x in f:
            if f - {x} not in face_set:
                raise ValueError(f"face list not closed under subsets: {sorted(f)} lacks {sorted(f - {x})}")
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for f in face_set:
        by_size.setdefault(len(f), []).append(tuple(sorted(f)))
    top = max(by_size)
    for c in by_size:
        by_size[c].sort()
    ranks = [0] * (top + 3)
    for c in range(1, top + 1):
        rows, cols = by_size.get(c, []), by_size.get(c - 1, [])
        if not rows or not cols:
            continue
        col_index = {f: i for i, f in enumerate(cols)}
        mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for r, f in enumerate(rows):
            for j, omit in enumerate(range(len(f))):
                mat[r, col_index[f[:omit] + f[omit + 1:]]] = -1 if j % 2 else 1
        ranks[c] = matrix_rank(mat, p)
    dims = {}
    for c in range(top + 1):
        h = len(by_size.get(c, [])) - ranks[c] - ranks[c + 1]
        if h:
            dims[c - 1] = h
    return dims


def full_simplex(vertices: Iterable[int]) -> list[tuple[int, ...]]:
    """All faces of the simplex on ``vertices`` (used by tests and examples)."""
    vs = sorted(vertices)
    return [c for r in range(len(vs) + 1) for c in combinations(vs, r)]
