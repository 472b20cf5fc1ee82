"""Sparse exact linear algebra over a fixed cyclotomic field.

Vectors are dicts mapping integer column indices to kernel pairs; absent
columns are zero.  Every object taking part in one computation must live
at the same conductor L.  Scalars enter and leave as kernel pairs; use
``to_cyclo``/``from_cyclo`` at the boundary.
"""

from __future__ import annotations

from bisect import bisect_left

from qlsmodcat import _kernel as _K
from qlsmodcat.cyclo import CycloNumber, context


def pzero(L: int):
    return (0,) * context(L).degree, 1


def pone(L: int):
    return (1,) + (0,) * (context(L).degree - 1), 1


def to_cyclo(pair, L: int) -> CycloNumber:
    return CycloNumber._make(L, pair)


def from_cyclo(x: CycloNumber, L: int):
    return x.rebase(L).raw()


def inv_pair(pair, L: int):
    return CycloNumber._make(L, pair).inv().raw()


def axpy_neg(out: dict, f, row: dict, red) -> None:
    """In place: out -= f * row.  Zero entries are dropped."""
    for c, v in row.items():
        cur = out.get(c)
        w = _K.neg(_K.mul(f, v, red)) if cur is None else _K.submul(cur, f, v, red)
        if _K.is_zero(w):
            out.pop(c, None)
        else:
            out[c] = w


def vec_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for c, v in b.items():
        cur = out.get(c)
        w = v if cur is None else _K.add(cur, v)
        if _K.is_zero(w):
            out.pop(c, None)
        else:
            out[c] = w
    return out


def vec_scale(f, a: dict, L: int) -> dict:
    red = context(L).reduction
    out = {}
    for c, v in a.items():
        w = _K.mul(f, v, red)
        if not _K.is_zero(w):
            out[c] = w
    return out


def combine(coeffs: dict, rows, L: int) -> dict:
    """Return sum over i of coeffs[i] * rows[i]."""
    red = context(L).reduction
    out: dict = {}
    for i, f in coeffs.items():
        if _K.is_zero(f):
            continue
        for c, v in rows[i].items():
            cur = out.get(c)
            w = _K.mul(f, v, red)
            w = w if cur is None else _K.add(cur, w)
            if _K.is_zero(w):
                out.pop(c, None)
            else:
                out[c] = w
    return out


class Subspace:
    """A subspace maintained in reduced row echelon form.

    Insertion keeps all rows fully reduced, so ``basis`` is the canonical
    RREF of the subspace and ``key()`` is a canonical identifier.
    """

    def __init__(self, L: int):
        self.L = L
        self._red = context(L).reduction
        self.rows: list[dict] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Residual of vec after eliminating every pivot column."""
        out = dict(vec)
        for piv, row in zip(self.pivots, self.rows):
            f = out.get(piv)
            if f is not None:
                axpy_neg(out, f, row, self._red)
        return out

    def insert(self, vec: dict) -> bool:
        """Add vec to the span; True when the dimension grew."""
        res = self.reduce(vec)
        if not res:
            return False
        piv = min(res)
        inv = inv_pair(res[piv], self.L)
        row = {c: _K.mul(inv, v, self._red) for c, v in res.items()}
        for r in self.rows:
            g = r.get(piv)
            if g is not None:
                axpy_neg(r, g, row, self._red)
        idx = bisect_left(self.pivots, piv)
        self.pivots.insert(idx, piv)
        self.rows.insert(idx, row)
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def key(self):
        """Canonical hashable form of the subspace."""
        return tuple(
            tuple((c,) + row[c] for c in sorted(row)) for row in self.rows
        )


def span(vectors, L: int) -> Subspace:
    sp = Subspace(L)
    for v in vectors:
        sp.insert(v)
    return sp


def rank(vectors, L: int) -> int:
    return span(vectors, L).dim


def left_kernel(rows, ncols: int, L: int) -> list[dict]:
    """Basis of {c : sum_i c_i rows_i = 0}, as dicts over row indices.

    Works by augmenting row i with an indicator in column ncols + i and
    reading off echelon rows whose leading column is in the augmented
    block.
    """
    one = pone(L)
    sp = Subspace(L)
    for i, r in enumerate(rows):
        aug = dict(r)
        aug[ncols + i] = one
        sp.insert(aug)
    out = []
    for piv, row in zip(sp.pivots, sp.rows):
        if piv >= ncols:
            out.append({c - ncols: v for c, v in row.items()})
    return out


def solve(rows, target: dict, ncols: int, L: int):
    """Coefficients c with sum_i c_i rows_i == target, or None."""
    one = pone(L)
    sp = Subspace(L)
    for i, r in enumerate(rows):
        aug = dict(r)
        aug[ncols + i] = one
        sp.insert(aug)
    res = sp.reduce(dict(target))
    if any(c < ncols for c in res):
        return None
    return {c - ncols: _K.neg(v) for c, v in res.items()}


def preimage(map_rows, target_rows, ncols: int, L: int) -> list[dict]:
    """Basis of {x : sum_i x_i map_rows_i lies in span(target_rows)}.

    The result vectors are dicts over indices into map_rows.
    """
    n = len(map_rows)
    stacked = list(map_rows) + list(target_rows)
    out = []
    sp = Subspace(L)
    for ker in left_kernel(stacked, ncols, L):
        head = {i: v for i, v in ker.items() if i < n}
        if head and sp.insert(dict(head)):
            out.append(head)
    return out
