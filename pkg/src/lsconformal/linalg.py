"""Exact linear algebra over Q on sparse coordinate vectors.

Vectors are dicts mapping hashable coordinate keys to :class:`Fraction`.  The
workhorse is :class:`Echelon`, an incrementally built reduced row echelon
basis that also remembers how each stored row was combined from the inserted
vectors, which gives kernels and solve witnesses for free.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from .polyring import Poly

Sparse = dict


def poly_coords(values: Iterable[Poly], prefix: Hashable = ()) -> Sparse:
    """Flatten a sequence of polynomials to ``{(prefix, k, monomial): coeff}``."""
    out = {}
    for k, p in enumerate(values):
        for mono, c in p.terms():
            out[(prefix, k, mono)] = c
    return out


def _axpy(target: Sparse, a: Fraction, x: Sparse) -> None:
    """``target += a * x`` in place, dropping zeros."""
    for key, v in x.items():
        w = target.get(key, 0) + a * v
        if w:
            target[key] = w
        else:
            target.pop(key, None)


class Echelon:
    """Reduced row echelon basis of a growing span.

    ``insert(v)`` returns ``None`` when ``v`` is new (it joins the basis) and
    otherwise the coefficients expressing ``v`` through earlier inserted
    vectors.  Elimination is plain Gauss-Jordan over :class:`Fraction`.
    """

    def __init__(self):
        self.rows: dict = {}      # pivot -> row with row[pivot] == 1
        self.combos: dict = {}    # pivot -> {inserted index: coeff}
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sparse):
        """Return ``(residual, combo)`` with ``v = residual + sum combo[i] * inserted[i]``."""
        res = dict(v)
        combo: dict = {}
        for piv in [p for p in res if p in self.rows]:
            a = res.get(piv)
            if not a:
                continue
            _axpy(res, -a, self.rows[piv])
            _axpy(combo, a, self.combos[piv])
        return res, combo

    def insert(self, v: Sparse):
        idx = self.count
        self.count += 1
        res, combo = self.reduce(v)
        if not res:
            return combo
        piv = min(res, key=repr)
        scale = 1 / Fraction(res[piv])
        row = {k: x * scale for k, x in res.items()}
        comb = {k: -x * scale for k, x in combo.items()}
        comb[idx] = comb.get(idx, 0) + scale
        for p, r in self.rows.items():
            a = r.get(piv)
            if a:
                _axpy(r, -a, row)
                _axpy(self.combos[p], -a, comb)
        self.rows[piv] = row
        self.combos[piv] = comb
        return None

    def contains(self, v: Sparse) -> bool:
        return not self.reduce(v)[0]


def rank(vectors: Iterable[Sparse]) -> int:
    e = Echelon()
    for v in vectors:
        e.insert(v)
    return e.rank


def kernel(vectors: Sequence[Sparse]) -> list:
    """Basis of ``{c : sum c_i v_i = 0}`` as dicts ``{i: coeff}``."""
    e = Echelon()
    out = []
    for i, v in enumerate(vectors):
        combo = e.insert(v)
        if combo is not None:
            rel = {k: -x for k, x in combo.items()}
            rel[i] = Fraction(1)
            out.append(rel)
    return out


def solve(vectors: Sequence[Sparse], target: Sparse):
    """Coefficients ``c`` with ``sum c_i v_i = target``, or ``None``."""
    e = Echelon()
    for v in vectors:
        e.insert(v)
    res, combo = e.reduce(target)
    if res:
        return None
    return combo


def intersection_dim(span_a: Sequence[Sparse], span_b: Sequence[Sparse]) -> int:
    """``dim(span A ∩ span B) = rank A + rank B - rank(A ∪ B)``."""
    return rank(span_a) + rank(span_b) - rank(list(span_a) + list(span_b))
