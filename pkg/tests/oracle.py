"""Independent sympy reimplementations used as test oracles.

Elements are dicts ``{basis index: sympy expr in D}``; tables map ``(i, j)``
to such dicts with the lambda variable written as ``L``.
"""

from __future__ import annotations

from itertools import product as iproduct

import sympy as sp

D, L, M, L1, L2 = sp.symbols("D L M L1 L2")


def to_sympy(p):
    names = sorted(p.variables())
    local = {n: sp.Symbol(n) for n in names}
    return sp.expand(sp.parse_expr(str(p).replace("^", "**"), local_dict=local))


def vec_to_sympy(v):
    return {k: to_sympy(p) for k, p in enumerate(v) if p}


def table_to_sympy(lmap):
    return {key: vec_to_sympy(v) for key, v in lmap.table.items()}


def _add(x, y, s=1):
    out = dict(x)
    for k, v in y.items():
        out[k] = sp.expand(out.get(k, 0) + s * v)
    return {k: v for k, v in out.items() if v != 0}


def basis(i):
    return {i: sp.Integer(1)}


def mul(table, x, y, lam):
    """``x_lam y`` with coefficients moved by ``p(D) a -> p(-lam)``, ``p(D) b -> p(D + lam)``."""
    out = {}
    for (i, p), (j, q) in iproduct(x.items(), y.items()):
        w = p.xreplace({D: -lam}) * q.xreplace({D: D + lam})
        for k, r in table.get((i, j), {}).items():
            out = _add(out, {k: w * r.xreplace({L: lam})})
    return out


def lsc_residuals(table, n):
    res = {}
    for i, j, k in iproduct(range(n), repeat=3):
        a, b, c = basis(i), basis(j), basis(k)
        lhs = _add(mul(table, mul(table, a, b, L), c, L + M), mul(table, a, mul(table, b, c, M), L), -1)
        rhs = _add(mul(table, mul(table, b, a, M), c, L + M), mul(table, b, mul(table, a, c, L), M), -1)
        d = _add(lhs, rhs, -1)
        if d:
            res[(i, j, k)] = d
    return res


def sub_adjacent(table, n):
    """``[a_L b] = a_L b - b_{-D-L} a``."""
    out = {}
    for i, j in iproduct(range(n), repeat=2):
        v = _add(mul(table, basis(i), basis(j), L), mul(table, basis(j), basis(i), -D - L), -1)
        if v:
            out[(i, j)] = v
    return out


def module_residuals(atable, ltable, rtable, na, nm):
    """Both module identities with the right action taken at ``-D - lambda``.

    The module basis is offset by ``na`` so one dict-based ``mul`` serves
    both the algebra and the module.
    """
    def shift(t):
        return {(i, j + na): {k + na: v for k, v in e.items()} for (i, j), e in t.items()}

    lt, rt = shift(ltable), shift(rtable)

    def l(x, v, lam):
        return mul(lt, x, v, lam)

    def r(x, v, lam):
        return mul(rt, x, v, lam)

    res = {}
    for i, j, k in iproduct(range(na), range(na), range(nm)):
        a, b, v = basis(i), basis(j), basis(k + na)
        ab, ba = mul(atable, a, b, L), mul(atable, b, a, M)
        d1 = _add(_add(l(ab, v, L + M), l(a, l(b, v, M), L), -1),
                  _add(l(ba, v, L + M), l(b, l(a, v, L), M), -1), -1)
        lhs = _add(r(b, l(a, v, L), -D - L - M), l(a, r(b, v, -D - M), L), -1)
        rhs = _add(r(b, r(a, v, L), -D - L - M), r(ab, v, -D - M), -1)
        d2 = _add(lhs, rhs, -1)
        if d1:
            res[("left", i, j, k)] = d1
        if d2:
            res[("right", i, j, k)] = d2
    return res


def rank_one_delta(P, q):
    """``(delta f)_L1(a, a)`` for ``f(a) = q(D) a`` on a rank-one LSC algebra ``a_L a = P a``."""
    Pl = P.xreplace({L: L1})
    return sp.expand(q.xreplace({D: D + L1}) * Pl + q.xreplace({D: -L1}) * Pl - q * Pl)


def linear_coefficients(expr, gens):
    """Coefficient equations of ``expr`` (linear in unknowns) as a list."""
    return list(sp.Poly(sp.expand(expr), *gens).coeffs())


def rank_one_z1_dim(P, cap, params=()):
    """dim of the 1-cocycles ``q(D) a`` with ``deg q <= cap`` via a dense nullspace."""
    xs = sp.symbols(f"x0:{cap + 1}")
    q = sum(x * D ** k for k, x in enumerate(xs))
    eqs = linear_coefficients(rank_one_delta(P, q), (D, L1) + tuple(params))
    mat = sp.Matrix([[sp.diff(e, x) for x in xs] for e in eqs]) if eqs else sp.zeros(1, len(xs))
    return len(xs) - mat.rank()


def rank_one_in_image(P, omega, cap, params=()):
    """Is ``omega(D, L1)`` a combination of ``delta(D^k a)``, ``k <= cap``."""
    xs = sp.symbols(f"x0:{cap + 1}")
    q = sum(x * D ** k for k, x in enumerate(xs))
    eqs = linear_coefficients(rank_one_delta(P, q) - omega, (D, L1) + tuple(params))
    return bool(sp.linsolve(eqs, xs))
