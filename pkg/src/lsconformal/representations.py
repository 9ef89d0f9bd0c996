"""Modules over LSC algebras as (l, r) pairs, dual modules and semidirect sums.

A module ``(M, l, r)`` is stored through two lambda-maps ``A x M -> M``: the
left action ``a_L v = l(a)_L v`` and the table of ``r`` itself, the right
action being recovered as ``v_L a = r(a)_{-D-L} v``.

This module also provides the two kinds of coefficient spaces consumed by
the Lie coboundary: :class:`LieModule` (a concrete module over a Lie
conformal algebra) and :class:`HomSpace` (conformal maps ``A -> M`` with the
action of the sub-adjacent algebra).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .algebra import LieConformalAlgebra, LscAlgebra
from .core import (
    Element,
    FreeModule,
    LambdaMap,
    StructureError,
    dual_pair,
    eval_lambda,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    vec_subs,
    zero_vec,
)
from .polyring import D, L, M, MU, Poly, fresh
from .report import CheckFailed, Report


class RepPair:
    """A conformal module ``(M, l, r)`` over an LSC algebra."""

    partial = D

    def __init__(self, algebra: LscAlgebra, module: FreeModule, l: LambdaMap, r: LambdaMap,
                 check: bool = True, name: str = "module"):
        ra, rm = algebra.rank, module.rank
        for t in (l, r):
            if (t.left_rank, t.right_rank, t.out_rank) != (ra, rm, rm):
                raise StructureError("action tables do not match the algebra and module ranks")
        self.algebra = algebra
        self.module = module
        self.l = l
        self.r = r
        self.name = name
        if check:
            rep = check_module(self)
            if not rep:
                raise CheckFailed("(l, r) does not define a module", rep)

    @property
    def width(self) -> int:
        return self.module.rank

    @property
    def source_rank(self) -> int:
        return self.algebra.rank

    def left(self, x: Element, v: Element, lam=L) -> Element:
        """``x_lam v = l(x)_lam v``."""
        return eval_lambda(self.l, x, v, lam)

    def r_act(self, x: Element, v: Element, lam=L) -> Element:
        """``r(x)_lam v``."""
        return eval_lambda(self.r, x, v, lam)

    def right(self, v: Element, x: Element, lam=L) -> Element:
        """``v_lam x = r(x)_{-D-lam} v``."""
        return eval_lambda(self.r, x, v, -D - Poly.coerce(lam))

    def __repr__(self):
        return f"RepPair({self.name}: {self.algebra.names} on {self.module.basis_names})"


def check_module(rep: RepPair) -> Report:
    """Both compatibility identities for ``(l, r)`` on all (a, b, v) basis triples."""
    A = rep.algebra
    out = Report("module")
    na, nm = A.rank, rep.module.rank
    for i, j, k in iproduct(range(na), range(na), range(nm)):
        a, b, v = A.basis(i), A.basis(j), rep.module.basis(k)
        lhs = vec_sub(rep.left(A.mul(a, b, L), v, L + M), rep.left(a, rep.left(b, v, M), L))
        rhs = vec_sub(rep.left(A.mul(b, a, M), v, L + M), rep.left(b, rep.left(a, v, L), M))
        out.add("left-action", (i, j, k), vec_sub(lhs, rhs))
        lhs = vec_sub(rep.r_act(b, rep.left(a, v, L), -D - L - M),
                      rep.left(a, rep.r_act(b, v, -D - M), L))
        rhs = vec_sub(rep.r_act(b, rep.r_act(a, v, L), -D - L - M),
                      rep.r_act(A.mul(a, b, L), v, -D - M))
        out.add("right-action", (i, j, k), vec_sub(lhs, rhs))
    return out


def adjoint_rep(A: LscAlgebra) -> RepPair:
    """``(A, L_A, R_A)`` with ``L_A(a)_L b = a_L b`` and ``R_A(a)_L b = b_{-D-L} a``."""
    n = A.rank
    r_table = {}
    for i, j in iproduct(range(n), repeat=2):
        r_table[(i, j)] = eval_lambda(A.product, A.basis(j), A.basis(i), -D - L)
    return RepPair(A, A.module, A.product, LambdaMap(n, n, n, r_table), check=A.checked, name="adjoint")


def _dual_tables(A: LscAlgebra):
    """Tables of ``L*_A`` and ``R*_A`` on the conformal dual.

    ``(L*(a)_L f)_{L+M} b = -f_M(a_L b)`` is solved for the dual coefficients
    by setting ``M = -D - L``; likewise for ``R*`` with ``b_{-D-L} a``.
    """
    n = A.rank
    dual = [A.basis(j) for j in range(n)]
    solve = {"M": -D - L}
    lstar, rstar = {}, {}
    for i, j in iproduct(range(n), repeat=2):
        ei, fj = A.basis(i), dual[j]
        lvec, rvec = [], []
        for k in range(n):
            ek = A.basis(k)
            lvec.append(-dual_pair(fj, A.mul(ei, ek, L), M).subs(solve))
            rvec.append(-dual_pair(fj, A.mul(ek, ei, -D - L), M).subs(solve))
        lstar[(i, j)] = tuple(lvec)
        rstar[(i, j)] = tuple(rvec)
    return LambdaMap(n, n, n, lstar), LambdaMap(n, n, n, rstar)


def dual_left_rep(A: LscAlgebra) -> RepPair:
    """``(A^{*c}, L*_A, 0)``."""
    lstar, _ = _dual_tables(A)
    n = A.rank
    return RepPair(A, A.module.dual(), lstar, LambdaMap.zero(n, n, n), check=A.checked, name="dual-left")


def coadjoint_rep(A: LscAlgebra) -> RepPair:
    """``(A^{*c}, L*_A - R*_A, -R*_A)``."""
    lstar, rstar = _dual_tables(A)
    return RepPair(A, A.module.dual(), lstar - rstar, rstar.scaled(-1), check=A.checked, name="coadjoint")


def dual_action_tables(A: LscAlgebra) -> dict:
    lstar, rstar = _dual_tables(A)
    return {"L*": lstar, "R*": rstar}


def semidirect_table(A: LscAlgebra, rep: RepPair) -> LambdaMap:
    """``(a+u)_L (b+v) = a_L b + l(a)_L v + r(b)_{-D-L} u`` on the basis of ``A + M``."""
    na, nm = A.rank, rep.module.rank
    n = na + nm
    pad_a = lambda v: tuple(v) + zero_vec(nm)
    pad_m = lambda v: zero_vec(na) + tuple(v)
    table = {}
    for i, j in iproduct(range(na), repeat=2):
        table[(i, j)] = pad_a(A.product.entry(i, j))
    for i, k in iproduct(range(na), range(nm)):
        table[(i, na + k)] = pad_m(rep.l.entry(i, k))
        table[(na + k, i)] = pad_m(rep.right(rep.module.basis(k), A.basis(i), L))
    return LambdaMap(n, n, n, table)


def semidirect(A: LscAlgebra, rep: RepPair, check: bool = True) -> LscAlgebra:
    if check and not rep.algebra == A:
        raise StructureError("representation is over a different algebra")
    return LscAlgebra(A.module + rep.module, semidirect_table(A, rep), check=check)


# --------------------------------------------------------------------------
# Lie-side coefficient spaces
# --------------------------------------------------------------------------


class LieModule:
    """A conformal module over a Lie conformal algebra given by an action table."""

    partial = D

    def __init__(self, algebra: LieConformalAlgebra, module: FreeModule, action: LambdaMap,
                 check: bool = True, name: str = "module"):
        if (action.left_rank, action.right_rank, action.out_rank) != (algebra.rank, module.rank, module.rank):
            raise StructureError("action table does not match the ranks")
        self.algebra = algebra
        self.module = module
        self.action = action
        self.name = name
        if check:
            rep = check_lie_module(self)
            if not rep:
                raise CheckFailed("action does not define a Lie conformal module", rep)

    @property
    def width(self) -> int:
        return self.module.rank

    @property
    def source_rank(self) -> int:
        return self.algebra.rank

    def act(self, x: Element, v: Element, lam=L) -> Element:
        return eval_lambda(self.action, x, v, lam)

    def zero(self) -> Element:
        return zero_vec(self.width)

    def basis_values(self):
        return [self.module.basis(k) for k in range(self.width)]


def adjoint_lie_module(R: LieConformalAlgebra) -> LieModule:
    return LieModule(R, R.module, R.bracket_table, check=False, name="adjoint")


def lie_module_residual(space, a: Element, b: Element, v: Element) -> Element:
    """``a_L (b_M v) - b_M (a_L v) - [a_L b]_{L+M} v`` for any coefficient space."""
    R = space.algebra
    t1 = space.act(a, space.act(b, v, M), L)
    t2 = space.act(b, space.act(a, v, L), M)
    t3 = space.act(R.bracket(a, b, L), v, L + M)
    return vec_sub(vec_sub(t1, t2), t3)


def check_lie_module(space: LieModule) -> Report:
    rep = Report("lie-module")
    R = space.algebra
    for i, j, k in iproduct(range(R.rank), range(R.rank), range(space.width)):
        rep.add("module", (i, j, k), lie_module_residual(space, R.basis(i), R.basis(j), space.module.basis(k)))
    return rep


@dataclass(frozen=True)
class ConformalMap:
    """A conformal linear map ``f: A -> M`` stored as ``images[j] = f_MU(e_j)``.

    Entries are polynomials in ``D`` (acting on M), ``MU`` and any spectator
    variables.  The derivation acts on such maps by ``(D f)_MU = -MU f_MU``.
    """

    source_rank: int
    target_rank: int
    images: tuple

    def __post_init__(self):
        imgs = tuple(tuple(Poly.coerce(a) for a in v) for v in self.images)
        if len(imgs) != self.source_rank or any(len(v) != self.target_rank for v in imgs):
            raise StructureError("conformal map table has the wrong shape")
        object.__setattr__(self, "images", imgs)

    def __call__(self, x: Element, lam=MU) -> Element:
        """``f_lam(x)``; ``f_lam(p(D) e_j) = p(D + lam) f_lam(e_j)``."""
        lam = Poly.coerce(lam)
        acc = zero_vec(self.target_rank)
        for c, img in zip(x, self.images):
            if c:
                acc = vec_add(acc, vec_scale(c.subs({"D": D + lam}), vec_subs(img, {"MU": lam})))
        return acc

    def flatten(self) -> Element:
        return tuple(a for v in self.images for a in v)

    @classmethod
    def unflatten(cls, flat: Element, source_rank: int, target_rank: int) -> "ConformalMap":
        return cls(source_rank, target_rank,
                   tuple(tuple(flat[j * target_rank:(j + 1) * target_rank]) for j in range(source_rank)))

    def is_zero(self) -> bool:
        return all(vec_is_zero(v) for v in self.images)


class HomSpace:
    """``CHom(A, M)`` as a module over the sub-adjacent algebra ``g(A)``.

    Values are flattened :class:`ConformalMap` tables (length ``rank A * rank M``).
    """

    partial = -MU

    def __init__(self, rep: RepPair):
        self.rep = rep
        self.A = rep.algebra
        self.algebra = rep.algebra.sub_adjacent()
        self.name = f"CHom(A, {rep.name})"

    @property
    def width(self) -> int:
        return self.A.rank * self.rep.module.rank

    @property
    def source_rank(self) -> int:
        return self.A.rank

    def zero(self) -> Element:
        return zero_vec(self.width)

    def act(self, x: Element, v: Element, lam=L) -> Element:
        f = ConformalMap.unflatten(v, self.A.rank, self.rep.module.rank)
        return hom_module_act(self.A, self.rep, x, f, lam).flatten()


def hom_module_act(A: LscAlgebra, rep: RepPair, x: Element, f: ConformalMap, lam=L) -> ConformalMap:
    """``(x_lam f)_nu(b) = x_lam (f_{nu-lam} b) + f_{nu-lam}(x)_nu b - f_{nu-lam}(x_lam b)``.

    The result is returned as a conformal map in ``MU`` (playing ``nu``) with
    ``lam`` left in place as a spectator.
    """
    s, nu = fresh(), fresh()
    mu = nu - s
    na, nm = A.rank, rep.module.rank
    shifted = [vec_subs(img, {"MU": mu}) for img in f.images]

    def f_at(y: Element) -> Element:
        acc = zero_vec(nm)
        for c, img in zip(y, shifted):
            if c:
                acc = vec_add(acc, vec_scale(c.subs({"D": D + mu}), img))
        return acc

    fx = f_at(x)
    images = []
    for j in range(na):
        ej = A.basis(j)
        t1 = rep.left(x, shifted[j], s)
        t2 = rep.right(fx, ej, nu)
        t3 = f_at(A.mul(x, ej, s))
        images.append(vec_sub(vec_add(t1, t2), t3))
    back = {s.variables().pop(): Poly.coerce(lam), nu.variables().pop(): MU}
    return ConformalMap(na, nm, tuple(vec_subs(v, back) for v in images))
