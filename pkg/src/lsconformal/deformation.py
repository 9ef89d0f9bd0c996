"""Linear and formal deformations, Nijenhuis operators and equivalences.

A deformation cocycle ``omega`` is an adjoint-valued LSC 2-cochain (see
:mod:`lsconformal.cohomology`).  The deformation parameter is the reserved
indeterminate ``T``, so "identically in t" is plain polynomial equality.
A formal deformation is a list ``[theta_1, ..., theta_k]`` (``theta_0`` is the
product of the base algebra) and a formal map is ``[phi_1, ..., phi_k]`` of
:class:`ModuleMap` (``phi_0`` is the identity).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .algebra import LieConformalAlgebra, LscAlgebra, check_lie_axioms, check_lsc_axioms, lsc_associator_residual
from .cohomology import (
    LIE,
    LSC,
    Cochain,
    coboundary_solve,
    cochain_as_lambda_table,
    delta_lsc,
    module_map_cochain,
    product_cochain,
)
from .core import (
    LambdaMap,
    ModuleMap,
    StructureError,
    vec_add,
    vec_scale,
    vec_sub,
    vec_subs,
    zero_vec,
)
from .polyring import D, L, M, T, ZERO, lam
from .report import CheckFailed, Report
from .representations import adjoint_lie_module, adjoint_rep

L1 = lam(1)


def _mul_of(theta: Cochain):
    """A 2-cochain as a product callable ``(x, y, lam) -> vector``."""
    return lambda x, y, lv=L: theta.evaluate([x, y], [lv])


def _check_adjoint_2(A: LscAlgebra, omega: Cochain):
    if omega.n != 2 or omega.flavor != LSC or omega.rank != A.rank or omega.width != A.rank:
        raise StructureError("expected an adjoint-valued LSC 2-cochain on this algebra")


def zero_cochain(A: LscAlgebra, n: int = 2) -> Cochain:
    return Cochain(adjoint_rep(A), n, {})


def cochain_from_table(A: LscAlgebra, table: dict) -> Cochain:
    """Adjoint 2-cochain from a lambda table written in ``L``."""
    return Cochain(adjoint_rep(A), 2, {k: vec_subs(v, {"L": L1}) for k, v in table.items()})


# --------------------------------------------------------------------------
# linear deformations
# --------------------------------------------------------------------------


def deformed_algebra(A: LscAlgebra, omega: Cochain, check: bool = False) -> LscAlgebra:
    """``a_L b + T omega_L(a, b)`` with ``T`` as an indeterminate."""
    table = cochain_as_lambda_table(omega)
    keys = set(A.product.table) | set(table)
    n = A.rank
    full = {k: vec_add(A.product.entry(*k), vec_scale(T, table.get(k, zero_vec(n)))) for k in keys}
    return LscAlgebra(A.module, LambdaMap(n, n, n, full), check=check)


def check_linear_deformation(A: LscAlgebra, omega: Cochain) -> Report:
    """Sub-checks ``cocycle`` (delta omega = 0), ``omega-lsc`` (omega alone is
    left-symmetric) and ``deformed-family`` (the product with T passes)."""
    _check_adjoint_2(A, omega)
    rep = Report("linear-deformation")
    d = delta_lsc(omega)
    for idx in d.tuples():
        rep.add("cocycle", idx, d.entry(idx))
    mul = _mul_of(omega)
    for idx in iproduct(range(A.rank), repeat=3):
        a, b, c = (A.basis(i) for i in idx)
        rep.add("omega-lsc", idx, lsc_associator_residual(mul, a, b, c))
    rep.checks.setdefault("deformed-family", True)
    for r in check_lsc_axioms(deformed_algebra(A, omega)).residuals:
        rep.add("deformed-family", r.index, r.value)
    return rep


# --------------------------------------------------------------------------
# Nijenhuis operators
# --------------------------------------------------------------------------


def _check_endo(A, N: ModuleMap):
    if N.source_rank != A.rank or N.target_rank != A.rank:
        raise StructureError("operator does not act on this algebra")


def nijenhuis_product(A: LscAlgebra, N: ModuleMap, x, y, lv=L):
    """``x .^N_lv y = N(x)_lv y + x_lv N(y) - N(x_lv y)``."""
    return vec_sub(vec_add(A.mul(N(x), y, lv), A.mul(x, N(y), lv)), N(A.mul(x, y, lv)))


def nijenhuis_report(A: LscAlgebra, N: ModuleMap) -> Report:
    _check_endo(A, N)
    rep = Report("nijenhuis")
    for i, j in iproduct(range(A.rank), repeat=2):
        a, b = A.basis(i), A.basis(j)
        rep.add("nijenhuis", (i, j), vec_sub(A.mul(N(a), N(b), L), N(nijenhuis_product(A, N, a, b))))
    return rep


def nijenhuis_check(A: LscAlgebra, N: ModuleMap) -> bool:
    return nijenhuis_report(A, N).passed


def nijenhuis_deformed(A: LscAlgebra, N: ModuleMap) -> LscAlgebra:
    """The algebra ``(A, .^N)``; rejects operators that are not Nijenhuis."""
    rep = nijenhuis_report(A, N)
    if not rep:
        raise CheckFailed("operator is not Nijenhuis", rep)
    n = A.rank
    table = {(i, j): nijenhuis_product(A, N, A.basis(i), A.basis(j)) for i in range(n) for j in range(n)}
    return LscAlgebra(A.module, LambdaMap(n, n, n, table), check=A.checked)


def delta_of_map(A: LscAlgebra, N: ModuleMap) -> Cochain:
    """``delta N`` for a module map viewed as an adjoint 1-cochain."""
    return delta_lsc(module_map_cochain(adjoint_rep(A), N))


def equiv_check(A: LscAlgebra, omega2: Cochain, omega1: Cochain, N: ModuleMap) -> Report:
    """Is ``id + T N`` a homomorphism from ``(A, .^omega2)`` to ``(A, .^omega1)``?

    The residual is expanded in ``T``; check ``t^k`` collects the coefficient
    of ``T^k``.  ``t^1`` is ``omega2 - omega1 - delta N``, ``t^2`` the
    Nijenhuis-type condition and ``t^3`` is ``omega1(N a, N b)``.
    """
    _check_adjoint_2(A, omega2)
    _check_adjoint_2(A, omega1)
    _check_endo(A, N)
    rep = Report("equivalence")
    for name in ("t^1", "t^2", "t^3"):
        rep.checks[name] = True
    w1, w2 = _mul_of(omega1), _mul_of(omega2)
    Tt = lambda x: vec_add(x, vec_scale(T, N(x)))
    for i, j in iproduct(range(A.rank), repeat=2):
        a, b = A.basis(i), A.basis(j)
        lhs = Tt(vec_add(A.mul(a, b, L), vec_scale(T, w2(a, b, L))))
        ta, tb = Tt(a), Tt(b)
        rhs = vec_add(A.mul(ta, tb, L), vec_scale(T, w1(ta, tb, L)))
        diff = vec_sub(lhs, rhs)
        by_power = {}
        for k, p in enumerate(diff):
            for e, coeff in p.coeffs_in("T").items():
                by_power.setdefault(e, [ZERO] * A.rank)[k] = coeff
        for e, v in sorted(by_power.items()):
            rep.add(f"t^{e}", (i, j), tuple(v))
    return rep


def trivial_equiv_check(A: LscAlgebra, omega: Cochain, N: ModuleMap) -> Report:
    """``id + T N`` from ``(A, .^omega)`` to ``A`` itself."""
    return equiv_check(A, omega, zero_cochain(A), N)


def lie_nijenhuis_report(R: LieConformalAlgebra, N: ModuleMap) -> Report:
    _check_endo(R, N)
    rep = Report("lie-nijenhuis")
    br = R.bracket
    for i, j in iproduct(range(R.rank), repeat=2):
        a, b = R.basis(i), R.basis(j)
        deformed = vec_sub(vec_add(br(N(a), b, L), br(a, N(b), L)), N(br(a, b, L)))
        rep.add("nijenhuis", (i, j), vec_sub(br(N(a), N(b), L), N(deformed)))
    return rep


def lie_nijenhuis_check(R: LieConformalAlgebra, N: ModuleMap) -> bool:
    return lie_nijenhuis_report(R, N).passed


def sub_adjacent_nijenhuis(A: LscAlgebra, N: ModuleMap) -> bool:
    """``N`` Nijenhuis on ``A`` implies ``N`` Nijenhuis on ``g(A)``; True when the implication holds."""
    return (not nijenhuis_check(A, N)) or lie_nijenhuis_check(A.sub_adjacent(), N)


def tilde_omega(omega: Cochain) -> Cochain:
    """``omega~_L(a, b) = omega_L(a, b) - omega_{-D-L}(b, a)`` as a Lie 2-cochain on ``g(A)``."""
    if omega.n != 2 or omega.flavor != LSC:
        raise StructureError("expected an LSC 2-cochain")
    A = omega.space.algebra
    space = adjoint_lie_module(A.sub_adjacent())
    table = {}
    for i, j in iproduct(range(A.rank), repeat=2):
        swapped = vec_subs(omega.entry((j, i)), {"L1": -D - L1})
        table[(i, j)] = vec_sub(omega.entry((i, j)), swapped)
    return Cochain(space, 2, table)


def lie_deformation_check(R: LieConformalAlgebra, omega: Cochain) -> Report:
    """Lie axioms for ``[a_L b] + T omega_L(a, b)`` identically in ``T``."""
    if omega.flavor != LIE or omega.n != 2:
        raise StructureError("expected a Lie 2-cochain")
    table = cochain_as_lambda_table(omega)
    n = R.rank
    keys = set(R.bracket_table.table) | set(table)
    full = {k: vec_add(R.bracket_table.entry(*k), vec_scale(T, table.get(k, zero_vec(n)))) for k in keys}
    return check_lie_axioms(LieConformalAlgebra(R.module, LambdaMap(n, n, n, full), check=False))


# --------------------------------------------------------------------------
# formal deformations
# --------------------------------------------------------------------------


def _family(A: LscAlgebra, thetas):
    base = product_cochain(A)
    for th in thetas:
        _check_adjoint_2(A, th)
    return [base] + list(thetas)


def formal_check(A: LscAlgebra, thetas, order: int | None = None) -> Report:
    """Order-n identities of a formal deformation for ``n = 1..order``.

    Check ``order-n`` holds the residuals; ``theta1-cocycle`` records
    ``delta theta_1 = 0`` independently, so the two can be compared.
    """
    fam = _family(A, thetas)
    k = len(thetas) if order is None else order
    muls = [_mul_of(t) for t in fam]
    get = lambda i: muls[i] if i < len(muls) else None
    rep = Report("formal")
    basis = [A.basis(i) for i in range(A.rank)]
    for n in range(1, k + 1):
        name = f"order-{n}"
        rep.checks.setdefault(name, True)
        for idx in iproduct(range(A.rank), repeat=3):
            a, b, c = (basis[i] for i in idx)
            acc = zero_vec(A.rank)
            for i in range(n + 1):
                mi, mj = get(i), get(n - i)
                if mi is None or mj is None:
                    continue
                t = vec_sub(mi(mj(a, b, L), c, L + M), mi(a, mj(b, c, M), L))
                t = vec_sub(t, vec_sub(mi(mj(b, a, M), c, L + M), mi(b, mj(a, c, L), M)))
                acc = vec_add(acc, t)
            rep.add(name, idx, acc)
    if thetas:
        d = delta_lsc(fam[1])
        rep.data["theta1-cocycle"] = d.is_zero()
    else:
        rep.data["theta1-cocycle"] = True
    return rep


def _compose_series(phis_a, phis_b, order: int, n: int):
    """Truncated composition ``(id + sum a_i t^i) o (id + sum b_j t^j)``."""
    full_a = [ModuleMap.identity(n)] + list(phis_a)
    full_b = [ModuleMap.identity(n)] + list(phis_b)
    out = []
    for m in range(1, order + 1):
        acc = ModuleMap.zero(n)
        for i in range(m + 1):
            j = m - i
            if i < len(full_a) and j < len(full_b):
                acc = acc + full_a[i].compose(full_b[j])
        out.append(acc)
    return out


def formal_equiv_apply(A: LscAlgebra, thetas, phis, order: int | None = None) -> list:
    """Transport ``theta_t`` along ``phi_t``: the family ``theta'_t`` with ``phi_t`` a
    morphism from ``theta'_t`` to ``theta_t``, solved order by order:
    ``theta'_n = sum_{i+j+k=n} theta_i(phi_j a, phi_k b) - sum_{i>=1} phi_i(theta'_{n-i})``.
    """
    fam = _family(A, thetas)
    k = max(len(thetas), len(phis)) if order is None else order
    n = A.rank
    ph = [ModuleMap.identity(n)] + list(phis)
    getphi = lambda i: ph[i] if i < len(ph) else None
    rep = adjoint_rep(A)
    new = [fam[0]]
    for m in range(1, k + 1):
        table = {}
        for i0, j0 in iproduct(range(n), repeat=2):
            a, b = A.basis(i0), A.basis(j0)
            acc = zero_vec(n)
            for i in range(min(m, len(fam) - 1) + 1):
                for j in range(m - i + 1):
                    kk = m - i - j
                    pj, pk = getphi(j), getphi(kk)
                    if pj is None or pk is None:
                        continue
                    acc = vec_add(acc, fam[i].evaluate([pj(a), pk(b)], [L1]))
            for i in range(1, m + 1):
                pi = getphi(i)
                if pi is not None:
                    acc = vec_sub(acc, pi(new[m - i].entry((i0, j0))))
            table[(i0, j0)] = acc
        new.append(Cochain(rep, 2, table))
    return new[1:]


@dataclass
class NormalizationResult:
    trivialized: bool
    order: int
    phis: list = field(default_factory=list)
    residual_family: list = field(default_factory=list)
    obstruction: Cochain | None = None
    obstruction_order: int | None = None


def formal_normalize(A: LscAlgebra, thetas, order: int = 4, degree_b: int = 6) -> NormalizationResult:
    """Trivialize a formal deformation order by order up to ``order``.

    At order m with ``theta_1..theta_{m-1}`` already zero, solve
    ``theta_m = delta eta`` and transport along ``id - eta t^m``, which kills
    ``theta_m``.  The composite map is returned as ``[phi_1..phi_order]``.
    Stops with the obstruction cochain if no ``eta`` exists at the cap.
    """
    n = A.rank
    current = list(thetas) + [zero_cochain(A)] * max(0, order - len(thetas))
    current = current[:order]
    total: list = []
    for m in range(1, order + 1):
        th = current[m - 1]
        if th.is_zero():
            continue
        eta = coboundary_solve(th, degree_b)
        if eta is None:
            return NormalizationResult(False, order, total, current, th, m)
        step = [ModuleMap.zero(n)] * (m - 1) + [_cochain_to_map(eta).scaled(-1)]
        current = formal_equiv_apply(A, current, step, order)
        total = _compose_series(total, step, order, n)
    return NormalizationResult(True, order, total or [ModuleMap.zero(n)] * order, current)


def _cochain_to_map(eta: Cochain) -> ModuleMap:
    return ModuleMap(eta.rank, eta.width, tuple(eta.entry((i,)) for i in range(eta.rank)))
