"""Conformal bilinear forms, T*-extensions and their equivalences.

A form is stored as ``B_L(e_i, e_j)``, polynomials in ``L`` and parameters.
It is evaluated on arbitrary elements by ``p(D) -> p(-lam)`` on the left and
``p(D) -> p(lam)`` on the right.

The T*-extension of ``A`` by a dual-valued 2-cochain ``omega`` lives on
``A + A^{*c}`` with product ``a_L b + omega_L(a, b) + L*(a)_L g`` and the
hyperbolic form ``B_L(a + f, b + g) = f_L(b) + g_{-L}(a)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from .algebra import LscAlgebra, check_homomorphism
from .cohomology import Cochain, cochain_basis, combine, delta_lsc
from .core import (
    Element,
    LambdaMap,
    ModuleMap,
    StructureError,
    dual_pair,
    vec_add,
    vec_sub,
    vec_subs,
    zero_vec,
)
from .linalg import kernel, poly_coords
from .polyring import D, L, M, ONE, ZERO, Poly, lam
from .report import CheckFailed, Report
from .representations import RepPair, coadjoint_rep, dual_left_rep, semidirect_table

L1 = lam(1)


@dataclass(frozen=True)
class ConformalBilinearForm:
    rank: int
    matrix: dict  # (i, j) -> Poly in L and parameters

    def __post_init__(self):
        clean = {}
        for (i, j), p in dict(self.matrix).items():
            if not (0 <= i < self.rank and 0 <= j < self.rank):
                raise StructureError(f"form index {(i, j)} out of range")
            p = Poly.coerce(p)
            if "D" in p.variables():
                raise StructureError("form entries must not involve D")
            if p:
                clean[(i, j)] = p
        object.__setattr__(self, "matrix", clean)

    @classmethod
    def from_rows(cls, rows) -> "ConformalBilinearForm":
        n = len(rows)
        return cls(n, {(i, j): Poly.coerce(rows[i][j]) for i in range(n) for j in range(n)})

    def entry(self, i: int, j: int) -> Poly:
        return self.matrix.get((i, j), ZERO)

    def rows(self) -> list:
        return [[self.entry(i, j) for j in range(self.rank)] for i in range(self.rank)]

    def __call__(self, x: Element, y: Element, lv=L) -> Poly:
        lv = Poly.coerce(lv)
        acc = ZERO
        for (i, j), p in self.matrix.items():
            if x[i] and y[j]:
                acc = acc + x[i].subs({"D": -lv}) * y[j].subs({"D": lv}) * p.subs({"L": lv})
        return acc

    def is_zero(self) -> bool:
        return not self.matrix


def determinant(rows) -> Poly:
    """Laplace expansion along the first row (ranks here are tiny)."""
    n = len(rows)
    if n == 0:
        return ONE
    if n == 1:
        return rows[0][0]
    acc = ZERO
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = a * determinant(minor)
            acc = acc + term if j % 2 == 0 else acc - term
    return acc


def check_bilinear(B: ConformalBilinearForm, A: LscAlgebra | None = None) -> Report:
    """Symmetry, invariance (needs ``A``) and non-degeneracy of ``B``.

    Non-degeneracy: the determinant of ``B_{ij}(L -> -D)`` must be free of
    ``D`` and nonzero.  If it still involves parameters the check passes
    with ``data['nondegenerate'] = 'generic'`` and the exceptional locus
    ``det = 0`` recorded.
    """
    rep = Report("bilinear")
    n = B.rank
    for i, j in iproduct(range(n), repeat=2):
        rep.add("symmetric", (i, j), B.entry(i, j) - B.entry(j, i).subs({"L": -L}))
    if A is not None:
        if A.rank != n:
            raise StructureError("form and algebra have different ranks")
        for idx in iproduct(range(n), repeat=3):
            a, b, c = (A.basis(k) for k in idx)
            r = (B(A.mul(a, b, L), c, L + M) - B(a, A.mul(b, c, M), L)
                 - B(A.mul(b, a, M), c, L + M) + B(b, A.mul(a, c, L), M))
            rep.add("invariant", idx, r)
    det = determinant([[B.entry(i, j).subs({"L": -D}) for j in range(n)] for i in range(n)])
    rep.data["determinant"] = det
    if det.is_zero() or "D" in det.variables():
        rep.checks["nondegenerate"] = False
        rep.data["nondegenerate"] = "no"
    elif det.is_constant():
        rep.checks["nondegenerate"] = True
        rep.data["nondegenerate"] = "yes"
    else:
        rep.checks["nondegenerate"] = True
        rep.data["nondegenerate"] = "generic"
        rep.data["exceptional_locus"] = det
    return rep


def omega_invariance_report(A: LscAlgebra, omega: Cochain) -> Report:
    """``w_L(a,b)_{L+M}c - w_M(b,c)_{-L}a - w_M(b,a)_{L+M}c + w_L(a,c)_{-M}b = 0``."""
    _check_dual_2(A, omega)
    rep = Report("omega-invariance")
    rep.checks["invariant"] = True
    w = lambda x, y, lv: omega.evaluate([x, y], [lv])
    for idx in iproduct(range(A.rank), repeat=3):
        a, b, c = (A.basis(k) for k in idx)
        r = (dual_pair(w(a, b, L), c, L + M) - dual_pair(w(b, c, M), a, -L)
             - dual_pair(w(b, a, M), c, L + M) + dual_pair(w(a, c, L), b, -M))
        rep.add("invariant", idx, r)
    return rep


def omega_invariant_check(A: LscAlgebra, omega: Cochain) -> bool:
    return omega_invariance_report(A, omega).passed


def _check_dual_2(A: LscAlgebra, omega: Cochain):
    if omega.n != 2 or omega.rank != A.rank or omega.width != A.rank:
        raise StructureError("expected a dual-valued 2-cochain on this algebra")


def hyperbolic_form(r: int) -> ConformalBilinearForm:
    """``B_L(a + f, b + g) = f_L(b) + g_{-L}(a)`` on the basis ``e_1..e_r, e_1*..e_r*``."""
    m = {}
    for i in range(r):
        m[(i, r + i)] = ONE
        m[(r + i, i)] = ONE
    return ConformalBilinearForm(2 * r, m)


def extension_table(A: LscAlgebra, rep: RepPair, omega: Cochain) -> LambdaMap:
    """Semidirect product by ``rep`` plus the cocycle term ``omega_L(a, b)`` in the dual part."""
    base = semidirect_table(A, rep)
    r = A.rank
    table = dict(base.table)
    for (i, j), v in omega.table.items():
        extra = zero_vec(r) + vec_subs(v, {"L1": L})
        table[(i, j)] = vec_add(base.entry(i, j), extra)
    return LambdaMap(2 * r, 2 * r, 2 * r, table)


@dataclass
class TStarExtension:
    base: LscAlgebra
    omega: Cochain
    algebra: LscAlgebra
    form: ConformalBilinearForm
    report: Report = field(default_factory=lambda: Report("tstar"))


def tstar_preconditions(A: LscAlgebra, omega: Cochain) -> Report:
    _check_dual_2(A, omega)
    rep = Report("tstar-preconditions")
    d = delta_lsc(omega)
    rep.checks["cocycle"] = True
    for idx in d.tuples():
        rep.add("cocycle", idx, d.entry(idx))
    rep.merge(omega_invariance_report(A, omega))
    return rep


def tstar_extend(A: LscAlgebra, omega: Cochain) -> TStarExtension:
    """``T*_omega A``; rejects a non-cocycle or non-invariant ``omega`` with the residuals."""
    pre = tstar_preconditions(A, omega)
    if not pre:
        raise CheckFailed("omega must be an invariant 2-cocycle with values in the dual module", pre)
    ext = LscAlgebra(A.module + A.module.dual(), extension_table(A, dual_left_rep(A), omega), check=A.checked)
    form = hyperbolic_form(A.rank)
    report = Report("tstar")
    report.merge(pre)
    report.merge(check_bilinear(form, ext), prefix="form-")
    return TStarExtension(A, omega, ext, form, report)


def general_coadjoint_extend(A: LscAlgebra, omega: Cochain, check: bool = False) -> LscAlgebra:
    """``a_L b + omega_L(a, b)`` plus the coadjoint actions; unchecked unless asked."""
    _check_dual_2(A, omega)
    table = extension_table(A, coadjoint_rep(A), omega)
    return LscAlgebra(A.module + A.module.dual(), table, check=check)


def dual_zero_cochain(A: LscAlgebra, coadjoint: bool = False) -> Cochain:
    return Cochain(coadjoint_rep(A) if coadjoint else dual_left_rep(A), 2, {})


def dual_cochain(A: LscAlgebra, table: dict, coadjoint: bool = False) -> Cochain:
    """Dual-valued 2-cochain from a table written in ``L``."""
    rep = coadjoint_rep(A) if coadjoint else dual_left_rep(A)
    return Cochain(rep, 2, {k: vec_subs(v, {"L": L1}) for k, v in table.items()})


# --------------------------------------------------------------------------
# equivalence of extensions
# --------------------------------------------------------------------------


def theta_coboundary(A: LscAlgebra, theta: ModuleMap) -> Cochain:
    """``L*(a)_L theta(b) - theta(a_L b)``, the difference forced by identity (i)."""
    rep = dual_left_rep(A)
    table = {}
    for i, j in iproduct(range(A.rank), repeat=2):
        a, b = A.basis(i), A.basis(j)
        table[(i, j)] = vec_sub(rep.left(a, theta(b), L1), theta(A.mul(a, b, L1)))
    return Cochain(rep, 2, table)


def beta_form(A: LscAlgebra, theta: ModuleMap) -> ConformalBilinearForm:
    """``beta_L(a, b) = 1/2 (theta(a)_L b + theta(b)_{-L} a)``."""
    half = Fraction(1, 2)
    m = {}
    for i, j in iproduct(range(A.rank), repeat=2):
        a, b = A.basis(i), A.basis(j)
        m[(i, j)] = (dual_pair(theta(a), b, L) + dual_pair(theta(b), a, -L)).scale(half)
    return ConformalBilinearForm(A.rank, m)


def extension_map(A: LscAlgebra, theta: ModuleMap) -> ModuleMap:
    """``a + f -> a + theta(a) + f`` on ``A + A^{*c}``."""
    r = A.rank
    images = []
    for i in range(r):
        images.append(A.basis(i) + theta.images[i])
    for i in range(r):
        images.append(zero_vec(r) + A.basis(i))
    return ModuleMap(2 * r, 2 * r, tuple(images))


def tstar_equiv(A: LscAlgebra, omega1: Cochain, omega2: Cochain, theta: ModuleMap) -> Report:
    """Checks ``equivalent`` (identity (i)) and ``isometric`` (additionally beta = 0).

    Preconditions on both omegas are recorded in ``data`` rather than enforced.
    When (i) holds, ``data['beta_checks']`` holds the symmetric and invariant
    sub-checks of beta.
    """
    _check_dual_2(A, omega1)
    _check_dual_2(A, omega2)
    if theta.source_rank != A.rank or theta.target_rank != A.rank:
        raise StructureError("theta must map A to its dual")
    rep = Report("tstar-equiv")
    rep.checks["equivalent"] = True
    diff = theta_coboundary(A, theta)
    for i, j in iproduct(range(A.rank), repeat=2):
        lhs = vec_sub(omega1.entry((i, j)), omega2.entry((i, j)))
        rep.add("equivalent", (i, j), vec_sub(lhs, diff.entry((i, j))))
    beta = beta_form(A, theta)
    rep.data["beta"] = beta
    rep.checks["isometric"] = rep.checks["equivalent"] and beta.is_zero()
    if rep.checks["equivalent"]:
        for i, j in iproduct(range(A.rank), repeat=2):
            rep.add("isometric", (i, j), beta.entry(i, j))
        bc = check_bilinear(beta, A)
        rep.data["beta_checks"] = {k: bc.checks[k] for k in ("symmetric", "invariant")}
    rep.data["preconditions"] = {
        "omega1": tstar_preconditions(A, omega1).passed,
        "omega2": tstar_preconditions(A, omega2).passed,
    }
    rep.data["map"] = extension_map(A, theta)
    return rep


def check_isometry(phi: ModuleMap, A: LscAlgebra, B: ConformalBilinearForm,
                   A2: LscAlgebra, B2: ConformalBilinearForm) -> Report:
    """``phi`` is a homomorphism and ``B2_L(phi a, phi b) = B_L(a, b)`` on basis pairs."""
    rep = Report("isometry")
    rep.merge(check_homomorphism(phi, A, A2))
    rep.checks["isometry"] = True
    for i, j in iproduct(range(A.rank), repeat=2):
        a, b = A.basis(i), A.basis(j)
        rep.add("isometry", (i, j), B2(phi(a), phi(b), L) - B(a, b, L))
    return rep


def invariant_cocycle_basis(A: LscAlgebra, cap: int) -> list:
    """Invariant dual-valued 2-cocycles with entries of total degree <= cap."""
    rep = dual_left_rep(A)
    basis = cochain_basis(rep, 2, cap)
    rows = []
    for b in basis:
        v = delta_lsc(b).coords()
        inv = omega_invariance_report(A, b)
        for r in inv.residuals:
            v.update(poly_coords([r.value], ("inv",) + r.index))
        rows.append(v)
    return [combine(basis, rel, rep, 2) for rel in kernel(rows)]
