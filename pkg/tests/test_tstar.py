import pytest
import sympy as sp

from lsconformal import ConformalBilinearForm, LscAlgebra, ModuleMap, check_bilinear, check_isometry
from lsconformal import check_lsc_axioms, current_algebra, tstar_equiv, tstar_extend
from lsconformal.cohomology import is_cocycle
from lsconformal.core import StructureError
from lsconformal.generators import LSA_2D
from lsconformal.polyring import D, L, M, ONE, parse_poly, var
from lsconformal.report import CheckFailed
from lsconformal.representations import dual_left_rep
from lsconformal.tstar import (
    beta_form,
    determinant,
    dual_cochain,
    dual_zero_cochain,
    extension_table,
    general_coadjoint_extend,
    hyperbolic_form,
    invariant_cocycle_basis,
    omega_invariance_report,
    omega_invariant_check,
    theta_coboundary,
)
import oracle

c = var("c")


def omega(A, text):
    return dual_cochain(A, {(0, 0): (parse_poly(text).subs({"L1": L}),)})


def raw_extension(A, w):
    return LscAlgebra(A.module + A.module.dual(), extension_table(A, dual_left_rep(A), w), check=False)


def test_tstar_zero_extension(a_c):
    T = tstar_extend(a_c, dual_zero_cochain(a_c))
    P = T.algebra.product
    assert T.algebra.names == ("a", "a*")
    assert P.entry(0, 0) == (D + L + c, 0)
    assert P.entry(0, 1) == (0, D - c)
    assert all(p == 0 for p in P.entry(1, 0)) and all(p == 0 for p in P.entry(1, 1))
    assert T.form.rows() == [[0, 1], [1, 0]]
    assert T.report.passed
    assert check_lsc_axioms(T.algebra).passed


@pytest.mark.parametrize("text,cocycle,invariant", [
    ("1", False, True),
    ("L1", False, False),
    ("-L1 - 2*c", True, False),
    ("2*D + L1", True, True),
    ("D", False, False),
])
def test_extension_iff(a_c, text, cocycle, invariant):
    w = omega(a_c, text)
    assert is_cocycle(w) == cocycle
    assert omega_invariant_check(a_c, w) == invariant
    ext = raw_extension(a_c, w)
    assert check_lsc_axioms(ext).passed == cocycle
    assert check_bilinear(hyperbolic_form(1), ext).checks["invariant"] == invariant
    if cocycle and invariant:
        assert tstar_extend(a_c, w).report.passed
    else:
        with pytest.raises(CheckFailed):
            tstar_extend(a_c, w)


def test_invariance_residual_of_l_times_dual(a_c):
    (r,) = omega_invariance_report(a_c, omega(a_c, "L1")).residuals
    assert r.value == 2 * L - 2 * M


def test_constant_form_on_a_c(a_c):
    B = ConformalBilinearForm(1, {(0, 0): ONE})
    rep = check_bilinear(B, a_c)
    assert rep.checks["symmetric"] and rep.checks["nondegenerate"]
    (r,) = rep.residuals_for("invariant")
    assert r.value == L - M
    # hand expansion with B(p a, q a)_x = p(-x) q(x)
    Ls, Ms, cs = sp.symbols("L M c")
    P = lambda d, x: d + x + cs
    want = P(-Ls - Ms, Ls) - P(Ls, Ms) - P(-Ls - Ms, Ms) + P(Ms, Ls)
    assert oracle.to_sympy(r.value) == sp.expand(want)


def test_form_checks():
    assert not check_bilinear(ConformalBilinearForm(1, {(0, 0): L})).checks["symmetric"]
    deg = check_bilinear(ConformalBilinearForm(2, {(0, 0): ONE}))
    assert not deg.checks["nondegenerate"] and deg.data["nondegenerate"] == "no"
    gen = check_bilinear(ConformalBilinearForm(1, {(0, 0): c}))
    assert gen.data["nondegenerate"] == "generic" and gen.data["exceptional_locus"] == c
    with pytest.raises(StructureError):
        ConformalBilinearForm(1, {(0, 0): D})
    x, y = var("x"), var("y")
    assert determinant([[x, y], [y, x]]) == x * x - y * y


def test_tstar_equiv_theta_a(a_c):
    theta = ModuleMap(1, 1, ((1,),))
    w1 = theta_coboundary(a_c, theta)
    assert w1.entry((0, 0)) == (-var("L1") - 2 * c,)
    rep = tstar_equiv(a_c, w1, dual_zero_cochain(a_c), theta)
    assert rep.checks["equivalent"] and not rep.checks["isometric"]
    assert rep.data["beta"].rows() == [[1]]
    assert rep.data["preconditions"] == {"omega1": False, "omega2": True}


def test_tstar_equiv_theta_zero(a_c):
    z = dual_zero_cochain(a_c)
    rep = tstar_equiv(a_c, z, z, ModuleMap.zero(1))
    assert rep.checks == {"equivalent": True, "isometric": True}


def test_tstar_equiv_with_invariant_cocycle(a_c):
    theta = ModuleMap(1, 1, ((D,),))
    w1 = theta_coboundary(a_c, theta)
    assert is_cocycle(w1) and omega_invariant_check(a_c, w1)
    rep = tstar_equiv(a_c, w1, dual_zero_cochain(a_c), theta)
    assert rep.checks == {"equivalent": True, "isometric": True}
    assert beta_form(a_c, theta).is_zero()


def test_extension_map_is_isometry_iff_beta_zero(a_c):
    for theta, iso in [(ModuleMap(1, 1, ((D,),)), True), (ModuleMap(1, 1, ((1,),)), False)]:
        w1 = theta_coboundary(a_c, theta)
        rep = tstar_equiv(a_c, w1, dual_zero_cochain(a_c), theta)
        E1, E2 = raw_extension(a_c, w1), raw_extension(a_c, dual_zero_cochain(a_c))
        B = hyperbolic_form(1)
        iso_rep = check_isometry(rep.data["map"], E1, B, E2, B)
        assert iso_rep.checks["homomorphism"]
        assert iso_rep.checks["isometry"] == iso


def test_invariant_cocycle_basis(a_c):
    assert invariant_cocycle_basis(a_c, 0) == []
    for cap in (1, 2):
        (w,) = invariant_cocycle_basis(a_c, cap)
        assert w.entry((0, 0)) == (2 * D + var("L1"),)


def test_coadjoint_extension(a_c):
    E = general_coadjoint_extend(a_c, dual_zero_cochain(a_c, coadjoint=True))
    assert E.product.entry(1, 0) == (0, D + L + c)
    assert check_lsc_axioms(E).passed


@pytest.mark.parametrize("seed", range(3))
def test_tstar_zero_on_current_algebras(seed):
    A = current_algebra(LSA_2D[seed + 3])
    T = tstar_extend(A, dual_zero_cochain(A))
    assert T.report.passed and check_lsc_axioms(T.algebra).passed
