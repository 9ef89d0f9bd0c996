import random
from fractions import Fraction

import pytest

from lsconformal import ModuleMap, adjoint_rep, check_lie_axioms, check_linear_deformation, check_lsc_axioms
from lsconformal import current_algebra, equiv_check, formal_check, formal_normalize, lie_nijenhuis_check
from lsconformal import nijenhuis_check, nijenhuis_deformed, tilde_omega, trivial_equiv_check
from lsconformal.cohomology import Cochain, delta_lsc, is_cocycle, product_cochain, random_cochain
from lsconformal.deformation import (
    delta_of_map,
    deformed_algebra,
    formal_equiv_apply,
    lie_deformation_check,
    lie_nijenhuis_report,
    nijenhuis_report,
    sub_adjacent_nijenhuis,
    zero_cochain,
)
from lsconformal.generators import LSA_2D, random_scalar
from lsconformal.polyring import D, L, lam, var
from lsconformal.report import CheckFailed
from conftest import make_a_c

c = var("c")
L1 = lam(1)


def candidates(n, rng, count=3):
    out = [ModuleMap.zero(n), ModuleMap.identity(n)]
    out += [ModuleMap.scalar(n, random_scalar(rng)) for _ in range(count)]
    return out


@pytest.mark.parametrize("A", [make_a_c(), current_algebra(LSA_2D[4])], ids=["a_c", "current"])
def test_scalar_operators_are_nijenhuis(A):
    for N in candidates(A.rank, random.Random(0)):
        assert nijenhuis_check(A, N)
        assert check_linear_deformation(A, delta_of_map(A, N)).passed
        assert check_lsc_axioms(nijenhuis_deformed(A, N)).passed
        assert trivial_equiv_check(A, delta_of_map(A, N), N).passed
        assert lie_nijenhuis_check(A.sub_adjacent(), N)
        assert sub_adjacent_nijenhuis(A, N)


def test_d_is_not_nijenhuis(a_c):
    N = ModuleMap(1, 1, ((D,),))
    rep = nijenhuis_report(a_c, N)
    assert not rep.passed
    assert rep.residuals[0].value == (-(D * D * L) - 2 * D * L * L - D * L * c - L ** 3 - L * L * c,)
    with pytest.raises(CheckFailed):
        nijenhuis_deformed(a_c, N)
    assert delta_of_map(a_c, N).is_zero()
    eq = trivial_equiv_check(a_c, delta_of_map(a_c, N), N)
    assert eq.checks["t^1"] and not eq.checks["t^2"]
    (res,) = eq.residuals_for("t^2")
    assert res.value == (D * D * L + 2 * D * L * L + D * L * c + L ** 3 + L * L * c,)
    lie = lie_nijenhuis_report(a_c.sub_adjacent(), N)
    assert lie.residuals[0].value == (-(D * D * L) - 3 * D * L * L - 2 * L ** 3,)


def test_product_cochain_deformation(a_c):
    w = product_cochain(a_c)
    assert check_linear_deformation(a_c, w).passed
    assert check_lsc_axioms(deformed_algebra(a_c, w)).passed
    wt = tilde_omega(w)
    assert wt.entry((0, 0)) == (D + 2 * L1,)
    assert lie_deformation_check(a_c.sub_adjacent(), wt).passed


def test_non_cocycle_is_rejected(a_c):
    w = Cochain(adjoint_rep(a_c), 2, {(0, 0): (L1 * L1,)})
    rep = check_linear_deformation(a_c, w)
    assert not rep.checks["cocycle"]


def test_equiv_between_different_cochains(a_c):
    N = ModuleMap.identity(1)
    w2 = delta_of_map(a_c, N)
    assert equiv_check(a_c, w2, zero_cochain(a_c), N).passed
    assert not equiv_check(a_c, w2.scaled(2), zero_cochain(a_c), N).passed


@pytest.mark.parametrize("seed", range(6))
def test_formal_order_one_iff_cocycle(seed):
    rng = random.Random(seed)
    A = make_a_c()
    rep = adjoint_rep(A)
    if seed % 2:
        th = delta_lsc(random_cochain(rep, 1, rng, cap=2))
    else:
        th = random_cochain(rep, 2, rng, cap=2)
    assert formal_check(A, [th], 1).checks["order-1"] == is_cocycle(th)


def test_formal_normalize_planted(a_c):
    theta = delta_of_map(a_c, ModuleMap.scalar(1, 2))
    thetas = [theta] + [zero_cochain(a_c)] * 3
    assert formal_check(a_c, thetas, 4).passed
    res = formal_normalize(a_c, thetas, 4)
    assert res.trivialized
    assert [p.images[0][0] for p in res.phis] == [-2, 4, -8, 16]
    assert all(t.is_zero() for t in formal_equiv_apply(a_c, thetas, res.phis, 4))


def test_formal_normalize_reports_obstruction(a_c):
    w = Cochain(adjoint_rep(a_c), 2, {(0, 0): (D * D * D,)})
    res = formal_normalize(a_c, [w], 2, degree_b=2)
    assert not res.trivialized and res.obstruction_order == 1


def test_nijenhuis_generated_formal_family(a_c):
    # theta_1 = delta N, theta_2 = N(x)_L N(y) for a Nijenhuis N is a formal deformation to order 2.
    N = ModuleMap.scalar(1, Fraction(3, 2))
    t1 = delta_of_map(a_c, N)
    t2 = Cochain(adjoint_rep(a_c), 2, {(0, 0): ((D + L1 + c) * Fraction(9, 4),)})
    assert formal_check(a_c, [t1, t2], 2).passed


def test_lie_checks_on_current_algebra():
    A = current_algebra(LSA_2D[6])
    g = A.sub_adjacent()
    assert check_lie_axioms(g).passed
    w = product_cochain(A)
    assert check_linear_deformation(A, w).passed
    assert lie_deformation_check(g, tilde_omega(w)).passed
