import random

import pytest

from lsconformal import HomSpace, LscAlgebra, RepPair, adjoint_rep, check_lsc_axioms, check_module
from lsconformal import coadjoint_rep, current_algebra, dual_left_rep, semidirect
from lsconformal.core import FreeModule, LambdaMap
from lsconformal.generators import random_lsa_2d, random_poly
from lsconformal.polyring import D, L, ZERO, var
from lsconformal.representations import (
    adjoint_lie_module,
    check_lie_module,
    lie_module_residual,
    semidirect_table,
)
import oracle
from conftest import make_a_c

c, c1, c2 = var("c"), var("c1"), var("c2")


def rank_one_module(A, l_poly, r_poly=ZERO):
    return RepPair(A, FreeModule(("v",)), LambdaMap(1, 1, 1, {(0, 0): (l_poly,)}),
                   LambdaMap(1, 1, 1, {(0, 0): (r_poly,)}), check=False)


def test_module_example_symbolic(a_c):
    rep = rank_one_module(a_c, D + c1 * L + c2)
    assert check_module(rep).passed


def test_a_0_module_matches_oracle():
    A = make_a_c("D + L")
    rep = rank_one_module(A, D + 2 * L)
    got = {r.index for r in check_module(rep).residuals}
    want = oracle.module_residuals({(0, 0): {0: oracle.D + oracle.L}}, {(0, 0): {0: oracle.D + 2 * oracle.L}}, {}, 1, 1)
    assert got == set() and want == {}


@pytest.mark.parametrize("seed", range(8))
def test_random_rank_one_modules_match_oracle(seed):
    rng = random.Random(seed)
    A = make_a_c()
    lp = random_poly(rng, ["D", "L"], 1, terms=2, bound=2)
    rp = random_poly(rng, ["L"], 1, terms=1, bound=2)
    rep = rank_one_module(A, lp, rp)
    res = check_module(rep)
    got = {}
    for r in res.residuals:
        kind = "left" if r.check == "left-action" else "right"
        got[(kind,) + r.index] = oracle.vec_to_sympy(r.value)
    want = oracle.module_residuals({(0, 0): {0: oracle.to_sympy(D + L + c)}},
                                   {(0, 0): {0: oracle.to_sympy(lp)}},
                                   {(0, 0): {0: oracle.to_sympy(rp)}} if rp else {}, 1, 1)
    # the oracle numbers module coordinates after the algebra basis
    want = {k: {i - 1: v for i, v in d.items()} for k, d in want.items()}
    assert got == want


@pytest.mark.parametrize("seed", range(8))
def test_semidirect_is_lsc_iff_module(seed):
    rng = random.Random(seed)
    A = make_a_c()
    lp = random_poly(rng, ["D", "L", "c"], 1, terms=2, bound=2)
    rp = random_poly(rng, ["D", "L"], 1, terms=1, bound=2) if seed % 2 else ZERO
    rep = rank_one_module(A, lp, rp)
    S = LscAlgebra(A.module + rep.module, semidirect_table(A, rep), check=False)
    assert check_module(rep).passed == check_lsc_axioms(S).passed


def test_adjoint_and_dual_modules(a_c):
    assert check_module(adjoint_rep(a_c)).passed
    dl, co = dual_left_rep(a_c), coadjoint_rep(a_c)
    assert check_module(dl).passed and check_module(co).passed
    assert dl.l.entry(0, 0) == (D - c,)
    assert dl.r.is_zero()
    assert co.l.entry(0, 0) == (D - L,)
    assert co.r.entry(0, 0) == (c - L,)
    assert check_lsc_axioms(semidirect(a_c, co)).passed


@pytest.mark.parametrize("seed", range(4))
def test_dual_modules_of_current_algebras(seed):
    A = current_algebra(random_lsa_2d(random.Random(seed)))
    assert check_module(dual_left_rep(A)).passed
    assert check_module(coadjoint_rep(A)).passed


def test_lie_adjoint_module(a_c):
    assert check_lie_module(adjoint_lie_module(a_c.sub_adjacent())).passed


@pytest.mark.parametrize("seed", range(4))
def test_hom_space_is_a_module_over_sub_adjacent(seed):
    rng = random.Random(seed)
    A = make_a_c()
    H = HomSpace(adjoint_rep(A))
    f = (random_poly(rng, ["D", "MU"], 2, terms=3, bound=2),)
    a = A.basis(0)
    assert all(p == 0 for p in lie_module_residual(H, a, a, f))


def test_bad_module_reports_residuals(a_c):
    rep = rank_one_module(a_c, L * L)
    res = check_module(rep)
    assert not res.passed
    assert res.residuals_for("left-action")
