import random

import pytest
import sympy as sp

from lsconformal import LieConformalAlgebra, LscAlgebra, ModuleMap, check_homomorphism, check_lie_axioms
from lsconformal import check_lsc_axioms, current_algebra, sub_adjacent
from lsconformal.core import LambdaMap, StructureError
from lsconformal.generators import LSA_2D, random_lsa_2d, random_poly
from lsconformal.polyring import D, L, M, var
from lsconformal.report import CheckFailed
import oracle
from conftest import make_a_c

c = var("c")


def random_table(rng, n, cap=1):
    return {(i, j): tuple(random_poly(rng, ["D", "L"], cap, terms=2, bound=2) for _ in range(n))
            for i in range(n) for j in range(n)}


def test_a_c_is_left_symmetric(a_c):
    assert check_lsc_axioms(a_c).passed


def test_alpha_two_perturbation_residual():
    A = make_a_c("D + 2*L + c", check=False)
    rep = check_lsc_axioms(A)
    assert not rep.passed
    (res,) = rep.residuals
    expected = D * L - D * M + 2 * L * L + L * c - 2 * M * M - M * c
    assert res.value == (expected,)
    assert oracle.to_sympy(expected) == oracle.lsc_residuals({(0, 0): {0: oracle.D + 2 * oracle.L + sp.Symbol("c")}}, 1)[(0, 0, 0)][0]


def test_checked_constructor_rejects():
    with pytest.raises(CheckFailed):
        make_a_c("D + 2*L + c")


@pytest.mark.parametrize("seed", range(6))
def test_residuals_match_sympy_oracle(seed):
    rng = random.Random(seed)
    table = random_table(rng, 2)
    A = LscAlgebra.unchecked(LscAlgebra.from_dict(["x", "y"], {}, check=False).module, LambdaMap(2, 2, 2, table))
    rep = check_lsc_axioms(A)
    got = {r.index: oracle.vec_to_sympy(r.value) for r in rep.residuals}
    want = oracle.lsc_residuals({k: oracle.vec_to_sympy(v) for k, v in table.items()}, 2)
    assert got == want


@pytest.mark.parametrize("seed", range(5))
def test_basis_permutation_invariance(seed):
    rng = random.Random(seed)
    table = random_table(rng, 2)
    A = LscAlgebra(LscAlgebra.from_dict(["x", "y"], {}).module, LambdaMap(2, 2, 2, table), check=False)
    swap = {0: 1, 1: 0}
    t2 = {(swap[i], swap[j]): (v[1], v[0]) for (i, j), v in table.items()}
    B = LscAlgebra(A.module, LambdaMap(2, 2, 2, t2), check=False)
    ra, rb = check_lsc_axioms(A), check_lsc_axioms(B)
    assert ra.passed == rb.passed
    moved = {tuple(swap[i] for i in r.index): (r.value[1], r.value[0]) for r in ra.residuals}
    assert moved == {r.index: r.value for r in rb.residuals}


def test_listed_lsas_are_left_symmetric():
    for consts in LSA_2D:
        assert check_lsc_axioms(current_algebra(consts)).passed


@pytest.mark.parametrize("seed", range(10))
def test_random_current_algebras(seed):
    A = current_algebra(random_lsa_2d(random.Random(seed)))
    assert check_lsc_axioms(A).passed
    assert check_lie_axioms(sub_adjacent(A)).passed


def test_current_algebra_rejects_bad_constants():
    with pytest.raises(CheckFailed):
        current_algebra([[[0, 1], [0, 0]], [[1, 0], [0, 0]]])
    with pytest.raises(StructureError):
        current_algebra([])


def test_sub_adjacent_of_a_c(a_c):
    g = sub_adjacent(a_c)
    assert g.bracket_table.entry(0, 0) == (D + 2 * L,)
    assert check_lie_axioms(g).passed
    want = oracle.sub_adjacent({(0, 0): {0: oracle.to_sympy(D + L + c)}}, 1)
    assert want == {(0, 0): {0: oracle.D + 2 * oracle.L}}


def test_virasoro_type_bracket_passes_and_bad_bracket_fails():
    assert check_lie_axioms(LieConformalAlgebra.from_dict(["a"], {("a", "a"): {"a": "D + 2*L"}})).passed
    bad = LieConformalAlgebra.from_dict(["a"], {("a", "a"): {"a": "D + 3*L"}}, check=False)
    rep = check_lie_axioms(bad)
    assert not rep.checks["skew-symmetry"]


def test_homomorphism(a_c):
    assert check_homomorphism(ModuleMap.identity(1), a_c, a_c).passed
    assert not check_homomorphism(ModuleMap.scalar(1, 2), a_c, a_c).passed
