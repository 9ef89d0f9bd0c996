"""A tour of the rank-one algebra A_c: axioms, sub-adjacent bracket, modules."""

from lsconformal import (
    LscAlgebra,
    adjoint_rep,
    check_lie_axioms,
    check_lsc_axioms,
    check_module,
    coadjoint_rep,
    dual_left_rep,
    semidirect,
    sub_adjacent,
)
from lsconformal.core import format_vector

A = LscAlgebra.from_dict(["a"], {("a", "a"): {"a": "D + L + c"}})
print("a_L a =", format_vector(A.product.entry(0, 0), A.names))
print("left-symmetric:", check_lsc_axioms(A).passed)

# Changing the coefficient of L breaks the identity; the residual is exact.
bad = LscAlgebra.from_dict(["a"], {("a", "a"): {"a": "D + 2*L + c"}}, check=False)
for r in check_lsc_axioms(bad).residuals:
    print("perturbed residual:", r.value[0])

g = sub_adjacent(A)
print("[a_L a] =", format_vector(g.bracket_table.entry(0, 0), g.names), "| Lie:", check_lie_axioms(g).passed)

for name, rep in [("adjoint", adjoint_rep(A)), ("dual-left", dual_left_rep(A)), ("coadjoint", coadjoint_rep(A))]:
    m = rep.module.basis_names
    print(f"{name:>9}: l = {format_vector(rep.l.entry(0, 0), m)}, r = {format_vector(rep.r.entry(0, 0), m)},"
          f" module: {check_module(rep).passed}")

S = semidirect(A, coadjoint_rep(A))
print("semidirect product with the coadjoint module is left-symmetric:", check_lsc_axioms(S).passed)
