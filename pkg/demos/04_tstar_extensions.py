"""T*-extensions of A_c and when two of them are equivalent or isometric."""

from lsconformal import LscAlgebra, ModuleMap, tstar_equiv, tstar_extend
from lsconformal.core import format_vector
from lsconformal.polyring import D, ONE
from lsconformal.tstar import dual_zero_cochain, invariant_cocycle_basis, theta_coboundary

A = LscAlgebra.from_dict(["a"], {("a", "a"): {"a": "D + L + c"}})

T = tstar_extend(A, dual_zero_cochain(A))
names = T.algebra.names
for (i, j), v in sorted(T.algebra.product.table.items()):
    print(f"{names[i]} {names[j]} = {format_vector(v, names)}")
print("form:", [[str(x) for x in row] for row in T.form.rows()], "| all checks:", T.report.passed)

print("invariant cocycles up to degree 2:", [str(w.entry((0, 0))[0]) for w in invariant_cocycle_basis(A, 2)])

for label, theta in [("a*", ModuleMap(1, 1, ((ONE,),))), ("D a*", ModuleMap(1, 1, ((D,),)))]:
    w1 = theta_coboundary(A, theta)
    rep = tstar_equiv(A, w1, dual_zero_cochain(A), theta)
    print(f"theta(a) = {label}: omega1 = {w1.entry((0, 0))[0]}, checks {rep.checks}, "
          f"beta = {rep.data['beta'].entry(0, 0)}, omega1 admissible: {rep.data['preconditions']['omega1']}")
