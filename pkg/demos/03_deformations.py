"""Nijenhuis operators, trivial linear deformations and formal normalization."""

from lsconformal import (
    LscAlgebra,
    ModuleMap,
    check_linear_deformation,
    formal_normalize,
    lie_nijenhuis_check,
    nijenhuis_check,
    trivial_equiv_check,
)
from lsconformal.deformation import delta_of_map, zero_cochain
from lsconformal.polyring import D

A = LscAlgebra.from_dict(["a"], {("a", "a"): {"a": "D + L + c"}})

for label, N in [("id", ModuleMap.identity(1)), ("3/2 id", ModuleMap.scalar(1, "3/2")), ("D", ModuleMap(1, 1, ((D,),)))]:
    w = delta_of_map(A, N)
    eq = trivial_equiv_check(A, w, N)
    print(f"N = {label}: Nijenhuis {nijenhuis_check(A, N)}, on the sub-adjacent algebra "
          f"{lie_nijenhuis_check(A.sub_adjacent(), N)}, delta N deforms {check_linear_deformation(A, w).passed}, "
          f"id + tN trivializes {eq.passed}")
    for r in eq.residuals:
        print(f"    {r.check} residual: {r.value[0]}")

thetas = [delta_of_map(A, ModuleMap.scalar(1, 2))] + [zero_cochain(A)] * 3
res = formal_normalize(A, thetas, order=4)
print("formal family trivialized up to order 4:", res.trivialized)
print("phi_t = id + " + " + ".join(f"({p.images[0][0]}) t^{m}" for m, p in enumerate(res.phis, start=1)))
