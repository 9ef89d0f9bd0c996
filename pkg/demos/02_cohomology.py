"""Both coboundary operators, the Phi comparison map and bounded cohomology on A_c."""

import random

from lsconformal import HomSpace, LscAlgebra, adjoint_rep, coboundary_solve, d_lie, delta_lsc, h_dim_bounded, phi
from lsconformal.cohomology import Cochain, random_cochain
from lsconformal.polyring import D

A = LscAlgebra.from_dict(["a"], {("a", "a"): {"a": "D + L + c"}})
rep = adjoint_rep(A)

f = Cochain(rep, 1, {(0,): (D,)})
print("delta(D a) is zero:", delta_lsc(f).is_zero())
ident = Cochain(rep, 1, {(0,): (1,)})
print("delta(id)_L1(a, a) =", delta_lsc(ident).entry((0, 0))[0])

rng = random.Random(1)
g = random_cochain(rep, 2, rng, cap=2)
print("delta^2 = 0 on a random 2-cochain:", delta_lsc(delta_lsc(g)).is_zero())

H = HomSpace(rep)
gamma = random_cochain(H, 1, rng, cap=2)
print("delta Phi = Phi d on a random Lie 1-cochain:", delta_lsc(phi(gamma, rep)) == phi(d_lie(gamma), rep))

r = h_dim_bounded(rep, 1, 2, 6)
print(f"n=1, Dz=2: dim C = {r.dim_c}, dim Z = {r.dim_z}, dim B cap Z = {r.dim_b_cap_z}")
print("cocycle basis:", [str(z.entry((0,))[0]) for z in r.cocycle_basis])

w = delta_lsc(ident).scaled(3)
eta = coboundary_solve(w, 6)
print("3 delta(id) = delta(eta) with eta(a) =", eta.entry((0,))[0], "a")
