"""Random inputs for property tests and demos."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import classical_lsa_residuals, current_algebra
from .cohomology import random_cochain
from .core import ModuleMap
from .polyring import ONE, ZERO, Poly, var
from .report import CheckFailed

# Two-dimensional left-symmetric algebras, c[i][j] = e_i e_j in the basis (e1, e2).
# The first three are associative, the rest are not.
LSA_2D = (
    [[[0, 1], [0, 0]], [[0, 0], [0, 0]]],
    [[[1, 0], [0, 1]], [[0, 0], [0, 0]]],
    [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
    [[[-1, 0], [0, 2]], [[0, 0], [0, 0]]],
    [[[0, -1], [0, 1]], [[0, 0], [0, 0]]],
    [[[-1, 1], [0, 0]], [[0, -1], [0, 0]]],
    [[[0, -1], [-1, 0]], [[0, 1], [1, 0]]],
)


def random_scalar(rng: random.Random, bound: int = 5, nonzero: bool = True) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        if x or not nonzero:
            return x


def random_poly(rng: random.Random, names, cap: int, terms: int = 3, bound: int = 3) -> Poly:
    """Sum of up to ``terms`` random monomials of total degree <= cap."""
    names = list(names)
    p = ZERO
    for _ in range(terms):
        deg = rng.randint(0, cap)
        m = ONE
        for _ in range(deg):
            m = m * var(rng.choice(names))
        p = p + m.scale(rng.randint(-bound, bound))
    return p


def _unimodular(rng: random.Random):
    """Random 2x2 integer matrix with determinant +-1 and its inverse."""
    while True:
        a, b, c, d = (rng.randint(-2, 2) for _ in range(4))
        det = a * d - b * c
        if det in (1, -1):
            inv = [[Fraction(d, det), Fraction(-b, det)], [Fraction(-c, det), Fraction(a, det)]]
            return [[a, b], [c, d]], inv


def change_basis(constants, P, Pinv):
    """Structure constants in the basis ``f_i = sum_k P[k][i] e_k``."""
    n = len(constants)
    out = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            vec = [Fraction(0)] * n
            for k in range(n):
                for l in range(n):
                    w = P[k][i] * P[l][j]
                    if w:
                        for m in range(n):
                            vec[m] += w * constants[k][l][m]
            for q in range(n):
                out[i][j][q] = sum(Pinv[q][m] * vec[m] for m in range(n))
    return out


def random_lsa_2d(rng: random.Random):
    """A 2-dimensional left-symmetric algebra in a random unimodular basis."""
    base = rng.choice(LSA_2D)
    scale = random_scalar(rng, 3)
    P, Pinv = _unimodular(rng)
    consts = change_basis([[[scale * x for x in v] for v in row] for row in base], P, Pinv)
    rep = classical_lsa_residuals(consts)
    if not rep:
        raise CheckFailed("generated constants are not left-symmetric", rep)
    return consts


def random_current_algebra(rng: random.Random):
    return current_algebra(random_lsa_2d(rng))


def random_module_map(rng: random.Random, n: int, cap: int = 1, names=("D",)) -> ModuleMap:
    images = tuple(tuple(random_poly(rng, names, cap, terms=2) for _ in range(n)) for _ in range(n))
    return ModuleMap(n, n, images)


__all__ = [
    "LSA_2D",
    "change_basis",
    "random_cochain",
    "random_current_algebra",
    "random_lsa_2d",
    "random_module_map",
    "random_poly",
    "random_scalar",
]
