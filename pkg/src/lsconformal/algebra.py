"""Left-symmetric conformal algebras, Lie conformal algebras and their axioms."""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from typing import Mapping, Sequence

from .core import (
    Element,
    FreeModule,
    LambdaMap,
    ModuleMap,
    StructureError,
    eval_conjugate,
    eval_lambda,
    vec_add,
    vec_sub,
)
from .polyring import L, M, ZERO, Poly, parse_poly
from .report import CheckFailed, Report


def table_from_dict(names: Sequence[str], out_names: Sequence[str], entries: Mapping, right_names=None) -> dict:
    """Build a lambda-map table from ``{(x, y): {z: poly-or-text}}``."""
    right_names = out_names if right_names is None else right_names
    left = FreeModule(tuple(names))
    right = FreeModule(tuple(right_names))
    out = FreeModule(tuple(out_names))
    table = {}
    for (x, y), combo in entries.items():
        vec = [ZERO] * out.rank
        for z, c in combo.items():
            vec[out.index(z)] = parse_poly(c) if isinstance(c, str) else Poly.coerce(c)
        table[(left.index(x), right.index(y))] = tuple(vec)
    return table


class LscAlgebra:
    """A left-symmetric conformal algebra on a free module of finite rank.

    Construction validates the axioms unless ``check=False`` (the explicit
    escape hatch; ``checked`` records which route was taken).
    """

    def __init__(self, module: FreeModule, product: LambdaMap, check: bool = True):
        r = module.rank
        if (product.left_rank, product.right_rank, product.out_rank) != (r, r, r):
            raise StructureError("product table does not match the module rank")
        self.module = module
        self.product = product
        self.checked = check
        self._g = None
        if check:
            rep = check_lsc_axioms(self)
            if not rep:
                raise CheckFailed("product violates the left-symmetric conformal identity", rep)

    @classmethod
    def unchecked(cls, module: FreeModule, product: LambdaMap) -> "LscAlgebra":
        return cls(module, product, check=False)

    @classmethod
    def from_dict(cls, names, entries: Mapping, check: bool = True) -> "LscAlgebra":
        """``LscAlgebra.from_dict(["a"], {("a", "a"): {"a": "D + L + c"}})``."""
        names = tuple(names)
        n = len(names)
        return cls(FreeModule(names), LambdaMap(n, n, n, table_from_dict(names, names, entries)), check)

    @property
    def rank(self) -> int:
        return self.module.rank

    @property
    def names(self) -> tuple:
        return self.module.basis_names

    def basis(self, i: int) -> Element:
        return self.module.basis(i)

    def zero(self) -> Element:
        return self.module.zero()

    def mul(self, x: Element, y: Element, lam=L) -> Element:
        return eval_lambda(self.product, x, y, lam)

    def sub_adjacent(self) -> "LieConformalAlgebra":
        if self._g is None:
            self._g = sub_adjacent(self)
        return self._g

    def __eq__(self, other):
        return isinstance(other, LscAlgebra) and (self.module, self.product) == (other.module, other.product)

    def __hash__(self):
        return hash((self.module, self.product))

    def __repr__(self):
        return f"LscAlgebra({self.names}, {len(self.product.table)} nonzero products)"


class LieConformalAlgebra:
    """A Lie conformal algebra on a free module; validated like :class:`LscAlgebra`."""

    def __init__(self, module: FreeModule, bracket_table: LambdaMap, check: bool = True):
        r = module.rank
        if (bracket_table.left_rank, bracket_table.right_rank, bracket_table.out_rank) != (r, r, r):
            raise StructureError("bracket table does not match the module rank")
        self.module = module
        self.bracket_table = bracket_table
        self.checked = check
        if check:
            rep = check_lie_axioms(self)
            if not rep:
                raise CheckFailed("bracket violates the Lie conformal axioms", rep)

    @classmethod
    def unchecked(cls, module: FreeModule, bracket_table: LambdaMap) -> "LieConformalAlgebra":
        return cls(module, bracket_table, check=False)

    @classmethod
    def from_dict(cls, names, entries: Mapping, check: bool = True) -> "LieConformalAlgebra":
        names = tuple(names)
        n = len(names)
        return cls(FreeModule(names), LambdaMap(n, n, n, table_from_dict(names, names, entries)), check)

    @property
    def rank(self) -> int:
        return self.module.rank

    @property
    def names(self) -> tuple:
        return self.module.basis_names

    def basis(self, i: int) -> Element:
        return self.module.basis(i)

    def zero(self) -> Element:
        return self.module.zero()

    def bracket(self, x: Element, y: Element, lam=L) -> Element:
        return eval_lambda(self.bracket_table, x, y, lam)

    def __eq__(self, other):
        return isinstance(other, LieConformalAlgebra) and (self.module, self.bracket_table) == (
            other.module, other.bracket_table)

    def __hash__(self):
        return hash((self.module, self.bracket_table))

    def __repr__(self):
        return f"LieConformalAlgebra({self.names}, {len(self.bracket_table.table)} nonzero brackets)"


def lsc_associator_residual(mul, a: Element, b: Element, c: Element) -> Element:
    """``(a_L b)_{L+M} c - a_L (b_M c) - (b_M a)_{L+M} c + b_M (a_L c)`` for a product callable."""
    lhs = vec_sub(mul(mul(a, b, L), c, L + M), mul(a, mul(b, c, M), L))
    rhs = vec_sub(mul(mul(b, a, M), c, L + M), mul(b, mul(a, c, L), M))
    return vec_sub(lhs, rhs)


def check_lsc_axioms(A: LscAlgebra) -> Report:
    """Evaluate the left-symmetric identity on every basis triple (lex order)."""
    rep = Report("lsc-axioms")
    n = A.rank
    basis = [A.basis(i) for i in range(n)]
    for i, j, k in iproduct(range(n), repeat=3):
        rep.add("left-symmetry", (i, j, k), lsc_associator_residual(A.mul, basis[i], basis[j], basis[k]))
    return rep


def check_lie_axioms(R: LieConformalAlgebra) -> Report:
    """Conformal skew-symmetry on basis pairs and the Jacobi identity on basis triples."""
    rep = Report("lie-axioms")
    n = R.rank
    basis = [R.basis(i) for i in range(n)]
    br = R.bracket
    for i, j in iproduct(range(n), repeat=2):
        skew = vec_add(br(basis[i], basis[j], L), eval_conjugate(R.bracket_table, basis[j], basis[i], L))
        rep.add("skew-symmetry", (i, j), skew)
    for i, j, k in iproduct(range(n), repeat=3):
        a, b, c = basis[i], basis[j], basis[k]
        lhs = br(a, br(b, c, M), L)
        rhs = vec_add(br(br(a, b, L), c, L + M), br(b, br(a, c, L), M))
        rep.add("jacobi", (i, j, k), vec_sub(lhs, rhs))
    return rep


def sub_adjacent(A: LscAlgebra) -> LieConformalAlgebra:
    """``[a_L b] = a_L b - b_{-D-L} a`` on basis pairs."""
    n = A.rank
    table = {}
    for i, j in iproduct(range(n), repeat=2):
        ei, ej = A.basis(i), A.basis(j)
        table[(i, j)] = vec_sub(A.mul(ei, ej, L), eval_conjugate(A.product, ej, ei, L))
    return LieConformalAlgebra(A.module, LambdaMap(n, n, n, table), check=A.checked)


def _as_constants(constants) -> list:
    """Normalize ``c[i][j] = vector`` (nested lists or a dict of pairs)."""
    if isinstance(constants, Mapping):
        n = 1 + max(max(i, j) for i, j in constants) if constants else 0
        rows = [[None] * n for _ in range(n)]
        for (i, j), v in constants.items():
            rows[i][j] = v
        for i in range(n):
            for j in range(n):
                if rows[i][j] is None:
                    rows[i][j] = [0] * n
        constants = rows
    n = len(constants)
    return [[[Fraction(x) for x in constants[i][j]] for j in range(n)] for i in range(n)]


def classical_lsa_residuals(constants, names=None) -> Report:
    """Finite-dimensional left-symmetric identity ``(x,y,z) = (y,x,z)`` on basis triples."""
    c = _as_constants(constants)
    n = len(c)

    def mul(u, v):
        out = [Fraction(0)] * n
        for i in range(n):
            if u[i]:
                for j in range(n):
                    if v[j]:
                        w = u[i] * v[j]
                        for k in range(n):
                            out[k] += w * c[i][j][k]
        return out

    basis = [[Fraction(int(k == i)) for k in range(n)] for i in range(n)]
    rep = Report("lsa-identity")
    for i, j, k in iproduct(range(n), repeat=3):
        x, y, z = basis[i], basis[j], basis[k]
        assoc_xy = [p - q for p, q in zip(mul(mul(x, y), z), mul(x, mul(y, z)))]
        assoc_yx = [p - q for p, q in zip(mul(mul(y, x), z), mul(y, mul(x, z)))]
        rep.add("left-symmetry", (i, j, k), tuple(Poly.const(p - q) for p, q in zip(assoc_xy, assoc_yx)))
    return rep


def current_algebra(constants, names: Sequence[str] | None = None) -> LscAlgebra:
    """Current algebra ``Q[D] (x) A`` with ``a_L b = a.b`` for a left-symmetric algebra ``A``."""
    c = _as_constants(constants)
    n = len(c)
    if n == 0:
        raise StructureError("the zero-dimensional algebra has no free module")
    rep = classical_lsa_residuals(c)
    if not rep:
        raise CheckFailed("structure constants are not left-symmetric", rep)
    names = tuple(names) if names else tuple(f"e{i + 1}" for i in range(n))
    table = {(i, j): tuple(Poly.const(x) for x in c[i][j]) for i in range(n) for j in range(n)}
    return LscAlgebra(FreeModule(names), LambdaMap(n, n, n, table))


def check_homomorphism(phi: ModuleMap, A, A2) -> Report:
    """``phi(e_i _L e_j) = phi(e_i) _L phi(e_j)`` on basis pairs.

    Works for two LSC algebras (products) or two Lie conformal algebras (brackets).
    """
    if phi.source_rank != A.rank or phi.target_rank != A2.rank:
        raise StructureError("map does not match the algebras")
    op1 = A.mul if isinstance(A, LscAlgebra) else A.bracket
    op2 = A2.mul if isinstance(A2, LscAlgebra) else A2.bracket
    rep = Report("homomorphism")
    for i, j in iproduct(range(A.rank), repeat=2):
        ei, ej = A.basis(i), A.basis(j)
        rep.add("homomorphism", (i, j), vec_sub(phi(op1(ei, ej, L)), op2(phi(ei), phi(ej), L)))
    return rep


def algebra_with_product(A: LscAlgebra, product: LambdaMap, check: bool = True) -> LscAlgebra:
    return LscAlgebra(A.module, product, check=check)
