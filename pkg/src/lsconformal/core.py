"""Free finite-rank modules over Q[D] and lambda-indexed structure tables.

An element of a free module of rank ``r`` is a tuple of ``r`` polynomials;
entry ``i`` is the coefficient (a polynomial in ``D`` and possibly spectator
variables) of the ``i``-th basis vector.  A :class:`LambdaMap` stores the value
of a sesquilinear lambda-map on every pair of basis vectors, as polynomials in
``D`` and ``L``.  :func:`eval_lambda` extends a table to arbitrary elements:
a left coefficient ``p(D)`` contributes ``p(-lam)``, a right coefficient
contributes ``p(D + lam)``.  ``lam`` may be any polynomial, including ones
mentioning ``D`` such as ``-D - L``; substitution is literal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .polyring import D, L, ONE, ZERO, Poly

Element = tuple  # tuple[Poly, ...]


class StructureError(ValueError):
    """Mismatched ranks, bad table shapes and similar misuse."""


@dataclass(frozen=True)
class FreeModule:
    basis_names: tuple

    def __post_init__(self):
        names = tuple(self.basis_names)
        object.__setattr__(self, "basis_names", names)
        if not names:
            raise StructureError("a free module needs at least one basis element")
        if len(set(names)) != len(names):
            raise StructureError(f"duplicate basis names in {names}")

    @property
    def rank(self) -> int:
        return len(self.basis_names)

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise StructureError(f"{name!r} is not a basis element of {self.basis_names}") from None

    def basis(self, i: int) -> Element:
        return basis_vector(self.rank, i)

    def element(self, coeffs: Mapping[str, object]) -> Element:
        v = [ZERO] * self.rank
        for name, c in coeffs.items():
            v[self.index(name)] = Poly.coerce(c)
        return tuple(v)

    def zero(self) -> Element:
        return zero_vec(self.rank)

    def dual(self) -> "FreeModule":
        return FreeModule(tuple(n + "*" for n in self.basis_names))

    def __add__(self, other: "FreeModule") -> "FreeModule":
        return FreeModule(self.basis_names + other.basis_names)


# -- vector helpers -----------------------------------------------------------


def zero_vec(n: int) -> Element:
    return (ZERO,) * n


def basis_vector(n: int, i: int) -> Element:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vec_add(u: Element, v: Element) -> Element:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Element, v: Element) -> Element:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_neg(u: Element) -> Element:
    return tuple(-a for a in u)


def vec_scale(p, u: Element) -> Element:
    p = Poly.coerce(p)
    return tuple(p * a for a in u)


def vec_subs(u: Element, mapping: Mapping[str, Poly]) -> Element:
    return tuple(a.subs(mapping) for a in u)


def vec_is_zero(u: Iterable[Poly]) -> bool:
    return all(a.is_zero() for a in u)


def vec_sum(vectors: Iterable[Element], n: int) -> Element:
    acc = [ZERO] * n
    for v in vectors:
        for k, a in enumerate(v):
            if a:
                acc[k] = acc[k] + a
    return tuple(acc)


def format_vector(u: Element, names: Sequence[str]) -> str:
    """``(D + L) a + 2 b`` style rendering."""
    parts = []
    for c, name in zip(u, names):
        if c.is_zero():
            continue
        if c == 1:
            parts.append(("+", name))
        elif c == -1:
            parts.append(("-", name))
        elif c.is_atomic():
            parts.append(("+", f"{c} {name}"))
        elif len(list(c.monomials())) == 1 and (-c).is_atomic():
            parts.append(("-", f"{-c} {name}"))
        else:
            parts.append(("+", f"({c}) {name}"))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- lambda maps --------------------------------------------------------------


@dataclass(frozen=True)
class LambdaMap:
    """Sesquilinear map ``U x V -> W[lambda]`` given on basis pairs.

    ``table[(i, j)]`` is the W-vector of ``u_i lambda v_j`` with entries in
    ``D``, ``L`` and parameters; absent pairs are zero.
    """

    left_rank: int
    right_rank: int
    out_rank: int
    table: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in dict(self.table).items():
            if not (0 <= i < self.left_rank and 0 <= j < self.right_rank):
                raise StructureError(f"table index {(i, j)} out of range")
            v = tuple(Poly.coerce(a) for a in v)
            if len(v) != self.out_rank:
                raise StructureError(f"entry {(i, j)} has length {len(v)}, expected {self.out_rank}")
            if not vec_is_zero(v):
                clean[(i, j)] = v
        object.__setattr__(self, "table", clean)

    @classmethod
    def zero(cls, left: int, right: int, out: int) -> "LambdaMap":
        return cls(left, right, out, {})

    @classmethod
    def from_function(cls, left: int, right: int, out: int, fn) -> "LambdaMap":
        """Tabulate ``fn(i, j) -> vector`` (polynomials in D and L)."""
        return cls(left, right, out, {(i, j): fn(i, j) for i in range(left) for j in range(right)})

    def entry(self, i: int, j: int) -> Element:
        return self.table.get((i, j), zero_vec(self.out_rank))

    def is_zero(self) -> bool:
        return not self.table

    def __add__(self, other: "LambdaMap") -> "LambdaMap":
        self._check_shape(other)
        keys = set(self.table) | set(other.table)
        return LambdaMap(self.left_rank, self.right_rank, self.out_rank,
                         {k: vec_add(self.entry(*k), other.entry(*k)) for k in keys})

    def __sub__(self, other: "LambdaMap") -> "LambdaMap":
        return self + other.scaled(-1)

    def scaled(self, p) -> "LambdaMap":
        return LambdaMap(self.left_rank, self.right_rank, self.out_rank,
                         {k: vec_scale(p, v) for k, v in self.table.items()})

    def _check_shape(self, other):
        if (self.left_rank, self.right_rank, self.out_rank) != (
            other.left_rank, other.right_rank, other.out_rank):
            raise StructureError("lambda maps of different shapes")

    def __eq__(self, other):
        if not isinstance(other, LambdaMap):
            return NotImplemented
        return (self.left_rank, self.right_rank, self.out_rank, self.table) == (
            other.left_rank, other.right_rank, other.out_rank, other.table)

    def __hash__(self):
        return hash((self.left_rank, self.right_rank, self.out_rank, frozenset(self.table.items())))


def _check_len(x: Element, n: int, what: str):
    if len(x) != n:
        raise StructureError(f"{what} has length {len(x)}, expected {n}")


def eval_lambda(P: LambdaMap, x: Element, y: Element, lam=L) -> Element:
    """``x_lam y`` by sesquilinear extension of the table ``P``."""
    _check_len(x, P.left_rank, "left argument")
    _check_len(y, P.right_rank, "right argument")
    lam = Poly.coerce(lam)
    acc = [ZERO] * P.out_rank
    if not P.table:
        return tuple(acc)
    left = [a.subs({"D": -lam}) if a else a for a in x]
    right = [b.subs({"D": D + lam}) if b else b for b in y]
    shift = {"L": lam}
    for (i, j), entry in P.table.items():
        if not left[i] or not right[j]:
            continue
        coef = left[i] * right[j]
        for k, e in enumerate(entry):
            if e:
                acc[k] = acc[k] + coef * e.subs(shift)
    return tuple(acc)


def eval_conjugate(P: LambdaMap, x: Element, y: Element, lam=L) -> Element:
    """``x_{-D-lam} y``: the leg ``b_{-d-lambda} a`` of the sub-adjacent bracket."""
    return eval_lambda(P, x, y, -D - Poly.coerce(lam))


def dual_pair(f: Element, v: Element, lam=L) -> Poly:
    """``f_lam(v)`` for ``f`` in the conformal dual and ``v`` in the module.

    Dual coefficients evaluate at ``-lam`` and module coefficients at ``lam``;
    the target is the trivial module so no ``D`` survives.
    """
    if len(f) != len(v):
        raise StructureError("dual element and vector over different modules")
    lam = Poly.coerce(lam)
    acc = ZERO
    for a, b in zip(f, v):
        if a and b:
            acc = acc + a.subs({"D": -lam}) * b.subs({"D": lam})
    return acc


@dataclass(frozen=True)
class ModuleMap:
    """Q[D]-linear map given by the images of the source basis.

    ``images[i]`` is the target vector of ``phi(e_i)``, polynomials in ``D``.
    """

    source_rank: int
    target_rank: int
    images: tuple

    def __post_init__(self):
        imgs = tuple(tuple(Poly.coerce(a) for a in v) for v in self.images)
        if len(imgs) != self.source_rank:
            raise StructureError("need one image per source basis element")
        for v in imgs:
            _check_len(v, self.target_rank, "image")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "ModuleMap":
        return cls(n, n, tuple(basis_vector(n, i) for i in range(n)))

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "ModuleMap":
        m = n if m is None else m
        return cls(n, m, tuple(zero_vec(m) for _ in range(n)))

    @classmethod
    def scalar(cls, n: int, p) -> "ModuleMap":
        p = Poly.coerce(p)
        return cls(n, n, tuple(vec_scale(p, basis_vector(n, i)) for i in range(n)))

    def __call__(self, x: Element) -> Element:
        _check_len(x, self.source_rank, "argument")
        acc = [ZERO] * self.target_rank
        for c, img in zip(x, self.images):
            if c:
                for k, a in enumerate(img):
                    if a:
                        acc[k] = acc[k] + c * a
        return tuple(acc)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        if other.target_rank != self.source_rank:
            raise StructureError("cannot compose maps with mismatched ranks")
        return ModuleMap(other.source_rank, self.target_rank, tuple(self(v) for v in other.images))

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source_rank, self.target_rank,
                         tuple(vec_add(a, b) for a, b in zip(self.images, other.images, strict=True)))

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return self + other.scaled(-1)

    def scaled(self, p) -> "ModuleMap":
        return ModuleMap(self.source_rank, self.target_rank, tuple(vec_scale(p, v) for v in self.images))

    def is_zero(self) -> bool:
        return all(vec_is_zero(v) for v in self.images)

    def __eq__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return self.images == other.images and self.target_rank == other.target_rank

    def __hash__(self):
        return hash(self.images)
