"""Cochains, the two coboundary operators, the reindexing isomorphism Phi and
degree-capped cohomology.

An n-cochain is stored as a table over *all* n-tuples of basis indices.  Its
n-1 explicit lambda variables are ``L1..L(n-1)``; the last argument carries
the implicit value ``-partial - L1 - ... - L(n-1)`` where ``partial`` is the
derivation of the coefficient space (``D`` for a module, ``-MU`` for
conformal-map values).

Coefficient spaces:

* LSC flavor: a :class:`RepPair` (module over an LSC algebra).
* LIE flavor: a :class:`LieModule` or a :class:`HomSpace` (``CHom(A, M)`` over
  the sub-adjacent algebra).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product as iproduct

from .core import (
    Element,
    StructureError,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    vec_subs,
    zero_vec,
)
from .linalg import Echelon, intersection_dim, kernel, poly_coords, solve
from .polyring import MU, ONE, ZERO, Poly, lam, var
from .report import Report
from .representations import HomSpace, LieModule, RepPair

LSC = "LSC"
LIE = "LIE"


def flavor_of(space) -> str:
    if isinstance(space, RepPair):
        return LSC
    if isinstance(space, (LieModule, HomSpace)):
        return LIE
    raise StructureError(f"unsupported coefficient space {space!r}")


def lam_vars(n: int) -> list:
    """Explicit lambda variables of an n-cochain: ``L1..L(n-1)``."""
    return [lam(k) for k in range(1, n)]


def _sign(perm) -> int:
    s = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


class Cochain:
    """An n-cochain with values in a coefficient space.

    ``table[(i1, ..., in)]`` is the value vector on basis elements; missing
    tuples are zero.
    """

    def __init__(self, space, n: int, table=None):
        if n < 0:
            raise StructureError("cochain degree must be non-negative")
        self.space = space
        self.n = n
        self.flavor = flavor_of(space)
        w, r = space.width, space.source_rank
        clean = {}
        for idx, v in dict(table or {}).items():
            idx = tuple(idx)
            if len(idx) != n or any(not 0 <= i < r for i in idx):
                raise StructureError(f"cochain index {idx} does not match degree {n} and rank {r}")
            v = tuple(Poly.coerce(a) for a in v)
            if len(v) != w:
                raise StructureError(f"cochain value at {idx} has length {len(v)}, expected {w}")
            if not vec_is_zero(v):
                clean[idx] = v
        self.table = clean

    # -- basic structure ----------------------------------------------------

    @property
    def width(self) -> int:
        return self.space.width

    @property
    def rank(self) -> int:
        return self.space.source_rank

    @property
    def partial(self) -> Poly:
        return self.space.partial

    def entry(self, idx) -> Element:
        return self.table.get(tuple(idx), zero_vec(self.width))

    def tuples(self):
        return iproduct(range(self.rank), repeat=self.n)

    def is_zero(self) -> bool:
        return not self.table

    def with_table(self, table) -> "Cochain":
        return Cochain(self.space, self.n, table)

    def _same(self, other):
        if self.n != other.n or self.width != other.width or self.flavor != other.flavor:
            raise StructureError("cochains of different shapes")

    def __add__(self, other):
        self._same(other)
        keys = set(self.table) | set(other.table)
        return self.with_table({k: vec_add(self.entry(k), other.entry(k)) for k in keys})

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, p) -> "Cochain":
        return self.with_table({k: vec_scale(p, v) for k, v in self.table.items()})

    def subs(self, mapping) -> "Cochain":
        return self.with_table({k: vec_subs(v, mapping) for k, v in self.table.items()})

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.n, self.width, self.flavor, self.table) == (other.n, other.width, other.flavor, other.table)

    def __hash__(self):
        return hash((self.n, self.width, self.flavor, frozenset(self.table.items())))

    def __repr__(self):
        return f"Cochain({self.flavor}, n={self.n}, {len(self.table)} nonzero entries)"

    def coords(self) -> dict:
        out = {}
        for idx, v in self.table.items():
            out.update(poly_coords(v, idx))
        return out

    def max_degree(self) -> int:
        return max((a.degree() for v in self.table.values() for a in v if a), default=0)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, args, lams) -> Element:
        """``gamma_{lams}(args)`` for arbitrary elements, by conformal antilinearity.

        Argument ``i < n`` contributes ``p(-lams[i])``, the last argument
        ``p(partial + sum(lams))``; table entries get ``Lk -> lams[k-1]``.
        """
        n = self.n
        if len(args) != n or len(lams) != max(n - 1, 0):
            raise StructureError("wrong number of arguments for this cochain")
        lams = [Poly.coerce(x) for x in lams]
        if n == 0:
            return self.entry(())
        last = self.partial + sum(lams, ZERO)
        subs_args = []
        for i, x in enumerate(args):
            target = -lams[i] if i < n - 1 else last
            subs_args.append([(j, c.subs({"D": target})) for j, c in enumerate(x) if c])
        shift = {f"L{k + 1}": lams[k] for k in range(n - 1)}
        acc = [ZERO] * self.width
        for combo in iproduct(*subs_args):
            idx = tuple(j for j, _ in combo)
            v = self.table.get(idx)
            if v is None:
                continue
            coef = ONE
            for _, c in combo:
                coef = coef * c
            for k, a in enumerate(v):
                if a:
                    acc[k] = acc[k] + coef * a.subs(shift)
        return tuple(acc)

    # -- symmetry -----------------------------------------------------------

    def _extended_lams(self):
        ls = lam_vars(self.n)
        return ls + [-self.partial - sum(ls, ZERO)]

    def permuted(self, perm) -> "Cochain":
        """``(perm . T)_{i} = T_{i o perm}`` with ``Lk -> Lambda_{perm(k)}``."""
        n = self.n
        ext = self._extended_lams()
        shift = {f"L{k + 1}": ext[perm[k]] for k in range(n - 1)}
        table = {}
        for idx in self.tuples():
            src = tuple(idx[perm[k]] for k in range(n))
            v = self.table.get(src)
            if v is not None:
                table[idx] = vec_subs(v, shift)
        return self.with_table(table)

    def symmetry_group(self):
        """Permutations constrained by the skew conditions of this flavor."""
        n = self.n
        if n <= 1:
            return [tuple(range(n))]
        if self.flavor == LIE:
            return list(permutations(range(n)))
        return [tuple(p) + (n - 1,) for p in permutations(range(n - 1))]

    def antisymmetrized(self) -> "Cochain":
        """Average of ``sgn(p) p . T`` over the symmetry group (a projector onto valid cochains)."""
        group = self.symmetry_group()
        acc = self.with_table({})
        for p in group:
            acc = acc + self.permuted(p).scaled(_sign(p))
        return acc.scaled(Fraction(1, len(group)))


def validate_cochain(gamma: Cochain) -> Report:
    """Skew constraints: transpositions of explicit slots, plus the last slot for LIE flavor."""
    rep = Report("cochain")
    n = gamma.n
    pairs = [(s, t) for s, t in combinations(range(n), 2) if t < n - 1 or gamma.flavor == LIE]
    for s, t in pairs:
        perm = list(range(n))
        perm[s], perm[t] = perm[t], perm[s]
        diff = gamma + gamma.permuted(tuple(perm))
        name = "skew" if t < n - 1 else "skew-last"
        for idx in gamma.tuples():
            rep.add(name, (s, t) + idx, diff.entry(idx))
    rep.checks.setdefault("skew", True)
    return rep


# --------------------------------------------------------------------------
# coboundaries
# --------------------------------------------------------------------------


def _drop(seq, *positions):
    return [x for k, x in enumerate(seq) if k not in positions]


def _lsc_space_parts(space: RepPair):
    A = space.algebra
    return A, A.sub_adjacent()


def delta_lsc(gamma: Cochain) -> Cochain:
    """The LSC coboundary ``C^n(A, M) -> C^{n+1}(A, M)`` (four sums, n >= 1)."""
    if gamma.flavor != LSC:
        raise StructureError("delta_lsc needs an LSC cochain")
    if gamma.n < 1:
        raise StructureError("the LSC complex starts in degree one")
    rep: RepPair = gamma.space
    A, g = _lsc_space_parts(rep)
    n = gamma.n
    lams = lam_vars(n + 1)  # L1..Ln
    total = sum(lams, ZERO)
    basis = [A.basis(i) for i in range(A.rank)]
    table = {}
    for idx in iproduct(range(A.rank), repeat=n + 1):
        a = [basis[i] for i in idx]
        acc = zero_vec(gamma.width)
        for i in range(n):
            sgn = 1 if i % 2 == 0 else -1
            lrest = _drop(lams, i)
            t1 = rep.left(a[i], gamma.evaluate(_drop(a, i), lrest), lams[i])
            t2 = rep.right(gamma.evaluate(_drop(a[:n], i) + [a[i]], lrest), a[n], total)
            t3 = gamma.evaluate(_drop(a[:n], i) + [A.mul(a[i], a[n], lams[i])], lrest)
            acc = vec_add(acc, vec_scale(sgn, vec_sub(vec_add(t1, t2), t3)))
        for i, j in combinations(range(n), 2):
            sgn = 1 if (i + j) % 2 == 0 else -1
            args = [g.bracket(a[i], a[j], lams[i])] + _drop(a, i, j)
            ls = [lams[i] + lams[j]] + _drop(lams, i, j)
            acc = vec_add(acc, vec_scale(sgn, gamma.evaluate(args, ls)))
        table[idx] = acc
    return Cochain(rep, n + 1, table)


def d_lie(gamma: Cochain) -> Cochain:
    """The Lie conformal coboundary ``C^n -> C^{n+1}``.

    The last displayed sum runs over ``i = 1..n``; when ``i = n`` the lambda
    list is truncated to ``n-1`` entries (the dropped value is the implicit
    last one).  For ``n = 0`` the value ``v`` maps to ``a -> a_{-partial} v``.
    """
    if gamma.flavor != LIE:
        raise StructureError("d_lie needs a LIE cochain")
    space = gamma.space
    R = space.algebra
    n = gamma.n
    part = space.partial
    lams = lam_vars(n + 1)
    basis = [R.basis(i) for i in range(R.rank)]
    table = {}
    for idx in iproduct(range(R.rank), repeat=n + 1):
        a = [basis[i] for i in idx]
        if n == 0:
            table[idx] = space.act(a[0], gamma.entry(()), -part)
            continue
        acc = zero_vec(gamma.width)
        for i in range(n):
            sgn = 1 if i % 2 == 0 else -1
            v = gamma.evaluate(_drop(a, i), _drop(lams, i))
            acc = vec_add(acc, vec_scale(sgn, space.act(a[i], v, lams[i])))
        sgn = 1 if n % 2 == 0 else -1
        v = gamma.evaluate(a[:n], lams[:n - 1])
        acc = vec_add(acc, vec_scale(sgn, space.act(a[n], v, -part - sum(lams, ZERO))))
        for i, j in combinations(range(n), 2):
            sgn = 1 if (i + j) % 2 == 0 else -1
            args = [R.bracket(a[i], a[j], lams[i])] + _drop(a, i, j)
            ls = [lams[i] + lams[j]] + _drop(lams, i, j)
            acc = vec_add(acc, vec_scale(sgn, gamma.evaluate(args, ls)))
        for i in range(n):
            sgn = 1 if (i + n) % 2 == 0 else -1  # (-1)^{(i+1)+n+1}
            head = -part - sum(_drop(lams, i), ZERO)
            ls = ([head] + _drop(lams[:n - 1], i))[:n - 1]
            args = [R.bracket(a[i], a[n], lams[i])] + _drop(a[:n], i)
            acc = vec_add(acc, vec_scale(sgn, gamma.evaluate(args, ls)))
        table[idx] = acc
    return Cochain(space, n + 1, table)


def coboundary(gamma: Cochain) -> Cochain:
    return delta_lsc(gamma) if gamma.flavor == LSC else d_lie(gamma)


def delta_one_direct(f: Cochain) -> Cochain:
    """``(delta f)_L(a, b) = a_L f(b) + f(a)_L b - f(a_L b)`` evaluated directly."""
    rep: RepPair = f.space
    A = rep.algebra
    L1 = lam(1)
    table = {}
    for i, j in iproduct(range(A.rank), repeat=2):
        a, b = A.basis(i), A.basis(j)
        val = vec_add(rep.left(a, f.evaluate([b], []), L1), rep.right(f.evaluate([a], []), b, L1))
        table[(i, j)] = vec_sub(val, f.evaluate([A.mul(a, b, L1)], []))
    return Cochain(rep, 2, table)


def is_cocycle(gamma: Cochain) -> bool:
    return coboundary(gamma).is_zero()


# --------------------------------------------------------------------------
# Phi
# --------------------------------------------------------------------------


def phi(gamma: Cochain, rep: RepPair) -> Cochain:
    """Lie (n-1)-cochain in ``CHom(A, M)`` to LSC n-cochain in ``M``.

    ``Phi(g)_{L1..L(n-1)}(a1..an) = (g_{L1..L(n-2)}(a1..a(n-1)))_{L1+..+L(n-1)}(an)``.
    """
    if not isinstance(gamma.space, HomSpace):
        raise StructureError("phi needs a cochain valued in conformal maps")
    m = gamma.n
    n = m + 1
    rm = rep.module.rank
    sub = {"MU": sum(lam_vars(n), ZERO)}
    table = {}
    for idx, v in gamma.table.items():
        for j in range(rep.algebra.rank):
            table[idx + (j,)] = tuple(a.subs(sub) for a in v[j * rm:(j + 1) * rm])
    return Cochain(rep, n, table)


def phi_inv(omega: Cochain, space: HomSpace | None = None) -> Cochain:
    """Inverse of :func:`phi` for ``n >= 2``: ``L(n-1) -> MU - L1 - ... - L(n-2)``."""
    rep = omega.space
    n = omega.n
    if n < 2:
        raise StructureError("phi is only invertible from degree two on")
    space = space or HomSpace(rep)
    ra = rep.algebra.rank
    ls = lam_vars(n)
    sub = {f"L{n - 1}": MU - sum(ls[:-1], ZERO)}
    table = {}
    for idx in iproduct(range(ra), repeat=n - 1):
        flat = []
        for j in range(ra):
            flat.extend(a.subs(sub) for a in omega.entry(idx + (j,)))
        table[idx] = tuple(flat)
    return Cochain(space, n - 1, table)


# --------------------------------------------------------------------------
# bounded-degree spaces
# --------------------------------------------------------------------------


def monomials_upto(names, cap: int) -> list:
    """All monomials in ``names`` of total degree <= cap, as Polys, graded order."""
    names = list(names)
    out = []
    for deg in range(cap + 1):
        for exps in _compositions(deg, len(names)):
            p = ONE
            for nm, e in zip(names, exps):
                if e:
                    p = p * var(nm) ** e
            out.append(p)
    return out


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def value_variables(space, n: int) -> list:
    names = ["D"] + [f"L{k}" for k in range(1, n)]
    if isinstance(space, HomSpace):
        names.append("MU")
    return names


def cochain_basis(space, n: int, cap: int) -> list:
    """A basis of the valid n-cochains whose entries have total degree <= cap.

    Unknown coefficients are rational numbers; parameters never appear in
    basis elements.
    """
    monos = monomials_upto(value_variables(space, n), cap)
    r, w = space.source_rank, space.width
    raw = []
    for idx in iproduct(range(r), repeat=n):
        for k in range(w):
            for m in monos:
                v = [ZERO] * w
                v[k] = m
                raw.append(Cochain(space, n, {idx: tuple(v)}))
    probe = Cochain(space, n, {})
    if len(probe.symmetry_group()) == 1:
        return raw
    ech = Echelon()
    out = []
    for c in raw:
        s = c.antisymmetrized()
        if s.is_zero():
            continue
        if ech.insert(s.coords()) is None:
            out.append(s)
    return out


def combine(basis: list, coeffs: dict, space, n: int) -> Cochain:
    acc = Cochain(space, n, {})
    for i, c in sorted(coeffs.items()):
        if c:
            acc = acc + basis[i].scaled(c)
    return acc


@dataclass
class CohomologyReport:
    n: int
    degree_z: int
    degree_b: int
    dim_c: int
    dim_z: int
    dim_b_cap_z: int
    cocycle_basis: list = field(default_factory=list)

    @property
    def estimate(self) -> int:
        return self.dim_z - self.dim_b_cap_z


def cocycle_space(space, n: int, cap: int):
    """Return ``(dim C, cocycle basis)`` at total degree <= cap."""
    basis = cochain_basis(space, n, cap)
    images = [coboundary(b).coords() for b in basis]
    ker = kernel(images)
    return len(basis), [combine(basis, rel, space, n) for rel in ker]


def coboundary_images(space, n: int, cap: int) -> list:
    """Coboundaries of a basis of C^{n-1} at the cap (empty for n = 1)."""
    if n <= 1:
        return []
    return [coboundary(b) for b in cochain_basis(space, n - 1, cap)]


def h_dim_bounded(space, n: int, degree_z: int, degree_b: int) -> CohomologyReport:
    """Exact dimensions of the degree-capped cocycle space and of its coboundary part.

    ``B^1`` is zero since the complex starts in degree one.
    """
    if degree_z < 0 or degree_b < 0:
        raise ValueError("degree caps must be non-negative")
    dim_c, zbasis = cocycle_space(space, n, degree_z)
    ims = [b.coords() for b in coboundary_images(space, n, degree_b)]
    zc = [z.coords() for z in zbasis]
    dim_bz = intersection_dim(ims, zc) if ims else 0
    return CohomologyReport(n, degree_z, degree_b, dim_c, len(zbasis), dim_bz, zbasis)


def coboundary_solve(omega: Cochain, degree_b: int):
    """A cochain ``eta`` of degree ``n-1`` and entry degree <= cap with ``d(eta) = omega``, or ``None``."""
    n = omega.n
    if omega.is_zero():
        return Cochain(omega.space, max(n - 1, 0), {})
    if n <= 1:
        return None
    basis = cochain_basis(omega.space, n - 1, degree_b)
    images = [coboundary(b).coords() for b in basis]
    coeffs = solve(images, omega.coords())
    if coeffs is None:
        return None
    return combine(basis, coeffs, omega.space, n - 1)


def random_cochain(space, n: int, rng, cap: int = 3, density: float = 0.6, coeff_range: int = 3) -> Cochain:
    """A valid random cochain: random sparse entries, then antisymmetrized."""
    monos = monomials_upto(value_variables(space, n), cap)
    table = {}
    for idx in iproduct(range(space.source_rank), repeat=n):
        v = []
        for _ in range(space.width):
            p = ZERO
            for m in monos:
                if rng.random() < density / max(1, len(monos) // 3):
                    p = p + m.scale(rng.randint(-coeff_range, coeff_range))
            v.append(p)
        table[idx] = tuple(v)
    c = Cochain(space, n, table)
    if len(c.symmetry_group()) > 1:
        c = c.antisymmetrized()
    return c


def product_cochain(A) -> Cochain:
    """The product of ``A`` as an adjoint-valued LSC 2-cochain."""
    from .representations import adjoint_rep

    rep = adjoint_rep(A)
    table = {k: vec_subs(v, {"L": lam(1)}) for k, v in A.product.table.items()}
    return Cochain(rep, 2, table)


def module_map_cochain(rep: RepPair, N) -> Cochain:
    """A module map ``A -> M`` as a 1-cochain."""
    return Cochain(rep, 1, {(i,): N.images[i] for i in range(N.source_rank)})


def cochain_as_lambda_table(omega: Cochain) -> dict:
    """2-cochain table with ``L1`` renamed to ``L`` (a lambda-map table)."""
    if omega.n != 2:
        raise StructureError("only 2-cochains are lambda-maps")
    return {k: vec_subs(v, {"L1": var("L")}) for k, v in omega.table.items()}
