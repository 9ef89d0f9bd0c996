"""Exact sparse multivariate polynomials over the rationals.

Every quantity the package manipulates is a :class:`Poly` in commuting
indeterminates.  A handful of names are reserved:

``D``
    the derivation of the underlying module,
``L``, ``L1``, ``L2``, ...
    spectral (lambda) variables,
``M``
    the second spectral variable used in axiom checks,
``MU``
    the own variable of a conformal linear map,
``T``
    the deformation parameter.

Any other identifier is a user parameter.  Names starting with an underscore
are scratch variables created by :func:`fresh` and never appear in results.

Monomials are stored sparsely as tuples of ``(name, exponent)`` pairs sorted by
:func:`var_key`; the printed form is graded lexicographic with ``D`` most
significant.

>>> p = parse_poly("(D + L + c)^2")
>>> str(p.substitute("L", -D - L))
'L^2 - 2*L*c + c^2'
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

__all__ = [
    "Poly",
    "PolyParseError",
    "D",
    "L",
    "M",
    "MU",
    "T",
    "ONE",
    "ZERO",
    "var",
    "lam",
    "fresh",
    "var_key",
    "parse_poly",
    "RESERVED",
]

Scalar = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[str, int], ...]

_LAMBDA_RE = re.compile(r"L(\d+)$")


@lru_cache(maxsize=None)
def var_key(name: str) -> tuple:
    """Sort key fixing the registered variable order D < L < L1 < ... < M < MU < T < params."""
    if name == "D":
        return (0, 0, "")
    if name == "L":
        return (1, 0, "")
    m = _LAMBDA_RE.match(name)
    if m:
        return (1, int(m.group(1)), "")
    if name == "M":
        return (2, 0, "")
    if name == "MU":
        return (3, 0, "")
    if name == "T":
        return (4, 0, "")
    if name.startswith("_"):
        return (6, 0, name)
    return (5, 0, name)


def is_reserved(name: str) -> bool:
    return var_key(name)[0] in (0, 1, 2, 3, 4)


RESERVED = ("D", "L", "M", "MU", "T")


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif var_key(va) < var_key(vb):
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_order_key(m: Monomial) -> tuple:
    # ascending sort of this key lists the leading (graded-lex largest) monomial first
    return (-_mono_degree(m), tuple((var_key(v), -e) for v, e in m))


def _norm_scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


class Poly:
    """Immutable polynomial with rational coefficients.

    Supports ``+ - *``, integer powers, comparison with scalars, hashing, and
    simultaneous substitution via :meth:`subs`.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        if terms:
            self._terms = {m: _norm_scalar(c) for m, c in terms.items() if c != 0}
        else:
            self._terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        c = _norm_scalar(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, str):
            return var(x)
        return cls.const(x)

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def terms(self):
        """(monomial, coefficient) pairs in canonical order."""
        return sorted(self._terms.items(), key=lambda t: _mono_order_key(t[0]))

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def variables(self) -> set:
        return {v for m in self._terms for v, _ in m}

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in one variable; the zero polynomial has degree -1."""
        if not self._terms:
            return -1
        if name is None:
            return max(_mono_degree(m) for m in self._terms)
        return max(dict(m).get(name, 0) for m in self._terms)

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def coeffs_in(self, name: str) -> dict:
        """Split as ``sum_k c_k * name^k`` and return ``{k: c_k}``."""
        out: dict[int, dict] = {}
        for m, c in self._terms.items():
            k = 0
            rest = []
            for v, e in m:
                if v == name:
                    k = e
                else:
                    rest.append((v, e))
            out.setdefault(k, {})[tuple(rest)] = c
        return {k: Poly._raw(t) for k, t in out.items()}

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = Poly.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        t = dict(self._terms)
        for m, c in other._terms.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s += c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Poly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            other = _norm_scalar(other)
            return Poly._raw({m: c * other for m, c in self._terms.items()})
        other = Poly.coerce(other)
        if not self._terms or not other._terms:
            return ZERO
        t: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = t.get(m)
                t[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly._raw({m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and other:
            return self * (Fraction(1) / _norm_scalar(other))
        raise TypeError("polynomials only divide by nonzero rational scalars")

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Poly":
        return self * _norm_scalar(c)

    # -- substitution ---------------------------------------------------
    def subs(self, mapping: Mapping[str, "Poly"]) -> "Poly":
        """Simultaneous substitution ``{name: replacement}``."""
        if not self._terms:
            return self
        mapping = {k: Poly.coerce(v) for k, v in mapping.items()}
        if not mapping:
            return self
        relevant = self.variables() & mapping.keys()
        if not relevant:
            return self
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = mapping[v] ** e
            return powers[key]

        acc: dict = {}
        for m, c in self._terms.items():
            kept = tuple((v, e) for v, e in m if v not in mapping)
            factor = Poly._raw({kept: c})
            for v, e in m:
                if v in mapping:
                    factor = factor * power(v, e)
                    if not factor._terms:
                        break
            for mm, cc in factor._terms.items():
                s = acc.get(mm)
                acc[mm] = cc if s is None else s + cc
        return Poly._raw({m: c for m, c in acc.items() if c})

    def substitute(self, name: str, repl) -> "Poly":
        return self.subs({name: Poly.coerce(repl)})

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        return self.subs({k: var(v) for k, v in mapping.items()})

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- printing -------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.terms()):
            neg = c < 0
            a = -c if neg else c
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def is_atomic(self) -> bool:
        """True when printing needs no parentheses as a factor."""
        if len(self._terms) != 1:
            return False
        ((m, c),) = self._terms.items()
        return c > 0 and (c.denominator == 1 or m == ())


def var(name: str) -> Poly:
    return Poly._raw({((name, 1),): Fraction(1)})


def lam(k: int) -> Poly:
    """The k-th spectral variable ``Lk``."""
    return var(f"L{k}")


ZERO = Poly._raw({})
ONE = Poly._raw({(): Fraction(1)})
D = var("D")
L = var("L")
M = var("M")
MU = var("MU")
T = var("T")

_fresh_counter = itertools.count()


def fresh() -> Poly:
    """A scratch variable that does not clash with anything user-visible."""
    return var(f"_{next(_fresh_counter)}")


def fresh_name() -> str:
    return f"_{next(_fresh_counter)}"


# --------------------------------------------------------------------------
# text grammar
# --------------------------------------------------------------------------


class PolyParseError(ValueError):
    def __init__(self, message: str, pos: int = 0, line: int = 1, col: int | None = None):
        self.pos = pos
        self.line = line
        if col is None:
            col = pos + 1 if isinstance(pos, int) else 0
        self.col = col
        super().__init__(f"{line}:{self.col}: {message}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


def _tokenize_expr(text: str):
    pos = 0
    out = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class ExprParser:
    """Recursive-descent parser for ``sum := term (("+"|"-") term)*``.

    Terms are products of powers; juxtaposition means multiplication, so
    ``(D + L) a`` and ``2*c*L`` are both accepted.  ``resolve`` maps an
    identifier to the polynomial it denotes (it may raise to reject names).
    """

    def __init__(self, tokens, resolve):
        self.toks = tokens
        self.i = 0
        self.resolve = resolve

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolyParseError(msg, tok[2])

    def parse_sum(self) -> Poly:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.parse_term() * sign
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                t = self.parse_term()
                acc = acc + t if tok[1] == "+" else acc - t
            else:
                return acc

    def _starts_factor(self, tok) -> bool:
        return tok[0] in ("num", "name") or (tok[0] == "op" and tok[1] == "(")

    def parse_term(self) -> Poly:
        acc = self.parse_power()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = acc * self.parse_power()
            elif self._starts_factor(tok):
                acc = acc * self.parse_power()
            else:
                return acc

    def parse_power(self) -> Poly:
        base = self.parse_factor()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num" or "/" in e[1]:
                self.error("exponent must be a non-negative integer", e)
            return base ** int(e[1])
        return base

    def parse_factor(self) -> Poly:
        tok = self.take()
        if tok[0] == "num":
            return Poly.const(Fraction(tok[1]))
        if tok[0] == "name":
            return self.resolve(tok[1], tok)
        if tok[0] == "op" and tok[1] == "(":
            inner = self.parse_sum()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.error("expected ')'", close)
            return inner
        if tok[0] == "op" and tok[1] == "-":
            return -self.parse_power()
        self.error("expected a number, a name or '('", tok)


def parse_poly(text: str, allowed: Iterable[str] | None = None) -> Poly:
    """Parse the polynomial text grammar.  ``allowed`` restricts identifiers."""
    allowed = None if allowed is None else set(allowed)

    def resolve(name, tok):
        if allowed is not None and name not in allowed:
            raise PolyParseError(f"indeterminate {name!r} not permitted here", tok[2])
        return var(name)

    p = ExprParser(_tokenize_expr(text), resolve)
    out = p.parse_sum()
    if p.peek()[0] != "eof":
        p.error(f"unexpected {p.peek()[1]!r}")
    return out
