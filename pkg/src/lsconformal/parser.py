"""The definition language: lexer, recursive-descent parser and renderer.

Example::

    param c;
    algebra A {
      basis a;
      product
        a a = (D + L + c) a;
    }

A file is a sequence of ``param`` declarations and ``algebra``/``module``
declarations.  Inside braces come ``basis`` and blocks; each block keyword
(``product``, ``bracket``, ``laction``, ``raction``, ``cochain N``, ``form``,
``map``) is followed by equations ``x y ... = sum;`` that run until the next
keyword or ``}``.  Dual basis vectors are written ``a*``.  ``#`` starts a
comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import format_vector
from .polyring import ExprParser, Poly, PolyParseError, is_reserved, var

KEYWORDS = frozenset({"param", "algebra", "module", "basis", "product", "bracket",
                      "laction", "raction", "cochain", "form", "map"})
BLOCKS = ("product", "bracket", "laction", "raction", "cochain", "form", "map")
_DUAL_FOLLOW = set(" \t\r\n;)=+-,}#")


class DefinitionError(ValueError):
    """Lexical, syntactic or semantic error with a 1-based line and column."""

    def __init__(self, message: str, line: int, col: int, source: str | None = None):
        self.message = message
        self.line = line
        self.col = col
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{col}: {message}")


# --------------------------------------------------------------------------
# data model
# --------------------------------------------------------------------------


@dataclass
class Equation:
    lhs: tuple
    rhs: object  # dict name -> Poly (vector blocks) or Poly (form blocks)
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass
class Block:
    kind: str
    degree: int | None = None
    equations: list = field(default_factory=list)
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    @property
    def targets(self) -> set:
        out = set()
        for eq in self.equations:
            if isinstance(eq.rhs, dict):
                out.update(eq.rhs)
        return out


@dataclass
class Declaration:
    kind: str  # "algebra" or "module"
    name: str
    basis: tuple
    blocks: list = field(default_factory=list)
    over: str | None = None  # algebra a module refers to
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def blocks_of(self, kind: str) -> list:
        return [b for b in self.blocks if b.kind == kind]


@dataclass
class DefinitionFile:
    params: list = field(default_factory=list)
    declarations: list = field(default_factory=list)
    source: str | None = field(default=None, compare=False)

    def algebras(self) -> list:
        return [d for d in self.declarations if d.kind == "algebra"]

    def modules(self) -> list:
        return [d for d in self.declarations if d.kind == "module"]

    def find(self, name: str):
        for d in self.declarations:
            if d.name == name:
                return d
        return None


# --------------------------------------------------------------------------
# lexer
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^(){};=,])")


@dataclass
class Token:
    kind: str  # num, name, op, eof
    text: str
    line: int
    col: int

    def as_expr(self):
        return (self.kind, self.text, self)


def tokenize(text: str, source: str | None = None) -> list:
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m:
            raise DefinitionError(f"unexpected character {ch!r}", line, col, source)
        kind = m.lastgroup
        word = m.group()
        end = m.end()
        if kind == "name" and end < n and text[end] == "*":
            after = text[end + 1] if end + 1 < n else " "
            if after in _DUAL_FOLLOW:
                word += "*"
                end += 1
        toks.append(Token(kind, word, line, col))
        col += end - i
        i = end
    toks.append(Token("eof", "", line, col))
    return toks


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _block_variables(kind: str, degree: int | None) -> set:
    if kind in ("product", "bracket", "laction", "raction"):
        return {"D", "L"}
    if kind == "cochain":
        return {"D"} | {f"L{k}" for k in range(1, degree)}
    if kind == "form":
        return {"L"}
    if kind == "map":
        return {"D"}
    return set()


class _Parser:
    def __init__(self, text: str, source: str | None, context: DefinitionFile | None):
        self.toks = tokenize(text, source)
        self.i = 0
        self.source = source
        self.context = context
        self.out = DefinitionFile(source=source)
        if context is not None:
            self.params = list(context.params)
        else:
            self.params = []

    # token helpers
    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise DefinitionError(msg, tok.line, tok.col, self.source)

    def expect(self, text: str) -> Token:
        tok = self.take()
        if tok.text != text or tok.kind not in ("op", "name"):
            self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def is_kw(self, tok: Token, *words) -> bool:
        return tok.kind == "name" and tok.text in words

    # grammar
    def parse_file(self) -> DefinitionFile:
        while self.peek().kind != "eof":
            tok = self.peek()
            if self.is_kw(tok, "param"):
                self.parse_param()
            elif self.is_kw(tok, "algebra", "module"):
                self.out.declarations.append(self.parse_decl())
            else:
                self.error(f"expected 'param', 'algebra' or 'module', found {tok.text!r}")
        self.out.params = list(dict.fromkeys(self.out.params))
        return self.out

    def parse_param(self):
        self.take()
        while True:
            tok = self.take()
            if tok.kind != "name" or tok.text in KEYWORDS or tok.text.endswith("*"):
                self.error("expected a parameter name", tok)
            if is_reserved(tok.text) or tok.text.startswith("_"):
                self.error(f"{tok.text!r} is a reserved indeterminate", tok)
            self.params.append(tok.text)
            self.out.params.append(tok.text)
            nxt = self.take()
            if nxt.text == ";":
                return
            if nxt.text != ",":
                self.error("expected ',' or ';' in parameter list", nxt)

    def parse_decl(self) -> Declaration:
        kw = self.take()
        name = self.take()
        if name.kind != "name" or name.text in KEYWORDS or name.text.endswith("*"):
            self.error("expected a declaration name", name)
        self.expect("{")
        basis = None
        decl = Declaration(kw.text, name.text, (), line=kw.line, col=kw.col)
        if kw.text == "module":
            host = self._host_algebra()
            if host is None:
                self.error("a module needs an algebra declared before it", kw)
            decl.over = host.name
        while True:
            tok = self.peek()
            if tok.text == "}" and tok.kind == "op":
                self.take()
                break
            if tok.kind == "eof":
                self.error("missing '}'", tok)
            if self.is_kw(tok, "param"):
                self.parse_param()
            elif self.is_kw(tok, "basis"):
                if basis is not None:
                    self.error("basis declared twice", tok)
                basis = self.parse_basis()
                decl.basis = basis
            elif self.is_kw(tok, *BLOCKS):
                if basis is None:
                    self.error("declare the basis before any block", tok)
                decl.blocks.append(self.parse_block(decl))
            else:
                self.error(f"expected 'basis' or a block keyword, found {tok.text!r}", tok)
        if basis is None:
            self.error(f"{decl.kind} {decl.name!r} has no basis", kw)
        self._check_kinds(decl, kw)
        return decl

    def _check_kinds(self, decl: Declaration, kw: Token):
        allowed = {"algebra": {"product", "bracket", "cochain", "form", "map"},
                   "module": {"laction", "raction"}}[decl.kind]
        for b in decl.blocks:
            if b.kind not in allowed:
                raise DefinitionError(f"block {b.kind!r} is not allowed in a {decl.kind}", b.line, b.col, self.source)
        if decl.blocks_of("product") and decl.blocks_of("bracket"):
            b = decl.blocks_of("bracket")[0]
            raise DefinitionError("an algebra has either a product or a bracket", b.line, b.col, self.source)

    def _host_algebra(self):
        for d in reversed(self.out.declarations):
            if d.kind == "algebra":
                return d
        if self.context is not None:
            algs = self.context.algebras()
            if algs:
                return algs[-1]
        return None

    def parse_basis(self) -> tuple:
        self.take()
        names = []
        while True:
            tok = self.take()
            if tok.text == ";" and tok.kind == "op":
                break
            if tok.kind != "name" or tok.text in KEYWORDS:
                self.error("expected a basis name", tok)
            base = tok.text.rstrip("*")
            if is_reserved(base) or tok.text in self.params or base.startswith("_"):
                self.error(f"{tok.text!r} cannot be a basis name", tok)
            if tok.text in names:
                self.error(f"duplicate basis name {tok.text!r}", tok)
            names.append(tok.text)
        if not names:
            self.error("a basis needs at least one name")
        return tuple(names)

    def parse_block(self, decl: Declaration) -> Block:
        kw = self.take()
        degree = None
        if kw.text == "cochain":
            d = self.take()
            if d.kind != "num" or "/" in d.text or int(d.text) < 1:
                self.error("cochain needs a positive integer degree", d)
            degree = int(d.text)
        block = Block(kw.text, degree, line=kw.line, col=kw.col)
        seen = set()
        while True:
            tok = self.peek()
            if tok.kind == "eof" or (tok.kind == "op" and tok.text == "}") or self.is_kw(tok, *KEYWORDS):
                return block
            eq = self.parse_equation(decl, block)
            if eq.lhs in seen:
                self.error(f"duplicate entry for {' '.join(eq.lhs)}", Token("name", "", eq.line, eq.col))
            seen.add(eq.lhs)
            block.equations.append(eq)

    def _lhs_spaces(self, decl: Declaration, block: Block):
        """Allowed names for each left-hand slot, and the allowed targets."""
        own = set(decl.basis)
        if block.kind in ("product", "bracket"):
            return [own, own], own, "algebra"
        if block.kind in ("laction", "raction"):
            host = self.out.find(decl.over) or (self.context.find(decl.over) if self.context else None)
            return [set(host.basis), own], own, "module"
        if block.kind == "cochain":
            targets = own | {n + "*" for n in decl.basis}
            for m in self._modules():
                targets |= set(m.basis)
            return [own] * block.degree, targets, "cochain"
        if block.kind == "form":
            return [own, own], set(), "form"
        if block.kind == "map":
            return [own], own | {n + "*" for n in decl.basis}, "map"
        raise AssertionError(block.kind)

    def _modules(self):
        mods = list(self.out.modules())
        if self.context is not None:
            mods += self.context.modules()
        return mods

    def parse_equation(self, decl: Declaration, block: Block) -> Equation:
        slots, targets, role = self._lhs_spaces(decl, block)
        first = self.peek()
        lhs = []
        while not (self.peek().kind == "op" and self.peek().text == "="):
            tok = self.take()
            if tok.kind != "name":
                self.error(f"expected a basis name or '=', found {tok.text or 'end of input'!r}", tok)
            lhs.append(tok)
        if len(lhs) != len(slots):
            self.error(f"{block.kind} entries take {len(slots)} basis name(s), found {len(lhs)}", first)
        for tok, allowed in zip(lhs, slots):
            if tok.text not in allowed:
                self.error(f"undeclared basis name {tok.text!r}", tok)
        self.take()  # '='
        variables = _block_variables(block.kind, block.degree)
        found_targets: list = []

        def resolve(name, extok):
            tok = extok[2]
            if name in targets:
                found_targets.append((name, tok))
                return var(name)
            if name in self.params:
                return var(name)
            if name in variables:
                return var(name)
            if is_reserved(name):
                raise DefinitionError(f"indeterminate {name!r} is not permitted in a {block.kind} block",
                                      tok.line, tok.col, self.source)
            if name.endswith("*") or name in decl.basis:
                raise DefinitionError(f"{name!r} is not a valid value here", tok.line, tok.col, self.source)
            raise DefinitionError(f"undeclared name {name!r}", tok.line, tok.col, self.source)

        start = self.i
        end = start
        while not (self.toks[end].kind == "op" and self.toks[end].text == ";"):
            if self.toks[end].kind == "eof" or (self.toks[end].kind == "op" and self.toks[end].text in "{}="):
                self.error("expected ';' to end the equation", self.toks[end])
            end += 1
        expr_toks = [t.as_expr() for t in self.toks[start:end]] + [("eof", "", self.toks[end])]
        if len(expr_toks) == 1:
            self.error("empty right-hand side", self.toks[end])
        ep = ExprParser(expr_toks, resolve)
        try:
            poly = ep.parse_sum()
            if ep.peek()[0] != "eof":
                ep.error(f"unexpected {ep.peek()[1]!r}")
        except PolyParseError as exc:
            tok = expr_toks[min(ep.i, len(expr_toks) - 1)][2]
            pos_tok = exc.pos if isinstance(exc.pos, Token) else tok
            msg = str(exc).split(": ", 1)[-1]
            raise DefinitionError(msg, pos_tok.line, pos_tok.col, self.source) from None
        self.i = end + 1
        rhs = self._split_linear(poly, targets, role, first)
        if role == "cochain" and isinstance(rhs, dict) and rhs:
            fams = {_family(n, decl) for n in rhs}
            if len(fams) > 1:
                self.error("cochain values mix different target modules", first)
        return Equation(tuple(t.text for t in lhs), rhs, first.line, first.col)

    def _split_linear(self, poly: Poly, targets: set, role: str, tok: Token):
        if role == "form":
            return poly
        out: dict = {}
        for mono, c in poly.terms():
            names = [(v, e) for v, e in mono if v in targets]
            if len(names) != 1 or names[0][1] != 1:
                self.error("right-hand side must be linear in the basis names", tok)
            rest = tuple((v, e) for v, e in mono if v not in targets)
            out[names[0][0]] = out.get(names[0][0], Poly({})) + Poly({rest: c})
        return {k: v for k, v in out.items() if v}


def _family(name: str, decl: Declaration) -> str:
    if name in decl.basis:
        return "adjoint"
    if name.endswith("*") and name[:-1] in decl.basis:
        return "dual"
    return "module"


def parse_definition(text: str, source: str | None = None, context: DefinitionFile | None = None) -> DefinitionFile:
    """Parse definition text.  ``context`` supplies params and algebras for
    auxiliary files (cochains, maps) that refer to a main file."""
    return _Parser(text, source, context).parse_file()


def parse_file(path: str, context: DefinitionFile | None = None) -> DefinitionFile:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_definition(text, source=path, context=context)


# --------------------------------------------------------------------------
# renderer
# --------------------------------------------------------------------------


def render_rhs(rhs, order) -> str:
    if isinstance(rhs, Poly):
        return str(rhs)
    names = [n for n in order if n in rhs] + sorted(n for n in rhs if n not in order)
    vec = tuple(rhs[n] for n in names)
    return format_vector(vec, names)


def render(defn: DefinitionFile) -> str:
    """Canonical text; ``parse(render(parse(x))) == parse(x)``."""
    out = []
    if defn.params:
        out.append(f"param {', '.join(defn.params)};")
        out.append("")
    for d in defn.declarations:
        out.append(f"{d.kind} {d.name} {{")
        out.append(f"  basis {' '.join(d.basis)};")
        order = list(dict.fromkeys(list(d.basis) + [n + "*" for n in d.basis]))
        for b in d.blocks:
            head = b.kind if b.degree is None else f"{b.kind} {b.degree}"
            out.append(f"  {head}")
            for eq in b.equations:
                out.append(f"    {' '.join(eq.lhs)} = {render_rhs(eq.rhs, order)};")
        out.append("}")
        out.append("")
    return "\n".join(out).rstrip() + "\n"
