"""Turn parsed definition files into engine objects."""

from __future__ import annotations

from .algebra import LieConformalAlgebra, LscAlgebra
from .cohomology import Cochain
from .core import FreeModule, LambdaMap, ModuleMap
from .parser import Declaration, DefinitionError, DefinitionFile, parse_file
from .polyring import ZERO
from .representations import RepPair, adjoint_lie_module, adjoint_rep, coadjoint_rep, dual_left_rep
from .tstar import ConformalBilinearForm


class InputError(ValueError):
    """A definition that parses but cannot be used for the requested command."""


def _vector(rhs: dict, names) -> tuple:
    idx = {n: i for i, n in enumerate(names)}
    v = [ZERO] * len(names)
    for n, p in rhs.items():
        if n not in idx:
            raise InputError(f"{n!r} is not in the target basis {tuple(names)}")
        v[idx[n]] = p
    return tuple(v)


def _table(block, left_names, right_names, out_names) -> dict:
    li = {n: i for i, n in enumerate(left_names)}
    ri = {n: i for i, n in enumerate(right_names)}
    return {(li[eq.lhs[0]], ri[eq.lhs[1]]): _vector(eq.rhs, out_names) for eq in block.equations}


def algebra_decl(defn: DefinitionFile, name: str | None = None) -> Declaration:
    algs = defn.algebras()
    if name is not None:
        d = defn.find(name)
        if d is None or d.kind != "algebra":
            raise InputError(f"no algebra named {name!r}")
        return d
    if not algs:
        raise InputError("the file declares no algebra")
    return algs[0]


def _merged(decl: Declaration, kind: str):
    blocks = decl.blocks_of(kind)
    if len(blocks) > 1:
        raise InputError(f"{decl.name} has more than one {kind} block")
    return blocks[0] if blocks else None


def build_algebra(decl: Declaration):
    """LscAlgebra (product) or LieConformalAlgebra (bracket), unchecked."""
    names = decl.basis
    n = len(names)
    module = FreeModule(names)
    br = _merged(decl, "bracket")
    if br is not None:
        return LieConformalAlgebra(module, LambdaMap(n, n, n, _table(br, names, names, names)), check=False)
    pr = _merged(decl, "product")
    table = _table(pr, names, names, names) if pr is not None else {}
    return LscAlgebra(module, LambdaMap(n, n, n, table), check=False)


def load_lsc(defn: DefinitionFile, name: str | None = None) -> LscAlgebra:
    A = build_algebra(algebra_decl(defn, name))
    if not isinstance(A, LscAlgebra):
        raise InputError("this command needs an algebra with a product block")
    return A


def load_lie(defn: DefinitionFile, name: str | None = None) -> LieConformalAlgebra:
    A = build_algebra(algebra_decl(defn, name))
    if not isinstance(A, LieConformalAlgebra):
        raise InputError("this command needs an algebra with a bracket block")
    return A


def load_module(defn: DefinitionFile, A: LscAlgebra, name: str | None = None) -> RepPair:
    mods = defn.modules()
    if name is not None:
        mods = [m for m in mods if m.name == name]
    if not mods:
        raise InputError("the file declares no module")
    decl = mods[0]
    n, m = A.rank, len(decl.basis)
    lb, rb = _merged(decl, "laction"), _merged(decl, "raction")
    l = LambdaMap(n, m, m, _table(lb, A.names, decl.basis, decl.basis) if lb else {})
    r = LambdaMap(n, m, m, _table(rb, A.names, decl.basis, decl.basis) if rb else {})
    return RepPair(A, FreeModule(decl.basis), l, r, check=False, name=decl.name)


def load_form(defn: DefinitionFile, name: str | None = None) -> ConformalBilinearForm:
    decl = algebra_decl(defn, name)
    block = _merged(decl, "form")
    if block is None:
        raise InputError(f"{decl.name} has no form block")
    idx = {n: i for i, n in enumerate(decl.basis)}
    return ConformalBilinearForm(len(decl.basis), {(idx[e.lhs[0]], idx[e.lhs[1]]): e.rhs for e in block.equations})


def aux_decl(path: str, main: DefinitionFile, A) -> Declaration:
    """Parse an auxiliary file in the context of ``main``; its algebra header must match."""
    aux = parse_file(path, context=main)
    algs = aux.algebras()
    if not algs:
        raise InputError(f"{path}: expected an algebra header")
    d = algs[0]
    if tuple(d.basis) != tuple(A.names):
        raise DefinitionError(f"basis {d.basis} does not match the algebra basis {A.names}", d.line, d.col, path)
    return d


def target_family(block, basis=()) -> str | None:
    fams = set()
    for n in block.targets:
        fams.add("dual" if n.endswith("*") and n not in basis else "plain")
    return fams.pop() if fams else None


def resolve_space(A, family: str | None, want: str | None, rep: RepPair | None = None):
    """Coefficient space for a cochain.

    ``want`` is one of ``adjoint``, ``dual-left``, ``coadjoint``, ``module``,
    ``lie-adjoint`` or None (infer from the value names).
    """
    if want is None:
        if family == "dual":
            want = "dual-left"
        elif rep is not None and family == "plain" and rep.module.basis_names != A.names:
            want = "module"
        elif isinstance(A, LieConformalAlgebra):
            want = "lie-adjoint"
        else:
            want = "adjoint"
    if want in ("dual-left", "coadjoint") and family == "plain":
        raise InputError("values must be dual basis names for this coefficient module")
    if want in ("adjoint", "lie-adjoint", "module") and family == "dual":
        raise InputError("dual values need the dual-left or coadjoint module")
    if want == "lie-adjoint":
        R = A if isinstance(A, LieConformalAlgebra) else A.sub_adjacent()
        return adjoint_lie_module(R)
    if isinstance(A, LieConformalAlgebra):
        raise InputError("LSC coefficient modules need an algebra with a product block")
    if want == "adjoint":
        return adjoint_rep(A)
    if want == "dual-left":
        return dual_left_rep(A)
    if want == "coadjoint":
        return coadjoint_rep(A)
    if want == "module":
        if rep is None:
            raise InputError("the main file declares no module")
        return rep
    raise InputError(f"unknown coefficient module {want!r}")


def _space_names(space) -> tuple:
    return space.module.basis_names


def load_cochains(path: str, main: DefinitionFile, A, want: str | None = None, rep: RepPair | None = None) -> list:
    d = aux_decl(path, main, A)
    blocks = d.blocks_of("cochain")
    if not blocks:
        raise InputError(f"{path}: no cochain block")
    out = []
    for b in blocks:
        space = resolve_space(A, target_family(b, d.basis), want, rep)
        names = _space_names(space)
        idx = {n: i for i, n in enumerate(A.names)}
        table = {tuple(idx[x] for x in eq.lhs): _vector(eq.rhs, names) for eq in b.equations}
        out.append(Cochain(space, b.degree, table))
    return out


def load_map(path: str, main: DefinitionFile, A, dual: bool | None = None) -> ModuleMap:
    """A module map ``A -> A`` or ``A -> A^{*c}`` (target inferred from the names)."""
    d = aux_decl(path, main, A)
    block = _merged(d, "map")
    if block is None:
        raise InputError(f"{path}: no map block")
    fam = target_family(block, d.basis)
    is_dual = (fam == "dual") if dual is None else dual
    if dual is not None and fam is not None and (fam == "dual") != dual:
        raise InputError("map targets do not match the expected module")
    names = tuple(n + "*" for n in A.names) if is_dual else A.names
    idx = {n: i for i, n in enumerate(A.names)}
    images = [tuple(ZERO for _ in names) for _ in A.names]
    for eq in block.equations:
        images[idx[eq.lhs[0]]] = _vector(eq.rhs, names)
    return ModuleMap(len(A.names), len(names), tuple(images))
