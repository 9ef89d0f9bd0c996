"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails (residuals are
printed), 2 on input errors (diagnostics carry ``file:line:col``).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from itertools import product as iproduct

from . import algebra as alg
from . import cohomology as coh
from . import deformation as dfm
from . import representations as reps
from . import tstar as ts
from .core import LambdaMap, ModuleMap, StructureError, format_vector
from .loader import (
    InputError,
    load_cochains,
    load_form,
    load_lie,
    load_lsc,
    load_map,
    load_module,
    resolve_space,
)
from .parser import DefinitionError, parse_file
from .polyring import Poly, PolyParseError
from .report import CheckFailed, Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class Outcome:
    command: str
    report: Report
    sections: list = field(default_factory=list)  # (title, [lines])
    data: dict = field(default_factory=dict)
    index_names: tuple = ()
    value_names: tuple = ()

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.report.passed else EXIT_FAIL


# --------------------------------------------------------------------------
# formatting
# --------------------------------------------------------------------------


def fmt_value(value, names) -> str:
    if isinstance(value, Poly):
        return str(value)
    if names and len(value) == len(names):
        return format_vector(tuple(value), names)
    return "(" + ", ".join(str(p) for p in value) + ")"


def fmt_index(index, names) -> str:
    if names and all(isinstance(i, int) and 0 <= i < len(names) for i in index):
        return " ".join(names[i] for i in index)
    return " ".join(str(i) for i in index)


def table_lines(table: LambdaMap, left, right, out) -> list:
    lines = []
    for i, j in iproduct(range(table.left_rank), range(table.right_rank)):
        v = table.entry(i, j)
        if any(v):
            lines.append(f"{left[i]} {right[j]} = {format_vector(v, out)};")
    return lines or ["(all entries zero)"]


def cochain_lines(c: coh.Cochain, names, out) -> list:
    lines = []
    for idx in c.tuples():
        v = c.entry(idx)
        if any(v):
            lines.append(f"{' '.join(names[i] for i in idx)} = {format_vector(v, out)};")
    return lines or ["(zero cochain)"]


def map_lines(phi: ModuleMap, names, out) -> list:
    return [f"{names[i]} -> {format_vector(v, out)}" for i, v in enumerate(phi.images)]


def form_lines(B: ts.ConformalBilinearForm, names) -> list:
    return ["[" + ", ".join(str(B.entry(i, j)) for j in range(B.rank)) + "]" for i in range(B.rank)] + [
        f"basis order: {' '.join(names)}"]


def _jsonable(x):
    if isinstance(x, Poly):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def to_document(o: Outcome) -> dict:
    return {
        "command": o.command,
        "passed": o.report.passed,
        "exit_code": o.exit_code,
        "checks": dict(o.report.checks),
        "residuals": [
            {"check": r.check, "index": fmt_index(r.index, o.index_names),
             "value": fmt_value(r.value, o.value_names)}
            for r in o.report.residuals
        ],
        "tables": {title: lines for title, lines in o.sections},
        "data": _jsonable(o.data),
    }


def to_text(o: Outcome) -> str:
    out = [f"{o.command}: {'PASS' if o.report.passed else 'FAIL'}"]
    for name, ok in o.report.checks.items():
        out.append(f"  {name}: {'pass' if ok else 'FAIL'}")
    for title, lines in o.sections:
        out.append(f"{title}:")
        out.extend(f"  {line}" for line in lines)
    for k, v in o.data.items():
        out.append(f"{k}: {_jsonable(v)}")
    if o.report.residuals:
        out.append("residuals:")
        for r in o.report.residuals:
            out.append(f"  {r.check} [{fmt_index(r.index, o.index_names)}]: {fmt_value(r.value, o.value_names)}")
    return "\n".join(out)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _main(args):
    return parse_file(args.file)


def _need(args, attr, flag):
    val = getattr(args, attr, None)
    if not val:
        raise InputError(f"{args.command} needs {flag}")
    return val


def _rep_for(args, A, defn):
    module = None
    if defn.modules():
        module = load_module(defn, A)
    return module


def _first_cochain(args, defn, A, want=None, attr="cochain", flag="--cochain"):
    module = _rep_for(args, A, defn) if not isinstance(A, alg.LieConformalAlgebra) else None
    return load_cochains(_need(args, attr, flag), defn, A, want or getattr(args, "rep", None), module)[0]


def cmd_check_lsc(args):
    A = load_lsc(_main(args))
    return Outcome("check-lsc", alg.check_lsc_axioms(A), index_names=A.names, value_names=A.names)


def cmd_check_lie(args):
    R = load_lie(_main(args))
    return Outcome("check-lie", alg.check_lie_axioms(R), index_names=R.names, value_names=R.names)


def cmd_sub_adjacent(args):
    A = load_lsc(_main(args))
    rep = Report("sub-adjacent")
    rep.merge(alg.check_lsc_axioms(A))
    g = alg.sub_adjacent(A)
    rep.merge(alg.check_lie_axioms(g))
    return Outcome("sub-adjacent", rep, [("bracket", table_lines(g.bracket_table, A.names, A.names, A.names))],
                   index_names=A.names, value_names=A.names)


def cmd_check_module(args):
    defn = _main(args)
    A = load_lsc(defn)
    M = load_module(defn, A)
    rep = Report("check-module")
    rep.merge(alg.check_lsc_axioms(A))
    rep.merge(reps.check_module(M))
    return Outcome("check-module", rep, index_names=(), value_names=M.module.basis_names)


def _rep_outcome(name, A, R: reps.RepPair):
    m = R.module.basis_names
    sections = [("l", table_lines(R.l, A.names, m, m)), ("r", table_lines(R.r, A.names, m, m))]
    return Outcome(name, reps.check_module(R), sections, value_names=m)


def cmd_adjoint(args):
    A = load_lsc(_main(args))
    return _rep_outcome("adjoint", A, reps.adjoint_rep(A))


def cmd_coadjoint(args):
    A = load_lsc(_main(args))
    R = reps.dual_left_rep(A) if args.dual_left else reps.coadjoint_rep(A)
    return _rep_outcome("coadjoint", A, R)


def _named_rep(args, A, defn):
    want = args.rep or ("module" if defn.modules() else "adjoint")
    if want == "module":
        return load_module(defn, A)
    return resolve_space(A, None, want)


def cmd_semidirect(args):
    defn = _main(args)
    A = load_lsc(defn)
    R = _named_rep(args, A, defn)
    S = alg.LscAlgebra(A.module + R.module, reps.semidirect_table(A, R), check=False)
    rep = Report("semidirect")
    rep.merge(reps.check_module(R), prefix="module-")
    rep.merge(alg.check_lsc_axioms(S))
    return Outcome("semidirect", rep, [("product", table_lines(S.product, S.names, S.names, S.names))],
                   index_names=S.names, value_names=S.names)


def _space_names(space):
    return space.module.basis_names


def cmd_delta(args):
    defn = _main(args)
    A = load_lsc(defn)
    g = _first_cochain(args, defn, A)
    if g.flavor != coh.LSC:
        raise InputError("delta needs an LSC cochain")
    rep = Report("delta")
    rep.merge(coh.validate_cochain(g), prefix="input-")
    d = coh.delta_lsc(g)
    rep.merge(coh.validate_cochain(d), prefix="output-")
    names = _space_names(g.space)
    return Outcome("delta", rep, [(f"delta (degree {d.n})", cochain_lines(d, A.names, names))], value_names=names)


def _lie_algebra(defn):
    from .loader import algebra_decl, build_algebra

    return build_algebra(algebra_decl(defn))


def cmd_d_lie(args):
    defn = _main(args)
    A = _lie_algebra(defn)
    g = _first_cochain(args, defn, A, want="lie-adjoint")
    rep = Report("d-lie")
    rep.merge(coh.validate_cochain(g), prefix="input-")
    d = coh.d_lie(g)
    rep.merge(coh.validate_cochain(d), prefix="output-")
    names = _space_names(g.space)
    return Outcome("d-lie", rep, [(f"d (degree {d.n})", cochain_lines(d, A.names, names))], value_names=names)


def cmd_phi_diagram(args):
    defn = _main(args)
    A = load_lsc(defn)
    R = _named_rep(args, A, defn)
    H = reps.HomSpace(R)
    rng = random.Random(args.seed)
    rep = Report("phi-diagram")
    for n in (2, 3):
        name = f"diagram-n{n}"
        rep.checks[name] = True
        for t in range(args.trials):
            g = coh.random_cochain(H, n - 1, rng, cap=2)
            diff = coh.delta_lsc(coh.phi(g, R)) - coh.phi(coh.d_lie(g), R)
            for idx, v in diff.table.items():
                rep.add(name, (t,) + idx, v)
    return Outcome("phi-diagram", rep, data={"trials": args.trials, "seed": args.seed},
                   value_names=R.module.basis_names)


def _any_cochain(args, defn):
    A = _lie_algebra(defn)
    want = "lie-adjoint" if (args.lie or isinstance(A, alg.LieConformalAlgebra)) else None
    return A, _first_cochain(args, defn, A, want=want)


def cmd_is_cocycle(args):
    A, g = _any_cochain(args, _main(args))
    d = coh.coboundary(g)
    rep = Report("is-cocycle")
    rep.checks["cocycle"] = True
    for idx, v in d.table.items():
        rep.add("cocycle", idx, v)
    return Outcome("is-cocycle", rep, index_names=A.names, value_names=_space_names(g.space))


def cmd_solve_coboundary(args):
    A, g = _any_cochain(args, _main(args))
    eta = coh.coboundary_solve(g, args.degree_b)
    rep = Report("solve-coboundary")
    rep.checks["solvable"] = eta is not None
    names = _space_names(g.space)
    sections = []
    if eta is not None:
        rep.add("witness-verified", (), tuple(v for k in (coh.coboundary(eta) - g).table.values() for v in k))
        sections.append(("witness", cochain_lines(eta, A.names, names)))
    data = {"degree_b": args.degree_b, "result": "witness" if eta is not None else "none at this cap"}
    return Outcome("solve-coboundary", rep, sections, data, value_names=names)


def cmd_h_dim(args):
    defn = _main(args)
    A = _lie_algebra(defn)
    if isinstance(A, alg.LieConformalAlgebra) or args.lie:
        space = resolve_space(A, None, "lie-adjoint")
    else:
        space = _named_rep(args, A, defn)
    r = coh.h_dim_bounded(space, args.n, args.degree_z, args.degree_b)
    rep = Report("h-dim")
    data = {"n": r.n, "degree_z": r.degree_z, "degree_b": r.degree_b, "dim_C": r.dim_c,
            "dim_Z": r.dim_z, "dim_B_cap_Z": r.dim_b_cap_z, "estimate": r.estimate}
    names = _space_names(space)
    lines = [f"#{k + 1}: " + "; ".join(cochain_lines(z, A.names, names)) for k, z in enumerate(r.cocycle_basis)]
    return Outcome("h-dim", rep, [("cocycle basis", lines or ["(none)"])], data)


def cmd_check_deformation(args):
    defn = _main(args)
    A = load_lsc(defn)
    w = _first_cochain(args, defn, A, want="adjoint")
    return Outcome("check-deformation", dfm.check_linear_deformation(A, w), index_names=A.names,
                   value_names=A.names)


def cmd_nijenhuis(args):
    defn = _main(args)
    A = load_lsc(defn)
    N = load_map(_need(args, "map", "--map"), defn, A, dual=False)
    rep = dfm.nijenhuis_report(A, N)
    lie = dfm.lie_nijenhuis_report(A.sub_adjacent(), N)
    data = {"lie-nijenhuis": lie.passed}
    sections = [("N", map_lines(N, A.names, A.names))]
    if rep:
        B = dfm.nijenhuis_deformed(A, N)
        sections.append(("deformed product", table_lines(B.product, A.names, A.names, A.names)))
        rep.merge(alg.check_lsc_axioms(B), prefix="deformed-")
        rep.merge(alg.check_homomorphism(N, B, A), prefix="deformed-")
        rep.merge(lie, prefix="lie-")
    return Outcome("nijenhuis", rep, sections, data, index_names=A.names, value_names=A.names)


def cmd_trivial_equiv(args):
    defn = _main(args)
    A = load_lsc(defn)
    w2 = _first_cochain(args, defn, A, want="adjoint")
    w1 = dfm.zero_cochain(A)
    if args.omega1:
        w1 = load_cochains(args.omega1, defn, A, "adjoint")[0]
    N = load_map(_need(args, "map", "--map"), defn, A, dual=False)
    return Outcome("trivial-equiv", dfm.equiv_check(A, w2, w1, N), index_names=A.names, value_names=A.names)


def _thetas(args, defn, A):
    return load_cochains(_need(args, "cochain", "--cochain"), defn, A, "adjoint")


def cmd_formal_check(args):
    defn = _main(args)
    A = load_lsc(defn)
    thetas = _thetas(args, defn, A)
    rep = dfm.formal_check(A, thetas, args.order)
    return Outcome("formal-check", rep, data={"order": args.order, "theta1_cocycle": rep.data["theta1-cocycle"]},
                   index_names=A.names, value_names=A.names)


def cmd_formal_normalize(args):
    defn = _main(args)
    A = load_lsc(defn)
    thetas = _thetas(args, defn, A)
    res = dfm.formal_normalize(A, thetas, args.order, args.degree_b)
    rep = Report("formal-normalize")
    rep.checks["trivialized"] = res.trivialized
    sections = []
    if res.trivialized:
        check = dfm.formal_equiv_apply(A, thetas, res.phis, args.order)
        for m, th in enumerate(check, start=1):
            rep.add("transport-verified", (m,), tuple(v for vec in th.table.values() for v in vec))
        for m, p in enumerate(res.phis, start=1):
            sections.append((f"phi_{m}", map_lines(p, A.names, A.names)))
    else:
        sections.append((f"obstruction at order {res.obstruction_order}",
                         cochain_lines(res.obstruction, A.names, A.names)))
    return Outcome("formal-normalize", rep, sections, {"order": args.order, "degree_b": args.degree_b},
                   value_names=A.names)


def cmd_tilde_omega(args):
    defn = _main(args)
    A = load_lsc(defn)
    w = _first_cochain(args, defn, A, want="adjoint")
    wt = dfm.tilde_omega(w)
    rep = Report("tilde-omega")
    rep.merge(coh.validate_cochain(wt), prefix="output-")
    lin = dfm.check_linear_deformation(A, w)
    data = {"omega_linear_deformation": lin.passed}
    if lin:
        rep.merge(dfm.lie_deformation_check(A.sub_adjacent(), wt), prefix="lie-deformation-")
    return Outcome("tilde-omega", rep, [("omega~", cochain_lines(wt, A.names, A.names))], data,
                   value_names=A.names)


def cmd_check_bilinear(args):
    defn = _main(args)
    A = load_lsc(defn)
    B = load_form(defn)
    rep = ts.check_bilinear(B, A)
    data = {"determinant": rep.data["determinant"], "nondegenerate": rep.data["nondegenerate"]}
    if "exceptional_locus" in rep.data:
        data["exceptional_locus"] = rep.data["exceptional_locus"]
    return Outcome("check-bilinear", rep, [("form", form_lines(B, A.names))], data, index_names=A.names)


def cmd_tstar_extend(args):
    defn = _main(args)
    A = load_lsc(defn)
    w = _first_cochain(args, defn, A, want="dual-left", attr="cochain", flag="--omega")
    try:
        T = ts.tstar_extend(A, w)
    except CheckFailed as exc:
        return Outcome("tstar-extend", exc.report, index_names=A.names,
                       value_names=tuple(n + "*" for n in A.names))
    names = T.algebra.names
    sections = [("product", table_lines(T.algebra.product, names, names, names)),
                ("form", form_lines(T.form, names))]
    return Outcome("tstar-extend", T.report, sections, index_names=names, value_names=names)


def cmd_coadjoint_extend(args):
    defn = _main(args)
    A = load_lsc(defn)
    w = _first_cochain(args, defn, A, want="coadjoint", attr="cochain", flag="--omega")
    E = ts.general_coadjoint_extend(A, w)
    rep = Report("coadjoint-extend")
    rep.merge(alg.check_lsc_axioms(E))
    data = {"omega_cocycle": coh.is_cocycle(w)}
    names = E.names
    return Outcome("coadjoint-extend", rep, [("product", table_lines(E.product, names, names, names))], data,
                   index_names=names, value_names=names)


def cmd_tstar_equiv(args):
    defn = _main(args)
    A = load_lsc(defn)
    w1 = load_cochains(_need(args, "omega1", "--omega1"), defn, A, "dual-left")[0]
    w2 = load_cochains(_need(args, "omega2", "--omega2"), defn, A, "dual-left")[0]
    theta = load_map(_need(args, "theta", "--theta"), defn, A, dual=True)
    rep = ts.tstar_equiv(A, w1, w2, theta)
    duals = tuple(n + "*" for n in A.names)
    data = {"beta": [[str(rep.data["beta"].entry(i, j)) for j in range(A.rank)] for i in range(A.rank)],
            "preconditions": rep.data["preconditions"]}
    if "beta_checks" in rep.data:
        data["beta_checks"] = rep.data["beta_checks"]
    return Outcome("tstar-equiv", rep, [("theta", map_lines(theta, A.names, duals))], data,
                   index_names=A.names, value_names=duals)


def cmd_check_isometry(args):
    defn = _main(args)
    A = load_lsc(defn)
    B = load_form(defn)
    if args.target:
        tdefn = parse_file(args.target)
        A2, B2 = load_lsc(tdefn), load_form(tdefn)
        if A2.names != A.names:
            raise InputError("target algebra must use the same basis names")
    else:
        A2, B2 = A, B
    phi = load_map(_need(args, "map", "--map"), defn, A, dual=False)
    rep = ts.check_isometry(phi, A, B, A2, B2)
    return Outcome("check-isometry", rep, [("map", map_lines(phi, A.names, A2.names))],
                   index_names=A.names, value_names=A2.names)


COMMANDS = {
    "check-lsc": (cmd_check_lsc, "check the left-symmetric identity"),
    "check-lie": (cmd_check_lie, "check skew-symmetry and Jacobi for a bracket"),
    "sub-adjacent": (cmd_sub_adjacent, "print the sub-adjacent bracket"),
    "check-module": (cmd_check_module, "check a module given by laction/raction"),
    "adjoint": (cmd_adjoint, "print the adjoint module"),
    "coadjoint": (cmd_coadjoint, "print the coadjoint (or dual-left) module"),
    "semidirect": (cmd_semidirect, "semidirect product with a module"),
    "delta": (cmd_delta, "LSC coboundary of a cochain"),
    "d-lie": (cmd_d_lie, "Lie coboundary of a cochain"),
    "phi-diagram": (cmd_phi_diagram, "randomized check of delta Phi = Phi d"),
    "is-cocycle": (cmd_is_cocycle, "is the cochain a cocycle"),
    "solve-coboundary": (cmd_solve_coboundary, "find eta with coboundary eta = omega"),
    "h-dim": (cmd_h_dim, "degree-capped cohomology dimensions"),
    "check-deformation": (cmd_check_deformation, "does omega generate a linear deformation"),
    "nijenhuis": (cmd_nijenhuis, "Nijenhuis operator check"),
    "trivial-equiv": (cmd_trivial_equiv, "check id + tN between two linear deformations"),
    "formal-check": (cmd_formal_check, "order-by-order formal deformation identities"),
    "formal-normalize": (cmd_formal_normalize, "trivialize a formal deformation order by order"),
    "tilde-omega": (cmd_tilde_omega, "induced Lie 2-cochain"),
    "check-bilinear": (cmd_check_bilinear, "symmetric / invariant / non-degenerate form"),
    "tstar-extend": (cmd_tstar_extend, "T*-extension by an invariant dual cocycle"),
    "coadjoint-extend": (cmd_coadjoint_extend, "extension by a coadjoint-valued cochain"),
    "tstar-equiv": (cmd_tstar_equiv, "equivalence and isometry of two T*-extensions"),
    "check-isometry": (cmd_check_isometry, "isometric homomorphism check"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lsconformal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        s = sub.add_parser(name, help=help_text)
        s.add_argument("file", help="definition file")
        s.add_argument("--json", action="store_true", help="machine-readable output")
        s.add_argument("--degree-z", type=int, default=4, dest="degree_z")
        s.add_argument("--degree-b", type=int, default=6, dest="degree_b")
        s.add_argument("--order", type=int, default=4)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--cochain", "--omega", dest="cochain", help="cochain file")
        s.add_argument("--omega1")
        s.add_argument("--omega2")
        s.add_argument("--theta", help="map file for A -> A*")
        s.add_argument("--map", help="map file")
        s.add_argument("--target", help="second definition file")
        s.add_argument("--rep", choices=["adjoint", "coadjoint", "dual-left", "module"])
        s.add_argument("--lie", action="store_true", help="treat the algebra through its bracket")
        s.add_argument("--dual-left", action="store_true", dest="dual_left")
        s.add_argument("--n", type=int, default=1, help="cochain degree for h-dim")
        s.add_argument("--trials", type=int, default=5)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    fn = COMMANDS[args.command][0]
    try:
        outcome = fn(args)
    except (DefinitionError, PolyParseError, InputError, StructureError, CheckFailed, OSError) as exc:
        msg = str(exc)
        if getattr(args, "json", False):
            print(json.dumps({"command": args.command, "exit_code": EXIT_INPUT, "error": msg}), file=stdout)
        print(f"error: {msg}", file=stderr)
        return EXIT_INPUT
    if args.json:
        print(json.dumps(to_document(outcome), indent=2, sort_keys=True), file=stdout)
    else:
        print(to_text(outcome), file=stdout)
    return outcome.exit_code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
