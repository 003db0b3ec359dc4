"""Command-line front end.

Every subcommand is a thin wrapper around one library call.  Exit status is
0 on success, 1 on a domain error or malformed input and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from gradekit import __version__
from gradekit.autos import AlgebraMap
from gradekit.catalog import ENTRIES, build_entry, standard_K_list
from gradekit.errors import ConductorTooSmall, GradeKitError, Inconclusive
from gradekit.exactmath import ScalarMatrix
from gradekit.gradings import (
    NotGroupIndexable,
    diag_group,
    displayed,
    fingerprint,
    grade_by,
    hierarchy_dot,
    is_finest,
    profile_string,
    universal_group,
    verify_grading,
)
from gradekit.liealg import (
    MatrixLieAlgebra,
    ideal_decomposition,
    jacobi_holds,
    killing_matrix,
    make_orthogonal,
    make_sl,
    make_symplectic,
)
from gradekit.realforms import (
    fixed_point_form,
    fundamental_method,
    identity_map,
    killing_inertia,
    make_antiauto,
    real_basis_method,
)
from gradekit.serialize import (
    algebra_from_json,
    algebra_to_json,
    dumps,
    generators_from_json,
    generators_to_json,
    grading_from_json,
    grading_to_json,
    loads,
    matrix_from_json,
    matrix_to_json,
)

DEFAULT_CONDUCTOR = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


class Session:
    """Working conductor and output mode shared by one invocation."""

    def __init__(self, conductor: int | None, as_json: bool, out):
        self.explicit = conductor is not None
        if conductor is None:
            env = os.environ.get("GRADEKIT_CONDUCTOR", "")
            if env:
                try:
                    conductor = int(env)
                except ValueError:
                    raise UsageError(f"GRADEKIT_CONDUCTOR must be an integer, got {env!r}")
                self.explicit = True
            else:
                conductor = DEFAULT_CONDUCTOR
        if conductor < 1:
            raise UsageError("conductor must be a positive integer")
        self.conductor = conductor
        self.json = as_json
        self.out = out

    def read(self, path: str) -> dict:
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise GradeKitError(f"{path}: {e.strerror}") from None
        try:
            return loads(text)
        except GradeKitError as e:
            raise GradeKitError(f"{path}: {e}") from None

    def target(self):
        """Conductor to read files into: only when set explicitly."""
        return self.conductor if self.explicit else None

    def grading(self, path):
        return grading_from_json(self.read(path), self.target())

    def generators(self, path):
        return generators_from_json(self.read(path), self.target())

    def emit(self, doc: dict, text: str, out_path: str | None = None, payload=None):
        """Print the JSON report or the text; write ``payload`` to ``out_path``."""
        if out_path:
            Path(out_path).write_text(dumps(payload if payload is not None else doc))
        if self.json:
            self.out.write(dumps(doc))
        else:
            self.out.write(text if text.endswith("\n") else text + "\n")


# ------------------------------------------------------------------ helpers

def _K_from(session: Session, ref: str, m: int, conductor: int) -> ScalarMatrix:
    for name, Kmat, _ in standard_K_list(m, conductor):
        if name == ref:
            return Kmat
    if Path(ref).exists():
        return matrix_from_json(session.read(ref), conductor)
    names = ", ".join(n for n, _, _ in standard_K_list(m))
    raise GradeKitError(f"K must be a matrix file or one of: {names}")


def _compose(L: MatrixLieAlgebra, gens: list[AlgebraMap]) -> AlgebraMap:
    h = identity_map(L)
    for g in gens:
        h = h.compose(g)
    return h


def _group_doc(U):
    if isinstance(U, NotGroupIndexable):
        return {"indexable": False, "witness": list(U.witness)}
    return {"indexable": True, "free_rank": U.free_rank, "torsion": list(U.torsion),
            "description": U.describe(), "labels": [list(x) for x in U.labels]}


def _fingerprint_doc(fp):
    group = fp.group[0] if fp.group[0] == "non-indexable" else \
        {"free_rank": fp.group[0], "torsion": list(fp.group[1])}
    return {"profile": [[d, c] for d, c in fp.profile], "group": group,
            "bracket_degrees": [list(t) for t in fp.bracket_degrees],
            "summary": fp.describe()}


def _verify_doc(G):
    rep = verify_grading(G)
    return {"ok": rep.ok, "direct": rep.direct, "violations": list(rep.violations)}


# -------------------------------------------------------------- subcommands

def cmd_algebra(s: Session, a) -> int:
    if a.type == "sl":
        L = make_sl(a.m, s.conductor)
    else:
        default = "identity" if a.type == "o" else "symplectic"
        Kmat = _K_from(s, a.K or default, a.m, s.conductor)
        L = make_orthogonal(Kmat) if a.type == "o" else make_symplectic(Kmat)
    doc = algebra_to_json(L)
    info = {"algebra": doc, "jacobi": jacobi_holds(L),
            "killing_rank": killing_matrix(L).rank()}
    lines = [f"{L.name}: dimension {L.dim}, {L.m} x {L.m} matrices, conductor {L.field.n}",
             f"Jacobi identity: {'holds' if info['jacobi'] else 'FAILS'}",
             f"Killing form rank: {info['killing_rank']}"]
    if a.ideals:
        dims = [I.dim for I in ideal_decomposition(L)]
        info["ideal_dims"] = dims
        lines.append("simple ideals: " + " + ".join(map(str, dims)))
    s.emit(info, "\n".join(lines), a.output, doc)
    return 0


def cmd_catalog(s: Session, a) -> int:
    if a.list or not a.entry:
        rows = [{"name": e.name, "profile": e.expected_profile, "source": e.source,
                 "description": e.description} for e in ENTRIES.values()]
        text = "\n".join(f"{r['name']:28} {r['profile']:26} {r['description']}" for r in rows)
        s.emit({"entries": rows}, text)
        return 0
    G, gens, cands = build_entry(a.entry, s.conductor)
    doc = {"entry": a.entry, "profile": profile_string(G)}
    lines = [f"{a.entry}: {profile_string(G)}"]
    if a.verify:
        v = _verify_doc(G)
        doc["verify"] = v
        lines.append("verify_grading: " + ("pass" if v["ok"] else "FAIL"))
        lines.extend("  " + x for x in v["violations"])
    if a.generators_out:
        if gens is None:
            raise GradeKitError(f"catalog entry {a.entry} is given by explicit subspaces")
        payload = generators_to_json(G.algebra, gens, cands)
        Path(a.generators_out).write_text(dumps(payload))
    s.emit(doc, "\n".join(lines), a.output, grading_to_json(G))
    return 0


def cmd_grade(s: Session, a) -> int:
    L, gens, cands = s.generators(a.generators)
    G = grade_by(L, gens, cands)
    doc = grading_to_json(G)
    v = _verify_doc(G)
    report = {"profile": profile_string(G), "verify": v}
    lines = [f"{L.name}: {profile_string(G)}",
             "verify_grading: " + ("pass" if v["ok"] else "FAIL")]
    if v["ok"]:
        fp = fingerprint(G)
        report["fingerprint"] = _fingerprint_doc(fp)
        lines.append("fingerprint: " + fp.describe())
    report["grading"] = doc
    s.emit(report, "\n".join(lines), a.output, doc)
    return 0


def cmd_verify(s: Session, a) -> int:
    G = s.grading(a.grading)
    v = _verify_doc(G)
    v["profile"] = profile_string(G)
    v["finest"] = is_finest(G)
    lines = [f"{profile_string(G)}: " + ("pass" if v["ok"] else "FAIL")]
    lines.extend("  " + x for x in v["violations"])
    s.emit(v, "\n".join(lines))
    return 0


def cmd_ugroup(s: Session, a) -> int:
    G = s.grading(a.grading)
    U = universal_group(G)
    doc = _group_doc(U)
    if isinstance(U, NotGroupIndexable):
        text = f"not group-indexable: subspaces {U.witness[0]} and {U.witness[1]} are forced equal"
    else:
        text = "universal group: " + U.describe() + "\n" + "\n".join(
            f"  L{j}: {lab}" for j, lab in enumerate(U.labels))
    s.emit(doc, text)
    return 0


def cmd_diag(s: Session, a) -> int:
    G = s.grading(a.grading)
    D = diag_group(G)
    doc = {"free_rank": D.free_rank, "torsion": list(D.torsion),
           "characters": [list(c) for c in D.characters],
           "generators": [[str(v) for v in vals] for vals in D.values]}
    lines = [f"Diag: torus rank {D.free_rank}, torsion {list(D.torsion) or 'none'}"]
    for i, vals in enumerate(D.values):
        lines.append(f"  g{i}: " + ", ".join(str(v) for v in vals))
    s.emit(doc, "\n".join(lines))
    return 0


def cmd_fingerprint(s: Session, a) -> int:
    fps = [(p, fingerprint(s.grading(p))) for p in a.gradings]
    doc = {"fingerprints": [dict(file=p, **_fingerprint_doc(fp)) for p, fp in fps]}
    lines = [f"{p}: {fp.describe()}" for p, fp in fps]
    if len(fps) > 1:
        same = all(fp == fps[0][1] for _, fp in fps)
        doc["all_equal"] = same
        lines.append("fingerprints " + ("agree" if same else "differ"))
    s.emit(doc, "\n".join(lines))
    return 0


def cmd_displayed(s: Session, a) -> int:
    G = s.grading(a.grading)
    m = G.algebra.m
    if a.search:
        want = "symmetric" if a.kind in ("orthogonal", "o") else "antisymmetric"
        rows = []
        for name, Kmat, kind in standard_K_list(m, G.algebra.field.n):
            if kind != want:
                continue
            H = displayed(G, Kmat, a.kind)
            rows.append({"K": name, "result": profile_string(H) if H else None})
        text = "\n".join(f"{r['K']:20} {r['result'] or 'absent'}" for r in rows)
        s.emit({"search": rows}, text)
        return 0
    if not a.K:
        raise UsageError("displayed: give --K or --search")
    Kmat = _K_from(s, a.K, m, G.algebra.field.n)
    H = displayed(G, Kmat, a.kind)
    if H is None:
        s.emit({"displayed": None}, "absent: the subalgebra is not a sum of grading intersections")
        return 0
    doc = grading_to_json(H)
    s.emit({"displayed": doc, "profile": profile_string(H)},
           f"{H.algebra.name}: {profile_string(H)}", a.output, doc)
    return 0


def cmd_realform(s: Session, a) -> int:
    if a.mode == "fixed":
        doc = s.read(a.input)
        if doc.get("kind") == "grading":
            L = grading_from_json(doc, s.target()).algebra
        elif doc.get("kind") == "generators":
            L = generators_from_json(doc, s.target())[0]
        else:
            L = algebra_from_json(doc, s.target())
        h = _compose(L, s.generators(a.h)[1]) if a.h else None
        J = make_antiauto(L, h)
        R = fixed_point_form(J)
        p, q, z = killing_inertia(R)
        out = {"dimension": R.dim, "killing_signature": [p, q], "radical": z,
               "basis": [matrix_to_json(M) for M in R.matrices()]}
        s.emit(out, f"real form of {L.name}: dimension {R.dim}, Killing signature ({p}, {q})"
               + (f", radical {z}" if z else ""))
        return 0
    if a.mode == "fundamental":
        G = s.grading(a.input)
        L = G.algebra
        h = _compose(L, s.generators(a.h)[1]) if a.h else None
        H = fundamental_method(G, make_antiauto(L, h))
        if H is None:
            s.emit({"real_grading": None}, "absent: some grading subspace lacks a J-fixed basis")
            return 0
        U = universal_group(H)
        out = {"real_grading": {"profile": profile_string(H), "verify": _verify_doc(H),
                                "group": _group_doc(U)}}
        s.emit(out, f"real grading: {profile_string(H)}, "
               f"verify {'pass' if verify_grading(H).ok else 'FAIL'}, group {U.describe()}")
        return 0
    # realbasis
    L, gens, _ = s.generators(a.input)
    if not a.h:
        raise UsageError("realform realbasis: --h is required")
    h = _compose(L, s.generators(a.h)[1])
    try:
        ok = real_basis_method(gens, h, a.order_bound)
    except Inconclusive as e:
        s.emit({"member": None, "reason": str(e)}, f"inconclusive: {e}")
        return 1
    s.emit({"member": ok}, "h lies in the generated group" if ok
           else "h does not lie in the generated group")
    return 0


def cmd_hierarchy(s: Session, a) -> int:
    gs = {Path(p).stem: s.grading(p) for p in a.gradings}
    dot = hierarchy_dot(gs)
    if a.output:
        Path(a.output).write_text(dot)
    if s.json:
        s.out.write(dumps({"dot": dot}))
    elif not a.output:
        s.out.write(dot)
    return 0


# ------------------------------------------------------------------- parser

def _file_arg(q, name: str, help: str) -> None:
    """A required input file, given positionally or as --name."""
    q.add_argument(f"{name}_pos", nargs="?", metavar=name.upper(), help=help)
    q.add_argument(f"--{name}", dest=f"{name}_opt", metavar="FILE", help=help)


def _resolve_files(args) -> None:
    for name in ("grading", "generators"):
        if hasattr(args, f"{name}_pos"):
            value = getattr(args, f"{name}_opt") or getattr(args, f"{name}_pos")
            if value is None:
                raise UsageError(f"gradekit {args.command}: a {name} file is required")
            setattr(args, name, value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable JSON output")
    common.add_argument("--conductor", type=int, default=argparse.SUPPRESS, metavar="N",
                        help="working cyclotomic conductor (default 4 or $GRADEKIT_CONDUCTOR)")
    p = _Parser(prog="gradekit", parents=[common],
                description="Exact gradings of matrix Lie algebras.")
    p.add_argument("--version", action="version", version=f"gradekit {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    q = sub.add_parser("algebra", parents=[common], help="construct sl, o_K or sp_K")
    q.add_argument("type", choices=["sl", "o", "sp"])
    q.add_argument("m", type=int)
    q.add_argument("--K", help="standard K name or matrix file (o, sp)")
    q.add_argument("--ideals", action="store_true", help="also split into simple ideals")
    q.add_argument("-o", "--output", help="write the algebra document here")
    q.set_defaults(func=cmd_algebra)

    q = sub.add_parser("catalog", parents=[common], help="list or build catalog entries")
    q.add_argument("--list", action="store_true")
    q.add_argument("--entry", help="entry name, e.g. sl4.pauli")
    q.add_argument("--verify", action="store_true")
    q.add_argument("-o", "--output", help="write the grading document here")
    q.add_argument("--generators-out", help="write the generator document here")
    q.set_defaults(func=cmd_catalog)

    q = sub.add_parser("grade", parents=[common], help="grade by a generator file")
    _file_arg(q, "generators", "generator document")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_grade)

    for name, func, hlp in (("verify", cmd_verify, "check the grading axioms"),
                            ("ugroup", cmd_ugroup, "universal grading group"),
                            ("diag", cmd_diag, "Diag group of a grading")):
        q = sub.add_parser(name, parents=[common], help=hlp)
        _file_arg(q, "grading", "grading document")
        q.set_defaults(func=func)

    q = sub.add_parser("fingerprint", parents=[common], help="equivalence invariants")
    q.add_argument("gradings", nargs="+")
    q.set_defaults(func=cmd_fingerprint)

    q = sub.add_parser("displayed", parents=[common], help="restrict to o_K or sp_K")
    _file_arg(q, "grading", "grading document of sl(m)")
    q.add_argument("--kind", choices=["orthogonal", "o", "symplectic", "sp"], required=True)
    q.add_argument("--K", help="standard K name or matrix file")
    q.add_argument("--search", action="store_true", help="try every standard K of this kind")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_displayed)

    q = sub.add_parser("realform", parents=[common], help="real forms and real gradings")
    q.add_argument("mode", choices=["fixed", "fundamental", "realbasis"])
    q.add_argument("input", help="algebra/grading/generator document")
    q.add_argument("--h", help="generator document; h is the product of its generators")
    q.add_argument("--order-bound", type=int, default=4096)
    q.set_defaults(func=cmd_realform)

    q = sub.add_parser("hierarchy", parents=[common], help="DOT graph of the refinement order")
    q.add_argument("gradings", nargs="+")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_hierarchy)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_help(out)
            return 2
        _resolve_files(args)
        session = Session(getattr(args, "conductor", None), getattr(args, "json", False), out)
        return args.func(session, args)
    except UsageError as e:
        err.write(f"{e}\n")
        return 2
    except ConductorTooSmall as e:
        err.write(f"error: {e}; rerun with --conductor set to a multiple of {e.needed}\n")
        return 1
    except GradeKitError as e:
        err.write(f"error: {e}\n")
        return 1
    except SystemExit as e:  # --help and --version
        return int(e.code or 0)


def main() -> None:
    sys.exit(run())
