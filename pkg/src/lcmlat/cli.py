"""``lcmlat`` command line.

Exit status: 0 on success, 1 when the command reports a negative verdict,
2 on errors (printed to stderr as ``error[Code]: message``).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import ln as lnmod
from .complexes import FieldSpec, SimplicialComplex
from .coordinatization import (
    Labeling,
    deficit_labeling,
    eccv_labeling,
    minimal_squarefree_labeling,
    realize,
    roundtrip_check,
)
from .deformation import construct_deformation, universal_family
from .errors import LcmlatError, ParseError
from .ideals import MonomialIdeal, format_monomial, labeled_to_json_obj, lcm_lattice, parse_ideal
from .lattice import FiniteAtomicLattice, atoms_of, set_label
from .resolutions import (
    VIAS,
    betti_table,
    is_scarf_resolved,
    scarf_complex,
    strongly_generic_coordinatization,
    supports_resolution,
    verify_scarf_filter,
)


class Verdict(Exception):
    """Raised by a handler whose answer is "no"; output is already written."""


# input -----------------------------------------------------------------


def read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_json(path: str):
    text = read_source(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.pos) from None


def load_lattice(path: str) -> FiniteAtomicLattice:
    return FiniteAtomicLattice.from_json_obj(load_json(path))


def load_ideal(path: str) -> MonomialIdeal:
    """Ideal file in text form, or JSON when it starts with ``{``."""
    text = read_source(path)
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc.msg}", exc.pos) from None
        return MonomialIdeal.from_json_obj(obj)
    return parse_ideal(text.strip())


def ideal_arg(args) -> MonomialIdeal:
    if args.expr is not None:
        return parse_ideal(args.expr)
    if args.source is None:
        raise ParseError("give an ideal file, '-' for stdin, or --expr TEXT")
    return load_ideal(args.source)


# output ----------------------------------------------------------------


def emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def emit(args, default: str, obj=None, text: Callable[[], str] | None = None, dot=None) -> None:
    fmt = args.format or default
    if fmt == "json":
        emit_json(obj() if callable(obj) else obj)
    elif fmt == "text" and text is not None:
        sys.stdout.write(text())
    elif fmt == "dot" and dot is not None:
        sys.stdout.write(dot())
    else:
        raise LcmlatError(f"format {fmt!r} is not available for this command")


def ideal_text(M: MonomialIdeal) -> str:
    return M.text() + "\n"


def lattice_lines(Ls) -> str:
    return "".join(json.dumps(L.to_json_obj()) + "\n" for L in Ls)


# handlers --------------------------------------------------------------


def cmd_lattice_validate(args):
    try:
        L = load_lattice(args.file)
    except LcmlatError as exc:
        if isinstance(exc, ParseError):
            raise
        emit(
            args,
            "json",
            {"valid": False, "code": exc.code, "reason": str(exc)},
            lambda: f"invalid: {exc}\n",
        )
        raise Verdict from None
    emit(args, "json", {"valid": True, "n": L.n, "elements": len(L)}, lambda: f"valid: {len(L)} elements\n")


def cmd_lattice_info(args):
    L = load_lattice(args.file)
    graded = L.is_graded()
    sets = lambda xs: [atoms_of(L.sets[x]) for x in xs]
    obj = {
        "n": L.n,
        "elements": len(L),
        "meet_irreducibles": sets(L.meet_irreducibles()),
        "maximal_chains": [sets(c) for c in L.maximal_chains()],
        "graded": graded.graded,
        "rank": graded.rank,
    }

    def text():
        lines = [
            f"atoms: {L.n}",
            f"elements: {len(L)}",
            "meet-irreducibles: " + " ".join(set_label(L.sets[x]) for x in L.meet_irreducibles()),
            f"maximal chains: {len(obj['maximal_chains'])}",
        ]
        lines += ["  " + " < ".join(set_label(L.sets[x]) for x in c) for c in L.maximal_chains()]
        lines.append(f"graded: {'yes, rank ' + str(graded.rank) if graded.graded else 'no'}")
        return "\n".join(lines) + "\n"

    emit(args, "json", obj, text)


def cmd_lattice_hasse(args):
    L = load_lattice(args.file)

    def obj():
        return {
            "nodes": [atoms_of(s) for s in L.sets],
            "edges": [
                [atoms_of(L.sets[i]), atoms_of(L.sets[j])]
                for i, ups in enumerate(L.upper_covers)
                for j in ups
            ],
        }

    def text():
        return "".join(
            f"{set_label(L.sets[i])} < {set_label(L.sets[j])}\n"
            for i, ups in enumerate(L.upper_covers)
            for j in ups
        )

    emit(args, "dot", obj, text, L.to_dot)


def cmd_lcm(args):
    LL = lcm_lattice(ideal_arg(args))
    L = LL.lattice

    def text():
        return "".join(
            f"{set_label(s)}: {format_monomial(LL.multidegrees[x], LL.variables)}\n"
            for x, s in enumerate(L.sets)
        )

    emit(args, "json", lambda: labeled_to_json_obj(LL), text, L.to_dot)


def cmd_coordinatize(args):
    if args.scheme == "deficit":
        lab = deficit_labeling(lcm_lattice(ideal_arg(args)))
    elif args.scheme == "labeling":
        lab = Labeling.from_json_obj(load_json(args.source))
    else:
        L = load_lattice(args.source)
        lab = eccv_labeling(L) if args.scheme == "eccv" else minimal_squarefree_labeling(L)
    M = realize(lab)
    emit(
        args,
        "text",
        lambda: {"labeling": lab.to_json_obj(), "ideal": M.to_json_obj(), "text": M.text()},
        lambda: ideal_text(M),
    )


def cmd_roundtrip(args):
    M = ideal_arg(args)
    ok = roundtrip_check(M)
    emit(args, "json", {"roundtrip": ok, "ideal": M.text()}, lambda: f"{'ok' if ok else 'mismatch'}\n")
    if not ok:
        raise Verdict


def cmd_betti(args):
    L = load_lattice(args.file)
    table = betti_table(L, FieldSpec.parse(args.field), args.via)
    emit(args, "json", table.to_json_obj, table.to_text)


def cmd_scarf(args):
    X = scarf_complex(load_lattice(args.file))
    emit(
        args,
        "json",
        X.to_json_obj,
        lambda: "".join(" ".join(map(str, X.face_labels(f))) + "\n" for f in X.facets),
    )


def cmd_scarf_resolved(args):
    L = load_lattice(args.file)
    field = FieldSpec.parse(args.field)
    ok = is_scarf_resolved(L, field)
    obj = {
        "scarf_resolved": ok,
        "field": field.name,
        "total": betti_table(L, field).total,
        "scarf_f_vector": scarf_complex(L).f_vector(),
    }
    emit(args, "json", obj, lambda: f"{'yes' if ok else 'no'}\n")
    if not ok:
        raise Verdict


def cmd_generic_coordinatize(args):
    M = strongly_generic_coordinatization(load_lattice(args.file))
    emit(args, "text", M.to_json_obj, lambda: ideal_text(M))


def cmd_ln_enumerate(args):
    if args.count_only:
        count = lnmod.ln_count(args.n, args.jobs)
        sys.stdout.write(f"{count}\n")
        return
    out = sys.stdout
    for L in lnmod.ln_enumerate(args.n, args.jobs):
        out.write(json.dumps(L.to_json_obj()) + "\n")


def cmd_ln_covers(args):
    P = load_lattice(args.file)
    up = [] if args.direction == "down" else lnmod.ln_upper_covers(P)
    down = [] if args.direction == "up" else lnmod.ln_lower_covers(P)
    obj = {}
    if args.direction != "down":
        obj["upper"] = [L.to_json_obj() for L in up]
    if args.direction != "up":
        obj["lower"] = [L.to_json_obj() for L in down]
    emit(args, "json", obj, lambda: lattice_lines(up + down))


def _binary(args, op):
    L = op(load_lattice(args.a), load_lattice(args.b))
    emit(args, "json", L.to_json_obj, lambda: lattice_lines([L]), L.to_dot)


def cmd_ln_meet(args):
    _binary(args, lnmod.ln_meet)


def cmd_ln_join(args):
    _binary(args, lnmod.ln_join)


def cmd_ln_mi(args):
    mis = lnmod.ln_meet_irreducibles(args.n)
    emit(args, "json", lambda: [L.to_json_obj() for L in mis], lambda: lattice_lines(mis))


def cmd_ln_rank(args):
    P = load_lattice(args.file)
    lnmod.LnContext(P.n)
    r = lnmod.ln_rank(P)
    emit(args, "text", {"rank": r, "max_rank": 2**P.n - P.n - 2}, lambda: f"{r}\n")


def cmd_deform(args):
    Q = load_lattice(args.source)
    P = load_lattice(args.target)
    res = construct_deformation(P, Q)
    emit(
        args,
        "json",
        lambda: {
            "from": res.M_Q.to_json_obj(),
            "to": res.M_P.to_json_obj(),
            "deformation": res.deformation.to_json_obj(),
        },
        lambda: f"from: {res.M_Q.text()}\nto: {res.M_P.text()}\nepsilon: {list(map(list, res.deformation.epsilon))}\n",
    )


def cmd_universal_family(args):
    fam = universal_family(load_lattice(args.file))
    targets = [load_lattice(p) for p in args.to or []]
    deformations = [fam.deform_to(P) for P in targets]

    def obj():
        return {
            "base": fam.M_Q.to_json_obj(),
            "deformations": [d.to_json_obj()["epsilon"] for d in deformations],
            "ideals": [d.deformed().to_json_obj() for d in deformations],
        }

    def text():
        lines = [f"base: {fam.M_Q.text()}"]
        lines += [f"-> {d.deformed().text()}" for d in deformations]
        return "\n".join(lines) + "\n"

    emit(args, "json", obj, text)


def cmd_verify_scarf_filter(args):
    P = load_lattice(args.file)
    report = verify_scarf_filter(P, FieldSpec.parse(args.field), args.mode)

    def text():
        lines = [f"mode {report['mode']} over {report['field']}; totals {report['total']}"]
        if "reading" in report:
            lines.append(f"reading: {report['reading']}")
        lines.append(
            f"hypothesis {'holds' if report['hypothesis'] else 'fails'}; checked {report['checked']}, "
            f"qualifying {report['qualifying']}, counterexamples {len(report['counterexamples'])}"
        )
        lines += [json.dumps(c) for c in report["counterexamples"]]
        return "\n".join(lines) + "\n"

    emit(args, "json", report, text)
    if report["counterexamples"]:
        raise Verdict


def cmd_support_check(args):
    L = load_lattice(args.lattice)
    X = SimplicialComplex.from_json_obj(load_json(args.complex))
    vertex_labels = None
    if args.labels:
        vertex_labels = [L.ref(list(s)) for s in load_json(args.labels)]
    cert = supports_resolution(L, X, vertex_labels, FieldSpec.parse(args.field))

    def text():
        lines = [f"supports: {'yes' if cert.supports else 'no'}", f"minimal: {'yes' if cert.minimal else 'no'}"]
        lines += [f"  {w}: {r}" for w, r in cert.failures]
        return "\n".join(lines) + "\n"

    emit(args, "json", lambda: cert.to_json_obj(L), text)
    if not cert.supports:
        raise Verdict


# parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "text"), help="output format")

    parser = argparse.ArgumentParser(prog="lcmlat", description="Finite atomic lattices as abstract monomial ideals.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(subparsers, name, func, help_text):
        p = subparsers.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def ideal_input(p):
        p.add_argument("source", nargs="?", help="ideal file (text or JSON), '-' for stdin")
        p.add_argument("-e", "--expr", help="ideal given inline, e.g. 'x^2*y, y*z'")

    def field_opt(p):
        p.add_argument("--field", default="q", help="q, f2 or fp:<p> (default q)")

    lat = sub.add_parser("lattice", help="validate and inspect a lattice file")
    lsub = lat.add_subparsers(dest="action", required=True, metavar="ACTION")
    for name, func, h in (
        ("validate", cmd_lattice_validate, "check the lattice axioms"),
        ("info", cmd_lattice_info, "meet-irreducibles, chains, gradedness"),
        ("hasse", cmd_lattice_hasse, "Hasse diagram"),
    ):
        add(lsub, name, func, h).add_argument("file")

    ideal_input(add(sub, "lcm", cmd_lcm, "LCM lattice of a monomial ideal"))

    p = add(sub, "coordinatize", cmd_coordinatize, "realize a lattice as a monomial ideal")
    p.add_argument(
        "--scheme",
        choices=("eccv", "min-squarefree", "deficit", "labeling"),
        default="eccv",
        help="eccv / min-squarefree take a lattice, deficit an ideal, labeling a labeling file",
    )
    ideal_input(p)

    ideal_input(add(sub, "roundtrip", cmd_roundtrip, "deficit labeling recovers the ideal"))

    p = add(sub, "betti", cmd_betti, "multigraded Betti numbers")
    p.add_argument("file")
    field_opt(p)
    p.add_argument("--via", choices=VIAS, default="crosscut")

    add(sub, "scarf", cmd_scarf, "Scarf complex").add_argument("file")
    p = add(sub, "scarf-resolved", cmd_scarf_resolved, "is the lattice resolved by its Scarf complex")
    p.add_argument("file")
    field_opt(p)
    add(sub, "generic-coordinatize", cmd_generic_coordinatize, "strongly generic coordinatization").add_argument("file")

    lnp = sub.add_parser("ln", help="the lattice L(n)")
    nsub = lnp.add_subparsers(dest="action", required=True, metavar="ACTION")
    p = add(nsub, "enumerate", cmd_ln_enumerate, "every lattice in L(n), one JSON per line")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    p = add(nsub, "covers", cmd_ln_covers, "covers of a lattice in L(n)")
    p.add_argument("file")
    p.add_argument("--direction", choices=("up", "down", "both"), default="both")
    for name, func in (("meet", cmd_ln_meet), ("join", cmd_ln_join)):
        p = add(nsub, name, func, f"{name} in L(n)")
        p.add_argument("a")
        p.add_argument("b")
    add(nsub, "mi", cmd_ln_mi, "meet-irreducibles of L(n)").add_argument("-n", type=int, required=True)
    add(nsub, "rank", cmd_ln_rank, "rank in L(n)").add_argument("file")

    p = add(sub, "deform", cmd_deform, "deformation of exponents from Q up to P")
    p.add_argument("--from", dest="source", required=True, metavar="Q.json")
    p.add_argument("--to", dest="target", required=True, metavar="P.json")

    p = add(sub, "universal-family", cmd_universal_family, "one ideal of Q deforming to every P above it")
    p.add_argument("file")
    p.add_argument("--to", action="append", metavar="P.json", help="target lattice (repeatable)")

    ver = sub.add_parser("verify", help="experiment harnesses")
    vsub = ver.add_subparsers(dest="action", required=True, metavar="ACTION")
    p = add(vsub, "scarf-filter", cmd_verify_scarf_filter, "Scarf lifting over the filter of a lattice")
    p.add_argument("file")
    p.add_argument("--mode", choices=("betti", "cover"), default="betti")
    field_opt(p)

    p = add(sub, "support-check", cmd_support_check, "does a labeled complex support a resolution")
    p.add_argument("lattice")
    p.add_argument("complex")
    p.add_argument("--labels", help="JSON list of vertex labels (atom lists); default: atoms in order")
    field_opt(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except Verdict:
        return 1
    except LcmlatError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        code = "IOError" if isinstance(exc, OSError) else "InvalidInput"
        print(f"error[{code}]: {exc}", file=sys.stderr)
        return 2
    finally:
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
