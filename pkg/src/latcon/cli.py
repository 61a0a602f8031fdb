"""Command-line surface.

Exit codes: 0 success (and, for queries, a positive answer), 1 for a valid
query with a negative answer, 2 for usage or input errors.  All output is
deterministic for fixed input and flags.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import catalog, congruence, perspectivity, planar, witness
from .core import FiniteLattice, PrimeInterval
from .errors import LatconError, NoCorners, NotACoveringPair
from .perspectivity import MODE_CPROJ, MODE_PPROJ, MODE_SWING_LEMMA, WitnessSequence
from .textio import LatticeDocument, document_for, format_document, parse

USAGE_ERROR = 2
NEGATIVE = 1
OK = 0


def _load(path: str) -> LatticeDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def _fmt_blocks(theta: congruence.Congruence) -> str:
    return " ".join("{%s}" % ",".join(g) for g in theta.blocks)


def _fmt_item(iv) -> str:
    return f"[{iv.lo},{iv.hi}]"


def _fmt_sequence(seq: WitnessSequence) -> str:
    parts = [_fmt_item(seq.items[0])]
    for step, item in zip(seq.steps, seq.items[1:]):
        parts.append(f"--{step.value}--> {_fmt_item(item)}")
    return " ".join(parts)


def _prime(lat: FiniteLattice, pair: Sequence[str]) -> PrimeInterval:
    return lat.prime(pair[0], pair[1])


def _require_diagram(doc: LatticeDocument):
    dia = doc.to_diagram()
    if dia is None:
        raise LatconError("the input file carries no (complete) embed data")
    return dia


def cmd_validate(args) -> int:
    try:
        doc = _load(args.infile)
    except LatconError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        lat = doc.to_lattice()
        dia = doc.to_diagram()
    except LatconError as exc:
        print(f"INVALID: {exc}")
        return NEGATIVE
    print(f"OK: lattice {doc.name} with {len(lat.elements)} elements", end="")
    print(" (embedded diagram valid)" if dia else "")
    return OK


def cmd_info(args) -> int:
    doc = _load(args.infile)
    lat = doc.to_lattice()
    dia = doc.to_diagram()
    print(f"name: {doc.name}")
    print(f"elements: {len(lat.elements)}")
    print(f"covers: {len(lat.covers)}")
    print(f"bottom: {lat.bottom}")
    print(f"top: {lat.top}")
    print(f"prime intervals: {len(lat.prime_intervals())}")
    print(f"slim: {planar.is_slim(lat)}")
    print(f"semimodular: {planar.is_semimodular(lat)}")
    print(f"embedded: {dia is not None}")
    print(f"sps: {planar.is_sps(dia) if dia is not None else False}")
    return OK


def cmd_con(args) -> int:
    lat = _load(args.infile).to_lattice()
    theta = congruence.principal_congruence(lat, args.p[0], args.p[1])
    print(f"con({args.p[0]},{args.p[1]}) = {_fmt_blocks(theta)}")
    return OK


def cmd_conj(args) -> int:
    lat = _load(args.infile).to_lattice()
    order = congruence.conj_order(lat)
    for k, (p, theta) in enumerate(order.generators):
        print(f"J{k}: con({p.lo},{p.hi}) = {_fmt_blocks(theta)}")
    if order.covers:
        print(
            "covers: " + ", ".join(f"J{i} < J{j}" for i, j in order.covers)
        )
    else:
        print("covers: (none)")
    return OK


def cmd_witness(args) -> int:
    doc = _load(args.infile)
    lat = doc.to_lattice()
    p = _prime(lat, args.p)
    q = _prime(lat, args.q)

    if args.kind == "n5":
        try:
            got = witness.n5_witness(lat, p, q)
        except NotACoveringPair as exc:
            print(f"NOT A COVERING PAIR: {exc}")
            return NEGATIVE
        print("sublattice {%s}" % ",".join(got.sublattice))
        print(f"p0 = {_fmt_item(got.p0)}")
        print(f"q0 = {_fmt_item(got.q0)}")
        print("VALID")
        return OK

    theta = congruence.con_prime(lat, p)
    if not theta.same_block(q.lo, q.hi):
        print("NOT COLLAPSED")
        return NEGATIVE
    if args.kind == "cproj":
        seq = witness.cproj_witness(lat, p, q)
        mode = MODE_CPROJ
        context = lat
    elif args.kind == "pproj":
        seq = witness.pproj_witness(lat, p, q)
        mode = MODE_PPROJ
        context = lat
    else:  # swing
        dia = _require_diagram(doc)
        seq = witness.swing_witness(dia, p, q)
        mode = MODE_SWING_LEMMA
        context = dia
    if seq is None:
        print("NO WITNESS FOUND")
        return NEGATIVE
    print(_fmt_sequence(seq))
    ok, idx = perspectivity.validate_sequence(context, seq, mode)
    print("VALID" if ok else f"INVALID at {idx}")
    return OK if ok else NEGATIVE


def cmd_check_lemmas(args) -> int:
    total = 0
    bad = 0
    for n in range(2, args.max_n + 1):
        for lat in catalog.enumerate_lattices(n, bound=max(args.max_n, 8)):
            total += 1
            dia = catalog._search_embedding(lat)
            if dia is not None and not planar.is_sps(dia):
                dia = None
            report = witness.check_equivalences(lat, dia)
            bad += len(report.disagreements)
            for d in report.disagreements:
                print(
                    f"disagree n={n} p={_fmt_item(d.p)} q={_fmt_item(d.q)} "
                    f"oracle={d.oracle} cproj={d.cproj} pproj={d.pproj} "
                    f"swing={d.swing} {d.note}"
                )
    print(f"{bad} disagreements over {total} lattices")
    return OK if bad == 0 else NEGATIVE


def cmd_check_corners(args) -> int:
    doc = _load(args.infile)
    dia = _require_diagram(doc)
    try:
        report = witness.check_corner_preservation(dia)
    except NoCorners:
        print("NO CORNERS")
        return NEGATIVE
    for c in report.checks:
        print(
            f"corner {c.corner}: collapse={'ok' if c.collapse_preserved else 'FAIL'} "
            f"swings={'ok' if c.swing_equivalence else 'FAIL'} "
            f"removed-primes={'ok' if c.removed_primes_expected else 'FAIL'}"
        )
    print("PASS" if report.ok else "FAIL")
    return OK if report.ok else NEGATIVE


def cmd_enumerate(args) -> int:
    k = 0
    if args.sps:
        for dia in catalog.sps_corpus(args.n, bound=max(args.n, 8)):
            doc = document_for(f"sps{len(dia.lattice.elements)}_{k}", dia.lattice, dia)
            print(format_document(doc), end="")
            k += 1
    else:
        for lat in catalog.enumerate_lattices(args.n, bound=max(args.n, 8)):
            doc = document_for(f"lat{args.n}_{k}", lat)
            print(format_document(doc), end="")
            k += 1
    return OK


def cmd_export_dot(args) -> int:
    doc = _load(args.infile)
    lat = doc.to_lattice()
    bold: set[tuple[str, str]] = set()
    if args.highlight_witness:
        p = _prime(lat, args.p)
        q = _prime(lat, args.q)
        if args.highlight_witness == "pproj":
            seq = witness.pproj_witness(lat, p, q)
        else:
            seq = witness.swing_witness(_require_diagram(doc), p, q)
        if seq is None:
            print("NOT COLLAPSED", file=sys.stderr)
            return NEGATIVE
        bold = {(it.lo, it.hi) for it in seq.items}
    lines = [f'digraph "{doc.name}" {{', "  rankdir=BT;"]
    for e in lat.elements:
        lines.append(f'  "{e}";')
    if doc.embed:
        rows: dict[int, list[str]] = {}
        for e in lat.elements:
            rows.setdefault(doc.embed[e][0], []).append(e)
        for r in sorted(rows):
            members = " ".join(f'"{e}";' for e in rows[r])
            lines.append(f"  {{ rank=same; {members} }}")
    for lo, hi in lat.covers:
        width = 3 if (lo, hi) in bold else 1
        lines.append(f'  "{lo}" -> "{hi}" [penwidth={width}];')
    lines.append("}")
    print("\n".join(lines))
    return OK


def cmd_fixture(args) -> int:
    if args.list:
        for name in catalog.FIXTURE_NAMES:
            print(name)
        return OK
    fx = catalog.fixture(args.name)
    print(format_document(document_for(fx.name, fx.lattice, fx.diagram)), end="")
    return OK


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latcon", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def with_infile(p):
        p.add_argument("--in", dest="infile", required=True, help="lattice text file")
        return p

    with_infile(sub.add_parser("validate")).set_defaults(func=cmd_validate)
    with_infile(sub.add_parser("info")).set_defaults(func=cmd_info)

    p_con = with_infile(sub.add_parser("con"))
    p_con.add_argument("--p", nargs=2, required=True, metavar=("LO", "HI"))
    p_con.set_defaults(func=cmd_con)

    with_infile(sub.add_parser("conj")).set_defaults(func=cmd_conj)

    p_wit = with_infile(sub.add_parser("witness"))
    p_wit.add_argument("kind", choices=["pproj", "cproj", "swing", "n5"])
    p_wit.add_argument("--p", nargs=2, required=True, metavar=("LO", "HI"))
    p_wit.add_argument("--q", nargs=2, required=True, metavar=("LO", "HI"))
    p_wit.set_defaults(func=cmd_witness)

    p_check = sub.add_parser("check")
    check_sub = p_check.add_subparsers(dest="what", required=True)
    p_lem = check_sub.add_parser("lemmas")
    p_lem.add_argument("--max-n", type=int, default=6, dest="max_n")
    p_lem.set_defaults(func=cmd_check_lemmas)
    p_cor = with_infile(check_sub.add_parser("corners"))
    p_cor.set_defaults(func=cmd_check_corners)

    p_enum = sub.add_parser("enumerate")
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.add_argument("--sps", action="store_true")
    p_enum.set_defaults(func=cmd_enumerate)

    p_dot = with_infile(sub.add_parser("export-dot"))
    p_dot.add_argument(
        "--highlight-witness", choices=["pproj", "swing"], default=None
    )
    p_dot.add_argument("--p", nargs=2, metavar=("LO", "HI"))
    p_dot.add_argument("--q", nargs=2, metavar=("LO", "HI"))
    p_dot.set_defaults(func=cmd_export_dot)

    p_fix = sub.add_parser("fixture")
    p_fix.add_argument("name", nargs="?")
    p_fix.add_argument("--list", action="store_true")
    p_fix.set_defaults(func=cmd_fixture)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    if args.command == "export-dot" and args.highlight_witness and (
        not args.p or not args.q
    ):
        ap.error("--highlight-witness needs --p and --q")
    if args.command == "fixture" and not args.list and not args.name:
        ap.error("fixture needs a NAME or --list")
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except LatconError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
