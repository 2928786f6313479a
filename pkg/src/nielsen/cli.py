"""Command-line front end.

Exit codes: 0 a verdict or report was produced, 2 malformed input or a
configuration the manifold cannot carry, 1 an internal invariant failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .action import involution_signatures, fixed_sublattice, multi_reflection_operator, multi_twist_operator
from .classify import classify_indefinite
from .degtyarev import build_certificate, verify_certificate
from .lattice import LatticeError, discriminant_group, invariants, standard_lattice
from .manifold import ModelError
from .obstruction import ObstructionError
from .scenario import ScenarioError, load_scenario, run
from .suite import paper_suite, suite_json, suite_text

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT = 0, 1, 2
INPUT_ERRORS = (ScenarioError, ObstructionError, ModelError, LatticeError)


def _emit(payload, as_json: bool, text: str):
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print(text)


def parse_classes(text: str) -> List[List[int]]:
    """'1,-1;0,1' -> [[1, -1], [0, 1]]"""
    try:
        return [[int(x) for x in part.split(",")] for part in text.split(";") if part.strip()]
    except ValueError as e:
        raise LatticeError(f"cannot parse classes {text!r}: {e}") from e


def cmd_lattice(args) -> int:
    lat = standard_lattice(args.expr)
    inv = invariants(lat)
    disc = discriminant_group(lat)
    payload = {"expr": args.expr, "rank": inv.rank, "b_plus": inv.b_plus, "b_minus": inv.b_minus,
               "signature": inv.signature, "det": inv.det, "parity": inv.parity,
               "unimodular": inv.unimodular, "discriminant_group": list(disc.invariant_factors)}
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    _emit(payload, args.json, text)
    return EXIT_OK


def cmd_classify(args) -> int:
    d = classify_indefinite(args.rank, args.sig, args.parity)
    _emit({"parity": d.parity, "normal_form": str(d.normal_form)}, args.json, str(d))
    return EXIT_OK


def cmd_action(args) -> int:
    lat = standard_lattice(args.lattice)
    if bool(args.twist) == bool(args.reflect):
        raise LatticeError("give exactly one of --twist or --reflect")
    if args.twist:
        f = multi_twist_operator(lat, parse_classes(args.twist))
    else:
        f = multi_reflection_operator(lat, parse_classes(args.reflect))
    sig = involution_signatures(f)
    _, fixed_rank = fixed_sublattice(f)
    payload = {"kind": f.kind, "matrix": [list(r) for r in f.matrix], "involution": f.is_involution(),
               "fixed_rank": fixed_rank, "b_f_plus": sig.b_f_plus, "b_f_minus": sig.b_f_minus,
               "sigma_f": sig.sigma_f}
    rows = "\n".join("  " + " ".join(f"{x:3d}" for x in r) for r in f.matrix)
    text = (f"{f.kind} on {args.lattice}\n{rows}\nfixed rank {fixed_rank}, "
            f"b_f+ {sig.b_f_plus}, b_f- {sig.b_f_minus}, sigma_f {sig.sigma_f}")
    _emit(payload, args.json, text)
    return EXIT_OK


def cmd_obstruct(args) -> int:
    s = load_scenario(args.scenario)
    if args.as_paper:
        s = type(s)(s.build, s.mapping_class, True, s.format)
    v = run(s)
    as_json = args.json or s.format == "json"
    print(v.to_json() if as_json else v.to_text())
    return EXIT_OK


def cmd_degtyarev(args) -> int:
    cert = build_certificate()
    rep = verify_certificate(cert)
    _emit({"certificate": cert.to_dict(), "report": rep.to_dict()}, args.json, rep.to_text())
    return EXIT_OK if rep.passed else EXIT_INTERNAL


def cmd_suite(args) -> int:
    rows = paper_suite()
    print(suite_json(rows) if args.json else suite_text(rows))
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nielsen", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lattice", help="lattice utilities")
    lsub = lat.add_subparsers(dest="lattice_command", required=True)
    info = lsub.add_parser("info", help="invariants of a lattice expression such as '2*E8 + 3*U'")
    info.add_argument("expr")
    info.add_argument("--json", action="store_true")
    info.set_defaults(func=cmd_lattice)

    cl = sub.add_parser("classify", help="normal form of an indefinite unimodular form")
    cl.add_argument("--rank", type=int, required=True)
    cl.add_argument("--sig", type=int, required=True)
    cl.add_argument("--parity", choices=("even", "odd"), required=True)
    cl.add_argument("--json", action="store_true")
    cl.set_defaults(func=cmd_classify)

    ac = sub.add_parser("action", help="homological action of a multi-twist or multi-reflection")
    ac.add_argument("--lattice", required=True)
    ac.add_argument("--twist", help="(+-2)-classes, e.g. '1,-1;0,0'")
    ac.add_argument("--reflect", help="(-1)-classes")
    ac.add_argument("--json", action="store_true")
    ac.set_defaults(func=cmd_action)

    ob = sub.add_parser("obstruct", help="evaluate a scenario file")
    ob.add_argument("scenario")
    ob.add_argument("--as-paper", action="store_true",
                    help="override the spin-type hypotheses of the multi-reflection criterion")
    ob.add_argument("--json", action="store_true")
    ob.set_defaults(func=cmd_obstruct)

    dg = sub.add_parser("degtyarev", help="build and verify the eigenlattice certificate")
    dg.add_argument("--json", action="store_true")
    dg.set_defaults(func=cmd_degtyarev)

    ps = sub.add_parser("paper-suite", help="run every example family")
    ps.add_argument("--json", action="store_true")
    ps.set_defaults(func=cmd_suite)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        for v in getattr(e, "violations", []):
            print(f"  violation: {v}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as e:
        print(f"internal invariant failure: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
