"""Command line front end: JSON in, JSON out.

Exit codes: 0 decided true / success, 1 decided false, 2 undecided (a
search cap was hit), 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import graphs as gr
from . import zlinalg
from .bass import from_gamma, normal_form
from .conjugacy import conjugate_elements, short_positions, translation_length
from .gog import (DehnTwist, Splitting, twist_growth_profile,
                  validate_gog_dict, validate_splitting)
from .iso import GraphMismatch, ul_conjugate
from .mwp import solve_mwp
from .serialize import (
    dict_to_splitting, dict_to_suspension, dict_to_twist, gamma_map_to_dict,
    gamma_to_dict, parse_gamma, suspension_to_dict, automorphism_to_dict,
)
from .suspension import suspend
from .whitehead import Undecided, orbit_subgroups, orbit_words
from .words import format_word, parse_word

OK, FALSE, UNDECIDED, BADINPUT = 0, 1, 2, 3


def _load(path: str) -> dict:
    with open(path) as f:
        return json.load(f)


def _emit(doc, out: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)


def cmd_validate(args) -> int:
    doc = _load(args.infile)
    diags = validate_gog_dict(doc)
    try:
        sp = dict_to_splitting(doc)
        diags.extend(validate_splitting(sp))
    except (ValueError, KeyError) as e:
        diags.append(str(e))
    _emit({"valid": not diags, "diagnostics": diags}, args.out)
    return OK if not diags else FALSE


def cmd_suspend(args) -> int:
    doc = _load(args.infile)
    sp = dict_to_splitting(doc)
    tw = dict_to_twist(sp, json.loads(args.twist) if args.twist
                       else doc.get("twist", {"gamma": {}}))
    try:
        s = suspend(sp, tw)
    except ValueError as e:
        _emit({"error": str(e)}, args.out)
        return FALSE
    _emit(suspension_to_dict(s), args.out)
    return OK


def cmd_nf(args) -> int:
    s = dict_to_suspension(_load(args.infile))
    g = parse_gamma(_maybe_json(args.element), s.rank)
    w = from_gamma(s, g)
    nf = normal_form(w, args.polarize)
    _emit({
        "base": nf.base,
        "polarizing_edge": nf.pol,
        "path": [[eid, d] for (eid, d) in nf.path],
        "dcr": [format_word(x) for x in nf.dcr],
        "pow": list(nf.pow),
        "abscissa": nf.abscissa,
    }, args.out)
    return OK


def cmd_conj(args) -> int:
    s = dict_to_suspension(_load(args.infile))
    g = parse_gamma(_maybe_json(args.g), s.rank)
    h = parse_gamma(_maybe_json(args.h), s.rank)
    x = conjugate_elements(s, g, h)
    if x is None:
        _emit({"conjugate": False}, args.out)
        return FALSE
    _emit({"conjugate": True, "conjugator": gamma_to_dict(x)}, args.out)
    return OK


def cmd_short(args) -> int:
    s = dict_to_suspension(_load(args.infile))
    g = parse_gamma(_maybe_json(args.element), s.rank)
    w = from_gamma(s, g)
    n = translation_length(w)
    if n == 0:
        _emit({"translation_length": 0, "short_positions": []}, args.out)
        return OK
    poss = short_positions(w)
    _emit({
        "translation_length": n,
        "short_positions": [{
            "anchor": p.anchor,
            "polarizing_edge": p.pol,
            "pow": list(p.nf.pow),
            "dcr": [format_word(x) for x in p.nf.dcr],
            "conjugator": gamma_to_dict(p.conj),
        } for p in poss],
    }, args.out)
    return OK


def cmd_mwp(args) -> int:
    doc = _load(args.infile)
    s = dict_to_suspension(doc["suspension"])
    src = [[parse_gamma(x, s.rank) for x in t] for t in doc["S"]]
    dst = [[parse_gamma(x, s.rank) for x in t] for t in doc["T"]]
    try:
        sol = solve_mwp(s, src, dst)
    except Undecided as e:
        _emit({"decision": "undecided", "reason": str(e)}, args.out)
        return UNDECIDED
    if sol is None:
        _emit({"decision": "no"}, args.out)
        return FALSE
    answer = {
        "decision": "yes",
        "automorphism": gamma_map_to_dict(sol.fiber_images, sol.t_image),
        "conjugators": [gamma_to_dict(c) for c in sol.conjugators],
        "transcript": sol.transcript,
    }
    _emit(answer, args.out)
    return OK


def cmd_iso(args) -> int:
    doc1 = _load(args.infile)
    doc2 = _load(args.infile2)
    sp1 = dict_to_splitting(doc1)
    tw1 = dict_to_twist(sp1, doc1.get("twist", {"gamma": {}}))
    sp2 = dict_to_splitting(doc2)
    tw2 = dict_to_twist(sp2, doc2.get("twist", {"gamma": {}}))
    try:
        res = ul_conjugate(sp1, tw1, sp2, tw2)
    except GraphMismatch as e:
        _emit({"decision": "undecided", "reason": str(e)}, args.out)
        return UNDECIDED
    _emit({"conjugate": res.conjugate,
           "orientations": list(res.orientations)}, args.out)
    return OK if res.conjugate else FALSE


def cmd_whitehead_orbit(args) -> int:
    rank = args.rank
    src = [parse_word(w, rank) for w in args.src.split(",")]
    dst = [parse_word(w, rank) for w in args.dst.split(",")]
    try:
        alpha = orbit_words(src, dst, rank, node_cap=args.node_cap)
    except Undecided as e:
        _emit({"decision": "undecided", "reason": str(e)}, args.out)
        return UNDECIDED
    if alpha is None:
        _emit({"decision": "no"}, args.out)
        return FALSE
    _emit({"decision": "yes",
           "automorphism": automorphism_to_dict(alpha.images),
           "inverse": automorphism_to_dict(alpha.inverse)}, args.out)
    return OK


def cmd_gersten(args) -> int:
    rank = args.rank
    src = [gr.from_words(rank, [parse_word(w, rank) for w in part.split(",")],
                         based=False)
           for part in args.src.split(";")]
    dst = [gr.from_words(rank, [parse_word(w, rank) for w in part.split(",")],
                         based=False)
           for part in args.dst.split(";")]
    try:
        alpha = orbit_subgroups(src, dst, rank, node_cap=args.node_cap)
    except Undecided as e:
        _emit({"decision": "undecided", "reason": str(e)}, args.out)
        return UNDECIDED
    if alpha is None:
        _emit({"decision": "no"}, args.out)
        return FALSE
    _emit({"decision": "yes",
           "automorphism": automorphism_to_dict(alpha.images),
           "inverse": automorphism_to_dict(alpha.inverse)}, args.out)
    return OK


def cmd_snf(args) -> int:
    m = json.loads(args.matrix)
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise ValueError("matrix must be a list of rows")
    u, d, v = zlinalg.smith_normal_form(m)
    _emit({"U": u, "D": d, "V": v}, args.out)
    return OK


def cmd_growth(args) -> int:
    doc = _load(args.infile)
    sp = dict_to_splitting(doc)
    tw = dict_to_twist(sp, json.loads(args.twist) if args.twist
                       else doc.get("twist", {"gamma": {}}))
    g = parse_word(args.element, sp.global_rank)
    lens = twist_growth_profile(tw, g, args.n)
    _emit({"cyclic_lengths": lens,
           "coefficient_length": tw.coefficient_length()}, args.out)
    return OK


def _maybe_json(text: str):
    text = text.strip()
    if text.startswith("{"):
        return json.loads(text)
    return text


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="linsusp",
        description="suspensions of linearly growing free-group "
                    "automorphisms: normal forms, conjugacy, orbit problems")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallelism hint (evaluation is deterministic)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the answer JSON here")
        sp.add_argument("--node-cap", type=int, default=100_000,
                        help="orbit search node budget")

    q = sub.add_parser("validate", help="check a graph-of-groups document")
    q.add_argument("--in", dest="infile", required=True)
    common(q)
    q.set_defaults(func=cmd_validate)

    q = sub.add_parser("suspend", help="build the structural suspension")
    q.add_argument("--in", dest="infile", required=True)
    q.add_argument("--twist", help="twist JSON (defaults to the document's)")
    common(q)
    q.set_defaults(func=cmd_suspend)

    q = sub.add_parser("nf", help="polarized normal form of an element")
    q.add_argument("--in", dest="infile", required=True)
    q.add_argument("--element", required=True)
    q.add_argument("--polarize", type=int, required=True,
                   help="polarizing edge id at the base vertex")
    common(q)
    q.set_defaults(func=cmd_nf)

    q = sub.add_parser("conj", help="conjugacy of two elements")
    q.add_argument("--in", dest="infile", required=True)
    q.add_argument("g")
    q.add_argument("h")
    common(q)
    q.set_defaults(func=cmd_conj)

    q = sub.add_parser("short", help="short positions of an element")
    q.add_argument("--in", dest="infile", required=True)
    q.add_argument("--element", required=True)
    common(q)
    q.set_defaults(func=cmd_short)

    q = sub.add_parser("mwp", help="mixed Whitehead problem")
    q.add_argument("--in", dest="infile", required=True)
    common(q)
    q.set_defaults(func=cmd_mwp)

    q = sub.add_parser("iso", help="twist conjugacy via suspension isomorphy")
    q.add_argument("--in", dest="infile", required=True)
    q.add_argument("--in2", dest="infile2", required=True)
    common(q)
    q.set_defaults(func=cmd_iso)

    q = sub.add_parser("whitehead-orbit",
                       help="orbit of tuples of conjugacy classes of words")
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--src", required=True, help="comma separated words")
    q.add_argument("--dst", required=True)
    common(q)
    q.set_defaults(func=cmd_whitehead_orbit)

    q = sub.add_parser("gersten",
                       help="orbit of tuples of conjugacy classes of subgroups")
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--src", required=True,
                   help="subgroups separated by ';', generators by ','")
    q.add_argument("--dst", required=True)
    common(q)
    q.set_defaults(func=cmd_gersten)

    q = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    q.add_argument("matrix", help="JSON list of rows")
    common(q)
    q.set_defaults(func=cmd_snf)

    q = sub.add_parser("growth", help="cyclic growth profile of a twist")
    q.add_argument("--in", dest="infile", required=True)
    q.add_argument("--twist")
    q.add_argument("--element", required=True)
    q.add_argument("--n", type=int, default=10)
    common(q)
    q.set_defaults(func=cmd_growth)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Undecided as e:
        print(json.dumps({"decision": "undecided", "reason": str(e)}))
        return UNDECIDED
    except (json.JSONDecodeError, ValueError, KeyError, OSError) as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return BADINPUT


if __name__ == "__main__":
    sys.exit(main())
