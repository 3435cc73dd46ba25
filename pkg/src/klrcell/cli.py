"""Command line surface: root enumeration, Lyndon words, characters,
dimension checks, nilHecke identities and cell chain verification.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

import argparse
import json
import os
import sys

from . import cellular, klr, modules, perms
from .cartan import (UnsupportedTypeError, build_cartan, check_convexity,
                     lyndon_order, lyndon_word, positive_roots)
from .characters import dimension_formula
from .laurent import LaurentSeries

SCHEMA_VERSION = 1


def _default_cutoff():
    return int(os.environ.get("KLRCELL_CUTOFF", "12"))


def _datum(args):
    return build_cartan(args.type, args.rank)


def _parse_alpha(text):
    return tuple(int(x) for x in text.split(","))


def _root(datum, text):
    if text == "theta":
        roots = positive_roots(datum)
        return max(roots, key=lambda r: r.height)
    return datum.root(_parse_alpha(text))


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_roots(args):
    datum = _datum(args)
    roots = positive_roots(datum)
    payload = {"schema_version": SCHEMA_VERSION,
               "type": args.type, "rank": args.rank,
               "roots": [r.to_json() for r in roots]}
    _emit(args, payload, [" ".join(map(str, r.coeffs)) for r in roots])
    return 0


def cmd_lyndon(args):
    datum = _datum(args)
    if args.root:
        roots = [_root(datum, args.root)]
    else:
        roots = positive_roots(datum)
    words = [(r, lyndon_word(datum, r)) for r in roots]
    payload = {"schema_version": SCHEMA_VERSION,
               "words": [{"root": r.to_json(),
                          "word": "".join(map(str, w))} for r, w in words]}
    _emit(args, payload,
          ["%s  %s" % (",".join(map(str, r.coeffs)), "".join(map(str, w)))
           for r, w in words])
    return 0


def cmd_order(args):
    datum = _datum(args)
    order = lyndon_order(datum)
    ok = check_convexity(datum, order)
    payload = {"schema_version": SCHEMA_VERSION,
               "roots_desc": [r.to_json() for r in order.roots_desc],
               "convex": ok}
    _emit(args, payload,
          [" > ".join(",".join(map(str, r.coeffs)) for r in order.roots_desc),
           f"convex: {ok}"])
    return 0 if ok else 1


def cmd_cuspidal(args):
    datum = _datum(args)
    beta = _root(datum, args.root)
    if (datum.type_letter, datum.rank) == ("E", 8) and \
            beta.coeffs == (2, 3, 4, 5, 6, 4, 2, 3):
        if not args.word:
            print("the E8 highest root needs --word (full support is huge)",
                  file=sys.stderr)
            return 2
        word = tuple(int(c) for c in args.word)
        coeff = modules.e8_theta_coefficient(word)
        payload = {"schema_version": SCHEMA_VERSION,
                   "word": args.word, "coefficient": coeff.to_json()}
        _emit(args, payload, [f"{args.word}: {coeff!r}"])
        return 0
    ch = modules.cuspidal_character(datum, beta)
    payload = {"schema_version": SCHEMA_VERSION, "character": ch.to_json()}
    _emit(args, payload, [repr(ch)])
    return 0


def cmd_char(args):
    datum = _datum(args)
    alpha = _parse_alpha(args.alpha)
    chars = modules.standard_characters(datum, alpha)
    payload = {"schema_version": SCHEMA_VERSION, "standard": []}
    lines = []
    for pi, ch in chars:
        payload["standard"].append({
            "pi": [[list(root.coeffs), p] for root, p in pi.parts],
            "character": ch.to_json(),
        })
        lines.append(f"{pi}: {ch!r}")
    _emit(args, payload, lines)
    return 0


def cmd_dimcheck(args):
    datum = _datum(args)
    alpha = _parse_alpha(args.alpha)
    cutoff = args.cutoff
    chars = modules.standard_characters(datum, alpha)
    words = [tuple(w) for w in klr.algebra(datum, alpha).words]
    lo = klr.min_psi_degree(datum, alpha)
    failures = 0
    rows = []
    for i in words:
        for j in words:
            formula = dimension_formula(datum, i, j, cutoff, chars)
            direct = {}
            for n in range(lo, cutoff + 1):
                c = cellular.component_dim(datum, i, j, n)
                if c:
                    direct[n] = c
            ok = all(formula.coeff(n) == direct.get(n, 0)
                     for n in range(lo, cutoff + 1))
            if not ok:
                failures += 1
            rows.append({"i": "".join(map(str, i)), "j": "".join(map(str, j)),
                         "formula": formula.to_json(),
                         "direct": {str(k): v for k, v in sorted(direct.items())},
                         "ok": ok})
    payload = {"schema_version": SCHEMA_VERSION, "alpha": list(alpha),
               "cutoff": cutoff, "pairs": rows, "failures": failures}
    lines = [f"e({r['i']}) R e({r['j']}): {'ok' if r['ok'] else 'MISMATCH'}"
             for r in rows]
    lines.append(f"{len(rows)} pairs, {failures} failures")
    _emit(args, payload, lines)
    return 0 if failures == 0 else 1


def cmd_nilhecke(args):
    d = args.d
    delta, e_d, psi_w0 = klr.nilhecke_elements(d)
    idem = (e_d * e_d) == e_d
    absorb = (e_d * psi_w0) == psi_w0
    payload = {"schema_version": SCHEMA_VERSION, "d": d,
               "idempotent": idem, "absorbs_psi_w0": absorb,
               "e_d": e_d.to_json()}
    _emit(args, payload, [f"e_{d}^2 == e_{d}: {idem}",
                          f"e_{d} psi_w0 == psi_w0: {absorb}",
                          f"e_{d} = {e_d.text()}"])
    return 0 if (idem and absorb) else 1


def cmd_verify(args):
    datum = _datum(args)
    alpha = _parse_alpha(args.alpha)
    report = cellular.verify_cell_chain(datum, alpha, cutoff=args.cutoff)
    payload = report.to_json()
    lines = []
    for layer in report.layers:
        lines.append(f"pi = {layer['pi']}  i_pi = {layer['i_pi']}  "
                     f"{'pass' if layer['ok'] else 'FAIL'}")
    lines.append("all layers pass" if report.passed else "FAILURES PRESENT")
    _emit(args, payload, lines)
    return 0 if report.passed else 1


def cmd_hypothesis(args):
    datum = _datum(args)
    beta = _root(datum, args.root)
    report = cellular.verify_hypothesis(datum, beta, cutoff=args.cutoff)
    payload = report.to_json()
    lines = [f"clause {k}: {'pass' if v.get('ok') else 'FAIL'}"
             for k, v in report.clauses.items()]
    lines.append("all clauses pass" if report.passed else "FAILURES PRESENT")
    _emit(args, payload, lines)
    return 0 if report.passed else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="klrcell",
        description="finite type quiver Hecke algebras: normal forms, "
                    "q-characters and affine cell chains")
    p.add_argument("--format", choices=("json", "text"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q, rank=True):
        q.add_argument("--type", required=True,
                       choices=tuple("ABCDEFG"))
        q.add_argument("--rank", type=int, required=True)

    q = sub.add_parser("roots", help="positive roots")
    common(q)
    q.set_defaults(func=cmd_roots)

    q = sub.add_parser("lyndon", help="dominant Lyndon words")
    common(q)
    q.add_argument("--root", help="coefficients like 1,2 or 'theta'")
    q.set_defaults(func=cmd_lyndon)

    q = sub.add_parser("order", help="Lyndon convex order")
    common(q)
    q.set_defaults(func=cmd_order)

    q = sub.add_parser("cuspidal", help="cuspidal module character")
    common(q)
    q.add_argument("--root", required=True)
    q.add_argument("--word", help="evaluate one word (E8 highest root)")
    q.set_defaults(func=cmd_cuspidal)

    q = sub.add_parser("char", help="proper standard characters of a weight")
    common(q)
    q.add_argument("--alpha", required=True)
    q.set_defaults(func=cmd_char)

    q = sub.add_parser("dimcheck", help="graded dimension formula vs direct count")
    common(q)
    q.add_argument("--alpha", required=True)
    q.add_argument("--cutoff", type=int, default=_default_cutoff())
    q.set_defaults(func=cmd_dimcheck)

    q = sub.add_parser("nilhecke", help="nilHecke idempotent identities")
    q.add_argument("--d", type=int, required=True)
    q.set_defaults(func=cmd_nilhecke)

    q = sub.add_parser("verify", help="cell chain verification for a weight")
    common(q)
    q.add_argument("--alpha", required=True)
    q.add_argument("--cutoff", type=int, default=_default_cutoff())
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("hypothesis", help="cell datum clauses for one root")
    common(q)
    q.add_argument("--root", required=True)
    q.add_argument("--cutoff", type=int, default=_default_cutoff())
    q.set_defaults(func=cmd_hypothesis)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (UnsupportedTypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
