"""Command-line interface.

Subcommands: zech (table construction), debruijn (full cycle-joining
pipeline), certify (star / almost-star certificates), crossjoin, fryers,
cyclotomic. Outputs are deterministic: the same arguments and seeds give
byte-identical files. Exit codes: 0 success, 2 partial result (incomplete
table, disconnected graph), 3 invalid input.
"""

import argparse
import io
import json
import sys

from .conjugacy import cyclotomic_numbers
from .crossjoin import fryers_coefficients, fryers_total, random_crossjoin
from .cycles import CycleCtx
from .gf2poly import (
    degree,
    is_debruijn,
    poly_from_set_notation,
    poly_to_set_notation,
    seq_to_hex,
)
from .graph import (
    certify_almost_star,
    certify_star,
    connected_subgraph,
    count_spanning_trees,
    deterministic_spanning_tree,
    export_dot,
    log2_int,
    sample_spanning_tree,
)
from .joining import generate_debruijn, tree_feedback
from .zech import ResourceCapError, build_zech_table

EXIT_OK = 0
EXIT_PARTIAL = 2
EXIT_INVALID = 3


def _parse_poly(text):
    return poly_from_set_notation(text)


def _emit(args, text):
    if args.out:
        with open(args.out, "w") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)


def cmd_zech(args):
    p = _parse_poly(args.p)
    try:
        table = build_zech_table(p, mode=args.mode, cap=args.cap,
                                 lift=not args.no_lift, budget=args.budget)
    except (ResourceCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    buf = io.StringIO()
    table.dump(buf)
    _emit(args, buf.getvalue())
    cov = table.coverage()
    print(
        f"zech n={table.n} elements={cov['elements_known']}/{cov['elements_total']} "
        f"cosets={cov['cosets_known']}/{cov['cosets_total']} "
        f"complete={int(cov['complete'])}",
        file=sys.stderr,
    )
    return EXIT_OK if table.complete else EXIT_PARTIAL


def _build_ctx(args, p, t):
    n = degree(p)
    if t < 1 or ((1 << n) - 1) % t:
        raise ValueError(f"t = {t} does not divide 2^{n} - 1")
    mode = args.mode if hasattr(args, "mode") else "auto"
    table = build_zech_table(p, mode=mode)
    return CycleCtx(p, t, zech=table)


def cmd_debruijn(args):
    p = _parse_poly(args.p)
    n = degree(p)
    try:
        ctx = _build_ctx(args, p, args.t)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    g = connected_subgraph(ctx)
    if not g.is_connected():
        adj = {}
        for (u, v) in g.mult:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj.get(stack.pop(), ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        missing = sorted(w - 1 for w in set(range(g.size)) - seen)
        print(f"error: adjacency graph disconnected; unreached cycles {missing}",
              file=sys.stderr)
        return EXIT_PARTIAL
    if args.format == "dot":
        _emit(args, export_dot(g, simplified=True))
        return EXIT_OK
    count_trees, log2 = count_spanning_trees(g), None
    if count_trees:
        log2 = log2_int(count_trees)
    records = []
    for idx in range(args.count):
        if idx == 0:
            tree = deterministic_spanning_tree(g)
        else:
            tree = sample_spanning_tree(g, seed=(args.seed << 20) ^ idx)
        fb = tree_feedback(ctx, tree)
        try:
            text = str(fb.to_anf(1 << 16))
        except ValueError:
            text = str(fb)
        rec = {"tree": idx, "feedback": text, "degree": fb.degree}
        if n <= args.materialize_cap:
            bits = generate_debruijn(ctx, tree)
            if n <= 14 and not is_debruijn(bits, n):
                raise AssertionError("window test failed on generated sequence")
            rec["period"] = len(bits)
            rec["hex"] = seq_to_hex(bits)
        records.append(rec)
    payload = {
        "p": poly_to_set_notation(p),
        "t": ctx.t,
        "f": poly_to_set_notation(ctx.f),
        "spanning_trees": str(count_trees),
        "log2_trees": round(log2, 2) if log2 is not None else None,
        "sequences": records,
    }
    if args.format == "json":
        _emit(args, json.dumps(payload, sort_keys=True) + "\n")
    elif args.format == "hex":
        lines = [f"{rec['period']} {rec['hex']}" for rec in records if "hex" in rec]
        _emit(args, "\n".join(lines) + "\n")
    else:
        lines = [
            f"p = {payload['p']}",
            f"t = {ctx.t}",
            f"f = {payload['f']}",
            f"spanning trees = {count_trees} (~2^{payload['log2_trees']})",
        ]
        for rec in records:
            lines.append(f"tree {rec['tree']}: h = {rec['feedback']}")
            if "hex" in rec:
                lines.append(f"tree {rec['tree']}: period {rec['period']} hex {rec['hex']}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_certify(args):
    p = _parse_poly(args.p)
    zech = build_zech_table(p)
    certs = []
    if args.l is not None:
        if args.t is None:
            print("error: --l needs --t", file=sys.stderr)
            return EXIT_INVALID
        certs = [certify_almost_star(p, args.t, args.l, z_max=args.budget_z, zech=zech)]
    elif args.t is not None:
        certs = certify_star(p, z_max=args.budget_z, zech=zech, ts=[args.t])
        if not certs:
            print(f"note: t = {args.t} skipped (invalid for this polynomial)",
                  file=sys.stderr)
            return EXIT_INVALID
    else:
        certs = certify_star(p, t_max=args.budget_s, z_max=args.budget_z, zech=zech)
    if args.format == "json":
        _emit(args, "\n".join(c.to_json() for c in certs) + "\n")
    else:
        lines = []
        for c in certs:
            if c.found:
                lines.append(
                    f"t={c.t} center=u{c.center} witness={{{','.join(map(str, c.witness))}}} "
                    f"cp={c.cp} dbseqs~2^{round(c.log2, 2)}"
                )
            else:
                lines.append(f"t={c.t} center=u{c.center}: no star spanning tree found")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if all(c.found for c in certs) else EXIT_PARTIAL


def cmd_crossjoin(args):
    p = _parse_poly(args.p)
    zech = build_zech_table(p)
    ab = None
    if args.ab:
        a, b = args.ab.split(",")
        ab = (int(a), int(b))
    records = []
    for idx in range(args.count):
        seed = ((args.seed << 20) ^ idx) if ab is None else None
        pair, fb, prov = random_crossjoin(p, zech=zech, seed=seed, ab=ab)
        try:
            text = str(fb.to_anf(1 << 16))
        except ValueError:
            text = str(fb)
        records.append({"feedback": text, "degree": fb.degree, **prov})
    if args.format == "json":
        _emit(args, "\n".join(json.dumps(r, sort_keys=True) for r in records) + "\n")
    else:
        lines = []
        for r in records:
            lines.append(
                f"a={r['a']} b={r['b']} tau(a)={r['tau_a']} tau(b)={r['tau_b']} "
                f"degree={r['degree']}"
            )
            lines.append(f"h = {r['feedback']}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_fryers(args):
    rows = [(k, c) for k, c in fryers_coefficients(args.n)]
    total = fryers_total(args.n, verify=args.n <= 12)
    if args.format == "json":
        payload = {
            "n": args.n,
            "coefficients": {str(k): str(c) for k, c in rows},
            "total": str(total),
        }
        _emit(args, json.dumps(payload, sort_keys=True) + "\n")
    else:
        lines = [f"N({args.n};{k}) = {c}" for k, c in rows]
        lines.append(f"total = {total}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_cyclotomic(args):
    p = _parse_poly(args.p)
    try:
        ctx = _build_ctx(args, p, args.t)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    matrix = cyclotomic_numbers(ctx)
    if args.format == "json":
        _emit(args, json.dumps({"p": poly_to_set_notation(p), "t": args.t,
                                "matrix": matrix}, sort_keys=True) + "\n")
    else:
        lines = [" ".join(str(x) for x in row) for row in matrix]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="zechbruijn",
        description="Binary de Bruijn sequences by cycle joining and "
                    "cross-joining, driven by Zech logarithm tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--format", default="text",
                        choices=["text", "json", "dot", "hex"])

    sp = sub.add_parser("zech", help="build a Zech logarithm table file")
    sp.add_argument("--p", required=True, help='polynomial, e.g. "n=10;{3}" or 0x409')
    sp.add_argument("--mode", default="auto",
                    choices=["auto", "bruteforce", "propagate"])
    sp.add_argument("--no-lift", action="store_true",
                    help="disable the subfield lift fallback")
    sp.add_argument("--cap", type=int, default=26)
    sp.add_argument("--budget", type=int, default=None,
                    help="chain-sweep candidate budget (large degrees)")
    add_common(sp)
    sp.set_defaults(func=cmd_zech)

    sp = sub.add_parser("debruijn", help="generate de Bruijn sequences")
    sp.add_argument("--p", required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", default="auto",
                    choices=["auto", "bruteforce", "propagate"])
    sp.add_argument("--materialize-cap", type=int, default=26)
    add_common(sp)
    sp.set_defaults(func=cmd_debruijn)

    sp = sub.add_parser("certify", help="star / almost-star certificates")
    sp.add_argument("--p", required=True)
    sp.add_argument("--t", type=int, default=None)
    sp.add_argument("--l", type=int, default=None, help="almost-star center index")
    sp.add_argument("--budget-s", type=int, default=2000, help="t sweep bound")
    sp.add_argument("--budget-z", type=int, default=2000, help="witness walk bound")
    add_common(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("crossjoin", help="cross-join NLFSR construction")
    sp.add_argument("--p", required=True)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--ab", default=None, help="force exponents, e.g. 7,21")
    add_common(sp)
    sp.set_defaults(func=cmd_crossjoin)

    sp = sub.add_parser("fryers", help="Fryers coefficients and total")
    sp.add_argument("--n", type=int, required=True)
    add_common(sp)
    sp.set_defaults(func=cmd_fryers)

    sp = sub.add_parser("cyclotomic", help="cyclotomic number matrix")
    sp.add_argument("--p", required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--mode", default="auto",
                    choices=["auto", "bruteforce", "propagate"])
    add_common(sp)
    sp.set_defaults(func=cmd_cyclotomic)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
