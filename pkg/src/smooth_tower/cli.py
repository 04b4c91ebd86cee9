"""Command line front end.

    smooth-tower eval  --expr EXPR --at x=1,y=2 --orders "2,1;0,3" [--format plain|csv|json]
    smooth-tower table --expr EXPR --at x=1,y=2 --degree 3        [--format ...]
    smooth-tower bench [--out-dir DIR] [--functions identity,exp-x] [--reps 3]

Exit codes: 0 ok, 1 usage, 2 expression syntax, 3 domain error (or an order
too deep to evaluate), 4 I/O.
Data goes to stdout, diagnostics to stderr.
"""

import argparse
import json
import sys

from . import bench
from .errors import ArityError, DomainError
from .exprlang import ExprSyntaxError, eval_tower, parse
from .multiindex import grlex_key
from .tower import extract, extract_all_upto

EXIT_USAGE, EXIT_SYNTAX, EXIT_DOMAIN, EXIT_IO = 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_point(text):
    """``"x=0.7,y=0.4"`` -> ordered ``{"x": 0.7, "y": 0.4}``."""
    point = {}
    for part in text.split(","):
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep or not name:
            raise UsageError(f"bad binding {part!r}; expected name=value")
        if name in point:
            raise UsageError(f"variable {name!r} bound twice")
        try:
            point[name] = float(value)
        except ValueError:
            raise UsageError(f"bad value for {name!r}: {value.strip()!r}") from None
    return point


def parse_orders(text, arity):
    """``"2,1;0,3"`` -> ``[(2, 1), (0, 3)]``."""
    out = []
    for chunk in text.split(";"):
        try:
            idx = tuple(int(k) for k in chunk.split(","))
        except ValueError:
            raise UsageError(f"bad multi-index {chunk.strip()!r}") from None
        if len(idx) != arity:
            raise UsageError(f"multi-index {chunk.strip()!r} needs {arity} orders")
        if any(k < 0 for k in idx):
            raise UsageError(f"multi-index {chunk.strip()!r} has a negative order")
        out.append(idx)
    return out


def _fmt(v):
    # Shortest round-trip repr; -0.0 prints as 0.0.
    return repr(v + 0.0)


def render(variables, point, rows, fmt):
    if fmt == "json":
        # One coefficient per line keeps the output diff-friendly.
        head = (f'{{"variables": {json.dumps(list(variables))}, '
                f'"point": {json.dumps([point[v] for v in variables])}, "coefficients": [')
        body = [json.dumps({"index": list(idx), "value": v + 0.0}) for idx, v in rows]
        if not body:
            return head + "]}\n"
        return head + "\n  " + ",\n  ".join(body) + "\n]}\n"
    lines = []
    if fmt == "csv":
        lines.append(",".join(list(variables) + ["value"]))
        lines += [",".join([str(k) for k in idx] + [_fmt(v)]) for idx, v in rows]
    else:
        lines += [",".join(str(k) for k in idx) + "\t" + _fmt(v) for idx, v in rows]
    return "\n".join(lines) + "\n"


def _tower(args):
    point = parse_point(args.at)
    expr = parse(args.expr, list(point))
    return point, eval_tower(expr, point)


def cmd_eval(args, out):
    point, tower = _tower(args)
    indices = sorted(set(parse_orders(args.orders, len(point))), key=grlex_key)
    rows = [(idx, extract(tower, idx)) for idx in indices]
    out.write(render(list(point), point, rows, args.format))
    return 0


def cmd_table(args, out):
    if args.degree < 0:
        raise UsageError("--degree must be non-negative")
    point, tower = _tower(args)
    rows = list(extract_all_upto(tower, args.degree).items())
    out.write(render(list(point), point, rows, args.format))
    return 0


def cmd_bench(args, out):
    corpus = bench.CORPUS
    if args.functions:
        wanted = [f.strip() for f in args.functions.split(",") if f.strip()]
        known = {f.label: f for f in bench.CORPUS}
        unknown = [w for w in wanted if w not in known]
        if unknown:
            raise UsageError(f"unknown benchmark function(s): {', '.join(unknown)}; "
                             f"choose from {', '.join(known)}")
        corpus = tuple(known[w] for w in wanted)
    if args.reps < 3:
        raise UsageError("--reps must be at least 3")
    records = bench.run_suite(corpus, reps=args.reps)
    try:
        paths = bench.write_results(records, args.out_dir)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    for p in paths:
        print(f"wrote {p}", file=sys.stderr)
    out.write("function\trepresentation\tgrowth_exponent\n")
    for fn in corpus:
        for rep in bench.REPRESENTATIONS:
            recs = [r for r in records if r.function == fn.label and r.representation == rep]
            out.write(f"{fn.label}\t{rep}\t{bench.growth_exponent(recs):.3f}\n")
    return 0


def build_parser():
    p = _Parser(prog="smooth-tower", description="Lazy multivariate tower differentiation.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def expr_args(sp):
        sp.add_argument("--expr", required=True, help="expression, e.g. 'sin(x)*exp(y^2)'")
        sp.add_argument("--at", required=True, help="ordered bindings, e.g. x=0.7,y=0.4")
        sp.add_argument("--format", choices=("plain", "csv", "json"), default="plain")

    ev = sub.add_parser("eval", help="coefficients at chosen multi-indices")
    expr_args(ev)
    ev.add_argument("--orders", required=True, help="multi-indices like '2,1;0,3'")
    ev.set_defaults(func=cmd_eval)

    tb = sub.add_parser("table", help="every coefficient up to a total degree")
    expr_args(tb)
    tb.add_argument("--degree", type=int, required=True)
    tb.set_defaults(func=cmd_table)

    bn = sub.add_parser("bench", help="succinct vs naive benchmark, CSV output")
    bn.add_argument("--out-dir", default="bench-results")
    bn.add_argument("--functions", default=None,
                    help="comma-separated subset of " + ",".join(f.label for f in bench.CORPUS))
    bn.add_argument("--reps", type=int, default=3)
    bn.set_defaults(func=cmd_bench)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExprSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except (ArityError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RecursionError:
        print("evaluation error: derivative order too deep for the Python recursion limit",
              file=sys.stderr)
        return EXIT_DOMAIN
    except (DomainError, ArithmeticError) as exc:
        where = getattr(args, "at", None)
        print(f"domain error: {exc}" + (f" (evaluating at {where})" if where else ""),
              file=sys.stderr)
        return EXIT_DOMAIN


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
