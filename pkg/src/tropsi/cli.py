"""Command-line interface: ``tropsi <command> [options]``.

Exit status is 0 on success, 1 when a verification suite fails and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .combinatorics import WeightVector
from .fan import Cycle, ray_vector
from .psi import PsiProductQuery, degree, intersect_product, intersect_recursive, psi_class
from .trees import all_ones, enumerate_types, valid_splits
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_weights(spec: str | None, n: int | None) -> WeightVector:
    """``"h,l"`` gives counts of heavy and light marks; ``n`` entries are explicit weights."""
    if spec is None:
        if n is None:
            raise UsageError("give --n or --w")
        return all_ones(n)
    entries = [e.strip() for e in spec.split(",") if e.strip()]
    try:
        if len(entries) == 2 and n != 2:
            w = WeightVector.heavy_light(int(entries[0]), int(entries[1]))
        else:
            w = WeightVector.from_rationals(entries)
    except ValueError as exc:
        raise UsageError(f"bad weight spec {spec!r}: {exc}") from None
    if n is not None and w.n != n:
        raise UsageError(f"weight spec {spec!r} has {w.n} marks but --n is {n}")
    return w


def _query(w: WeightVector, ks: Sequence[int]) -> PsiProductQuery:
    try:
        return PsiProductQuery(w, tuple(ks))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cycle_table(z: Cycle) -> str:
    lines = [f"# n={z.n} w={z.w} dim={z.dim} cones={len(z)}"]
    lines += [f"{c}\t{t}" for t, c in z.items()]
    return "\n".join(lines)


def _emit(obj, table: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(table)


def cmd_enumerate(args, w: WeightVector) -> int:
    if not 0 <= args.codim <= w.n - 3:
        raise UsageError(f"--codim must lie in 0..{w.n - 3}")
    types = enumerate_types(w.n, w, args.codim)
    obj = {"n": w.n, "w": w.to_json(), "codim": args.codim,
           "types": [t.to_json()["splits"] for t in types]}
    _emit(obj, "\n".join(str(t) for t in types), args.format)
    return EXIT_OK


def cmd_rays(args, w: WeightVector) -> int:
    rays = [(s, ray_vector(s, w)) for s in valid_splits(w)]
    obj = {"n": w.n, "w": w.to_json(),
           "rays": [{"split": s.to_json(), "vector": [str(x) for x in v]} for s, v in rays]}
    table = "\n".join(f"v_{s}\t" + " ".join(str(x) for x in v) for s, v in rays)
    _emit(obj, table, args.format)
    return EXIT_OK


def cmd_psi(args, w: WeightVector) -> int:
    if not 1 <= args.mark <= w.n:
        raise UsageError(f"mark must lie in 1..{w.n}")
    z = psi_class(args.mark, w)
    _emit(z.to_json(), _cycle_table(z), args.format)
    return EXIT_OK


def cmd_intersect(args, w: WeightVector) -> int:
    q = _query(w, args.k)
    z = intersect_recursive(q) if args.route == "recursive" else intersect_product(q)
    _emit(z.to_json(), _cycle_table(z), args.format)
    return EXIT_OK


def cmd_degree(args, w: WeightVector) -> int:
    q = _query(w, args.k)
    if q.codim != w.n - 3:
        raise UsageError(f"degree needs exponents summing to {w.n - 3}, got {q.codim}")
    value = str(degree(q))
    _emit(value, value, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    limit = 7 if args.allow_n7 else 6
    if not 4 <= args.max_n <= limit:
        raise UsageError(f"--max-n must lie in 4..{limit}" + ("" if args.allow_n7 else " (use --allow-n7 for 7)"))
    result = run_suite(args.suite, args.max_n)
    if args.format == "json":
        print(json.dumps({"suite": result.name, "passed": result.passed, "checked": result.checked,
                          "failures": list(result.failures)}, sort_keys=True))
    else:
        print(result.summary())
    return EXIT_OK if result.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="number of marks")
    common.add_argument("--w", help='weights: "heavy,light" counts or an explicit list like "1,1,1,1/3,1/3"')
    common.add_argument("--format", choices=("json", "table"), default="json")

    parser = argparse.ArgumentParser(prog="tropsi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="combinatorial types of a given codimension")
    p.add_argument("--codim", type=int, default=0)
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("rays", parents=[common], help="rays of the fan and their vectors")
    p.set_defaults(run=cmd_rays)

    p = sub.add_parser("psi", parents=[common], help="the class psi_{N,w}")
    p.add_argument("mark", type=int)
    p.set_defaults(run=cmd_psi)

    p = sub.add_parser("intersect", parents=[common], help="the product of psi-classes with exponents k1..kn")
    p.add_argument("k", type=int, nargs="+")
    p.add_argument("--route", choices=("closed", "recursive"), default="closed")
    p.set_defaults(run=cmd_intersect)

    p = sub.add_parser("degree", parents=[common], help="top-degree number for exponents k1..kn")
    p.add_argument("k", type=int, nargs="+")
    p.set_defaults(run=cmd_degree)

    p = sub.add_parser("verify", help="run an invariant suite over all heavy/light weights")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--allow-n7", action="store_true", help="permit --max-n 7 (slow)")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(run=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "verify":
            return cmd_verify(args)
        w = parse_weights(args.w, args.n)
        return args.run(args, w)
    except UsageError as exc:
        print(f"tropsi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
