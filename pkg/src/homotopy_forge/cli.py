"""Command-line front end.

Every output starts with a header recording the tool version, the command
parameters, the seed and the y-coordinate convention, so identical
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .kernels import (
    IteratedSpec,
    ProjectionSpec,
    dump_jsonl,
    enumerate_at,
    enumerate_bt,
    iterated_a,
)
from .pipelines import (
    FaceTableMismatch,
    Mismatch,
    UnstableTruncation,
    compute_one_stem_sphere,
    compute_pi2_circle,
    compute_pi_k_circle,
    format_coords,
    k_alphabet,
    k_basis,
    lie_basis,
    lie_rank,
    samelson,
)
from .presentations import TARGETS, emit_presentation
from .simplicial import Y_CONVENTION
from .verify import REGISTRY, run_invariants
from .words import parse_letter

PROG = "homotopy-forge"


class UsageError(ValueError):
    pass


def _letters(spec: str) -> list:
    out = []
    for s in spec.split(","):
        s = s.strip()
        if s:
            try:
                out.append(parse_letter(s if "[" in s else s + "[]").gen)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
    return out


def _header(args: argparse.Namespace) -> dict:
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("command", "format", "output", "seed", "func") and v is not None}
    return {"tool": PROG, "version": __version__, "command": args.command, "params": params,
            "seed": args.seed, "y_convention": Y_CONVENTION}


def _render(args: argparse.Namespace, result: dict, text: str) -> str:
    head = _header(args)
    if args.format == "json":
        return json.dumps({**head, "result": result}, indent=1, sort_keys=True) + "\n"
    params = " ".join(f"--{k.replace('_', '-')} {' '.join(map(str, v)) if isinstance(v, list) else v}"
                      for k, v in head["params"].items())
    lines = [f"# {PROG} {__version__}",
             f"# {args.command} {params}".rstrip(),
             f"# seed {args.seed}",
             f"# {Y_CONVENTION}"]
    return "\n".join(lines) + "\n" + text


# subcommands each return (result dict, text body, exit code)


def cmd_present(args):
    if args.target == "sigma_kzm" and args.m is None:
        raise UsageError("--m is required for sigma_kzm")
    if args.target == "wedge_s2" and args.J is None:
        raise UsageError("--J is required for wedge_s2")
    try:
        doc = emit_presentation(args.target, args.n, m=args.m, J=args.J, weight_cap=args.weight)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return doc.to_dict(), doc.render_text(), 0


def cmd_pi(args):
    c = args.c
    if c < 3:
        raise UsageError("--c must be at least 3")
    if args.space == "circle":
        report = compute_pi2_circle(c)
    elif args.space == "sphere":
        if args.n is None or not 2 <= args.n <= 4:
            raise UsageError("--n must be 2, 3 or 4 for the sphere")
        report = compute_one_stem_sphere(args.n, c)
    else:
        if args.n is None or not 1 <= args.n <= 5:
            raise UsageError("--n must be between 1 and 5 for kcircle")
        report = compute_pi_k_circle(args.n, c)
    return report.to_dict(), report.render_text(), 0


def cmd_lie(args):
    if args.rank is not None:
        if not 1 <= args.rank <= 6:
            raise UsageError("--rank must be between 1 and 6")
        r = lie_rank(args.rank)
        return {"n": args.rank, "rank": r}, f"{r}\n", 0
    if not 1 <= args.basis <= 6:
        raise UsageError("--basis must be between 1 and 6")
    basis = [str(t) for t in lie_basis(args.basis)]
    return {"n": args.basis, "basis": basis}, "".join(b + "\n" for b in basis), 0


def cmd_samelson(args):
    p, q = args.p, args.q
    if p < 1 or q < 1 or p + q > 5:
        raise UsageError("need --p, --q >= 1 with p + q <= 5")
    A, B = k_basis(p), k_basis(q)
    pairs = [(i, j) for i in range(len(A)) for j in range(len(B))]
    if args.a is not None or args.b is not None:
        i, j = args.a or 0, args.b or 0
        if not (0 <= i < len(A) and 0 <= j < len(B)):
            raise UsageError(f"basis indices must be below {len(A)} and {len(B)}")
        pairs = [(i, j)]
    alph = k_alphabet(p + q)
    rows, lines, code = [], [], 0
    for i, j in pairs:
        direct, shuffle = samelson(A[i], p, B[j], q)
        agree = direct == shuffle
        code = code or (0 if agree else 1)
        rows.append({"a": str(A[i]), "b": str(B[j]), "direct": format_coords(direct, alph),
                     "shuffle": format_coords(shuffle, alph), "agree": agree})
        lines.append(f"<{A[i]}, {B[j]}> = {format_coords(direct, alph)}"
                     + ("" if agree else f"  MISMATCH shuffle {format_coords(shuffle, alph)}"))
    return {"p": p, "q": q, "products": rows}, "\n".join(lines) + "\n", code


def cmd_kernel_gens(args):
    S = _letters(args.letters)
    if not S:
        raise UsageError("--letters must name at least one generator")
    try:
        if args.kind == "iterated":
            if not args.chain:
                raise UsageError("--chain is required for iterated")
            chain = [_letters(part) for part in args.chain.split(";")]
            items = iterated_a(IteratedSpec(S, chain), args.weight)
        else:
            spec = ProjectionSpec(S, _letters(args.keep or ""))
            items = (enumerate_at if args.kind == "at" else enumerate_bt)(spec, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    body = dump_jsonl(items, args.kind)
    records = [json.loads(line) for line in body.splitlines()]
    return {"count": len(records), "generators": records}, body, 0


def cmd_verify(args):
    try:
        results = run_invariants(args.seed, args.only)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    lines, code = [], 0
    for name, res in results:
        ok = bool(res.get("ok"))
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}")
        if not ok and code == 0:
            code = 1
            lines.append(f"first failure: {name}: {json.dumps(res, sort_keys=True, default=str)}")
            lines.append(f"reproduce with: {PROG} verify --only {name} --seed {args.seed}")
    data = {name: res for name, res in results}
    return json.loads(json.dumps(data, default=str)), "\n".join(lines) + "\n", code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--output", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog=PROG, description="Graded homotopy computations "
                                     "with simplicial free groups.")
    parser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("present", parents=[common], help="emit a presentation")
    p.add_argument("--target", choices=TARGETS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--J", type=int)
    p.add_argument("--weight", type=int, help="bracket weight cap (default n+2)")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("pi", parents=[common], help="compute a homotopy group")
    p.add_argument("--space", choices=("circle", "sphere", "kcircle"), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--c", type=int, default=5, help="truncation class")
    p.set_defaults(func=cmd_pi)

    p = sub.add_parser("lie", parents=[common], help="rank or basis of Lie(n)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--rank", type=int)
    g.add_argument("--basis", type=int)
    p.set_defaults(func=cmd_lie)

    p = sub.add_parser("samelson", parents=[common], help="Samelson products of basis classes")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, help="index of the first basis class")
    p.add_argument("--b", type=int, help="index of the second basis class")
    p.set_defaults(func=cmd_samelson)

    p = sub.add_parser("kernel-gens", parents=[common], help="generators of projection kernels")
    p.add_argument("--kind", choices=("at", "bt", "iterated"), required=True)
    p.add_argument("--letters", required=True, help="comma-separated generators, e.g. a,b")
    p.add_argument("--keep", help="comma-separated kept generators (at, bt)")
    p.add_argument("--k", type=int, default=1, help="length horizon (at, bt)")
    p.add_argument("--chain", help="kept sets separated by ';' (iterated)")
    p.add_argument("--weight", type=int, default=3, help="weight cap (iterated)")
    p.set_defaults(func=cmd_kernel_gens)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--only", nargs="+", metavar="NAME",
                   help="names: " + ", ".join(i.name for i in REGISTRY))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, text, code = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except (Mismatch, FaceTableMismatch, UnstableTruncation) as exc:
        print(f"{PROG}: verification failed: {exc}", file=sys.stderr)
        return 1
    out = _render(args, result, text)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
