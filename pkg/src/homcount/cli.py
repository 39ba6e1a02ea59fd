"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch or inconsistent oracle,
2 malformed input / configuration / I/O error.  Output is byte-deterministic
for identical inputs and seed.
"""

from __future__ import annotations

import argparse
import subprocess
import sys
from fractions import Fraction

from . import basis, interpolation, jsonio
from .counting import count_condens, count_hom, count_surjhom
from .errors import HomcountError, OracleInconsistent, SliceTooLarge
from .sampling import random_structure
from .structures import canonical_key, total_size

_COUNTERS = {
    "hom": count_hom,
    "surjhom": count_surjhom,
    "condens": count_condens,
}


def cmd_count(args) -> int:
    a = jsonio.load_structure(args.src)
    b = jsonio.load_structure(args.dst)
    print(_COUNTERS[args.kind](a, b))
    return 0


def cmd_expand(args) -> int:
    template = jsonio.load_structure(args.template)
    if args.kind == "surjhom":
        lc = basis.expand_surjhom(template)
    else:
        lc = basis.expand_condens(template)
    payload = jsonio.dumps(jsonio.expansion_to_obj(args.kind, template, lc))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(payload)
    print(f"wrote {len(lc)} terms to {args.out}")
    return 0


def cmd_verify(args) -> int:
    if args.samples < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return 2
    if args.max_size < 1:
        print("error: --max-size must be >= 1", file=sys.stderr)
        return 2
    kind, template, lc = jsonio.load_expansion(args.expansion)
    counter = count_surjhom if kind == "surjhom" else count_condens
    failures = 0
    for i in range(args.samples):
        sample = random_structure(template.signature, args.max_size, args.seed, i)
        got = basis.evaluate(lc, sample)
        want = counter(sample, template)
        if got == want:
            print(f"sample {i}: |A|={len(sample.universe)} ok ({want})")
        else:
            failures += 1
            print(f"sample {i}: MISMATCH expected {want}, expansion gives {got}")
            print(f"counterexample: {jsonio.dumps(jsonio.structure_to_obj(sample)).strip()}")
    if failures:
        print(f"FAIL: {failures} of {args.samples} samples disagree")
        return 1
    print(f"PASS: all {args.samples} samples agree")
    return 0


def _external_oracle(command: str):
    def ask(structure) -> Fraction:
        payload = jsonio.dumps(jsonio.structure_to_obj(structure))
        proc = subprocess.run(
            command,
            shell=True,
            input=payload.encode(),
            stdout=subprocess.PIPE,
            stderr=subprocess.DEVNULL,
        )
        text = proc.stdout.decode(errors="replace").strip()
        if proc.returncode != 0:
            raise OracleInconsistent(f"oracle command exited {proc.returncode}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise OracleInconsistent(f"oracle answer {text!r} is not a rational") from exc

    return ask


def cmd_extract(args) -> int:
    _kind, _template, lc = jsonio.load_expansion(args.expansion)
    a = jsonio.load_structure(args.input)
    if args.self_test:
        oracle = lambda x: basis.evaluate(lc, x)  # noqa: E731
    else:
        oracle = _external_oracle(args.oracle_cmd)
    values = interpolation.extract_hom_values(lc, oracle, a)
    for (_, struct), value in zip(lc.terms, values):
        print(f"{canonical_key(struct).decode()}\t{value}")
    if args.self_test:
        direct = [count_hom(a, struct) for _, struct in lc.terms]
        if direct != values:
            print(f"self-test: MISMATCH direct counts {direct}", file=sys.stderr)
            return 1
        print("self-test: extracted values match direct counts")
    return 0


def cmd_enumerate(args) -> int:
    sig = jsonio.load_signature(args.signature)
    reps = basis.enumerate_classes_guarded(sig, args.max_size)
    for rep in reps:
        print(f"{total_size(rep)}\t{canonical_key(rep).decode()}")
    print(f"{len(reps)} classes")
    return 0


def cmd_matrices(args) -> int:
    sig = jsonio.load_signature(args.signature)
    mv = basis.matrix_views(sig, args.max_size)
    report = basis.verify_matrix_identities(mv)
    n = len(mv.index)
    if report.ok:
        print(f"identities hold on the {n}x{n} slice")
        return 0
    for name, i, j, expected, got in report.product_violations:
        print(f"violation {name} at ({i},{j}): expected {expected}, got {got}")
    for name, i, j, got in report.triangular_violations:
        print(f"violation {name} at ({i},{j}): got {got}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homcount",
        description="Exact homomorphism counting over finite relational structures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count maps between two structure files")
    p.add_argument("--kind", choices=("hom", "surjhom", "condens"), required=True)
    p.add_argument("--from", dest="src", required=True, metavar="A.json")
    p.add_argument("--to", dest="dst", required=True, metavar="B.json")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("expand", help="write the hom-basis expansion of a template")
    p.add_argument("--kind", choices=("surjhom", "condens"), required=True)
    p.add_argument("--template", required=True, metavar="B.json")
    p.add_argument("--out", required=True, metavar="EXP.json")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="compare an expansion against brute force")
    p.add_argument("--expansion", required=True, metavar="EXP.json")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extract", help="recover hom counts from an oracle")
    p.add_argument("--expansion", required=True, metavar="EXP.json")
    p.add_argument("--input", required=True, metavar="A.json")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--self-test", action="store_true")
    mode.add_argument(
        "--oracle-cmd",
        metavar="CMD",
        help="shell command answering one rational per structure JSON on stdin",
    )
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("enumerate", help="list canonical class representatives")
    p.add_argument("--signature", required=True, metavar="SIG.json")
    p.add_argument("--max-size", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("matrices", help="build and verify the matrix identities")
    p.add_argument("--signature", required=True, metavar="SIG.json")
    p.add_argument("--max-size", type=int, required=True)
    p.set_defaults(func=cmd_matrices)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OracleInconsistent as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except SliceTooLarge as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except HomcountError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
