"""Command-line interface: ``weilspec <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 bad usage or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import algebraic_sets as al
from . import finite_field as ff
from . import group_algebra as ga
from . import survey as sv
from . import weil
from .errors import WeilError
from .finite_field import FieldElement, FieldSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
BRUTE_LIMIT = 20_000


class UsageError(Exception):
    pass


def parse_element(K: FieldSpec, text: str) -> FieldElement:
    """An element given as a code in [0, q), a negative integer of F_p, or g^k."""
    text = text.strip()
    if text.startswith("g^"):
        T = ff.tables(K)
        k = int(text[2:])
        return K.from_code(int(T.exp[k % T.m]))
    v = int(text)
    if v < 0:
        return K.element(v)
    if v >= K.q:
        raise UsageError(f"element code {v} out of range for F_{K.q}")
    return K.from_code(v)


def _print_report(rep, out) -> None:
    print(rep, file=out)
    print("OK" if rep.ok else f"FAILED: {', '.join(r.name for r in rep.failures())}", file=out)


def cmd_spectrum(args, out) -> int:
    text, doc = sv.spectrum_report(args.field, args.s)
    print(json.dumps(doc, indent=2) if args.json else text, file=out)
    return EXIT_OK if not doc["failures"] else EXIT_FAIL


def cmd_survey(args, out) -> int:
    cfg = sv.SurveyConfig(
        q_max=args.q_max,
        include_prime_powers=not args.primes_only,
        lemma_suite=args.lemmas,
        output_path=args.out,
        format=args.format,
        jobs=args.jobs,
        seed=args.seed,
    )
    rows, summary = sv.survey(cfg)
    body = sv.render_output(rows, summary, cfg.format)
    if cfg.output_path:
        with open(cfg.output_path, "w", newline="") as fh:
            fh.write(body)
    else:
        out.write(body)
    err = sys.stderr
    print(f"pairs: {len(rows)}", file=err)
    print(f"3-valued classes: {summary.three_valued}", file=err)
    print(f"4-valued classes: {summary.four_valued}", file=err)
    print(f"irrational 3-valued: {summary.irrational_three_valued}", file=err)
    print(f"irrational 4-valued: {summary.irrational_four_valued}", file=err)
    if summary.exceptional_values:
        print(f"F_5 exceptional values: {{{', '.join(summary.exceptional_values)}}}", file=err)
    for q, s, bad in summary.failures:
        print(f"FAIL q={q} s={s}: {'; '.join(bad)}", file=err)
    return EXIT_OK if summary.ok else EXIT_FAIL


def cmd_qcount(args, out) -> int:
    K = ff.parse_field(args.field)
    weil.require_invertible(K, args.s)
    t = tuple(parse_element(K, x) for x in args.t.split(",") if x.strip())
    a, b = parse_element(K, args.a), parse_element(K, args.b)
    query = al.QQuery(t, a, b)
    count = al.q_count(K, args.s, query)
    k, q = len(t), K.q
    print(f"Q^t_(a,b) = {count}  (F_{q}, s={args.s}, t={[str(x) for x in t]}, a={a}, b={b})", file=out)

    checks: list[tuple[str, bool]] = []
    table = al.q_table(K, args.s, t)
    checks.append(("full enumeration", int(table[K.code(a), K.code(b)]) == count))
    if q**k <= BRUTE_LIMIT:
        checks.append(("element-by-element count", al.q_count_brute(K, args.s, query) == count))
    checks.append(("column sum is q^(k-1)", int(table[:, K.code(b)].sum()) == q ** (k - 1)))
    q00 = int(table[0, 0])
    if a.is_zero() != b.is_zero():
        checks.append(("zero target formula", count * (q - 1) == q ** (k - 1) - q00))
    if k == 1:
        want = int(ff.mul(K, t[0], b) == a)
        checks.append(("k = 1 formula", count == want))
    if k == 2 and (a.is_zero() or b.is_zero()):
        d = int(t[0] == t[1])
        want = 1 + (q - 1) * d if a.is_zero() and b.is_zero() else 1 - d
        checks.append(("k = 2 formula", count == want))
    for name, ok in checks:
        print(f"  {'PASS' if ok else 'FAIL'}  {name}", file=out)
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_FAIL


def cmd_algebra_check(args, out) -> int:
    K = ff.parse_field(args.field)
    rep = ga.verify_identities(K, args.s, seed=args.seed)
    rep.merge(ga.verify_characters(K, seed=args.seed))
    if args.lemma:
        rep = rep.filtered(args.lemma)
        if not rep.results:
            raise UsageError(f"no check matches {args.lemma!r}")
    _print_report(rep, out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(args, out) -> int:
    K = ff.parse_field(args.field)
    rep = sv.verify_pair(K, args.s, args.seed)
    _print_report(rep, out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weilspec", description="Weil spectra of binomials")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="values, frequencies and Galois cycle type")
    p.add_argument("field", help='field spec: "p", "p^n" or "p^n:c0,..,cn"')
    p.add_argument("s", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("survey", help="classify every exponent class up to q_max")
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--lemmas", action="store_true", help="also run the identity suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--primes-only", action="store_true")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("qcount", help="count points with t.v = a and sum v^s = b^s")
    p.add_argument("field")
    p.add_argument("s", type=int)
    p.add_argument("--t", required=True, help="comma-separated unit codes (or g^k)")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_qcount)

    p = sub.add_parser("algebra-check", help="group-algebra and character identities")
    p.add_argument("field")
    p.add_argument("s", type=int)
    p.add_argument("--lemma", help="only report checks whose name starts with this")
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_algebra_check)

    p = sub.add_parser("verify", help="every exact check for one pair")
    p.add_argument("field")
    p.add_argument("s", type=int)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except WeilError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
