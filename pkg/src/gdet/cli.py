"""gdet: integer group determinants of SmallGroup(16,13) from the command line.

Coefficients are given as sixteen comma-separated integers in the order
a0..a3, b0..b3, c0..c3, d0..d3 of

    F(X, Y, Z) = f(Z) + g(Z) X + h(Z) Y + t(Z) XY,
    f(x) = a0 + a1 x + a2 x^2 + a3 x^3 (g, h, t likewise with b, c, d).

For --group z2xd8 (16 values) or z2cubed (8 values) the coefficients are
taken in the group's element-index order instead. Use --coeffs=-1,0,... when
the list starts with a minus sign.

Exit status: 0 success, 1 usage error, 2 not achievable, 3 scan violations,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classification, frobenius, groups, identities, witnesses
from .errors import InvariantViolation

EXIT_OK, EXIT_USAGE, EXIT_NOT_ACHIEVABLE, EXIT_VIOLATIONS, EXIT_INVARIANT = range(5)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise UsageError(f"not a comma-separated integer list: {text!r}") from None


def _element(args) -> groups.GroupRingElement:
    if args.coeffs is None:
        raise UsageError("--coeffs is required")
    values = _ints(args.coeffs)
    if args.group == "sg16_13":
        if len(values) != 16:
            raise UsageError(f"expected 16 coefficients, got {len(values)}")
        return frobenius.element_from_tuple(frobenius.CoefficientTuple.from_flat(values))
    G = groups.build_group(args.group)
    if len(values) != G.order:
        raise UsageError(f"expected {G.order} coefficients for {args.group}, got {len(values)}")
    return groups.GroupRingElement(G, tuple(values))


def _emit(args, record: dict, human: str) -> None:
    if args.json:
        print(json.dumps(record))
    else:
        print(human)


def _require_n(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    return args.n


def cmd_det(args) -> int:
    u = _element(args)
    value = groups.group_determinant(u)
    _emit(args, {"command": "det", "group": args.group, "value": value}, str(value))
    return EXIT_OK


def cmd_factored(args) -> int:
    if args.group != "sg16_13":
        raise UsageError("factored is only defined for sg16_13")
    u = _element(args)
    t = frobenius.tuple_from_element(u)
    fd = frobenius.factored_determinant(t)
    oracle = groups.group_determinant(u)
    match = oracle == fd.value
    record = {"command": "factored", "M": fd.M, "U": fd.U, "V": fd.V, "A": fd.A,
              "value": fd.value, "oracle": oracle, "match": match}
    _emit(args, record, f"M={fd.M} U={fd.U} V={fd.V} A={fd.A} value={fd.value} "
                        f"oracle={'match' if match else f'MISMATCH({oracle})'}")
    return EXIT_OK if match else EXIT_INVARIANT


def _verdict_record(n: int, result) -> dict:
    return {"command": "check", "n": n, "verdict": result.verdict, "reason": result.reason,
            "evidence": result.evidence}


def cmd_check(args) -> int:
    n = _require_n(args)
    result = classification.is_achievable(n)
    human = f"{n}: {result.verdict} ({result.reason})"
    if result.evidence:
        human += " " + " ".join(f"{k}={v}" for k, v in result.evidence.items())
    _emit(args, _verdict_record(n, result), human)
    return EXIT_OK if result.achievable else EXIT_NOT_ACHIEVABLE


def cmd_witness(args) -> int:
    n = _require_n(args)
    try:
        recipe = witnesses.witness_for(n)
    except witnesses.NotAchievable as exc:
        record = _verdict_record(n, exc.result) | {"command": "witness"}
        _emit(args, record, f"{n}: not_achievable ({exc.result.reason})")
        return EXIT_NOT_ACHIEVABLE
    record = {"command": "witness", "n": n, "verdict": "achievable"} | recipe.to_record()
    params = " ".join(f"{k}={v}" for k, v in recipe.params.items())
    coeffs = ",".join(str(c) for c in recipe.tuple.flat)
    _emit(args, record, f"{n}: {recipe.family} {params}\n--coeffs={coeffs}")
    return EXIT_OK


def cmd_scan(args) -> int:
    box = _ints(args.box)
    if len(box) != 2:
        raise UsageError("--box takes lo,hi")
    report = classification.brute_force_scan(
        tuple(box), group=args.group, budget=args.budget, seed=args.seed, workers=args.workers
    )
    summary = report.summary()
    if args.json:
        print(json.dumps({"command": "scan", "box": box} | summary))
    else:
        for key, value in summary.items():
            if key != "violations":
                print(f"{key:>24}: {value}")
        for v in summary["violations"]:
            print(f"VIOLATION value={v['value']} tuple={v['tuple']}")
    return EXIT_OK if report.ok else EXIT_VIOLATIONS


def cmd_identities(args) -> int:
    failures = []
    for row in classification.random_tuples(args.trials, args.bound, args.seed):
        report = identities.check_identities(frobenius.CoefficientTuple.from_flat(row))
        if not report.ok:
            failures.append({"tuple": row, "failed": report.failures})
    if args.json:
        print(json.dumps({"command": "identities", "trials": args.trials, "bound": args.bound,
                          "seed": args.seed, "violations": failures}))
    else:
        print(f"checked {args.trials} tuples in [-{args.bound},{args.bound}]^16: {len(failures)} failures")
        for f in failures[:20]:
            print(f"FAIL {','.join(f['failed'])} tuple={f['tuple']}")
    return EXIT_OK if not failures else EXIT_INVARIANT


def selftest() -> list[tuple[str, bool]]:
    """Small end-to-end checks; each entry is (description, passed)."""
    out = []
    ct = frobenius.CoefficientTuple
    rows = list(classification.random_tuples(200, 5, seed=1))
    out.append(("closed form equals Cayley determinant on 200 tuples", all(
        frobenius.factored_determinant(ct.from_flat(r)).value
        == groups.group_determinant(frobenius.element_from_tuple(ct.from_flat(r)))
        for r in rows)))
    out.append(("identities hold on 200 tuples", all(identities.check_identities(ct.from_flat(r)).ok for r in rows)))
    samples = [0, 1, 17, 9, 25, 57, -39, 2 ** 16, -(2 ** 16), 3 * 2 ** 16, 2 ** 17, 2 ** 18]
    out.append(("witnesses round-trip through the oracle", all(
        groups.group_determinant(frobenius.element_from_tuple(witnesses.witness_for(n).tuple)) == n
        for n in samples)))
    out.append(("known exclusions", not any(
        classification.is_achievable(n).achievable for n in (2, 2 ** 15, 3, 41, 217))))
    report = classification.brute_force_scan((0, 1), budget=1 << 16, workers=1)
    out.append(("exhaustive scan of [0,1]^16 has no violations", report.ok and report.candidates == 65536))
    return out


def cmd_selftest(args) -> int:
    results = selftest()
    if args.json:
        for name, passed in results:
            print(json.dumps({"command": "selftest", "check": name, "passed": passed}))
    else:
        for name, passed in results:
            print(f"{'PASS' if passed else 'FAIL'}  {name}")
    return EXIT_OK if all(p for _, p in results) else EXIT_INVARIANT


COMMANDS = {
    "det": cmd_det,
    "factored": cmd_factored,
    "check": cmd_check,
    "witness": cmd_witness,
    "scan": cmd_scan,
    "identities": cmd_identities,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gdet", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--coeffs", help="comma-separated coefficients (det, factored)")
    parser.add_argument("--group", choices=groups.GROUP_IDS, default=None,
                        help="group (default sg16_13)")
    parser.add_argument("--n", type=int, help="target integer (check, witness)")
    parser.add_argument("--box", default="-1,1", help="scan range lo,hi for every coefficient")
    parser.add_argument("--budget", type=int, default=50_000_000,
                        help="scan exhaustively up to this many tuples, else sample this many")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=None,
                        help=f"scan worker processes (default ${classification.WORKERS_ENV} or CPU count)")
    parser.add_argument("--trials", type=int, default=10_000, help="identities: number of random tuples")
    parser.add_argument("--bound", type=int, default=50, help="identities: coefficient bound")
    parser.add_argument("--json", action="store_true", help="emit json-lines records")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.group is None:
        args.group = "sg16_13"
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"gdet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except classification.FactorizationError as exc:
        if args.json:
            print(json.dumps({"command": args.command, "error": "unsupported_range", "message": str(exc)}))
        else:
            print(f"gdet: unsupported range: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"gdet: internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
