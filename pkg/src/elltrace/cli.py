"""Command-line interface: ``elltrace trace`` and ``elltrace selftest``.

A problem document is a JSON object::

    {"field": {"kind": "Fp", "p": 3},
     "curve": ["0", "1", "0", "0", "1"],
     "modulus": "t^6 + t^5 + t^4 + t^3 + t^2 + t + 1",
     "x": "t^5 + t^2", "y": "t^4 + t^3 + 2"}

``field`` is ``{"kind": "Q"}``, ``{"kind": "Fp", "p": p}`` or
``{"kind": "RatFunc", "base": <Q or Fp descriptor>}`` (variable ``l``).
Polynomials are written in ``t``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from dataclasses import dataclass, field

from . import __version__
from .curve import WeierstrassCurve
from .exceptions import ElltraceError, NotOnCurveError, ParseError
from .fields import PrimeField, field_from_description
from .oracle import DEFAULT_CHARS, DEFAULT_DEGREES, InstanceGenerator, frobenius_trace
from .poly import Polynomial
from .trace import (
    BRANCH_GENERAL,
    BRANCH_S_CONSTANT,
    BRANCH_V_ZERO,
    TRIVIAL_BRANCHES,
    TraceProblem,
    ell_trace,
)

DOCUMENT_KEYS = ("field", "curve", "modulus", "x", "y")
COVERAGE_GROUPS = ("trivial", BRANCH_V_ZERO, BRANCH_S_CONSTANT, BRANCH_GENERAL)


class DocumentError(ElltraceError, ValueError):
    """A problem document is malformed; the message carries the location."""


# -- problem documents --------------------------------------------------------


def _locate(raw: str, key: str, value: str, offset: int):
    """Line/column in ``raw`` of character ``offset`` of the string ``value`` under ``key``."""
    needle = json.dumps(value)
    start = raw.find(needle, raw.find(json.dumps(key)))
    if start < 0 or "\\" in needle:
        return None
    pos = start + 1 + offset
    line = raw.count("\n", 0, pos) + 1
    return line, pos - (raw.rfind("\n", 0, pos) + 1) + 1


def _element_error(raw, key, value, exc: ParseError):
    where = _locate(raw, key, value, exc.position)
    loc = f"line {where[0]}, column {where[1]}" if where else f"column {exc.column} of the string"
    return DocumentError(f"{key!r}: {exc.message} ({loc}): {value!r}")


def parse_document(raw: str, check_irreducible: bool = False) -> TraceProblem:
    """Parse the JSON text of a problem document into a :class:`TraceProblem`.

    ``check_irreducible`` verifies the modulus when the field is F_p.
    """
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    if not isinstance(doc, dict):
        raise DocumentError("problem document must be a JSON object")
    missing = [k for k in DOCUMENT_KEYS if k not in doc]
    if missing:
        raise DocumentError(f"missing key(s): {', '.join(missing)}")
    unknown = sorted(set(doc) - set(DOCUMENT_KEYS))
    if unknown:
        raise DocumentError(f"unknown key(s): {', '.join(unknown)}")

    try:
        K = field_from_description(doc["field"])
    except ValueError as exc:
        raise DocumentError(f"'field': {exc}") from None

    def element(key, value, label=None):
        label = label or key
        if isinstance(value, int) and not isinstance(value, bool):
            return K(value)
        if not isinstance(value, str):
            raise DocumentError(f"{label!r}: expected a string, got {type(value).__name__}")
        try:
            return K.parse(value)
        except ParseError as exc:
            raise _element_error(raw, key, value, exc) from None

    def polynomial(key):
        value = doc[key]
        if not isinstance(value, str):
            raise DocumentError(f"{key!r}: expected a string, got {type(value).__name__}")
        try:
            return Polynomial.parse(value, K, "t")
        except ParseError as exc:
            raise _element_error(raw, key, value, exc) from None

    coeffs = doc["curve"]
    if not isinstance(coeffs, list) or len(coeffs) != 5:
        raise DocumentError("'curve' must be a list of five coefficients [a1, a2, a3, a4, a6]")
    a = [element("curve", c, f"curve[{i}]") for i, c in enumerate(coeffs)]
    curve = WeierstrassCurve(K, *a)
    T, x, y = polynomial("modulus"), polynomial("x"), polynomial("y")
    if T.degree < 1:
        raise DocumentError("'modulus' must have degree at least 1")
    check = check_irreducible and isinstance(K, PrimeField)
    return TraceProblem(curve, T, x, y, check_irreducible=check)


def problem_document(problem: TraceProblem) -> dict:
    """Inverse of :func:`parse_document` (as a JSON-ready dict)."""
    K = problem.field
    return {
        "field": K.describe(),
        "curve": [K.format(c.value) for c in problem.curve.coefficients],
        "modulus": problem.modulus.to_str("t"),
        "x": problem.x.to_str("t"),
        "y": problem.y.to_str("t"),
    }


def run_trace(source: str, witness: bool = False, check_modulus: bool = True, out=None) -> int:
    """Run the trace on a document read from ``source`` (a path, or ``-`` for stdin).

    Over F_p the modulus is tested for irreducibility unless ``check_modulus``
    is false; over other fields it is trusted.
    """
    out = out or sys.stdout
    try:
        if source == "-":
            raw = sys.stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                raw = fh.read()
    except OSError as exc:
        print(f"error: cannot read {source}: {exc.strerror}", file=sys.stderr)
        return 1
    try:
        problem = parse_document(raw, check_irreducible=check_modulus)
        result = ell_trace(problem, record=witness)
    except NotOnCurveError as exc:
        print(f"error: point is not on the curve; residual y^2 + a1*x*y + a3*y - (x^3 + ...) = {exc.residual}",
              file=sys.stderr)
        return 1
    except (ElltraceError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(result.result, file=out)
    if witness:
        for line in result.lines():
            print(line, file=out)
    return 0


# -- self test -------------------------------------------------------------------


@dataclass
class SelftestReport:
    total: int = 0
    mismatches: int = 0
    per_char: Counter = field(default_factory=Counter)
    branches: Counter = field(default_factory=Counter)
    counterexample: dict = None

    @property
    def passed(self):
        return self.mismatches == 0

    def missing_branches(self):
        return [g for g in COVERAGE_GROUPS if not self.branches[g]]


def _coverage_group(branch):
    return "trivial" if branch in TRIVIAL_BRANCHES else branch


def run_selftest(chars=DEFAULT_CHARS, degrees=DEFAULT_DEGREES, count=500, seed=0,
                 trace_fn=ell_trace, out=None) -> SelftestReport:
    """Compare ``trace_fn`` with the Frobenius oracle on random instances.

    ``count`` instances are drawn per characteristic.  Instance i of
    characteristic p comes from ``InstanceGenerator(seed + i, chars=(p,))``,
    so any counterexample is reproduced by ``--chars p --count 1 --seed
    (seed + i)``.  ``trace_fn`` exists so tests can inject faults.
    """
    report = SelftestReport()
    for p in chars:
        for i in range(count):
            inst_seed = seed + i
            inst = InstanceGenerator(seed=inst_seed, chars=(p,), degrees=degrees).sample()
            got = trace_fn(inst.problem)
            expected = frobenius_trace(inst.problem)
            report.total += 1
            report.per_char[p] += 1
            report.branches[_coverage_group(got.branch)] += 1
            if got.result != expected:
                report.mismatches += 1
                if report.counterexample is None:
                    report.counterexample = {
                        "p": p, "seed": inst_seed, "mode": inst.mode,
                        "got": str(got.result), "expected": str(expected),
                        "document": problem_document(inst.problem),
                    }
    return report


def _parse_chars(text):
    try:
        chars = tuple(int(c) for c in text.split(",") if c.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid characteristic list {text!r}") from None
    if not chars:
        raise argparse.ArgumentTypeError("empty characteristic list")
    from .fields import is_prime

    bad = [c for c in chars if not is_prime(c)]
    if bad:
        raise argparse.ArgumentTypeError(f"not prime: {', '.join(map(str, bad))}")
    return chars


def _parse_degrees(text):
    lo, sep, hi = text.partition("..")
    try:
        lo, hi = int(lo), int(hi) if sep else int(lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid degree range {text!r}; expected LO..HI") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"invalid degree range {text!r}")
    return lo, hi


def _print_selftest(report: SelftestReport, args, elapsed, out):
    lo, hi = args.degrees
    print(f"selftest: chars={','.join(map(str, args.chars))} degrees={lo}..{hi} "
          f"count={args.count} seed={args.seed}", file=out)
    for p in args.chars:
        print(f"  p={p}: {report.per_char[p]} instances", file=out)
    cov = " ".join(f"{g}={report.branches[g]}" for g in COVERAGE_GROUPS)
    print(f"branches: {cov}", file=out)
    missing = report.missing_branches()
    if missing and report.total:
        print(f"branches not exercised: {', '.join(missing)}", file=out)
    if report.passed:
        print(f"PASS: {report.total} instances, 0 mismatches ({elapsed:.1f} s)", file=out)
        return
    ce = report.counterexample
    print(f"FAIL: {report.mismatches} of {report.total} instances disagree with the Frobenius oracle", file=out)
    print(f"first counterexample: p={ce['p']} mode={ce['mode']} got {ce['got']}, expected {ce['expected']}",
          file=out)
    print(f"reproduce: elltrace selftest --chars {ce['p']} --degrees {lo}..{hi} --count 1 --seed {ce['seed']}",
          file=out)
    print(f"document: {json.dumps(ce['document'])}", file=out)


def _negated(problem):
    w = ell_trace(problem)
    w.result = -w.result
    return w


def build_parser():
    parser = argparse.ArgumentParser(prog="elltrace", description="Trace of an elliptic-curve point over a simple extension.")
    parser.add_argument("--version", action="version", version=f"elltrace {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("trace", help="compute the trace of the point in a problem document")
    tr.add_argument("source", help="path to a JSON problem document, or - for stdin")
    tr.add_argument("--witness", action="store_true", help="also print the intermediate values")
    tr.add_argument("--trust-modulus", action="store_true",
                    help="skip the irreducibility test of the modulus over F_p")

    st = sub.add_parser("selftest", help="differential test against the Frobenius oracle")
    st.add_argument("--chars", type=_parse_chars, default=DEFAULT_CHARS, help="comma-separated primes")
    st.add_argument("--degrees", type=_parse_degrees, default=DEFAULT_DEGREES, help="degree range LO..HI")
    st.add_argument("--count", type=int, default=500, help="instances per characteristic")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "trace":
        return run_trace(args.source, witness=args.witness, check_modulus=not args.trust_modulus)
    if args.count < 0:
        print("error: --count must be nonnegative", file=sys.stderr)
        return 2
    start = time.perf_counter()
    report = run_selftest(args.chars, args.degrees, args.count, args.seed,
                          trace_fn=_negated if args.inject_fault else ell_trace)
    _print_selftest(report, args, time.perf_counter() - start, sys.stdout)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
