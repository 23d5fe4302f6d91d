"""altmod command line: kernel, lagrangian, classify, embed, verify, check.

Exit codes: 0 success, 1 domain error (or a rejected certificate / failed
check), 2 unreadable or invalid input document.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import oracle
from .altmodule import InvalidModuleError, find_lagrangian, kernel, lagrangian_cardinal
from .documents import (
    DocumentError,
    certificate_to_data,
    dumps,
    parse_certificate,
    parse_module,
)
from .embed import embed, verify_certificate
from .symplectic import NotSymplecticError, classify

COMMANDS = ("kernel", "lagrangian", "classify", "embed", "verify", "check")


class DomainError(Exception):
    pass


def _subgroup_data(S) -> dict:
    return {
        "order": S.cardinality,
        "invariant_factors": list(S.orders),
        "generators": [list(g) for g in S.gens],
    }


def check_report(m, bound: int = oracle.DEFAULT_BOUND) -> dict:
    """Cross-check kernel, Lagrangian order and find_lagrangian against the oracle."""
    K = kernel(m)
    K_brute = oracle.brute_kernel(m, bound)
    n = lagrangian_cardinal(m)
    census = oracle.enumerate_subgroups(m, bound)
    L = oracle.span(m, find_lagrangian(m).gens, bound)
    kernel_match = oracle.span(m, K.gens, bound) == K_brute
    max_orders = sorted({len(s) for s in census.maximal_isotropic})
    found = L in census.maximal_isotropic
    return {
        "order": m.cardinality,
        "kernel": {"order": K.cardinality, "oracle_order": len(K_brute), "match": kernel_match},
        "lagrangian_cardinal": n,
        "subgroup_count": len(census.subgroups),
        "maximal_isotropic_count": len(census.maximal_isotropic),
        "maximal_isotropic_orders": max_orders,
        "find_lagrangian_in_census": found,
        "ok": kernel_match and max_orders == [n] and found,
    }


def run(command: str, text: str, bound: int = oracle.DEFAULT_BOUND) -> tuple[int, dict]:
    """Execute one command on an input document; returns (exit code, JSON-ready result).

    DocumentError / InvalidModuleError propagate to the caller (exit code 2).
    """
    if command == "verify":
        cert = parse_certificate(text)
        problems = verify_certificate(cert)
        if problems:
            return 1, {"verdict": "invalid", "violations": problems}
        return 0, {"verdict": "ok"}

    m = parse_module(text)
    if command == "kernel":
        return 0, _subgroup_data(kernel(m))
    if command == "lagrangian":
        return 0, {"n": lagrangian_cardinal(m), **_subgroup_data(find_lagrangian(m))}
    if command == "classify":
        cls = classify(m)
        return 0, {"b_orders": list(cls.b_orders), "isometry": [list(r) for r in cls.isometry.images]}
    if command == "embed":
        return 0, certificate_to_data(embed(m))
    if command == "check":
        report = check_report(m, bound)
        return (0 if report["ok"] else 1), report
    raise ValueError(f"unknown command {command!r}")


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="altmod", description="Exact computations on finite alternate modules over Q/Z.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", help="module JSON (certificate JSON for verify)")
    ap.add_argument("-o", "--output", help="write the JSON result here instead of standard output")
    ap.add_argument("--bound", type=int, default=oracle.DEFAULT_BOUND, help="group-order bound for check")
    args = ap.parse_args(argv)

    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"altmod: cannot read {args.input}: {exc}", file=sys.stderr)
        return 2
    try:
        code, result = run(args.command, text, args.bound)
    except InvalidModuleError as exc:
        print(f"altmod: invalid module ({exc.invariant} invariant): {exc}", file=sys.stderr)
        return 2
    except DocumentError as exc:
        print(f"altmod: invalid document: {exc}", file=sys.stderr)
        return 2
    except NotSymplecticError as exc:
        print(f"altmod: {exc}", file=sys.stderr)
        return 1
    except oracle.BoundExceeded as exc:
        print(f"altmod: {exc}", file=sys.stderr)
        return 1

    out = dumps(result)
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
