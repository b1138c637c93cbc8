"""Command-line interface emitting machine-readable JSON run reports.

Exit codes: 0 success, 2 invalid input, 3 built-in target mismatch,
4 internal numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .assignments import (
    enumerate_constrained,
    feasible_by_enumeration,
    squared_magnitude_classes,
)
from .bounds import bounds_report, classical_bound
from .errors import EigensolverFailure, InfeasibleSpin, LpNumericalFailure
from .matrices import NAMED_MATRICES, ROTATION_Z45, named_matrix
from .number_theory import SpinValue, magnitude_feasible
from .polytope import CorrelationPoint, membership, vertex_array_quadrupled
from .quantum import (
    MAX_SPIN_DOUBLED,
    bell_operator,
    expectation,
    quantum_bound,
    rotated_singlet,
    schmidt_coefficients,
)

TOLERANCE_ENV = "SPINHV_TOLERANCE_OVERRIDE"

MAX_ENUMERATION_DOUBLED = 40  # keeps the pair scans in bounds under a minute
MAX_FORMULA_DOUBLED = 2000
MAX_ORACLE_DOUBLED = 200
MAX_MEMBERSHIP_UNCONSTRAINED_DOUBLED = 8  # pair sweep stays in memory

_SQRT2 = math.sqrt(2.0)

# classical bounds and quantum value of the built-in rotation inequality,
# keyed by doubled spin
TABLE1_TARGETS = {
    2: (-1.0 - 1.0 / _SQRT2, -1.0 - _SQRT2, -2.0),
    4: (-1.0 + 1.0 / _SQRT2 - 4.0 * _SQRT2, -4.0 - 4.0 * _SQRT2, -6.0),
    6: (-4.0 * (1.0 + _SQRT2), -9.0 - 9.0 * _SQRT2, -12.0),
    8: (-14.0 * _SQRT2, -16.0 - 16.0 * _SQRT2, -20.0),
}

TABLE1_CLASSICAL_TOL = 1e-9
TABLE1_QUANTUM_TOL = 1e-8


class CliInputError(Exception):
    pass


def _tolerance(default: float) -> float:
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise CliInputError(f"{TOLERANCE_ENV} is not a float: {raw!r}") from None


def _report(command: str, inputs: dict, tolerances: dict, results: dict) -> dict:
    return {
        "command": command,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "inputs": inputs,
        "tolerances": tolerances,
        "results": results,
    }


def _parse_numbers(text: str, path: str) -> list[float]:
    values = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for token in line.split():
            try:
                values.append(float(Fraction(token)))
            except (ValueError, ZeroDivisionError):
                raise CliInputError(f"{path}: cannot parse {token!r} as a number") from None
    return values


def _load_matrix(source: str) -> tuple[np.ndarray, dict]:
    if source in NAMED_MATRICES:
        matrix = named_matrix(source)
        return matrix, {"matrix": source, "entries": _listify(matrix)}
    path = Path(source)
    if not path.is_file():
        raise CliInputError(
            f"matrix {source!r} is neither a built-in name ({', '.join(sorted(NAMED_MATRICES))}) nor a file"
        )
    values = _parse_numbers(path.read_text(), source)
    if len(values) != 9:
        raise CliInputError(f"{source}: expected 9 matrix entries, found {len(values)}")
    matrix = np.array(values).reshape(3, 3)
    return matrix, {"matrix": source, "entries": _listify(matrix)}


def _load_point(source: str) -> np.ndarray:
    path = Path(source)
    if not path.is_file():
        raise CliInputError(f"point file not found: {source}")
    values = _parse_numbers(path.read_text(), source)
    if len(values) != 9:
        raise CliInputError(f"{source}: expected 9 correlator entries, found {len(values)}")
    return np.array(values).reshape(3, 3)


def _listify(array: np.ndarray) -> list:
    return [[float(v) for v in row] for row in np.atleast_2d(array)]


def _spin(doubled: int, low: int, high: int, what: str) -> SpinValue:
    if not low <= doubled <= high:
        raise CliInputError(f"{what} must satisfy {low} <= spin-doubled <= {high}, got {doubled}")
    return SpinValue(doubled)


def _witness_payload(pair) -> dict | None:
    if pair is None:
        return None
    a, b = pair
    return {
        "a_doubled": list(a.doubled),
        "b_doubled": list(b.doubled),
        "a": [float(v) for v in a.values],
        "b": [float(v) for v in b.values],
    }


def cmd_feasibility(args) -> tuple[dict, int]:
    s = _spin(args.spin_doubled, 1, MAX_FORMULA_DOUBLED, "feasibility")
    formula = magnitude_feasible(s)
    oracle = feasible_by_enumeration(s) if s.doubled <= MAX_ORACLE_DOUBLED else None
    agree = None if oracle is None else formula == oracle

    results = {
        "spin": str(s),
        "conserving_squared_sum": str(Fraction(s.doubled * (s.doubled + 2), 4)),
        "feasible_by_formula": formula,
        "feasible_by_enumeration": oracle,
        "agreement": agree,
    }
    if s.doubled <= MAX_ENUMERATION_DOUBLED:
        classes = squared_magnitude_classes(s)
        results["constrained_assignments"] = len(enumerate_constrained(s))
        results["squared_magnitude_classes"] = [
            {"squared_sum": str(Fraction(key, 4)), "count": classes[key]}
            for key in sorted(classes, reverse=True)
        ]
    report = _report(
        "feasibility",
        {"spin_doubled": s.doubled},
        {},
        results,
    )
    return report, 3 if agree is False else 0


def cmd_bounds(args) -> tuple[dict, int]:
    matrix, inputs = _load_matrix(args.matrix)
    s = _spin(args.spin_doubled, 1, MAX_SPIN_DOUBLED, "bounds")
    inputs["spin_doubled"] = s.doubled
    inputs["threads"] = args.threads

    rep = bounds_report(matrix, s, threads=args.threads)
    beta_q, state = quantum_bound(matrix, s)
    schmidt = schmidt_coefficients(state, s)

    results = {
        "beta_constrained": rep.beta_constrained,
        "beta_unconstrained": rep.beta_unconstrained,
        "beta_quantum": beta_q,
        "constrained_infeasible": rep.constrained_infeasible,
        "witness_constrained": _witness_payload(rep.witness_constrained),
        "witness_unconstrained": _witness_payload(rep.witness_unconstrained),
        "optimal_state_schmidt": [float(v) for v in schmidt],
        "violates_constrained": (
            None if rep.beta_constrained is None else bool(beta_q < rep.beta_constrained)
        ),
        "violates_unconstrained": bool(beta_q < rep.beta_unconstrained),
    }
    report = _report("bounds", inputs, {"witness_check": 1e-9}, results)
    return report, 0


def cmd_table1(args) -> tuple[dict, int]:
    max_s = _spin(args.max_spin_doubled, 1, MAX_SPIN_DOUBLED, "table1")
    tol_classical = _tolerance(TABLE1_CLASSICAL_TOL)
    tol_quantum = _tolerance(TABLE1_QUANTUM_TOL)

    rows = []
    mismatch = False
    for doubled in range(1, max_s.doubled + 1):
        s = SpinValue(doubled)
        try:
            beta, _ = classical_bound(ROTATION_Z45, s, constrained=True, threads=args.threads)
        except InfeasibleSpin:
            beta = None
        beta_bar, _ = classical_bound(ROTATION_Z45, s, constrained=False, threads=args.threads)
        quantum_value = -doubled * (doubled + 2) / 4.0
        measured = expectation(rotated_singlet(ROTATION_Z45, s), bell_operator(ROTATION_Z45, s))
        row = {
            "spin": str(s),
            "spin_doubled": doubled,
            "beta_constrained": beta,
            "beta_unconstrained": beta_bar,
            "minus_s_s_plus_1": quantum_value,
            "rotated_singlet_expectation": measured,
        }
        if doubled in TABLE1_TARGETS:
            t_beta, t_bar, t_quantum = TABLE1_TARGETS[doubled]
            checks = {
                "beta_constrained": beta is not None and abs(beta - t_beta) <= tol_classical,
                "beta_unconstrained": abs(beta_bar - t_bar) <= tol_classical,
                "quantum": abs(measured - t_quantum) <= tol_quantum,
            }
            row["targets"] = {
                "beta_constrained": t_beta,
                "beta_unconstrained": t_bar,
                "quantum": t_quantum,
            }
            row["passed"] = checks
            if not all(checks.values()):
                mismatch = True
        rows.append(row)

    report = _report(
        "table1",
        {"max_spin_doubled": max_s.doubled, "matrix": "eq9-rotation", "threads": args.threads},
        {"classical_target": tol_classical, "quantum_target": tol_quantum},
        {"rows": rows, "all_targets_passed": not mismatch},
    )
    return report, 3 if mismatch else 0


def cmd_membership(args) -> tuple[dict, int]:
    point_entries = _load_point(args.point)
    cap = MAX_ENUMERATION_DOUBLED if args.constrained else MAX_MEMBERSHIP_UNCONSTRAINED_DOUBLED
    s = _spin(args.spin_doubled, 1, cap, "membership")
    tol = _tolerance(1e-8)

    try:
        point = CorrelationPoint(point_entries)
        result = membership(point, s, constrained=args.constrained, tol=tol)
    except (InfeasibleSpin, ValueError) as exc:
        raise CliInputError(str(exc)) from exc

    results: dict = {"inside": result.inside}
    if result.inside:
        vertices = vertex_array_quadrupled(s, args.constrained) / 4.0
        nonzero = np.flatnonzero(result.weights > 1e-12)
        results["weights"] = [
            {
                "vertex_index": int(i),
                "weight": float(result.weights[i]),
                "correlators": [float(v) for v in vertices[i]],
            }
            for i in nonzero
        ]
        recon = vertices.T @ result.weights
        results["reconstruction_residual"] = float(np.max(np.abs(recon - point.flat())))
    else:
        results["separating_functional"] = [float(v) for v in result.functional]
        results["functional_bound"] = result.functional_bound
        results["functional_value_at_point"] = result.functional_value

    report = _report(
        "membership",
        {
            "point": args.point,
            "entries": _listify(point_entries),
            "spin_doubled": s.doubled,
            "constrained": args.constrained,
        },
        {"membership": tol},
        results,
    )
    return report, 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinhv",
        description=(
            "Feasibility, classical bounds, quantum bounds and polytope membership "
            "for magnitude-conserving hidden-variable models of spin correlations."
        ),
    )
    parser.add_argument("--threads", type=int, default=1, help="worker threads for pair scans")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("feasibility", help="decide magnitude-conservation feasibility for one spin")
    p.add_argument("--spin-doubled", type=int, required=True, help="2s as an integer")
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("bounds", help="classical and quantum bounds for a coefficient matrix")
    p.add_argument(
        "--matrix",
        required=True,
        help="built-in name (%s) or file with 9 numbers" % ", ".join(sorted(NAMED_MATRICES)),
    )
    p.add_argument("--spin-doubled", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table1", help="bounds of the built-in rotation inequality over a spin range")
    p.add_argument("--max-spin-doubled", type=int, default=8)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("membership", help="LP membership of a correlation point")
    p.add_argument("--point", required=True, help="file with 9 correlator values")
    p.add_argument("--spin-doubled", type=int, required=True)
    p.add_argument("--constrained", action="store_true", help="use the magnitude-conserving polytope")
    p.set_defaults(func=cmd_membership)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EigensolverFailure, LpNumericalFailure) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4
    json.dump(report, sys.stdout, indent=2)
    print()
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
