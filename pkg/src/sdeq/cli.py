"""Command-line front end: iterate, solve, reduce, verify, symmetry-check,
check-forbidden, and the differential-test driver.

All machine output is JSON (CSV on request for the sequence-producing
subcommands) with every scalar rendered as a rational literal; output is
byte-deterministic given the configuration, including the seed.  Exit
codes: 0 success/clean, 1 usage error, 2 singular trajectory where
regularity was required, 3 forbidden input, 4 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .closed_form import (
    CASE_TAGS_A,
    CASE_TAGS_B,
    CaseParamError,
    ForbiddenInputError,
    auto_case_a,
    auto_case_b,
    solve_a_case_sweep,
    solve_a_product_sweep,
    solve_b_case_sweep,
    solve_b_product_sweep,
)
from .forbidden import check_forbidden_a, check_forbidden_b
from .rational import format_rational, parse_rational
from .reduction import ZeroInvariantError, invariants_a, invariants_b, linearize
from .sampling import (
    DISTRIBUTION_NOTE,
    RETRY_CAP,
    draw_ics_a,
    draw_ics_b,
    draw_nonzero,
    draw_params_a,
    draw_params_b,
    draw_params_b_for_case,
)
from .symmetry import Characteristic, slsc_residual_a, slsc_residual_b
from .systems import (
    SystemAInitial,
    SystemAParams,
    SystemBInitial,
    SystemBParams,
    Trajectory,
    iterate_a,
    iterate_b,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SINGULAR = 2
EXIT_FORBIDDEN = 3
EXIT_MISMATCH = 4

_PARAM_FLAGS = {"A": ("a", "b"), "B": ("a", "b", "c", "d")}
_IC_FLAGS = {"A": ("u0", "u1", "v0", "v1"), "B": ("x0", "x1", "x2", "y0", "y1", "y2")}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: subcommand, system, rational literals, sizes,
    seed, and output format.  ``run`` is a pure function of this record."""

    command: str
    system: str = "A"
    params: dict | None = None
    ics: dict | None = None
    n_max: int = 0
    case: str = "auto"
    sweep: bool = False
    horizon: int = 0
    trials: int = 0
    samples: int = 100
    pairs: int = 10
    seed: Optional[int] = None
    c1: Optional[Fraction] = None
    c2: Optional[Fraction] = None
    fmt: str = "json"
    out: Optional[str] = None


def _jdump(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _csv_table(header: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _lits(values) -> list[str]:
    return [format_rational(v) for v in values]


def _params_dict(config: RunConfig) -> dict:
    return {k: format_rational(v) for k, v in config.params.items()}


def _ics_dict(config: RunConfig) -> dict:
    return {k: format_rational(v) for k, v in config.ics.items()}


def _build_inputs(config: RunConfig):
    if config.system == "A":
        params = SystemAParams(config.params["a"], config.params["b"])
        ics = SystemAInitial(*(config.ics[k] for k in _IC_FLAGS["A"]))
    else:
        params = SystemBParams(*(config.params[k] for k in _PARAM_FLAGS["B"]))
        ics = SystemBInitial(*(config.ics[k] for k in _IC_FLAGS["B"]))
    return params, ics


def _singular_json(trajectory: Trajectory):
    if trajectory.singular is None:
        return None
    return {"step": trajectory.singular.step, "component": trajectory.singular.component}


# ---------------------------------------------------------------------------
# subcommand implementations


def _run_iterate(config: RunConfig) -> tuple[int, str]:
    params, ics = _build_inputs(config)
    trajectory = (
        iterate_a(params, ics, config.n_max)
        if config.system == "A"
        else iterate_b(params, ics, config.n_max)
    )
    if config.fmt == "csv":
        header = ["n", trajectory.labels[0], trajectory.labels[1]]
        rows = [
            [str(n), format_rational(trajectory.first[n]), format_rational(trajectory.second[n])]
            for n in range(len(trajectory))
        ]
        return EXIT_OK, _csv_table(header, rows)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "system": config.system,
        "params": _params_dict(config),
        "N": config.n_max,
        "first": _lits(trajectory.first),
        "second": _lits(trajectory.second),
        "singular": _singular_json(trajectory),
    }
    return EXIT_OK, _jdump(payload)


def _resolve_case(config: RunConfig, params) -> str:
    if config.case != "auto":
        return config.case
    return auto_case_a(params) if config.system == "A" else auto_case_b(params)


def _run_solve(config: RunConfig) -> tuple[int, str]:
    params, ics = _build_inputs(config)
    tag = _resolve_case(config, params)
    sweep = solve_a_case_sweep if config.system == "A" else solve_b_case_sweep
    first, second = sweep(tag, params, ics, config.n_max)
    indices = range(config.n_max + 1) if config.sweep else [config.n_max]
    records = [
        {
            "n": n,
            "first": format_rational(first[n]),
            "second": format_rational(second[n]),
            "case": tag,
        }
        for n in indices
    ]
    if config.fmt == "csv":
        rows = [[str(r["n"]), r["first"], r["second"], r["case"]] for r in records]
        return EXIT_OK, _csv_table(["n", "first", "second", "case"], rows)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "solve",
        "system": config.system,
        "case": tag,
        "params": _params_dict(config),
        "ics": _ics_dict(config),
        "records": records,
    }
    return EXIT_OK, _jdump(payload)


def _run_reduce(config: RunConfig) -> tuple[int, str]:
    params, ics = _build_inputs(config)
    if config.system == "A":
        trajectory = iterate_a(params, ics, config.n_max)
    else:
        trajectory = iterate_b(params, ics, config.n_max)
    if trajectory.singular is not None:
        raise _Singular(trajectory)
    inv = invariants_a(trajectory) if config.system == "A" else invariants_b(trajectory)
    lin = linearize(inv)
    if config.fmt == "csv":
        rows = [
            [
                str(n),
                format_rational(inv.w[n]),
                format_rational(inv.z[n]),
                format_rational(lin.S[n]),
                format_rational(lin.T[n]),
            ]
            for n in range(len(inv.w))
        ]
        return EXIT_OK, _csv_table(["n", "w", "z", "S", "T"], rows)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "reduce",
        "system": config.system,
        "params": _params_dict(config),
        "N": config.n_max,
        "w": _lits(inv.w),
        "z": _lits(inv.z),
        "S": _lits(lin.S),
        "T": _lits(lin.T),
    }
    return EXIT_OK, _jdump(payload)


class _Singular(Exception):
    def __init__(self, trajectory: Trajectory):
        self.trajectory = trajectory
        sing = trajectory.singular
        super().__init__(
            f"singular trajectory at step {sing.step} ({sing.denominator_expression})"
        )


def _run_verify(config: RunConfig) -> tuple[int, str]:
    params, ics = _build_inputs(config)
    tag = _resolve_case(config, params)
    if config.system == "A":
        trajectory = iterate_a(params, ics, config.n_max)
        product = solve_a_product_sweep
        case_sweep = solve_a_case_sweep
    else:
        trajectory = iterate_b(params, ics, config.n_max)
        product = solve_b_product_sweep
        case_sweep = solve_b_case_sweep
    if trajectory.singular is not None:
        raise _Singular(trajectory)
    routes = {
        "product": product(params, ics, config.n_max),
        tag: case_sweep(tag, params, ics, config.n_max),
    }
    first_mismatch = None
    checked = 0
    for route_name, (first, second) in sorted(routes.items()):
        for n in range(config.n_max + 1):
            checked += 1
            for component, closed, iterated in (
                ("first", first[n], trajectory.first[n]),
                ("second", second[n], trajectory.second[n]),
            ):
                if closed != iterated and first_mismatch is None:
                    first_mismatch = {
                        "route": route_name,
                        "n": n,
                        "component": component,
                        "closed_form": format_rational(closed),
                        "iterated": format_rational(iterated),
                    }
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "system": config.system,
        "case": tag,
        "N": config.n_max,
        "checked": checked,
        "equal": first_mismatch is None,
        "first_mismatch": first_mismatch,
    }
    code = EXIT_OK if first_mismatch is None else EXIT_MISMATCH
    return code, _jdump(payload)


def _run_check_forbidden(config: RunConfig) -> tuple[int, str]:
    params, ics = _build_inputs(config)
    check = check_forbidden_a if config.system == "A" else check_forbidden_b
    report = check(params, ics, config.horizon)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "check-forbidden",
        "system": config.system,
        "params": _params_dict(config),
        "ics": _ics_dict(config),
        "horizon": config.horizon,
        "violations": [
            {"restriction": v.restriction_id, "r": v.r} for v in report.violated
        ],
        "closed_form_inadmissible": report.closed_form_inadmissible,
        "predicted_singular_step": report.predicted_singular_step,
    }
    code = EXIT_OK if report.clean else EXIT_FORBIDDEN
    return code, _jdump(payload)


def _sample_residual_input(rng: random.Random, system: str, fixed_params):
    """Draw (params, point) with nonzero coordinates and nonzero update
    denominators.  Parameters are redrawn with the point unless fixed;
    fixed parameters may admit no point at all (e.g. a = b = 0 for
    System B), in which case the retry cap trips."""
    for _ in range(RETRY_CAP):
        if system == "A":
            params = fixed_params if fixed_params is not None else draw_params_a(rng)
            point = tuple(draw_nonzero(rng) for _ in range(4))
            if params.a + point[0] * point[3] != 0 and params.b + point[2] * point[1] != 0:
                return params, point
        else:
            params = fixed_params if fixed_params is not None else draw_params_b(rng)
            point = tuple(draw_nonzero(rng) for _ in range(6))
            if (
                params.a + params.b * point[0] * point[4] != 0
                and params.c + params.d * point[3] * point[1] != 0
            ):
                return params, point
    raise UsageError("no admissible sample points for the given parameters")


def _run_symmetry_check(config: RunConfig) -> tuple[int, str]:
    rng = random.Random(config.seed)
    if config.c1 is not None and config.c2 is not None:
        characteristics = [Characteristic(config.c1, config.c2)]
    else:
        characteristics = [
            Characteristic(
                Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
            )
            for _ in range(config.pairs)
        ]
    if config.params is None:
        fixed_params = None
    elif config.system == "A":
        fixed_params = SystemAParams(config.params["a"], config.params["b"])
    else:
        fixed_params = SystemBParams(*(config.params[k] for k in _PARAM_FLAGS["B"]))
    checked = 0
    nonzero: list[dict] = []
    for ch in characteristics:
        for parity in (0, 1):
            for _ in range(config.samples):
                params, point = _sample_residual_input(rng, config.system, fixed_params)
                if config.system == "A":
                    residuals = slsc_residual_a(ch, params, parity, point)
                else:
                    residuals = slsc_residual_b(ch, params, parity, point)
                checked += 1
                if residuals != (0, 0):
                    nonzero.append(
                        {
                            "c1": format_rational(ch.c1),
                            "c2": format_rational(ch.c2),
                            "parity": parity,
                            "point": _lits(point),
                            "residuals": _lits(residuals),
                        }
                    )
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "symmetry-check",
        "system": config.system,
        "pairs": len(characteristics),
        "samples_per_parity": config.samples,
        "seed": config.seed,
        "checked": checked,
        "all_zero": not nonzero,
        "nonzero_residuals": nonzero,
    }
    return (EXIT_OK if not nonzero else EXIT_MISMATCH), _jdump(payload)


_B_STRATA = ("general", "ac-unit", "unit-bd", "all-ones")


def difftest(system: str, trials: int, n_max: int, seed: int) -> dict:
    """Sample admissible inputs, skip forbidden ones, and assert exact
    agreement of the product and case closed forms with iteration.

    System B trials cycle through parameter strata so the geometric-ratio,
    unit-ratio, unit-b,d, and all-ones families are all exercised.
    """
    rng = random.Random(seed)
    skipped = 0
    comparisons = 0
    failures = 0
    first_counterexample = None
    strata_counts: dict[str, int] = {}
    for trial in range(trials):
        if system == "A":
            horizon = max(0, (n_max - 1) // 2)
            stratum = "general"
            for _ in range(RETRY_CAP):
                params = draw_params_a(rng)
                ics = draw_ics_a(rng)
                if check_forbidden_a(params, ics, horizon).clean:
                    break
                skipped += 1
            else:
                raise RuntimeError("retry cap exhausted")
            trajectory = iterate_a(params, ics, n_max)
            tag = auto_case_a(params)
            routes = {
                "product": solve_a_product_sweep(params, ics, n_max),
                tag: solve_a_case_sweep(tag, params, ics, n_max),
            }
            params_json = {"a": format_rational(params.a), "b": format_rational(params.b)}
            ics_json = {
                k: format_rational(getattr(ics, k)) for k in _IC_FLAGS["A"]
            }
        else:
            horizon = max(0, (n_max - 1) // 4)
            stratum = _B_STRATA[trial % len(_B_STRATA)]
            case_for_stratum = {
                "general": None,
                "ac-unit": "ACeq1",
                "unit-bd": "UnitBD",
                "all-ones": "AllOnes",
            }[stratum]
            for _ in range(RETRY_CAP):
                params = (
                    draw_params_b(rng)
                    if case_for_stratum is None
                    else draw_params_b_for_case(rng, case_for_stratum)
                )
                ics = draw_ics_b(rng)
                if check_forbidden_b(params, ics, horizon).clean:
                    break
                skipped += 1
            else:
                raise RuntimeError("retry cap exhausted")
            trajectory = iterate_b(params, ics, n_max)
            tag = auto_case_b(params)
            routes = {
                "product": solve_b_product_sweep(params, ics, n_max),
                tag: solve_b_case_sweep(tag, params, ics, n_max),
            }
            params_json = {
                k: format_rational(getattr(params, k)) for k in _PARAM_FLAGS["B"]
            }
            ics_json = {
                k: format_rational(getattr(ics, k)) for k in _IC_FLAGS["B"]
            }
        strata_counts[stratum] = strata_counts.get(stratum, 0) + 1
        if trajectory.singular is not None:
            # admissible inputs cannot be singular; a hit here is a finding
            failures += 1
            if first_counterexample is None:
                first_counterexample = {
                    "kind": "unexpected-singularity",
                    "params": params_json,
                    "ics": ics_json,
                    "step": trajectory.singular.step,
                }
            continue
        for route_name, (first, second) in sorted(routes.items()):
            for n in range(n_max + 1):
                comparisons += 1
                if first[n] != trajectory.first[n] or second[n] != trajectory.second[n]:
                    failures += 1
                    if first_counterexample is None:
                        first_counterexample = {
                            "kind": "value-mismatch",
                            "route": route_name,
                            "params": params_json,
                            "ics": ics_json,
                            "n": n,
                            "closed_first": format_rational(first[n]),
                            "closed_second": format_rational(second[n]),
                            "iterated_first": format_rational(trajectory.first[n]),
                            "iterated_second": format_rational(trajectory.second[n]),
                        }
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "difftest",
        "system": system,
        "trials": trials,
        "N": n_max,
        "seed": seed,
        "distribution": DISTRIBUTION_NOTE,
        "strata": {k: strata_counts[k] for k in sorted(strata_counts)},
        "skipped_draws": skipped,
        "comparisons": comparisons,
        "failures": failures,
        "first_counterexample": first_counterexample,
    }


def _run_difftest(config: RunConfig) -> tuple[int, str]:
    report = difftest(config.system, config.trials, config.n_max, config.seed)
    code = EXIT_OK if report["failures"] == 0 else EXIT_MISMATCH
    return code, _jdump(report)


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let negative rational literals like -1/2 pass as option values
        self._negative_number_matcher = re.compile(r"^-[0-9]+(/[0-9]+)?$")

    def error(self, message):
        raise UsageError(message)


def _add_common(sub, *, params=True, ics=True, n=True):
    sub.add_argument("--system", required=True, choices=("A", "B"))
    if params:
        for flag in ("a", "b", "c", "d"):
            sub.add_argument(f"--{flag}")
    if ics:
        for flag in ("u0", "u1", "v0", "v1", "x0", "x1", "x2", "y0", "y1", "y2"):
            sub.add_argument(f"--{flag}")
    if n:
        sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--out")


def build_parser() -> _Parser:
    parser = _Parser(prog="sdeq", description=__doc__)
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = subparsers.add_parser("iterate", help="iterate a system exactly")
    _add_common(sub)
    sub.add_argument("--format", choices=("json", "csv"), default="json")

    sub = subparsers.add_parser("solve", help="evaluate a closed-form solution")
    _add_common(sub)
    sub.add_argument("--case", default="auto")
    sub.add_argument("--sweep", action="store_true")
    sub.add_argument("--format", choices=("json", "csv"), default="json")

    sub = subparsers.add_parser("reduce", help="invariants and auxiliary sequences")
    _add_common(sub)
    sub.add_argument("--format", choices=("json", "csv"), default="json")

    sub = subparsers.add_parser("verify", help="closed forms vs iteration")
    _add_common(sub)
    sub.add_argument("--case", default="auto")

    sub = subparsers.add_parser("symmetry-check", help="residual identity check")
    _add_common(sub, ics=False, n=False)
    sub.add_argument("--c1")
    sub.add_argument("--c2")
    sub.add_argument("--samples", type=int, default=100)
    sub.add_argument("--pairs", type=int, default=10)
    sub.add_argument("--seed", type=int)

    sub = subparsers.add_parser("check-forbidden", help="restriction-set report")
    _add_common(sub, n=False)
    sub.add_argument("--horizon", type=int, required=True)

    sub = subparsers.add_parser("difftest", help="differential test driver")
    _add_common(sub, params=False, ics=False)
    sub.add_argument("--trials", type=int, required=True)
    sub.add_argument("--seed", type=int)

    return parser


def _rational_arg(args, flag: str) -> Fraction:
    raw = getattr(args, flag, None)
    if raw is None:
        raise UsageError(f"--{flag} is required for system {args.system}")
    try:
        return parse_rational(raw)
    except ValueError:
        raise UsageError(f"--{flag}: not a rational literal: {raw!r}") from None


def _resolve_seed(args) -> Optional[int]:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("SDE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"SDE_SEED is not an integer: {env!r}") from None
    return None


def _config_from_args(args) -> RunConfig:
    command = args.command
    system = args.system
    params = None
    ics = None
    if command in ("iterate", "solve", "reduce", "verify", "check-forbidden"):
        params = {flag: _rational_arg(args, flag) for flag in _PARAM_FLAGS[system]}
        ics = {flag: _rational_arg(args, flag) for flag in _IC_FLAGS[system]}
    n_max = getattr(args, "n", 0) or 0
    if command in ("iterate", "solve", "reduce", "verify"):
        minimum = 1 if system == "A" else 2
        if n_max < minimum:
            raise UsageError(f"--n must be >= {minimum} for system {system}")
    case = getattr(args, "case", "auto")
    valid_tags = CASE_TAGS_A if system == "A" else CASE_TAGS_B
    if command in ("solve", "verify") and case != "auto" and case not in valid_tags:
        raise UsageError(f"--case must be 'auto' or one of {', '.join(valid_tags)}")
    seed = _resolve_seed(args)
    if command in ("difftest", "symmetry-check") and seed is None:
        raise UsageError(f"{command} samples randomly; provide --seed or SDE_SEED")
    c1 = c2 = None
    if command == "symmetry-check":
        if (getattr(args, "c1", None) is None) != (getattr(args, "c2", None) is None):
            raise UsageError("--c1 and --c2 must be given together")
        if getattr(args, "c1", None) is not None:
            c1 = _rational_arg(args, "c1")
            c2 = _rational_arg(args, "c2")
        given = [
            flag for flag in _PARAM_FLAGS[system] if getattr(args, flag, None) is not None
        ]
        if given and len(given) != len(_PARAM_FLAGS[system]):
            raise UsageError("give all parameter flags or none for symmetry-check")
        if given:
            params = {flag: _rational_arg(args, flag) for flag in _PARAM_FLAGS[system]}
        if args.samples < 1 or args.pairs < 1:
            raise UsageError("--samples and --pairs must be positive")
    if command == "check-forbidden" and args.horizon < 0:
        raise UsageError("--horizon must be >= 0")
    if command == "difftest":
        if args.trials < 0:
            raise UsageError("--trials must be >= 0")
        if n_max < 2:
            raise UsageError("--n must be >= 2 for difftest")
    return RunConfig(
        command=command,
        system=system,
        params=params,
        ics=ics,
        n_max=n_max,
        case=case,
        sweep=getattr(args, "sweep", False),
        horizon=getattr(args, "horizon", 0) or 0,
        trials=getattr(args, "trials", 0) or 0,
        samples=getattr(args, "samples", 100),
        pairs=getattr(args, "pairs", 10),
        seed=seed,
        c1=c1,
        c2=c2,
        fmt=getattr(args, "format", "json"),
        out=args.out,
    )


_DISPATCH = {
    "iterate": _run_iterate,
    "solve": _run_solve,
    "reduce": _run_reduce,
    "verify": _run_verify,
    "symmetry-check": _run_symmetry_check,
    "check-forbidden": _run_check_forbidden,
    "difftest": _run_difftest,
}


def run(config: RunConfig) -> tuple[int, str]:
    """Dispatch a parsed configuration; returns (exit code, report text)."""
    try:
        return _DISPATCH[config.command](config)
    except _Singular as exc:
        return EXIT_SINGULAR, f"error: {exc}\n"
    except (ForbiddenInputError, ZeroInvariantError) as exc:
        return EXIT_FORBIDDEN, f"error: forbidden input: {exc}\n"
    except (CaseParamError, UsageError) as exc:
        return EXIT_USAGE, f"error: {exc}\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from_args(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    code, text = run(config)
    if code in (EXIT_OK, EXIT_FORBIDDEN, EXIT_MISMATCH) and not text.startswith("error:"):
        if config.out:
            with open(config.out, "w") as handle:
                handle.write(text)
        else:
            sys.stdout.write(text)
    else:
        sys.stderr.write(text)
    return code


def console_main() -> None:
    sys.exit(main())
