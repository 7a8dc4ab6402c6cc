"""Command-line interface.

Four subcommands over a JSON system file:

* ``check``  -- structural-controllability diagnosis of an actuator set
* ``place``  -- greedy actuator placement to a budget
* ``backup`` -- minimal backup positions for a primary set
* ``metric`` -- evaluate the configured metric on a set

Reports are JSON on stdout (or --out).  All node ids on this surface are
1-based.  Exit codes: 0 success, 2 usage or parse error, 3 infeasibility,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from . import systemfile
from .backup import backup_plan
from .errors import (
    EmptyCandidateError,
    EmptyFamilyError,
    FactorizationError,
    InfeasibleBackupError,
    InfeasibleBudgetError,
    NetplaceError,
    NotControllableError,
    SystemFileError,
)
from .graph import is_accessible, scc
from .matching import (
    is_feasible_set,
    is_structurally_controllable,
    matching_size,
    min_dilation_free_size,
)
from .placement import PlacementConfig, place
from .systemfile import format_value, metric_params, to_external

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_NUMERICAL = 4


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        system = systemfile.load(args.system)
        command = {
            "check": _cmd_check,
            "place": _cmd_place,
            "backup": _cmd_backup,
            "metric": _cmd_metric,
        }[args.command]
        config, result = command(args, system)
    except SystemFileError as exc:
        return _fail(str(exc), EXIT_USAGE)
    except (
        InfeasibleBudgetError,
        EmptyCandidateError,
        NotControllableError,
        InfeasibleBackupError,
        EmptyFamilyError,
    ) as exc:
        return _fail(str(exc), EXIT_INFEASIBLE)
    except (FactorizationError, OverflowError) as exc:
        return _fail(str(exc), EXIT_NUMERICAL)
    except ValueError as exc:
        return _fail(str(exc), EXIT_USAGE)

    report = {
        "command": args.command,
        "format": 1,
        "input": {"system_sha256": system.sha256, "config": config},
        "result": result,
        "timing": {"wall_s": round(time.perf_counter() - started, 6)},
    }
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netplace",
        description="Actuator placement and backup planning on networked linear systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("system", help="path to a JSON system file")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=None,
                       help="echoed into the report for test harnesses; no behavioural effect")

    def metric_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--metric", choices=["gramian", "modular"], default=None)
        p.add_argument("--T", type=float, default=None, dest="horizon_t",
                       help="gramian integration horizon (default 1)")
        p.add_argument("--epsilon", type=float, default=None,
                       help="gramian regularizer (default 1e-12)")
        p.add_argument("--weights", default=None,
                       help="comma-separated per-node weights for the modular metric")

    p_check = sub.add_parser("check", help="diagnose an actuator set")
    common(p_check)
    p_check.add_argument("--actuators", default="",
                         help="comma-separated 1-based node ids")

    p_place = sub.add_parser("place", help="select actuator positions")
    common(p_place)
    p_place.add_argument("--k", type=int, required=True, help="actuator budget")
    p_place.add_argument("--method", choices=["fg", "lhfg"], default="fg")
    p_place.add_argument("--horizon", default="full",
                         help='rollout horizon for lhfg: "full" or an integer >= 0')
    metric_flags(p_place)

    p_backup = sub.add_parser("backup", help="plan minimal backups")
    common(p_backup)
    p_backup.add_argument("--actuators", required=True,
                          help="comma-separated 1-based node ids")
    p_backup.add_argument("--mode", choices=["exact", "greedy", "auto"], default="auto")

    p_metric = sub.add_parser("metric", help="evaluate the metric on a set")
    common(p_metric)
    p_metric.add_argument("--actuators", default="",
                          help="comma-separated 1-based node ids")
    metric_flags(p_metric)

    return parser


def _parse_weights(raw: str | None) -> list[float] | None:
    if raw is None:
        return None
    try:
        return [float(part) for part in raw.split(",")]
    except ValueError as exc:
        raise SystemFileError(f"invalid --weights: {exc}") from exc


def _scc_summary(g) -> dict[str, Any]:
    decomposition = scc(g)
    return {
        "component_count": len(decomposition.components),
        "component_sizes": [len(c) for c in decomposition.components],
        "source_components": [
            to_external(decomposition.components[i])
            for i in decomposition.source_components
        ],
    }


def _cmd_check(args, system) -> tuple[dict, dict]:
    g = system.graph
    actuators = systemfile.parse_actuators(args.actuators, g.n)
    size = matching_size(g, actuators)
    k_min = min_dilation_free_size(g)
    accessible = is_accessible(g, actuators)
    dilation_free = size == g.n
    config = {"actuators": to_external(actuators), "seed": args.seed}
    result = {
        "n": g.n,
        "edge_count": g.edge_count,
        "accessible": accessible,
        "matching_size": size,
        "dilation_free": dilation_free,
        "min_actuators": k_min,
        "scc": _scc_summary(g),
        "structurally_controllable": bool(actuators) and accessible and dilation_free,
    }
    return config, result


def _cmd_place(args, system) -> tuple[dict, dict]:
    g = system.graph
    if args.k < 1:
        raise SystemFileError("--k must be >= 1")
    if args.k > g.n:
        raise SystemFileError(f"--k must not exceed n={g.n}")
    horizon: int | str = args.horizon
    if horizon != "full":
        try:
            horizon = int(horizon)
        except ValueError:
            raise SystemFileError('--horizon must be "full" or an integer') from None
        if horizon < 0:
            raise SystemFileError("--horizon must be >= 0")
    metric = systemfile.resolve_metric(
        system, args.metric, args.horizon_t, args.epsilon, _parse_weights(args.weights)
    )
    config_obj = PlacementConfig(k=args.k, horizon=horizon)
    result = place(g, metric, args.method, config_obj)
    config = {
        "k": args.k,
        "method": args.method,
        "horizon": args.horizon,
        "metric": metric_params(metric),
        "seed": args.seed,
    }
    trace = []
    for entry in result.trace:
        row = {
            "iteration": entry.iteration,
            "node": entry.node + 1,
            "candidates": entry.candidates,
            "metric_after": format_value(entry.metric_after),
        }
        if entry.rollout_value is not None:
            row["rollout_value"] = format_value(entry.rollout_value)
        trace.append(row)
    payload = {
        "initial_set": to_external(result.initial_set),
        "final_set": to_external(result.final_set),
        "metric_value": format_value(result.metric_value),
        "trace": trace,
        "complete_feasible_set": result.in_feasible_set,
        "structurally_controllable": result.structurally_controllable,
    }
    return config, payload


def _cmd_backup(args, system) -> tuple[dict, dict]:
    g = system.graph
    actuators = systemfile.parse_actuators(args.actuators, g.n)
    if not is_structurally_controllable(g, actuators):
        raise NotControllableError(
            f"actuators {to_external(actuators)} are not structurally controllable"
        )
    plan = backup_plan(g, actuators, args.mode)
    config = {
        "actuators": to_external(actuators),
        "mode": args.mode,
        "seed": args.seed,
    }
    result = {
        "essential": to_external(plan.essential),
        "families": {
            str(v + 1): to_external(fam) for v, fam in sorted(plan.families.items())
        },
        "backup_set": to_external(plan.chosen),
        "certificates": {
            str(v + 1): b + 1 for v, b in sorted(plan.certificates.items())
        },
        "solver_mode": plan.mode,
    }
    return config, result


def _cmd_metric(args, system) -> tuple[dict, dict]:
    g = system.graph
    actuators = systemfile.parse_actuators(args.actuators, g.n)
    metric = systemfile.resolve_metric(
        system, args.metric, args.horizon_t, args.epsilon, _parse_weights(args.weights)
    )
    value = metric.evaluate(actuators)
    config = {
        "actuators": to_external(actuators),
        "metric": metric_params(metric),
        "seed": args.seed,
    }
    result = {
        "metric": metric_params(metric),
        "actuators": to_external(actuators),
        "value": format_value(value),
    }
    return config, result


def _fail(message: str, code: int) -> int:
    print(f"netplace: error: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
