"""Command-line entry point.

Exit codes: 0 success, 1 parse/validation error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
import warnings
from pathlib import Path

from . import dataset
from .config import ConfigError, MissingKeyWarning, parse_config
from .equilibrium import solve_equilibrium
from .export import (
    equilibrium_text,
    equilibrium_to_dict,
    render_report,
    stability_text,
    stability_to_dict,
    to_json,
    write_trajectory_csv,
)
from .model import InvalidParameterError
from .scenarios import BUILTIN_MASKS, ScenarioError, run_scenario
from .simulator import NonFiniteStateError, simulate
from .stability import analyze_stability

log = logging.getLogger("strikemodel")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERIC = 2


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", MissingKeyWarning)
        cfg = parse_config(text)
    for w in caught:
        log.warning("%s", w.message)
    return cfg


def cmd_simulate(args) -> int:
    cfg = _load(args.config)
    traj = simulate(cfg.params, cfg.simulation)
    text = write_trajectory_csv(traj, stride=args.stride)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_equilibrium(args) -> int:
    cfg = _load(args.config)
    eq = solve_equilibrium(cfg.params)
    sys.stdout.write(to_json(equilibrium_to_dict(eq)) if args.json else equilibrium_text(eq))
    return EXIT_OK if eq.unique else EXIT_NUMERIC


def cmd_stability(args) -> int:
    cfg = _load(args.config)
    rep = analyze_stability(cfg.params)
    sys.stdout.write(to_json(stability_to_dict(rep)) if args.json else stability_text(rep))
    return EXIT_OK


def cmd_scenario(args) -> int:
    cfg = _load(args.config)
    name = args.name or cfg.scenario
    if name is None:
        raise ConfigError("no scenario given (use --name or a 'scenario' key)")
    report = run_scenario(cfg.params, BUILTIN_MASKS[name], cfg.simulation)
    sys.stdout.write(render_report(report, "json" if args.json else "text"))
    return EXIT_OK


def cmd_dataset(args) -> int:
    records = dataset.load_bundled()
    if args.summary:
        print(f"{'period':<10} {'private':>8} {'strike days':>12}")
        for r in records:
            print(f"{r.period_label:<10} {r.private_universities:>8} {r.strike_days:>12}")
        unis, days = dataset.totals(records)
        p_unis, p_days = dataset.PRINTED_TOTALS
        print(f"{'total':<10} {unis:>8} {days:>12}")
        print(f"{'printed':<10} {p_unis:>8} {p_days:>12}")
        if (unis, days) != dataset.PRINTED_TOTALS:
            print("note: row sums differ from the printed totals")
    else:
        sys.stdout.write(dataset.bundled_csv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strikemodel",
        description="Student movement between federal, state and private universities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="integrate the model and write a trajectory CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument("--stride", type=int, default=1, help="write every N-th step (final step always written)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("equilibrium", help="solve for the equilibrium")
    p.add_argument("--config", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_equilibrium)

    p = sub.add_parser("stability", help="Jacobian, eigenvalues and verdict")
    p.add_argument("--config", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("scenario", help="run one strike scenario")
    p.add_argument("--config", required=True)
    p.add_argument("--name", choices=sorted(BUILTIN_MASKS))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("dataset", help="bundled strike-duration table")
    p.add_argument("--summary", action="store_true", help="per-period rows and totals")
    p.set_defaults(func=cmd_dataset)
    return parser


def _setup_logging() -> None:
    # own handler on the current stderr; don't depend on the root logger
    for h in list(log.handlers):
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.WARNING)
    log.propagate = False


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    if getattr(args, "stride", 1) < 1:
        log.error("--stride must be >= 1")
        return EXIT_INPUT
    try:
        return args.func(args)
    except (ConfigError, InvalidParameterError, dataset.DatasetError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except ScenarioError as exc:
        log.error("%s", exc)
        if isinstance(exc.cause, (InvalidParameterError, ValueError)) and exc.stage == "mask":
            return EXIT_INPUT
        return EXIT_NUMERIC
    except (NonFiniteStateError, ArithmeticError) as exc:
        log.error("%s", exc)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
