import argparse
import asyncio
import logging
import os
import sys
from pathlib import Path
from typing import Any

from dotenv import dotenv_values, load_dotenv
from pydantic import ValidationError

from cli.output import CommandResult, emit_report
from cli.schemas import Command, OutputFormat, RunConfig
from markov_dyck.census import census_async, edge_shift_traces
from markov_dyck.conjugacy import resolving_check, round_trip_check
from markov_dyck.errors import BudgetExceeded, InputError, VerificationError
from markov_dyck.graphs import build_companion, check_rotational_homogeneity
from markov_dyck.models import Reading
from markov_dyck.runner import CASES_DIR, run_ledger
from markov_dyck.sampling import (
    edge_frequencies,
    mme_checks,
    parry_chain,
    parry_entropy_rate,
    sample_path,
    stationary_edge_measure,
)
from markov_dyck.spectra import (
    char_poly,
    closed_form_entropy,
    entropy_bounds,
    fibonacci_entropy,
    perron_root,
    structured_charpoly_report,
)
from markov_dyck.zeta import zeta_periodic_data, zeta_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MISMATCH = 2
EXIT_BUDGET = 3

ENV_DEFAULTS = {
    "MARKOV_DYCK_BUDGET": "budget",
    "MARKOV_DYCK_ORDER": "order",
    "MARKOV_DYCK_LOG_LEVEL": "log_level",
}

CLOSED_FORM_HEIGHTS = {1, 2, 3, 5, 7}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="markov-dyck",
        description="Periodic points, zeta functions and entropy of Markov-Dyck shifts.",
    )
    parser.add_argument("command", choices=[c.value for c in Command])
    parser.add_argument("--data", help="height data N_1,...,N_{H+1}, e.g. 1,2")
    parser.add_argument("--graph", help="'fibonacci', 'dyck:N' or height data")
    parser.add_argument("--n", type=int, help="largest period counted by census")
    parser.add_argument("--order", type=int, help="power-series truncation order")
    parser.add_argument("--period", type=int, help="number of repetitions L of the data")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--steps", type=int, help="sampled steps for the entropy checks")
    parser.add_argument("--length", type=int, help="length of emitted paths and windows")
    parser.add_argument("--windows", type=int, help="round-trip windows for conjugacy")
    parser.add_argument("--budget", type=int, help="maximum admissible prefixes visited")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat])
    parser.add_argument("--cases", type=Path, help="errata cases JSON (errata only)")
    parser.add_argument("--output", type=Path, help="directory for errata results")
    parser.add_argument("--config", type=Path, help="key=value file with the same keys")
    parser.add_argument("--log-level")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """Environment defaults, then the config file, then explicit flags."""
    load_dotenv()
    values: dict[str, Any] = {}
    for env, key in ENV_DEFAULTS.items():
        if os.environ.get(env):
            values[key] = os.environ[env]
    if args.config is not None:
        if not args.config.is_file():
            raise InputError(f"Config file not found: {args.config}")
        for key, value in dotenv_values(args.config).items():
            if value is not None:
                values[key.strip().lower().replace("-", "_")] = value
    for key, value in vars(args).items():
        if key != "config" and value is not None:
            values[key] = value
    return RunConfig(**values)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def run_graph(config: RunConfig) -> CommandResult:
    g = config.directed_graph()
    homogeneous, data = check_rotational_homogeneity(g)
    payload = g.to_json()
    payload["strongly_connected"] = g.is_strongly_connected()
    payload["rotationally_homogeneous"] = homogeneous
    payload["adjacency"] = g.adjacency().to_lists()
    if data is not None:
        payload["data"] = str(data)
        payload["companion_adjacency"] = build_companion(data)[1].to_lists()
    rows = [
        {"label": e["label"], "kind": e["kind"], "source": e["source"], "target": e["target"]}
        for e in payload["edges"]
    ]
    return CommandResult(payload, rows, dot=g.to_dot())


def run_entropy(config: RunConfig) -> CommandResult:
    if config.graph is not None and config.graph.strip().lower() == "fibonacci":
        value = fibonacci_entropy()
        return CommandResult({"graph": "fibonacci", "entropy": value},
                             [{"quantity": "entropy", "lo": value.decimal()[0],
                               "hi": value.decimal()[1]}])
    data = config.height_data()
    _, a = build_companion(data)
    root = perron_root(a)
    entropy = root.log()
    lower, upper = entropy_bounds(data)
    payload: dict[str, Any] = {
        "data": str(data),
        "charpoly": str(char_poly(a)),
        "perron_root": root,
        "entropy": entropy,
        "row_sum_bounds": [lower, upper],
    }
    rows: list[dict[str, Any]] = []
    mismatch = False
    if data.height in CLOSED_FORM_HEIGHTS:
        forms = closed_form_entropy(data)
        payload["closed_forms"] = [
            {"formula": f.formula, "reading": f.reading.value, "branch": f.branch,
             "value": f.value, "agrees": f.agrees}
            for f in forms
        ]
        report = structured_charpoly_report(data)
        payload["charpoly_displays"] = [
            {"reading": c.reading.value, "polynomial": str(c.polynomial), "matches": c.matches,
             "sign_flipped": c.sign_flipped, "differing_degrees": c.differing_degrees}
            for c in report.comparisons
        ]
        rows = [
            {"formula": f.formula, "reading": f.reading.value, "branch": f.branch,
             "value": f.value, "agrees": f.agrees}
            for f in forms
        ]
        mismatch = not all(f.agrees for f in forms) or not all(
            c.matches for c in report.comparisons
        )
    return CommandResult(payload, rows, mismatch=mismatch)


def run_zeta(config: RunConfig) -> CommandResult:
    data = config.height_data()
    if config.period > 1:
        report = zeta_periodic_data(data, config.period, config.order, config.budget)
    else:
        report = zeta_report(data, config.order, config.budget)
    payload = report.to_dict()
    payload["verdict"] = "match" if report.first_mismatch is None else "mismatch"
    rows = [v.to_dict() for v in report.verdicts]
    return CommandResult(payload, rows, mismatch=not all(v.matches for v in report.verdicts))


def run_census(config: RunConfig) -> CommandResult:
    g = config.directed_graph()
    result = asyncio.run(census_async(g, config.n, config.budget))
    rows = [row.model_dump() for row in result.rows]
    payload: dict[str, Any] = {"graph": result.graph, "rows": rows}
    homogeneous, data = check_rotational_homogeneity(g)
    if homogeneous and data is not None:
        payload["companion_traces"] = edge_shift_traces(build_companion(data)[1], config.n)
    return CommandResult(payload, rows)


def run_conjugacy(config: RunConfig) -> CommandResult:
    data = config.height_data()
    trip = round_trip_check(data, config.windows, config.length, config.seed)
    resolving = resolving_check(data, config.period)
    payload = trip.to_dict()
    payload["period"] = config.period
    payload["resolving"] = resolving
    rows = [{"check": "round trip", "ok": trip.ok},
            {"check": f"resolving L={config.period}", "ok": resolving}]
    return CommandResult(payload, rows, mismatch=not (trip.ok and resolving))


def run_sample(config: RunConfig) -> CommandResult:
    data = config.height_data()
    graph, a = build_companion(data)
    chain = parry_chain(a)
    path = sample_path(chain, graph, config.length, config.seed)
    checks = mme_checks(data, config.steps, config.seed)
    payload: dict[str, Any] = {
        "data": str(data),
        "generator": path.generator,
        "seed": path.seed,
        "path": path.labels(),
        "edge_frequencies": edge_frequencies(path),
        "stationary_edge_measure": stationary_edge_measure(chain, graph),
        "entropy_rate": parry_entropy_rate(chain),
        "checks": checks.to_dict(),
    }
    rows = [{"step": i, "letter": e.label} for i, e in enumerate(path.edges)]
    return CommandResult(payload, rows, mismatch=not checks.ok)


def run_errata(config: RunConfig) -> CommandResult:
    cases = config.cases or CASES_DIR / "errata.json"
    results = run_ledger(cases, "errata-ledger", results_dir=config.output, verbose=False)
    rows = [
        {"case": r.case.name, "check": v.check, "subject": v.subject,
         "reading": v.reading.value, "matches": v.matches, "detail": v.detail}
        for r in results
        for v in r.verdicts
    ]
    payload = {"results": [r.model_dump(mode="json") for r in results]}
    mismatch = any(r.error or r.mismatches(Reading.as_written) or r.mismatches(Reading.corrected)
                   for r in results)
    return CommandResult(payload, rows, mismatch=mismatch)


COMMANDS = {
    Command.graph: run_graph,
    Command.entropy: run_entropy,
    Command.zeta: run_zeta,
    Command.census: run_census,
    Command.conjugacy: run_conjugacy,
    Command.sample: run_sample,
    Command.errata: run_errata,
}


def execute(config: RunConfig) -> tuple[int, str]:
    result = COMMANDS[config.command](config)
    text = emit_report(result, config.format)
    return (EXIT_MISMATCH if result.mismatch else EXIT_OK), text


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
        logging.basicConfig(level=config.log_level, stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
        status, text = execute(config)
    except (InputError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    sys.stdout.write(text)
    return status


def main() -> int:
    return run()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
