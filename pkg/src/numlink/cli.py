"""Command-line entry point: fit / optimize / simulate.

Exit codes: 0 success, 2 parse failure, 3 validation failure, 4 runtime
failure. Commands never mutate their input files; all artifacts go to --out.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import controller as ctl
from . import plots, simulator
from .config import (
    LoadedConfig,
    ScenarioParseError,
    ScenarioValidationError,
    parse_scenario,
)
from .reception import fit_sigmoid, load_fit_samples
from .utility import link_model_prrs, network_utility

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_RUNTIME = 4


def _say(args, message):
    if not args.quiet:
        print(message)


def _write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _scenario_summary_rows(scenario):
    """Per-link model PRR rows plus the network mean, in sorted link order."""
    txs, rxs = scenario.transmitters(), scenario.receivers()
    p = link_model_prrs(scenario)
    entries = {}
    for j, tx in enumerate(txs):
        for i, rx in enumerate(rxs):
            entries[(tx.id, rx.id)] = float(p[i, j])
    ordered = [entries[k] for k in sorted(entries)]
    rows = [(f"prr_tx{t}_rx{r}", entries[(t, r)]) for t, r in sorted(entries)]
    rows.append(("network_model_prr", simulator.network_prr(ordered)))
    return rows


def cmd_fit(args) -> int:
    try:
        samples = load_fit_samples(args.samples)
    except ValueError as exc:
        raise ScenarioParseError(str(exc)) from None
    result = fit_sigmoid(samples)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_rows(out / "fit_result.csv",
                ["alpha", "beta", "sse", "degenerate"],
                [[repr(result.params.alpha), repr(result.params.beta),
                  repr(result.sse), result.degenerate]])
    plots.plot_fit_overlay(samples, result.params, out / "fit_overlay.svg")
    _say(args, f"fit: alpha={result.params.alpha:.6g} beta={result.params.beta:.6g} "
               f"sse={result.sse:.6g}"
               + (" (degenerate: beta at lower bound)" if result.degenerate else ""))
    return EXIT_OK


def cmd_optimize(args) -> int:
    cfg = parse_scenario(args.config)
    traj = ctl.run(cfg.scenario, cfg.controller)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    ctl.trajectory_to_csv(traj, out / "trajectory.csv")
    plots.plot_trajectories(traj, cfg.scenario.receivers(),
                            cfg.scenario.constraints.arena, out / "trajectory.svg")
    plots.plot_utility_history(traj, out / "utility.svg")

    start = cfg.scenario.with_transmitter_state(traj.positions[0], traj.powers[0])
    end = cfg.scenario.with_transmitter_state(traj.positions[-1], traj.powers[-1])
    rows = [["utility", repr(float(traj.utilities[0])), repr(float(traj.utilities[-1]))]]
    start_rows = _scenario_summary_rows(start)
    end_rows = _scenario_summary_rows(end)
    for (name, sv), (_, ev) in zip(start_rows, end_rows):
        rows.append([name, repr(sv), repr(ev)])
    _write_rows(out / "summary.csv", ["metric", "start", "end"], rows)

    _say(args, f"optimize: {traj.iterations_used} accepted iterations, "
               f"converged={traj.converged}, utility {traj.utilities[0]:.6f} -> "
               f"{traj.utilities[-1]:.6f}")
    return EXIT_OK


def _read_trajectory_csv(path, scenario):
    """Rebuild per-snapshot scenarios from a trajectory CSV."""
    with open(path, "r", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [row for row in reader if row]
    tx_ids = []
    for col in header:
        if col.startswith("tx") and col.endswith("_x"):
            tx_ids.append(int(col[2:-2]))
    scenario_order = [t.id for t in scenario.transmitters()]
    if sorted(tx_ids) != sorted(scenario_order):
        raise ScenarioValidationError(
            f"{path}: trajectory transmitters {sorted(tx_ids)} do not match the "
            f"scenario's {sorted(scenario_order)}")
    idx = {name: k for k, name in enumerate(header)}
    snapshots = []
    for row in rows:
        positions = np.empty((len(scenario_order), 2))
        powers = np.empty(len(scenario_order))
        for m, tid in enumerate(scenario_order):
            positions[m] = (float(row[idx[f"tx{tid}_x"]]), float(row[idx[f"tx{tid}_y"]]))
            powers[m] = float(row[idx[f"tx{tid}_power_w"]])
        snapshots.append(scenario.with_transmitter_state(positions, powers))
    if not snapshots:
        raise ScenarioValidationError(f"{path}: trajectory file has no snapshots")
    return snapshots


def cmd_simulate(args) -> int:
    cfg = parse_scenario(args.config)
    seed = cfg.simulation.seed if args.seed is None else args.seed
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    if args.trajectory:
        snapshots = _read_trajectory_csv(args.trajectory, cfg.scenario)
        values = []
        for k, snap in enumerate(snapshots):
            # Per-snapshot seed derived from (seed, k); link substreams are
            # derived inside simulate().
            snap_seed = int(np.random.SeedSequence(entropy=(seed, k)).generate_state(1)[0])
            report = simulator.simulate(snap, cfg.simulation.packets, snap_seed)
            values.append(report.network_prr)
        series = simulator.PrrSeries(timestamps=np.arange(len(values), dtype=float),
                                     values=np.array(values))
        smoothed = simulator.smooth_prr(series, cfg.simulation.smoothing_window_s)
        simulator.series_to_csv(series, out / "prr_series.csv", smoothed=smoothed)
        _say(args, f"simulate: {len(values)} snapshots, network PRR "
                   f"{values[0]:.4f} -> {values[-1]:.4f}")
        return EXIT_OK

    report = simulator.simulate(cfg.scenario, cfg.simulation.packets, seed)
    simulator.report_to_csv(report, out / "prr_links.csv")
    model_mean = simulator.network_prr(
        report.per_link_model[k] for k in sorted(report.per_link_model))
    _write_rows(out / "summary.csv", ["metric", "value"],
                [["network_model_prr", repr(model_mean)],
                 ["network_empirical_prr", repr(report.network_prr)],
                 ["packets_per_link", report.packets_per_link],
                 ["seed", report.seed]])
    _say(args, f"simulate: network PRR model={model_mean:.4f} "
               f"empirical={report.network_prr:.4f} ({report.packets_per_link} packets/link)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="numlink",
        description="Sigmoid link-reception modeling, NUM power/mobility control, "
                    "and Monte Carlo PRR simulation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit the reception curve to (SINR, PRR) samples")
    p_fit.add_argument("--samples", required=True, help="CSV of sinr_db,prr samples")

    p_opt = sub.add_parser("optimize", help="run the projected-gradient controller")
    p_opt.add_argument("--config", required=True, help="scenario YAML file")

    p_sim = sub.add_parser("simulate", help="Monte Carlo packet simulation")
    p_sim.add_argument("--config", required=True, help="scenario YAML file")
    p_sim.add_argument("--trajectory", help="trajectory CSV; simulate every snapshot")

    for p in (p_fit, p_opt, p_sim):
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--quiet", action="store_true", help="suppress progress output")

    p_fit.set_defaults(func=cmd_fit)
    p_opt.set_defaults(func=cmd_optimize)
    p_sim.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioParseError as exc:
        print(f"error (parse): {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ScenarioValidationError as exc:
        print(f"error (validation): {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        print(f"error (parse): {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error (validation): {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:  # anything else is a runtime failure
        print(f"error (runtime): {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
