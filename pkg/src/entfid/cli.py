"""Command-line interface: ``entfid {measure,sweep,ensemble,tau,reproduce}``."""
import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import _kernels, svg
from .channels import CHANNEL_FAMILIES, NOISE_FAMILIES, canonical_family
from .errors import EntfidError, TooFewPoints
from .harness import (
    DEFAULT_SEED,
    DESK_SCALE,
    PAPER_SCALE,
    EnsembleConfig,
    SweepConfig,
    initial_measure_histogram,
    run_ensemble,
    run_sweep,
)
from .io import fmt, manifest, read_csv_columns, read_state, write_csv, write_manifest
from .measures import measure_report
from .rankstats import kendall_tau
from .states import StateSampler, bell_state

TAU_HEADER = ["state_index", "tau_e_c", "tau_e_n", "tau_c_n", "initial_concurrence"]
SWEEP_HEADER = ["p", "f_e", "f_ef", "f_c", "f_n"]
HIST_HEADER = ["bin_left", "bin_right", "count"]
PAIR_LABELS = {
    "tau_e_c": ("F_e", "F_c"),
    "tau_e_n": ("F_e", "F_n"),
    "tau_c_n": ("F_c", "F_n"),
}
DEFAULT_BINS = 20


class CliError(Exception):
    pass


def _resolve_state(spec: str):
    if spec.startswith("bell:"):
        return bell_state(spec[len("bell:"):])
    if spec.startswith("random:"):
        try:
            seed, index = (int(v) for v in spec[len("random:"):].split(","))
        except ValueError:
            raise CliError(f"expected random:<seed>,<index>, got {spec!r}") from None
        return StateSampler(seed).sample(index)
    try:
        state = read_state(spec)
    except OSError as exc:
        raise CliError(f"cannot read state file {spec!r}: {exc.strerror}") from None
    if not hasattr(state, "amplitudes"):
        raise CliError("sweeps need a pure initial state")
    return state


def cmd_measure(args) -> None:
    try:
        state = read_state(args.state_file)
    except OSError as exc:
        raise CliError(f"cannot read state file {args.state_file!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{args.state_file}: invalid JSON ({exc.msg})") from None
    for name, value in measure_report(state).items():
        print(f"{name},{fmt(value)}")


def cmd_sweep(args) -> None:
    config = SweepConfig(args.channel, num_p=args.steps, p_mode=args.p_mode, seed=args.seed)
    psi = _resolve_state(args.state)
    records = run_sweep(psi, config)
    out = Path(args.out)
    write_csv(out, SWEEP_HEADER, records)
    cfg = {
        "state": args.state,
        "amplitudes_re": psi.amplitudes.real.tolist(),
        "amplitudes_im": psi.amplitudes.imag.tolist(),
        "channel": config.channel,
        "num_p": config.num_p,
        "p_mode": config.p_mode,
        "seed": config.seed,
    }
    write_manifest(out.with_suffix(".manifest.json"), manifest("sweep", cfg, _kernels.BACKEND))
    print(f"wrote {len(records)} rows to {out}")


def _write_ensemble(out: Path, config: EnsembleConfig, records, edges, counts, label: str) -> None:
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "tau.csv", TAU_HEADER, records)
    idx = [r.state_index for r in records]
    for column, (a, b) in PAIR_LABELS.items():
        values = [getattr(r, column) for r in records]
        (out / f"{column}.svg").write_text(svg.scatter(
            idx, values, title=f"Kendall tau between {a} and {b} ({label})",
            xlabel="state index", ylabel="tau"))
    _write_histogram(out, edges, counts, config.num_states)


def _write_histogram(out: Path, edges, counts, n) -> None:
    rows = [(lo, hi, c) for lo, hi, c in zip(edges[:-1], edges[1:], counts)]
    write_csv(out / "histogram.csv", HIST_HEADER, rows)
    (out / "histogram.svg").write_text(svg.histogram(
        edges, counts, title=f"Initial concurrence = negativity ({n} states)",
        xlabel="concurrence"))


def cmd_ensemble(args) -> None:
    sweep = SweepConfig(args.channel, num_p=args.steps, p_mode=args.p_mode, seed=args.seed)
    config = EnsembleConfig(sweep, num_states=args.states, master_seed=args.seed, tie_tol=args.tie_tol)
    records = run_ensemble(config, workers=args.workers)
    edges, counts = initial_measure_histogram(config, bins=args.bins)
    out = Path(args.out)
    _write_ensemble(out, config, records, edges, counts, sweep.channel)
    cfg = dict(config.as_dict(), bins=args.bins)
    write_manifest(out / "manifest.json", manifest("ensemble", cfg, _kernels.BACKEND))
    print(f"wrote {len(records)} tau records to {out / 'tau.csv'}")


def cmd_tau(args) -> None:
    columns = read_csv_columns(args.input)
    values = []
    for name in (args.x, args.y):
        if name not in columns:
            raise CliError(f"missing column {name!r} in {args.input}; available: {', '.join(columns)}")
        try:
            values.append([float(cell) for cell in columns[name]])
        except ValueError as exc:
            raise CliError(f"non-numeric cell in column {name!r}: {exc}") from None
    if len(values[0]) < 2:
        raise TooFewPoints(f"need at least 2 rows to compute tau, got {len(values[0])}")
    print(fmt(kendall_tau(values[0], values[1], tie_tol=args.tie_tol)))


def _summary_rows(channel, records):
    rows = []
    for column in PAIR_LABELS:
        taus = np.array([getattr(r, column) for r in records])
        a = np.abs(taus)
        rows.append((
            channel, column, float(a.mean()), float(np.median(a)),
            float(np.mean(a <= 0.15)), float(np.mean(a >= 0.99)),
            float(taus.min()), float(taus.max()),
        ))
    return rows


SUMMARY_HEADER = [
    "channel", "pair", "mean_abs_tau", "median_abs_tau",
    "frac_abs_le_0.15", "frac_abs_ge_0.99", "min_tau", "max_tau",
]


def cmd_reproduce(args) -> None:
    scale = DESK_SCALE if args.scale == "desk" else PAPER_SCALE
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = []
    configs = {}
    edges = counts = None
    for channel in NOISE_FAMILIES:
        sweep = SweepConfig(channel, num_p=scale["num_p"], p_mode=args.p_mode, seed=args.seed)
        config = EnsembleConfig(sweep, num_states=scale["num_states"], master_seed=args.seed)
        try:
            records = run_ensemble(config, workers=args.workers)
            if edges is None:
                edges, counts = initial_measure_histogram(config, bins=args.bins)
                _write_histogram(out, edges, counts, config.num_states)
            _write_ensemble(out / channel, config, records, edges, counts, channel)
        except (EntfidError, OSError) as exc:
            raise CliError(f"stage {channel!r} failed: {exc}") from exc
        summary.extend(_summary_rows(channel, records))
        configs[channel] = config.as_dict()
    write_csv(out / "summary.csv", SUMMARY_HEADER, summary)
    cfg = {"scale": args.scale, "bins": args.bins, "runs": configs}
    write_manifest(out / "manifest.json", manifest("reproduce", cfg, _kernels.BACKEND))
    print(",".join(SUMMARY_HEADER))
    for row in summary:
        print(",".join(str(v) if isinstance(v, str) else fmt(v) for v in row))


def _channel(value: str) -> str:
    try:
        return canonical_family(value)
    except EntfidError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entfid", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="concurrence, EoF, negativity and purity of a state file")
    p.add_argument("state_file")
    p.set_defaults(func=cmd_measure)

    channels = ", ".join(CHANNEL_FAMILIES)
    p = sub.add_parser("sweep", help="fidelities of one state across a p sweep")
    p.add_argument("--state", required=True, help="state JSON path, bell:<kind> or random:<seed>,<index>")
    p.add_argument("--channel", required=True, type=_channel, help=channels)
    p.add_argument("--steps", type=int, default=DESK_SCALE["num_p"])
    p.add_argument("--p-mode", choices=["grid", "random"], default="grid")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("ensemble", help="per-state Kendall taus over random initial states")
    p.add_argument("--channel", required=True, type=_channel, help=channels)
    p.add_argument("--states", type=int, default=DESK_SCALE["num_states"])
    p.add_argument("--steps", type=int, default=DESK_SCALE["num_p"])
    p.add_argument("--p-mode", choices=["grid", "random"], default="grid")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tie-tol", type=float, default=0.0)
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("tau", help="Kendall tau between two CSV columns")
    p.add_argument("--input", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--tie-tol", type=float, default=0.0)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("reproduce", help="figure data for all three noise channels")
    p.add_argument("--scale", choices=["desk", "paper"], default="desk")
    p.add_argument("--p-mode", choices=["grid", "random"], default="grid")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (CliError, EntfidError, OSError, ValueError) as exc:
        print(f"entfid {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
