"""Command-line interface.

Subcommands:

* ``test``        run the permutation spectrum test on a CSV column
* ``power-study`` run the simulation grid and write a results file
* ``simulate``    generate a composite signal+noise series as CSV

Every command is deterministic given its flags and ``--seed``; outputs
carry no timestamps.  Exit codes: 0 success, 1 domain/file error,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import __version__
from .errors import CsvParseError
from .permutation import PermutationPlan, simulate_null, summarize_test
from .plotting import render_plot
from .power import desk_scale_config, full_scale_config, run_grid, save_table
from .report import render_report, write_report
from .series import MIN_LENGTH, TimeSeries
from .signals import DISTRIBUTIONS, random_composite
from .spectral import analyze_spectrum


def ingest_csv(path, column: str | int = 0) -> TimeSeries:
    """Read one numeric column into a TimeSeries, in file row order.

    ``column`` may be a 0-based index or a header name.  A header row is
    detected by the selected cell not parsing as a number.  Any missing or
    non-numeric data cell is an error naming its 1-based file row.
    """
    with open(path, "r", encoding="utf-8", newline="") as handle:
        # keep original 1-based row numbers; skip rows with no cells at all
        rows = [
            (number, row)
            for number, row in enumerate(csv.reader(handle), start=1)
            if row
        ]
    if not rows:
        raise CsvParseError(str(path), 1, "file contains no data")

    name = None
    index: int | None = None
    if isinstance(column, int) or (isinstance(column, str) and column.lstrip("-").isdigit()):
        index = int(column)
        if index < 0:
            raise ValueError(f"column index must be >= 0, got {index}")
    else:
        name = column

    start = 0
    first_number, first_row = rows[0]
    if name is not None:
        header = [cell.strip() for cell in first_row]
        if name not in header:
            raise CsvParseError(
                str(path), first_number, f"column {name!r} not found in header {header}"
            )
        index = header.index(name)
        start = 1
    else:
        try:
            float(first_row[index])
        except (ValueError, IndexError):
            start = 1  # first row is a header; data begins below it

    values = []
    for row_number, row in rows[start:]:
        if index >= len(row):
            raise CsvParseError(
                str(path), row_number, f"row has no column {index}"
            )
        cell = row[index].strip()
        try:
            value = float(cell)
        except ValueError:
            raise CsvParseError(
                str(path), row_number, f"not a number: {cell!r}"
            ) from None
        if value != value or value in (float("inf"), float("-inf")):
            raise CsvParseError(
                str(path), row_number, f"non-finite value: {cell!r}"
            )
        values.append(value)

    if len(values) < MIN_LENGTH:
        raise ValueError(
            f"{path}: need at least {MIN_LENGTH} observations, got {len(values)}"
        )
    return TimeSeries(values)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permspec",
        description="Permutation spectrum test for periodic signals in a time series.",
    )
    parser.add_argument("--version", action="version", version=f"permspec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    test = sub.add_parser("test", help="test a CSV column for a periodic signal")
    test.add_argument("input", help="CSV file with the series")
    test.add_argument("--column", default="0", help="column index or header name (default 0)")
    test.add_argument("--permutations", type=int, default=1000, metavar="M",
                      help="null simulations (default 1000)")
    test.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    test.add_argument("--confidence", type=float, default=0.95,
                      help="Wilson interval confidence level (default 0.95)")
    test.add_argument("--out-report", metavar="PATH",
                      help="write the JSON report here instead of stdout")
    test.add_argument("--out-plot", metavar="PATH", help="write the SVG test plot here")

    power = sub.add_parser("power-study", help="estimate test power over a simulation grid")
    scale = power.add_mutually_exclusive_group()
    scale.add_argument("--desk-scale", action="store_true",
                       help="small grid, minutes of runtime (default)")
    scale.add_argument("--full-scale", action="store_true",
                       help="full reference grid; plan for hours of runtime")
    power.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    power.add_argument("--alpha", type=float, default=0.05,
                       help="significance level (default 0.05)")
    power.add_argument("--replicates", type=int, metavar="K",
                       help="override replicates per cell")
    power.add_argument("--permutations", type=int, metavar="M",
                       help="override null simulations per test")
    power.add_argument("--out", default="power-study.jsonl", metavar="PATH",
                       help="results file (default power-study.jsonl)")

    sim = sub.add_parser("simulate", help="generate a composite signal+noise series")
    sim.add_argument("--n", type=int, default=60, help="series length (default 60)")
    sim.add_argument("--distribution", choices=DISTRIBUTIONS, default="normal",
                     help="noise family (default normal)")
    sim.add_argument("--snr", type=float, default=1.0,
                     help="signal-to-noise ratio; 0 means pure noise (default 1.0)")
    sim.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    sim.add_argument("--out", metavar="PATH",
                     help="write the CSV here instead of stdout")
    return parser


def _cmd_test(args) -> int:
    series = ingest_csv(args.input, args.column)
    plan = PermutationPlan(master_seed=args.seed, n_permutations=args.permutations)
    analysis = analyze_spectrum(series)
    null = simulate_null(series, plan)
    result = summarize_test(analysis, null, args.confidence)
    if args.out_report:
        write_report(result, args.out_report)
    else:
        sys.stdout.write(render_report(result))
    if args.out_plot:
        render_plot(result, null, analysis, args.out_plot)
    return 0


def _cmd_power_study(args) -> int:
    factory = full_scale_config if args.full_scale else desk_scale_config
    overrides = {"alpha": args.alpha}
    if args.replicates is not None:
        overrides["replicates"] = args.replicates
    if args.permutations is not None:
        overrides["permutations"] = args.permutations
    config = factory(master_seed=args.seed, **overrides)

    def progress(cell):
        sys.stdout.write(
            f"{cell.distribution:>6}  n={cell.n:<4d} lambda={cell.snr:<4g} "
            f"power={cell.power:.4f}  [{cell.wilson_low:.4f}, {cell.wilson_high:.4f}]\n"
        )
        sys.stdout.flush()

    table = run_grid(config, progress=progress)
    save_table(table, args.out)
    sys.stdout.write(f"wrote {len(table.cells)} cells to {args.out}\n")
    return 0


def _cmd_simulate(args) -> int:
    composite = random_composite(args.distribution, args.n, args.snr, args.seed)
    lines = [repr(float(value)) for value in composite.series.values]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        sys.stdout.write(
            f"wrote n={args.n} {args.distribution} series "
            f"(snr={args.snr:g}, frequency={composite.signal.frequency:.6f}) to {args.out}\n"
        )
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "test": _cmd_test,
        "power-study": _cmd_power_study,
        "simulate": _cmd_simulate,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as error:
        sys.stderr.write(f"error: {error}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
