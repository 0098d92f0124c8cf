"""Command-line driver: bounds, exact values, simulations and region rasters from one constellation file.

SNR values are E_s / sigma^2 in dB, with sigma^2 the noise variance *per
dimension*. Output is CSV (header row, LF endings, 17 significant digits);
cells for an undefined lower bound are left empty.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from . import library
from .asymptotics import summarize
from .bounds import lb_threshold_snr_db, min_tau
from .constellation import Bundle, ValidationError
from .detectors import Detector, ErrorKind, ErrorSpec, cell_centers, check_sigma, rasterize_regions
from .fileformat import ConstellationFileError, parse_constellation
from .montecarlo import MIN_RELIABLE_ERRORS, SimConfig, sigma_from_snr_db, sweep

log = logging.getLogger("awgn_ep")

SWEEP_COLUMNS = ["snr_db", "sigma", "ub", "lb", "asym", "sim_estimate", "sim_stderr"]
BUILTINS = ("asym3", "sym3", "pam", "ring")


class CliError(Exception):
    pass


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, str):
        return v
    return format(float(v), ".17g")


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` (stop inclusive) or a single value."""
    try:
        parts = [float(s) for s in text.split(":")]
    except ValueError:
        raise CliError(f"--snr: cannot parse {text!r}; expected start:stop:step") from None
    if not all(math.isfinite(v) for v in parts):
        raise CliError(f"--snr: values must be finite, got {text!r}")
    if len(parts) == 1:
        return parts
    if len(parts) != 3:
        raise CliError(f"--snr: expected start:stop:step, got {text!r}")
    start, stop, step = parts
    if step <= 0 or stop < start:
        raise CliError(f"--snr: need step > 0 and stop >= start, got {text!r}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(n)]


def load_bundle(args) -> Bundle:
    if args.file and args.builtin:
        raise CliError("give either a constellation file or --builtin, not both")
    if args.file:
        path = Path(args.file)
        try:
            text = path.read_text()
        except OSError as exc:
            raise CliError(f"{path}: {exc.strerror}") from None
        try:
            return parse_constellation(text)
        except ConstellationFileError as exc:
            raise CliError(f"{path}: {exc}") from None
    name = args.builtin
    if name == "asym3":
        return library.three_point_asymmetric()
    if name == "sym3":
        return library.three_point_symmetric(1.0 / 3.0 if args.p1 is None else args.p1)
    if name == "pam":
        return library.uniform_pam(args.order)
    if name == "ring":
        return library.ring_4_12(0.22 if args.p1 is None else args.p1)
    raise CliError("no constellation given: pass a file or --builtin")


def write_csv(rows: Iterable[Sequence], header: Sequence[str], out: Optional[str]):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([fmt(v) for v in row] for row in rows)
    text = buf.getvalue()
    if out:
        Path(out).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)


def cmd_analyze(args, bundle: Bundle):
    med = bundle.med
    summary = summarize(bundle)
    rows = [
        ("name", bundle.name or ""),
        ("M", bundle.M),
        ("N", bundle.N),
        ("d", med.d),
        ("E_s", bundle.energy),
        ("med_pairs", len(med.med_pairs) // 2),
        ("G", " ".join(str(int(g)) for g in med.neighbor_counts)),
        ("B_map_sep", summary.B_map_sep),
        ("B_ml_sep", summary.B_ml_sep),
        ("R_sep", summary.R_sep),
    ]
    if summary.R_bep is not None:
        rows += [("B_map_bep", summary.B_map_bep), ("B_ml_bep", summary.B_ml_bep), ("R_bep", summary.R_bep)]
    rows += [("min_tau", min_tau(bundle)), ("lb_threshold_snr_db", lb_threshold_snr_db(bundle))]
    write_csv(rows, ["key", "value"], args.out)


def _spec(args, bundle: Bundle) -> ErrorSpec:
    spec = ErrorSpec(Detector(args.detector), ErrorKind(args.error))
    if spec.error is ErrorKind.BEP and bundle.labeling is None:
        raise CliError("--error bep needs a constellation with labels")
    return spec


def cmd_bounds(args, bundle: Bundle):
    spec = _spec(args, bundle)
    rows = sweep(bundle, parse_grid(args.snr), spec)
    write_csv(([r.snr_db, r.sigma, r.ub, r.lb, r.asym, None, None] for r in rows), SWEEP_COLUMNS, args.out)


def cmd_exact(args, bundle: Bundle):
    if bundle.N != 1:
        raise CliError(f"exact needs a 1-D constellation, this one has N={bundle.N}")
    spec = _spec(args, bundle)
    rows = sweep(bundle, parse_grid(args.snr), spec, exact=True)
    write_csv(
        ([r.snr_db, r.sigma, r.exact, r.ub, r.lb, r.asym] for r in rows),
        ["snr_db", "sigma", "exact", "ub", "lb", "asym"],
        args.out,
    )


def cmd_simulate(args, bundle: Bundle):
    spec = _spec(args, bundle)
    config = SimConfig(args.trials, args.seed, spec.detector, spec.error, args.workers)
    rows = sweep(bundle, parse_grid(args.snr), spec, config)
    for r in rows:
        if spec.error is ErrorKind.SEP and r.sim.errors_observed < MIN_RELIABLE_ERRORS:
            log.warning(
                "snr_db=%s: only %d errors observed, sim_stderr is unreliable", fmt(r.snr_db), r.sim.errors_observed
            )
    write_csv(
        ([r.snr_db, r.sigma, r.ub, r.lb, r.asym, r.sim.estimate, r.sim.stderr] for r in rows),
        SWEEP_COLUMNS,
        args.out,
    )


def cmd_regions(args, bundle: Bundle):
    if bundle.N != 2:
        raise CliError(f"regions needs a 2-D constellation, this one has N={bundle.N}")
    if (args.sigma is None) == (args.snr is None):
        raise CliError("regions needs exactly one of --sigma or --snr")
    sigma = check_sigma(args.sigma) if args.sigma is not None else sigma_from_snr_db(bundle, parse_grid(args.snr)[0])
    try:
        window = tuple(float(v) for v in args.window.split(":"))
    except ValueError:
        raise CliError(f"--window: cannot parse {args.window!r}") from None
    if len(window) != 4:
        raise CliError(f"--window: expected xmin:xmax:ymin:ymax, got {args.window!r}")
    res = (args.resolution, args.resolution)
    try:
        grid = rasterize_regions(bundle, Detector(args.detector), sigma, window, res)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    xs, ys = cell_centers(window, res)
    rows = ((r, c, xs[c], ys[r], grid[r, c]) for r in range(grid.shape[0]) for c in range(grid.shape[1]))
    write_csv(rows, ["row", "col", "x", "y", "index"], args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="awgn-ep", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("file", nargs="?", help="constellation JSON file")
    source.add_argument("--builtin", choices=BUILTINS)
    source.add_argument("--p1", type=float, help="inner/outer prior for sym3 and ring")
    source.add_argument("--order", type=int, default=4, help="PAM order for --builtin pam")
    source.add_argument("--out", help="write CSV here instead of stdout")

    detection = argparse.ArgumentParser(add_help=False)
    detection.add_argument("--detector", choices=[d.value for d in Detector], default="map")
    detection.add_argument("--error", choices=[e.value for e in ErrorKind], default="sep")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--snr", default="0:30:1", help="E_s/sigma^2 grid in dB, start:stop:step")

    sub.add_parser("analyze", parents=[source], help="MED structure, energy, B and R").set_defaults(func=cmd_analyze)
    sub.add_parser("bounds", parents=[source, detection, grid], help="upper/lower bounds and asymptote").set_defaults(
        func=cmd_bounds
    )
    sub.add_parser("exact", parents=[source, detection, grid], help="exact 1-D error probability").set_defaults(
        func=cmd_exact
    )
    p = sub.add_parser("simulate", parents=[source, detection, grid], help="Monte Carlo sweep")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)
    p = sub.add_parser("regions", parents=[source], help="2-D decision-region raster")
    p.add_argument("--detector", choices=[d.value for d in Detector], default="map")
    p.add_argument("--sigma", type=float)
    p.add_argument("--snr", help="single E_s/sigma^2 value in dB (alternative to --sigma)")
    p.add_argument("--window", default="-2:2:-2:2", help="xmin:xmax:ymin:ymax")
    p.add_argument("--resolution", type=int, default=200)
    p.set_defaults(func=cmd_regions)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        bundle = load_bundle(args)
        args.func(args, bundle)
    except (CliError, ValidationError, ValueError) as exc:
        print(f"awgn-ep {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
