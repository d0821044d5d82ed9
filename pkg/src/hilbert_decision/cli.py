"""Command-line front end.

Subcommands: ``eval`` (expected utilities of a scenario file), ``region``
(area ratio at fixed d, optional SVG), ``volume`` (ratio over the full
(x, y, d) box) and ``sweep`` (area ratio over several d).

Exit codes: 0 success, 1 usage, 2 parse/schema, 3 numeric domain, 4 I/O.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import warnings

from . import __version__
from .decision import argmax_with_ties, choose
from .ellsberg import D_MAX
from .errors import HilbertDecisionError, IoError
from .mind import moderated_expected_utility, overlap_sq_generic
from .quadrature import (
    DEFAULT_N_2D,
    DEFAULT_N_3D,
    GridSpec,
    RegionEstimate,
    area_ratio_fixed_d,
    monte_carlo_ratio,
    volume_ratio,
    volume_slices,
)
from .scenario import parse_scenario
from .svg import PlotSpec, render_region_svg

EXIT_OK, EXIT_USAGE = 0, 1

CSV_COLUMNS = ("command", "parameters", "ratio", "error", "evaluations", "method", "seed", "tool_version")
REFERENCE_D_GRID = (0.0, 0.25 * math.pi, 0.5 * math.pi, 0.75 * math.pi, math.pi)
EMPIRICAL_BAND = (0.572, 0.579)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _grid_int(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2 points per axis")
    return v


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--u0", type=float, default=0.0, help="utility of losing a bet (default 0)")
    p.add_argument("--u100", type=float, default=1.0, help="utility of winning a bet (default 1)")
    p.add_argument("--discrete-urn", type=_positive_int, metavar="N",
                   help="use the N+1 urn compositions sqrt(k/N) for x instead of a continuous grid")
    p.add_argument("--csv", metavar="PATH", help="write results as CSV to PATH")
    p.add_argument("--workers", type=_positive_int, default=1, help="threads for grid evaluation")


def _add_mc_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mc", type=int, metavar="SAMPLES", help="Monte Carlo cross-check with this many samples")
    p.add_argument("--seed", type=_u64, default=0, help="Monte Carlo seed (unsigned 64-bit, default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hilbert-decision", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="expected utilities and choice for a scenario file")
    p.add_argument("scenario", help="path to a scenario JSON file")

    p = sub.add_parser("region", help="area ratio of the Ellsberg region at fixed d")
    p.add_argument("--d", type=float, required=True, help="mind-state phase in radians")
    p.add_argument("--pi-units", action="store_true", help="read --d as a multiple of pi")
    p.add_argument("--grid", type=_grid_int, default=DEFAULT_N_2D, metavar="N")
    p.add_argument("--svg", metavar="PATH", help="write an SVG raster of the region")
    _add_mc_flags(p)
    _add_model_flags(p)

    p = sub.add_parser("volume", help="volume ratio over [0,1] x [0,1] x [0,pi]")
    p.add_argument("--grid", type=_grid_int, default=DEFAULT_N_3D, metavar="N")
    p.add_argument("--slices", metavar="PATH", help="write the area ratio at each d grid value as CSV")
    _add_mc_flags(p)
    _add_model_flags(p)

    p = sub.add_parser("sweep", help="area ratio for several values of d")
    p.add_argument("--d", type=float, action="append", metavar="VALUE",
                   help="phase value (repeatable); default is 0, pi/4, pi/2, 3pi/4, pi")
    p.add_argument("--step", type=float, help="use d = 0, step, 2*step, ... up to pi")
    p.add_argument("--pi-units", action="store_true", help="read --d and --step as multiples of pi")
    p.add_argument("--grid", type=_grid_int, default=DEFAULT_N_2D, metavar="N")
    _add_model_flags(p)
    return parser


def _params(**kw) -> str:
    return ";".join(f"{k}={v!r}" if isinstance(v, float) else f"{k}={v}" for k, v in kw.items() if v is not None)


def _csv_row(command: str, params: str, est: RegionEstimate) -> list:
    return [command, params, repr(est.ratio), repr(est.error_estimate), est.evaluations, est.method,
            "" if est.seed is None else est.seed, __version__]


def _csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(rows)
    return buf.getvalue()


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _emit_csv(args, rows, notes: list[str], out) -> None:
    text = _csv_text(rows)
    if args.csv:
        _write(args.csv, text)
        for line in notes:
            print(line, file=out)
    else:
        out.write(text)
        for line in notes:
            print(f"# {line}", file=out)


def _mc_note(grid: RegionEstimate, mc: RegionEstimate) -> str:
    diff = abs(grid.ratio - mc.ratio)
    sigmas = diff / mc.error_estimate if mc.error_estimate > 0 else (0.0 if diff == 0 else math.inf)
    verdict = "agrees" if sigmas <= 3 else "DISAGREES"
    return (f"mc check: grid {grid.ratio:.6f} vs mc {mc.ratio:.6f} +/- {mc.error_estimate:.6f} "
            f"({sigmas:.2f} sigma, {verdict}; seed {mc.seed})")


def _check_model(args) -> None:
    if not args.u100 > args.u0:
        raise UsageError("--u100 must exceed --u0")
    if getattr(args, "mc", None) is not None and args.mc < 1000:
        raise UsageError("--mc needs at least 1000 samples")


def cmd_eval(args, out) -> int:
    try:
        with open(args.scenario, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read {args.scenario}: {exc.strerror or exc}") from exc
    scenario = parse_scenario(text)
    problem, mind = scenario.problem, scenario.mind

    if mind is None:
        result = choose(problem)
        print("expected utilities", file=out)
    else:
        utils = [moderated_expected_utility(mind, problem.world_state, a) for a in problem.actions]
        result = argmax_with_ties(utils)
        print(f"mind-moderated expected utilities, |c|^2 = {overlap_sq_generic(mind, problem.world_state):.12g}", file=out)

    width = max(len(a.label) for a in problem.actions)
    for a, u in zip(problem.actions, result.utilities):
        print(f"  {a.label:<{width}}  {u:.12g}", file=out)
    best = [problem.actions[i].label for i in sorted(result.best_indices)]
    tie = " (tie)" if len(best) > 1 else ""
    print(f"best: {', '.join(best)}{tie}", file=out)
    print(f"choice: {problem.actions[result.reported_choice].label}", file=out)
    return EXIT_OK


def cmd_region(args, out) -> int:
    _check_model(args)
    d = args.d * math.pi if args.pi_units else args.d
    if args.svg and args.discrete_urn:
        raise UsageError("--svg renders the continuous grid; drop --discrete-urn")
    grid = GridSpec(args.grid)
    est = area_ratio_fixed_d(d, grid, u0=args.u0, u100=args.u100, discrete_urn=args.discrete_urn, workers=args.workers)
    params = _params(d=d, n=args.grid, u0=args.u0, u100=args.u100, discrete_urn=args.discrete_urn)
    rows = [_csv_row("region", params, est)]
    notes = [f"region d={d:.6g}: ratio {est.ratio:.6f} (refinement error {est.error_estimate:.2g})"]
    if args.mc:
        mc = monte_carlo_ratio(args.mc, args.seed, d, u0=args.u0, u100=args.u100, workers=args.workers)
        rows.append(_csv_row("region", _params(d=d, samples=args.mc, u0=args.u0, u100=args.u100), mc))
        notes.append(_mc_note(est, mc))
    if args.svg:
        _write(args.svg, render_region_svg(PlotSpec(d), args.grid, args.u0, args.u100))
        notes.append(f"svg written to {args.svg}")
    _emit_csv(args, rows, notes, out)
    return EXIT_OK


def cmd_volume(args, out) -> int:
    _check_model(args)
    grid = GridSpec(args.grid)
    est = volume_ratio(grid, u0=args.u0, u100=args.u100, discrete_urn=args.discrete_urn, workers=args.workers)
    lo, hi = EMPIRICAL_BAND
    lines = [
        f"volume ratio (grid n={args.grid}): {est.ratio:.6f} = {100 * est.ratio:.2f}%",
        f"refinement error: {est.error_estimate:.3g}",
        f"evaluations: {est.evaluations}",
        f"empirical ambiguity-aversion band (survey data, comparison only): [{100 * lo:.1f}%, {100 * hi:.1f}%]",
    ]
    rows = [_csv_row("volume", _params(n=args.grid, u0=args.u0, u100=args.u100, discrete_urn=args.discrete_urn), est)]
    if args.mc:
        mc = monte_carlo_ratio(args.mc, args.seed, None, u0=args.u0, u100=args.u100, workers=args.workers)
        rows.append(_csv_row("volume", _params(samples=args.mc, u0=args.u0, u100=args.u100), mc))
        lines.append(_mc_note(est, mc))
    for line in lines:
        print(line, file=out)
    if args.csv:
        _write(args.csv, _csv_text(rows))
    if args.slices:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("d", "ratio"))
        for d, r in volume_slices(grid, u0=args.u0, u100=args.u100, discrete_urn=args.discrete_urn):
            w.writerow((repr(d), repr(r)))
        _write(args.slices, buf.getvalue())
    return EXIT_OK


def _sweep_values(args) -> list[float]:
    scale = math.pi if args.pi_units else 1.0
    if args.d and args.step is not None:
        raise UsageError("give either --d values or --step, not both")
    if args.step is not None:
        step = args.step * scale
        if not step > 0:
            raise UsageError("--step must be positive")
        count = int(math.floor(D_MAX / step + 1e-9))
        values = [min(k * step, D_MAX) for k in range(count + 1)]
    elif args.d:
        values = [v * scale for v in args.d]
    else:
        values = list(REFERENCE_D_GRID)
    for v in values:
        if not 0.0 <= v <= D_MAX + 1e-12:
            raise UsageError(f"d = {v!r} lies outside [0, pi]")
    return [min(v, D_MAX) for v in values]


def cmd_sweep(args, out) -> int:
    _check_model(args)
    values = _sweep_values(args)
    grid = GridSpec(args.grid)
    rows, ratios = [], []
    for d in values:
        est = area_ratio_fixed_d(d, grid, u0=args.u0, u100=args.u100, discrete_urn=args.discrete_urn, workers=args.workers)
        rows.append(_csv_row("sweep", _params(d=d, n=args.grid, u0=args.u0, u100=args.u100,
                                              discrete_urn=args.discrete_urn), est))
        ratios.append(est.ratio)
    notes = []
    if len(values) == len(REFERENCE_D_GRID) and all(abs(a - b) <= 1e-12 for a, b in zip(values, REFERENCE_D_GRID)):
        increasing = all(a < b for a, b in zip(ratios, ratios[1:]))
        notes.append(f"advisory: ratios strictly increasing in d: {'yes' if increasing else 'NO'} "
                     f"(reference 30 < 41 < 63 < 74 < 76 percent)")
    _emit_csv(args, rows, notes, out)
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "region": cmd_region, "volume": cmd_volume, "sweep": cmd_sweep}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = _show_warning
            return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HilbertDecisionError as exc:
        print(f"{parser.prog} {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)
