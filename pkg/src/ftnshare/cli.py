"""Command-line front end: sweeps, figure data and validation reports.

Every data command writes CSV (UTF-8, LF line endings) preceded by ``#``
metadata lines recording the version, the command, its flags and the seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np

from . import __version__
from .asymptotics import (gap_to_db, high_snr_gap, high_snr_gap_normalized, optimize_offset)
from .pulses import ChannelParams, PulseSpectrum, psd
from .quadrature import log2_1p
from .sharing import (PowerMode, SharingConfig, classify_region, mac_rate_closed_BW,
                      sharing_upper_bound, spectral_efficiency)
from .singleuser import ftn_capacity_closed, ftn_capacity_quadrature
from .validation import run_all
from .wavesim import FtnWaveformConfig, estimate_snr_density

DEFAULT_ALPHAS = "0,0.25,0.5,0.75,1"


# --- argument types -------------------------------------------------------

def alpha_value(text: str) -> float:
    try:
        a = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= a <= 1.0:
        raise argparse.ArgumentTypeError(f"roll-off must lie in [0, 1], got {a}")
    return a


def alpha_list(text: str) -> list[float]:
    return [alpha_value(t) for t in text.split(",") if t.strip()]


def float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def grid_value(text: str) -> np.ndarray:
    """``start:stop:steps`` -> evenly spaced points, endpoints included."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be start:stop:steps, got {text!r}")
    try:
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    if not start < stop:
        raise argparse.ArgumentTypeError("grid needs start < stop")
    if steps < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2 steps")
    return np.linspace(start, stop, steps)


def users_value(text: str) -> int | None:
    if text == "asymptotic":
        return None
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"users must be 'asymptotic' or an odd integer, got {text!r}") from None
    if k < 1 or k % 2 == 0:
        raise argparse.ArgumentTypeError(f"user count must be a positive odd integer, got {k}")
    return k


def positive(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {x}")
    return x


# --- output -----------------------------------------------------------------

def fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return f"{float(x):.12g}"


def _flags_text(args: argparse.Namespace) -> str:
    skip = {"func", "command", "plot_script", "out", "_parser"}
    items = []
    for key, val in sorted(vars(args).items()):
        if key in skip:
            continue
        if isinstance(val, np.ndarray):
            val = f"{val[0]:g}:{val[-1]:g}:{val.size}"
        elif isinstance(val, list):
            val = ",".join(fmt(v) for v in val)
        elif isinstance(val, float):
            val = fmt(val)
        items.append(f"--{key.replace('_', '-')}={val}")
    return " ".join(items)


def write_csv(args: argparse.Namespace, header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    buf.write(f"# ftnshare {__version__}\n")
    buf.write(f"# command: {args.command}\n")
    buf.write(f"# flags: {_flags_text(args)}\n")
    buf.write(f"# seed: {getattr(args, 'seed', 0)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


PLOT_TEMPLATE = '''"""Plot {csv_name} (written by ftnshare {command})."""
import csv
from collections import defaultdict

import matplotlib.pyplot as plt

with open({csv_path!r}, encoding="utf-8") as fh:
    rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))

groups = defaultdict(list)
for row in rows:
    groups[row.get({group!r}, "")].append(row)

fig, ax = plt.subplots()
for key, members in groups.items():
    x = [float(r[{x!r}]) for r in members]
    for col in {ys!r}:
        label = f"{{col}} {group}={{key}}" if key else col
        ax.plot(x, [float(r[col]) for r in members], label=label)
ax.set_xlabel({x!r})
ax.legend(fontsize="small")
ax.grid(True)
plt.show()
'''


def write_plot_script(args: argparse.Namespace, x: str, ys: Sequence[str], group: str | None) -> None:
    if not args.plot_script:
        return
    if not args.out:
        raise SystemExit("--plot-script needs --out so the script can find the CSV")
    script = PLOT_TEMPLATE.format(csv_name=args.out, csv_path=args.out, command=args.command,
                                  x=x, ys=list(ys), group=group or "")
    with open(args.plot_script, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(script)


def _map(fn: Callable, items: Sequence, jobs: int) -> list:
    # executor.map keeps input order regardless of completion order
    if jobs <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# --- capacity -------------------------------------------------------------

def _capacity_row(item):
    snr_db, alpha, W, N0, B, users, mode = item
    ch = ChannelParams.from_snr_db(snr_db, W=W, N0=N0)
    pulse = PulseSpectrum.rrc(alpha, W)
    closed = ftn_capacity_closed(alpha, ch).value
    quad = ftn_capacity_quadrature(pulse, ch).value
    if B is None and users is None and mode is PowerMode.PER_USER:
        eta = mac_rate_closed_BW(alpha, ch).value / W
    else:
        cfg = SharingConfig(pulse, W if B is None else B, users=users, power_mode=mode)
        eta = spectral_efficiency(cfg, ch).value
    return snr_db, alpha, closed, quad, eta


def cmd_capacity(args: argparse.Namespace) -> int:
    """Single-user capacity (bits/s) and sharing efficiency at offset B (default W)."""
    items = [(float(s), a, args.hz, args.n0, args.offset_b, args.users, PowerMode(args.power_mode))
             for a in args.alpha for s in args.grid]
    rows = _map(_capacity_row, items, args.jobs)
    write_csv(args, ["snr_db", "alpha", "c_closed", "c_quadrature", "eta"], rows)
    write_plot_script(args, "snr_db", ["c_closed", "eta"], "alpha")
    return 0


# --- sharing --------------------------------------------------------------

def _case_label(alpha: float, B: float, W: float) -> str:
    try:
        return classify_region(alpha, B, W).case.name.lower()
    except ValueError:
        return "multi"


def _sharing_row(item):
    snr_db, P, alpha, B, W, N0, users, mode = item
    ch = ChannelParams(P=P, N0=N0, W=W)
    cfg = SharingConfig(PulseSpectrum.rrc(alpha, W), B, users=users, power_mode=mode)
    eta = spectral_efficiency(cfg, ch).value
    return snr_db, B, eta, _case_label(alpha, B, W), sharing_upper_bound(cfg, ch)


def _optimize_row(item):
    snr_db, P, alpha, W, N0, mode, grid = item
    ch = ChannelParams(P=P, N0=N0, W=W)
    B_opt, eta_opt = optimize_offset(alpha, ch, mode, grid)
    cfg_w = SharingConfig(PulseSpectrum.rrc(alpha, W), W, power_mode=mode)
    eta_w = spectral_efficiency(cfg_w, ch).value
    shannon = float(log2_1p(ch.rho))
    return snr_db, B_opt, eta_opt, eta_w, shannon


def _powers(args: argparse.Namespace) -> list[tuple[float, float]]:
    """(snr_db, P) pairs; --watts overrides the SNR list."""
    if args.watts is not None:
        rho = args.watts / (args.hz * args.n0)
        snr_db = 10 * math.log10(rho) if rho > 0 else -math.inf
        return [(snr_db, args.watts)]
    return [(float(s), 10 ** (s / 10) * args.hz * args.n0) for s in args.snr_db]


def cmd_sharing(args: argparse.Namespace) -> int:
    """Asymptotic or finite-K spectral efficiency over an offset grid."""
    alpha, W = args.alpha, args.hz
    A = (1 + alpha) * W
    grid = args.grid if args.grid is not None else np.linspace(A / 2, A, 26)
    mode = PowerMode(args.power_mode)
    if grid.min() < 0:
        args._parser.error("offsets must be non-negative")
    if args.users is None and grid.min() == 0:
        args._parser.error("an asymptotic system needs B > 0")

    if args.optimize:
        if args.users is not None:
            args._parser.error("--optimize works on the asymptotic system")
        if grid.min() < A / 2 - 1e-12 or grid.max() > A + 1e-12:
            args._parser.error(f"--optimize needs a grid inside [{A / 2:g}, {A:g}]")
        items = [(s, P, alpha, W, args.n0, mode, grid) for s, P in _powers(args)]
        rows = _map(_optimize_row, items, args.jobs)
        write_csv(args, ["snr_db", "B_opt", "eta_opt", "eta_BW", "shannon"], rows)
        write_plot_script(args, "snr_db", ["eta_opt", "eta_BW", "shannon"], None)
        return 0

    items = [(s, P, alpha, float(B), W, args.n0, args.users, mode)
             for s, P in _powers(args) for B in grid]
    rows = _map(_sharing_row, items, args.jobs)
    write_csv(args, ["snr_db", "B", "eta", "case", "bound"], rows)
    write_plot_script(args, "B", ["eta", "bound"], "snr_db")
    return 0


# --- gap ------------------------------------------------------------------

def cmd_gap(args: argparse.Namespace) -> int:
    """High-SNR additive gaps in bits/s/Hz and dB."""
    grid = args.grid if args.grid is not None else np.linspace(0.0, 1.0, 21)
    if grid.min() < 0 or grid.max() > 1:
        args._parser.error("roll-off grid must lie in [0, 1]")
    rows = []
    for a in grid:
        g, gn = high_snr_gap(a), high_snr_gap_normalized(a)
        rows.append((a, g, gap_to_db(g), gn, gap_to_db(max(gn, 0.0))))
    write_csv(args, ["alpha", "gap_bits", "gap_db", "gap_normalized_bits", "gap_normalized_db"], rows)
    write_plot_script(args, "alpha", ["gap_bits", "gap_normalized_bits"], None)
    return 0


# --- simulate ---------------------------------------------------------------

def cmd_simulate(args: argparse.Namespace) -> int:
    """Monte-Carlo SNR-density estimates next to the analytic P |H(f)|^2 / N0."""
    W = args.hz
    pulse = PulseSpectrum.rrc(args.alpha, W)
    freqs = args.grid if args.grid is not None else np.linspace(-0.64 * W, 0.64 * W, 16)
    _, P = _powers(args)[0]
    rows = []
    for i, tau in enumerate(args.tau):
        if not 0 < tau <= 1:
            args._parser.error(f"tau must lie in (0, 1], got {tau}")
        cfg = FtnWaveformConfig(pulse, tau, args.symbols, P=P, seed=args.seed + i)
        est = estimate_snr_density(cfg, args.n0, args.trials, freqs)
        analytic = P * psd(pulse, freqs) / args.n0
        rows.extend(zip([tau] * freqs.size, freqs, est.estimate, est.std_err, analytic))
    write_csv(args, ["tau", "f", "estimate", "std_err", "analytic"], rows)
    write_plot_script(args, "f", ["estimate", "analytic"], "tau")
    return 0


# --- validate ---------------------------------------------------------------

def cmd_validate(args: argparse.Namespace) -> int:
    """Run the cross-validation suite; exit status 1 if any check fails."""
    checks = run_all(tol=args.tol, seed=args.seed, monte_carlo=not args.no_monte_carlo)
    lines = [c.line() for c in checks]
    passed = sum(c.passed for c in checks)
    lines.append(f"{passed}/{len(checks)} checks passed")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0 if passed == len(checks) else 1


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftnshare",
        description="Capacity and spectral efficiency of FTN signaling under spectrum sharing.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--hz", type=positive, default=1.0, metavar="W",
                        help="Nyquist bandwidth W in Hz (default 1, normalised)")
    common.add_argument("--n0", type=positive, default=1.0, help="noise density in W/Hz")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--plot-script", metavar="FILE",
                      help="also write a matplotlib script that plots the CSV")

    sharing_opts = argparse.ArgumentParser(add_help=False)
    sharing_opts.add_argument("--power-mode", choices=[m.value for m in PowerMode],
                              default=PowerMode.PER_USER.value)
    sharing_opts.add_argument("--users", type=users_value, default=None,
                              help="'asymptotic' (default) or an odd user count K")

    p = sub.add_parser("capacity", parents=[common, data, sharing_opts],
                       help="single-user capacity and B=W efficiency versus SNR")
    p.add_argument("--alpha", type=alpha_list, default=alpha_list(DEFAULT_ALPHAS))
    p.add_argument("--grid", type=grid_value, default=grid_value("-10:40:51"),
                   help="SNR grid in dB, start:stop:steps")
    p.add_argument("--offset-b", type=positive, default=None,
                   help="offset for the efficiency column (default W)")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("sharing", parents=[common, data, sharing_opts],
                       help="spectral efficiency versus offset B")
    p.add_argument("--alpha", type=alpha_value, default=0.5)
    p.add_argument("--snr-db", type=float_list, default=float_list("-10,0,10,20,30"))
    p.add_argument("--watts", type=float, default=None, help="per-user power P, overrides --snr-db")
    p.add_argument("--grid", type=grid_value, default=None,
                   help="offset grid start:stop:steps (default A/2:A:26)")
    p.add_argument("--optimize", action="store_true",
                   help="report the best offset on the grid for each SNR")
    p.set_defaults(func=cmd_sharing)

    p = sub.add_parser("gap", parents=[common, data], help="high-SNR additive gaps versus roll-off")
    p.add_argument("--grid", type=grid_value, default=None, help="roll-off grid (default 0:1:21)")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("simulate", parents=[common, data],
                       help="Monte-Carlo SNR density from FTN waveforms")
    p.add_argument("--alpha", type=alpha_value, default=0.5)
    p.add_argument("--tau", type=float_list, default=float_list("1.0,0.7"))
    p.add_argument("--symbols", type=int, default=512, help="symbols per waveform (L)")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--snr-db", type=float_list, default=float_list("0"))
    p.add_argument("--watts", type=float, default=None)
    p.add_argument("--grid", type=grid_value, default=None, help="frequency grid in Hz")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("validate", parents=[common], help="run the cross-validation suite")
    p.add_argument("--alpha", type=alpha_value, default=None,
                   help="accepted for symmetry with other commands; range-checked only")
    p.add_argument("--tol", type=positive, default=1e-8,
                   help="relative tolerance for the deterministic checks")
    p.add_argument("--no-monte-carlo", action="store_true", help="skip the waveform check")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._parser = sub_parser_for(parser, args.command)
    try:
        return args.func(args)
    except ValueError as exc:
        args._parser.error(str(exc))


def sub_parser_for(parser: argparse.ArgumentParser, name: str) -> argparse.ArgumentParser:
    for action in parser._subparsers._group_actions:
        if name in action.choices:
            return action.choices[name]
    return parser


if __name__ == "__main__":
    sys.exit(main())
