"""Command line front end that emits deterministic CSV data.

Subcommands:

* ``spectrum``  even-sector eigenvalues versus the edge field
* ``sweep``     correlators, measurement costs, and both maxima versus h
* ``thermo``    second-law budget terms versus h
* ``chain``     edge-correlator magnitudes versus chain length
* ``verify``    run the full invariant suite, exit 1 on any failure

CSV output is UTF-8 with comma separators, LF line endings, a header row,
and floats formatted %.12e (see SCHEMA.md); rerunning a command with the
same arguments reproduces the output byte for byte.  Exit codes: 0 on
success, 1 on verification failure, 2 for argument or I/O errors.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import chain as chain_mod
from . import checks as checks_mod
from .model import ModelParams, even_sector_spectrum, ground_state
from .optimize import MIN_RESOLUTION, protocol_sweep
from .protocol import correlators_closed
from .thermo import thermo_sweep


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.12e}"


def _write_csv(path, header, rows):
    text = "\n".join([",".join(header)]
                     + [",".join(_fmt(v) for v in row) for row in rows]) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _field_grid(args):
    if args.h_steps < 2:
        raise ValueError("--h-steps must be at least 2")
    if args.h_min > args.h_max:
        raise ValueError("--h-min must not exceed --h-max")
    return np.linspace(args.h_min, args.h_max, args.h_steps) * args.k


def cmd_spectrum(args):
    rows = []
    for h in _field_grid(args):
        levels = even_sector_spectrum(ModelParams(h=float(h), k=args.k))
        rows.append([float(h)] + [float(e) for e in levels])
    _write_csv(args.out, ["h"] + [f"E_{i}" for i in range(1, 9)], rows)
    return 0


def cmd_sweep(args):
    header = ["h", "xx_corr", "yy_corr", "h_xx_corr", "h_yy_corr",
              "injected_axis_y", "injected_axis_x", "extracted_max",
              "site_reduction_max", "net_at_site_optimum"]
    rows = [[r.h, r.xx, r.yy, r.h_xx, r.h_yy, r.injected_axis_y,
             r.injected_axis_x, r.extracted_max, r.site_reduction_max,
             r.net_at_site_optimum]
            for r in protocol_sweep(_field_grid(args), k=args.k)]
    _write_csv(args.out, header, rows)
    return 0


def cmd_thermo(args):
    if args.h_min <= 0:
        raise ValueError("--h-min must be positive for the thermo sweep")
    header = ["h", "site_reduction_max", "rotation_cost", "correlator_gain",
              "kl_over_beta", "info_over_beta", "budget_residual"]
    rows = []
    for r in thermo_sweep(_field_grid(args), k=args.k):
        residual = abs(r.site_reduction_max - r.kl_over_beta - r.info_over_beta)
        rows.append([r.h, r.site_reduction_max, r.rotation_cost,
                     r.correlator_gain, r.kl_over_beta, r.info_over_beta,
                     residual])
    _write_csv(args.out, header, rows)
    return 0


def _chain_fields(args):
    if args.h_min is not None or args.h_max is not None:
        h_min = args.h_min if args.h_min is not None else args.h
        h_max = args.h_max if args.h_max is not None else args.h
        return list(np.linspace(h_min, h_max, args.h_steps) * args.k)
    return [args.h * args.k]


def cmd_chain(args):
    lengths = args.L_list if args.L_list else [args.L]
    header = ["L", "h", "xx_corr_abs", "yy_corr_abs", "slope", "r_squared",
              "ed_residual"]
    rows = []
    for h in _chain_fields(args):
        scan = chain_mod.correlators_vs_length(float(h), args.k, lengths)
        for L, xx_abs, yy_abs in zip(scan.lengths, scan.xx_abs, scan.yy_abs):
            residual = None
            if L == 4:
                gs = ground_state(ModelParams(h=max(float(h),
                                                    chain_mod.SMALL_FIELD * args.k),
                                              k=args.k))
                c = correlators_closed(gs)
                residual = max(abs(xx_abs - abs(c.xx)), abs(yy_abs - abs(c.yy)))
            rows.append([L, float(h), xx_abs, yy_abs, scan.slope,
                         scan.r_squared, residual])
    _write_csv(args.out, header, rows)
    return 0


def cmd_verify(args):
    results = checks_mod.run_all(seed=args.seed, resolution=args.grid)
    width = max(len(r.name) for r in results)
    all_passed = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        all_passed &= r.passed
        print(f"{status}  {r.name:<{width}}  residual {r.residual:.3e}"
              f"  (tolerance {r.tolerance:.0e})")
    print(f"{'all checks passed' if all_passed else 'VERIFICATION FAILED'}")
    return 0 if all_passed else 1


def _int_list(text):
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a comma-separated integer list, got {text!r}")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="qetsim",
        description="Energy-teleportation laboratory on the four-site chain")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, h_min, h_max, h_steps):
        p.add_argument("--k", type=float, default=1.0,
                       help="coupling strength; all energies in units of k")
        p.add_argument("--h-min", dest="h_min", type=float, default=h_min)
        p.add_argument("--h-max", dest="h_max", type=float, default=h_max)
        p.add_argument("--h-steps", dest="h_steps", type=int, default=h_steps)
        p.add_argument("--out", default=None, help="output CSV path (default: stdout)")

    p = sub.add_parser("spectrum", help="even-sector spectrum vs edge field")
    common(p, 0.0, 3.0, 61)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", help="protocol energies and correlators vs h")
    common(p, 0.02, 2.0, 100)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("thermo", help="second-law budget vs h")
    common(p, 0.05, 3.0, 60)
    p.set_defaults(func=cmd_thermo)

    p = sub.add_parser("chain", help="edge correlators vs chain length")
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--h", type=float, default=0.5,
                   help="edge field (single value, in units of k)")
    p.add_argument("--h-min", dest="h_min", type=float, default=None)
    p.add_argument("--h-max", dest="h_max", type=float, default=None)
    p.add_argument("--h-steps", dest="h_steps", type=int, default=2)
    p.add_argument("--L", type=int, default=1000, help="single chain length")
    p.add_argument("--L-list", dest="L_list", type=_int_list, default=None,
                   help="comma-separated lengths, e.g. 4,50,100,1000")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("verify", help="run the full invariant suite")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the sampled-property checks")
    p.add_argument("--grid", type=int, default=MIN_RESOLUTION,
                   help="angle-grid resolution for the optimizer oracle")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
