"""Command-line entry point: sweeps, figure data, verification and unit conversion.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or parameters.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from datetime import datetime, timezone
from typing import Optional, Sequence

from . import __version__
from .core import base_probability
from .hypergeometric import SeriesConvergenceError, SeriesPolicy
from .sweeps import (
    DEFAULT_P_STEPS,
    Background,
    SweepResult,
    figure_panels,
    p_grid,
    physical_config,
    sweep_p,
    sweep_time,
)
from .verify import run_checks

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


def _backgrounds(args) -> list[Background]:
    bgs = [Background("fock", n) for n in args.n or []]
    bgs += [Background("coherent", v) for v in args.coherent or []]
    bgs += [Background("squeezed", v) for v in args.squeezed or []]
    return bgs


def _policy(args) -> SeriesPolicy:
    return SeriesPolicy(rel_tol=args.tol, max_terms=args.max_terms)


def _emit(result: SweepResult, out: Optional[str]) -> None:
    # the timestamp lives on its own metadata line so data rows stay reproducible
    stamp = {"generated": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    if out is None:
        result.write_csv(sys.stdout, stamp)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            result.write_csv(fh, stamp)


def cmd_sweep_p(args) -> int:
    grid = p_grid(args.p_min, args.p_max, args.steps)
    _emit(sweep_p(args.n2, _backgrounds(args), grid, _policy(args)), args.out)
    return EXIT_OK


def cmd_sweep_time(args) -> int:
    result = sweep_time(args.gamma, args.n2, _backgrounds(args), args.tau_max, args.steps, _policy(args))
    _emit(result, args.out)
    return EXIT_OK


def cmd_figure(args) -> int:
    panels = figure_panels(
        args.name,
        gammas=args.gamma,
        ns=args.n,
        squeezed=args.squeezed,
        p_steps=args.steps,
        policy=_policy(args),
    )
    if args.panel:
        if args.panel not in panels:
            raise ValueError(f"{args.name} has panels {', '.join(panels)}, not {args.panel!r}")
        panels = {args.panel: panels[args.panel]}
    if args.out is None:
        for i, result in enumerate(panels.values()):
            if i:
                sys.stdout.write("\n")
            _emit(result, None)
    else:
        os.makedirs(args.out, exist_ok=True)
        for name, result in panels.items():
            path = os.path.join(args.out, f"{name}.csv")
            _emit(result, path)
            print(path, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_checks(args.tol)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    total = sum(r.seconds for r in results)
    print(f"{len(results) - len(failed)}/{len(results)} checks passed in {total:.1f}s")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_physical(args) -> int:
    cfg = physical_config(args.J, args.delta, args.length)
    print(f"gamma={cfg.gamma!r}")
    print(f"tau={cfg.tau!r}")
    print(f"Q={cfg.Q!r}")
    print(f"P0={cfg.P0!r}")
    print(f"P={base_probability(cfg)!r}")
    print(f"Qtau_over_pi={cfg.Q * cfg.tau / math.pi!r}")
    return EXIT_OK


def _add_background_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, action="append", help="Fock background photon number (repeatable)")
    p.add_argument("--coherent", type=float, action="append", metavar="NBAR", help="coherent background mean (repeatable)")
    p.add_argument("--squeezed", type=float, action="append", metavar="NBAR", help="squeezed-vacuum mean sinh^2 r (repeatable)")


def _add_common(p: argparse.ArgumentParser, out_help: str = "output CSV path (default: stdout)") -> None:
    p.add_argument("--out", default=None, help=out_help)
    p.add_argument("--tol", type=float, default=1e-13, help="hypergeometric series relative tolerance")
    p.add_argument("--max-terms", type=int, default=1_000_000, help="hypergeometric series term limit")
    p.add_argument("--seed", type=int, default=None, help="reserved; nothing is random")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photon-tunneling",
        description="Tunneling probabilities of photons between two coupled waveguides.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep-p", help="probabilities versus the base probability P")
    sp.add_argument("--n2", type=int, default=1, help="photons starting in waveguide A")
    _add_background_flags(sp)
    sp.add_argument("--p-min", type=float, default=0.0)
    sp.add_argument("--p-max", type=float, default=1.0)
    sp.add_argument("--steps", type=int, default=DEFAULT_P_STEPS)
    _add_common(sp)
    sp.set_defaults(func=cmd_sweep_p)

    st = sub.add_parser("sweep-time", help="probabilities versus scaled time Q tau / pi")
    st.add_argument("--gamma", type=float, required=True, help="detuning over coupling, Delta/J")
    st.add_argument("--n2", type=int, default=1)
    _add_background_flags(st)
    st.add_argument("--tau-max", type=float, default=2.0, help="largest Q tau / pi (default 2 periods)")
    st.add_argument("--steps", type=int, default=None, help="grid points (default 1000 per period)")
    _add_common(st)
    st.set_defaults(func=cmd_sweep_time)

    fg = sub.add_parser("figure", help="data behind figures 1-4")
    fg.add_argument("name", choices=["fig1", "fig2", "fig3", "fig4"])
    fg.add_argument("--panel", default=None, help="emit a single panel, e.g. fig2b")
    fg.add_argument("--gamma", type=float, action="append", help="detunings for the time panels (repeatable)")
    fg.add_argument("--n", type=int, action="append", help="background photon numbers (repeatable)")
    fg.add_argument("--squeezed", type=float, default=None, metavar="NBAR", help="squeezed-vacuum mean for fig4")
    fg.add_argument("--steps", type=int, default=DEFAULT_P_STEPS, help="points of the P grid")
    _add_common(fg, out_help="directory for one CSV per panel (default: all panels to stdout)")
    fg.set_defaults(func=cmd_figure)

    vf = sub.add_parser("verify", help="run the cross-path verification suite")
    vf.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    vf.set_defaults(func=cmd_verify)

    ph = sub.add_parser("physical", help="convert coupler parameters to (gamma, tau)")
    ph.add_argument("--J", type=float, required=True, help="coupling in mm^-1 (e.g. 0.51)")
    ph.add_argument("--delta", type=float, default=0.0, help="detuning in mm^-1")
    ph.add_argument("--length", type=float, required=True, help="propagation length in mm")
    ph.set_defaults(func=cmd_physical)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, SeriesConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
