"""Command line entry point.

Subcommands::

    iv         dot-device I-V family from a config file (transistor ignored)
    circuit    I-V family with the series transistor solved per point
    vout       alias of circuit emphasizing the output-voltage columns
    metrics    measurement metrics over the Zeeman-splitting grid
    sweep      generic sweep as declared in the config's [sweep] section
    reproduce  rebuild a preset figure family (fig3 .. fig9)
    selftest   run the built-in numerical cross-checks

Exit codes: 0 success, 2 configuration or validation error, 3 solver
failure.  Diagnostics go to stderr; data only to files.  All physical
quantities on the command line are SI with unit-suffixed key names; state
flows exclusively through flags and the config file (no environment
variables).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from ._version import __version__
from .errors import ConfigError, SolverError
from .harness import (
    FIGURE_IDS,
    ExperimentSpec,
    merge_overrides,
    parse_config_file,
    run_figure,
    run_sweep,
    spec_from_mapping,
)

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sidedot",
        description="Spin-qubit readout simulator: resonant tunneling through "
                    "a side-coupled triple quantum dot.",
    )
    parser.add_argument("--version", action="version", version=f"sidedot {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config_required=True):
        p.add_argument("--config", required=config_required,
                       help="INI config file (see README for the schema)")
        p.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                       help="override a config value (repeatable)")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--workers", type=int, default=None,
                       help="parallel workers (default: logical CPUs, capped "
                            "at the number of independent sweep points)")

    for name, doc in (("iv", "dot-device I-V family"),
                      ("circuit", "I-V family with the series transistor"),
                      ("vout", "output-voltage curves (circuit family)"),
                      ("metrics", "measurement metrics over the Zeeman grid"),
                      ("sweep", "generic sweep from the [sweep] section")):
        p = sub.add_parser(name, help=doc)
        add_common(p)

    rep = sub.add_parser("reproduce", help="rebuild a preset figure family")
    rep.add_argument("--figure", required=True, choices=FIGURE_IDS)
    rep.add_argument("--out", default="out")
    rep.add_argument("--workers", type=int, default=None)
    rep.add_argument("--points", type=int, default=None,
                     help="thin the preset grids for a quick preview")

    sub.add_parser("selftest", help="run the numerical cross-check suite")
    return parser


def _resolve_workers(requested: int | None, n_tasks: int) -> int:
    if requested is not None:
        return max(1, requested)
    return max(1, min(os.cpu_count() or 1, n_tasks))


def _spec_for(args, force_variable: str | None = None,
              force_fet: bool | None = None) -> ExperimentSpec:
    # overrides merge into the raw mapping before any validation, so a
    # flag can repair or repurpose any config value
    mapping = merge_overrides(parse_config_file(args.config), args.set)
    spec = spec_from_mapping(mapping, name=Path(args.config).stem)
    if args.out:
        spec = replace(spec, output_dir=Path(args.out))
    if force_variable is not None and spec.sweep.variable != force_variable:
        spec = replace(spec, sweep=replace(spec.sweep, variable=force_variable))
    if force_fet is True and not spec.fet.enabled:
        raise ConfigError("this subcommand needs [fet] enabled = true")
    if force_fet is False and spec.fet.enabled:
        from .fet import FetParams
        spec = replace(spec, fet=FetParams.disabled())
    return spec


def _run_selftest() -> int:
    """Numerical cross-checks; prints one line per check."""
    import numpy as np

    from .device import MeasurementCase, SpinChannel, bias_geometry, case_config
    from .fet import FetParams, vout_curve
    from .harness import _fig_device
    from .oracles import breit_wigner_plateau_current, matrix_transmission
    from .transport import iv_curve, spin_current, transmission

    ok = True

    def report(name: str, passed: bool, detail: str):
        nonlocal ok
        ok = ok and passed
        print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}", file=sys.stderr)

    params = _fig_device()

    # Breit-Wigner: symmetric bare resonance transmits perfectly on peak.
    bare = params.with_(w12=0.0, w23=0.0)
    bias = bias_geometry(bare, 1.5e-3, SpinChannel.UP)
    t_peak = transmission(bias.e2, bias, case_config(MeasurementCase.CASE_I, bare), bare)
    report("breit-wigner peak", abs(t_peak - 1.0) < 1e-12, f"T(e2) = {t_peak:.15f}")

    # Plateau current against the closed-form Lorentzian integral.
    i_plateau = spin_current(1.5e-3, SpinChannel.UP, MeasurementCase.REFERENCE, bare).value
    closed = breit_wigner_plateau_current(bare)
    rel = abs(i_plateau - closed) / closed
    report("plateau closed form", rel < 5e-3,
           f"I = {i_plateau:.4e} A vs {closed:.4e} A (rel {rel:.2e})")

    # Transmission formula vs dense 3x3 inversion on random draws.
    rng = np.random.default_rng(20240117)
    worst = 0.0
    for _ in range(200):
        p = params.with_(
            w12=float(rng.uniform(0, 3e-4)), w23=float(rng.uniform(0, 3e-4)),
            delta=float(rng.uniform(0, 4e-4)))
        case = list(MeasurementCase)[int(rng.integers(0, 5))]
        cfg = case_config(case, p)
        spin = cfg.active_spin or SpinChannel.UP
        b = bias_geometry(p, float(rng.uniform(0, 3e-3)), spin)
        w = float(rng.uniform(-1e-3, 4e-3))
        t1 = transmission(w, b, cfg, p)
        t2 = matrix_transmission(w, b, cfg, p)
        worst = max(worst, abs(t1 - t2) / max(t2, 1e-300))
    report("3x3 inversion equivalence", worst < 1e-10, f"max rel err {worst:.2e}")

    # Halving the side-level broadening must not move the currents.
    grid = list(np.linspace(0.0, 3e-3, 7))
    base = iv_curve(MeasurementCase.CASE_I, params, grid)
    halved = iv_curve(MeasurementCase.CASE_I,
                      params.with_(delta_broadening=params.delta_broadening / 2), grid)
    dev = max(abs(a.i_total - b.i_total) / max(abs(b.i_total), 1e-15)
              for a, b in zip(halved, base) if b.v_d > 0)
    report("broadening insensitivity", dev < 1e-3, f"max rel change {dev:.2e}")

    # Kirchhoff residuals along a short continuation sweep.
    sols = vout_curve(MeasurementCase.CASE_I, params, FetParams.long_channel(),
                      list(np.linspace(0.0, 2e-3, 9)))
    bad = [s for s in sols
           if abs(s.residual) > max(1e-6 * abs(s.current), 1e-16)]
    report("kirchhoff residuals", not bad, f"{len(sols)} points within tolerance")

    return EXIT_OK if ok else EXIT_SOLVER


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "selftest":
            return _run_selftest()
        if args.command == "reproduce":
            workers = _resolve_workers(args.workers, 5)
            files = run_figure(args.figure, args.out, workers=workers,
                               points_override=args.points)
            for f in files:
                print(f)
            return EXIT_OK

        force_fet = {"iv": False, "circuit": True, "vout": True}.get(args.command)
        force_variable = {"iv": "v_d", "circuit": "v_d", "vout": "v_d",
                          "metrics": "delta"}.get(args.command)
        spec = _spec_for(args, force_variable=force_variable, force_fet=force_fet)
        workers = _resolve_workers(args.workers, max(spec.sweep.points, 5))
        files = run_sweep(spec, workers=workers, overrides=args.set)
        for f in files:
            print(f)
        return EXIT_OK
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
