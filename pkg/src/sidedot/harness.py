"""Experiment harness: config files, figure presets, sweeps, CSV + manifest.

Config files are INI-style with the sections ``[device]``, ``[leads]``,
``[fet]``, ``[sweep]`` and ``[output]``.  Unknown sections or keys are hard
errors, exactly one of ``delta_eV`` / ``b_tesla`` must be given, and every
value is validated by the underlying parameter types.

Every run writes one CSV per curve family plus a JSON manifest holding the
fully resolved parameters (a config echo that reproduces the run), the
grids, sha256 checksums of each CSV and any solver errors.  CSV payloads
are deterministic: scientific notation with 9 significant digits, comma
separated, LF endings, no timestamps (those live in the manifest only).
"""

from __future__ import annotations

import configparser
import hashlib
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ._version import __version__
from .device import (
    ALL_CASES,
    MEASUREMENT_CASES,
    DeviceParams,
    MeasurementCase,
    zeeman_from_field,
)
from .errors import ConfigError, SweepError
from .fet import CircuitSolution, FetParams, vout_curve
from .metrics import MetricsRecord, metrics_sweep
from .transport import IvPoint, iv_curve

__all__ = [
    "SweepSpec",
    "ExperimentSpec",
    "load_config",
    "parse_config_file",
    "spec_from_mapping",
    "spec_to_mapping",
    "merge_overrides",
    "apply_overrides",
    "run_figure",
    "run_sweep",
    "FIGURE_IDS",
    "IV_HEADER",
    "CIRCUIT_HEADER",
    "METRICS_HEADER",
    "DEFAULT_VD_GRID",
    "DEFAULT_DELTA_GRID",
    "FIG5_VD_WINDOW_GRID",
    "METRICS_OPERATING_BIAS",
]

IV_HEADER = ["case", "v_d_V", "i_up_A", "i_dn_A", "i_total_A", "quad_err_A"]
CIRCUIT_HEADER = IV_HEADER + ["v_out_V", "v_ds_V", "residual_A"]
METRICS_HEADER = [
    "case", "v_d_V", "delta_eV", "delta_i_A", "mean_i_A",
    "shot_noise_A2_per_Hz", "t_meas_s", "t_dec_s", "count",
]

# Default grids.  I-V structure lives on the mV scale; the metrics' Zeeman
# axis spans the experimentally plausible splittings.  The 0.5 mV low-bias
# window grid and the delta-axis bounds are recorded in every manifest as
# assumptions.
DEFAULT_VD_GRID = (0.0, 3e-3, 301)
DEFAULT_DELTA_GRID = (5e-5, 4e-4, 36)
FIG5_VD_WINDOW_GRID = (2e-5, 5e-4, 25)
METRICS_OPERATING_BIAS = 2.225e-3

FIGURE_IDS = (
    "fig3", "fig4a", "fig4b", "fig5a", "fig5b",
    "fig6", "fig7a", "fig7b", "fig8", "fig9",
)

SWEEP_VARIABLES = ("v_d", "delta", "temperature", "gate_length")
REDUCTIONS = ("none", "max_over_vd")

_DEVICE_KEYS = {
    "e1_eV", "e2_0_eV", "w12_eV", "w23_eV", "delta_eV", "b_tesla",
    "delta_broadening_eV",
}
_LEADS_KEYS = {"ef_eV", "gamma_l_eV", "gamma_r_eV", "temperature_K"}
_FET_KEYS = {
    "enabled", "length_m", "width_m", "mobility_m2_per_Vs", "eot_m",
    "epsilon_F_per_m", "overdrive_V",
}
_SWEEP_KEYS = {"variable", "start", "stop", "points", "reduction"}
_OUTPUT_KEYS = {"dir"}
_SCHEMA = {
    "device": _DEVICE_KEYS,
    "leads": _LEADS_KEYS,
    "fet": _FET_KEYS,
    "sweep": _SWEEP_KEYS,
    "output": _OUTPUT_KEYS,
}


@dataclass(frozen=True)
class SweepSpec:
    variable: str = "v_d"
    start: float = DEFAULT_VD_GRID[0]
    stop: float = DEFAULT_VD_GRID[1]
    points: int = DEFAULT_VD_GRID[2]
    reduction: str = "none"

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigError(f"sweep.variable must be one of {SWEEP_VARIABLES}")
        if self.reduction not in REDUCTIONS:
            raise ConfigError(f"sweep.reduction must be one of {REDUCTIONS}")
        if self.points < 1:
            raise ConfigError("sweep.points must be >= 1")
        if self.start > self.stop:
            raise ConfigError("sweep.start must not exceed sweep.stop")

    def grid(self) -> list[float]:
        if self.points == 1:
            return [self.start]
        return list(np.linspace(self.start, self.stop, self.points))


@dataclass(frozen=True)
class ExperimentSpec:
    """One fully resolved run: device, transistor, cases, sweep, output."""

    name: str
    device: DeviceParams
    fet: FetParams
    sweep: SweepSpec = field(default_factory=SweepSpec)
    cases: tuple[MeasurementCase, ...] = ALL_CASES
    output_dir: Path = Path("out")


def _parse_float(section: str, key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key} = {raw!r} is not a number") from exc


def _parse_bool(section: str, key: str, raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"[{section}] {key} = {raw!r} is not a boolean")


def spec_from_mapping(mapping: dict[str, dict[str, str]], name: str = "run") -> ExperimentSpec:
    """Build and validate an :class:`ExperimentSpec` from a section mapping.

    The mapping uses the config-file section/key names with string values;
    this is also the format echoed into every manifest.
    """
    for section, keys in mapping.items():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        for key in keys:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")

    dev = dict(mapping.get("device", {}))
    leads = dict(mapping.get("leads", {}))
    has_delta = "delta_eV" in dev
    has_field = "b_tesla" in dev
    if has_delta == has_field:
        raise ConfigError(
            "exactly one of device.delta_eV and device.b_tesla must be given")
    if has_field:
        delta = zeeman_from_field(_parse_float("device", "b_tesla", dev["b_tesla"]))
    else:
        delta = _parse_float("device", "delta_eV", dev["delta_eV"])

    def need(section: str, table: dict[str, str], key: str) -> str:
        if key not in table:
            raise ConfigError(f"missing key {key!r} in section [{section}]")
        return table[key]

    try:
        device = DeviceParams(
            e1=_parse_float("device", "e1_eV", need("device", dev, "e1_eV")),
            e2_0=_parse_float("device", "e2_0_eV", need("device", dev, "e2_0_eV")),
            w12=_parse_float("device", "w12_eV", need("device", dev, "w12_eV")),
            w23=_parse_float("device", "w23_eV", need("device", dev, "w23_eV")),
            delta=delta,
            delta_broadening=_parse_float(
                "device", "delta_broadening_eV", dev.get("delta_broadening_eV", "1e-9")),
            ef=_parse_float("leads", "ef_eV", need("leads", leads, "ef_eV")),
            gamma_l=_parse_float("leads", "gamma_l_eV", need("leads", leads, "gamma_l_eV")),
            gamma_r=_parse_float("leads", "gamma_r_eV", need("leads", leads, "gamma_r_eV")),
            temperature=_parse_float(
                "leads", "temperature_K", need("leads", leads, "temperature_K")),
        )
    except ValueError as exc:
        raise ConfigError(f"device invariant violated: {exc}") from exc

    fet_map = dict(mapping.get("fet", {}))
    enabled = _parse_bool("fet", "enabled", fet_map.get("enabled", "false"))
    if enabled:
        try:
            fet = FetParams(
                gate_length=_parse_float("fet", "length_m", need("fet", fet_map, "length_m")),
                gate_width=_parse_float("fet", "width_m", need("fet", fet_map, "width_m")),
                mobility=_parse_float(
                    "fet", "mobility_m2_per_Vs", need("fet", fet_map, "mobility_m2_per_Vs")),
                eot=_parse_float("fet", "eot_m", need("fet", fet_map, "eot_m")),
                permittivity=_parse_float(
                    "fet", "epsilon_F_per_m", need("fet", fet_map, "epsilon_F_per_m")),
                overdrive=_parse_float(
                    "fet", "overdrive_V", need("fet", fet_map, "overdrive_V")),
            )
        except ValueError as exc:
            raise ConfigError(f"fet invariant violated: {exc}") from exc
    else:
        fet = FetParams.disabled()

    sweep_map = dict(mapping.get("sweep", {}))
    sweep = SweepSpec(
        variable=sweep_map.get("variable", "v_d"),
        start=_parse_float("sweep", "start", sweep_map.get("start", str(DEFAULT_VD_GRID[0]))),
        stop=_parse_float("sweep", "stop", sweep_map.get("stop", str(DEFAULT_VD_GRID[1]))),
        points=int(_parse_float("sweep", "points", sweep_map.get("points", str(DEFAULT_VD_GRID[2])))),
        reduction=sweep_map.get("reduction", "none"),
    )
    out_dir = Path(mapping.get("output", {}).get("dir", "out"))
    return ExperimentSpec(name=name, device=device, fet=fet, sweep=sweep,
                          output_dir=out_dir)


def spec_to_mapping(spec: ExperimentSpec) -> dict[str, dict[str, str]]:
    """Echo a spec back into the config section/key format (fully resolved)."""
    d, f, s = spec.device, spec.fet, spec.sweep
    mapping = {
        "device": {
            "e1_eV": repr(d.e1),
            "e2_0_eV": repr(d.e2_0),
            "w12_eV": repr(d.w12),
            "w23_eV": repr(d.w23),
            "delta_eV": repr(d.delta),
            "delta_broadening_eV": repr(d.delta_broadening),
        },
        "leads": {
            "ef_eV": repr(d.ef),
            "gamma_l_eV": repr(d.gamma_l),
            "gamma_r_eV": repr(d.gamma_r),
            "temperature_K": repr(d.temperature),
        },
        "fet": {"enabled": "true" if f.enabled else "false"},
        "sweep": {
            "variable": s.variable,
            "start": repr(s.start),
            "stop": repr(s.stop),
            "points": str(s.points),
            "reduction": s.reduction,
        },
        "output": {"dir": str(spec.output_dir)},
    }
    if f.enabled:
        mapping["fet"].update({
            "length_m": repr(f.gate_length),
            "width_m": repr(f.gate_width),
            "mobility_m2_per_Vs": repr(f.mobility),
            "eot_m": repr(f.eot),
            "epsilon_F_per_m": repr(f.permittivity),
            "overdrive_V": repr(f.overdrive),
        })
    return mapping


def parse_config_file(path: str | os.PathLike) -> dict[str, dict[str, str]]:
    """Parse a config file into its raw section mapping (syntax only).

    Schema and invariant validation happen in :func:`spec_from_mapping`,
    after any command-line overrides have been merged in.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keys are case-sensitive (unit suffixes)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        # configparser errors carry line numbers in their message
        raise ConfigError(f"config parse error in {path}: {exc}") from exc
    return {s: dict(parser.items(s)) for s in parser.sections()}


def load_config(path: str | os.PathLike) -> ExperimentSpec:
    """Parse and validate a config file; any problem raises ConfigError."""
    path = Path(path)
    return spec_from_mapping(parse_config_file(path), name=path.stem)


def merge_overrides(mapping: dict[str, dict[str, str]],
                    overrides: Sequence[str]) -> dict[str, dict[str, str]]:
    """Merge ``section.key=value`` items into a raw section mapping.

    Returns a new mapping (inputs untouched); unknown keys raise
    ConfigError.  Setting one of the two Zeeman-splitting keys displaces
    the other so an override can switch representation.
    """
    merged = {section: dict(keys) for section, keys in mapping.items()}
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form section.key=value")
        dotted, value = item.split("=", 1)
        if "." not in dotted:
            raise ConfigError(f"override key {dotted!r} is not of the form section.key")
        section, key = dotted.split(".", 1)
        if section not in _SCHEMA or key not in _SCHEMA[section]:
            raise ConfigError(f"unknown override key {dotted!r}")
        merged.setdefault(section, {})[key] = value
        if section == "device" and key == "delta_eV":
            merged["device"].pop("b_tesla", None)
        if section == "device" and key == "b_tesla":
            merged["device"].pop("delta_eV", None)
    return merged


def apply_overrides(spec: ExperimentSpec, overrides: Sequence[str]) -> ExperimentSpec:
    """Apply ``section.key=value`` overrides on top of a loaded spec.

    Returns a new spec (the input is untouched).  The provenance of the
    overridden keys is the caller's to record (the manifest writer does).
    """
    return spec_from_mapping(merge_overrides(spec_to_mapping(spec), overrides),
                             name=spec.name)


# --------------------------------------------------------------------------
# figure presets


def _fig_device(w: float = 2e-4, delta: float = 1.6e-4, temperature: float = 0.1,
                ) -> DeviceParams:
    """Base device of the I-V figures: levels 0.1 and 0.2 meV above E_F."""
    return DeviceParams(
        e1=1.2e-3, e2_0=1.1e-3, w12=w, w23=w, delta=delta,
        ef=1.0e-3, gamma_l=2e-6, gamma_r=2e-6, temperature=temperature,
    )


@dataclass(frozen=True)
class _FigurePlan:
    device: DeviceParams
    fet: FetParams
    families: tuple[str, ...]  # subset of {iv, circuit, metrics_fixed, metrics_region}


def _figure_plan(figure_id: str) -> _FigurePlan:
    fet1 = FetParams.long_channel(gate_length=1e-6)
    fet10 = FetParams.long_channel(gate_length=1e-5)
    plans = {
        "fig3": _FigurePlan(_fig_device(), FetParams.disabled(), ("iv",)),
        "fig4a": _FigurePlan(_fig_device(w=2e-4), fet1, ("circuit",)),
        "fig4b": _FigurePlan(_fig_device(w=5e-5), fet1, ("circuit",)),
        "fig5a": _FigurePlan(_fig_device(w=2e-4), fet1, ("metrics_region",)),
        "fig5b": _FigurePlan(_fig_device(w=5e-5), fet1, ("metrics_region",)),
        "fig6": _FigurePlan(_fig_device(), fet1, ("metrics_fixed",)),
        "fig7a": _FigurePlan(_fig_device(), fet1, ("circuit",)),
        "fig7b": _FigurePlan(_fig_device(), fet10, ("circuit",)),
        "fig8": _FigurePlan(_fig_device(temperature=0.2), fet1,
                            ("circuit", "metrics_fixed")),
        "fig9": _FigurePlan(_fig_device(), fet10, ("circuit", "metrics_fixed")),
    }
    if figure_id not in plans:
        raise ConfigError(f"unknown figure id {figure_id!r}; choose from {FIGURE_IDS}")
    return plans[figure_id]


# --------------------------------------------------------------------------
# CSV + manifest writing


def _fmt(x: float) -> str:
    """Scientific notation, 9 significant digits (fixed width payload)."""
    if math.isinf(x):
        return "inf"
    return f"{x:.8e}"


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(cell if isinstance(cell, str) else _fmt(cell)
                              for cell in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _iv_rows(case: MeasurementCase, pts: list[IvPoint]) -> list[list]:
    return [
        [case.label, p.v_d, p.i_up, p.i_down, p.i_total, p.quad_error]
        for p in pts
    ]


def _circuit_rows(case: MeasurementCase, sols: list[CircuitSolution],
                  params: DeviceParams) -> list[list]:
    from .device import SpinChannel
    from .transport import spin_current

    rows = []
    for s in sols:
        up = spin_current(s.v_out, SpinChannel.UP, case, params)
        dn = spin_current(s.v_out, SpinChannel.DOWN, case, params)
        rows.append([
            case.label, s.v_d, up.value, dn.value, up.value + dn.value,
            up.estimated_quadrature_error + dn.estimated_quadrature_error,
            s.v_out, s.v_ds, s.residual,
        ])
    return rows


def _metrics_rows(records: list[MetricsRecord]) -> list[list]:
    return [
        [r.case.label, r.v_d, r.delta if r.delta is not None else float("nan"),
         r.delta_i, r.mean_current, r.shot_noise, r.t_meas, r.t_dec, r.count]
        for r in records
    ]


def _iv_case(args):
    case, device, grid = args
    return case, iv_curve(case, device, grid)


def _family_files(
    name: str,
    family: str,
    device: DeviceParams,
    fet: FetParams,
    out_dir: Path,
    vd_grid: Sequence[float],
    delta_grid: Sequence[float],
    cases: Sequence[MeasurementCase],
    workers: int,
    errors: list[dict],
) -> list[Path]:
    """Compute one curve family and write its CSV."""
    written: list[Path] = []
    if family == "iv":
        path = out_dir / f"{name}_iv.csv"
        rows: list[list] = []
        jobs = [(case, device, list(vd_grid)) for case in cases]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
                results = list(pool.map(_iv_case, jobs))
        else:
            results = [_iv_case(j) for j in jobs]
        for case, pts in results:
            rows.extend(_iv_rows(case, pts))
        _write_csv(path, IV_HEADER, rows)
        written.append(path)
    elif family == "circuit":
        path = out_dir / f"{name}_circuit.csv"
        rows = []
        for case in cases:
            try:
                sols = vout_curve(case, device, fet, vd_grid)
            except SweepError as exc:
                errors.append({"family": family, "case": case.label,
                               "error": str(exc)})
                sols = exc.partial
            rows.extend(_circuit_rows(case, sols, device))
        _write_csv(path, CIRCUIT_HEADER, rows)
        written.append(path)
    elif family == "metrics_fixed":
        path = out_dir / f"{name}_metrics.csv"
        records = metrics_sweep(
            [c for c in cases if c is not MeasurementCase.REFERENCE],
            device, fet, METRICS_OPERATING_BIAS, delta_grid, reduction="none")
        _write_csv(path, METRICS_HEADER, _metrics_rows(records))
        written.append(path)
    elif family == "metrics_region":
        path = out_dir / f"{name}_metrics_region.csv"
        window = list(np.linspace(*FIG5_VD_WINDOW_GRID))
        records = metrics_sweep(
            [c for c in cases if c is not MeasurementCase.REFERENCE],
            device, fet, METRICS_OPERATING_BIAS, delta_grid,
            reduction="max_over_vd", vd_grid=window)
        _write_csv(path, METRICS_HEADER, _metrics_rows(records))
        written.append(path)
    else:
        raise ConfigError(f"unknown curve family {family!r}")
    return written


def _write_manifest(
    out_dir: Path,
    name: str,
    spec_mapping: dict,
    grids: dict,
    files: list[Path],
    errors: list[dict],
    wall_clock_s: float,
    overrides: Sequence[str] = (),
    figure_id: str | None = None,
    family_by_file: dict[str, str] | None = None,
) -> Path:
    manifest = {
        "name": name,
        "figure_id": figure_id,
        "tool_version": __version__,
        "created_utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "wall_clock_s": round(wall_clock_s, 3),
        "config_echo": spec_mapping,
        "overrides": list(overrides),
        "grids": grids,
        "assumptions": [
            "delta axis for metrics figures spans [0.05, 0.4] meV (36 points)",
            "low-bias reduction window is (0, 0.5] mV on a 25 point grid",
            "metrics operating bias is 2.225 mV unless swept",
        ],
        "files": [
            {
                "name": p.name,
                "sha256": _sha256(p),
                "family": (family_by_file or {}).get(p.name, ""),
            }
            for p in files
        ],
        "status": "partial" if errors else "ok",
        "errors": errors,
    }
    path = out_dir / f"{name}_manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return path


def run_figure(
    figure_id: str,
    output_dir: str | os.PathLike,
    workers: int = 1,
    points_override: int | None = None,
) -> list[Path]:
    """Reproduce one preset figure; returns the written file paths.

    ``points_override`` thins the bias/delta grids for quick previews while
    keeping every physical parameter at its preset value.
    """
    plan = _figure_plan(figure_id)
    out_dir = Path(output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    n_vd = points_override or DEFAULT_VD_GRID[2]
    n_delta = points_override or DEFAULT_DELTA_GRID[2]
    vd_grid = list(np.linspace(DEFAULT_VD_GRID[0], DEFAULT_VD_GRID[1], n_vd))
    delta_grid = list(np.linspace(DEFAULT_DELTA_GRID[0], DEFAULT_DELTA_GRID[1], n_delta))

    t0 = time.perf_counter()
    errors: list[dict] = []
    files: list[Path] = []
    family_by_file: dict[str, str] = {}
    for family in plan.families:
        paths = _family_files(
            figure_id, family, plan.device, plan.fet, out_dir,
            vd_grid, delta_grid, ALL_CASES, workers, errors)
        files.extend(paths)
        for p in paths:
            family_by_file[p.name] = family

    spec = ExperimentSpec(name=figure_id, device=plan.device, fet=plan.fet,
                          output_dir=out_dir)
    manifest = _write_manifest(
        out_dir, figure_id, spec_to_mapping(spec),
        grids={"v_d_V": [vd_grid[0], vd_grid[-1], len(vd_grid)],
               "delta_eV": [delta_grid[0], delta_grid[-1], len(delta_grid)]},
        files=files, errors=errors, wall_clock_s=time.perf_counter() - t0,
        figure_id=figure_id, family_by_file=family_by_file,
    )
    return files + [manifest]


def run_sweep(
    spec: ExperimentSpec,
    workers: int = 1,
    overrides: Sequence[str] = (),
) -> list[Path]:
    """Run the sweep declared by a spec; returns the written file paths.

    ``v_d`` sweeps produce one I-V (or circuit) family over the grid;
    ``delta`` sweeps produce one metrics family; ``temperature`` and
    ``gate_length`` sweeps fan out into one family per grid value.
    """
    out_dir = spec.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    errors: list[dict] = []
    files: list[Path] = []
    family_by_file: dict[str, str] = {}
    grid = spec.sweep.grid()
    delta_grid = list(np.linspace(*DEFAULT_DELTA_GRID))

    def emit(name: str, family: str, device: DeviceParams, fet: FetParams,
             vd_grid: Sequence[float], dgrid: Sequence[float]):
        paths = _family_files(name, family, device, fet, out_dir, vd_grid,
                              dgrid, spec.cases, workers, errors)
        files.extend(paths)
        for p in paths:
            family_by_file[p.name] = family

    base_family = "circuit" if spec.fet.enabled else "iv"
    if spec.sweep.variable == "v_d":
        emit(spec.name, base_family, spec.device, spec.fet, grid, delta_grid)
    elif spec.sweep.variable == "delta":
        family = "metrics_region" if spec.sweep.reduction == "max_over_vd" else "metrics_fixed"
        emit(spec.name, family, spec.device, spec.fet, [], grid)
    elif spec.sweep.variable == "temperature":
        vd_grid = list(np.linspace(*DEFAULT_VD_GRID))
        for t in grid:
            device = spec.device.with_(temperature=float(t))
            emit(f"{spec.name}_T{t:g}", base_family, device, spec.fet,
                 vd_grid, delta_grid)
    elif spec.sweep.variable == "gate_length":
        if not spec.fet.enabled:
            raise ConfigError("gate_length sweep requires an enabled fet")
        vd_grid = list(np.linspace(*DEFAULT_VD_GRID))
        for length in grid:
            fet = replace(spec.fet, gate_length=float(length))
            emit(f"{spec.name}_L{length:g}", "circuit", spec.device, fet,
                 vd_grid, delta_grid)

    manifest = _write_manifest(
        out_dir, spec.name, spec_to_mapping(spec),
        grids={"sweep": [spec.sweep.variable, spec.sweep.start, spec.sweep.stop,
                         spec.sweep.points]},
        files=files, errors=errors, wall_clock_s=time.perf_counter() - t0,
        overrides=overrides, family_by_file=family_by_file,
    )
    return files + [manifest]
