"""Experiment runner CLI: delimited tables plus SVG charts per experiment.

Each subcommand runs one experiment and writes ``<experiment>.csv``,
``<experiment>.svg`` (per ``--format``) and ``manifest.json`` into the output
directory. Parameters come from flags or a flat JSON config file
(``--config``); flags override the file. Frequencies are taken in Hz and
converted to angular frequencies internally; rotation angles accept literal
multiples of pi (``pi/2``, ``pi``, ``3pi/2``) as well as plain radians.

Exit codes: 0 success, 2 configuration error, 3 numerical or validation
error, 4 canonical-suite failure (``reproduce`` only).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import __version__
from .dynamics import (
    DEFAULT_GAUSS_STEPS,
    GateSpec,
    avg_fidelity,
    compose_gate,
    delta_pulse_unitary_2lvl,
    free_evolution_2lvl,
    gaussian_pulse_unitary,
    ideal_gate_unitary,
    rect_pulse_unitary,
    unitarity_defect,
)
from .errors import (
    error_vs_eta_sweep,
    error_vs_n_sweep,
    jitter_fidelity_external,
    jitter_fidelity_internal,
    monte_carlo_jitter,
    rect_pulse_error_analytic,
)
from .oscillator import coherent_amplitude, train_energy_closed_form
from .params import CavityParams, PhysConst, QubitParams
from .plotting import ChartSpec, render_chart
from .pulses import (
    DeltaPulse,
    GaussianPulse,
    JitterModel,
    PulseTrain,
    RectangularPulse,
    pointer_protocol,
    resonant_train,
)

TWO_PI = 2.0 * math.pi


class ConfigError(ValueError):
    """Bad experiment configuration: unknown key, unparsable or missing value."""


# ---------------------------------------------------------------- value parsing

_ANGLE_RE = re.compile(r"^\s*(\d+(?:\.\d*)?)?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$", re.IGNORECASE)


def parse_angle(value: Any) -> float:
    """Angle in radians from a float or a pi-literal like 'pi/2' or '3pi/2'."""
    if isinstance(value, (int, float)):
        return float(value)
    text = str(value)
    m = _ANGLE_RE.match(text)
    if m:
        num = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        if den == 0:
            raise ConfigError(f"zero denominator in angle {text!r}")
        return num * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"cannot parse angle {text!r} (use radians or e.g. 'pi/2')") from None


def parse_float(value: Any) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"cannot parse number {value!r}") from None


def parse_int(value: Any) -> int:
    try:
        out = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"cannot parse integer {value!r}") from None
    return out


def parse_seed(value: Any) -> int:
    out = parse_int(value)
    if not 0 <= out < 2**64:
        raise ConfigError(f"seed must fit in an unsigned 64-bit integer, got {out}")
    return out


def _parse_sequence(value: Any, scalar: Callable[[Any], float]) -> list[float]:
    """Comma list or 'start:stop:step' range; a bare scalar gives a 1-list."""
    if isinstance(value, (list, tuple)):
        return [scalar(v) for v in value]
    text = str(value)
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"range syntax is start:stop:step, got {text!r}")
        start, stop, step = (scalar(p) for p in parts)
        if step <= 0 or stop < start:
            raise ConfigError(f"bad range {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(count)]
    return [scalar(p) for p in text.split(",") if p.strip() != ""]


def parse_int_list(value: Any) -> list[int]:
    return [int(round(v)) for v in _parse_sequence(value, parse_float)]


def parse_float_list(value: Any) -> list[float]:
    return _parse_sequence(value, parse_float)


def parse_angle_list(value: Any) -> list[float]:
    if isinstance(value, (list, tuple)):
        return [parse_angle(v) for v in value]
    text = str(value)
    if ":" not in text:
        return [parse_angle(p) for p in text.split(",") if p.strip() != ""]
    return _parse_sequence(value, parse_float)


def parse_mode(value: Any) -> str:
    text = str(value).lower()
    if text not in ("external", "internal"):
        raise ConfigError(f"mode must be 'external' or 'internal', got {value!r}")
    return text


def parse_shape_name(value: Any) -> str:
    text = str(value).lower()
    if text not in ("delta", "rect", "gauss"):
        raise ConfigError(f"shape must be 'delta', 'rect' or 'gauss', got {value!r}")
    return text


def parse_formats(value: Any) -> tuple[str, ...]:
    if isinstance(value, (list, tuple)):
        items = [str(v).lower() for v in value]
    else:
        items = [p.strip().lower() for p in str(value).split(",") if p.strip()]
    bad = set(items) - {"csv", "svg"}
    if bad or not items:
        raise ConfigError(f"formats must be a subset of csv,svg; got {value!r}")
    return tuple(dict.fromkeys(items))


# ---------------------------------------------------------------- experiments

@dataclass(frozen=True)
class Param:
    name: str
    parse: Callable[[Any], Any]
    default: Any
    help: str


@dataclass(frozen=True)
class ExperimentResult:
    columns: dict[str, list]
    chart: ChartSpec | None
    results: dict[str, Any]


GLOBAL_PARAMS = (
    Param("out", str, None, "output directory (default sfqsim-out/<experiment>)"),
    Param("seed", parse_seed, 1, "base RNG seed (unsigned 64-bit)"),
    Param("format", parse_formats, ("csv", "svg"), "comma list out of: csv,svg"),
)


def _qubit(cfg: dict, three_level: bool = False) -> QubitParams:
    omega21 = TWO_PI * cfg["f21"] if three_level else None
    return QubitParams(omega10=TWO_PI * cfg["f10"], omega21=omega21)


def run_oscillator(cfg: dict) -> ExperimentResult:
    cav = CavityParams(omega0=TWO_PI * cfg["f0"], C=cfg["c"], Cc=cfg["cc"])
    const = PhysConst()
    n = cfg["n"]
    full = resonant_train(cav.omega0, n, cfg["cycles"])
    cols: dict[str, list] = {k: [] for k in ("k", "alpha_re", "alpha_im", "photons", "energy_j", "closed_form_energy_j")}
    for k in range(1, n + 1):
        sub = PulseTrain(full.arrival_times[:k], full.period)
        state = coherent_amplitude(cav, sub, const)
        cols["k"].append(k)
        cols["alpha_re"].append(state.alpha.real)
        cols["alpha_im"].append(state.alpha.imag)
        cols["photons"].append(state.photons)
        cols["energy_j"].append(state.energy(const))
        cols["closed_form_energy_j"].append(train_energy_closed_form(cav, full.period, k, const))
    chart = ChartSpec(
        x="k", ys=("photons",), xlabel="pulses", ylabel="mean photon number",
        title=f"cavity buildup, f0={cfg['f0']:.3g} Hz", yscale="log",
    )
    return ExperimentResult(cols, chart, {"final_photons": cols["photons"][-1], "duration_s": full.duration})


def run_pointer(cfg: dict) -> ExperimentResult:
    omega0 = TWO_PI * cfg["f0"]
    chi = TWO_PI * cfg["chi"]
    proto = pointer_protocol(omega0, chi)
    const = PhysConst()
    cav_bright = CavityParams(omega0=omega0 + chi, C=cfg["c"], Cc=cfg["cc"])
    cav_dark = CavityParams(omega0=omega0 - chi, C=cfg["c"], Cc=cfg["cc"])
    full = PulseTrain(np.arange(proto.n) * proto.period, proto.period)
    cols: dict[str, list] = {k: [] for k in ("k", "photons_bright", "photons_dark")}
    for k in range(1, proto.n + 1):
        sub = PulseTrain(full.arrival_times[:k], proto.period)
        cols["k"].append(k)
        cols["photons_bright"].append(coherent_amplitude(cav_bright, sub, const).photons)
        cols["photons_dark"].append(coherent_amplitude(cav_dark, sub, const).photons)
    contrast = cols["photons_bright"][-1] / max(cols["photons_dark"][-1], 1e-300)
    chart = ChartSpec(
        x="k", ys=("photons_bright", "photons_dark"), xlabel="pulses",
        ylabel="mean photon number", title="bright/dark pointer-state preparation", yscale="log",
    )
    return ExperimentResult(
        cols, chart,
        {"period_s": proto.period, "n": proto.n, "rounding_residue": proto.residue, "contrast": contrast},
    )


def _shape_from_cfg(cfg: dict):
    name = cfg["shape"]
    if name == "delta":
        return DeltaPulse()
    if name == "rect":
        return RectangularPulse(half_width=cfg["tc"])
    return GaussianPulse(tau=cfg["tau"], cutoff=cfg["cutoff"])


def run_gate2(cfg: dict) -> ExperimentResult:
    q = _qubit(cfg)
    shape = _shape_from_cfg(cfg)
    u_id = ideal_gate_unitary(cfg["theta"], 2)
    cols: dict[str, list] = {k: [] for k in ("n", "delta_theta", "gate_error", "unitarity_defect")}
    for n in cfg["n"]:
        train = resonant_train(q.omega10, n)
        u = compose_gate(GateSpec(cfg["theta"], n), train, shape, 2, q, gauss_steps=cfg["steps"])
        cols["n"].append(n)
        cols["delta_theta"].append(cfg["theta"] / n)
        cols["gate_error"].append(1.0 - avg_fidelity(u_id, u))
        cols["unitarity_defect"].append(unitarity_defect(u))
    chart = ChartSpec(
        x="n", ys=("gate_error",), xlabel="pulse count n", ylabel="gate error",
        title="two-level gate error", xscale="log", yscale="log",
    )
    return ExperimentResult(cols, chart, {})


def run_gate3(cfg: dict) -> ExperimentResult:
    q = _qubit(cfg, three_level=True)
    table = error_vs_n_sweep(cfg["theta"], cfg["n"], q)
    cols = {k: list(v) for k, v in table.items()}
    chart = ChartSpec(
        x="n", ys=("gate_error", "p2_from_ground", "p2_from_excited"),
        xlabel="pulse count n", ylabel="error", title="three-level gate error and leakage",
        xscale="log", yscale="log",
    )
    return ExperimentResult(cols, chart, {})


def run_jitter_mc(cfg: dict) -> ExperimentResult:
    q = _qubit(cfg)
    theta, n = cfg["theta"], cfg["n"]
    predict = jitter_fidelity_internal if cfg["mode"] == "internal" else jitter_fidelity_external
    cols: dict[str, list] = {
        k: []
        for k in (
            "sigma", "trials", "mean_error", "std_error",
            "err_x", "err_y", "err_z", "se_x", "se_y", "se_z",
            "predicted_error", "nonmonotonic_fraction",
        )
    }
    for sigma in cfg["sigma"]:
        jm = JitterModel(cfg["mode"], sigma, seed=cfg["seed"], jtl_factor=cfg["jtl_factor"])
        mc = monte_carlo_jitter(GateSpec(theta, n), jm, q, cfg["trials"])
        cols["sigma"].append(sigma)
        cols["trials"].append(cfg["trials"])
        cols["mean_error"].append(mc.mean_error)
        cols["std_error"].append(mc.std_error)
        for ax in "xyz":
            cols[f"err_{ax}"].append(mc.per_axis[ax])
            cols[f"se_{ax}"].append(mc.per_axis_std_error[ax])
        cols["predicted_error"].append(1.0 - predict(theta, n, q.omega10, sigma).f_avg)
        cols["nonmonotonic_fraction"].append(mc.nonmonotonic_fraction)
    chart = ChartSpec(
        x="sigma", ys=("mean_error", "predicted_error"), xlabel="timing jitter sigma (s)",
        ylabel="average gate error", title=f"jitter Monte Carlo, {cfg['mode']} clock",
        xscale="log", yscale="log", labels=("Monte Carlo", "closed form"),
    )
    return ExperimentResult(cols, chart, {"mode": cfg["mode"], "theta": theta, "n": n})


def run_jitter_analytic(cfg: dict) -> ExperimentResult:
    q = _qubit(cfg)
    predict = jitter_fidelity_internal if cfg["mode"] == "internal" else jitter_fidelity_external
    cols: dict[str, list] = {k: [] for k in ("theta", "err_x", "err_y", "err_z", "avg_error")}
    for theta in cfg["theta"]:
        pred = predict(theta, cfg["n"], q.omega10, cfg["sigma"])
        cols["theta"].append(theta)
        cols["err_x"].append(1.0 - pred.f_x)
        cols["err_y"].append(1.0 - pred.f_y)
        cols["err_z"].append(1.0 - pred.f_z)
        cols["avg_error"].append(1.0 - pred.f_avg)
    chart = ChartSpec(
        x="theta", ys=("err_x", "err_y", "err_z", "avg_error"), xlabel="rotation angle (rad)",
        ylabel="gate error", title=f"closed-form jitter error, {cfg['mode']} clock", yscale="log",
    )
    return ExperimentResult(cols, chart, {"mode": cfg["mode"], "n": cfg["n"], "sigma": cfg["sigma"]})


def run_pulse_width(cfg: dict) -> ExperimentResult:
    q = _qubit(cfg)
    theta = cfg["theta"]
    tau = cfg["tau"]
    tc = cfg["tc"]
    cols: dict[str, list] = {
        k: []
        for k in (
            "n", "delta_theta", "rect_single_error_analytic", "rect_single_error_numeric",
            "gauss_single_error_numeric", "gauss_gate_error", "n2_times_gauss_single",
        )
    }
    for n in cfg["n"]:
        dth = theta / n
        u_id1_rect = (
            free_evolution_2lvl(tc, q.omega10)
            @ delta_pulse_unitary_2lvl(dth)
            @ free_evolution_2lvl(tc, q.omega10)
        )
        rect_num = 1.0 - avg_fidelity(u_id1_rect, rect_pulse_unitary(dth, tc, q.omega10))
        tcg = cfg["cutoff"] * tau
        u_id1_gauss = (
            free_evolution_2lvl(tcg, q.omega10)
            @ delta_pulse_unitary_2lvl(dth)
            @ free_evolution_2lvl(tcg, q.omega10)
        )
        u_gauss = gaussian_pulse_unitary(dth, tau, q, dim=2, cutoff=cfg["cutoff"], steps=cfg["steps"])
        gauss_single = 1.0 - avg_fidelity(u_id1_gauss, u_gauss)
        train = resonant_train(q.omega10, n)
        u_gate = compose_gate(
            GateSpec(theta, n), train, GaussianPulse(tau=tau, cutoff=cfg["cutoff"]), 2, q,
            gauss_steps=cfg["steps"],
        )
        gate_err = 1.0 - avg_fidelity(ideal_gate_unitary(theta, 2), u_gate)
        cols["n"].append(n)
        cols["delta_theta"].append(dth)
        cols["rect_single_error_analytic"].append(rect_pulse_error_analytic(dth, tc, q.omega10))
        cols["rect_single_error_numeric"].append(rect_num)
        cols["gauss_single_error_numeric"].append(gauss_single)
        cols["gauss_gate_error"].append(gate_err)
        cols["n2_times_gauss_single"].append(n * n * gauss_single)
    chart = ChartSpec(
        x="n", ys=("rect_single_error_analytic", "gauss_single_error_numeric", "gauss_gate_error"),
        xlabel="pulse count n", ylabel="error", title="finite-pulse-width gate error",
        xscale="log", yscale="log",
    )
    return ExperimentResult(cols, chart, {})


def run_sweep_n(cfg: dict) -> ExperimentResult:
    q = _qubit(cfg, three_level=True)
    table = error_vs_n_sweep(cfg["theta"], cfg["n"], q)
    cols = {k: list(v) for k, v in table.items()}
    chart = ChartSpec(
        x="n", ys=("gate_error", "p2_from_ground", "p2_from_excited", "p2_pred_ground", "p2_pred_excited"),
        xlabel="pulse count n", ylabel="error", title="gate error and leakage vs pulse count",
        xscale="log", yscale="log",
    )
    return ExperimentResult(cols, chart, {})


def run_sweep_eta(cfg: dict) -> ExperimentResult:
    table = error_vs_eta_sweep(cfg["theta"], cfg["n"], cfg["eta"], TWO_PI * cfg["f10"])
    cols = {k: list(v) for k, v in table.items()}
    chart = ChartSpec(
        x="eta", ys=("gate_error", "p2_from_ground", "p2_from_excited"),
        xlabel="anharmonicity eta", ylabel="error", title="gate error vs qubit anharmonicity",
        yscale="log",
    )
    return ExperimentResult(cols, chart, {})


EXPERIMENTS: dict[str, tuple[tuple[Param, ...], Callable[[dict], ExperimentResult], str]] = {
    "oscillator": (
        (
            Param("f0", parse_float, 5e9, "cavity frequency, Hz"),
            Param("c", parse_float, 1e-12, "cavity capacitance, F"),
            Param("cc", parse_float, 1e-15, "coupling capacitance, F"),
            Param("n", parse_int, 40, "number of pulses"),
            Param("cycles", parse_int, 1, "cavity cycles between pulses"),
        ),
        run_oscillator,
        "resonant cavity excitation by a pulse train",
    ),
    "pointer": (
        (
            Param("f0", parse_float, 5e9, "bare cavity frequency, Hz"),
            Param("chi", parse_float, 2.5e6, "dispersive shift, Hz"),
            Param("c", parse_float, 1e-12, "cavity capacitance, F"),
            Param("cc", parse_float, 1e-15, "coupling capacitance, F"),
        ),
        run_pointer,
        "bright/dark cavity pointer-state protocol",
    ),
    "gate2": (
        (
            Param("theta", parse_angle, math.pi / 2, "target rotation angle"),
            Param("n", parse_int_list, [100], "pulse count(s), comma list or start:stop:step"),
            Param("f10", parse_float, 5e9, "qubit frequency, Hz"),
            Param("shape", parse_shape_name, "delta", "pulse shape: delta, rect or gauss"),
            Param("tc", parse_float, 3.5e-12, "rectangular half-width, s"),
            Param("tau", parse_float, 4e-12, "Gaussian RMS width, s"),
            Param("cutoff", parse_float, 5.0, "Gaussian support cutoff, multiples of tau"),
            Param("steps", parse_int, DEFAULT_GAUSS_STEPS, "Gaussian integrator steps"),
        ),
        run_gate2,
        "two-level gate error",
    ),
    "gate3": (
        (
            Param("theta", parse_angle, math.pi / 2, "target rotation angle"),
            Param("n", parse_int_list, [100], "pulse count(s)"),
            Param("f10", parse_float, 5e9, "0-1 transition frequency, Hz"),
            Param("f21", parse_float, 4.8e9, "1-2 transition frequency, Hz"),
        ),
        run_gate3,
        "three-level gate error and leakage",
    ),
    "jitter-mc": (
        (
            Param("mode", parse_mode, "internal", "clocking mode: external or internal"),
            Param("sigma", parse_float_list, [0.2e-12], "jitter std dev(s), s"),
            Param("n", parse_int, 100, "pulse count"),
            Param("theta", parse_angle, math.pi / 2, "target rotation angle"),
            Param("trials", parse_int, 10_000, "Monte Carlo realizations"),
            Param("f10", parse_float, 5e9, "qubit frequency, Hz"),
            Param("jtl_factor", parse_float, 1.0, "sigma multiplier, e.g. sqrt(line length)"),
        ),
        run_jitter_mc,
        "Monte Carlo timing-jitter gate error",
    ),
    "jitter-analytic": (
        (
            Param("mode", parse_mode, "internal", "clocking mode: external or internal"),
            Param("theta", parse_angle_list, [(k + 1) * math.pi / 8 for k in range(16)], "angle(s)"),
            Param("n", parse_int, 100, "pulse count"),
            Param("sigma", parse_float, 0.2e-12, "jitter std dev, s"),
            Param("f10", parse_float, 5e9, "qubit frequency, Hz"),
        ),
        run_jitter_analytic,
        "closed-form per-axis jitter fidelities",
    ),
    "pulse-width": (
        (
            Param("theta", parse_angle, math.pi / 2, "target rotation angle"),
            Param("n", parse_int_list, [1, 2, 3, 5, 8, 12, 20, 30, 50, 80, 120, 200, 300], "pulse count(s)"),
            Param("f10", parse_float, 5e9, "qubit frequency, Hz"),
            Param("tau", parse_float, 4e-12, "Gaussian RMS width, s"),
            Param("tc", parse_float, 3.5e-12, "rectangular half-width, s"),
            Param("cutoff", parse_float, 5.0, "Gaussian support cutoff"),
            Param("steps", parse_int, DEFAULT_GAUSS_STEPS, "Gaussian integrator steps"),
        ),
        run_pulse_width,
        "finite-pulse-width gate error",
    ),
    "sweep-n": (
        (
            Param("theta", parse_angle, math.pi / 2, "target rotation angle"),
            Param("n", parse_int_list, "10:500:1", "pulse counts, start:stop:step"),
            Param("f10", parse_float, 5e9, "0-1 transition frequency, Hz"),
            Param("f21", parse_float, 4.8e9, "1-2 transition frequency, Hz"),
        ),
        run_sweep_n,
        "three-level error vs pulse count",
    ),
    "sweep-eta": (
        (
            Param("theta", parse_angle, math.pi / 2, "target rotation angle"),
            Param("n", parse_int, 100, "pulse count"),
            Param("eta", parse_float_list, "0.005:0.6:0.002", "anharmonicity grid"),
            Param("f10", parse_float, 5e9, "0-1 transition frequency, Hz"),
        ),
        run_sweep_eta,
        "three-level error vs anharmonicity",
    ),
}


# ---------------------------------------------------------------- config & io

def _load_config_file(path: str) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must hold a flat JSON object")
    return raw


def build_config(experiment: str, cli_values: dict, config_path: str | None) -> dict:
    """Merge defaults, config file and explicit flags; reject unknown keys."""
    params, _, _ = EXPERIMENTS[experiment]
    known = {p.name: p for p in params}
    known.update({p.name: p for p in GLOBAL_PARAMS})

    merged: dict[str, Any] = {name: p.default for name, p in known.items()}
    if config_path:
        file_values = _load_config_file(config_path)
        for key, value in file_values.items():
            norm = key.replace("-", "_")
            if norm == "experiment":
                if str(value) != experiment:
                    raise ConfigError(
                        f"config file is for experiment {value!r} but {experiment!r} was invoked"
                    )
                continue
            if norm not in known:
                raise ConfigError(f"unknown config key {key!r} for experiment {experiment!r}")
            merged[norm] = known[norm].parse(value)
    for key, value in cli_values.items():
        if value is not None:
            merged[key] = known[key].parse(value)
    if merged["out"] is None:
        merged["out"] = str(Path("sfqsim-out") / experiment)
    return merged


def format_cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def write_csv(path: Path, columns: dict[str, list]) -> None:
    names = list(columns)
    rows = zip(*(columns[name] for name in names))
    lines = [",".join(names)]
    lines.extend(",".join(format_cell(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def write_manifest(path: Path, experiment: str, cfg: dict, results: dict, outputs: list[str], wall_time: float) -> None:
    parameters = {
        k: v for k, v in cfg.items() if k not in ("out", "format")
    }
    manifest = {
        "experiment": experiment,
        "parameters": _jsonable(parameters),
        "seed": cfg.get("seed"),
        "versions": {
            "sfqsim": __version__,
            "numpy": np.__version__,
            "python": sys.version.split()[0],
        },
        "wall_time_s": wall_time,
        "results": _jsonable(results),
        "outputs": outputs,
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


def run_experiment(experiment: str, cfg: dict) -> list[str]:
    """Run one experiment and write its artifacts; returns the file list."""
    _, runner, _ = EXPERIMENTS[experiment]
    out_dir = Path(cfg["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    result = runner(cfg)
    outputs: list[str] = []
    if "csv" in cfg["format"]:
        csv_path = out_dir / f"{experiment}.csv"
        write_csv(csv_path, result.columns)
        outputs.append(csv_path.name)
    if "svg" in cfg["format"] and result.chart is not None:
        svg_path = out_dir / f"{experiment}.svg"
        render_chart(svg_path, {k: np.asarray(v) for k, v in result.columns.items()}, result.chart)
        outputs.append(svg_path.name)
    wall = time.perf_counter() - start
    write_manifest(out_dir / "manifest.json", experiment, cfg, result.results, outputs, wall)
    return outputs


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfqsim",
        description="simulate qubit and cavity control by resonant SFQ pulse trains",
    )
    sub = parser.add_subparsers(dest="command")
    flag_aliases = {"c": ("--C", "--c"), "cc": ("--Cc", "--cc")}
    for name, (params, _, help_text) in EXPERIMENTS.items():
        p = sub.add_parser(name, help=help_text)
        for param in params:
            flags = flag_aliases.get(param.name, (f"--{param.name.replace('_', '-')}",))
            p.add_argument(*flags, dest=param.name, default=None, help=param.help)
        for param in GLOBAL_PARAMS:
            p.add_argument(f"--{param.name}", dest=param.name, default=None, help=param.help)
        p.add_argument("--config", default=None, help="flat JSON config file; flags override it")
    rep = sub.add_parser("reproduce", help="run the canonical result suite and check it")
    rep.add_argument("--out", default=None, help="output directory (default sfqsim-out/reproduce)")
    rep.add_argument("--seed", default=None, help="base RNG seed")
    rep.add_argument("--format", default=None, help="comma list out of: csv,svg")
    rep.add_argument("--trials-scale", dest="trials_scale", default=None,
                     help="scale factor on Monte Carlo trial counts (testing hook)")
    return parser


def _run_reproduce(args: argparse.Namespace) -> int:
    from . import reproduce

    out = args.out or str(Path("sfqsim-out") / "reproduce")
    seed = parse_seed(args.seed) if args.seed is not None else 1
    formats = parse_formats(args.format) if args.format is not None else ("csv", "svg")
    scale = parse_float(args.trials_scale) if args.trials_scale is not None else 1.0
    if not 0 < scale <= 1:
        raise ConfigError(f"trials-scale must be in (0, 1], got {scale}")
    report = reproduce.run_all(Path(out), seed=seed, formats=formats, trials_scale=scale)
    print(report.summary_text())
    return 0 if report.all_passed else 4


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        if args.command == "reproduce":
            return _run_reproduce(args)
        params, _, _ = EXPERIMENTS[args.command]
        cli_values = {p.name: getattr(args, p.name) for p in params}
        cli_values.update({p.name: getattr(args, p.name) for p in GLOBAL_PARAMS})
        cfg = build_config(args.command, cli_values, args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        run_experiment(args.command, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
