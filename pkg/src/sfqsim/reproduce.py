"""Canonical result suite: recompute the headline numbers and check them.

Every checkable claim the toolkit is built around is encoded here as a
criterion with a pinned tolerance, evaluated from freshly computed data. The
CLI ``reproduce`` subcommand writes the underlying tables (CSV/SVG) alongside
a pass/fail report; the acceptance test module runs the same criteria through
pytest. Reports are deterministic for a fixed seed (wall time lives only in
the manifest).

``trials_scale`` shrinks the Monte Carlo trial counts for quick smoke runs;
criteria results are only meaningful at the default scale of 1.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from .dynamics import (
    GateSpec,
    PAULI_EIGENSTATES,
    avg_fidelity,
    compose_gate,
    delta_pulse_unitary_2lvl,
    free_evolution_2lvl,
    gaussian_pulse_unitary,
    ideal_gate_unitary,
    leakage_population,
    pauli_avg_fidelity,
    rect_pulse_unitary,
    unitarity_defect,
)
from .errors import (
    error_vs_eta_sweep,
    error_vs_n_sweep,
    first_crossing_below,
    jitter_fidelity_external,
    jitter_fidelity_internal,
    leakage_p2_analytic,
    lower_envelope,
    monte_carlo_jitter,
    rect_pulse_error_analytic,
)
from .oscillator import (
    classical_train_energy_numeric,
    coherent_amplitude,
    train_energy_closed_form,
)
from .params import CavityParams, QubitParams, gaussian_correction
from .pulses import (
    DeltaPulse,
    GaussianPulse,
    JitterModel,
    PulseTrain,
    pointer_protocol,
    resonant_train,
)

TWO_PI = 2.0 * math.pi

# Canonical circuit: 5 GHz cavity and qubit, 4.8 GHz second transition,
# 1 pF / 1 fF capacitances, 0.2 ps timing jitter.
F0 = 5e9
F21 = 4.8e9
OMEGA0 = TWO_PI * F0
OMEGA21 = TWO_PI * F21
CAV = CavityParams(omega0=OMEGA0, C=1e-12, Cc=1e-15)
QUBIT = QubitParams(omega10=OMEGA0, omega21=OMEGA21)
SIGMA = 0.2e-12
MC_TRIALS = 10_000

# Pinned expectations.
PHOTON_NUMBER_REF = 6.4e-4          # single-pulse excitation, quoted to 2 digits
PHOTON_NUMBER_RTOL = 0.02
BUILDUP_MIN_PHOTONS = 0.98          # 40 resonant pulses reach one excitation
BUILDUP_DURATION_S = 8e-9
GAUSS_CORRECTION_REF = 2.4671e-4    # exact 1 - exp(-(w0*tau)^2), quoted as 0.02%
GAUSS_CORRECTION_RTOL = 0.10
INTERNAL_ERROR_QUOTED = 6.6e-4      # internal-clock MC mean at the canonical point
INTERNAL_ERROR_CLOSED = 6.5797e-4   # n (w sigma)^2 / 6
INTERNAL_ERROR_RTOL = 0.10
AXIS_MATCH_MIN_FRACTION = 0.90      # per-axis MC vs closed forms, 3 SE each
SLOPE_EXT_MAX_FRACTION = 0.20       # |slope| * n_max below this fraction of mean
SLOPE_INT_RTOL = 0.10               # internal slope vs (w sigma)^2 / 6
CROSSING_HALF = (80.0, 120.0)       # pi/2 error crosses 1e-3 in this n window
CROSSING_PI = (240.0, 360.0)        # pi error window
CROSSING_LEVEL = 1e-3
P2_AGREEMENT_RTOL = 0.10
ETA_PERIOD_REF = 0.01
ETA_PERIOD_RTOL = 0.30
ETA_MIN_WINDOW = (0.4, 0.6)
RECT_ERROR_RTOL = 0.05
GAUSS_N2_FACTOR = 1.5
GAUSS_PLATEAU_MAX = 1e-4
UNITARITY_TOL = 1e-9
CLASSICAL_ORACLE_RTOL = 1e-6
FIDELITY_IDENTITY_TOL = 1e-12
DARK_ALPHA_FLOOR = 1e-10


@dataclass
class CriterionResult:
    cid: int
    title: str
    passed: bool
    observed: dict[str, Any]
    expected: str

    def __post_init__(self) -> None:
        self.passed = bool(self.passed)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        obs = ", ".join(f"{k}={_fmt(v)}" for k, v in self.observed.items())
        return f"[{status}] {self.cid:2d} {self.title}: {obs} (expected {self.expected})"


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


@dataclass
class ReproduceReport:
    results: list[CriterionResult]
    tables: dict[str, dict[str, np.ndarray]] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def summary_text(self) -> str:
        lines = [r.line() for r in self.results]
        n_pass = sum(r.passed for r in self.results)
        lines.append(f"{n_pass}/{len(self.results)} criteria passed")
        return "\n".join(lines)


class _Suite:
    """Computes shared data lazily so criteria can be run individually."""

    def __init__(self, seed: int = 1, trials_scale: float = 1.0):
        self.seed = seed
        self.trials = max(100, int(round(MC_TRIALS * trials_scale)))
        self._cache: dict[str, Any] = {}

    def _get(self, key: str, build: Callable[[], Any]) -> Any:
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    # ---------------------------------------------------------- shared data

    def headline_numbers(self) -> dict[str, np.ndarray]:
        def build():
            single = coherent_amplitude(CAV, resonant_train(OMEGA0, 1)).photons
            buildup = float(self.buildup()["photons"][-1])
            duration = resonant_train(OMEGA0, 40).duration
            correction = 1.0 - gaussian_correction(OMEGA0, 0.5e-12)
            proto = pointer_protocol(OMEGA0, TWO_PI * 2.5e6)
            names = [
                "single_pulse_photons",
                "photons_after_40_pulses",
                "drive_duration_40_pulses_s",
                "gaussian_energy_correction_0p5ps",
                "pointer_pulse_count",
                "pointer_rounding_residue",
            ]
            values = [single, buildup, duration, correction, float(proto.n), proto.residue]
            return {"quantity": np.array(names, dtype=object), "value": np.array(values)}
        return self._get("headline_numbers", build)

    def buildup(self) -> dict[str, np.ndarray]:
        def build():
            full = resonant_train(OMEGA0, 40)
            photons = np.array([
                coherent_amplitude(CAV, PulseTrain(full.arrival_times[: k + 1], full.period)).photons
                for k in range(40)
            ])
            closed = np.array([
                train_energy_closed_form(CAV, full.period, k + 1) for k in range(40)
            ])
            return {"k": np.arange(1, 41, dtype=float), "photons": photons, "closed_form_energy_j": closed}
        return self._get("buildup", build)

    def jitter_vs_sigma(self) -> dict[str, np.ndarray]:
        def build():
            sigmas = np.array([0.05, 0.1, 0.2, 0.4, 0.8]) * 1e-12
            gate = GateSpec(math.pi / 2, 100)
            rows = {k: [] for k in ("sigma", "mc_error", "mc_std_error", "closed_form_error")}
            for i, sig in enumerate(sigmas):
                jm = JitterModel("internal", float(sig), seed=self.seed + 10 + i)
                mc = monte_carlo_jitter(gate, jm, QUBIT, self.trials)
                rows["sigma"].append(float(sig))
                rows["mc_error"].append(mc.mean_error)
                rows["mc_std_error"].append(mc.std_error)
                rows["closed_form_error"].append(
                    1.0 - jitter_fidelity_internal(math.pi / 2, 100, OMEGA0, float(sig)).f_avg
                )
            return {k: np.asarray(v) for k, v in rows.items()}
        return self._get("jitter_vs_sigma", build)

    def canonical_internal_mc(self):
        def build():
            jm = JitterModel("internal", SIGMA, seed=self.seed)
            return monte_carlo_jitter(GateSpec(math.pi / 2, 100), jm, QUBIT, self.trials)
        return self._get("canonical_internal_mc", build)

    def jitter_vs_theta(self) -> dict[str, dict[str, np.ndarray]]:
        def build():
            thetas = np.array([(k + 1) * math.pi / 8 for k in range(16)])
            out: dict[str, dict[str, np.ndarray]] = {}
            for mode, predict in (
                ("external", jitter_fidelity_external),
                ("internal", jitter_fidelity_internal),
            ):
                rows = {k: [] for k in (
                    "theta",
                    "mc_err_x", "mc_err_y", "mc_err_z",
                    "mc_se_x", "mc_se_y", "mc_se_z",
                    "pred_err_x", "pred_err_y", "pred_err_z",
                )}
                for i, theta in enumerate(thetas):
                    jm = JitterModel(mode, SIGMA, seed=self.seed + 1000 + i)
                    mc = monte_carlo_jitter(GateSpec(float(theta), 100), jm, QUBIT, self.trials)
                    pred = predict(float(theta), 100, OMEGA0, SIGMA)
                    rows["theta"].append(float(theta))
                    for ax in "xyz":
                        rows[f"mc_err_{ax}"].append(mc.per_axis[ax])
                        rows[f"mc_se_{ax}"].append(mc.per_axis_std_error[ax])
                        rows[f"pred_err_{ax}"].append(1.0 - pred.per_axis()[ax])
                out[mode] = {k: np.asarray(v) for k, v in rows.items()}
            return out
        return self._get("jitter_vs_theta", build)

    def jitter_vs_n(self) -> dict[str, dict[str, np.ndarray]]:
        def build():
            ns = [25, 50, 100, 200, 400]
            out: dict[str, dict[str, np.ndarray]] = {}
            for mode in ("external", "internal"):
                rows = {k: [] for k in ("n", "mc_error", "mc_std_error")}
                for i, n in enumerate(ns):
                    jm = JitterModel(mode, SIGMA, seed=self.seed + 2000 + i)
                    mc = monte_carlo_jitter(GateSpec(math.pi / 2, n), jm, QUBIT, self.trials)
                    rows["n"].append(float(n))
                    rows["mc_error"].append(mc.mean_error)
                    rows["mc_std_error"].append(mc.std_error)
                out[mode] = {k: np.asarray(v) for k, v in rows.items()}
            return out
        return self._get("jitter_vs_n", build)

    def leakage_vs_n(self, theta: float) -> dict[str, np.ndarray]:
        key = f"leakage_vs_n_{theta:.6f}"
        return self._get(key, lambda: error_vs_n_sweep(theta, range(10, 501), QUBIT))

    def leakage_vs_eta(self) -> dict[str, np.ndarray]:
        def build():
            etas = np.arange(0.005, 0.6 + 1e-12, 0.002)
            return error_vs_eta_sweep(math.pi / 2, 100, etas, OMEGA0)
        return self._get("leakage_vs_eta", build)

    def pulse_width(self) -> dict[str, np.ndarray]:
        def build():
            tau = 4e-12
            tc_gauss = 5 * tau
            theta = math.pi / 2
            ns = np.array([1, 2, 3, 5, 8, 12, 20, 30, 50, 80, 100, 150, 200, 300])
            rows = {k: [] for k in ("n", "gauss_single_error", "gauss_gate_error", "rect_single_error_analytic")}
            for n in ns:
                dth = theta / n
                wrapped = (
                    free_evolution_2lvl(tc_gauss, OMEGA0)
                    @ delta_pulse_unitary_2lvl(dth)
                    @ free_evolution_2lvl(tc_gauss, OMEGA0)
                )
                u1 = gaussian_pulse_unitary(dth, tau, QUBIT, dim=2)
                single = 1.0 - avg_fidelity(wrapped, u1)
                train = resonant_train(OMEGA0, int(n))
                gate = compose_gate(GateSpec(theta, int(n)), train, GaussianPulse(tau=tau), 2, QUBIT)
                rows["n"].append(float(n))
                rows["gauss_single_error"].append(single)
                rows["gauss_gate_error"].append(1.0 - avg_fidelity(ideal_gate_unitary(theta), gate))
                with warnings.catch_warnings():
                    # the small-n rows evaluate the fourth-order model outside
                    # its regime on purpose, for the comparison curve
                    warnings.simplefilter("ignore")
                    rows["rect_single_error_analytic"].append(
                        rect_pulse_error_analytic(dth, math.sqrt(3.0) * tau, OMEGA0)
                    )
            return {k: np.asarray(v) for k, v in rows.items()}
        return self._get("pulse_width", build)

    # ---------------------------------------------------------- criteria

    def criterion_1(self) -> CriterionResult:
        photons = coherent_amplitude(CAV, resonant_train(OMEGA0, 1)).photons
        passed = abs(photons - PHOTON_NUMBER_REF) <= PHOTON_NUMBER_RTOL * PHOTON_NUMBER_REF
        return CriterionResult(
            1, "single-pulse cavity excitation", passed,
            {"photons": photons},
            f"{PHOTON_NUMBER_REF} +/- {PHOTON_NUMBER_RTOL:.0%}",
        )

    def criterion_2(self) -> CriterionResult:
        table = self.buildup()
        train = resonant_train(OMEGA0, 40)
        photons = float(table["photons"][-1])
        duration = train.duration
        passed = photons >= BUILDUP_MIN_PHOTONS and abs(duration - BUILDUP_DURATION_S) <= 1e-12 * BUILDUP_DURATION_S
        return CriterionResult(
            2, "resonant build-up over 40 pulses", passed,
            {"photons": photons, "duration_s": duration},
            f">= {BUILDUP_MIN_PHOTONS} photons in exactly {BUILDUP_DURATION_S:.0e} s",
        )

    def criterion_3(self) -> CriterionResult:
        corr = 1.0 - gaussian_correction(OMEGA0, 0.5e-12)
        passed = abs(corr - GAUSS_CORRECTION_REF) <= GAUSS_CORRECTION_RTOL * GAUSS_CORRECTION_REF
        return CriterionResult(
            3, "Gaussian-pulse energy correction at 0.5 ps", passed,
            {"correction": corr},
            f"{GAUSS_CORRECTION_REF:.4e} +/- {GAUSS_CORRECTION_RTOL:.0%} (quoted as 0.02%)",
        )

    def criterion_4(self) -> CriterionResult:
        mc = self.canonical_internal_mc()
        within_3se = abs(mc.mean_error - INTERNAL_ERROR_QUOTED) <= 3.0 * mc.std_error
        within_rtol = abs(mc.mean_error - INTERNAL_ERROR_CLOSED) <= INTERNAL_ERROR_RTOL * INTERNAL_ERROR_CLOSED
        return CriterionResult(
            4, "internal-clock jitter Monte Carlo at 0.2 ps", within_3se and within_rtol,
            {"mc_error": mc.mean_error, "std_error": mc.std_error},
            f"within 3 SE of {INTERNAL_ERROR_QUOTED} and {INTERNAL_ERROR_RTOL:.0%} of {INTERNAL_ERROR_CLOSED}",
        )

    def criterion_5(self) -> CriterionResult:
        data = self.jitter_vs_theta()
        total = 0
        matched = 0
        for mode in ("external", "internal"):
            rows = data[mode]
            for ax in "xyz":
                obs = rows[f"mc_err_{ax}"]
                se = rows[f"mc_se_{ax}"]
                exp = rows[f"pred_err_{ax}"]
                ok = np.abs(obs - exp) <= 3.0 * se
                total += ok.size
                matched += int(ok.sum())
        fraction = matched / total
        return CriterionResult(
            5, "per-axis jitter curves vs closed forms", fraction >= AXIS_MATCH_MIN_FRACTION,
            {"matched": matched, "total": total, "fraction": fraction},
            f">= {AXIS_MATCH_MIN_FRACTION:.0%} within 3 SE",
        )

    def criterion_6(self) -> CriterionResult:
        data = self.jitter_vs_n()
        ext = data["external"]
        slope_ext = float(np.polyfit(ext["n"], ext["mc_error"], 1)[0])
        ext_ok = abs(slope_ext) * ext["n"].max() <= SLOPE_EXT_MAX_FRACTION * float(ext["mc_error"].mean())
        internal = data["internal"]
        slope_int = float(np.polyfit(internal["n"], internal["mc_error"], 1)[0])
        coef = (OMEGA0 * SIGMA) ** 2 / 6.0
        int_ok = abs(slope_int - coef) <= SLOPE_INT_RTOL * coef
        return CriterionResult(
            6, "jitter scaling with pulse count", ext_ok and int_ok,
            {"external_slope": slope_ext, "internal_slope": slope_int, "internal_slope_ref": coef},
            f"external flat; internal within {SLOPE_INT_RTOL:.0%} of (w*sigma)^2/6",
        )

    @staticmethod
    def _envelope_crossing(table: dict[str, np.ndarray]) -> float | None:
        xs, ys = lower_envelope(table["n"], table["gate_error"])
        if xs.size < 2:
            xs, ys = table["n"], table["gate_error"]
        return first_crossing_below(xs, ys, CROSSING_LEVEL)

    def criterion_7(self) -> CriterionResult:
        cross_half = self._envelope_crossing(self.leakage_vs_n(math.pi / 2))
        cross_pi = self._envelope_crossing(self.leakage_vs_n(math.pi))
        ok_half = cross_half is not None and CROSSING_HALF[0] <= cross_half <= CROSSING_HALF[1]
        ok_pi = cross_pi is not None and CROSSING_PI[0] <= cross_pi <= CROSSING_PI[1]
        return CriterionResult(
            7, "leakage-limited 1e-3 crossings", ok_half and ok_pi,
            {"half_turn_crossing": cross_half, "full_turn_crossing": cross_pi},
            f"pi/2 in {CROSSING_HALF}, pi in {CROSSING_PI}",
        )

    def criterion_8(self) -> CriterionResult:
        eta = QUBIT.eta
        worst = 0.0
        details: dict[str, Any] = {}
        for n in (10, 30, 100, 300):
            train = resonant_train(OMEGA0, n)
            u = compose_gate(GateSpec(math.pi / 2, n), train, DeltaPulse(), 3, QUBIT)
            for j in (0, 1):
                numeric = leakage_population(u, j)
                analytic = leakage_p2_analytic(math.pi / 2, n, eta, j)
                rel = abs(numeric - analytic) / max(numeric, analytic)
                details[f"rel_n{n}_j{j}"] = rel
                worst = max(worst, rel)
        return CriterionResult(
            8, "closed-form leakage vs numeric", worst <= P2_AGREEMENT_RTOL,
            {"worst_rel": worst, **details},
            f"all within {P2_AGREEMENT_RTOL:.0%}",
        )

    def criterion_9(self) -> CriterionResult:
        table = self.leakage_vs_eta()
        etas = table["eta"]
        err = table["gate_error"]
        eta_min = float(etas[np.argmin(err)])
        min_ok = ETA_MIN_WINDOW[0] <= eta_min <= ETA_MIN_WINDOW[1]
        # Steep initial drop: error falls by over 10x between eta ~ 1/(2n) and 4/n.
        e_small = float(err[np.argmin(np.abs(etas - 0.005))])
        e_mid = float(err[np.argmin(np.abs(etas - 0.04))])
        drop_ok = e_small / e_mid > 10.0
        # Oscillation period from local-maxima spacing in the mid range.
        is_max = (err[1:-1] > err[:-2]) & (err[1:-1] > err[2:])
        xm = etas[1:-1][is_max]
        xm = xm[(xm >= 0.05) & (xm <= 0.35)]
        period = float(np.diff(xm).mean()) if xm.size >= 3 else math.nan
        period_ok = abs(period - ETA_PERIOD_REF) <= ETA_PERIOD_RTOL * ETA_PERIOD_REF
        return CriterionResult(
            9, "anharmonicity sweep structure", min_ok and drop_ok and period_ok,
            {"eta_at_min": eta_min, "drop_factor": e_small / e_mid, "oscillation_period": period},
            f"min in {ETA_MIN_WINDOW}, steep drop, period {ETA_PERIOD_REF} +/- {ETA_PERIOD_RTOL:.0%}",
        )

    def criterion_10(self) -> CriterionResult:
        dth = math.pi / 200
        tc = 3.5e-12
        wrapped = (
            free_evolution_2lvl(tc, OMEGA0)
            @ delta_pulse_unitary_2lvl(dth)
            @ free_evolution_2lvl(tc, OMEGA0)
        )
        rect_numeric = 1.0 - avg_fidelity(wrapped, rect_pulse_unitary(dth, tc, OMEGA0))
        rect_analytic = rect_pulse_error_analytic(dth, tc, OMEGA0)
        rect_ok = abs(rect_numeric - rect_analytic) <= RECT_ERROR_RTOL * rect_analytic

        table = self.pulse_width()
        idx100 = int(np.argmin(np.abs(table["n"] - 100)))
        gate_err = float(table["gauss_gate_error"][idx100])
        n2_single = 100.0**2 * float(table["gauss_single_error"][idx100])
        ratio = gate_err / n2_single
        n2_ok = 1.0 / GAUSS_N2_FACTOR <= ratio <= GAUSS_N2_FACTOR
        plateau = table["gauss_gate_error"][table["n"] >= 100]
        plateau_ok = bool(np.all(plateau < GAUSS_PLATEAU_MAX))
        return CriterionResult(
            10, "finite-pulse-width errors", rect_ok and n2_ok and plateau_ok,
            {
                "rect_numeric": rect_numeric, "rect_analytic": rect_analytic,
                "gate_to_n2_ratio": ratio, "plateau_max": float(plateau.max()),
            },
            f"rect within {RECT_ERROR_RTOL:.0%}; gate = n^2 x single within x{GAUSS_N2_FACTOR}; plateau < {GAUSS_PLATEAU_MAX}",
        )

    def criterion_11(self) -> CriterionResult:
        checks: dict[str, Any] = {}

        # Unitarity through a 10^4-factor product (5000 pulses + 5000 gaps).
        n_big = 5000
        train = resonant_train(OMEGA0, n_big)
        u_big = compose_gate(GateSpec(math.pi / 2, n_big), train, DeltaPulse(), 3, QUBIT)
        checks["unitarity_defect"] = unitarity_defect(u_big)
        unit_ok = checks["unitarity_defect"] < UNITARITY_TOL

        # Norm preservation for all Pauli eigenstates through the same gate.
        u2 = compose_gate(GateSpec(math.pi / 2, n_big), train, DeltaPulse(), 2, QUBIT)
        norms = [abs(np.linalg.norm(u2 @ vec) - 1.0) for _, vec in PAULI_EIGENSTATES]
        checks["norm_defect"] = max(norms)
        norm_ok = checks["norm_defect"] < 1e-10

        # Closed-form train energy vs direct time-domain integration.
        tau = 2e-13
        worst = 0.0
        t_res = TWO_PI / OMEGA0
        for period, n in ((t_res, 20), (t_res * 1.013, 8)):
            e_num = classical_train_energy_numeric(CAV, period, n, tau=tau)
            e_ref = train_energy_closed_form(CAV, period, n) * gaussian_correction(OMEGA0, tau)
            worst = max(worst, abs(e_num - e_ref) / e_ref)
        checks["classical_oracle_rel"] = worst
        oracle_ok = worst < CLASSICAL_ORACLE_RTOL

        # Trace-formula fidelity equals the six-state average on random pairs.
        rng = np.random.default_rng(self.seed)
        worst_fid = 0.0
        for _ in range(100):
            pair = []
            for _ in range(2):
                z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
                qmat, r = np.linalg.qr(z)
                pair.append(qmat * (np.diag(r) / np.abs(np.diag(r))))
            worst_fid = max(worst_fid, abs(avg_fidelity(pair[0], pair[1]) - pauli_avg_fidelity(pair[0], pair[1])))
        checks["fidelity_identity_dev"] = worst_fid
        fid_ok = worst_fid < FIDELITY_IDENTITY_TOL

        # Dark pointer state returns to vacuum (exact-integer pulse count).
        chi = OMEGA0 / 999.0
        proto = pointer_protocol(OMEGA0, chi)
        dark_cav = CavityParams(omega0=OMEGA0 - chi, C=CAV.C, Cc=CAV.Cc)
        train_p = PulseTrain(np.arange(proto.n) * proto.period, proto.period)
        alpha_dark = abs(coherent_amplitude(dark_cav, train_p).alpha)
        alpha_one = abs(coherent_amplitude(dark_cav, PulseTrain([0.0], proto.period)).alpha)
        checks["dark_alpha_norm"] = alpha_dark / (proto.n * alpha_one)
        dark_ok = checks["dark_alpha_norm"] < DARK_ALPHA_FLOOR

        passed = unit_ok and norm_ok and oracle_ok and fid_ok and dark_ok
        return CriterionResult(
            11, "property suite", passed, checks,
            f"unitarity < {UNITARITY_TOL}, oracle < {CLASSICAL_ORACLE_RTOL}, "
            f"fidelity identity < {FIDELITY_IDENTITY_TOL}, dark alpha < {DARK_ALPHA_FLOOR}",
        )

    def run_criterion(self, cid: int) -> CriterionResult:
        return getattr(self, f"criterion_{cid}")()

    def all_criteria(self) -> list[CriterionResult]:
        return [self.run_criterion(cid) for cid in range(1, 12)]


CRITERION_IDS = tuple(range(1, 12))


def evaluate_criterion(cid: int, seed: int = 1, trials_scale: float = 1.0, suite: _Suite | None = None) -> CriterionResult:
    suite = suite or _Suite(seed=seed, trials_scale=trials_scale)
    return suite.run_criterion(cid)


def run_all(
    out_dir: Path | None = None,
    seed: int = 1,
    formats: tuple[str, ...] = ("csv", "svg"),
    trials_scale: float = 1.0,
) -> ReproduceReport:
    """Evaluate every criterion; optionally write tables, charts and the report."""
    suite = _Suite(seed=seed, trials_scale=trials_scale)
    start = time.perf_counter()
    results = suite.all_criteria()

    tables: dict[str, dict[str, np.ndarray]] = {
        "headline_numbers": suite.headline_numbers(),
        "cavity_buildup": suite.buildup(),
        "jitter_error_vs_sigma": suite.jitter_vs_sigma(),
        "jitter_error_vs_theta_external": suite.jitter_vs_theta()["external"],
        "jitter_error_vs_theta_internal": suite.jitter_vs_theta()["internal"],
        "jitter_error_vs_n_external": suite.jitter_vs_n()["external"],
        "jitter_error_vs_n_internal": suite.jitter_vs_n()["internal"],
        "leakage_error_vs_n_half_turn": suite.leakage_vs_n(math.pi / 2),
        "leakage_error_vs_n_full_turn": suite.leakage_vs_n(math.pi),
        "leakage_error_vs_eta": suite.leakage_vs_eta(),
        "pulse_width_error_vs_n": suite.pulse_width(),
    }
    report = ReproduceReport(results, tables)

    if out_dir is not None:
        from .cli import write_csv, write_manifest
        from .plotting import ChartSpec, render_chart

        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        charts = {
            "cavity_buildup": ChartSpec("k", ("photons",), "pulses", "photons", "cavity buildup", yscale="log"),
            "jitter_error_vs_sigma": ChartSpec(
                "sigma", ("mc_error", "closed_form_error"), "sigma (s)", "gate error",
                "internal-clock jitter error vs sigma", xscale="log", yscale="log",
                labels=("Monte Carlo", "closed form"),
            ),
            "jitter_error_vs_theta_external": ChartSpec(
                "theta", ("mc_err_x", "mc_err_y", "mc_err_z", "pred_err_x", "pred_err_y", "pred_err_z"),
                "rotation angle (rad)", "state error", "external clock: per-axis jitter error", yscale="log",
            ),
            "jitter_error_vs_theta_internal": ChartSpec(
                "theta", ("mc_err_x", "mc_err_y", "mc_err_z", "pred_err_x", "pred_err_y", "pred_err_z"),
                "rotation angle (rad)", "state error", "internal clock: per-axis jitter error", yscale="log",
            ),
            "jitter_error_vs_n_external": ChartSpec(
                "n", ("mc_error",), "pulse count", "gate error", "external clock: error vs n",
                xscale="log", yscale="log",
            ),
            "jitter_error_vs_n_internal": ChartSpec(
                "n", ("mc_error",), "pulse count", "gate error", "internal clock: error vs n",
                xscale="log", yscale="log",
            ),
            "leakage_error_vs_n_half_turn": ChartSpec(
                "n", ("gate_error", "p2_from_ground", "p2_from_excited"), "pulse count", "error",
                "half-turn gate: leakage-limited error", xscale="log", yscale="log",
            ),
            "leakage_error_vs_n_full_turn": ChartSpec(
                "n", ("gate_error", "p2_from_ground", "p2_from_excited"), "pulse count", "error",
                "full-turn gate: leakage-limited error", xscale="log", yscale="log",
            ),
            "leakage_error_vs_eta": ChartSpec(
                "eta", ("gate_error", "p2_from_ground", "p2_from_excited"), "anharmonicity", "error",
                "gate error vs anharmonicity", yscale="log",
            ),
            "pulse_width_error_vs_n": ChartSpec(
                "n", ("rect_single_error_analytic", "gauss_single_error", "gauss_gate_error"),
                "pulse count", "error", "finite-width pulse errors", xscale="log", yscale="log",
            ),
        }
        outputs: list[str] = []
        for name, table in tables.items():
            if "csv" in formats:
                write_csv(out_dir / f"{name}.csv", {k: list(v) for k, v in table.items()})
                outputs.append(f"{name}.csv")
            if "svg" in formats and name in charts:
                render_chart(out_dir / f"{name}.svg", table, charts[name])
                outputs.append(f"{name}.svg")

        report_lines = report.summary_text() + "\n"
        (out_dir / "report.txt").write_text(report_lines)
        import json

        (out_dir / "report.json").write_text(
            json.dumps(
                [
                    {
                        "id": r.cid,
                        "title": r.title,
                        "passed": bool(r.passed),
                        "observed": {
                            k: (None if v is None else float(v) if isinstance(v, (int, float, np.integer, np.floating)) else str(v))
                            for k, v in r.observed.items()
                        },
                        "expected": r.expected,
                    }
                    for r in results
                ],
                indent=2,
            )
            + "\n"
        )
        outputs.extend(["report.txt", "report.json"])
        wall = time.perf_counter() - start
        cfg = {"seed": seed, "format": formats, "trials_scale": trials_scale, "out": str(out_dir)}
        write_manifest(out_dir / "manifest.json", "reproduce", cfg, {"all_passed": bool(report.all_passed)}, outputs, wall)

    return report
