"""Closed-form gate-error models and the Monte Carlo timing-jitter harness.

The closed forms are leading-order in (omega10 * sigma) and treat per-pulse
sums as integrals, so they hold for omega10*sigma << 1 and moderately large n;
the Monte Carlo harness is exact within statistics and is the cross-check.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .dynamics import (
    GateSpec,
    PAULI_EIGENSTATES,
    compose_gate,
    delta_pulse_unitary_2lvl,
    avg_fidelity,
    ideal_gate_unitary,
    leakage_population,
)
from .params import QubitParams
from .pulses import DeltaPulse, JitterModel, jittered_arrival_times, resonant_train

JITTER_REGIME_LIMIT = 0.1  # omega10 * sigma above this is outside the model's validity


@dataclass(frozen=True)
class JitterFidelityPrediction:
    """Per-axis and averaged gate fidelities for one clocking mode."""

    f_x: float
    f_y: float
    f_z: float
    f_avg: float
    mode: str

    def per_axis(self) -> dict[str, float]:
        return {"x": self.f_x, "y": self.f_y, "z": self.f_z}


@dataclass(frozen=True)
class MCResult:
    """Monte Carlo jitter run: mean state error with statistical uncertainty.

    per_axis holds the mean error for initial states along each Bloch axis
    (the +/- pair averaged); per_axis_std_error the matching standard errors.
    nonmonotonic_fraction flags realizations whose tick order was scrambled by
    jitter (sigma approaching the period); the engine assumes sigma << period
    and evolves the intervals as drawn.
    """

    mean_error: float
    std_error: float
    trials: int
    seed: int
    per_axis: dict[str, float]
    per_axis_std_error: dict[str, float]
    nonmonotonic_fraction: float = 0.0


def _sinc_2theta(theta: float) -> float:
    """sin(2*theta) / (2*theta), continuous through theta = 0."""
    if theta == 0.0:
        return 1.0
    return math.sin(2.0 * theta) / (2.0 * theta)


def _warn_regime(omega10: float, sigma: float) -> None:
    if omega10 * sigma > JITTER_REGIME_LIMIT:
        warnings.warn(
            f"omega10*sigma = {omega10 * sigma:.3g} exceeds {JITTER_REGIME_LIMIT}; "
            "closed-form jitter fidelities assume omega10*sigma << 1",
            stacklevel=3,
        )


def jitter_fidelity_external(theta: float, n: int, omega10: float, sigma: float) -> JitterFidelityPrediction:
    """Closed-form fidelities for pulses clocked from a stable external source.

    Timing errors of consecutive pulses largely cancel, so the error is
    dominated by the endpoints and is asymptotically independent of n.
    """
    _warn_regime(omega10, sigma)
    ws2 = (omega10 * sigma) ** 2
    s = _sinc_2theta(theta)
    t2_8n = theta**2 / (8.0 * n)
    f_z = 1.0 - ws2 * (t2_8n * (1.0 + s) + math.sin(theta) ** 2 / 4.0)
    f_x = 1.0 - ws2 * (t2_8n * (1.0 - s) + math.cos(theta) ** 2 / 4.0)
    f_y = 1.0 - ws2 / 4.0 * (theta**2 / n + 1.0)
    f_avg = 1.0 - ws2 / 6.0 * (theta**2 / n + 1.0)
    return JitterFidelityPrediction(f_x, f_y, f_z, f_avg, "external")


def jitter_fidelity_internal(theta: float, n: int, omega10: float, sigma: float) -> JitterFidelityPrediction:
    """Closed-form fidelities for self-clocked pulses with independent spacings.

    Arrival errors random-walk, so the gate error grows linearly with n.
    """
    _warn_regime(omega10, sigma)
    ws2 = (omega10 * sigma) ** 2
    s = _sinc_2theta(theta)
    f_z = 1.0 - n * ws2 / 8.0 * (1.0 - s)
    f_x = 1.0 - n * ws2 / 8.0 * (1.0 + s)
    f_y = 1.0 - n * ws2 / 4.0
    f_avg = 1.0 - n * ws2 / 6.0
    return JitterFidelityPrediction(f_x, f_y, f_z, f_avg, "internal")


def monte_carlo_jitter(gate: GateSpec, jm: JitterModel, q: QubitParams, trials: int) -> MCResult:
    """Average state error of the delta-pulse gate over jitter realizations.

    The gate occupies n full clock periods: each realization jitters n + 1
    clock ticks (n pulses plus the tick that closes the window), and the
    two-level delta-pulse gate is composed in the clock frame - free
    precession from the frame origin to the first pulse, over the actual
    inter-pulse intervals, and finally to the jittered closing tick, exactly
    as compose_gate with close_time does. The error 1 - |<ideal|actual>|^2 is
    averaged over the six Pauli eigenstates. Trial k draws its offsets from
    the stream keyed by (jm.seed, k), so the result is deterministic and
    independent of execution order; all trials are evolved in lockstep for
    speed.
    """
    if trials < 100:
        raise ValueError(f"need at least 100 trials for meaningful statistics, got {trials}")
    n = gate.n
    tick_train = resonant_train(q.omega10, n + 1)
    ticks = jittered_arrival_times(tick_train, jm, trials)
    # Leading interval from the frame origin, n - 1 inter-pulse gaps, and the
    # closing interval to tick n.
    gaps = np.concatenate([ticks[:, :1], np.diff(ticks, axis=1)], axis=1)
    nonmono = float(np.mean(np.any(gaps[:, 1:] <= 0.0, axis=1)))
    if nonmono > 0.0:
        warnings.warn(
            f"{nonmono:.1%} of realizations have out-of-order pulses (sigma is not << period); "
            "intervals are evolved as drawn",
            stacklevel=2,
        )

    pulse = delta_pulse_unitary_2lvl(gate.delta_theta)
    u = np.tile(np.eye(2, dtype=complex), (trials, 1, 1))
    for k in range(n):
        ph = np.exp(0.5j * q.omega10 * gaps[:, k])
        u[:, 0, :] *= ph[:, None]
        u[:, 1, :] *= ph.conj()[:, None]
        u = np.einsum("ij,tjk->tik", pulse, u)
    ph = np.exp(0.5j * q.omega10 * gaps[:, n])
    u[:, 0, :] *= ph[:, None]
    u[:, 1, :] *= ph.conj()[:, None]

    u_id = delta_pulse_unitary_2lvl(gate.theta)
    per_state = np.empty((trials, len(PAULI_EIGENSTATES)))
    for idx, (_, vec) in enumerate(PAULI_EIGENSTATES):
        target = u_id @ vec
        actual = np.einsum("tij,j->ti", u, vec)
        overlap = np.abs(np.einsum("i,ti->t", target.conj(), actual)) ** 2
        per_state[:, idx] = 1.0 - overlap

    trial_mean = per_state.mean(axis=1)
    mean_error = float(trial_mean.mean())
    std_error = float(trial_mean.std(ddof=1) / math.sqrt(trials))

    per_axis: dict[str, float] = {}
    per_axis_std: dict[str, float] = {}
    for axis, cols in (("x", (0, 1)), ("y", (2, 3)), ("z", (4, 5))):
        axis_err = per_state[:, cols].mean(axis=1)
        per_axis[axis] = float(axis_err.mean())
        per_axis_std[axis] = float(axis_err.std(ddof=1) / math.sqrt(trials))

    return MCResult(mean_error, std_error, trials, jm.seed, per_axis, per_axis_std, nonmono)


def rect_pulse_error_analytic(delta_theta: float, tc: float, omega10: float) -> float:
    """Single-pulse overlap error of a flat pulse of width 2*tc, fourth order.

    (dtheta^4 w^2 tc^2 + dtheta^2 w^4 tc^4 - dtheta^4 w^4 tc^4 / 5) / 216.
    Valid for dtheta << 1 and omega10*tc << 1 (warns outside that regime).
    """
    if delta_theta > 0.5 or omega10 * tc > 0.5:
        warnings.warn(
            "fourth-order pulse-width error model assumes dtheta << 1 and omega10*tc << 1",
            stacklevel=2,
        )
    wt = omega10 * tc
    d2, d4 = delta_theta**2, delta_theta**4
    return (d4 * wt**2 + d2 * wt**4 - d4 * wt**4 / 5.0) / 216.0


def _geometric_ratio(x: float, n: int) -> complex:
    """(1 - e^{i n x}) / (1 - e^{i x}), with the limit n at x = 2*pi*m.

    Evaluated as e^{i (n-1) x / 2} * sin(n x / 2) / sin(x / 2) with the sine
    arguments folded by remainder(), which stays accurate arbitrarily close to
    the removable singularities.
    """
    r = math.remainder(x, 2.0 * math.pi)
    m = round((x - r) / (2.0 * math.pi))
    sign = -1.0 if (m * (n - 1)) % 2 else 1.0
    if r == 0.0:
        mag = float(n)
    else:
        mag = math.sin(0.5 * n * r) / math.sin(0.5 * r)
    return sign * mag * cmath.exp(0.5j * (n - 1) * x)


def leakage_p2_analytic(theta: float, n: int, eta: float, initial_level: int) -> float:
    """First-order closed form for the second-excited-state population.

    P2 = (theta^2 / 8 n^2) * |R(2*pi*eta + dtheta/2) -+ R(2*pi*eta - dtheta/2)|^2
    with R the geometric-sum ratio above (sign set by the initial level) and
    dtheta = theta / n. Removable singularities are evaluated by their limits.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if initial_level not in (0, 1):
        raise ValueError(f"initial_level must be 0 or 1, got {initial_level}")
    dth = theta / n
    x_plus = 2.0 * math.pi * eta + 0.5 * dth
    x_minus = 2.0 * math.pi * eta - 0.5 * dth
    r_plus = _geometric_ratio(x_plus, n)
    r_minus = _geometric_ratio(x_minus, n)
    combo = r_plus - ((-1.0) ** initial_level) * r_minus
    return theta**2 / (8.0 * n**2) * abs(combo) ** 2


def error_vs_n_sweep(theta: float, n_values: Iterable[int], q: QubitParams) -> dict[str, np.ndarray]:
    """Three-level gate error and leakage vs pulse count at fixed target angle.

    Columns: n, gate_error (subspace-averaged), p2_from_ground / p2_from_excited
    (numeric leakage for initial |0> and |1>), p2_pred_* (closed form).
    """
    ns = [int(v) for v in n_values]
    cols = {
        "n": np.array(ns, dtype=float),
        "gate_error": np.empty(len(ns)),
        "p2_from_ground": np.empty(len(ns)),
        "p2_from_excited": np.empty(len(ns)),
        "p2_pred_ground": np.empty(len(ns)),
        "p2_pred_excited": np.empty(len(ns)),
    }
    eta = q.eta  # fails fast if omega21 is missing
    for i, n in enumerate(ns):
        train = resonant_train(q.omega10, n)
        u = compose_gate(GateSpec(theta, n), train, DeltaPulse(), 3, q)
        cols["gate_error"][i] = 1.0 - avg_fidelity(ideal_gate_unitary(theta, 3), u)
        cols["p2_from_ground"][i] = leakage_population(u, 0)
        cols["p2_from_excited"][i] = leakage_population(u, 1)
        cols["p2_pred_ground"][i] = leakage_p2_analytic(theta, n, eta, 0)
        cols["p2_pred_excited"][i] = leakage_p2_analytic(theta, n, eta, 1)
    return cols


def error_vs_eta_sweep(theta: float, n: int, etas: Iterable[float], omega10: float) -> dict[str, np.ndarray]:
    """Three-level gate error and leakage vs anharmonicity at fixed n.

    Same columns as error_vs_n_sweep, keyed by eta; the oscillation period in
    eta is approximately 1/n.
    """
    eta_arr = np.array(list(etas), dtype=float)
    cols = {
        "eta": eta_arr,
        "gate_error": np.empty(eta_arr.size),
        "p2_from_ground": np.empty(eta_arr.size),
        "p2_from_excited": np.empty(eta_arr.size),
        "p2_pred_ground": np.empty(eta_arr.size),
        "p2_pred_excited": np.empty(eta_arr.size),
    }
    train = resonant_train(omega10, n)
    gate = GateSpec(theta, n)
    u_id = ideal_gate_unitary(theta, 3)
    for i, eta in enumerate(eta_arr):
        q = QubitParams(omega10=omega10, omega21=omega10 * (1.0 - eta))
        u = compose_gate(gate, train, DeltaPulse(), 3, q)
        cols["gate_error"][i] = 1.0 - avg_fidelity(u_id, u)
        cols["p2_from_ground"][i] = leakage_population(u, 0)
        cols["p2_from_excited"][i] = leakage_population(u, 1)
        cols["p2_pred_ground"][i] = leakage_p2_analytic(theta, n, eta, 0)
        cols["p2_pred_excited"][i] = leakage_p2_analytic(theta, n, eta, 1)
    return cols


def lower_envelope(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Strict local minima of y(x): the lower envelope of an oscillating curve."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size != y.size or x.size < 3:
        raise ValueError("need matching arrays with at least 3 points")
    interior = (y[1:-1] < y[:-2]) & (y[1:-1] < y[2:])
    idx = np.flatnonzero(interior) + 1
    return x[idx], y[idx]


def first_crossing_below(x: np.ndarray, y: np.ndarray, level: float) -> float | None:
    """First x where y, interpolated log-log between samples, reaches ``level``.

    Returns None when the curve never dips below the level.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    below = y <= level
    if not below.any():
        return None
    i = int(np.argmax(below))
    if i == 0:
        return float(x[0])
    lx0, lx1 = math.log(x[i - 1]), math.log(x[i])
    ly0, ly1 = math.log(y[i - 1]), math.log(y[i])
    frac = (math.log(level) - ly0) / (ly1 - ly0)
    return float(math.exp(lx0 + frac * (lx1 - lx0)))
