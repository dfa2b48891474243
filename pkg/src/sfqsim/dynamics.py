"""Unitary evolution of two- and three-level systems driven by pulse trains.

Conventions, fixed once here:

* Two-level operators are traceless (SU(2)): a pulse rotates by
  exp(+i * dtheta * sigma_y / 2) and free precession is
  exp(+i * omega10 * t * sigma_z / 2). The uniform energy offset is dropped,
  which only removes a global phase.
* Three-level operators evolve under the literal ladder Hamiltonian
  diag(0, w10, w10 + w21) via exp(-i H t / hbar); the pulse generator's sign
  is fixed so its upper 2x2 block reduces to the two-level rotation above.

All fidelity metrics are invariant under these global-phase choices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import QubitParams
from .pulses import DeltaPulse, GaussianPulse, PulseShape, PulseTrain, RectangularPulse

DEFAULT_GAUSS_STEPS = 10_000
MIN_GAUSS_STEPS = 1000

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)

# Ladder drive generator (real, skew-symmetric). Its eigenvalues are 0 and
# +/- i*sqrt(3), so GEN3 @ GEN3 @ GEN3 == -3 * GEN3 and the exponential has a
# closed Rodrigues-type form.
GEN3 = np.array(
    [
        [0.0, 1.0, 0.0],
        [-1.0, 0.0, _SQRT2],
        [0.0, -_SQRT2, 0.0],
    ]
)
GEN3_SQ = GEN3 @ GEN3

PROJECTOR_01 = np.diag([1.0, 1.0, 0.0]).astype(complex)

# Pauli eigenstates along +/- x, y, z: the six-state average behind the
# fidelity metrics and the Monte Carlo error definition.
PAULI_EIGENSTATES: tuple[tuple[str, np.ndarray], ...] = (
    ("+x", np.array([1.0, 1.0], dtype=complex) / _SQRT2),
    ("-x", np.array([1.0, -1.0], dtype=complex) / _SQRT2),
    ("+y", np.array([1.0, 1.0j], dtype=complex) / _SQRT2),
    ("-y", np.array([1.0, -1.0j], dtype=complex) / _SQRT2),
    ("+z", np.array([1.0, 0.0], dtype=complex)),
    ("-z", np.array([0.0, 1.0], dtype=complex)),
)


@dataclass(frozen=True)
class GateSpec:
    """Target rotation: total angle theta about the y-axis, split over n pulses."""

    theta: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")

    @property
    def delta_theta(self) -> float:
        return self.theta / self.n


def _su2_exp(a_y: float, a_z: float) -> np.ndarray:
    """exp(i * (a_y * sigma_y + a_z * sigma_z) / 2) in closed axis-angle form."""
    half = 0.5 * math.hypot(a_y, a_z)
    if half == 0.0:
        return np.eye(2, dtype=complex)
    ny = 0.5 * a_y / half
    nz = 0.5 * a_z / half
    c = math.cos(half)
    s = math.sin(half)
    return np.array(
        [
            [c + 1j * nz * s, ny * s],
            [-ny * s, c - 1j * nz * s],
        ]
    )


def delta_pulse_unitary_2lvl(delta_theta: float) -> np.ndarray:
    """Instantaneous rotation exp(i * dtheta * sigma_y / 2)."""
    c = math.cos(0.5 * delta_theta)
    s = math.sin(0.5 * delta_theta)
    return np.array([[c, s], [-s, c]], dtype=complex)


def free_evolution_2lvl(t: float, omega10: float) -> np.ndarray:
    """Free precession exp(i * omega10 * t * sigma_z / 2); t may be negative."""
    ph = complex(math.cos(0.5 * omega10 * t), math.sin(0.5 * omega10 * t))
    return np.array([[ph, 0.0], [0.0, ph.conjugate()]], dtype=complex)


def rect_pulse_unitary(delta_theta: float, tc: float, omega10: float) -> np.ndarray:
    """Propagator for a flat pulse of width 2*tc riding on the qubit precession.

    Precession in the combined field: exp(i*(2*omega10*tc*sigma_z
    + dtheta*sigma_y)/2). In the tc -> 0 limit this is the delta-pulse rotation.
    """
    if not tc > 0:
        raise ValueError(f"tc must be positive, got {tc}")
    return _su2_exp(a_y=delta_theta, a_z=2.0 * omega10 * tc)


def delta_pulse_unitary_3lvl(delta_theta: float) -> np.ndarray:
    """Instantaneous three-level rotation exp((dtheta/2) * GEN3), real orthogonal.

    Uses the exact spectral form I + sin(sqrt(3)p)/sqrt(3) * G
    + (1-cos(sqrt(3)p))/3 * G^2 with p = dtheta/2.
    """
    p = _SQRT3 * 0.5 * delta_theta
    out = np.eye(3) + (math.sin(p) / _SQRT3) * GEN3 + ((1.0 - math.cos(p)) / 3.0) * GEN3_SQ
    return out.astype(complex)


def free_evolution_3lvl(t: float, q: QubitParams) -> np.ndarray:
    """Ladder free evolution diag(1, e^{-i w10 t}, e^{-i (w10+w21) t})."""
    if q.omega21 is None:
        raise ValueError("three-level evolution needs omega21")
    return np.diag(
        [
            1.0 + 0.0j,
            np.exp(-1j * q.omega10 * t),
            np.exp(-1j * (q.omega10 + q.omega21) * t),
        ]
    )


def _ordered_product(mats: np.ndarray) -> np.ndarray:
    """Time-ordered product mats[-1] @ ... @ mats[0], reduced pairwise."""
    dim = mats.shape[-1]
    while mats.shape[0] > 1:
        if mats.shape[0] % 2:
            mats = np.concatenate([mats, np.eye(dim, dtype=mats.dtype)[None]])
        mats = np.matmul(mats[1::2], mats[0::2])
    return mats[0]


def gaussian_pulse_unitary(
    delta_theta: float,
    tau: float,
    q: QubitParams,
    dim: int = 2,
    cutoff: float = 5.0,
    steps: int = DEFAULT_GAUSS_STEPS,
) -> np.ndarray:
    """Propagator for one Gaussian pulse, integrated over (-cutoff*tau, +cutoff*tau).

    The Schrodinger equation is integrated with midpoint-sampled
    piecewise-constant exponentials on a uniform grid of ``steps`` intervals
    (overridable; halving the default step size moves the result by less than
    1e-10). The drive sign is chosen so the impulsive limit reproduces the
    delta-pulse rotation.

    For dim=2 the step exponentials use the closed SU(2) form; for dim=3 each
    Hermitian step generator is exponentiated by eigendecomposition.
    """
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    if cutoff < 3:
        raise ValueError(f"cutoff must be at least 3, got {cutoff}")
    if steps < MIN_GAUSS_STEPS:
        raise ValueError(f"steps must be >= {MIN_GAUSS_STEPS}, got {steps}")
    if dim not in (2, 3):
        raise ValueError(f"dim must be 2 or 3, got {dim}")

    tc = cutoff * tau
    h = 2.0 * tc / steps
    mid = -tc + (np.arange(steps) + 0.5) * h
    # Per-step rotation weight: dtheta * (Gaussian density) * h.
    weights = delta_theta * h * np.exp(-0.5 * (mid / tau) ** 2) / (math.sqrt(2.0 * math.pi) * tau)

    if dim == 2:
        az = q.omega10 * h
        half = 0.5 * np.hypot(weights, az)
        ny = 0.5 * weights / half
        nz = 0.5 * az / half
        c = np.cos(half)
        s = np.sin(half)
        mats = np.empty((steps, 2, 2), dtype=complex)
        mats[:, 0, 0] = c + 1j * nz * s
        mats[:, 0, 1] = ny * s
        mats[:, 1, 0] = -ny * s
        mats[:, 1, 1] = c - 1j * nz * s
        return _ordered_product(mats)

    if q.omega21 is None:
        raise ValueError("three-level evolution needs omega21")
    ladder = np.diag([0.0, q.omega10, q.omega10 + q.omega21])
    drive = 1j * GEN3  # Hermitian
    exponents = h * ladder[None, :, :] + (0.5 * weights)[:, None, None] * drive[None, :, :]
    evals, evecs = np.linalg.eigh(exponents)
    phases = np.exp(-1j * evals)
    mats = np.einsum("sij,sj,skj->sik", evecs, phases, evecs.conj())
    return _ordered_product(mats)


def compose_gate(
    gate: GateSpec,
    train: PulseTrain,
    shape: PulseShape,
    dim: int,
    q: QubitParams,
    gauss_steps: int = DEFAULT_GAUSS_STEPS,
    close_time: float | None = None,
) -> np.ndarray:
    """Gate unitary for a pulse train acting on a 2- or 3-level system.

    The gate frame starts at time zero (the nominal first-pulse time): a
    jittered first pulse precesses freely from the frame origin to its actual
    arrival, and delta pulses then alternate with free evolution over the
    actual inter-pulse intervals. By default the gate ends at the final pulse.
    For a continuously clocked train the window instead closes at the next
    clock tick; passing that tick's time as ``close_time`` appends the
    corresponding free evolution (delta pulses only - the jitter Monte Carlo
    relies on this so that endpoint timing errors carry the full rotation
    angle, as the closed-form fidelities assume). For nominal trains the
    leading interval is zero and a nominal close_time adds one resonant
    period, which no fidelity metric can see. Arrival times are sorted first,
    so strongly jittered trains are evolved in physical order.

    Finite-width shapes follow the per-pulse frame convention
    U_f(gap - t_support) @ U_pulse @ U_f(-t_support), where U_pulse covers the
    pulse's full support starting from the identity and the negative-duration
    factor is frame bookkeeping; the nominal period closes the final block.
    Rectangular pulses are two-level only.
    """
    if train.n != gate.n:
        raise ValueError(f"train has {train.n} pulses but the gate expects {gate.n}")
    if dim not in (2, 3):
        raise ValueError(f"dim must be 2 or 3, got {dim}")
    if close_time is not None and not isinstance(shape, DeltaPulse):
        raise ValueError("close_time is only meaningful for delta-pulse trains")

    dth = gate.delta_theta
    times = np.sort(train.arrival_times)
    gaps = np.diff(times)

    if dim == 2:
        def free(t: float) -> np.ndarray:
            return free_evolution_2lvl(t, q.omega10)
    else:
        def free(t: float) -> np.ndarray:
            return free_evolution_3lvl(t, q)

    lead = float(times[0])

    if isinstance(shape, DeltaPulse):
        pulse = delta_pulse_unitary_2lvl(dth) if dim == 2 else delta_pulse_unitary_3lvl(dth)
        u = pulse @ free(lead) if lead != 0.0 else pulse.copy()
        for gap in gaps:
            u = pulse @ free(gap) @ u
        if close_time is not None:
            u = free(close_time - float(times[-1])) @ u
        return u

    if isinstance(shape, RectangularPulse):
        if dim != 2:
            raise ValueError("rectangular pulses are implemented for dim=2 only")
        pulse = rect_pulse_unitary(dth, shape.half_width, q.omega10)
    elif isinstance(shape, GaussianPulse):
        pulse = gaussian_pulse_unitary(dth, shape.tau, q, dim=dim, cutoff=shape.cutoff, steps=gauss_steps)
    else:
        raise TypeError(f"unsupported pulse shape: {shape!r}")

    tc = shape.half_support
    back = free(-tc)
    u = free(lead) if lead != 0.0 else np.eye(dim, dtype=complex)
    for gap in np.append(gaps, train.period):
        u = free(gap - tc) @ pulse @ back @ u
    return u


def ideal_gate_unitary(theta: float, dim: int = 2) -> np.ndarray:
    """Target y-rotation; for dim=3, embedded with the leakage level untouched."""
    u = delta_pulse_unitary_2lvl(theta)
    if dim == 2:
        return u
    if dim != 3:
        raise ValueError(f"dim must be 2 or 3, got {dim}")
    out = np.eye(3, dtype=complex)
    out[:2, :2] = u
    return out


def unitarity_defect(u: np.ndarray) -> float:
    """max |U^dag U - I|, the working measure of numerical unitarity."""
    dim = u.shape[0]
    return float(np.max(np.abs(u.conj().T @ u - np.eye(dim))))


def _require_unitary(u: np.ndarray, tol: float = 1e-6) -> None:
    defect = unitarity_defect(u)
    if defect > tol:
        raise ValueError(f"matrix is not unitary within {tol} (defect {defect:.3e})")


def avg_fidelity(u_id: np.ndarray, u_g: np.ndarray) -> float:
    """State-averaged gate fidelity.

    Two-level: (2 + |Tr(U_id^dag U_G)|^2) / 6. Three-level gates are scored on
    the qubit subspace with the projector P onto levels {0, 1}:
    (Tr{U_G^dag P U_G P} + |Tr{P U_id^dag U_G}|^2) / 6. A 2x2 ideal gate is
    embedded automatically when the actual gate is 3x3.
    """
    u_g = np.asarray(u_g)
    dim = u_g.shape[0]
    if u_g.shape != (dim, dim) or dim not in (2, 3):
        raise ValueError(f"u_g must be 2x2 or 3x3, got shape {u_g.shape}")
    u_id = np.asarray(u_id)
    if dim == 3 and u_id.shape == (2, 2):
        embedded = np.eye(3, dtype=complex)
        embedded[:2, :2] = u_id
        u_id = embedded
    if u_id.shape != u_g.shape:
        raise ValueError(f"shape mismatch: {u_id.shape} vs {u_g.shape}")
    _require_unitary(u_id)
    _require_unitary(u_g)

    if dim == 2:
        tr = np.trace(u_id.conj().T @ u_g)
        return float((2.0 + abs(tr) ** 2) / 6.0)

    p = PROJECTOR_01
    t1 = np.trace(u_g.conj().T @ p @ u_g @ p).real
    t2 = abs(np.trace(p @ u_id.conj().T @ u_g)) ** 2
    return float((t1 + t2) / 6.0)


def pauli_avg_fidelity(u_id: np.ndarray, u_g: np.ndarray) -> float:
    """Gate fidelity averaged over the six Pauli eigenstates (two-level only).

    (1/6) * sum_a Tr{U_G rho_a U_G^dag U_id rho_a U_id^dag}; agrees with the
    trace formula of avg_fidelity for any pair of qubit unitaries.
    """
    u_id = np.asarray(u_id)
    u_g = np.asarray(u_g)
    if u_id.shape != (2, 2) or u_g.shape != (2, 2):
        raise ValueError("pauli_avg_fidelity is defined for 2x2 unitaries")
    _require_unitary(u_id)
    _require_unitary(u_g)
    w = u_id.conj().T @ u_g
    total = 0.0
    for _, vec in PAULI_EIGENSTATES:
        total += abs(vec.conj() @ w @ vec) ** 2
    return float(total / 6.0)


def leakage_population(u_g: np.ndarray, initial_level: int) -> float:
    """Population of the second excited state after the gate, |<2|U|j>|^2."""
    u_g = np.asarray(u_g)
    if u_g.shape != (3, 3):
        raise ValueError(f"leakage_population needs a 3x3 gate, got {u_g.shape}")
    if initial_level not in (0, 1):
        raise ValueError(f"initial_level must be 0 or 1, got {initial_level}")
    return float(abs(u_g[2, initial_level]) ** 2)
