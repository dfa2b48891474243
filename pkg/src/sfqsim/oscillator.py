"""Cavity response to pulse trains: closed-form energy and coherent amplitude.

The drive is linear, so the quantum cavity stays a coherent state and is
tracked purely by its complex amplitude in the frame rotating at omega0; no
Fock-space truncation is involved. Phase convention: each pulse at time t adds
a displacement rotated by exp(-i * omega0 * t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import CavityParams, PhysConst, sfq_displacement, single_pulse_energy
from .pulses import DeltaPulse, GaussianPulse, PulseShape, PulseTrain, RectangularPulse


@dataclass(frozen=True)
class CoherentState:
    """Coherent cavity state: complex amplitude plus the mode it lives on."""

    alpha: complex
    omega0: float

    @property
    def photons(self) -> float:
        return abs(self.alpha) ** 2

    def energy(self, const: PhysConst = PhysConst()) -> float:
        return const.hbar * self.omega0 * self.photons


def _dirichlet_factor(half_angle: float, n: int) -> float:
    """sin^2(n x) / sin^2(x) with the n^2 limit at multiples of pi.

    Arguments are folded with remainder() so the ratio stays accurate when x
    sits next to a multiple of pi, where both sine factors nearly vanish.
    """
    r = math.remainder(half_angle, math.pi)
    if r == 0.0:
        return float(n * n)
    s = math.sin(n * r) / math.sin(r)
    return s * s


def train_energy_closed_form(cav: CavityParams, period: float, n: int, const: PhysConst = PhysConst()) -> float:
    """Energy after n delta pulses spaced by ``period``.

    E_n = E_1 * sin^2(n*omega0*T/2) / sin^2(omega0*T/2); exactly resonant
    spacing returns the analytic limit n^2 * E_1 instead of dividing by zero.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not period > 0:
        raise ValueError(f"period must be positive, got {period}")
    e1 = single_pulse_energy(cav, const)
    return e1 * _dirichlet_factor(0.5 * cav.omega0 * period, n)


def coherent_amplitude(cav: CavityParams, train: PulseTrain, const: PhysConst = PhysConst()) -> CoherentState:
    """Rotating-frame amplitude after an arbitrary (possibly jittered) train.

    alpha = alpha_1 * sum_k exp(-i * omega0 * t_k); for a nominal train this
    is the geometric sum whose modulus squared matches the closed-form energy.
    """
    phases = np.exp(-1j * cav.omega0 * train.arrival_times)
    alpha = sfq_displacement(cav, const) * complex(phases.sum())
    return CoherentState(alpha, cav.omega0)


def classical_train_energy_numeric(
    cav: CavityParams,
    period: float,
    n: int,
    tau: float = 2e-13,
    points_per_period: int = 10_000,
    const: PhysConst = PhysConst(),
) -> float:
    """Brute-force cross-check of the closed-form train energy.

    Integrates the classical circuit equations of motion
    (dPhi/dt = (Q - Cc*V)/C', dQ/dt = -Phi/L) with fixed-step RK4 on a grid of
    ``points_per_period`` steps per period, driving with narrow Gaussian
    stand-ins for the delta pulses (RMS width ``tau``). Returns the energy
    left in the resonator after the train; comparing against
    ``train_energy_closed_form(...) * gaussian_correction(omega0, tau)``
    checks the whole delta-train model against direct time integration.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if points_per_period < 1000:
        raise ValueError(f"points_per_period must be >= 1000, got {points_per_period}")
    l_ind = 1.0 / (cav.omega0**2 * cav.cprime)
    t_pulse = np.arange(n) * period
    pad = 8.0 * tau
    h = period / points_per_period
    steps = int(math.ceil((t_pulse[-1] + 2.0 * pad) / h))
    grid = -pad + np.arange(steps) * h

    norm = const.flux_quantum / (math.sqrt(2.0 * math.pi) * tau)
    def drive(t: np.ndarray) -> np.ndarray:
        return norm * np.exp(-0.5 * ((t[:, None] - t_pulse[None, :]) / tau) ** 2).sum(axis=1)

    # Drive samples at step start, midpoint and end for the RK4 stages.
    v0 = drive(grid)
    vm = drive(grid + 0.5 * h)
    v1 = drive(grid + h)

    inv_cp = 1.0 / cav.cprime
    inv_l = 1.0 / l_ind
    cc = cav.Cc
    phi, q = 0.0, 0.0
    for i in range(steps):
        va, vb, vc = v0[i], vm[i], v1[i]
        k1p = (q - cc * va) * inv_cp
        k1q = -phi * inv_l
        k2p = (q + 0.5 * h * k1q - cc * vb) * inv_cp
        k2q = -(phi + 0.5 * h * k1p) * inv_l
        k3p = (q + 0.5 * h * k2q - cc * vb) * inv_cp
        k3q = -(phi + 0.5 * h * k2p) * inv_l
        k4p = (q + h * k3q - cc * vc) * inv_cp
        k4q = -(phi + h * k3p) * inv_l
        phi += h * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0
        q += h * (k1q + 2.0 * k2q + 2.0 * k3q + k4q) / 6.0
    return q * q * 0.5 * inv_cp + phi * phi * 0.5 * inv_l


def spectral_energy(cav: CavityParams, shape: PulseShape, const: PhysConst = PhysConst()) -> float:
    """Deposited energy of one shaped pulse from its spectral weight at omega0.

    E = (omega0^2 * Cc^2 / 2C') * |V(omega0)|^2 with the Fourier transform
    known analytically per shape: flat in frequency for a delta pulse,
    exp(-(omega0*tau)^2 / 2) for a Gaussian, sinc(omega0 * tc) for a rectangle.
    """
    phi0 = const.flux_quantum
    if isinstance(shape, DeltaPulse):
        v = phi0
    elif isinstance(shape, GaussianPulse):
        v = phi0 * math.exp(-0.5 * (cav.omega0 * shape.tau) ** 2)
    elif isinstance(shape, RectangularPulse):
        x = cav.omega0 * shape.half_width
        v = phi0 * (math.sin(x) / x if x != 0.0 else 1.0)
    else:
        raise TypeError(f"unsupported pulse shape: {shape!r}")
    return cav.omega0**2 * cav.Cc**2 / (2.0 * cav.cprime) * v * v
