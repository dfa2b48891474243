"""Circuit constants and the per-pulse coupling quantities they determine.

All frequencies are angular frequencies (rad/s); the CLI layer converts from
Hz. Values are plain double precision and the types are immutable, so they can
be shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

HBAR = 1.054571817e-34  # reduced Planck constant, J s (CODATA 2018)
FLUX_QUANTUM = 2.067833848e-15  # magnetic flux quantum h/2e, Wb (CODATA 2018)


@dataclass(frozen=True)
class PhysConst:
    """Fundamental constants; defaults are the CODATA values above."""

    hbar: float = HBAR
    flux_quantum: float = FLUX_QUANTUM


@dataclass(frozen=True)
class CavityParams:
    """Linear cavity mode driven through a coupling capacitor.

    Parameters
    ----------
    omega0 : float
        Mode angular frequency, rad/s.
    C : float
        Cavity capacitance, F.
    Cc : float
        Coupling capacitance, F. Zero is allowed (decoupled limit).
    """

    omega0: float
    C: float
    Cc: float

    def __post_init__(self) -> None:
        if not self.omega0 > 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if not self.C > 0:
            raise ValueError(f"C must be positive, got {self.C}")
        if self.Cc < 0:
            raise ValueError(f"Cc must be non-negative, got {self.Cc}")

    @property
    def cprime(self) -> float:
        """Loaded capacitance C + Cc seen by the mode."""
        return self.C + self.Cc


@dataclass(frozen=True)
class QubitParams:
    """Weakly anharmonic qubit, used as a two- or three-level system.

    Either supply the qubit capacitances (C, Cc) so the per-pulse rotation
    angle can be derived, or set ``delta_theta_override`` directly; gate-level
    code only ever needs the angle and the transition frequencies.

    omega21 may be omitted for strictly two-level use.
    """

    omega10: float
    omega21: float | None = None
    C: float | None = None
    Cc: float | None = None
    delta_theta_override: float | None = None

    def __post_init__(self) -> None:
        if not self.omega10 > 0:
            raise ValueError(f"omega10 must be positive, got {self.omega10}")
        if self.omega21 is not None and not self.omega21 > 0:
            raise ValueError(f"omega21 must be positive, got {self.omega21}")
        if self.C is not None and not self.C > 0:
            raise ValueError(f"C must be positive, got {self.C}")
        if self.Cc is not None and self.Cc < 0:
            raise ValueError(f"Cc must be non-negative, got {self.Cc}")

    @property
    def eta(self) -> float:
        """Relative anharmonicity (omega10 - omega21) / omega10."""
        if self.omega21 is None:
            raise ValueError("omega21 is required to evaluate the anharmonicity")
        return (self.omega10 - self.omega21) / self.omega10


def delta_theta(q: QubitParams, const: PhysConst = PhysConst()) -> float:
    """Rotation angle of the Bloch vector produced by one unit-flux pulse.

    delta_theta = Cc * Phi0 * sqrt(2 * omega10 / (hbar * C)). The qubit
    capacitance C appears here unloaded, unlike the cavity case.
    """
    if q.delta_theta_override is not None:
        return q.delta_theta_override
    if q.C is None or q.Cc is None:
        raise ValueError("delta_theta needs (C, Cc) or delta_theta_override")
    out = q.Cc * const.flux_quantum * math.sqrt(2.0 * q.omega10 / (const.hbar * q.C))
    if not math.isfinite(out):
        raise ValueError("delta_theta evaluated to a non-finite value")
    return out


def sfq_displacement(cav: CavityParams, const: PhysConst = PhysConst()) -> float:
    """Coherent displacement the cavity receives from one unit-flux pulse.

    Real-valued and non-positive in this phase convention:
    -Cc * Phi0 * sqrt(omega0 / (2 * hbar * C')).
    """
    out = -cav.Cc * const.flux_quantum * math.sqrt(
        cav.omega0 / (2.0 * const.hbar * cav.cprime)
    )
    if not math.isfinite(out):
        raise ValueError("sfq_displacement evaluated to a non-finite value")
    return out


def single_pulse_energy(cav: CavityParams, const: PhysConst = PhysConst()) -> float:
    """Energy in joules one unit-flux pulse deposits in the cavity.

    Equals hbar * omega0 * |sfq_displacement|^2 identically.
    """
    out = cav.omega0**2 * cav.Cc**2 * const.flux_quantum**2 / (2.0 * cav.cprime)
    if not math.isfinite(out):
        raise ValueError("single_pulse_energy evaluated to a non-finite value")
    return out


def gaussian_correction(omega0: float, tau: float) -> float:
    """Energy reduction factor exp(-(omega0*tau)^2) for a Gaussian pulse of RMS width tau."""
    if tau < 0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    return math.exp(-((omega0 * tau) ** 2))
