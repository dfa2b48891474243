"""Pulse schedules: shape descriptors, nominal resonant trains, timing jitter.

Jitter draws use numpy's PCG64 generator keyed by ``SeedSequence((seed, trial))``
so every realization is reproducible bit-for-bit, independent of execution
order or worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

TWO_PI = 2.0 * math.pi

EXTERNAL = "external"
INTERNAL = "internal"
CLOCK_MODES = (EXTERNAL, INTERNAL)


@dataclass(frozen=True)
class DeltaPulse:
    """Idealized zero-width pulse carrying one flux quantum."""


@dataclass(frozen=True)
class RectangularPulse:
    """Flat pulse of total width 2 * half_width."""

    half_width: float

    def __post_init__(self) -> None:
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")

    @property
    def half_support(self) -> float:
        return self.half_width


@dataclass(frozen=True)
class GaussianPulse:
    """Gaussian pulse of RMS width tau, truncated at +/- cutoff * tau."""

    tau: float
    cutoff: float = 5.0

    def __post_init__(self) -> None:
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if self.cutoff < 3:
            raise ValueError(f"cutoff must be at least 3, got {self.cutoff}")

    @property
    def half_support(self) -> float:
        return self.cutoff * self.tau


PulseShape = Union[DeltaPulse, RectangularPulse, GaussianPulse]


@dataclass(frozen=True)
class PulseTrain:
    """Ordered pulse arrival times plus the nominal spacing they came from.

    Jittered trains may lose strict monotonicity when sigma approaches the
    period; consumers that need physical ordering sort the times themselves.
    """

    arrival_times: np.ndarray
    period: float

    def __post_init__(self) -> None:
        times = np.array(self.arrival_times, dtype=float)
        if times.ndim != 1 or times.size == 0:
            raise ValueError("a pulse train needs at least one arrival time")
        if not np.all(np.isfinite(times)):
            raise ValueError("arrival times must be finite")
        if not self.period > 0:
            raise ValueError(f"period must be positive, got {self.period}")
        times.flags.writeable = False
        object.__setattr__(self, "arrival_times", times)

    @property
    def n(self) -> int:
        return int(self.arrival_times.size)

    @property
    def duration(self) -> float:
        """Total drive duration: n full nominal periods."""
        return self.n * self.period

    @property
    def strictly_increasing(self) -> bool:
        return bool(np.all(np.diff(self.arrival_times) > 0))


def resonant_train(omega: float, n: int, cycles_per_pulse: int = 1) -> PulseTrain:
    """Nominal train locked to a mode: spacing = cycles_per_pulse oscillation periods."""
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    if n < 1:
        raise ValueError("cannot build an empty train (n must be >= 1)")
    if cycles_per_pulse < 1:
        raise ValueError(f"cycles_per_pulse must be >= 1, got {cycles_per_pulse}")
    period = cycles_per_pulse * TWO_PI / omega
    return PulseTrain(np.arange(n) * period, period)


@dataclass(frozen=True)
class JitterModel:
    """Gaussian pulse-timing jitter for one of two clocking modes.

    external : every pulse jitters independently about the nominal grid.
    internal : the pulse-to-pulse spacing jitters, so arrival errors random-walk.

    jtl_factor multiplies sigma, e.g. sqrt(N) for a transmission line of N
    junctions between generator and qubit.
    """

    mode: str
    sigma: float
    seed: int = 0
    jtl_factor: float = 1.0

    def __post_init__(self) -> None:
        if self.mode not in CLOCK_MODES:
            raise ValueError(f"mode must be one of {CLOCK_MODES}, got {self.mode!r}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")
        if not self.jtl_factor > 0:
            raise ValueError(f"jtl_factor must be positive, got {self.jtl_factor}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")

    @property
    def effective_sigma(self) -> float:
        return self.sigma * self.jtl_factor

    def draw(self, n: int, trial: int = 0) -> np.ndarray:
        """Per-pulse timing offsets for one realization, keyed by (seed, trial)."""
        if trial < 0:
            raise ValueError(f"trial must be non-negative, got {trial}")
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((self.seed, trial))))
        return rng.normal(0.0, self.effective_sigma, size=n)


def jittered_arrival_times(train: PulseTrain, jm: JitterModel, trials: int, first_trial: int = 0) -> np.ndarray:
    """Arrival times for a batch of jitter realizations, shape (trials, n).

    Row j reproduces ``apply_jitter(train, jm, trial=first_trial + j)``.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    offsets = np.stack([jm.draw(train.n, trial=first_trial + j) for j in range(trials)])
    if jm.mode == INTERNAL:
        offsets = np.cumsum(offsets, axis=1)
    return train.arrival_times[None, :] + offsets


def apply_jitter(train: PulseTrain, jm: JitterModel, trial: int = 0) -> PulseTrain:
    """One jittered realization of a nominal train; the input itself when sigma == 0."""
    if jm.sigma == 0.0:
        return train
    times = jittered_arrival_times(train, jm, 1, first_trial=trial)[0]
    return PulseTrain(times, train.period)


class PointerProtocol(NamedTuple):
    period: float
    n: int
    residue: float


def pointer_protocol(omega0: float, chi: float) -> PointerProtocol:
    """Drive interval and pulse count for bright/dark cavity pointer states.

    A train with period 2*pi/(omega0 + chi) fills the dressed mode at
    omega0 + chi coherently while walking the mode at omega0 - chi around a
    closed circle back to vacuum after (omega0 + chi)/(2*chi) pulses. The
    count is rounded half-away-from-zero; ``residue`` is the exact count minus
    the returned integer (the dark state closes exactly only at residue 0).
    """
    if not 0 < chi < omega0:
        raise ValueError(f"need 0 < chi < omega0, got chi={chi}, omega0={omega0}")
    period = TWO_PI / (omega0 + chi)
    exact = (omega0 + chi) / (2.0 * chi)
    n = int(math.floor(exact + 0.5))
    return PointerProtocol(period, n, exact - n)
