"""Simulation toolkit for qubit and cavity control with resonant SFQ pulse trains."""

from .params import (
    FLUX_QUANTUM,
    HBAR,
    CavityParams,
    PhysConst,
    QubitParams,
    delta_theta,
    gaussian_correction,
    sfq_displacement,
    single_pulse_energy,
)
from .pulses import (
    DeltaPulse,
    GaussianPulse,
    JitterModel,
    PointerProtocol,
    PulseShape,
    PulseTrain,
    RectangularPulse,
    apply_jitter,
    pointer_protocol,
    resonant_train,
)
from .oscillator import (
    CoherentState,
    coherent_amplitude,
    spectral_energy,
    train_energy_closed_form,
)
from .dynamics import (
    GateSpec,
    avg_fidelity,
    compose_gate,
    delta_pulse_unitary_2lvl,
    delta_pulse_unitary_3lvl,
    free_evolution_2lvl,
    free_evolution_3lvl,
    gaussian_pulse_unitary,
    ideal_gate_unitary,
    leakage_population,
    pauli_avg_fidelity,
    rect_pulse_unitary,
)
from .errors import (
    JitterFidelityPrediction,
    MCResult,
    error_vs_eta_sweep,
    error_vs_n_sweep,
    jitter_fidelity_external,
    jitter_fidelity_internal,
    leakage_p2_analytic,
    monte_carlo_jitter,
    rect_pulse_error_analytic,
)

__version__ = "0.1.0"
