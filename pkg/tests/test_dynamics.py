import math

import numpy as np
import pytest

from sfqsim.dynamics import (
    GEN3,
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
    unitarity_defect,
)
from sfqsim.params import QubitParams
from sfqsim.pulses import DeltaPulse, GaussianPulse, RectangularPulse, resonant_train

OMEGA = 2 * math.pi * 5e9
Q2 = QubitParams(omega10=OMEGA)
Q3 = QubitParams(omega10=OMEGA, omega21=2 * math.pi * 4.8e9)


def haar_unitaries(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        q, r = np.linalg.qr(z)
        out.append(q * (np.diag(r) / np.abs(np.diag(r))))
    return out


# ------------------------------------------------------------ pulse unitaries

def test_delta_pulse_identity_at_zero():
    assert np.allclose(delta_pulse_unitary_2lvl(0.0), np.eye(2))


def test_delta_pulse_half_turn_maps_ground_down():
    u = delta_pulse_unitary_2lvl(math.pi)
    psi = u @ np.array([1.0, 0.0])
    assert np.allclose(psi, [0.0, -1.0], atol=1e-15)


def test_delta_pulse_power_law():
    dth = math.pi / 200
    u = delta_pulse_unitary_2lvl(dth)
    acc = np.eye(2, dtype=complex)
    for _ in range(100):
        acc = u @ acc
    assert np.max(np.abs(acc - delta_pulse_unitary_2lvl(100 * dth))) < 1e-12


def test_free_evolution_basics():
    assert np.allclose(free_evolution_2lvl(0.0, OMEGA), np.eye(2))
    full = free_evolution_2lvl(2 * math.pi / OMEGA, OMEGA)
    assert np.allclose(full, -np.eye(2), atol=1e-12)
    t = 0.37e-9
    roundtrip = free_evolution_2lvl(t, OMEGA) @ free_evolution_2lvl(-t, OMEGA)
    assert np.max(np.abs(roundtrip - np.eye(2))) < 1e-14


def test_rect_pulse_zero_angle_is_free_precession():
    tc = 2e-12
    with pytest.raises(ValueError):
        rect_pulse_unitary(0.1, 0.0, OMEGA)
    u = rect_pulse_unitary(0.0, tc, OMEGA)
    assert np.max(np.abs(u - free_evolution_2lvl(2 * tc, OMEGA))) < 1e-14


def test_rect_pulse_narrow_limit():
    dth = math.pi / 200
    u = rect_pulse_unitary(dth, 1e-16, OMEGA)
    assert np.max(np.abs(u - delta_pulse_unitary_2lvl(dth))) < 1e-5


def test_rect_pulse_error_matches_fourth_order_model():
    from sfqsim.errors import rect_pulse_error_analytic

    dth = math.pi / 200
    tc = 3.5e-12
    wrapped = free_evolution_2lvl(tc, OMEGA) @ delta_pulse_unitary_2lvl(dth) @ free_evolution_2lvl(tc, OMEGA)
    numeric = 1.0 - avg_fidelity(wrapped, rect_pulse_unitary(dth, tc, OMEGA))
    assert numeric == pytest.approx(rect_pulse_error_analytic(dth, tc, OMEGA), rel=0.05)


# ------------------------------------------------------------ gaussian pulses

def test_gaussian_zero_angle_is_free_precession():
    tau = 2e-12
    u = gaussian_pulse_unitary(0.0, tau, Q2, dim=2)
    assert np.max(np.abs(u - free_evolution_2lvl(10 * tau, OMEGA))) < 1e-10


def test_gaussian_zero_angle_is_free_precession_3lvl():
    tau = 2e-12
    u = gaussian_pulse_unitary(0.0, tau, Q3, dim=3)
    assert np.max(np.abs(u - free_evolution_3lvl(10 * tau, Q3))) < 1e-10


def test_gaussian_converges_to_delta_pulse():
    dth = math.pi / 200
    distances = []
    for tau in (4e-12, 2e-12, 1e-12, 0.5e-12, 0.25e-12):
        tc = 5 * tau
        wrapped = (
            free_evolution_2lvl(tc, OMEGA) @ delta_pulse_unitary_2lvl(dth) @ free_evolution_2lvl(tc, OMEGA)
        )
        u = gaussian_pulse_unitary(dth, tau, Q2, dim=2)
        distances.append(np.max(np.abs(u - wrapped)))
    assert all(b < a for a, b in zip(distances, distances[1:]))


def test_gaussian_converges_to_delta_pulse_3lvl():
    dth = math.pi / 100
    prev = None
    for tau in (2e-12, 1e-12, 0.5e-12):
        tc = 5 * tau
        wrapped = (
            free_evolution_3lvl(tc, Q3) @ delta_pulse_unitary_3lvl(dth) @ free_evolution_3lvl(tc, Q3)
        )
        u = gaussian_pulse_unitary(dth, tau, Q3, dim=3)
        dist = np.max(np.abs(u - wrapped))
        if prev is not None:
            assert dist < prev
        prev = dist


def test_gaussian_step_halving_converged():
    # default step count: halving the step moves the result by under 1e-10
    dth = math.pi / 200
    tau = 4e-12
    for dim, q in ((2, Q2), (3, Q3)):
        u1 = gaussian_pulse_unitary(dth, tau, q, dim=dim)
        u2 = gaussian_pulse_unitary(dth, tau, q, dim=dim, steps=20_000)
        assert np.max(np.abs(u1 - u2)) < 1e-10


def test_gaussian_step_floor():
    with pytest.raises(ValueError):
        gaussian_pulse_unitary(0.01, 1e-12, Q2, dim=2, steps=999)


def test_gaussian_pulse_matches_variance_matched_rectangle():
    # a Gaussian of RMS width tau behaves like a flat pulse of half-width
    # sqrt(3) tau; their single-pulse errors agree closely
    dth = math.pi / 200
    tau = 4e-12
    tc_eq = math.sqrt(3.0) * tau
    tcg = 5 * tau
    wrapped_g = free_evolution_2lvl(tcg, OMEGA) @ delta_pulse_unitary_2lvl(dth) @ free_evolution_2lvl(tcg, OMEGA)
    err_gauss = 1.0 - avg_fidelity(wrapped_g, gaussian_pulse_unitary(dth, tau, Q2, dim=2))
    wrapped_r = free_evolution_2lvl(tc_eq, OMEGA) @ delta_pulse_unitary_2lvl(dth) @ free_evolution_2lvl(tc_eq, OMEGA)
    err_rect = 1.0 - avg_fidelity(wrapped_r, rect_pulse_unitary(dth, tc_eq, OMEGA))
    assert err_gauss == pytest.approx(err_rect, rel=0.5)


# ------------------------------------------------------------ 3-level algebra

def test_generator_cubic_identity():
    assert np.max(np.abs(GEN3 @ GEN3 @ GEN3 + 3.0 * GEN3)) < 1e-14


def test_delta_pulse_3lvl_identity_and_orthogonality():
    assert np.allclose(delta_pulse_unitary_3lvl(0.0), np.eye(3))
    u = delta_pulse_unitary_3lvl(0.7)
    assert np.max(np.abs(u.T @ u - np.eye(3))) < 1e-13
    assert np.max(np.abs(u.imag)) == 0.0


def test_delta_pulse_3lvl_matches_series_oracle():
    # brute-force Taylor series of the exponential as an independent check
    for dth in (0.3, math.pi / 50, 1.9):
        g = 0.5 * dth * GEN3
        term = np.eye(3)
        total = np.eye(3)
        for k in range(1, 40):
            term = term @ g / k
            total = total + term
        assert np.max(np.abs(delta_pulse_unitary_3lvl(dth) - total)) < 1e-13


def test_delta_pulse_3lvl_block_reduces_to_two_level():
    # the qubit block approaches the two-level rotation with O(dth^2) deviation
    devs = []
    for dth in (2e-2, 1e-2, 5e-3):
        block = delta_pulse_unitary_3lvl(dth)[:2, :2]
        devs.append(np.max(np.abs(block - delta_pulse_unitary_2lvl(dth))) / dth**2)
    assert max(devs) / min(devs) < 1.5


def test_free_evolution_3lvl_phases():
    assert np.allclose(free_evolution_3lvl(0.0, Q3), np.eye(3))
    harmonic = QubitParams(omega10=OMEGA, omega21=OMEGA)
    period = 2 * math.pi / OMEGA
    assert np.max(np.abs(free_evolution_3lvl(period, harmonic) - np.eye(3))) < 1e-12
    u = free_evolution_3lvl(period, Q3)
    # leakage level picks up the anharmonicity phase each period
    assert np.angle(u[2, 2]) == pytest.approx(2 * math.pi * 0.04, rel=1e-9)
    assert u[0, 0] == 1.0


# ------------------------------------------------------------ gate composition

def test_compose_single_pulse_is_pulse_unitary():
    gate = GateSpec(math.pi / 2, 1)
    u = compose_gate(gate, resonant_train(OMEGA, 1), DeltaPulse(), 2, Q2)
    assert np.allclose(u, delta_pulse_unitary_2lvl(math.pi / 2))


@pytest.mark.parametrize("theta", [math.pi / 8, math.pi / 4, math.pi / 2, math.pi])
@pytest.mark.parametrize("n", [1, 10, 100])
def test_two_level_resonant_gates_are_exact(theta, n):
    train = resonant_train(OMEGA, n)
    u = compose_gate(GateSpec(theta, n), train, DeltaPulse(), 2, Q2)
    assert 1.0 - avg_fidelity(ideal_gate_unitary(theta), u) < 1e-12


def test_close_time_adds_invisible_resonant_period():
    n = 20
    train = resonant_train(OMEGA, n)
    gate = GateSpec(math.pi / 2, n)
    u_open = compose_gate(gate, train, DeltaPulse(), 2, Q2)
    u_closed = compose_gate(gate, train, DeltaPulse(), 2, Q2, close_time=train.duration)
    assert avg_fidelity(u_open, u_closed) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        compose_gate(gate, train, RectangularPulse(half_width=1e-12), 2, Q2, close_time=train.duration)


def test_three_level_gate_error_canonical():
    # half-turn in 100 pulses at 4% anharmonicity: error near 1e-3
    train = resonant_train(OMEGA, 100)
    u = compose_gate(GateSpec(math.pi / 2, 100), train, DeltaPulse(), 3, Q3)
    err = 1.0 - avg_fidelity(ideal_gate_unitary(math.pi / 2, 3), u)
    assert 3e-4 < err < 3e-3


def test_unitarity_through_long_products():
    n = 5000  # 5000 pulses + 5000 free factors
    train = resonant_train(OMEGA, n)
    for dim, q in ((2, Q2), (3, Q3)):
        u = compose_gate(GateSpec(math.pi / 2, n), train, DeltaPulse(), dim, q)
        assert unitarity_defect(u) < 1e-9


def test_compose_validation():
    train = resonant_train(OMEGA, 10)
    with pytest.raises(ValueError):
        compose_gate(GateSpec(math.pi / 2, 11), train, DeltaPulse(), 2, Q2)
    with pytest.raises(ValueError):
        compose_gate(GateSpec(math.pi / 2, 10), train, DeltaPulse(), 4, Q2)
    with pytest.raises(ValueError):
        compose_gate(GateSpec(math.pi / 2, 10), train, RectangularPulse(half_width=1e-12), 3, Q3)


def test_compose_gaussian_gate_unitary():
    n = 10
    train = resonant_train(OMEGA, n)
    u = compose_gate(GateSpec(math.pi / 2, n), train, GaussianPulse(tau=4e-12), 2, Q2)
    assert unitarity_defect(u) < 1e-10


# ------------------------------------------------------------ fidelity metrics

def test_avg_fidelity_identity_and_phase():
    for u in haar_unitaries(5, seed=11):
        assert avg_fidelity(u, u) == pytest.approx(1.0, abs=1e-13)
        assert avg_fidelity(u, u * np.exp(0.7j)) == pytest.approx(1.0, abs=1e-13)


def test_avg_fidelity_small_angle_expansion():
    theta = math.pi / 3
    u_id = delta_pulse_unitary_2lvl(theta)
    for eps in (1e-3, 1e-4):
        u_g = delta_pulse_unitary_2lvl(theta + eps)
        err = 1.0 - avg_fidelity(u_id, u_g)
        assert err == pytest.approx(eps**2 / 6.0, rel=1e-4)


def test_avg_fidelity_rejects_non_unitary():
    with pytest.raises(ValueError):
        avg_fidelity(np.eye(2), np.diag([1.0, 0.5]))


def test_avg_fidelity_three_level_embedding():
    u_id2 = delta_pulse_unitary_2lvl(math.pi / 2)
    u3 = ideal_gate_unitary(math.pi / 2, 3)
    assert avg_fidelity(u_id2, u3) == pytest.approx(1.0, abs=1e-13)
    assert avg_fidelity(ideal_gate_unitary(math.pi / 2, 3), u3) == pytest.approx(1.0, abs=1e-13)


def test_pauli_average_equals_trace_formula():
    pairs = haar_unitaries(200, seed=23)
    worst = 0.0
    for u_id, u_g in zip(pairs[::2], pairs[1::2]):
        worst = max(worst, abs(avg_fidelity(u_id, u_g) - pauli_avg_fidelity(u_id, u_g)))
    assert worst < 1e-12


def test_pauli_average_bit_flip_is_one_third():
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    for u_id in haar_unitaries(5, seed=31):
        assert pauli_avg_fidelity(u_id, sx @ u_id) == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_leakage_population_basics():
    assert leakage_population(np.eye(3, dtype=complex), 0) == 0.0
    assert leakage_population(np.eye(3, dtype=complex), 1) == 0.0
    with pytest.raises(ValueError):
        leakage_population(np.eye(2, dtype=complex), 0)
    with pytest.raises(ValueError):
        leakage_population(np.eye(3, dtype=complex), 2)
