import math

import numpy as np
import pytest

import lepsim


def three_level_hamiltonian(omega):
    h = np.zeros((3, 3), dtype=complex)
    h[1, 2] = h[2, 1] = omega / 2.0
    return h


def three_level_jump(gamma):
    j = np.zeros((3, 3), dtype=complex)
    j[0, 2] = math.sqrt(gamma)
    return j


def test_liouvillian_matches_known_entries():
    mat = lepsim.three_level_liouvillian(1.0, 0.3)
    assert mat.shape == (9, 9)
    assert mat[0, 8] == pytest.approx(1.0)
    assert mat[2, 1] == pytest.approx(0.15j)
    assert mat[2, 2] == pytest.approx(-0.5)
    assert mat[8, 8] == pytest.approx(-1.0)
    built = lepsim.liouvillian(three_level_hamiltonian(0.3),
                               [three_level_jump(1.0)])
    assert np.max(np.abs(built - mat)) < 1e-14


def test_gap_peaks_at_the_degenerate_point():
    assert lepsim.liouvillian_gap(
        lepsim.three_level_liouvillian(1.0, 0.3)) == pytest.approx(
            0.05, abs=1e-9)
    assert lepsim.liouvillian_gap(
        lepsim.three_level_liouvillian(2.0, 1.0)) == pytest.approx(
            0.5, abs=1e-6)


def test_spectrum_and_stationary_state():
    mat = lepsim.three_level_liouvillian(1.0, 0.5)
    spec = lepsim.spectrum(mat)
    assert len(spec["eigenvalues"]) == 9
    assert abs(spec["eigenvalues"][0]) < 1e-12
    rho = lepsim.stationary_state(mat)
    assert np.trace(rho) == pytest.approx(1.0, abs=1e-12)
    assert rho[0, 0] == pytest.approx(1.0, abs=1e-10)


def test_integrate_tracks_the_analytic_curves():
    gamma, omega = 1.0, 0.5
    rho0 = np.zeros((3, 3), dtype=complex)
    rho0[1, 1] = 1.0
    traj = lepsim.integrate(three_level_hamiltonian(omega),
                            [three_level_jump(gamma)], rho0, 8.0, 0.002)
    ref = lepsim.analytic_three_level(gamma, omega, traj["times"])
    states = traj["states"]
    worst = max(
        abs(states[i][1, 1].real - ref["x"][i]) for i in range(len(states)))
    assert worst < 1e-6


def test_detect_ep_reports_jordan_blocks():
    report = lepsim.detect_ep(lepsim.three_level_liouvillian(2.0, 1.0),
                              cluster_tol=1e-4)
    by_center = {round(c["center"].real, 6): c["blocks"] for c in report}
    assert by_center[-0.5] == [2, 2]
    assert by_center[-1.0] == [3, 1]


def test_subsystem_degeneracy_at_the_balanced_point():
    omega_g = math.sqrt(0.19)
    ev = lepsim.subsystem_eigenvalues(nu=1.0, delta_detuning=0.9,
                                      omega_g=omega_g, eta=0.1,
                                      gamma=0.2 * omega_g)
    assert abs(ev[1] - ev[3]) < 1e-7


def test_cooling_gaps_and_limit():
    assert lepsim.full_gap(nu=1.0, delta_detuning=0.987, omega_g=0.16,
                           eta=0.1, gamma=0.032,
                           n_cut=5) == pytest.approx(0.00679623982684213,
                                                     rel=1e-9)
    limit = lepsim.cooling_limit(nu=1.0, delta_detuning=0.987, omega_g=0.16,
                                 eta=0.1, gamma=0.032, n_cut=5)
    assert limit == pytest.approx(1.3849e-4, rel=1e-3)


def test_floquet_monodromy_static_limit():
    mono, period = lepsim.monodromy(three_level_hamiltonian(0.3),
                                    [three_level_jump(1.0)],
                                    drive_omega=1.0, fraction=1e-6)
    assert period == pytest.approx(2.0 * math.pi)
    assert lepsim.floquet_gap(mono, period) == pytest.approx(0.05, abs=1e-4)


def test_eit_optimal_detuning_golden():
    assert lepsim.eit_optimal_detuning(1.0, 1.0, 0.2) == pytest.approx(
        1.0071067811865475, abs=1e-12)


def test_model_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        lepsim.liouvillian(three_level_hamiltonian(0.3),
                           [np.zeros((2, 2), dtype=complex)])
