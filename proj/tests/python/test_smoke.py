import math

import numpy as np
import pytest

import qthermo

BETA = 1.0 / 1580.2


def test_pauli_and_gibbs_populations():
    sx = qthermo.pauli("x")
    assert np.allclose(sx, [[0, 1], [1, 0]])
    rho = qthermo.gibbs_state(-0.5 * 2000.0 * sx, BETA)
    evals, _ = qthermo.spectral_decompose(rho)
    p_ground = 1.0 / (1.0 + math.exp(-2000.0 * BETA))
    assert evals[1] == pytest.approx(p_ground, abs=1e-12)
    assert qthermo.effective_temperature(evals[1], evals[0], 2000.0) == pytest.approx(BETA, abs=1e-10)


def test_driven_process_identities():
    p = qthermo.DriveProtocol(2000.0, 3600.0, 100e-6)
    h_i = qthermo.drive_hamiltonian(0.0, p)
    h_f = qthermo.drive_hamiltonian(p.tau, p)
    u = qthermo.propagator(p)
    assert np.allclose(u.conj().T @ u, np.eye(2), atol=1e-10)
    rho_i = qthermo.gibbs_state(h_i, BETA)
    rho_tau = qthermo.evolve(rho_i, u)
    work_route, relent_route = qthermo.irreversible_entropy(rho_i, h_i, rho_tau, h_f, BETA)
    assert abs(work_route - relent_route) < 1e-8
    c, pop = qthermo.entropy_decomposition(rho_tau, h_f, BETA)
    assert abs(c + pop - relent_route) < 1e-8
    rho_f = qthermo.gibbs_state(h_f, BETA)
    bound, ok, _ = qthermo.clausius_bound(relent_route, qthermo.bures_length(rho_tau, rho_f))
    assert ok and bound <= relent_route

    dist = qthermo.tpm_work_distribution(rho_i, h_i, h_f, u)
    lhs = sum(prob * math.exp(-BETA * w) for w, prob in dist)
    d_f = qthermo.free_energy_difference(h_i, h_f, BETA)
    assert abs(lhs - math.exp(-BETA * d_f)) < 1e-10


def test_sweep_and_emitters(tmp_path):
    cfg = qthermo.parse_config("tau_steps = 2\n", {"nu-f": "3600"})
    rows = qthermo.run_sweep(cfg)
    assert [r.nu_f for r in rows] == [3600.0, 3600.0]
    assert all(qthermo.check_invariants(r.record) == [] for r in rows)
    qthermo.emit_csv(rows, str(tmp_path / "s.csv"))
    lines = (tmp_path / "s.csv").read_text().splitlines()
    assert lines[0] == qthermo.CSV_HEADER
    assert len(lines) == 3
    paths = qthermo.emit_svg_plot(rows, str(tmp_path / "p.svg"))
    assert [str(p).endswith("p_nu3600.svg") for p in paths] == [True]


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        qthermo.gibbs_state(np.array([[0, 1], [2, 0]], dtype=complex), BETA)
    with pytest.raises(qthermo.ConfigError, match="tau_steps"):
        qthermo.parse_config("tau_steps = 0\n")
    with pytest.raises(qthermo.ConvergenceError):
        qthermo.propagator(qthermo.DriveProtocol(2000.0, 3600.0, 1e-4, 1), 1e-18)
