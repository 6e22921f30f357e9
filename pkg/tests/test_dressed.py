import numpy as np
import pytest

from ringcavity.dressed import (
    block_coefficients,
    block_eigensystem,
    block_hamiltonian,
    evolution_amplitude_arrays,
    evolution_amplitudes,
    oracle_block_diagonalize,
)


def test_coefficients_lowest_block():
    bc = block_coefficients(0)
    assert bc.f1 == pytest.approx(np.sqrt(1.0 / 6.0), abs=1e-15)
    assert bc.f2 == pytest.approx(np.sqrt(1.0 / 3.0), abs=1e-15)
    assert bc.rabi == pytest.approx(np.sqrt(6.0), abs=1e-15)


def test_coefficients_block7():
    assert block_coefficients(7).rabi == pytest.approx(np.sqrt(34.0), rel=1e-15)


def test_coefficient_sum_identity():
    for n in range(0, 1001, 7):
        bc = block_coefficients(n)
        assert bc.f1**2 + bc.f2**2 == pytest.approx(0.5, rel=1e-15)
        assert 0.0 < bc.f1 < np.sqrt(0.5)
        assert 0.0 < bc.f2 < np.sqrt(0.5)


def test_rabi_strictly_increasing():
    rabis = [block_coefficients(n).rabi for n in range(200)]
    assert np.all(np.diff(rabis) > 0)


def test_coefficients_rejects_bad_input():
    with pytest.raises(ValueError):
        block_coefficients(-1)
    with pytest.raises(ValueError):
        block_coefficients(2.5)
    with pytest.raises(ValueError):
        block_coefficients(0, g=0.0)


def test_amplitudes_start_at_identity():
    amp = evolution_amplitudes(0, 0.0)
    assert amp.d1 == 1.0
    assert amp.d2 == 0.0
    assert amp.d3 == 0.0


def test_amplitudes_at_half_rabi_period():
    # cos(rabi*t) = -1 at t = pi/sqrt(6) for the lowest block
    amp = evolution_amplitudes(0, np.pi / np.sqrt(6.0))
    assert amp.d1 == pytest.approx(1.0 / 3.0, abs=1e-14)
    assert abs(amp.d2) < 1e-14
    assert amp.d3 == pytest.approx(-4.0 / (3.0 * np.sqrt(2.0)), abs=1e-14)
    assert amp.d1**2 + amp.d3**2 == pytest.approx(1.0, abs=1e-14)


def test_amplitude_structure():
    rng = np.random.default_rng(11)
    for _ in range(50):
        amp = evolution_amplitudes(int(rng.integers(0, 500)), float(rng.uniform(0, 40)))
        assert amp.d2.real == 0.0  # purely imaginary by construction
        assert amp.d3 <= 1e-15     # cos - 1 <= 0
        total = amp.d1**2 + 2.0 * abs(amp.d2) ** 2 + amp.d3**2
        assert total == pytest.approx(1.0, abs=1e-12)


def test_conservation_sweep():
    rng = np.random.default_rng(3)
    ns = np.arange(0, 1001)[:, None]
    ts = rng.uniform(0.0, 50.0, size=(1001, 100))
    d1, d2, d3 = evolution_amplitude_arrays(ns, ts)
    total = d1 * d1 + 2.0 * np.abs(d2) ** 2 + d3 * d3
    assert np.max(np.abs(total - 1.0)) < 1e-12


def test_amplitude_periodicity():
    rng = np.random.default_rng(5)
    for n in (0, 3, 42):
        period = 2.0 * np.pi / block_coefficients(n).rabi
        for _ in range(5):
            t = float(rng.uniform(0.0, 20.0))
            a0 = evolution_amplitudes(n, t)
            a1 = evolution_amplitudes(n, t + period)
            assert a0.d1 == pytest.approx(a1.d1, abs=1e-12)
            assert abs(a0.d2 - a1.d2) < 1e-12
            assert a0.d3 == pytest.approx(a1.d3, abs=1e-12)


def test_eigensystem_lowest_block():
    es = block_eigensystem(0, omega=1.0)
    assert sorted(es.energies) == pytest.approx(
        sorted([1.0, 1.0, 1.0 + np.sqrt(6.0), 1.0 - np.sqrt(6.0)]), abs=1e-14
    )
    bc = block_coefficients(0)
    s2 = np.sqrt(2.0)
    expected = np.array(
        [
            [s2 * bc.f2, 0.0, 0.0, -s2 * bc.f1],
            [0.0, s2 / 2.0, -s2 / 2.0, 0.0],
            [bc.f1, 0.5, 0.5, bc.f2],
            [-bc.f1, 0.5, 0.5, -bc.f2],
        ]
    )
    assert np.allclose(es.vectors, expected, atol=1e-15)


def test_eigenvectors_orthonormal():
    for n in (0, 1, 5, 40, 99):
        es = block_eigensystem(n)
        gram = es.vectors @ es.vectors.T
        assert np.max(np.abs(gram - np.eye(4))) < 1e-12


def test_eigenvectors_solve_block_hamiltonian():
    for n in (0, 2, 17):
        es = block_eigensystem(n, omega=0.7, g=1.3)
        h = block_hamiltonian(n, omega=0.7, g=1.3)
        for energy, vec in zip(es.energies, es.vectors):
            assert np.max(np.abs(h @ vec - energy * vec)) < 1e-12


def test_oracle_decoupled_limit():
    es = oracle_block_diagonalize(0, omega=1.0, g=0.0)
    assert np.allclose(es.energies, 1.0, atol=1e-14)


def test_oracle_lowest_block_spectrum():
    es = oracle_block_diagonalize(0, omega=1.0, g=1.0)
    assert es.energies == pytest.approx(
        np.array([1.0 - np.sqrt(6.0), 1.0, 1.0, 1.0 + np.sqrt(6.0)]), abs=1e-12
    )


def _projector(vectors):
    return vectors.T @ vectors


def eigensystem_defect(n, omega=1.0, g=1.0):
    """Max deviation between closed form and numeric oracle for block n."""
    closed = block_eigensystem(n, omega, g)
    oracle = oracle_block_diagonalize(n, omega, g)
    worst = np.max(np.abs(np.sort(closed.energies) - np.sort(oracle.energies)))
    for level in np.unique(np.round(closed.energies, 6)):
        pc = _projector(closed.vectors[np.abs(closed.energies - level) < 1e-6])
        po = _projector(oracle.vectors[np.abs(oracle.energies - level) < 1e-6])
        worst = max(worst, np.max(np.abs(pc - po)))
    return worst


def test_closed_form_matches_oracle():
    assert eigensystem_defect(3) < 1e-10
    assert max(eigensystem_defect(n) for n in range(101)) < 1e-10
