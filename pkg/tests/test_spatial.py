import numpy as np
import pytest
from scipy.integrate import quad

from ringcavity.field import coherent_distribution, fock_distribution
from ringcavity.spatial import (
    SpatialScenario,
    antidiagonal_factor,
    decoherence_factor,
    field_block_sums,
    free_evolution_wavefunction,
    frozen_density,
    gaussian_superposition,
    read_density_binary,
    write_density_binary,
    write_density_csv,
)

SCN = SpatialScenario(a=0.25, d=0.025)


def default_grid(points=512):
    return np.linspace(-0.5, 0.5, points)


def test_scenario_validation():
    with pytest.raises(ValueError):
        SpatialScenario(a=0.25, d=0.0)
    with pytest.raises(ValueError):
        SpatialScenario(a=0.1, d=0.2)  # d must not exceed a
    with pytest.raises(ValueError):
        SpatialScenario(a=0.25, d=0.025, lam=0.0)
    with pytest.raises(ValueError):
        SpatialScenario(a=0.25, d=0.025, recoil_sigma=-1.0)


def test_wavefunction_symmetry():
    xs = np.linspace(-0.6, 0.6, 101)
    phi = gaussian_superposition(SCN, xs)
    assert np.allclose(phi, phi[::-1], atol=1e-15)
    assert np.all(phi > 0)


def test_wavefunction_midpoint_value():
    # at x = 0 both packets contribute equally through their 10-sigma tails
    d, a = SCN.d, SCN.a
    delta = 1.0 + np.exp(-a * a / (2 * d * d))
    expected = 2.0 * (2 * np.pi * d * d) ** (-0.25) * np.exp(-25.0) / np.sqrt(2 * delta)
    assert gaussian_superposition(SCN, 0.0) == pytest.approx(expected, rel=1e-12)
    assert expected > 0


def test_wavefunction_normalized():
    norm, _ = quad(lambda x: gaussian_superposition(SCN, x) ** 2, -1.0, 1.0, limit=200)
    assert norm == pytest.approx(1.0, abs=1e-10)


def test_factor_is_one_on_diagonal():
    field = fock_distribution(2)
    for t in (0.0, 0.7, 3.2):
        assert decoherence_factor(field, 0.31, 0.31, t) == pytest.approx(1.0, abs=1e-12)


def test_factor_is_one_at_time_zero():
    field = fock_distribution(5)
    xs = np.linspace(-1.0, 1.0, 17)
    vals = decoherence_factor(field, xs[:, None], xs[None, :], 0.0)
    assert np.max(np.abs(vals - 1.0)) < 1e-14


def test_factor_bounds_and_translation():
    field = coherent_distribution(4.0, 1e-13)
    xs = np.linspace(-2.0, 2.0, 41)
    for t in (0.4, 1.9, 6.0):
        vals = decoherence_factor(field, xs[:, None], xs[None, :], t)
        assert np.max(np.abs(vals)) <= 1.0 + 1e-12
        shifted = decoherence_factor(field, xs + 0.173, xs - 0.4 + 0.173, t)
        base = decoherence_factor(field, xs, xs - 0.4, t)
        assert np.max(np.abs(shifted - base)) < 1e-13


def test_factor_periodic_in_separation():
    field = coherent_distribution(3.0, 1e-13)
    xs = np.linspace(-1.0, 1.0, 23)
    a = decoherence_factor(field, xs, 0.0, 1.3)
    b = decoherence_factor(field, xs + 2.0, 0.0, 1.3)
    assert np.max(np.abs(a - b)) < 1e-12


def test_antidiagonal_matches_general_path():
    field = coherent_distribution(10.0, 1e-12)
    xs = np.linspace(0.0, 2.0, 37)
    direct = decoherence_factor(field, xs, -xs, 2.0)
    anti = antidiagonal_factor(field, xs, 2.0)
    assert np.max(np.abs(direct - anti)) < 1e-14
    assert 0.5 < antidiagonal_factor(field, 0.25, 2.0) < 1.0


def test_vacuum_block_closed_form():
    # single-block field: F(x'=-x) at x = lambda/2 is 1 - (2/3) sin^2(sqrt6 t)
    field = fock_distribution(0)
    for t in np.linspace(0.0, 4.0, 29):
        expected = 1.0 - (2.0 / 3.0) * np.sin(np.sqrt(6.0) * t) ** 2
        assert antidiagonal_factor(field, 0.5, t) == pytest.approx(expected, abs=1e-13)


def test_factor_wavelength_nodes():
    field = coherent_distribution(10.0, 1e-12)
    for x in (0.0, 1.0, 2.0):
        for t in np.linspace(0.0, 5.0, 11):
            assert antidiagonal_factor(field, x, t) == pytest.approx(1.0, abs=1e-9)


def test_factor_plateau_half_wavelength():
    field = coherent_distribution(10.0, 1e-12)
    vals = np.array([antidiagonal_factor(field, 0.5, t) for t in np.linspace(1.5, 10.0, 86)])
    assert np.max(np.abs(vals - 0.5)) <= 0.05
    # no revival: the plateau stays within a narrow band around its mean
    assert np.max(np.abs(vals - vals.mean())) <= 0.05


def test_cosine_law_affine_fit():
    field = coherent_distribution(10.0, 1e-12)
    xs = np.linspace(0.0, 2.0, 200)
    for t in (1.0, 2.0, 4.0):
        vals = antidiagonal_factor(field, xs, t)
        design = np.column_stack([np.ones_like(xs), np.cos(2.0 * np.pi * xs)])
        coef, *_ = np.linalg.lstsq(design, vals, rcond=None)
        residual = np.max(np.abs(vals - design @ coef))
        assert residual < 1e-10
        even, cosine = field_block_sums(field, t)
        assert coef[0] == pytest.approx(even, abs=1e-12)
        assert coef[1] == pytest.approx(cosine, abs=1e-12)


def test_truncation_soundness():
    coarse = coherent_distribution(6.0, 1e-8)
    fine = coherent_distribution(6.0, 1e-15)
    for t in (0.5, 2.5):
        a = antidiagonal_factor(coarse, 0.37, t)
        b = antidiagonal_factor(fine, 0.37, t)
        assert abs(a - b) <= 2e-8


def test_frozen_density_time_zero_is_outer_product():
    field = coherent_distribution(10.0, 1e-12)
    xs = default_grid()
    grid = frozen_density(SCN, field, 0.0, xs)
    phi = gaussian_superposition(SCN, xs)
    assert np.max(np.abs(grid.values - np.outer(phi, phi) * field.weights.sum())) < 1e-12
    assert grid.hermiticity_defect() < 1e-12
    assert grid.trace() == pytest.approx(1.0, abs=1e-6)


def test_frozen_density_diagonal_preserved():
    field = coherent_distribution(10.0, 1e-12)
    xs = default_grid()
    base = frozen_density(SCN, field, 0.0, xs).diagonal()
    for t in (0.5, 2.0, 7.0):
        diag = frozen_density(SCN, field, t, xs).diagonal()
        assert np.max(np.abs(diag - base)) < 1e-12
        assert np.min(diag) > -1e-12


def test_frozen_density_partial_decay_no_revival():
    field = coherent_distribution(10.0, 1e-12)
    xs = default_grid()
    g0 = frozen_density(SCN, field, 0.0, xs)
    i = int(np.argmin(np.abs(xs - SCN.a)))
    j = int(np.argmin(np.abs(xs + SCN.a)))
    ratios = []
    for t in np.linspace(1.5, 10.0, 18):
        gt = frozen_density(SCN, field, t, xs)
        ratios.append((gt.values[i, j] / g0.values[i, j]).real)
    ratios = np.array(ratios)
    assert np.all(ratios > 0.0) and np.all(ratios < 1.0)
    assert ratios[0] == pytest.approx(
        decoherence_factor(field, xs[i], xs[j], 1.5), abs=1e-12
    )


def test_frozen_density_integer_wavelength_offset_is_static():
    scn = SpatialScenario(a=1.0, d=0.1)
    field = coherent_distribution(10.0, 1e-12)
    xs = np.linspace(-2.0, 2.0, 512)
    g0 = frozen_density(scn, field, 0.0, xs)
    i = int(np.argmin(np.abs(xs - scn.a)))
    j = int(np.argmin(np.abs(xs + scn.a)))
    for t in (1.0, 4.0):
        gt = frozen_density(scn, field, t, xs)
        assert abs(gt.values[i, j] - g0.values[i, j]) < 1e-10


def test_frozen_density_grid_guards():
    field = fock_distribution(0)
    with pytest.raises(ValueError, match="coarse"):
        frozen_density(SCN, field, 0.0, np.linspace(-0.5, 0.5, 100))
    with pytest.raises(ValueError, match="cover"):
        frozen_density(SCN, field, 0.0, np.linspace(-0.4, 0.5, 512))
    with pytest.raises(ValueError, match="ascending"):
        frozen_density(SCN, field, 0.0, np.array([0.5, 0.0, -0.5]))


def test_free_evolution_reduces_to_initial_state():
    scn = SpatialScenario(a=0.25, d=0.025, recoil_sigma=0.8)
    xs = np.linspace(-0.6, 0.6, 31)
    phi0 = free_evolution_wavefunction(scn, xs, 0.0)
    assert np.max(np.abs(phi0 - gaussian_superposition(scn, xs))) < 1e-14


def test_free_evolution_unitary_and_even():
    scn = SpatialScenario(a=0.25, d=0.025, recoil_sigma=0.8)
    for t in (0.5, 2.0):
        norm, _ = quad(
            lambda x: abs(free_evolution_wavefunction(scn, x, t)) ** 2,
            -3.0,
            3.0,
            limit=400,
        )
        assert norm == pytest.approx(1.0, abs=1e-8)
        xs = np.linspace(0.0, 1.0, 21)
        left = np.abs(free_evolution_wavefunction(scn, -xs, t))
        right = np.abs(free_evolution_wavefunction(scn, xs, t))
        assert np.max(np.abs(left - right)) < 1e-13


def test_density_binary_round_trip(tmp_path):
    field = coherent_distribution(2.0, 1e-12)
    xs = np.linspace(-0.5, 0.5, 384)
    grid = frozen_density(SCN, field, 1.5, xs)
    path = tmp_path / "grid.rdg"
    write_density_binary(grid, path)
    xs2, values, time, digest = read_density_binary(path)
    assert np.array_equal(xs2, xs)
    assert np.array_equal(values, grid.values)
    assert time == 1.5
    assert digest != 0


def test_density_csv_layout(tmp_path):
    field = fock_distribution(0)
    scn = SpatialScenario(a=0.25, d=0.1)
    xs = np.linspace(-0.5, 0.5, 81)
    grid = frozen_density(scn, field, 0.0, xs)
    path = tmp_path / "grid.csv"
    write_density_csv(grid, path, {"run.note": "check"})
    lines = path.read_text().splitlines()
    assert lines[0] == "# run.note = check"
    assert lines[1] == "x,xp,re_rho,im_rho"
    first = lines[2].split(",")
    assert float(first[0]) == xs[0] and float(first[1]) == xs[0]
    assert len(lines) == 2 + 81 * 81
