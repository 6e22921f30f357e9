"""Cross-checking invariant suite behind the ``validate`` CLI command.

Each check exercises one conservation law or oracle equivalence over a
broad parameter sweep and reports the largest observed defect against its
tolerance.  The sweeps are seeded, so the suite is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dressed, entanglement, spatial
from .field import coherent_distribution, fock_distribution

__all__ = ["InvariantCheck", "run_invariant_suite"]

_SEED = 20260810


@dataclass(frozen=True)
class InvariantCheck:
    name: str
    defect: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.defect <= self.tolerance


def _check_amplitude_conservation(rng) -> InvariantCheck:
    # every block, 100 random times each: d1^2 + 2|d2|^2 + d3^2 = 1
    worst = 0.0
    for start in range(0, 10_001, 500):
        ns = np.arange(start, min(start + 500, 10_001))[:, None]
        ts = rng.uniform(0.0, 50.0, size=(len(ns), 100))
        d1, d2, d3 = dressed.evolution_amplitude_arrays(ns, ts)
        total = d1 * d1 + 2.0 * np.abs(d2) ** 2 + d3 * d3
        worst = max(worst, float(np.max(np.abs(total - 1.0))))
    return InvariantCheck("amplitude conservation", worst, 1e-12)


def _projector(vectors: np.ndarray) -> np.ndarray:
    return vectors.T @ vectors


def _eigensystem_defect(n: int) -> float:
    closed = dressed.block_eigensystem(n)
    oracle = dressed.oracle_block_diagonalize(n)
    worst = float(np.max(np.abs(np.sort(closed.energies) - np.sort(oracle.energies))))
    # compare spectral projectors per eigenvalue cluster: immune to the
    # arbitrary rotation inside the degenerate level
    for eigenvalue in np.unique(np.round(closed.energies, 6)):
        proj_closed = _projector(closed.vectors[np.abs(closed.energies - eigenvalue) < 1e-6])
        proj_oracle = _projector(oracle.vectors[np.abs(oracle.energies - eigenvalue) < 1e-6])
        worst = max(worst, float(np.max(np.abs(proj_closed - proj_oracle))))
    return worst


def _check_eigensystem_oracle() -> InvariantCheck:
    worst = max(_eigensystem_defect(n) for n in range(101))
    return InvariantCheck("eigensystem vs numeric oracle", worst, 1e-10)


def _produced_states(rng):
    gammas = [0.0, np.pi / 8, np.pi / 4, np.pi / 3, np.pi / 2]
    times = np.linspace(0.0, 8.0, 33)
    for gamma in gammas:
        scn = entanglement.EntanglementScenario(gamma=gamma)
        for t in times:
            yield entanglement.rho_case1(scn, t)
            yield entanglement.rho_case2(scn, t)
    for _ in range(200):
        scn = entanglement.EntanglementScenario(
            gamma=rng.uniform(0.0, np.pi / 2),
            a=rng.uniform(0.1, 3.0),
            d=rng.uniform(0.001, 0.05),
            recoil_sigma=rng.uniform(0.0, 2.0),
        )
        t = rng.uniform(0.0, 10.0)
        yield entanglement.rho_case1(scn, t)
        yield entanglement.rho_case2(scn, t)


def _check_concurrence_oracle(rng) -> InvariantCheck:
    worst = 0.0
    for state in _produced_states(rng):
        diff = abs(
            entanglement.concurrence_x_state(state) - entanglement.concurrence_general(state)
        )
        worst = max(worst, diff)
    for _ in range(1000):
        state = entanglement.random_x_state(rng)
        diff = abs(
            entanglement.concurrence_x_state(state) - entanglement.concurrence_general(state)
        )
        worst = max(worst, diff)
    return InvariantCheck("concurrence closed form vs spectrum", worst, 1e-10)


def _check_state_sanity(rng) -> InvariantCheck:
    worst = 0.0
    for state in _produced_states(rng):
        m = state.matrix
        worst = max(worst, float(np.max(np.abs(m - m.conj().T))))
        worst = max(worst, abs(float(np.trace(m).real) - 1.0), abs(float(np.trace(m).imag)))
        worst = max(worst, max(0.0, -float(np.min(np.linalg.eigvalsh(m)))))
    return InvariantCheck("state trace, hermiticity, positivity", worst, 1e-10)


def _check_factor_bounds() -> InvariantCheck:
    fields = [
        fock_distribution(0),
        fock_distribution(3),
        coherent_distribution(2.0, 1e-13),
        coherent_distribution(10.0, 1e-13),
    ]
    xs = np.linspace(-2.0, 2.0, 41)
    times = np.linspace(0.0, 10.0, 21)
    worst = 0.0
    for fld in fields:
        for t in times:
            factor = spatial.decoherence_factor(fld, xs[:, None], xs[None, :], t)
            worst = max(worst, float(np.max(np.abs(factor) - 1.0)))            # |F| <= 1
            worst = max(worst, float(np.max(np.abs(np.diagonal(factor) - 1.0))))  # F(x,x) = 1
            shifted = spatial.decoherence_factor(fld, xs + 0.37, xs - 1.0 + 0.37, t)
            base = spatial.decoherence_factor(fld, xs, xs - 1.0, t)
            worst = max(worst, float(np.max(np.abs(shifted - base))))          # translation
            anti = spatial.antidiagonal_factor(fld, xs, t)
            even, cosine = spatial.field_block_sums(fld, t)
            affine = even + cosine * np.cos(2.0 * np.pi * xs)
            worst = max(worst, float(np.max(np.abs(anti - affine))))           # cosine law
    return InvariantCheck("decoherence factor bounds and cosine law", worst, 1e-12)


def run_invariant_suite() -> list[InvariantCheck]:
    """Run all checks; deterministic, takes a few seconds."""
    rng = np.random.default_rng(_SEED)
    return [
        _check_amplitude_conservation(rng),
        _check_eigensystem_oracle(),
        _check_concurrence_oracle(rng),
        _check_state_sanity(rng),
        _check_factor_bounds(),
    ]
