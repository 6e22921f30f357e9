"""Dressed-state eigensystem of the two-atom / one-mode coupling blocks.

Two identical two-level atoms resonantly coupled to a single cavity mode
conserve the total excitation number, so the interaction Hamiltonian splits
into 4-dimensional blocks.  The block with n + 2 excitations is spanned by
the ordered basis

    {|e1 e2, n>,  |g1 e2, n+1>,  |e1 g2, n+1>,  |g1 g2, n+2>}

and every 4-vector in this module uses that ordering.  The block has a
doubly degenerate level at E0 = (n+1)*hbar*omega plus a dressed doublet at
E0 +/- hbar*rabi with rabi = sqrt(2*(2n+3))*g.

Starting from |e1 e2, n>, the populations evolve with three amplitudes

    d1(n, t) = 2*f1^2*cos(rabi*t) + 2*f2^2          (stays on |e1 e2, n>)
    d2(n, t) = -1j*f1*sin(rabi*t)                   (each one-photon branch)
    d3(n, t) = 2*f1*f2*(cos(rabi*t) - 1)            (lands on |g1 g2, n+2>)

with f1 = sqrt((n+1)/(2*(2n+3))), f2 = sqrt((n+2)/(2*(2n+3))).  They obey
d1^2 + 2*|d2|^2 + d3^2 = 1 exactly.

Units: hbar = 1 and g = 1 by default, so times are the dimensionless g*t.
All functions are pure and all returned values immutable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BlockCoefficients",
    "EvolutionAmplitudes",
    "BlockEigensystem",
    "block_coefficients",
    "evolution_amplitudes",
    "evolution_amplitude_arrays",
    "block_hamiltonian",
    "block_eigensystem",
    "oracle_block_diagonalize",
]


@dataclass(frozen=True)
class BlockCoefficients:
    """Closed-form mixing coefficients and Rabi rate of one excitation block."""

    n: int
    f1: float
    f2: float
    rabi: float


@dataclass(frozen=True)
class EvolutionAmplitudes:
    """Population amplitudes (d1, d2, d3) of block n at time t.

    d1 and d3 are real, d2 is purely imaginary; together they satisfy
    d1^2 + 2*|d2|^2 + d3^2 = 1.
    """

    n: int
    t: float
    d1: float
    d2: complex
    d3: float


@dataclass(frozen=True)
class BlockEigensystem:
    """Four eigenvalues and orthonormal eigenvectors of one block.

    ``vectors[i]`` is the i-th eigenvector with eigenvalue ``energies[i]``,
    expressed in the ordered block basis of this module.
    """

    n: int
    energies: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        self.energies.setflags(write=False)
        self.vectors.setflags(write=False)


def _check_block_index(n) -> int:
    if n != int(n) or n < 0:
        raise ValueError(f"block index must be a non-negative integer, got {n!r}")
    return int(n)


def block_coefficients(n: int, g: float = 1.0) -> BlockCoefficients:
    """Mixing coefficients f1, f2 and Rabi rate of excitation block n.

    f1 = sqrt((n+1)/(2*(2n+3))), f2 = sqrt((n+2)/(2*(2n+3))) and
    rabi = sqrt(2*(2n+3))*g.  f1^2 + f2^2 = 1/2 holds identically.
    """
    n = _check_block_index(n)
    if g <= 0:
        raise ValueError(f"coupling rate must be positive, got {g!r}")
    denom = 2.0 * (2 * n + 3)
    f1 = np.sqrt((n + 1) / denom)
    f2 = np.sqrt((n + 2) / denom)
    return BlockCoefficients(n=n, f1=float(f1), f2=float(f2), rabi=float(np.sqrt(denom) * g))


def evolution_amplitudes(n: int, t: float, g: float = 1.0) -> EvolutionAmplitudes:
    """Amplitudes (d1, d2, d3) of block n after evolving for time t."""
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t!r}")
    coeff = block_coefficients(n, g)
    c = np.cos(coeff.rabi * t)
    d1 = 2.0 * coeff.f1**2 * c + 2.0 * coeff.f2**2
    d2 = -1j * coeff.f1 * np.sin(coeff.rabi * t)
    d3 = 2.0 * coeff.f1 * coeff.f2 * (c - 1.0)
    return EvolutionAmplitudes(n=coeff.n, t=float(t), d1=float(d1), d2=complex(d2), d3=float(d3))


def evolution_amplitude_arrays(ns, t, g: float = 1.0):
    """Vectorized (d1, d2, d3) over arrays of block indices and times.

    ``ns`` and ``t`` broadcast against each other; d2 is complex (purely
    imaginary entries).  This is the kernel behind field-averaged sums,
    where hundreds of blocks enter, and behind bulk invariant sweeps.
    """
    ns = np.asarray(ns)
    if np.any(ns < 0):
        raise ValueError("block indices must be non-negative")
    if g <= 0:
        raise ValueError(f"coupling rate must be positive, got {g!r}")
    denom = 2.0 * (2 * ns + 3)
    f1sq = (ns + 1) / denom
    f2sq = (ns + 2) / denom
    c = np.cos(np.sqrt(denom) * g * np.asarray(t))
    d1 = 2.0 * f1sq * c + 2.0 * f2sq
    d2 = -1j * np.sqrt(f1sq) * np.sin(np.sqrt(denom) * g * np.asarray(t))
    d3 = 2.0 * np.sqrt(f1sq * f2sq) * (c - 1.0)
    return d1, d2, d3


def block_hamiltonian(n: int, omega: float = 1.0, g: float = 1.0) -> np.ndarray:
    """The 4x4 Hamiltonian of block n in the ordered basis (hbar = 1).

    All diagonal entries are (n+1)*omega; the doubly excited state couples
    to each one-photon branch with g*sqrt(n+1), and each branch couples to
    the ground pair with g*sqrt(n+2).
    """
    n = _check_block_index(n)
    ge = g * np.sqrt(n + 1.0)
    gg = g * np.sqrt(n + 2.0)
    e0 = (n + 1.0) * omega
    return np.array(
        [
            [e0, ge, ge, 0.0],
            [ge, e0, 0.0, gg],
            [ge, 0.0, e0, gg],
            [0.0, gg, gg, e0],
        ]
    )


def block_eigensystem(n: int, omega: float = 1.0, g: float = 1.0) -> BlockEigensystem:
    """Closed-form eigensystem of block n.

    The four eigenvectors, in order, are

        (sqrt(2)*f2, 0, 0, -sqrt(2)*f1)   at E0
        (0, sqrt(2)/2, -sqrt(2)/2, 0)     at E0
        (f1, 1/2, 1/2, f2)                at E0 + rabi
        (-f1, 1/2, 1/2, -f2)              at E0 - rabi

    with E0 = (n+1)*omega.  The first two span a degenerate subspace, so a
    numeric diagonalizer may return any rotation within their span.
    """
    coeff = block_coefficients(n, g)
    s2 = np.sqrt(2.0)
    vectors = np.array(
        [
            [s2 * coeff.f2, 0.0, 0.0, -s2 * coeff.f1],
            [0.0, s2 / 2.0, -s2 / 2.0, 0.0],
            [coeff.f1, 0.5, 0.5, coeff.f2],
            [-coeff.f1, 0.5, 0.5, -coeff.f2],
        ]
    )
    e0 = (coeff.n + 1.0) * omega
    energies = np.array([e0, e0, e0 + coeff.rabi, e0 - coeff.rabi])
    return BlockEigensystem(n=coeff.n, energies=energies, vectors=vectors)


def oracle_block_diagonalize(n: int, omega: float = 1.0, g: float = 1.0) -> BlockEigensystem:
    """Brute-force eigensystem of block n via numeric diagonalization.

    Independent cross-check for :func:`block_eigensystem`; eigenvalues come
    back sorted ascending.
    """
    n = _check_block_index(n)
    energies, vectors = np.linalg.eigh(block_hamiltonian(n, omega, g))
    return BlockEigensystem(n=n, energies=energies, vectors=vectors.T.copy())
