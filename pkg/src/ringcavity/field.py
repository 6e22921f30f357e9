"""Diagonal photon-number distributions of the initial cavity field.

Only the diagonal weights c[n] = <n|rho_f|n> matter downstream: every
field-averaged quantity here is a sum of per-block terms weighted by c[n],
and the off-diagonal field coherences drop out under the partial traces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

__all__ = ["FieldDistribution", "fock_distribution", "coherent_distribution"]

#: resource guard: refuse coherent amplitudes whose truncation would need
#: more Fock terms than this
MAX_FOCK_TERMS = 200_000


@dataclass(frozen=True)
class FieldDistribution:
    """Truncated diagonal photon-number weights with a certified tail bound.

    ``weights[n]`` is the probability of n photons; ``tail_bound`` is an
    upper bound on the probability mass discarded by the truncation, so
    sum(weights) + tail_bound >= 1 and sum(weights) <= 1.
    """

    weights: np.ndarray
    kind: str            # "fock" or "coherent"
    parameter: float     # Fock number n0, or coherent amplitude alpha
    tail_bound: float

    def __post_init__(self):
        self.weights.setflags(write=False)

    @property
    def n_max(self) -> int:
        """Largest photon number carried by the truncation."""
        return len(self.weights) - 1

    def mean_photon_number(self) -> float:
        return float(np.arange(len(self.weights)) @ self.weights)


def fock_distribution(n0: int) -> FieldDistribution:
    """Number state |n0>: a single unit weight, zero tail."""
    if n0 != int(n0) or n0 < 0:
        raise ValueError(f"Fock number must be a non-negative integer, got {n0!r}")
    n0 = int(n0)
    weights = np.zeros(n0 + 1)
    weights[n0] = 1.0
    return FieldDistribution(weights=weights, kind="fock", parameter=float(n0), tail_bound=0.0)


def coherent_distribution(alpha: float, tail_tol: float = 1e-12) -> FieldDistribution:
    """Poissonian weights exp(-alpha^2) * alpha^(2n) / n! of a coherent state.

    Truncated at the smallest N whose cumulative mass reaches 1 - tail_tol.
    Weights are evaluated in log space, so large amplitudes (mean photon
    number alpha^2 well beyond the exp underflow range) stay finite.
    """
    if not 0 < tail_tol < 1:
        raise ValueError(f"tail tolerance must lie in (0, 1), got {tail_tol!r}")
    if alpha < 0:
        raise ValueError(f"coherent amplitude must be non-negative, got {alpha!r}")
    if alpha == 0.0:
        return FieldDistribution(
            weights=np.array([1.0]), kind="coherent", parameter=0.0, tail_bound=0.0
        )

    mean = alpha * alpha
    # Poisson tail is sub-Gaussian; 12 sigma plus a floor comfortably covers
    # any tail_tol down to 1e-15, and we extend below if it somehow does not.
    size = int(mean + 12.0 * math.sqrt(mean + 1.0) + 32.0)
    while True:
        if size > MAX_FOCK_TERMS:
            raise ValueError(
                f"coherent amplitude {alpha} needs more than {MAX_FOCK_TERMS} Fock terms"
            )
        ns = np.arange(size)
        logw = -mean + 2.0 * ns * math.log(alpha) - gammaln(ns + 1.0)
        weights = np.exp(logw)
        cum = np.cumsum(weights)
        hit = np.nonzero(cum >= 1.0 - tail_tol)[0]
        if hit.size:
            n_keep = int(hit[0]) + 1
            break
        size *= 2

    # fsum is exacter than the cumsum scan; absorb extra terms if the scan
    # stopped a hair short of the requested mass
    total = math.fsum(weights[:n_keep])
    while 1.0 - total > tail_tol and n_keep < size:
        total += weights[n_keep]
        n_keep += 1
    weights = weights[:n_keep].copy()
    tail = max(0.0, 1.0 - total)
    return FieldDistribution(
        weights=weights, kind="coherent", parameter=float(alpha), tail_bound=tail
    )
