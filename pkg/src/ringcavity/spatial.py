"""Relative-position wavefunctions and the recoil-induced decoherence factor.

The relative coordinate x = x1 - x2 of the two atoms starts in a symmetric
superposition of two Gaussian packets centered at +a and -a.  Tracing the
cavity field, the center of mass and the internal states out of the evolved
state leaves

    rho(x, x', t) = phi(x, 0) * phi(x', 0) * F(x, x', t)

in the frozen-packet approximation, where the decoherence factor

    F(x, x', t) = sum_n c[n] * { d1(n,t)^2 + d3(n,t)^2
                                 + 2*|d2(n,t)|^2 * cos(k*(x - x')/2) }

multiplies every off-diagonal element.  F is affine in cos(k*(x - x')/2),
equals 1 on the diagonal for any field, and is 2*lambda-periodic in the
separation x - x'.

Lengths are measured in units of the cavity wavelength lambda (so k = 2*pi
by default) and times in units of 1/g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import binio
from .dressed import evolution_amplitude_arrays
from .field import FieldDistribution

__all__ = [
    "SpatialScenario",
    "RelativeDensityGrid",
    "gaussian_superposition",
    "field_block_sums",
    "decoherence_factor",
    "antidiagonal_factor",
    "frozen_density",
    "free_evolution_wavefunction",
    "write_density_csv",
    "write_density_binary",
    "read_density_binary",
]

#: minimum number of grid points per packet spread d accepted by frozen_density
MIN_POINTS_PER_SPREAD = 8


@dataclass(frozen=True)
class SpatialScenario:
    """Geometry of the two-packet relative-position state.

    a is the packet-center offset, d the common Gaussian spread (both in
    units of lam), lam the cavity wavelength and recoil_sigma the recoil
    rate sigma = hbar*k/(2*d*m0) in units of g, which drives the packet
    dispersion of :func:`free_evolution_wavefunction`.
    """

    a: float
    d: float
    lam: float = 1.0
    recoil_sigma: float = 0.0

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError(f"wavelength must be positive, got {self.lam!r}")
        if self.d <= 0:
            raise ValueError(f"packet spread d must be positive, got {self.d!r}")
        if self.d > self.a:
            raise ValueError(
                f"packet spread d={self.d!r} must not exceed the center offset a={self.a!r}"
            )
        if self.recoil_sigma < 0:
            raise ValueError(f"recoil rate must be non-negative, got {self.recoil_sigma!r}")

    @property
    def k(self) -> float:
        """Cavity wave number 2*pi/lam."""
        return 2.0 * math.pi / self.lam

    def hash_fields(self) -> dict:
        return {"a": self.a, "d": self.d, "lam": self.lam, "recoil_sigma": self.recoil_sigma}


@dataclass(frozen=True)
class RelativeDensityGrid:
    """rho(x, x', t) sampled on a position grid; entry (i, j) = rho(xs[i], xs[j])."""

    xs: np.ndarray
    values: np.ndarray
    time: float
    scenario: SpatialScenario

    def __post_init__(self):
        self.xs.setflags(write=False)
        self.values.setflags(write=False)

    def diagonal(self) -> np.ndarray:
        return np.real(np.diagonal(self.values))

    def trace(self) -> float:
        """Trapezoid-rule integral of the diagonal."""
        return float(np.trapezoid(self.diagonal(), self.xs))

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.values - self.values.conj().T)))


def gaussian_superposition(scenario: SpatialScenario, x) -> np.ndarray:
    """Initial relative-position wavefunction phi(x, 0).

    Normalized symmetric superposition of two Gaussians of spread d at +a
    and -a; the overlap of the packets enters through the normalization
    delta = 1 + exp(-a^2/(2 d^2)).
    """
    x = np.asarray(x, dtype=float)
    a, d = scenario.a, scenario.d
    norm = (2.0 * math.pi * d * d) ** (-0.25)
    delta = 1.0 + math.exp(-a * a / (2.0 * d * d))
    g_plus = np.exp(-((x + a) ** 2) / (4.0 * d * d))
    g_minus = np.exp(-((x - a) ** 2) / (4.0 * d * d))
    out = norm / math.sqrt(2.0 * delta) * (g_plus + g_minus)
    return out if out.ndim else float(out)


def field_block_sums(field: FieldDistribution, t: float, g: float = 1.0):
    """Field-averaged block sums (even, cosine) of the decoherence factor.

    Returns (A, B) with A = sum_n c[n]*(d1^2 + d3^2) and
    B = sum_n c[n]*2*|d2|^2, so that F = A + B*cos(k*(x - x')/2).
    A + B equals the retained field mass for every t.
    """
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t!r}")
    d1, d2, d3 = evolution_amplitude_arrays(np.arange(len(field.weights)), t, g)
    even = field.weights @ (d1 * d1 + d3 * d3)
    cosine = field.weights @ (2.0 * np.abs(d2) ** 2)
    return float(even), float(cosine)


def decoherence_factor(
    field: FieldDistribution, x, xp, t: float, lam: float = 1.0, g: float = 1.0
):
    """Decoherence factor F(x, x', t) of the relative-position coherences.

    Depends on positions only through x - x'; F(x, x, t) = 1 up to the
    field truncation and |F| <= 1 everywhere.
    """
    even, cosine = field_block_sums(field, t, g)
    k = 2.0 * math.pi / lam
    separation = np.asarray(x, dtype=float) - np.asarray(xp, dtype=float)
    out = even + cosine * np.cos(0.5 * k * separation)
    return out if out.ndim else float(out)


def antidiagonal_factor(field: FieldDistribution, x, t: float, lam: float = 1.0, g: float = 1.0):
    """F along x' = -x, where the cosine argument reduces to k*x."""
    return decoherence_factor(field, x, -np.asarray(x, dtype=float), t, lam=lam, g=g)


def frozen_density(
    scenario: SpatialScenario, field: FieldDistribution, t: float, xs, g: float = 1.0
) -> RelativeDensityGrid:
    """rho(x, x', t) = phi(x,0)*phi(x',0)*F(x,x',t) on the grid xs.

    The diagonal equals its t = 0 value for every time.  The grid must
    cover [-2a, 2a] and resolve the packets with at least
    MIN_POINTS_PER_SPREAD points per spread d.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1 or len(xs) < 2:
        raise ValueError("position grid must be a 1-d array with at least two points")
    steps = np.diff(xs)
    if np.any(steps <= 0):
        raise ValueError("position grid must be strictly ascending")
    span = 2.0 * scenario.a
    if xs[0] > -span + 1e-12 or xs[-1] < span - 1e-12:
        raise ValueError(
            f"grid [{xs[0]}, {xs[-1]}] must cover [-2a, 2a] = [{-span}, {span}]"
        )
    if float(np.max(steps)) > scenario.d / MIN_POINTS_PER_SPREAD:
        raise ValueError(
            f"grid spacing {np.max(steps):.3g} is too coarse: need at least "
            f"{MIN_POINTS_PER_SPREAD} points per packet spread d = {scenario.d}"
        )

    phi = gaussian_superposition(scenario, xs)
    even, cosine = field_block_sums(field, t, g)
    k = scenario.k
    factor = even + cosine * np.cos(0.5 * k * (xs[:, None] - xs[None, :]))
    values = np.asarray(np.outer(phi, phi) * factor, dtype=complex)
    return RelativeDensityGrid(xs=xs, values=values, time=float(t), scenario=scenario)


def free_evolution_wavefunction(scenario: SpatialScenario, x, t: float):
    """Dispersing two-packet wavefunction phi(x, t) without any cavity coupling.

    Each Gaussian packet spreads through the complex width
    D(t)^2 = d^2 + 2i*d*sigma*t/k, which encodes hbar*t/m0 in scenario
    units; at t = 0 this reduces to :func:`gaussian_superposition`.
    Kept separate from the decoherence factor on purpose: the frozen
    approximation never combines the two.
    """
    x = np.asarray(x, dtype=float)
    a, d = scenario.a, scenario.d
    dsq = d * d + 2j * d * scenario.recoil_sigma * t / scenario.k
    width = np.sqrt(dsq)  # principal branch; Re > 0 since Re(dsq) > 0
    delta = 1.0 + math.exp(-a * a / (2.0 * d * d))
    amp = (2.0 * d * d / math.pi) ** 0.25 / (math.sqrt(2.0) * width)
    packets = np.exp(-((x + a) ** 2) / (4.0 * dsq)) + np.exp(-((x - a) ** 2) / (4.0 * dsq))
    out = amp / math.sqrt(2.0 * delta) * packets
    return out if out.ndim else complex(out)


def _format(v: float) -> str:
    return repr(float(v))


def write_density_csv(grid: RelativeDensityGrid, path, metadata: dict | None = None):
    """CSV export: metadata header lines, then rows (x, xp, re_rho, im_rho)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key in sorted(metadata or {}):
            fh.write(f"# {key} = {metadata[key]}\n")
        fh.write("x,xp,re_rho,im_rho\n")
        for i, x in enumerate(grid.xs):
            row = grid.values[i]
            for j, xp in enumerate(grid.xs):
                fh.write(
                    f"{_format(x)},{_format(xp)},{_format(row[j].real)},{_format(row[j].imag)}\n"
                )


def write_density_binary(grid: RelativeDensityGrid, path):
    digest = binio.scenario_hash(grid.scenario.hash_fields())
    binio.write_grid(path, binio.MAGIC_DENSITY, grid.time, digest, [grid.xs], grid.values)


def read_density_binary(path):
    """Read an RDG1 file; returns (xs, values, time, scenario_hash)."""
    magic, rows, cols, time, digest, doubles = binio.read_grid(path)
    if magic != binio.MAGIC_DENSITY:
        raise ValueError(f"not a density grid file (magic {magic!r})")
    xs = doubles[:rows]
    flat = doubles[rows:]
    re = flat[: rows * cols].reshape((rows, cols), order="F")
    im = flat[rows * cols :].reshape((rows, cols), order="F")
    return xs, re + 1j * im, time, digest
