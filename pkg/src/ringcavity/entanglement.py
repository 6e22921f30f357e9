"""Internal-state density matrices and concurrence decay of the atom pair.

Two initial internal states are covered, both with the cavity field in
vacuum and each atom carried by a Gaussian packet of spread d (packet
centers a/2 and -a/2):

    case 1:  cos(gamma)|g1 g2> + sin(gamma)|e1 e2>
    case 2:  cos(gamma)|e1 g2> + sin(gamma)|g1 e2>

Tracing the field and the motion out of the evolved state leaves a 4x4
X-state in the basis {|e1 e2>, |e1 g2>, |g1 e2>, |g1 g2>}.  The motional
trace multiplies every internal coherence by exp(-s(t)) with
s(t) = (sigma*t)^2, sigma = hbar*k/(2*d*m0): this Gaussian envelope is
what kills the entanglement in finite time, and smaller packets (larger
momentum uncertainty) kill it faster.

Two textual variants of the matrix entries circulate and are both exposed
for comparison:

* ``literal_d00`` (case 1) freezes the block amplitudes at their t = 0
  values instead of letting them oscillate; the resulting concurrence
  decays monotonically with no oscillation.
* ``printed_w`` (case 2) reproduces a transcription of the entries that
  does not come from a valid quantum state: its ground-pair population
  w = |B|^2 + 2*cos(gamma)*sin(gamma)*exp(-delta)*cos(a*k) breaks
  trace 1, and its one-excitation coherence z attaches the packet-offset
  phases exp(-+i*a*k) asymmetrically, which can violate the
  Cauchy-Schwarz bound |z| <= sqrt(b*c) (a negative eigenvalue).  The
  default entries are rederived from the branch overlaps and verified
  against direct momentum-space quadrature (see the tests): w picks up
  the missing |B|^2 factor on its interference term, restoring the trace
  identically, and z carries the common phase exp(-i*a*k) with the
  time-dependent recoil phases exp(-+i*k^2*t/m0) splitting the
  cos^2/sin^2 terms instead.  Positivity then holds for every parameter
  choice because b, c are branch norms and z their inner product.

Lengths are in units of the cavity wavelength (k = 2*pi), times in 1/g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dressed import evolution_amplitudes

__all__ = [
    "EntanglementScenario",
    "TwoQubitState",
    "envelope_exponent",
    "rho_case1",
    "rho_case2",
    "concurrence_x_state",
    "concurrence_general",
    "concurrence_series",
    "random_x_state",
]

_K = 2.0 * math.pi  # cavity wave number in wavelength units

_SIGMA_Y_PAIR = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class EntanglementScenario:
    """Geometry and mixing angle behind the internal-state dynamics.

    gamma is the mixing angle of the initial internal state, a the packet
    center separation and d the packet spread (units of the wavelength),
    recoil_sigma the rate sigma in s(t) = (sigma*t)^2 (units of g), and
    omega the mode frequency entering only the phase of the ee/gg
    coherence, which never affects the concurrence.
    """

    gamma: float
    a: float = 1.0
    d: float = 0.01
    recoil_sigma: float = 0.5
    omega: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.gamma <= math.pi / 2.0:
            raise ValueError(f"mixing angle must lie in [0, pi/2], got {self.gamma!r}")
        if self.d <= 0:
            raise ValueError(f"packet spread d must be positive, got {self.d!r}")
        if self.recoil_sigma < 0:
            raise ValueError(f"recoil rate must be non-negative, got {self.recoil_sigma!r}")


@dataclass(frozen=True)
class TwoQubitState:
    """4x4 density matrix in the basis {|e1 e2>, |e1 g2>, |g1 e2>, |g1 g2>}."""

    matrix: np.ndarray
    is_x_state: bool = False

    def __post_init__(self):
        self.matrix.setflags(write=False)

    def validate(self, herm_tol: float = 1e-12, eig_floor: float = -1e-10):
        m = self.matrix
        if m.shape != (4, 4):
            raise ValueError(f"density matrix must be 4x4, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > herm_tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > herm_tol or abs(np.trace(m).imag) > herm_tol:
            raise ValueError(f"density matrix trace {np.trace(m)} differs from 1")
        if float(np.min(np.linalg.eigvalsh(m))) < eig_floor:
            raise ValueError("density matrix has a negative eigenvalue")
        return self


def envelope_exponent(scn: EntanglementScenario, t: float) -> float:
    """Motional damping exponent s(t) = (sigma*t)^2."""
    st = scn.recoil_sigma * t
    return st * st


def _x_matrix(p_ee, p_eg, p_ge, p_gg, w, z) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0], m[1, 1], m[2, 2], m[3, 3] = p_ee, p_eg, p_ge, p_gg
    m[0, 3], m[3, 0] = w, np.conj(w)
    m[1, 2], m[2, 1] = z, np.conj(z)
    return m


def rho_case1(
    scn: EntanglementScenario, t: float, literal_d00: bool = False, g: float = 1.0
) -> TwoQubitState:
    """Internal-state matrix evolved from cos(gamma)|gg> + sin(gamma)|ee>.

    The doubly excited component evolves in the lowest coupling block while
    the ground component only picks up free phases, so the populations ride
    on the block amplitudes (d1, d2, d3) at block index 0 and the ee/gg
    coherence carries the full motional envelope exp(-s(t)).

    With ``literal_d00`` the amplitudes are frozen at their t = 0 values
    (d1, d2, d3) = (1, 0, 0); kept for comparison only.
    """
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t!r}")
    if literal_d00:
        d1, d2, d3 = 1.0, 0.0 + 0.0j, 0.0
    else:
        amps = evolution_amplitudes(0, t, g)
        d1, d2, d3 = amps.d1, amps.d2, amps.d3
    sin_g, cos_g = math.sin(scn.gamma), math.cos(scn.gamma)
    s = envelope_exponent(scn, t)
    delta = (scn.d * _K) ** 2

    p_ee = d1 * d1 * sin_g * sin_g
    p_eg = abs(d2) ** 2 * sin_g * sin_g
    p_gg = cos_g * cos_g + d3 * d3 * sin_g * sin_g
    w = d1 * cos_g * sin_g * np.exp(-2j * scn.omega * t) * math.exp(-s)
    z = p_eg * math.exp(-s - delta) * np.exp(-1j * scn.a * _K)
    state = TwoQubitState(matrix=_x_matrix(p_ee, p_eg, p_eg, p_gg, w, z), is_x_state=True)
    return state.validate()


def rho_case2(
    scn: EntanglementScenario, t: float, printed_w: bool = False, g: float = 1.0
) -> TwoQubitState:
    """Internal-state matrix evolved from cos(gamma)|eg> + sin(gamma)|ge>.

    The single excitation exchanges between the atoms and the mode at the
    vacuum Rabi rate sqrt(2)*g through A(t) = (cos(sqrt(2)*g*t) +/- 1)/2
    and B(t) = -i*sin(sqrt(2)*g*t)/sqrt(2); photon recoil imprints the
    packet overlap factors exp(-d^2 k^2) and phases exp(i*a*k) on every
    interference term.

    ``printed_w`` selects the as-printed variant of both w and z; see the
    module docstring.  That matrix is deliberately returned unvalidated,
    since exhibiting its trace defect is the point of keeping it.
    """
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t!r}")
    c = math.cos(math.sqrt(2.0) * g * t)
    a_plus = 0.5 * (c + 1.0)
    a_minus = 0.5 * (c - 1.0)
    b_sq = 0.5 * math.sin(math.sqrt(2.0) * g * t) ** 2  # |B(t)|^2

    sin_g, cos_g = math.sin(scn.gamma), math.cos(scn.gamma)
    s = envelope_exponent(scn, t)
    ak = scn.a * _K
    delta = (scn.d * _K) ** 2

    cross = 2.0 * a_plus * a_minus * cos_g * sin_g * math.exp(-delta) * math.cos(ak)
    p_eg = a_plus**2 * cos_g**2 + a_minus**2 * sin_g**2 + cross
    p_ge = a_minus**2 * cos_g**2 + a_plus**2 * sin_g**2 + cross
    interference = 2.0 * cos_g * sin_g * math.exp(-delta) * math.cos(ak)
    if printed_w:
        p_gg = b_sq + interference
        z = math.exp(-s) * (
            a_plus * a_minus
            * (cos_g**2 * np.exp(-(delta + 1j * ak)) + sin_g**2 * np.exp(-(delta - 1j * ak)))
            + (a_plus**2 + a_minus**2 * np.exp(-(4.0 * delta + 2j * ak))) * cos_g * sin_g
        )
        return TwoQubitState(matrix=_x_matrix(0.0, p_eg, p_ge, p_gg, 0.0, z), is_x_state=True)

    p_gg = b_sq * (1.0 + interference)
    # recoil phase k^2 t / m0 accumulated between the kicked and unkicked
    # branches; in scenario units k^2/m0 = 2*d*k*sigma
    phi = 2.0 * scn.d * _K * scn.recoil_sigma * t
    z = math.exp(-s) * (
        a_plus * a_minus * math.exp(-delta) * np.exp(-1j * ak)
        * (cos_g**2 * np.exp(-1j * phi) + sin_g**2 * np.exp(1j * phi))
        + (a_plus**2 + a_minus**2 * math.exp(-4.0 * delta) * np.exp(-2j * ak)) * cos_g * sin_g
    )
    state = TwoQubitState(matrix=_x_matrix(0.0, p_eg, p_ge, p_gg, 0.0, z), is_x_state=True)
    return state.validate()


def _check_x_sparsity(m: np.ndarray, tol: float = 1e-12):
    mask = np.ones((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = False
    mask[np.arange(4), np.arange(4)[::-1]] = False
    if np.max(np.abs(m[mask])) > tol:
        raise ValueError("matrix is not an X-state: nonzero entry off both diagonals")


def concurrence_x_state(state: TwoQubitState) -> float:
    """Closed-form concurrence of an X-state.

    C = 2*max{0, |z| - sqrt(p_ee*p_gg), |w| - sqrt(p_eg*p_ge)} with z the
    one-excitation coherence and w the ee/gg coherence.  For states whose
    ee row vanishes this reduces to 2*|z|.
    """
    if not state.is_x_state:
        raise ValueError("state is not flagged as an X-state; use concurrence_general")
    m = state.matrix
    _check_x_sparsity(m)
    p_ee, p_eg, p_ge, p_gg = (m[i, i].real for i in range(4))
    z = m[1, 2]
    w = m[0, 3]
    return 2.0 * max(
        0.0,
        abs(z) - math.sqrt(max(p_ee * p_gg, 0.0)),
        abs(w) - math.sqrt(max(p_eg * p_ge, 0.0)),
    )


def concurrence_general(state: TwoQubitState) -> float:
    """Wootters concurrence from the spin-flip spectrum; works for any state.

    The spectrum of rho * (sy x sy) rho^* (sy x sy) is evaluated through
    the singular values of X = sqrt(rho) (sy x sy) conj(sqrt(rho)), since
    X X^dagger shares it: the singular values are the root-eigenvalues
    r1 >= r2 >= r3 >= r4 directly, with absolute (not square-rooted)
    machine accuracy near zero.  Returns max{0, r1 - r2 - r3 - r4}.
    Serves as the independent oracle for :func:`concurrence_x_state`.
    """
    m = state.matrix
    if np.max(np.abs(m - m.conj().T)) > 1e-9:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(m) - 1.0) > 1e-9:
        raise ValueError(f"density matrix trace {np.trace(m)} differs from 1")
    lam, vecs = np.linalg.eigh(m)
    sqrt_rho = (vecs * np.sqrt(np.clip(lam, 0.0, None))) @ vecs.conj().T
    x = sqrt_rho @ _SIGMA_Y_PAIR @ sqrt_rho.conj()
    roots = np.linalg.svd(x, compute_uv=False)
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def concurrence_series(
    scn: EntanglementScenario,
    case: int,
    times,
    literal_d00: bool = False,
    printed_w: bool = False,
    g: float = 1.0,
):
    """Concurrence over a time grid, with the exp(-s) envelope alongside.

    Returns (times, concurrence, envelope) as arrays.  The comparison flags
    are case-specific: ``literal_d00`` applies to case 1 and ``printed_w``
    to case 2.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise ValueError("time grid must be a non-empty 1-d array")
    if np.any(np.diff(times) < 0):
        raise ValueError("time grid must be ascending")
    if case == 1:
        if printed_w:
            raise ValueError("printed_w applies to case 2 only")
        states = [rho_case1(scn, t, literal_d00=literal_d00, g=g) for t in times]
    elif case == 2:
        if literal_d00:
            raise ValueError("literal_d00 applies to case 1 only")
        states = [rho_case2(scn, t, printed_w=printed_w, g=g) for t in times]
    else:
        raise ValueError(f"case must be 1 or 2, got {case!r}")
    conc = np.array([concurrence_x_state(s) for s in states])
    envelope = np.exp(-((scn.recoil_sigma * times) ** 2))
    return times, conc, envelope


def random_x_state(rng: np.random.Generator) -> TwoQubitState:
    """Random positive X-state; handy for cross-checking the two concurrences."""
    diag = rng.random(4)
    diag /= diag.sum()
    w = (
        rng.random()
        * math.sqrt(diag[0] * diag[3])
        * np.exp(2j * math.pi * rng.random())
    )
    z = (
        rng.random()
        * math.sqrt(diag[1] * diag[2])
        * np.exp(2j * math.pi * rng.random())
    )
    state = TwoQubitState(matrix=_x_matrix(*diag, w, z), is_x_state=True)
    return state.validate()
