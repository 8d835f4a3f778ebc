"""Two-mode Gaussian covariance matrices and entanglement measures.

Quadrature ordering is (x1, p1, x2, p2) with x = (a + a^dag)/sqrt(2) and
p = (a - a^dag)/(i*sqrt(2)), so the vacuum variance is 1/2 and a pure global
state has det(sigma) = 1/16. Entropies are reported in nats.

The interaction leaves each single-mode block isotropic, sigma_j =
(<n_j> + 1/2) * I, and concentrates all correlations in the anomalous
cross-mode correlator c = <a1 a2> (central moments):

    sigma[x1,x2] =  Re c     sigma[x1,p2] = Im c
    sigma[p1,x2] =  Im c     sigma[p1,p2] = -Re c

with c = (n10 + n20 + 1) * exp(-i*(phi1+phi2)) * u * v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    InitialState,
    ModelParams,
    Thermal,
    _photon_numbers,
    bogoliubov_coefficients,
)

__all__ = [
    "CLAMP_BAND",
    "CovarianceMatrix4",
    "EntanglementReport",
    "assemble_cm",
    "appendix_cm_crosscheck",
    "reduced_symplectic_eigenvalues",
    "symplectic_eigenvalues",
    "entropy_f",
    "entanglement_entropy",
    "ppt_min_symplectic",
    "log_negativity",
    "full_report",
]

# Rounding guard at the separability / purity boundaries: symplectic
# eigenvalues within this band below 1/2 are treated as exactly 1/2.
CLAMP_BAND = 1e-9

_SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class CovarianceMatrix4:
    """Symmetric 4x4 covariance matrix in ordering (x1, p1, x2, p2).

    The wrapped array is stored read-only. Construction checks shape,
    finiteness and symmetry (to 1e-12) but not physicality; measured or
    transcribed matrices may legitimately violate the uncertainty bound and
    the dedicated checks report that instead.
    """

    m: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.m, dtype=float)
        if arr.shape != (4, 4):
            raise ValueError(f"covariance matrix must be 4x4; got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("covariance matrix contains non-finite entries")
        if np.max(np.abs(arr - arr.T)) > _SYMMETRY_TOL:
            raise ValueError("covariance matrix is not symmetric to 1e-12")
        arr.setflags(write=False)
        object.__setattr__(self, "m", arr)

    @classmethod
    def vacuum(cls) -> "CovarianceMatrix4":
        return cls(0.5 * np.eye(4))

    @property
    def mode1(self) -> np.ndarray:
        return self.m[:2, :2]

    @property
    def mode2(self) -> np.ndarray:
        return self.m[2:, 2:]

    @property
    def gamma(self) -> np.ndarray:
        """Cross-mode 2x2 block (rows mode 1, columns mode 2)."""
        return self.m[:2, 2:]


@dataclass(frozen=True)
class EntanglementReport:
    """Every Gaussian entanglement quantity derived from one covariance matrix."""

    nu1: float
    nu2: float
    entropy1: float
    entropy2: float
    nu_tilde_minus: float
    log_negativity: float


def _det2(block: np.ndarray) -> float:
    return block[0, 0] * block[1, 1] - block[0, 1] * block[1, 0]


def assemble_cm(params: ModelParams, init: InitialState) -> CovarianceMatrix4:
    """Covariance matrix of the evolved state.

    Central moments only: a coherent seed displaces the state but leaves every
    covariance identical to the vacuum input, so its central occupations are
    zero here while its mean energy is tracked by ``mean_photon_numbers``.

    Parameters
    ----------
    params : ModelParams
    init : InitialState

    Returns
    -------
    CovarianceMatrix4
    """
    n10c, n20c = init.central_occupations()
    n1, n2 = _photon_numbers(params, n10c, n20c)
    coeffs = bogoliubov_coefficients(params)
    total = n10c + n20c + 1.0
    c = total * coeffs.phase1() * coeffs.phase2() * coeffs.u * coeffs.v
    m = np.zeros((4, 4))
    m[0, 0] = m[1, 1] = n1 + 0.5
    m[2, 2] = m[3, 3] = n2 + 0.5
    m[0, 2] = m[2, 0] = c.real
    m[0, 3] = m[3, 0] = c.imag
    m[1, 2] = m[2, 1] = c.imag
    m[1, 3] = m[3, 1] = -c.real
    return CovarianceMatrix4(m)


def appendix_cm_crosscheck(
    params: ModelParams, n10: float, n20: float
) -> tuple[CovarianceMatrix4, float]:
    """Phase-explicit transcription of the thermal-input covariances, for audit.

    An alternative closed form writes the two independent cross-mode entries
    with explicit trigonometric phases,

        s13 = N * [ sin(2*wp*tau) * C*S/x - cos(2*wp*tau)   * y*S^2/(1-y^2) ]
        s14 = N * [ cos(2*wp*x*tau) * C*S/x + sin(2*wp*x*tau) * y*S^2/(1-y^2) ]

    with wp = (w1+w2)/2 + y and N = n10+n20+1, and fills the block with the
    symmetric convention s24 = +s13, s23 = s14. Note the inconsistent phase
    arguments between the two lines and the sign convention of s24, both of
    which disagree with the operator-algebra route for generic parameters
    (operator algebra gives both entries the 2*wp*tau argument and
    sigma_p1p2 = -sigma_x1x2). The transcription is evaluated literally, NOT
    corrected, so the deviation is measurable.

    Returns
    -------
    (CovarianceMatrix4, float)
        The literal matrix and the max elementwise deviation from
        ``assemble_cm`` with the same thermal occupations.
    """
    tau, y, x = params.tau, params.y, params.x
    x2 = 1.0 - y * y
    arg = x * tau
    c_h, s_h = math.cosh(arg), math.sinh(arg)
    wp = params.w_bar + y
    total = n10 + n20 + 1.0
    s13 = total * (
        math.sin(2.0 * wp * tau) * c_h * s_h / x
        - math.cos(2.0 * wp * tau) * y * s_h * s_h / x2
    )
    s14 = total * (
        math.cos(2.0 * wp * x * tau) * c_h * s_h / x
        + math.sin(2.0 * wp * x * tau) * y * s_h * s_h / x2
    )
    n1, n2 = _photon_numbers(params, n10, n20)
    m = np.zeros((4, 4))
    m[0, 0] = m[1, 1] = n1 + 0.5
    m[2, 2] = m[3, 3] = n2 + 0.5
    m[0, 2] = m[2, 0] = s13
    m[0, 3] = m[3, 0] = s14
    m[1, 2] = m[2, 1] = s14  # s23 = s14 in the transcribed convention
    m[1, 3] = m[3, 1] = s13  # s24 = +s13 in the transcribed convention
    literal = CovarianceMatrix4(m)
    derived = assemble_cm(params, Thermal(n10, n20))
    discrepancy = float(np.max(np.abs(literal.m - derived.m)))
    return literal, discrepancy


def reduced_symplectic_eigenvalues(cm: CovarianceMatrix4) -> tuple[float, float]:
    """Symplectic eigenvalue of each reduced single-mode state.

    nu_j = sqrt(det sigma_j) >= 1/2 for physical states; values within the
    rounding band below 1/2 are clamped, anything lower raises.
    """
    out = []
    for block in (cm.mode1, cm.mode2):
        det = _det2(block)
        if det < 0.25 - CLAMP_BAND:
            raise ValueError(
                f"reduced block determinant {det} violates the uncertainty bound 1/4"
            )
        out.append(math.sqrt(max(det, 0.25)))
    return out[0], out[1]


def symplectic_eigenvalues(cm: CovarianceMatrix4) -> tuple[float, float]:
    """Full symplectic spectrum (nu_minus, nu_plus) of the 4x4 matrix.

    Uses the two-mode invariant Delta = det sigma_1 + det sigma_2 + 2 det gamma:
    nu_pm^2 = (Delta pm sqrt(Delta^2 - 4 det sigma)) / 2.
    """
    d1 = _det2(cm.mode1)
    d2 = _det2(cm.mode2)
    dg = _det2(cm.gamma)
    delta = d1 + d2 + 2.0 * dg
    det = float(np.linalg.det(cm.m))
    disc = delta * delta - 4.0 * det
    if disc < -CLAMP_BAND:
        raise ValueError(f"symplectic discriminant {disc} is negative beyond rounding")
    disc = max(disc, 0.0)
    lo = max((delta - math.sqrt(disc)) / 2.0, 0.0)
    hi = max((delta + math.sqrt(disc)) / 2.0, 0.0)
    return math.sqrt(lo), math.sqrt(hi)


def entropy_f(x: float) -> float:
    """Bosonic entropy function of a symplectic eigenvalue, in nats.

    f(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), continuously
    extended by f(1/2) = 0. Values within the rounding band below 1/2 are
    clamped; anything lower is a domain error.
    """
    if x < 0.5 - CLAMP_BAND:
        raise ValueError(f"entropy argument {x} below the physical minimum 1/2")
    x = max(x, 0.5)
    plus = x + 0.5
    minus = x - 0.5
    term = minus * math.log(minus) if minus > 0.0 else 0.0
    return plus * math.log(plus) - term


def entanglement_entropy(cm: CovarianceMatrix4) -> tuple[float, float]:
    """Von Neumann entropy of each reduced mode, (f(nu1), f(nu2)) in nats.

    For a pure global state both values coincide and quantify the
    entanglement between the modes.
    """
    nu1, nu2 = reduced_symplectic_eigenvalues(cm)
    return entropy_f(nu1), entropy_f(nu2)


def ppt_min_symplectic(cm: CovarianceMatrix4) -> float:
    """Smallest symplectic eigenvalue of the partially transposed state.

    Partial transposition flips the sign of det gamma in the two-mode
    invariant: Delta_t = det sigma_1 + det sigma_2 - 2 det gamma and

        nu_t_minus = sqrt( (Delta_t - sqrt(Delta_t^2 - 4 det sigma)) / 2 ).

    The state is separable iff nu_t_minus >= 1/2.
    """
    d1 = _det2(cm.mode1)
    d2 = _det2(cm.mode2)
    dg = _det2(cm.gamma)
    delta_t = d1 + d2 - 2.0 * dg
    det = float(np.linalg.det(cm.m))
    disc = delta_t * delta_t - 4.0 * det
    if disc < -CLAMP_BAND:
        raise ValueError(f"PPT discriminant {disc} is negative beyond rounding")
    disc = max(disc, 0.0)
    val = (delta_t - math.sqrt(disc)) / 2.0
    return math.sqrt(max(val, 0.0))


def log_negativity(cm: CovarianceMatrix4) -> float:
    """Logarithmic negativity E_N = max(0, -ln(2 * nu_t_minus)), in nats.

    A nu_t_minus within the rounding band below 1/2 counts as exactly 1/2,
    so marginally separable states report a mathematical zero rather than a
    spurious positive value.
    """
    nu_t = ppt_min_symplectic(cm)
    if nu_t <= 0.0:
        raise ValueError("PPT eigenvalue collapsed to zero; not a physical state")
    if 0.5 - CLAMP_BAND <= nu_t < 0.5:
        nu_t = 0.5
    return max(0.0, -math.log(2.0 * nu_t))


def full_report(params: ModelParams, init: InitialState) -> EntanglementReport:
    """Assemble the covariance matrix once and evaluate every measure on it."""
    cm = assemble_cm(params, init)
    nu1, nu2 = reduced_symplectic_eigenvalues(cm)
    return EntanglementReport(
        nu1=nu1,
        nu2=nu2,
        entropy1=entropy_f(nu1),
        entropy2=entropy_f(nu2),
        nu_tilde_minus=ppt_min_symplectic(cm),
        log_negativity=log_negativity(cm),
    )
