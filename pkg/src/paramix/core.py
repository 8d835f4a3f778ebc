"""Closed-form dynamics of a two-mode parametric interaction with phase mismatch.

Two nondegenerate field modes are coupled by an undepleted classical pump in a
quadratic medium. Imperfect phase matching detunes the pump from the sum
frequency of the modes; the detuning-to-coupling ratio ``y`` weakens the
effective squeezing without changing its hyperbolic character as long as
``0 <= y < 1``. Everything here is dimensionless:

* ``tau``  - interaction time multiplied by the coupling rate g,
* ``y``    - detuning / g, restricted to the hyperbolic regime [0, 1),
* ``w1, w2`` - mode frequencies in units of g,
* ``x``    - sqrt(1 - y**2), so the squeezing parameter is ``r = tau * x``.

The Heisenberg solution is a generalized two-mode Bogoliubov transformation

    a1(tau)  = exp(-i*phi1) * (u * a1(0) + v * a2(0)^dag)
    a2(tau)^dag = exp(+i*phi2) * (conj(v) * a1(0) + conj(u) * a2(0)^dag)

with u = cosh(x*tau) + i*(y/x)*sinh(x*tau), v = i*sinh(x*tau)/x and local
phases phi_j = tau*(w_j + y). The pair |u|, |v| satisfies |u|^2 - |v|^2 = 1 for
every admissible (tau, y).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "Y_MAX",
    "TAU_VALIDITY_BOUND",
    "PumpDepletionWarning",
    "ModelParams",
    "Vacuum",
    "Coherent",
    "Thermal",
    "InitialState",
    "BogoliubovCoeffs",
    "bogoliubov_coefficients",
    "squeezing_parameter",
    "mean_photon_numbers",
    "photon_difference",
    "mean_vector",
]

# 1/x amplifies rounding noise without bound as y -> 1; beyond this point the
# hyperbolic formulas are numerically meaningless even though y < 1.
Y_MAX = 0.999999

# The undepleted-pump model is only trustworthy for tau < 1.
TAU_VALIDITY_BOUND = 1.0


class PumpDepletionWarning(UserWarning):
    """Interaction time beyond the validity bound of the undepleted-pump model."""


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless parameters of the two-mode parametric interaction.

    Parameters
    ----------
    y : float
        Phase mismatch (pump detuning over coupling rate). Must satisfy
        0 <= y < 1; values above ``Y_MAX`` are rejected because 1/x diverges.
    tau : float
        Interaction time in units of 1/g. Must be >= 0. Values above 1 are
        accepted with a :class:`PumpDepletionWarning`.
    w1, w2 : float
        Mode frequencies in units of g; must be positive. Only the local
        phases and the rotating-frame detuning depend on them.
    """

    y: float
    tau: float
    w1: float = 10.0
    w2: float = 10.0

    def __post_init__(self) -> None:
        if not (0.0 <= self.y < 1.0):
            raise ValueError(f"y must lie in [0, 1); got {self.y}")
        if self.y > Y_MAX:
            raise ValueError(
                f"y={self.y} is too close to the y=1 singularity; "
                f"supported range is y <= {Y_MAX}"
            )
        if self.tau < 0.0:
            raise ValueError(f"tau must be >= 0; got {self.tau}")
        if self.w1 <= 0.0 or self.w2 <= 0.0:
            raise ValueError(
                f"mode frequencies must be positive; got w1={self.w1}, w2={self.w2}"
            )
        if self.tau > TAU_VALIDITY_BOUND:
            warnings.warn(
                f"tau={self.tau} exceeds the undepleted-pump validity bound "
                f"tau < {TAU_VALIDITY_BOUND}; results are formally exact for the "
                "model but the model itself loses physical accuracy",
                PumpDepletionWarning,
                stacklevel=2,
            )

    @property
    def x(self) -> float:
        """sqrt(1 - y**2); the mismatch-reduced squeezing rate."""
        return math.sqrt(1.0 - self.y * self.y)

    @property
    def r(self) -> float:
        """Effective squeezing parameter tau * x."""
        return self.tau * self.x

    @property
    def w_bar(self) -> float:
        """Mean mode frequency (w1 + w2) / 2 in units of g."""
        return 0.5 * (self.w1 + self.w2)

    @property
    def half_detuning(self) -> float:
        """(w1 - w2) / 2; enters only the rotating-frame generator."""
        return 0.5 * (self.w1 - self.w2)

    @property
    def wprime1(self) -> float:
        """Shifted frequency w1 + y of mode 1 (local phase rate)."""
        return self.w1 + self.y

    @property
    def wprime2(self) -> float:
        """Shifted frequency w2 + y of mode 2 (local phase rate)."""
        return self.w2 + self.y


@dataclass(frozen=True)
class Vacuum:
    """Both modes start in the vacuum state."""

    def mean_occupations(self) -> tuple[float, float]:
        return (0.0, 0.0)

    def central_occupations(self) -> tuple[float, float]:
        return (0.0, 0.0)


@dataclass(frozen=True)
class Coherent:
    """Coherent seed of amplitude ``alpha`` in mode 1; mode 2 starts in vacuum.

    The seed displaces the state without adding noise: mean photon numbers
    grow with |alpha|^2, while every central (fluctuation) quantity is the
    same as for the vacuum input.
    """

    alpha: complex

    def mean_occupations(self) -> tuple[float, float]:
        return (abs(self.alpha) ** 2, 0.0)

    def central_occupations(self) -> tuple[float, float]:
        return (0.0, 0.0)


@dataclass(frozen=True)
class Thermal:
    """Uncorrelated thermal occupation in each mode."""

    n10: float
    n20: float

    def __post_init__(self) -> None:
        if not (self.n10 >= 0.0 and self.n20 >= 0.0):
            raise ValueError(
                f"thermal occupations must be >= 0; got ({self.n10}, {self.n20})"
            )

    def mean_occupations(self) -> tuple[float, float]:
        return (self.n10, self.n20)

    def central_occupations(self) -> tuple[float, float]:
        return (self.n10, self.n20)


InitialState = Union[Vacuum, Coherent, Thermal]


@dataclass(frozen=True)
class BogoliubovCoeffs:
    """Coefficients of the mode-mixing solution at a given (tau, y, w1, w2).

    ``u`` multiplies the same-mode annihilation operator, ``v`` the
    cross-mode creation operator; ``phi1``/``phi2`` are the accumulated local
    phases tau*(w_j + y). Mode 2 follows from the same pair by conjugation.
    """

    u: complex
    v: complex
    phi1: float
    phi2: float

    def phase1(self) -> complex:
        """exp(-i*phi1), the explicit phase factor of mode 1."""
        return cmath.exp(-1j * self.phi1)

    def phase2(self) -> complex:
        """exp(-i*phi2), the explicit phase factor of mode 2."""
        return cmath.exp(-1j * self.phi2)


def bogoliubov_coefficients(params: ModelParams) -> BogoliubovCoeffs:
    """Evaluate the two-mode Bogoliubov coefficients.

    Parameters
    ----------
    params : ModelParams

    Returns
    -------
    BogoliubovCoeffs
        u = cosh(x*tau) + i*(y/x)*sinh(x*tau), v = i*sinh(x*tau)/x, and the
        local phases phi_j = tau*(w_j + y).
    """
    x = params.x
    arg = x * params.tau
    c = math.cosh(arg)
    s = math.sinh(arg)
    u = complex(c, params.y * s / x)
    v = complex(0.0, s / x)
    return BogoliubovCoeffs(
        u=u, v=v, phi1=params.tau * params.wprime1, phi2=params.tau * params.wprime2
    )


def squeezing_parameter(params: ModelParams) -> float:
    """Effective squeezing parameter r = tau * sqrt(1 - y**2)."""
    return params.r


def _occupation_transfer(params: ModelParams) -> tuple[float, float]:
    # A = |u|^2 = (cosh^2 - y^2)/x^2, B = |v|^2 = sinh^2/x^2; A - B = 1.
    x2 = 1.0 - params.y * params.y
    arg = params.tau * params.x
    c = math.cosh(arg)
    s = math.sinh(arg)
    a = (c * c - params.y * params.y) / x2
    b = (s * s) / x2
    return a, b


def _photon_numbers(params: ModelParams, n10: float, n20: float) -> tuple[float, float]:
    a, b = _occupation_transfer(params)
    n1 = a * n10 + b * (n20 + 1.0)
    n2 = a * n20 + b * (n10 + 1.0)
    return n1, n2


def mean_photon_numbers(params: ModelParams, init: InitialState) -> tuple[float, float]:
    """Mean photon numbers of both modes after the interaction.

    Each mode's occupation is a fixed linear transfer of the input
    occupations,

        <n_j> = [ (cosh^2(x*tau) - y^2) * n_j0
                  + sinh^2(x*tau) * (n_k0 + 1) ] / (1 - y^2),   k != j,

    where a coherent seed enters through n_10 = |alpha|^2. The ``+1`` is the
    spontaneous contribution that seeds pair production from vacuum.

    Parameters
    ----------
    params : ModelParams
    init : InitialState

    Returns
    -------
    (float, float)
        (<n_1>, <n_2>) at time tau.
    """
    n10, n20 = init.mean_occupations()
    return _photon_numbers(params, n10, n20)


def photon_difference(params: ModelParams, init: InitialState) -> float:
    """<n_1> - <n_2>, conserved and equal to its input value n_10 - n_20."""
    n1, n2 = mean_photon_numbers(params, init)
    return n1 - n2


def mean_vector(params: ModelParams, init: InitialState) -> np.ndarray:
    """First moments of the quadratures in ordering (x1, p1, x2, p2).

    Quadrature convention x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i*sqrt(2)),
    so <x> = sqrt(2)*Re<a> and <p> = sqrt(2)*Im<a>. Only a coherent seed gives
    a nonzero mean; it is amplified into both modes,

        <a1> = exp(-i*phi1) * u * alpha
        <a2> = exp(-i*phi2) * v * conj(alpha).

    Returns
    -------
    numpy.ndarray
        Shape (4,) float64 vector.
    """
    if not isinstance(init, Coherent):
        return np.zeros(4)
    coeffs = bogoliubov_coefficients(params)
    alpha = complex(init.alpha)
    a1 = coeffs.phase1() * coeffs.u * alpha
    a2 = coeffs.phase2() * coeffs.v * alpha.conjugate()
    root2 = math.sqrt(2.0)
    return np.array(
        [root2 * a1.real, root2 * a1.imag, root2 * a2.real, root2 * a2.imag]
    )
