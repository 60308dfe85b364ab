"""Reduction of the Schrodinger problem to the general Heun equation.

For the potential family V = V0 + V1/z + V2/z^2 + V3/z^3 + V4/z^4 under the
log coordinate map, the transformed equation is a general Heun equation with
singularities (a, 1, 0) and coordinate-map exponent triad (1, 1, -1).  This
module computes the local exponents, the Heun parameters
(alpha, beta, gamma, delta, epsilon) and the accessory parameter q, and
exposes the epsilon = -1 series-termination residual

    q^2 + q*(gamma - 1 + a*(delta - 1)) + a*alpha*beta

whose vanishing licenses the closed two-term hypergeometric solutions used
by the wavefunction module.  For the five-parameter family (V2=V3=V4=0) the
residual vanishes identically in E; for V4=0 with V2, V3 free it reduces to
an E-independent constraint on (V2, V3) selecting a conditionally
integrable surface.

Convention: the equations below are normalized to a coordinate scale
sigma_h = (1-a)*sigma, where sigma is the scale in PotentialParams.  The
conversion is applied here, once, so callers only ever see the potential's
own sigma.  Only sigma_h^2 enters, so its sign is irrelevant.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .potential import PotentialParams

__all__ = [
    "GeneralPotentialCoeffs",
    "HeunData",
    "exponents",
    "heun_params",
    "heun_params_general",
    "exponent_equations_general",
    "termination_check",
    "conditional_family_check",
]


@dataclass(frozen=True)
class GeneralPotentialCoeffs:
    """Coefficients of V0 + V1/z + V2/z^2 + V3/z^3 + V4/z^4."""

    V0: float
    V1: float
    V2: float = 0.0
    V3: float = 0.0
    V4: float = 0.0

    def is_exactly_solvable(self) -> bool:
        """Independent parameters require V2 = V3 = V4 = 0."""
        return self.V2 == 0.0 and self.V3 == 0.0 and self.V4 == 0.0


@dataclass(frozen=True)
class HeunData:
    """Heun-equation data for one energy: singularities (a, 1, 0), map triad
    (1, 1, -1), local exponents, parameters and the accessory parameter."""

    a1: float
    a2: float
    a3: float
    alpha0: complex
    alpha1: complex
    alpha2: complex
    alpha3: complex
    alpha: complex
    beta: complex
    gamma: complex
    delta: complex
    epsilon: complex
    q: complex
    E: float
    m1: int = 1
    m2: int = 1
    m3: int = -1

    def fuchs_residual(self) -> float:
        """|1 + alpha + beta - (gamma + delta + epsilon)| (zero by construction)."""
        return abs(1.0 + self.alpha + self.beta - (self.gamma + self.delta + self.epsilon))

    def to_flat_dict(self) -> dict:
        out = {"a1": self.a1, "a2": self.a2, "a3": self.a3,
               "m1": self.m1, "m2": self.m2, "m3": self.m3, "E": self.E}
        for name in ("alpha0", "alpha1", "alpha2", "alpha3",
                     "alpha", "beta", "gamma", "delta", "epsilon", "q"):
            v = complex(getattr(self, name))
            out[name + "_re"] = v.real
            out[name + "_im"] = v.imag
        return out


def _hsq(p: PotentialParams) -> float:
    """2 m sigma_h^2 / hbar^2 with sigma_h = (1-a) sigma."""
    return p.kappa2() * (1.0 - p.a) ** 2


def exponents(E: float, p: PotentialParams):
    """Principal local exponents (alpha0, alpha1, alpha2) of the
    five-parameter family at energy E.

    alpha0^2 = K (a-1)^2 (V0 - E),  alpha1^2 = K a^2 (V0 - E + V1/a),
    alpha2^2 = K (V0 - E + V1),     K = 2 m sigma^2 / hbar^2.

    Principal square roots; callers flip signs via the ``signs`` arguments
    of the consumers.  Results are complex when a radicand is negative.
    """
    k2 = p.kappa2()
    a = p.a
    a0 = cmath.sqrt(k2 * (a - 1.0) ** 2 * (p.V0 - E))
    a1 = cmath.sqrt(k2 * a * a * (p.V0 - E + p.V1 / a))
    a2 = cmath.sqrt(k2 * (p.V0 - E + p.V1))
    return a0, a1, a2


def exponent_equations_general(E: float, coeffs: GeneralPotentialCoeffs, p: PotentialParams):
    """Exponent equations of the full four-singular-term family.

    Returns ``(alpha1_sq, alpha2_sq, (alpha3_minus, alpha3_plus))``: the two
    quadratic radicands and both roots of alpha3*(alpha3 - 2) = H*V4/a^2,
    H = 2 m sigma_h^2/hbar^2.  The exactly solvable branch takes alpha3 = 0
    (which forces V4 = 0).
    """
    a = p.a
    H = _hsq(p)
    a1sq = H / (a * a * (a - 1.0) ** 2) * (
        coeffs.V4 + a * coeffs.V3 + a * a * coeffs.V2
        + a**3 * coeffs.V1 + a**4 * (coeffs.V0 - E)
    )
    a2sq = -H / (a - 1.0) ** 2 * (
        E - coeffs.V0 - coeffs.V1 - coeffs.V2 - coeffs.V3 - coeffs.V4
    )
    disc = cmath.sqrt(1.0 + H * coeffs.V4 / (a * a))
    return a1sq, a2sq, (1.0 - disc, 1.0 + disc)


def _accessory_q(E, a, H, V1, alpha1, alpha2, alpha3):
    """Accessory parameter of the (a, 1, 0) normalization."""
    return (
        H * (V1 - (1.0 + a) * (E - 0.0))  # caller passes E already shifted by V0
        + (-alpha2**2 + (-1.0 + alpha1 + alpha3) * (alpha1 + alpha3))
        + a * (-alpha1**2 + (-1.0 + alpha2 + alpha3) * (alpha2 + alpha3))
    )


def heun_params_general(
    E: float,
    coeffs: GeneralPotentialCoeffs,
    p: PotentialParams,
    signs=(1, 1),
) -> HeunData:
    """HeunData for the four-singular-term family with V4 = 0.

    Takes the alpha3 = 0 branch (so epsilon = -1).  ``signs`` flips
    (alpha1, alpha2) off their principal roots.
    """
    if coeffs.V4 != 0.0:
        raise ValueError("the epsilon = -1 branch requires V4 = 0")
    a = p.a
    H = _hsq(p)
    a1sq, a2sq, (a3, _) = exponent_equations_general(E, coeffs, p)
    alpha1 = signs[0] * cmath.sqrt(a1sq)
    alpha2 = signs[1] * cmath.sqrt(a2sq)
    alpha3 = a3  # exactly 0 for V4 = 0
    gamma = 1.0 + 2.0 * alpha1
    delta = 1.0 + 2.0 * alpha2
    epsilon = -1.0 + 2.0 * alpha3
    ab = (alpha1 + alpha2 + alpha3) ** 2 + H * (E - coeffs.V0)
    s = gamma + delta + epsilon - 1.0  # alpha + beta
    d = cmath.sqrt(s * s - 4.0 * ab)
    alpha = 0.5 * (s + d)
    beta = 0.5 * (s - d)
    q = _accessory_q(E - coeffs.V0, a, H, coeffs.V1, alpha1, alpha2, alpha3)
    return HeunData(
        a1=a, a2=1.0, a3=0.0,
        alpha0=0.5 * d, alpha1=alpha1, alpha2=alpha2, alpha3=alpha3,
        alpha=alpha, beta=beta, gamma=gamma, delta=delta, epsilon=epsilon,
        q=q, E=E,
    )


def heun_params(E: float, p: PotentialParams, signs=(1, 1, 1)) -> HeunData:
    """HeunData of the five-parameter family (V2 = V3 = V4 = 0).

    ``signs = (s0, s1, s2)`` flips (alpha0, alpha1, alpha2) off their
    principal roots; (alpha, beta, gamma) follow as
    (a1 + a2 + a0, a1 + a2 - a0, 1 + 2 a1).
    """
    a = p.a
    a0, a1, a2 = exponents(E, p)
    a0, a1, a2 = signs[0] * a0, signs[1] * a1, signs[2] * a2
    gamma = 1.0 + 2.0 * a1
    delta = 1.0 + 2.0 * a2
    q = _accessory_q(E - p.V0, a, _hsq(p), p.V1, a1, a2, 0.0)
    return HeunData(
        a1=a, a2=1.0, a3=0.0,
        alpha0=a0, alpha1=a1, alpha2=a2, alpha3=0.0,
        alpha=a1 + a2 + a0, beta=a1 + a2 - a0,
        gamma=gamma, delta=delta, epsilon=-1.0 + 0.0j,
        q=q, E=E,
    )


def termination_check(h: HeunData) -> float:
    """Residual of the epsilon = -1 termination condition,

        |q^2 + q*(gamma - 1 + a*(delta - 1)) + a*alpha*beta|.

    Vanishes (to rounding) for every energy of the exactly solvable family;
    a nonzero value flags parameters outside it.
    """
    if abs(h.epsilon + 1.0) > 1e-12:
        raise ValueError(f"termination condition stated for epsilon = -1, got {h.epsilon}")
    a = h.a1
    return abs(h.q**2 + h.q * (h.gamma - 1.0 + a * (h.delta - 1.0)) + a * h.alpha * h.beta)


def conditional_family_check(coeffs: GeneralPotentialCoeffs, p: PotentialParams) -> float:
    """Residual of the conditionally integrable surface for V4 = 0:

        V2 + V3*((1+a)/a - H*V3/a^2),   H = 2 m sigma_h^2 / hbar^2.

    Zero identifies potentials whose termination condition holds only by
    tying V2 to V3; V2 = V3 = 0 satisfies it identically (the exactly
    solvable family).
    """
    if coeffs.V4 != 0.0:
        raise ValueError("the check applies to the V4 = 0 branch")
    a = p.a
    H = _hsq(p)
    return coeffs.V2 + coeffs.V3 * ((1.0 + a) / a - H * coeffs.V3 / (a * a))
