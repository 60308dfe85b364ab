"""Closed-form solutions of the Schrodinger equation for the well family.

Two equivalent representations of the fundamental solutions are provided,
each an irreducible combination of two Gauss hypergeometric functions:

* ``psi_fundamental`` - prefactor times F(alpha,beta;gamma;s) plus a fixed
  multiple of F(alpha,beta;gamma-1;s), with s = (a-z)/(a-1);
* ``psi_general``    - prefactor times (F + (z-a)/(alpha1 + a*alpha2) dF/dz)
  where F mixes the two Kummer solutions with coefficients (c1, c2).

Bound states are the c1 = 0 members (the c1 term diverges at the outer
endpoint z -> 1).  At E = 0 the second Kummer solution degenerates (its
lower parameter 2*alpha2 vanishes) and ``psi_zero_energy`` supplies the
replacement, written through a pair of Clausen 3F2 functions with the
mixing coefficient fixed by psi(z=0) = 0.

Powers of the prefactor are taken of positive bases on the well branch
(z - a for a < 0, a - z for a > 1, and 1 - z), with the constant phases
folded into the overall normalization, so real parameters stay in real
arithmetic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .potential import PotentialParams, dz_dx, potential_on_grid, z_limits, z_of_x, z_of_x_array

__all__ = [
    "WaveSolution",
    "DegenerateParameterError",
    "psi_fundamental",
    "fundamental_values",
    "psi_general",
    "psi_general_z",
    "psi_general_values",
    "psi_and_derivative_z",
    "psi_zero_energy",
    "zero_energy_values",
    "zero_energy_alpha1",
    "wronskian",
    "ode_residual",
    "ode_residual_values",
]

DEGENERATE_TOL = 1e-12


class DegenerateParameterError(ArithmeticError):
    """Measure-zero parameter event (vanishing solution denominator or the
    E = 0 degeneracy of the second Kummer solution)."""


@dataclass(frozen=True)
class WaveSolution:
    """General solution instance: energy, sign choices for (alpha1, alpha2)
    and mixing coefficients (c1, c2).  Bound states have c1 = 0."""

    params: PotentialParams
    E: float
    c1: complex = 0.0
    c2: complex = 1.0
    signs: tuple = (1, 1)

    def __post_init__(self):
        if self.c1 == 0 and self.c2 == 0:
            raise ValueError("invariant violated: at least one of c1, c2 must be nonzero")

    def is_bound_form(self) -> bool:
        return self.c1 == 0


def _sign_exponents(E, p, signs):
    k2 = p.kappa2()
    a = p.a
    a0 = cmath.sqrt(k2 * (a - 1.0) ** 2 * (p.V0 - E))
    a1 = signs[0] * cmath.sqrt(k2 * a * a * (p.V0 - E + p.V1 / a))
    a2 = signs[1] * cmath.sqrt(k2 * (p.V0 - E + p.V1))
    return a0, a1, a2


def _bases(z, p):
    """Positive prefactor bases (|z-a|, 1-z) on the well branch."""
    b1 = z - p.a if p.a < 0 else p.a - z
    return b1, 1.0 - z


def _check_branch(z, p):
    lo, hi = z_limits(p)
    if not (lo < z < hi):
        raise ValueError(f"z={z} is off the {p.variant} branch ({lo}, {hi})")


def psi_fundamental(z: float, E: float, p: PotentialParams, signs=(1, 1)) -> complex:
    """Fundamental solution in the two-term contiguous form.

    psi = (z-a)^a1 (1-z)^a2 [F(al,be;ga;s) + 2 a1/(a a2 - a1) F(al,be;ga-1;s)]
    with s = (a-z)/(a-1) and (al, be, ga) = (a1+a2+a0, a1+a2-a0, 1+2 a1).
    Sign flips of (alpha1, alpha2) select the other members of the
    fundamental system.
    """
    _check_branch(z, p)
    a = p.a
    a0, a1, a2 = _sign_exponents(E, p, signs)
    den = a * a2 - a1
    scale = max(1.0, abs(a * a2), abs(a1))
    if abs(den) < DEGENERATE_TOL * scale:
        raise DegenerateParameterError(
            f"a*alpha2 - alpha1 = {den} vanishes; perturb parameters or use "
            "the derivative form (psi_general)"
        )
    al, be, ga = a1 + a2 + a0, a1 + a2 - a0, 1.0 + 2.0 * a1
    s = (a - z) / (a - 1.0)
    b1, b2 = _bases(z, p)
    pref = cmath.exp(a1 * math.log(b1) + a2 * math.log(b2))
    return pref * (
        specfun.gauss_2f1(al, be, ga, s)
        + 2.0 * a1 / den * specfun.gauss_2f1(al, be, ga - 1.0, s)
    )


def fundamental_values(E, p: PotentialParams, xs, signs=(1, 1)) -> np.ndarray:
    """``psi_fundamental`` sampled on an x-grid (vectorized)."""
    xs = np.asarray(xs, dtype=float)
    z, _ = z_of_x_array(xs, p)
    a = p.a
    a0, a1, a2 = _sign_exponents(E, p, signs)
    den = a * a2 - a1
    if abs(den) < DEGENERATE_TOL * max(1.0, abs(a * a2), abs(a1)):
        raise DegenerateParameterError("a*alpha2 - alpha1 vanishes")
    al, be, ga = a1 + a2 + a0, a1 + a2 - a0, 1.0 + 2.0 * a1
    s = (a - z) / (a - 1.0)
    b1 = z - a if a < 0 else a - z
    pref = np.exp(a1 * np.log(b1) + a2 * np.log1p(-z))
    return pref * (
        specfun.gauss_2f1_array(al, be, ga, s)
        + 2.0 * a1 / den * specfun.gauss_2f1_array(al, be, ga - 1.0, s)
    )


def _general_setup(ws: WaveSolution):
    p = ws.params
    a = p.a
    a0, a1, a2 = _sign_exponents(ws.E, p, ws.signs)
    al, be, ga = a1 + a2 + a0, a1 + a2 - a0, 1.0 + 2.0 * a1
    c2low = 1.0 + al + be - ga  # = 2*alpha2
    if ws.c2 != 0 and abs(c2low) < DEGENERATE_TOL * max(1.0, abs(al) + abs(be)):
        raise DegenerateParameterError(
            "the second Kummer solution degenerates (lower parameter "
            "1+alpha+beta-gamma = 0, the E = 0 case); use psi_zero_energy"
        )
    den = a1 + a * a2
    if abs(den) < DEGENERATE_TOL * max(1.0, abs(a1), abs(a * a2)):
        raise DegenerateParameterError(
            f"alpha1 + a*alpha2 = {den} vanishes; the derivative form is "
            "singular at these parameters"
        )
    return a, a1, a2, al, be, ga, c2low, den


def psi_general_z(z: float, ws: WaveSolution) -> complex:
    """General solution evaluated at a point of the z-branch."""
    p = ws.params
    _check_branch(z, p)
    a, a1, a2, al, be, ga, c2low, den = _general_setup(ws)
    s = (a - z) / (a - 1.0)
    t = (z - 1.0) / (a - 1.0)
    F = 0.0 + 0.0j
    dF = 0.0 + 0.0j
    if ws.c1 != 0:
        F += ws.c1 * specfun.gauss_2f1(al, be, ga, s)
        dF += ws.c1 * specfun.gauss_2f1_dz(al, be, ga, s) / (1.0 - a)
    if ws.c2 != 0:
        F += ws.c2 * specfun.gauss_2f1(al, be, c2low, t)
        dF += ws.c2 * specfun.gauss_2f1_dz(al, be, c2low, t) / (a - 1.0)
    b1, b2 = _bases(z, p)
    pref = cmath.exp(a1 * math.log(b1) + a2 * math.log(b2))
    return pref * (F + (z - a) / den * dF)


def psi_general(x: float, ws: WaveSolution) -> complex:
    """General solution evaluated at a point of the x-image."""
    return psi_general_z(z_of_x(x, ws.params), ws)


def psi_general_values(ws: WaveSolution, xs) -> np.ndarray:
    """General solution sampled on an x-grid (vectorized)."""
    p = ws.params
    xs = np.asarray(xs, dtype=float)
    z, _ = z_of_x_array(xs, p)
    a, a1, a2, al, be, ga, c2low, den = _general_setup(ws)
    s = (a - z) / (a - 1.0)
    t = (z - 1.0) / (a - 1.0)
    F = np.zeros(z.shape, dtype=complex)
    dF = np.zeros(z.shape, dtype=complex)
    if ws.c1 != 0:
        F += ws.c1 * specfun.gauss_2f1_array(al, be, ga, s)
        dF += ws.c1 * (al * be / ga) * specfun.gauss_2f1_array(al + 1, be + 1, ga + 1, s) / (1.0 - a)
    if ws.c2 != 0:
        F += ws.c2 * specfun.gauss_2f1_array(al, be, c2low, t)
        dF += ws.c2 * (al * be / c2low) * specfun.gauss_2f1_array(al + 1, be + 1, c2low + 1, t) / (a - 1.0)
    b1 = z - a if a < 0 else a - z
    pref = np.exp(a1 * np.log(b1) + a2 * np.log1p(-z))
    return pref * (F + (z - a) / den * dF)


def psi_and_derivative_z(z: float, ws: WaveSolution):
    """(psi, dpsi/dz) of the general solution at a z-point.

    The z-derivative combines the logarithmic derivative of the prefactor
    with dG/dz of the bracket G = F + (z-a)/(a1 + a*a2) dF/dz; the second
    derivative of each 2F1 is taken by the exact parameter-shift rule.
    """
    p = ws.params
    _check_branch(z, p)
    a, a1, a2, al, be, ga, c2low, den = _general_setup(ws)
    s = (a - z) / (a - 1.0)
    t = (z - 1.0) / (a - 1.0)
    ds = 1.0 / (1.0 - a)
    dt = 1.0 / (a - 1.0)

    F = 0.0 + 0.0j
    dF = 0.0 + 0.0j
    d2F = 0.0 + 0.0j
    if ws.c1 != 0:
        F += ws.c1 * specfun.gauss_2f1(al, be, ga, s)
        f1p = specfun.gauss_2f1_dz(al, be, ga, s)
        f1pp = (al * be / ga) * specfun.gauss_2f1_dz(al + 1.0, be + 1.0, ga + 1.0, s)
        dF += ws.c1 * f1p * ds
        d2F += ws.c1 * f1pp * ds * ds
    if ws.c2 != 0:
        F += ws.c2 * specfun.gauss_2f1(al, be, c2low, t)
        f2p = specfun.gauss_2f1_dz(al, be, c2low, t)
        f2pp = (al * be / c2low) * specfun.gauss_2f1_dz(al + 1.0, be + 1.0, c2low + 1.0, t)
        dF += ws.c2 * f2p * dt
        d2F += ws.c2 * f2pp * dt * dt

    b1, b2 = _bases(z, p)
    pref = cmath.exp(a1 * math.log(b1) + a2 * math.log(b2))
    G = F + (z - a) / den * dF
    dG = dF + dF / den + (z - a) / den * d2F
    psi = pref * G
    dpsi = psi * (a1 / (z - a) + a2 / (z - 1.0)) + pref * dG
    return psi, dpsi


def wronskian(ws_plus: WaveSolution, ws_minus: WaveSolution, x: float) -> complex:
    """psi_+ psi_-' - psi_+' psi_- through the chain rule in z(x).

    Constant in x (the equation has no first-derivative term) and nonzero
    exactly when the two solutions are independent.
    """
    if ws_plus.params != ws_minus.params or ws_plus.E != ws_minus.E:
        raise ValueError("Wronskian requires both solutions at the same (E, params)")
    z = z_of_x(x, ws_plus.params)
    zp = dz_dx(z, ws_plus.params)
    fp, dfp = psi_and_derivative_z(z, ws_plus)
    fm, dfm = psi_and_derivative_z(z, ws_minus)
    return fp * (dfm * zp) - (dfp * zp) * fm


# ---------------------------------------------------------------------------
# zero-energy solution

def zero_energy_alpha1(p: PotentialParams) -> float:
    """Exponent sqrt(2 a (a-1) m sigma^2 V0 / hbar^2) of the E = 0 pair."""
    rad = p.kappa2() * p.a * (p.a - 1.0) * p.V0
    if rad < 0:
        raise ValueError("zero-energy exponent is imaginary for these parameters")
    return math.sqrt(rad)


def _zero_energy_f2_args(p):
    a = p.a
    al1 = zero_energy_alpha1(p)
    k3 = math.sqrt((a - 1.0) / a)
    first = (al1 - k3 * al1, al1 + k3 * al1, 1.0 + al1, al1, 1.0 + 2.0 * al1)
    second = (-k3 * al1 - al1, k3 * al1 - al1, 1.0 - al1 / a, -al1 / a, 1.0)
    return al1, first, second


def zero_energy_values(p: PotentialParams, xs, c1: complex = 1.0) -> np.ndarray:
    """Zero-energy solution on an x-grid.

    psi_0 = c1 (z-a)^a1 3F2(...; (a-z)/(a-1))
          + c2 (z-a)^(-a1) 3F2(...; (z-1)/(a-1)),
    with c2 fixed by psi_0(z=0) = 0.  Grows like a constant plus
    B*ln(1-z) at large x.  The first 3F2 argument approaches 1 in the far
    tail, so the grid must stay where the series converges (the default
    node-counting window does).
    """
    if p.variant != "well":
        raise ValueError("the zero-energy solution is defined on the well branch")
    if p.a > 1.0:
        raise ValueError(
            "the Clausen representation needs a < 0 (its first argument "
            "exceeds 1 near z = 0 for a > 1)"
        )
    xs = np.asarray(xs, dtype=float)
    a = p.a
    al1, f1args, f2args = _zero_energy_f2_args(p)
    z, _ = z_of_x_array(xs, p)

    def term1(zv):
        u = (a - zv) / (a - 1.0)
        h = specfun.clausen_3f2_array(*f1args, u)
        return np.exp(al1 * np.log(zv - a)) * h

    def term2(zv):
        t = (zv - 1.0) / (a - 1.0)
        h = specfun.clausen_3f2_array(*f2args, t)
        return np.exp(-al1 * np.log(zv - a)) * h

    z0 = np.array([0.0])
    c2 = -c1 * term1(z0)[0] / term2(z0)[0]
    out = c1 * term1(z) + c2 * term2(z)
    if np.max(np.abs(out.imag)) <= 1e-12 * max(np.max(np.abs(out.real)), 1e-300):
        return out.real
    return out


def psi_zero_energy(x: float, p: PotentialParams, c1: complex = 1.0):
    """Zero-energy solution at a point (see ``zero_energy_values``)."""
    return zero_energy_values(p, np.array([float(x)]), c1)[0]


# ---------------------------------------------------------------------------
# finite-difference consistency

def ode_residual_values(xs: np.ndarray, vals: np.ndarray, E: float, p: PotentialParams) -> float:
    """Normalized second-order residual of psi'' + (2m/hbar^2)(E - V) psi.

    ``vals`` are samples on the uniform grid ``xs``; the residual is the
    max over interior nodes of |d2 psi/h^2 + (2m/hbar^2)(E-V) psi| divided
    by the max of the |(2m/hbar^2)(E-V) psi| scale.
    """
    xs = np.asarray(xs, dtype=float)
    vals = np.asarray(vals)
    h = xs[1] - xs[0]
    V = potential_on_grid(xs, p)
    if h * h * np.max(np.abs(V)) >= 1.0:
        raise ValueError("grid too coarse: h^2 * max|V| must stay below 1")
    coef = 2.0 * p.m / p.hbar**2
    d2 = (vals[2:] - 2.0 * vals[1:-1] + vals[:-2]) / (h * h)
    res = d2 + coef * (E - V[1:-1]) * vals[1:-1]
    scale = np.max(np.abs(coef * (E - V[1:-1]) * vals[1:-1]))
    if scale == 0.0:
        scale = max(float(np.max(np.abs(d2))), 1.0)
    return float(np.max(np.abs(res)) / scale)


def ode_residual(ws: WaveSolution, x_start: float, x_stop: float, h: float) -> float:
    """ODE residual of the general solution over [x_start, x_stop] at step h."""
    n = int(round((x_stop - x_start) / h)) + 1
    xs = x_start + h * np.arange(n)
    vals = psi_general_values(ws, xs)
    return ode_residual_values(xs, vals, ws.E, ws.params)
