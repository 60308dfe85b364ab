"""The five-parameter potential V = V0 + V1/z with log-parametrized coordinate.

The coordinate map is x(z) = x0 + sigma*(a*ln(z-a) - ln(z-1)) up to a
variant-dependent real shift.  Two real branches exist:

* ``well``:    z in (0, 1), a < 0 or a > 1.  A singular short-range well
  that diverges like 1/sqrt(x-x0) at the left edge and approaches V0+V1
  exponentially at large x.
* ``barrier``: z in (1, inf) for a < 1, z in (1, a) for a > 1.  A smooth
  asymmetric step between the plateaus V0+V1 and V0 (or V0+V1/a).

After folding the shift constants into the logarithms both branches are
evaluated in purely real arithmetic:

    well:     x = x0 + sigma*(a*ln((z-a)/(-a))  - ln(1-z))   (a < 0)
    barrier:  x = x0 + sigma*(a*ln(|z-a|/|1-a|) - ln(z-1))

The map is strictly monotone on each branch with
dz/dx = (z-a)(z-1) / (sigma*(a-1)*z); inversion is done by bisection in a
branch-adapted variable so that both z and its distance to the nearest
branch endpoint stay accurate to machine precision, then polished with
Newton steps using the exact dz/dx.

Closed-form members of the family (quadratic and cubic inversions of the
coordinate map) are provided as ``closed_form_a_minus1`` and
``closed_form_cubic``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PotentialParams",
    "GridFunction",
    "InversionError",
    "x_of_z",
    "z_of_x",
    "z_of_x_array",
    "dz_dx",
    "z_limits",
    "potential_value",
    "potential_on_grid",
    "sample_potential",
    "closed_form_a_minus1",
    "closed_form_cubic",
    "a_minus1_z",
    "cubic_z",
    "CUBIC_BRANCH_A",
    "asymptote_origin",
    "asymptote_infinity",
    "origin_coefficient",
    "tail_coefficient",
]

# Effective branch constants of the closed cubic form: it coincides with the
# parametric barrier branch at a = -2 once sigma is negated and x0 shifted
# by sigma*ln(9/4).
CUBIC_BRANCH_A = -2.0

# Below this offset from the singular edge the well potential is evaluated
# from its origin asymptote (V1/z would round through the z ~ sqrt(x-x0)
# inversion noise).
ORIGIN_GUARD = 1e-10

_U_MAX = 700.0  # logit/log bisection range; covers z within ~1e-304 of an endpoint


class InversionError(ArithmeticError):
    """Coordinate inversion failed to bracket the target (never silent)."""


@dataclass(frozen=True)
class PotentialParams:
    """Physical parameter record: shape (a), scale (sigma), position (x0),
    strengths (V0, V1), branch selector and particle constants."""

    a: float
    sigma: float
    x0: float
    V0: float
    V1: float
    variant: str = "well"
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.a in (0.0, 1.0):
            raise ValueError(f"invariant violated: a must not be 0 or 1 (a={self.a})")
        if self.sigma == 0.0:
            raise ValueError("invariant violated: sigma must be nonzero")
        if self.m <= 0.0:
            raise ValueError(f"invariant violated: m must be positive (m={self.m})")
        if self.hbar <= 0.0:
            raise ValueError(f"invariant violated: hbar must be positive (hbar={self.hbar})")
        if self.variant not in ("well", "barrier"):
            raise ValueError(f"invariant violated: variant must be well|barrier, got {self.variant!r}")
        if self.variant == "well" and 0.0 < self.a < 1.0:
            raise ValueError(
                "invariant violated: the well branch z in (0,1) requires a < 0 or a > 1"
            )

    def kappa2(self) -> float:
        """2 m sigma^2 / hbar^2, the recurring energy-to-exponent scale."""
        return 2.0 * self.m * self.sigma**2 / self.hbar**2

    def as_dict(self) -> dict:
        return {
            "a": self.a, "sigma": self.sigma, "x0": self.x0,
            "V0": self.V0, "V1": self.V1, "variant": self.variant,
            "m": self.m, "hbar": self.hbar,
        }


@dataclass(frozen=True)
class GridFunction:
    """Uniformly sampled real function: the shared currency of the samplers
    and the shooting solver."""

    x_start: float
    x_step: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.x_step <= 0.0:
            raise ValueError("invariant violated: x_step must be positive")
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("grid needs at least two samples")
        if vals.size > 2 and not np.all(np.isfinite(vals[1:-1])):
            raise ValueError("invariant violated: interior samples must be finite")

    def x(self) -> np.ndarray:
        return self.x_start + self.x_step * np.arange(self.values.size)

    def write_csv(self, stream, params: dict, columns=("x", "V"), fmt="%.14e"):
        """Two-column CSV with a single '#' header line carrying the full
        parameter record."""
        meta = " ".join(f"{k}={v}" for k, v in params.items())
        stream.write(f"# {meta} columns={','.join(columns)}\n")
        for xv, yv in zip(self.x(), self.values):
            stream.write((fmt % xv) + "," + (fmt % yv) + "\n")


def z_limits(p: PotentialParams) -> tuple[float, float]:
    """Open z-interval of the variant branch."""
    if p.variant == "well":
        return (0.0, 1.0)
    if p.a < 1.0:
        return (1.0, math.inf)
    return (1.0, p.a)


def x_of_z(z: float, p: PotentialParams) -> float:
    """Coordinate map with the variant shift folded in (real arithmetic)."""
    a, s = p.a, p.sigma
    lo, hi = z_limits(p)
    if not (lo < z < hi):
        raise ValueError(f"z={z} is off the {p.variant} branch ({lo}, {hi})")
    if p.variant == "well":
        return p.x0 + s * (a * math.log(abs(z - a) / abs(a)) - math.log1p(-z))
    return p.x0 + s * (a * math.log(abs(z - a) / abs(1.0 - a)) - math.log(z - 1.0))


def dz_dx(z, p: PotentialParams):
    """Exact derivative of the inverse map: (z-a)(z-1)/(sigma (a-1) z)."""
    return (z - p.a) * (z - 1.0) / (p.sigma * (p.a - 1.0) * z)


def _sigmoid(u):
    return np.where(u >= 0, 1.0 / (1.0 + np.exp(-u)), np.exp(u) / (1.0 + np.exp(u)))


def _x_from_u(u, p: PotentialParams):
    """x as a function of the branch-adapted bisection variable u.

    well:          z = sigmoid(u), 1-z = sigmoid(-u)
    barrier a < 1: z - 1 = exp(u)
    barrier a > 1: z - 1 = (a-1) sigmoid(u), a - z = (a-1) sigmoid(-u)
    """
    a, s = p.a, p.sigma
    if p.variant == "well":
        z = _sigmoid(u)
        w = _sigmoid(-u)
        return p.x0 + s * (a * np.log(np.abs(z - a) / abs(a)) - np.log(w))
    if a < 1.0:
        zm1 = np.exp(u)
        return p.x0 + s * (a * np.log((zm1 + (1.0 - a)) / (1.0 - a)) - u)
    t = _sigmoid(u)
    tm = _sigmoid(-u)
    return p.x0 + s * (a * np.log(tm) - np.log((a - 1.0) * t))


def _z_from_u(u, p: PotentialParams):
    """(z, distance to the far branch endpoint) from the bisection variable."""
    if p.variant == "well":
        return _sigmoid(u), _sigmoid(-u)
    if p.a < 1.0:
        zm1 = np.exp(u)
        return 1.0 + zm1, zm1
    t = _sigmoid(u)
    return 1.0 + (p.a - 1.0) * t, (p.a - 1.0) * _sigmoid(-u)


def z_of_x_array(xs, p: PotentialParams):
    """Vectorized inversion of the coordinate map.

    Returns ``(z, edge)`` where ``edge`` is z's exact distance to the branch
    endpoint that carries the tail (1-z on the well branch, z-1 or a-z on the
    barrier branches); the potential tail V1*edge/(...) stays accurate even
    where z itself rounds to the endpoint.
    """
    xs = np.asarray(xs, dtype=float)
    increasing = _x_from_u(np.array(_U_MAX), p) > _x_from_u(np.array(-_U_MAX), p)
    xl = float(_x_from_u(np.array(-_U_MAX), p))
    xr = float(_x_from_u(np.array(_U_MAX), p))
    xmin, xmax = (xl, xr) if increasing else (xr, xl)
    bad = (xs < xmin) | (xs > xmax)
    if np.any(bad):
        xbad = xs[bad].flat[0]
        raise InversionError(
            f"x={xbad} is outside the {p.variant}-branch image "
            f"[{xmin:.6g}, {xmax:.6g}]; no bracket exists"
        )
    lo = np.full(xs.shape, -_U_MAX)
    hi = np.full(xs.shape, _U_MAX)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        below = (_x_from_u(mid, p) < xs) == increasing
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    u = 0.5 * (lo + hi)
    z, edge = _z_from_u(u, p)
    # Newton polish in z where it is representable away from the endpoints
    interior = (np.abs(u) < 30.0)
    if np.any(interior):
        zi = z[interior] if z.shape else z
        xi = xs[interior] if xs.shape else xs
        for _ in range(3):
            fx = np.array([x_of_z(float(zz), p) for zz in np.atleast_1d(zi)])
            zi = zi - (fx - xi) * np.atleast_1d(dz_dx(zi, p))
            lo_b, hi_b = z_limits(p)
            zi = np.clip(zi, lo_b + 1e-300, min(hi_b, 1e308) - 1e-300 if np.isfinite(hi_b) else 1e308)
        if z.shape:
            z = z.copy()
            z[interior] = zi
            if p.variant == "well":
                edge = edge.copy()
                edge[interior] = 1.0 - zi
            elif p.a < 1.0:
                edge = edge.copy()
                edge[interior] = zi - 1.0
            else:
                edge = edge.copy()
                edge[interior] = p.a - zi
        else:
            z = zi
            edge = (1.0 - zi) if p.variant == "well" else (
                zi - 1.0 if p.a < 1.0 else p.a - zi)
    return z, edge


def z_of_x(x: float, p: PotentialParams) -> float:
    """Unique on-branch root of x_of_z(z) = x (bisection + Newton polish)."""
    z, _ = z_of_x_array(np.array(float(x)), p)
    return float(z)


def origin_coefficient(p: PotentialParams) -> float:
    """Coefficient C of the near-edge asymptote V ~ C/sqrt(x - x0)."""
    rad = (p.a - 1.0) * p.sigma / (2.0 * p.a)
    if rad <= 0.0:
        raise ValueError(
            f"origin asymptote requires (a-1)*sigma/a > 0 (a={p.a}, sigma={p.sigma})"
        )
    return math.sqrt(rad) * p.V1


def tail_coefficient(p: PotentialParams) -> float:
    """Coefficient of the large-x tail V - (V0+V1) ~ C exp(-(x-x0)/sigma)."""
    return ((p.a - 1.0) / p.a) ** p.a * p.V1


def potential_value(x: float, p: PotentialParams) -> float:
    """V(x) = V0 + V1 / z(x) on the variant branch."""
    if p.variant == "well":
        xt = (x - p.x0) if p.sigma > 0 else (p.x0 - x)
        if xt <= 0.0:
            raise InversionError(f"x={x} is outside the well image (edge at x0={p.x0})")
        if xt < ORIGIN_GUARD:
            return p.V0 + origin_coefficient(p) / math.sqrt(xt)
        z, w = z_of_x_array(np.array(float(x)), p)
        return p.V0 + p.V1 + p.V1 * float(w) / float(z)
    z, _ = z_of_x_array(np.array(float(x)), p)
    return p.V0 + p.V1 / float(z)


def potential_on_grid(xs, p: PotentialParams) -> np.ndarray:
    """Vectorized V(x); same guards as ``potential_value``."""
    xs = np.asarray(xs, dtype=float)
    if p.variant == "well":
        xt = (xs - p.x0) if p.sigma > 0 else (p.x0 - xs)
        if np.any(xt <= 0.0):
            raise InversionError("grid extends past the singular edge of the well")
        out = np.empty_like(xs)
        guard = xt < ORIGIN_GUARD
        if np.any(guard):
            out[guard] = p.V0 + origin_coefficient(p) / np.sqrt(xt[guard])
        ok = ~guard
        if np.any(ok):
            z, w = z_of_x_array(xs[ok], p)
            out[ok] = p.V0 + p.V1 + p.V1 * w / z
        return out
    z, _ = z_of_x_array(xs, p)
    return p.V0 + p.V1 / z


def sample_potential(p: PotentialParams, x_start: float, x_end: float, n: int) -> GridFunction:
    """Uniform sampling of the potential on [x_start, x_end]."""
    if n < 2:
        raise ValueError(f"need n >= 2 samples, got {n}")
    if not x_end > x_start:
        raise ValueError("x_end must exceed x_start")
    xs = np.linspace(x_start, x_end, n)
    try:
        vals = potential_on_grid(xs, p)
    except (InversionError, ValueError) as exc:
        raise type(exc)(f"sampling failed on [{x_start}, {x_end}]: {exc}") from exc
    return GridFunction(x_start=x_start, x_step=(x_end - x_start) / (n - 1), values=vals)


# ---------------------------------------------------------------------------
# closed forms

def a_minus1_z(x: float, p: PotentialParams) -> float:
    """z(x) of the quadratic closed form: sqrt(1 + exp((x-x0)/sigma)).

    Coincides with the parametric barrier branch at a = -1 under
    sigma -> -sigma, x0 -> x0 + sigma*ln(2).
    """
    t = (x - p.x0) / p.sigma
    if t > 0:
        return math.exp(t / 2.0) * math.sqrt(1.0 + math.exp(-t))
    return math.sqrt(1.0 + math.exp(t))


def closed_form_a_minus1(x: float, p: PotentialParams) -> float:
    """V0 + V1 / sqrt(1 + exp((x-x0)/sigma)), the a = -1 member."""
    if p.a != -1.0:
        raise ValueError(f"closed form requires a = -1, got a={p.a}")
    return p.V0 + p.V1 / a_minus1_z(x, p)


def cubic_z(x: float, p: PotentialParams) -> float:
    """z(x) of the cubic closed form.

    z = -1 + W^(-2/3) + W^(2/3) with W = e^(t/2) + sqrt(1+e^t), t=(x-x0)/sigma.
    Satisfies (z+2)^2 (z-1) = 4 e^t, i.e. the parametric barrier branch at
    a = CUBIC_BRANCH_A = -2 under sigma -> -sigma, x0 -> x0 + sigma*ln(9/4).
    """
    t = (x - p.x0) / p.sigma
    half = 0.5 * t
    # ln W, overflow-safe on both sides
    if half > 0:
        lw = half + math.log1p(math.sqrt(1.0 + math.exp(-t)))
    else:
        eh = math.exp(half)
        lw = math.log(eh + math.sqrt(1.0 + eh * eh))
    g = math.exp(2.0 * lw / 3.0)
    return -1.0 + g + 1.0 / g


def closed_form_cubic(x: float, p: PotentialParams) -> float:
    """V0 + V1/z with z from the explicit cube-root expression."""
    return p.V0 + p.V1 / cubic_z(x, p)


# ---------------------------------------------------------------------------
# asymptotes (well branch)

def asymptote_origin(x: float, p: PotentialParams) -> float:
    """Leading near-edge behavior sqrt((a-1) sigma/(2a)) * V1 / sqrt(x-x0)."""
    if p.variant != "well":
        raise ValueError("origin asymptote is defined for the well branch")
    xt = (x - p.x0) if p.sigma > 0 else (p.x0 - x)
    if xt <= 0.0:
        raise ValueError(f"x={x} is not inside the well image")
    return origin_coefficient(p) / math.sqrt(xt)


def asymptote_infinity(x: float, p: PotentialParams) -> float:
    """Exponential tail of V - (V0+V1): ((a-1)/a)^a V1 exp(-(x-x0)/sigma)."""
    if p.variant != "well":
        raise ValueError("tail asymptote is defined for the well branch")
    return tail_coefficient(p) * math.exp(-(x - p.x0) / p.sigma)
