"""Brute-force verification by direct numerical integration.

Solves psi'' + (2m/hbar^2)(E - V(x)) psi = 0 on a uniform x-grid with the
Numerov scheme (O(h^6) local error) and finds eigenvalues by two-sided
shooting: integrate the regular solution out from the singular edge and the
decaying solution in from the tail, and match logarithmic derivatives at
the classical turning point.  Nothing here touches the hypergeometric
machinery, so agreement with the spectrum module is a genuine end-to-end
check of the closed-form solution.

The regular start uses the Frobenius-like expansion at the 1/sqrt(x-x0)
edge of the well,

    psi ~ xt * (1 + (8 m C0 / (15 hbar^2)) xt^(3/2)
                  + (m (V0-E) / (3 hbar^2)) xt^2),      xt = x - x0,

where C0 is the origin-asymptote coefficient.  (The x^(3/2) power is forced
by matching psi'' against the V ~ C0/sqrt(xt) term; a naive psi = xt start
costs about two digits in the eigenvalues.)
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .potential import GridFunction, PotentialParams, origin_coefficient, potential_on_grid

__all__ = [
    "ShootingConfig",
    "default_config",
    "numerov_integrate",
    "shooting_eigenvalues",
    "reference_wavefunction",
    "max_threads",
]

log = logging.getLogger(__name__)

RESCALE_LIMIT = 1e250
EIGEN_TOL = 1e-8

try:
    from numba import njit as _njit

    def _jit(fn):
        return _njit(cache=True, nogil=True)(fn)
except ImportError:  # pragma: no cover - numba is a declared dependency
    def _jit(fn):
        return fn


def max_threads() -> int:
    """Worker cap for the eigenvalue scan; HEUNWELL_THREADS lowers it."""
    cap = min(4, os.cpu_count() or 1)
    env = os.environ.get("HEUNWELL_THREADS")
    if env:
        try:
            cap = max(1, min(cap, int(env)))
        except ValueError:
            log.warning("ignoring non-integer HEUNWELL_THREADS=%r", env)
    return cap


@dataclass(frozen=True)
class ShootingConfig:
    """Grid and energy-bracket configuration for the shooting solver.

    ``x_min`` must sit deep in the near-edge asymptotic region
    (x_min - x0 <= 1e-4 * sigma) and ``x_max`` far enough out that the
    potential tail is negligible against V0.
    """

    x_min: float
    x_max: float
    n: int = 200_001
    E_bracket: tuple = (None, None)
    n_scan: int = 600

    def __post_init__(self):
        if not (self.x_min < self.x_max):
            raise ValueError("x_min must be below x_max")
        if self.n < 9:
            raise ValueError("need at least 9 grid points")
        if self.n_scan < 2:
            raise ValueError("need at least 2 scan points")

    def grid(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n)

    def validate_against(self, p: PotentialParams):
        if p.variant != "well":
            raise ValueError("the shooting solver addresses the well branch")
        if p.sigma <= 0:
            raise ValueError(
                "shooting grids assume sigma > 0 (the sigma < 0 well is its "
                "mirror image and has an identical spectrum)"
            )
        if self.x_min - p.x0 > 1e-4 * p.sigma:
            raise ValueError(
                f"x_min - x0 = {self.x_min - p.x0} exceeds 1e-4*sigma; the "
                "near-edge start would lose the regular-solution seed"
            )
        tail = abs(p.V1) * math.exp(-(self.x_max - p.x0) / p.sigma)
        if p.V0 != 0 and tail > 1e-10 * abs(p.V0):
            raise ValueError("x_max leaves a non-negligible potential tail")


def default_config(p: PotentialParams) -> ShootingConfig:
    """x_min = x0 + 1e-6 sigma, x_max = x0 + 40 sigma, n = 200001."""
    return ShootingConfig(
        x_min=p.x0 + 1e-6 * p.sigma,
        x_max=p.x0 + 40.0 * p.sigma,
        n=200_001,
    )


@_jit
def _march(T, y, i_from, i_to):
    """Numerov recurrence filling y from i_from towards i_to (either way).

    y must hold two seed values at i_from and i_from+step.  The whole
    filled span is rescaled when values threaten overflow; returns the
    rescale count (the result is the true solution up to one overall
    factor).
    """
    step = 1 if i_to > i_from else -1
    rescales = 0
    i = i_from + step
    while i != i_to:
        j = i + step
        y[j] = (2.0 * y[i] * (1.0 + 5.0 * T[i]) - y[i - step] * (1.0 - T[i - step])) / (1.0 - T[j])
        if abs(y[j]) > RESCALE_LIMIT:
            if step > 0:
                for k in range(i_from, j + 1):
                    y[k] *= 1e-250
            else:
                for k in range(j, i_from + 1):
                    y[k] *= 1e-250
            rescales += 1
        i = j
    return rescales


def _f_grid(E: float, Vg: np.ndarray, p: PotentialParams) -> np.ndarray:
    return 2.0 * p.m / p.hbar**2 * (Vg - E)


def _left_seed(E, p, x0_off, x1_off):
    c0 = origin_coefficient(p)
    c3 = 8.0 * p.m * c0 / (15.0 * p.hbar**2)
    c4 = p.m * (p.V0 - E) / (3.0 * p.hbar**2)
    def seed(xt):
        return xt * (1.0 + c3 * xt**1.5 + c4 * xt * xt)
    return seed(x0_off), seed(x1_off)


def numerov_integrate(E: float, p: PotentialParams, cfg: ShootingConfig) -> GridFunction:
    """Forward Numerov integration of the regular solution from x_min.

    Returns the solution up to one overall positive factor (overflow
    rescaling events are logged at debug level).
    """
    cfg.validate_against(p)
    xs = cfg.grid()
    h = xs[1] - xs[0]
    Vg = potential_on_grid(xs, p)
    T = h * h * _f_grid(E, Vg, p) / 12.0
    y = np.zeros(cfg.n)
    y[0], y[1] = _left_seed(E, p, xs[0] - p.x0, xs[1] - p.x0)
    rescales = _march(T, y, 0, cfg.n - 1)
    if rescales:
        log.debug("numerov_integrate: %d overflow rescaling events at E=%g", rescales, E)
    return GridFunction(x_start=cfg.x_min, x_step=h, values=y)


def _deriv5(y, i, h):
    """Five-point O(h^4) first derivative on the grid."""
    return (-y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + y[i - 2]) / (12.0 * h)


def _match_data(E, p, cfg, xs, h, Vg):
    """Left/right Numerov sweeps meeting at the outer turning point.

    Returns (i_match, psiL, psiR, rescale_count); psiL is filled on
    [0, i_match+2], psiR on [i_match-2, n-1].
    """
    T = h * h * _f_grid(E, Vg, p) / 12.0
    im = int(np.searchsorted(Vg, E))
    im = min(max(im, 4), cfg.n - 5)
    yl = np.zeros(cfg.n)
    yl[0], yl[1] = _left_seed(E, p, xs[0] - p.x0, xs[1] - p.x0)
    nl = _march(T, yl, 0, im + 2)
    yr = np.zeros(cfg.n)
    kap = math.sqrt(max(2.0 * p.m * (Vg[-1] - E), 0.0)) / p.hbar
    yr[cfg.n - 1] = 1e-120
    yr[cfg.n - 2] = 1e-120 * math.exp(min(kap * h, 500.0))
    nr = _march(T, yr, cfg.n - 1, im - 2)
    return im, yl, yr, nl + nr


def _mismatch(E, p, cfg, xs, h, Vg) -> float:
    """Normalized log-derivative mismatch at the turning point; its sign
    changes exactly at the eigenvalues."""
    im, yl, yr, _ = _match_data(E, p, cfg, xs, h, Vg)
    dl = _deriv5(yl, im, h)
    dr = _deriv5(yr, im, h)
    num = dl * yr[im] - dr * yl[im]
    den = abs(dl * yr[im]) + abs(dr * yl[im]) + 1e-300
    return num / den


def shooting_eigenvalues(p: PotentialParams, cfg: ShootingConfig | None = None) -> list[float]:
    """All bound-state energies in the configured bracket.

    Scans the matching mismatch on ``cfg.n_scan`` energies, then refines
    each sign change by bisection to |dE| <= 1e-8.  Missed-bracket
    anomalies (adjacent scan cells that both flip) are logged as warnings.
    """
    if cfg is None:
        cfg = default_config(p)
    cfg.validate_against(p)
    xs = cfg.grid()
    h = xs[1] - xs[0]
    Vg = potential_on_grid(xs, p)
    e_lo, e_hi = cfg.E_bracket
    if e_lo is None:
        e_lo = 1.5 * float(np.min(Vg[cfg.n // 200:]))
    if e_hi is None:
        e_hi = -1e-8
    if e_lo >= e_hi or float(np.min(Vg)) >= e_hi:
        return []

    # warm the jitted kernel before threading
    _mismatch(e_lo, p, cfg, xs, h, Vg)

    Es = np.linspace(e_lo, e_hi, cfg.n_scan)
    workers = max_threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            Ds = list(pool.map(lambda E: _mismatch(E, p, cfg, xs, h, Vg), Es))
    else:
        Ds = [_mismatch(E, p, cfg, xs, h, Vg) for E in Es]

    brackets = []
    for i in range(1, cfg.n_scan):
        if math.copysign(1.0, Ds[i - 1]) != math.copysign(1.0, Ds[i]):
            brackets.append((Es[i - 1], Es[i], Ds[i - 1]))
    for (a0, _, _), (b0, _, _) in zip(brackets, brackets[1:]):
        if abs(b0 - a0) <= (Es[1] - Es[0]) * 1.5:
            log.warning("adjacent sign changes near E=%g; scan may be under-resolved", a0)

    def refine(bracket):
        lo, hi, flo = bracket
        while hi - lo > EIGEN_TOL:
            mid = 0.5 * (lo + hi)
            fm = _mismatch(mid, p, cfg, xs, h, Vg)
            if math.copysign(1.0, fm) == math.copysign(1.0, flo):
                lo, flo = mid, fm
            else:
                hi = mid
        return 0.5 * (lo + hi)

    if workers > 1 and len(brackets) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            eigs = list(pool.map(refine, brackets))
    else:
        eigs = [refine(b) for b in brackets]
    return sorted(eigs)


def reference_wavefunction(E: float, p: PotentialParams, cfg: ShootingConfig | None = None) -> GridFunction:
    """Matched, sign-fixed numerical eigenfunction at an eigenvalue E.

    The right sweep is scaled onto the left at the turning point; the
    result is normalized to unit maximum amplitude with its largest lobe
    positive (so it is comparable to any analytic solution up to one
    global factor).
    """
    if cfg is None:
        cfg = default_config(p)
    cfg.validate_against(p)
    xs = cfg.grid()
    h = xs[1] - xs[0]
    Vg = potential_on_grid(xs, p)
    im, yl, yr, rescales = _match_data(E, p, cfg, xs, h, Vg)
    if rescales:
        log.debug("reference_wavefunction: %d rescaling events", rescales)
    if yr[im] == 0.0 or yl[im] == 0.0:
        raise ArithmeticError("turning-point value vanished; E is not an eigenvalue?")
    y = np.empty(cfg.n)
    y[: im + 1] = yl[: im + 1]
    y[im:] = yr[im:] * (yl[im] / yr[im])
    peak = int(np.argmax(np.abs(y)))
    y /= y[peak]
    return GridFunction(x_start=cfg.x_min, x_step=h, values=y)
