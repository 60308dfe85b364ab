"""Self-contained special-function kernels.

Provides the Gauss hypergeometric function 2F1 (with its exact derivative),
the Clausen generalized hypergeometric function 3F2, the real dilogarithm
Li2, and the inverse hyperbolic cotangent.  Everything is implemented from
power series plus the classical linear transformations, so the rest of the
package has no special-function dependency.

Evaluation strategy for 2F1 (see ``gauss_2f1``):

* |z| <= 0.9: direct power series with term-ratio stopping.
* otherwise the argument is moved into the series disc by the Pfaff map
  z -> z/(z-1) (DLMF 15.8.1) or the z -> 1-z connection formula
  (DLMF 15.8.4), choosing the map that shrinks |z| the most.
* integer c-a-b, where the z -> 1-z connection degenerates, is handled by
  the logarithmic limit formulas (A&S 15.3.10 - 15.3.12).

All functions are pure; parameters may be complex throughout.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

__all__ = [
    "NonConvergenceError",
    "gauss_2f1",
    "gauss_2f1_dz",
    "gauss_2f1_array",
    "clausen_3f2",
    "clausen_3f2_array",
    "dilog",
    "arccoth",
    "gamma_fn",
    "digamma_fn",
]

# Series controls: stop when |term| / |partial sum| drops below SERIES_TOL.
SERIES_TOL = 1e-17
MAX_TERMS_2F1 = 5000
MAX_TERMS_3F2 = 200_000
SERIES_RADIUS = 0.9

# c - a - b closer to an integer than this uses the logarithmic limit
# formulas; between the two guards the cancellation in the generic
# connection formula is too severe to certify 1e-12, so we refuse.
DEGENERATE_EXACT = 1e-12
DEGENERATE_GUARD = 1e-6


class NonConvergenceError(ArithmeticError):
    """Series/transformation budget exhausted or argument unreachable."""


# ---------------------------------------------------------------------------
# gamma / digamma for complex arguments (Lanczos, g = 7)

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(z) -> complex:
    """Gamma function for complex z (Lanczos approximation, reflection)."""
    z = complex(z)
    if z.real < 0.5:
        # reflection formula; poles at non-positive integers surface as inf
        s = cmath.sin(cmath.pi * z)
        if s == 0:
            return complex(math.inf, 0.0)
        return cmath.pi / (s * gamma_fn(1.0 - z))
    z -= 1.0
    x = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        x += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


# Bernoulli-number coefficients B_{2n}/(2n) for the digamma asymptotic tail.
_DIGAMMA_ASY = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def digamma_fn(z) -> complex:
    """Digamma function for complex z (recurrence + asymptotic series)."""
    z = complex(z)
    if z.real < 0.5:
        return digamma_fn(1.0 - z) - cmath.pi / cmath.tan(cmath.pi * z)
    acc = 0.0 + 0.0j
    while z.real < 12.0:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    tail = 0.0 + 0.0j
    p = inv2
    for c in _DIGAMMA_ASY:
        tail += c * p
        p *= inv2
    return acc + cmath.log(z) - 0.5 / z - tail


# ---------------------------------------------------------------------------
# helpers

def _is_nonpositive_int(w, tol=DEGENERATE_EXACT) -> bool:
    w = complex(w)
    if abs(w.imag) > tol:
        return False
    r = round(w.real)
    return r <= 0 and abs(w.real - r) <= tol


def _check_2f1_params(a, b, c):
    """Reject lower parameter at a pole unless the series terminates first."""
    if not _is_nonpositive_int(c):
        return
    nc = round(complex(c).real)
    for num in (a, b):
        if _is_nonpositive_int(num):
            if round(complex(num).real) > nc:
                return  # numerator terminates the series before the pole
    raise ValueError(
        f"2F1 lower parameter c={c} is a non-positive integer and no "
        "numerator parameter terminates the series first"
    )


def _terminating_n(a, b):
    """Smallest termination order if a or b is a non-positive integer."""
    n = None
    for num in (a, b):
        if _is_nonpositive_int(num):
            k = -round(complex(num).real)
            n = k if n is None else min(n, k)
    return n


def _series_2f1(a, b, c, z, max_terms=MAX_TERMS_2F1):
    """Direct power series; assumes parameters already validated."""
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        total += term
        if abs(term) <= SERIES_TOL * abs(total):
            return total
    raise NonConvergenceError(
        f"2F1 series did not converge in {max_terms} terms "
        f"(a={a}, b={b}, c={c}, z={z})"
    )


def _poly_2f1(a, b, c, z, nterms):
    """Terminating series (a or b a non-positive integer): exact polynomial."""
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    for n in range(nterms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        total += term
    return total


def _log_case_w(a, b, m, w, max_terms=MAX_TERMS_2F1):
    """2F1(a, b; a+b+m; 1-w) for integer m >= 0 via A&S 15.3.10 / 15.3.11.

    ``w`` is the transformed argument 1-z with |w| < 1.
    """
    if w == 0:
        if m > 0:
            return gamma_fn(m) * gamma_fn(a + b + m) / (gamma_fn(a + m) * gamma_fn(b + m))
        raise NonConvergenceError("2F1 diverges at z=1 for c-a-b = 0")
    lw = cmath.log(w)
    if m == 0:
        pref = gamma_fn(a + b) / (gamma_fn(a) * gamma_fn(b))
        term = 1.0 + 0.0j
        total = 0.0 + 0.0j
        for n in range(max_terms):
            bracket = (
                2.0 * digamma_fn(n + 1.0)
                - digamma_fn(a + n)
                - digamma_fn(b + n)
                - lw
            )
            contrib = term * bracket
            total += contrib
            if n > 2 and abs(contrib) <= SERIES_TOL * abs(total):
                return pref * total
            term *= (a + n) * (b + n) / ((n + 1.0) ** 2) * w
        raise NonConvergenceError("logarithmic 2F1 series (m=0) did not converge")
    # m >= 1: finite part plus logarithmic series
    g_abm = gamma_fn(a + b + m)
    finite = 0.0 + 0.0j
    term = 1.0 + 0.0j
    for n in range(m):
        finite += term
        term *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * w
    finite *= gamma_fn(m) * g_abm / (gamma_fn(a + m) * gamma_fn(b + m))
    pref = -((-1.0) ** m) * g_abm / (gamma_fn(a) * gamma_fn(b)) * w**m
    term = 1.0 + 0.0j
    total = 0.0 + 0.0j
    for n in range(max_terms):
        bracket = (
            lw
            - digamma_fn(n + 1.0)
            - digamma_fn(n + m + 1.0)
            + digamma_fn(a + n + m)
            + digamma_fn(b + n + m)
        )
        contrib = term * bracket
        total += contrib
        if n > 2 and abs(contrib) <= SERIES_TOL * abs(total):
            return finite + pref * total
        term *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0)) * w
    raise NonConvergenceError("logarithmic 2F1 series (m>=1) did not converge")


def _connection_1mz(a, b, c, z):
    """z -> 1-z connection (DLMF 15.8.4), including degenerate c-a-b."""
    w = 1.0 - z
    s = c - a - b
    dist = abs(s - round(s.real)) if abs(s.imag) <= DEGENERATE_EXACT else math.inf
    if dist <= DEGENERATE_EXACT:
        m = round(s.real)
        if m >= 0:
            return _log_case_w(a, b, m, w)
        # Euler transform lifts c-a-b to a positive integer
        return w**s * _log_case_w(c - a, c - b, -m, w)
    if dist < DEGENERATE_GUARD:
        raise NonConvergenceError(
            f"c-a-b = {s} is within {DEGENERATE_GUARD} of an integer; the "
            "generic connection formula cannot certify the target accuracy"
        )
    if w == 0:
        # z = 1 exactly: convergent only for Re(c-a-b) > 0
        if s.real > 0:
            return gamma_fn(c) * gamma_fn(s) / (gamma_fn(c - a) * gamma_fn(c - b))
        raise ValueError("2F1 at z=1 requires Re(c-a-b) > 0")
    t1 = (
        gamma_fn(c)
        * gamma_fn(s)
        / (gamma_fn(c - a) * gamma_fn(c - b))
        * _series_2f1(a, b, 1.0 - s, w)
    )
    t2 = (
        gamma_fn(c)
        * gamma_fn(-s)
        / (gamma_fn(a) * gamma_fn(b))
        * w**s
        * _series_2f1(c - a, c - b, 1.0 + s, w)
    )
    return t1 + t2


def _on_cut(z) -> bool:
    z = complex(z)
    return z.imag == 0.0 and z.real > 1.0


def gauss_2f1(a, b, c, z) -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; z).

    Relative accuracy is ~1e-12 or better away from the cut [1, inf).
    ``z = 1`` itself is allowed when Re(c-a-b) > 0 (Gauss summation).

    Raises
    ------
    ValueError
        for a forbidden lower parameter or an argument on the cut.
    NonConvergenceError
        if the series/transformation budget cannot reach the argument.
    """
    a = complex(a)
    b = complex(b)
    c = complex(c)
    z = complex(z)
    _check_2f1_params(a, b, c)
    if z == 0:
        return 1.0 + 0.0j
    nterm = _terminating_n(a, b)
    if nterm is not None:
        return _poly_2f1(a, b, c, z, nterm)
    if _on_cut(z):
        raise ValueError(f"argument z={z} lies on the branch cut [1, inf)")
    return _gauss_2f1_offcut(a, b, c, z, depth=0)


def _gauss_2f1_offcut(a, b, c, z, depth):
    if abs(z) <= SERIES_RADIUS:
        return _series_2f1(a, b, c, z)
    if abs(1.0 - z) <= SERIES_RADIUS:
        return _connection_1mz(a, b, c, z)
    w = z / (z - 1.0)
    if abs(w) < 1.0 - 1e-9 and depth < 2:
        # Pfaff: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))
        return (1.0 - z) ** (-a) * _gauss_2f1_offcut(a, c - b, c, w, depth + 1)
    raise NonConvergenceError(
        f"argument z={z} is outside the implemented transformation region"
    )


def gauss_2f1_dz(a, b, c, z) -> complex:
    """d/dz of 2F1: equals (a*b/c) * 2F1(a+1, b+1; c+1; z) exactly."""
    a = complex(a)
    b = complex(b)
    c = complex(c)
    _check_2f1_params(a, b, c)
    if c == 0:
        raise ValueError("2F1 derivative undefined for c = 0")
    return a * b / c * gauss_2f1(a + 1.0, b + 1.0, c + 1.0, z)


# ---------------------------------------------------------------------------
# vectorized 2F1 over an argument array (shared parameters)

def _series_2f1_array(a, b, c, zs, max_terms):
    term = np.ones_like(zs)
    total = np.ones_like(zs)
    for n in range(max_terms):
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1.0))) * zs
        total = total + term
        if n % 8 == 0 and np.all(np.abs(term) <= SERIES_TOL * np.abs(total)):
            return total
    if np.all(np.abs(term) <= 1e-13 * np.abs(total)):
        return total
    raise NonConvergenceError("vectorized 2F1 series did not converge")


def gauss_2f1_array(a, b, c, zs) -> np.ndarray:
    """2F1 with shared parameters over an array of arguments.

    Splits the arguments by evaluation region (series / Pfaff / 1-z
    connection) and sums each region as a vectorized series.  Used by the
    wavefunction and node-counting grids, where one parameter set is
    evaluated at thousands of points.
    """
    a = complex(a)
    b = complex(b)
    c = complex(c)
    _check_2f1_params(a, b, c)
    zs = np.asarray(zs, dtype=complex)
    out = np.empty_like(zs)
    nterm = _terminating_n(a, b)
    if nterm is not None:
        term = np.ones_like(zs)
        total = np.ones_like(zs)
        for n in range(nterm):
            term = term * ((a + n) * (b + n) / ((c + n) * (n + 1.0))) * zs
            total = total + term
        return total
    if np.any((zs.imag == 0.0) & (zs.real > 1.0)):
        raise ValueError("arguments on the branch cut [1, inf)")

    direct = np.abs(zs) <= SERIES_RADIUS
    if np.any(direct):
        out[direct] = _series_2f1_array(a, b, c, zs[direct], MAX_TERMS_2F1)
    near1 = (~direct) & (np.abs(1.0 - zs) <= SERIES_RADIUS)
    if np.any(near1):
        w = 1.0 - zs[near1]
        s = c - a - b
        dist = abs(s - round(s.real)) if abs(s.imag) <= DEGENERATE_EXACT else math.inf
        if dist < DEGENERATE_GUARD:
            # rare integer-degenerate block: fall back to scalar evaluation
            out[near1] = [_connection_1mz(a, b, c, z) for z in zs[near1]]
        else:
            g1 = gamma_fn(c) * gamma_fn(s) / (gamma_fn(c - a) * gamma_fn(c - b))
            g2 = gamma_fn(c) * gamma_fn(-s) / (gamma_fn(a) * gamma_fn(b))
            f1 = _series_2f1_array(a, b, 1.0 - s, w, MAX_TERMS_3F2)
            f2 = _series_2f1_array(c - a, c - b, 1.0 + s, w, MAX_TERMS_3F2)
            out[near1] = g1 * f1 + g2 * w**s * f2
    rest = (~direct) & (~near1)
    if np.any(rest):
        out[rest] = [gauss_2f1(a, b, c, z) for z in zs[rest]]
    return out


# ---------------------------------------------------------------------------
# Clausen 3F2

def _check_3f2_params(a1, a2, a3, b1, b2):
    nterm = None
    for num in (a1, a2, a3):
        if _is_nonpositive_int(num):
            k = -round(complex(num).real)
            nterm = k if nterm is None else min(nterm, k)
    for den in (b1, b2):
        if _is_nonpositive_int(den):
            nd = -round(complex(den).real)
            if nterm is None or nterm > nd:
                raise ValueError(
                    f"3F2 lower parameter {den} is a non-positive integer and "
                    "no numerator parameter terminates the series first"
                )
    return nterm


def clausen_3f2(a1, a2, a3, b1, b2, z) -> complex:
    """Clausen generalized hypergeometric function 3F2 by direct series.

    Valid for |z| < 1 (and any z when a numerator parameter terminates the
    series).  Relative accuracy ~1e-10; raises NonConvergenceError when the
    argument is too close to 1 for the term budget.
    """
    a1 = complex(a1)
    a2 = complex(a2)
    a3 = complex(a3)
    b1 = complex(b1)
    b2 = complex(b2)
    z = complex(z)
    nterm = _check_3f2_params(a1, a2, a3, b1, b2)
    if z == 0:
        return 1.0 + 0.0j
    if nterm is None and abs(z) >= 1.0:
        raise ValueError(f"3F2 series requires |z| < 1, got |z|={abs(z)}")
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    limit = nterm if nterm is not None else MAX_TERMS_3F2
    for n in range(limit):
        term *= (a1 + n) * (a2 + n) * (a3 + n) / ((b1 + n) * (b2 + n) * (n + 1.0)) * z
        total += term
        if nterm is None and abs(term) <= SERIES_TOL * abs(total):
            return total
    if nterm is not None:
        return total
    raise NonConvergenceError(
        f"3F2 series did not converge in {MAX_TERMS_3F2} terms (z={z})"
    )


def clausen_3f2_array(a1, a2, a3, b1, b2, zs) -> np.ndarray:
    """Vectorized 3F2 with shared parameters over an argument array."""
    a1 = complex(a1)
    a2 = complex(a2)
    a3 = complex(a3)
    b1 = complex(b1)
    b2 = complex(b2)
    nterm = _check_3f2_params(a1, a2, a3, b1, b2)
    zs = np.asarray(zs, dtype=complex)
    if nterm is None and np.any(np.abs(zs) >= 1.0):
        raise ValueError("3F2 series requires |z| < 1 at every grid point")
    term = np.ones_like(zs)
    total = np.ones_like(zs)
    limit = nterm if nterm is not None else MAX_TERMS_3F2
    for n in range(limit):
        term = term * ((a1 + n) * (a2 + n) * (a3 + n)
                       / ((b1 + n) * (b2 + n) * (n + 1.0))) * zs
        total = total + term
        if nterm is None and n % 16 == 0 and np.all(
            np.abs(term) <= SERIES_TOL * np.abs(total)
        ):
            return total
    if nterm is not None or np.all(np.abs(term) <= 1e-11 * np.abs(total)):
        return total
    raise NonConvergenceError("vectorized 3F2 series did not converge")


# ---------------------------------------------------------------------------
# dilogarithm and arccoth

_PI2_6 = math.pi**2 / 6.0


def _dilog_series(x: float) -> float:
    # |x| <= 0.5: plain series sum x^n / n^2
    total = 0.0
    p = x
    n = 1
    while True:
        t = p / (n * n)
        total += t
        if abs(t) <= 1e-18 * max(1.0, abs(total)) or n > 200:
            return total
        p *= x
        n += 1


def dilog(x: float) -> float:
    """Real dilogarithm Li2(x) for x <= 1, absolute accuracy ~1e-15.

    Uses the defining series on |x| <= 1/2 and the reflection, Landen and
    inversion functional equations elsewhere.
    """
    x = float(x)
    if x > 1.0:
        raise ValueError(f"dilog domain is x <= 1, got {x}")
    if x == 1.0:
        return _PI2_6
    if x == 0.0:
        return 0.0
    if x < -1.0:
        # inversion: Li2(x) = -pi^2/6 - ln^2(-x)/2 - Li2(1/x)
        return -_PI2_6 - 0.5 * math.log(-x) ** 2 - dilog(1.0 / x)
    if x < -0.5:
        # Landen: Li2(x) = -ln^2(1-x)/2 - Li2(x/(x-1))
        return -0.5 * math.log1p(-x) ** 2 - dilog(x / (x - 1.0))
    if x > 0.5:
        # reflection: Li2(x) + Li2(1-x) = pi^2/6 - ln(x) ln(1-x)
        return _PI2_6 - math.log(x) * math.log1p(-x) - _dilog_series(1.0 - x)
    return _dilog_series(x)


def arccoth(x: float) -> float:
    """Inverse hyperbolic cotangent, (1/2) ln((x+1)/(x-1)), for |x| > 1."""
    x = float(x)
    if abs(x) <= 1.0:
        raise ValueError(f"arccoth domain is |x| > 1, got {x}")
    return 0.5 * math.log((x + 1.0) / (x - 1.0))
