"""Double-precision special functions underlying the mode formulas.

The Gauss hypergeometric series is evaluated by direct summation only, with
an argument cutoff; analytic continuation past the cutoff is the job of the
transfer matrix one level up (see modes), never of transformation formulas.
Orthogonal polynomials use three-term recurrences and accept numpy arrays
for the argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError


@dataclass(frozen=True)
class SeriesPolicy:
    """Evaluation policy for the direct hypergeometric series."""

    max_terms: int = 10000
    rel_tol: float = 1e-14
    arg_cutoff: float = 0.75

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError("rel_tol must lie in (0, 1)")
        if not 0.0 < self.arg_cutoff < 1.0:
            raise ValueError("arg_cutoff must lie in (0, 1)")


DEFAULT_POLICY = SeriesPolicy()


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def gamma_fn(x: float) -> float:
    """Gamma function; PoleError at nonpositive integers.

    Backed by the C library implementation, which meets the 1e-12 relative
    accuracy contract on |x| <= 50 with margin.
    """
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma pole at x = {x}")
    return math.gamma(x)


def log_gamma(x: float) -> float:
    """log |Gamma(x)| for x > 0; used where Gamma itself would overflow."""
    if x <= 0.0:
        raise DomainError("log_gamma requires x > 0")
    return math.lgamma(x)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1."""
    if k < 0:
        raise DomainError("pochhammer requires k >= 0")
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def double_pochhammer(a: float, k: int) -> float:
    """Step-2 rising factorial ((a))_k = a (a+2) ... (a+2k-2); ((a))_0 = 1.

    Satisfies ((2a))_k = 2^k (a)_k.
    """
    if k < 0:
        raise DomainError("double_pochhammer requires k >= 0")
    out = 1.0
    for i in range(k):
        out *= a + 2 * i
    return out


def hyp2f1_terminates(a: float, b: float) -> bool:
    """True when the 2F1 series truncates to a polynomial."""
    return _is_nonpositive_integer(a) or _is_nonpositive_integer(b)


def hyp2f1(a: float, b: float, c: float, x: float,
           policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Gauss hypergeometric 2F1(a, b; c; x) by direct series.

    Terminating series (a or b a nonpositive integer) are summed exactly for
    any x.  Otherwise |x| must not exceed policy.arg_cutoff.
    """
    terminates = hyp2f1_terminates(a, b)
    n_stop = None
    if terminates:
        n_stop = min(int(-v) for v in (a, b) if _is_nonpositive_integer(v))
    if _is_nonpositive_integer(c):
        # admissible only if the series stops before the pole in (c)_k
        if not (terminates and n_stop <= int(-c)):
            raise PoleError(f"2F1 parameter c = {c} is a nonpositive integer")
    if not terminates and abs(x) > policy.arg_cutoff:
        raise DomainError(
            f"|x| = {abs(x)} exceeds series cutoff {policy.arg_cutoff}")

    term = 1.0
    total = 1.0
    for k in range(policy.max_terms):
        if terminates and k == n_stop:
            return total
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x
        total += term
        if abs(term) <= policy.rel_tol * abs(total):
            return total
    raise ConvergenceError(
        f"2F1({a},{b};{c};{x}) did not converge in {policy.max_terms} terms")


def hyp2f1_dx(a: float, b: float, c: float, x: float,
              policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """d/dx 2F1(a, b; c; x) = (a b / c) 2F1(a+1, b+1; c+1; x)."""
    if a == 0.0 or b == 0.0:
        return 0.0
    return a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, x, policy)


def jacobi_p(alpha: float, beta: float, n: int, x):
    """Jacobi polynomial P_n^(alpha, beta)(x) via the three-term recurrence.

    x may be a float or ndarray.
    """
    if n < 0:
        raise DomainError("jacobi_p requires n >= 0")
    one = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return one
    p_prev = one
    p_cur = 0.5 * (alpha - beta + (alpha + beta + 2.0) * x)
    for k in range(2, n + 1):
        a1 = 2.0 * k * (k + alpha + beta) * (2.0 * k + alpha + beta - 2.0)
        a2 = (2.0 * k + alpha + beta - 1.0) * (alpha * alpha - beta * beta)
        a3 = ((2.0 * k + alpha + beta - 2.0) * (2.0 * k + alpha + beta - 1.0)
              * (2.0 * k + alpha + beta))
        a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + alpha + beta)
        p_prev, p_cur = p_cur, ((a2 + a3 * x) * p_cur - a4 * p_prev) / a1
    return p_cur


def jacobi_p_dx(alpha: float, beta: float, n: int, x):
    """Derivative of the Jacobi polynomial in x."""
    if n == 0:
        return np.zeros_like(x) if isinstance(x, np.ndarray) else 0.0
    return 0.5 * (n + alpha + beta + 1.0) * jacobi_p(alpha + 1.0, beta + 1.0, n - 1, x)


def gegenbauer_c(lam: float, n: int, x):
    """Gegenbauer (ultraspherical) polynomial C_n^(lambda)(x), lambda != 0."""
    if n < 0:
        raise DomainError("gegenbauer_c requires n >= 0")
    if lam == 0.0:
        raise DomainError("standard Gegenbauer normalization needs lambda != 0")
    one = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return one
    c_prev = one
    c_cur = 2.0 * lam * x
    for k in range(2, n + 1):
        c_prev, c_cur = c_cur, (2.0 * x * (k + lam - 1.0) * c_cur
                                - (k + 2.0 * lam - 2.0) * c_prev) / k
    return c_cur


def assoc_legendre(m: int, l: int, x):
    """Associated Legendre function P_l^m(x) WITHOUT the Condon-Shortley phase.

    Negative orders follow P_l^{-m} = (l-m)!/(l+m)! P_l^m (no sign), which is
    exactly what makes conj(Y_l^m) = Y_l^{-m} for the harmonics built on top.
    """
    if l < 0:
        raise IndexError("assoc_legendre requires l >= 0")
    if abs(m) > l:
        raise IndexError(f"|m| = {abs(m)} exceeds l = {l}")
    if m < 0:
        mm = -m
        scale = math.exp(log_gamma(l - mm + 1.0) - log_gamma(l + mm + 1.0))
        return scale * assoc_legendre(mm, l, x)
    # P_m^m = (2m-1)!! (1-x^2)^{m/2}, then upward in l
    somx2 = np.sqrt(1.0 - x * x) if isinstance(x, np.ndarray) else math.sqrt(max(1.0 - x * x, 0.0))
    dfac = 1.0
    for i in range(1, 2 * m, 2):
        dfac *= i
    pmm = dfac * somx2 ** m if m > 0 else (
        np.ones_like(x) if isinstance(x, np.ndarray) else 1.0)
    if l == m:
        return pmm
    pmmp1 = (2.0 * m + 1.0) * x * pmm
    if l == m + 1:
        return pmmp1
    for ll in range(m + 2, l + 1):
        pmm, pmmp1 = pmmp1, ((2.0 * ll - 1.0) * x * pmmp1
                             - (ll + m - 1.0) * pmm) / (ll - m)
    return pmmp1


def assoc_legendre_sin2_dx(m: int, l: int, x):
    """(1 - x^2) d/dx P_l^m(x), via (1-x^2) P' = (l+m) P_{l-1}^m - l x P_l^m.

    The identity holds for either sign of m in the convention used here.
    """
    lower = assoc_legendre(m, l - 1, x) if abs(m) <= l - 1 else (
        np.zeros_like(x) if isinstance(x, np.ndarray) else 0.0)
    return (l + m) * lower - l * x * assoc_legendre(m, l, x)


def spherical_bessel(kind: str, l: int, x: float) -> float:
    """Spherical Bessel j_l (kind "J") or Neumann n_l (kind "N").

    j_l uses downward (Miller) recurrence normalized by j_0 = sin x / x,
    n_l the stable upward recurrence.
    """
    if l < 0:
        raise DomainError("spherical_bessel requires l >= 0")
    if kind == "J":
        if x < 0.0:
            raise DomainError("j_l requires x >= 0")
        if x == 0.0:
            return 1.0 if l == 0 else 0.0
        if l == 0:
            return math.sin(x) / x
        # start well above both l and x so downward recurrence has converged;
        # normalize by the sum rule sum (2k+1) j_k^2 = 1 (stable even where
        # j_0 is near a zero), sign fixed against j_0 = sin x / x
        start = int(max(l, x)) + 40 + int(10.0 * math.sqrt(max(l, x)))
        jp1, j = 0.0, 1e-150
        target = 0.0
        norm = 0.0
        for k in range(start, 0, -1):
            jm1 = (2.0 * k + 1.0) / x * j - jp1
            norm += (2.0 * k + 1.0) * j * j
            if k - 1 == l:
                target = jm1
            jp1, j = j, jm1
            if abs(j) > 1e130:  # rescale to avoid overflow
                jp1 *= 1e-130
                j *= 1e-130
                target *= 1e-130
                norm *= 1e-260
        norm += j * j  # k = 0 term
        scale = math.sqrt(norm)
        if j * (math.sin(x) / x) < 0.0:
            scale = -scale
        return target / scale
    if kind == "N":
        if x <= 0.0:
            raise DomainError("n_l requires x > 0")
        n0 = -math.cos(x) / x
        if l == 0:
            return n0
        n1 = -math.cos(x) / (x * x) - math.sin(x) / x
        for k in range(1, l):
            n0, n1 = n1, (2.0 * k + 1.0) / x * n1 - n0
        return n1
    raise DomainError(f"unknown spherical Bessel kind {kind!r}")


def spherical_bessel_dx(kind: str, l: int, x: float) -> float:
    """d/dx of j_l or n_l via f_l' = f_{l-1} - (l+1)/x f_l (f_0' = -f_1)."""
    if l == 0:
        if kind == "J":
            return -spherical_bessel("J", 1, x)
        return -spherical_bessel("N", 1, x)
    return (spherical_bessel(kind, l - 1, x)
            - (l + 1.0) / x * spherical_bessel(kind, l, x))


def double_factorial(n: int) -> float:
    """n!! with (-1)!! = 0!! = 1."""
    out = 1.0
    while n > 1:
        out *= n
        n -= 2
    return out
