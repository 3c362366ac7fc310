"""The AdS Klein-Gordon mode zoo.

Radial functions come in two linearly independent pairs:

  S^a = sin^l cos^{D+} 2F1(alpha, beta; gamma; sin^2 rho)      regular on axis
  S^b = -sin^{2-l-d} cos^{D+} 2F1(a-g+1, b-g+1; 2-g; sin^2)    singular on axis
  C^a = sin^l cos^{D+} 2F1(alpha, beta; 1+nu; cos^2 rho)       decays at boundary
  C^b = sin^l cos^{D-} 2F1(.., ..; 1-nu; cos^2 rho)            diverges there

with alpha = (l + D+ - omega)/2, beta = (l + D+ + omega)/2, gamma = l + d/2.
Direct series are trusted while their argument stays below the policy
cutoff; outside, evaluation is routed through the S <-> C transfer matrix,
whose entries are obtained from weighted Wronskians in the overlap window.
At the magic frequencies omega+-_{nl} = 2n + l + D+- the S^a series
terminates and coincides with the normalizable Jacobi mode J+-_{nl}.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (CapabilityError, DegenerateBasis, DomainError,
                     ExceptionalBranch, SingularPoint)
from .geometry import AdsParams
from .harmonics import sph_harm
from .specfun import (DEFAULT_POLICY, SeriesPolicy, hyp2f1, hyp2f1_dx,
                      hyp2f1_terminates, jacobi_p, jacobi_p_dx, log_gamma)


class RadialKind(Enum):
    Sa = "sa"
    Sb = "sb"
    Ca = "ca"
    Cb = "cb"


@dataclass(frozen=True)
class TubeLabel:
    omega: float
    l: int
    m: int

    def __post_init__(self):
        if self.l < 0 or abs(self.m) > self.l:
            raise IndexError("need l >= 0 and |m| <= l")


@dataclass(frozen=True)
class SliceLabel:
    n: int
    l: int
    m: int
    branch: str = "plus"

    def __post_init__(self):
        if self.n < 0 or self.l < 0 or abs(self.m) > self.l:
            raise IndexError("need n, l >= 0 and |m| <= l")
        if self.branch not in ("plus", "minus"):
            raise ValueError("branch must be 'plus' or 'minus'")


@dataclass(frozen=True)
class TransferMatrix:
    """Entries of M at fixed (omega, l): (S^a, S^b) = M (C^a, C^b)."""

    m11: float
    m12: float
    m21: float
    m22: float

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def inverse(self) -> "TransferMatrix":
        det = self.det
        if det == 0.0:
            raise DegenerateBasis("transfer matrix is singular")
        return TransferMatrix(self.m22 / det, -self.m12 / det,
                              -self.m21 / det, self.m11 / det)


def hyper_params(kind: RadialKind, omega: float, l: int,
                 params: AdsParams) -> tuple[float, float, float]:
    """Hypergeometric parameters (alpha, beta, gamma) for a radial kind."""
    al = 0.5 * (l + params.delta_plus - omega)
    be = 0.5 * (l + params.delta_plus + omega)
    ga = l + params.d / 2.0
    gc = 1.0 + params.nu
    if kind is RadialKind.Sa:
        return al, be, ga
    if kind is RadialKind.Sb:
        return al - ga + 1.0, be - ga + 1.0, 2.0 - ga
    if not params.c_modes_valid:
        raise CapabilityError(
            f"C-modes undefined at (near-)integer nu = {params.nu}")
    if kind is RadialKind.Ca:
        return al, be, gc
    return al - gc + 1.0, be - gc + 1.0, 2.0 - gc


def magic_frequency(branch: str, n: int, l: int, params: AdsParams) -> float:
    """omega+-_{nl} = 2n + l + Delta+-."""
    if branch == "plus":
        return 2.0 * n + l + params.delta_plus
    if branch == "minus":
        return 2.0 * n + l + params.delta_minus
    raise ValueError("branch must be 'plus' or 'minus'")


def _prefactor_fd(kind: RadialKind, l: int, rho: float, params: AdsParams):
    """Radial prefactor and its rho-derivative for each kind."""
    s, c = math.sin(rho), math.cos(rho)
    dp, dm = params.delta_plus, params.delta_minus
    if kind is RadialKind.Sb:
        p = 2 - l - params.d
        pre = -(s ** p) * c ** dp
        dpre = -(p * s ** (p - 1) * c ** (dp + 1) - dp * s ** (p + 1) * c ** (dp - 1))
        return pre, dpre
    ex = dm if kind is RadialKind.Cb else dp
    if l == 0:
        pre = c ** ex
        dpre = -ex * s * c ** (ex - 1)
    else:
        pre = s ** l * c ** ex
        dpre = l * s ** (l - 1) * c ** (ex + 1) - ex * s ** (l + 1) * c ** (ex - 1)
    return pre, dpre


def _direct_ok(kind: RadialKind, omega: float, l: int, rho: float,
               params: AdsParams, policy: SeriesPolicy) -> bool:
    a, b, _ = hyper_params(kind, omega, l, params)
    arg = math.sin(rho) ** 2 if kind in (RadialKind.Sa, RadialKind.Sb) \
        else math.cos(rho) ** 2
    return arg <= policy.arg_cutoff or hyp2f1_terminates(a, b)


def _radial_direct(kind: RadialKind, omega: float, l: int, rho: float,
                   params: AdsParams, policy: SeriesPolicy):
    """(f, f') by direct series; caller guarantees convergence domain."""
    a, b, c = hyper_params(kind, omega, l, params)
    s, cs = math.sin(rho), math.cos(rho)
    if kind in (RadialKind.Sa, RadialKind.Sb):
        u, du = s * s, 2.0 * s * cs
    else:
        u, du = cs * cs, -2.0 * s * cs
    pre, dpre = _prefactor_fd(kind, l, rho, params)
    f_val = hyp2f1(a, b, c, u, policy)
    df_val = hyp2f1_dx(a, b, c, u, policy) * du
    return pre * f_val, dpre * f_val + pre * df_val


_TRANSFER_RHO = math.pi / 4  # midpoint of the series overlap window
_transfer_cache: dict = {}
_transfer_lock = threading.Lock()


def _weighted_wronskian(fa, da, fb, db, rho: float, d: int) -> float:
    return math.tan(rho) ** (d - 1) * (fa * db - fb * da)


def transfer_matrix(omega: float, l: int, params: AdsParams,
                    policy: SeriesPolicy = DEFAULT_POLICY) -> TransferMatrix:
    """Transfer matrix M with (S^a, S^b) = M (C^a, C^b) at fixed (omega, l).

    Entries are Wronskian projections evaluated where both series converge:
    m11 = W(S^a, C^b)/W(C^a, C^b), m12 = -W(S^a, C^a)/W(C^a, C^b), and the
    S^b row likewise.  Results are memoized per (omega, l, params).
    """
    if not params.c_modes_valid:
        raise CapabilityError(
            f"transfer matrix undefined at (near-)integer nu = {params.nu}")
    key = (omega, l, params.d, params.R, params.m_sq, policy)
    with _transfer_lock:
        hit = _transfer_cache.get(key)
    if hit is not None:
        return hit
    rho = _TRANSFER_RHO
    sa, dsa = _radial_direct(RadialKind.Sa, omega, l, rho, params, policy)
    sb, dsb = _radial_direct(RadialKind.Sb, omega, l, rho, params, policy)
    ca, dca = _radial_direct(RadialKind.Ca, omega, l, rho, params, policy)
    cb, dcb = _radial_direct(RadialKind.Cb, omega, l, rho, params, policy)
    d = params.d
    w_cc = _weighted_wronskian(ca, dca, cb, dcb, rho, d)
    if abs(w_cc) < 1e-12:
        raise DegenerateBasis(f"|W(Ca,Cb)| = {abs(w_cc)} too small")
    mat = TransferMatrix(
        m11=_weighted_wronskian(sa, dsa, cb, dcb, rho, d) / w_cc,
        m12=-_weighted_wronskian(sa, dsa, ca, dca, rho, d) / w_cc,
        m21=_weighted_wronskian(sb, dsb, cb, dcb, rho, d) / w_cc,
        m22=-_weighted_wronskian(sb, dsb, ca, dca, rho, d) / w_cc)
    with _transfer_lock:
        _transfer_cache[key] = mat
    return mat


def radial_eval_fd(kind: RadialKind, omega: float, l: int, rho: float,
                   params: AdsParams,
                   policy: SeriesPolicy = DEFAULT_POLICY) -> tuple[float, float]:
    """Radial function and its rho-derivative, switching to the transfer
    matrix outside the direct-series domain."""
    if not 0.0 <= rho < math.pi / 2:
        raise DomainError("rho must lie in [0, pi/2)")
    if kind is RadialKind.Sb and rho == 0.0:
        raise SingularPoint("S^b diverges on the time axis")
    if rho == 0.0:
        if kind in (RadialKind.Ca, RadialKind.Cb):
            if not params.c_modes_valid:
                raise CapabilityError("C-modes need noninteger nu")
            raise SingularPoint("C-modes diverge on the time axis")
        return (1.0, 0.0) if l == 0 else (0.0, 1.0 if l == 1 else 0.0)
    if _direct_ok(kind, omega, l, rho, params, policy):
        return _radial_direct(kind, omega, l, rho, params, policy)
    mat = transfer_matrix(omega, l, params, policy)
    if kind in (RadialKind.Sa, RadialKind.Sb):
        ca, dca = _radial_direct(RadialKind.Ca, omega, l, rho, params, policy)
        cb, dcb = _radial_direct(RadialKind.Cb, omega, l, rho, params, policy)
        if kind is RadialKind.Sa:
            return mat.m11 * ca + mat.m12 * cb, mat.m11 * dca + mat.m12 * dcb
        return mat.m21 * ca + mat.m22 * cb, mat.m21 * dca + mat.m22 * dcb
    inv = mat.inverse()
    sa, dsa = _radial_direct(RadialKind.Sa, omega, l, rho, params, policy)
    sb, dsb = _radial_direct(RadialKind.Sb, omega, l, rho, params, policy)
    if kind is RadialKind.Ca:
        return inv.m11 * sa + inv.m12 * sb, inv.m11 * dsa + inv.m12 * dsb
    return inv.m21 * sa + inv.m22 * sb, inv.m21 * dsa + inv.m22 * dsb


def radial_eval(kind: RadialKind, omega: float, l: int, rho: float,
                params: AdsParams,
                policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    return radial_eval_fd(kind, omega, l, rho, params, policy)[0]


def radial_second_derivative(f: float, fp: float, omega: float, l: int,
                             rho: float, params: AdsParams) -> float:
    """f'' from the radial ODE given (f, f'); avoids differentiating series
    twice."""
    d = params.d
    t = math.tan(rho)
    c2 = math.cos(rho) ** 2
    return (-(d - 1) / (t * c2) * fp
            - (omega * omega - l * (l + d - 2) / (t * t * c2)
               - params.msq_r2 / c2) * f)


def _jacobi_norm_prefactor(n: int, l: int, params: AdsParams) -> float:
    """n! / (l + d/2)_n, via log-gammas for large n."""
    ga = l + params.d / 2.0
    return math.exp(log_gamma(n + 1.0) + log_gamma(ga) - log_gamma(n + ga))


def jacobi_radial(branch: str, n: int, l: int, rho, params: AdsParams):
    """Jacobi radial mode J+-_{nl}(rho) =
    (n!/(l+d/2)_n) sin^l cos^{D+-} P_n^{(l+d/2-1, +-nu)}(cos 2 rho).

    Accepts scalar or ndarray rho.
    """
    if branch == "minus" and not params.exceptional_range:
        raise ExceptionalBranch(
            f"minus branch requires nu in (0,1); nu = {params.nu}")
    nu = params.nu if branch == "plus" else -params.nu
    ex = params.delta_plus if branch == "plus" else params.delta_minus
    ga = l + params.d / 2.0
    pref = _jacobi_norm_prefactor(n, l, params)
    s, c = np.sin(rho), np.cos(rho)
    return pref * s ** l * c ** ex * jacobi_p(ga - 1.0, nu, n, np.cos(2.0 * np.asarray(rho)))


def jacobi_radial_fd(branch: str, n: int, l: int, rho, params: AdsParams):
    """(J, dJ/drho), vectorized over rho."""
    if branch == "minus" and not params.exceptional_range:
        raise ExceptionalBranch(
            f"minus branch requires nu in (0,1); nu = {params.nu}")
    nu = params.nu if branch == "plus" else -params.nu
    ex = params.delta_plus if branch == "plus" else params.delta_minus
    ga = l + params.d / 2.0
    pref = _jacobi_norm_prefactor(n, l, params)
    rho = np.asarray(rho, dtype=float)
    s, c = np.sin(rho), np.cos(rho)
    x = np.cos(2.0 * rho)
    pval = jacobi_p(ga - 1.0, nu, n, x)
    dval = jacobi_p_dx(ga - 1.0, nu, n, x) * (-2.0 * np.sin(2.0 * rho))
    if l == 0:
        pre = c ** ex
        dpre = -ex * s * c ** (ex - 1.0)
    else:
        pre = s ** l * c ** ex
        dpre = l * s ** (l - 1.0) * c ** (ex + 1.0) - ex * s ** (l + 1.0) * c ** (ex - 1.0)
    return pref * pre * pval, pref * (dpre * pval + pre * dval)


def norm_constant(branch: str, n: int, l: int, params: AdsParams) -> float:
    """Equal-time norm N+-_{nl} = int_0^{pi/2} tan^{d-1} (J+-_{nl})^2 drho
    in closed form:
    n! G(g)^2 G(n+-nu+1) / (2 w+-_{nl} G(n+g) G(n+-nu+g)), g = l + d/2.
    """
    if branch == "minus" and not params.exceptional_range:
        raise ExceptionalBranch(
            f"minus branch requires nu in (0,1); nu = {params.nu}")
    nu = params.nu if branch == "plus" else -params.nu
    ga = l + params.d / 2.0
    om = magic_frequency(branch, n, l, params)
    return math.exp(log_gamma(n + 1.0) + 2.0 * log_gamma(ga)
                    + log_gamma(n + nu + 1.0) - log_gamma(n + ga)
                    - log_gamma(n + nu + ga)) / (2.0 * om)


def wronskian(kind_a: RadialKind, kind_b: RadialKind, omega: float, l: int,
              rho: float, params: AdsParams,
              policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Weighted Wronskian tan^{d-1}(rho) (f_a f_b' - f_b f_a'); constant in
    rho for two solutions of the same radial equation."""
    fa, da = radial_eval_fd(kind_a, omega, l, rho, params, policy)
    fb, db = radial_eval_fd(kind_b, omega, l, rho, params, policy)
    return _weighted_wronskian(fa, da, fb, db, rho, params.d)


def mode_eval(label, point, params: AdsParams,
              kind: RadialKind | None = None,
              policy: SeriesPolicy = DEFAULT_POLICY) -> complex:
    """Full spacetime mode e^{-i omega t} Y_l^m(Omega) radial(rho).

    `label` is a TubeLabel (kind selects the radial family, default S^a) or
    a SliceLabel (Jacobi radial at the magic frequency).  `point` is
    (t, rho, theta, phi).
    """
    t, rho, theta, phi = point
    if isinstance(label, SliceLabel):
        omega = magic_frequency(label.branch, label.n, label.l, params)
        radial = jacobi_radial(label.branch, label.n, label.l, rho, params)
        l, m = label.l, label.m
    else:
        omega = label.omega
        l, m = label.l, label.m
        radial = radial_eval(kind or RadialKind.Sa, omega, l, rho, params, policy)
    return np.exp(-1j * omega * t) * sph_harm(l, m, theta, phi) * radial
