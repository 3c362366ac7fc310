"""Global AdS parameters, regions, the radial Klein-Gordon residual check,
Killing vector fields as numerical differential operators, Lie-bracket
verification, and the flat-limit rescalings.

Coordinates are global (t, rho, Omega) with the boundary at rho = pi/2.
Killing operators act on smooth closures field(t, rho, xi) where xi is a
unit 3-vector; the tangential sphere derivative is realized by extending
the field to a neighborhood of the sphere at degree zero and taking plain
cartesian differences, which reproduces (d_{xi_j} - xi_j xi_i d_{xi_i})
exactly on the sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_jacobi

from .errors import (BfViolation, BoundaryProximity, EvenDimension,
                     WindowError)
from .harmonics import AngularGrid

_NU_INTEGER_TOL = 1e-9


@dataclass(frozen=True)
class AdsParams:
    """Global AdS configuration: dimension, curvature radius, mass parameter,
    and the derived weights nu, Delta_+/-.
    """

    d: int
    R: float
    m_sq: float
    nu: float
    delta_plus: float
    delta_minus: float

    @property
    def c_modes_valid(self) -> bool:
        """C-modes and the transfer matrix need noninteger nu."""
        return abs(self.nu - round(self.nu)) > _NU_INTEGER_TOL

    @property
    def msq_r2(self) -> float:
        return self.m_sq * self.R * self.R

    @property
    def exceptional_range(self) -> bool:
        """nu in (0, 1): the only range where minus-branch Jacobi modes exist."""
        return 0.0 < self.nu < 1.0


def make_params(d: int, R: float, m_sq: float) -> AdsParams:
    """Build AdsParams; raises EvenDimension / BfViolation on bad input."""
    if d < 3 or d % 2 == 0:
        raise EvenDimension(f"d = {d}: only odd d >= 3 supported")
    if R <= 0.0:
        raise ValueError("curvature radius must be positive")
    msq_r2 = m_sq * R * R
    bound = -d * d / 4.0
    if msq_r2 < bound:
        raise BfViolation(
            f"m^2 R^2 = {msq_r2} below Breitenlohner-Freedman bound {bound}")
    nu = math.sqrt(d * d / 4.0 + msq_r2)
    return AdsParams(d=d, R=R, m_sq=m_sq, nu=nu,
                     delta_plus=d / 2.0 + nu, delta_minus=d / 2.0 - nu)


@dataclass(frozen=True)
class Slice:
    t1: float
    t2: float

    def __post_init__(self):
        if not self.t1 < self.t2:
            raise ValueError("slice needs t1 < t2")


@dataclass(frozen=True)
class Rod:
    rho0: float

    def __post_init__(self):
        if not 0.0 < self.rho0 < math.pi / 2:
            raise ValueError("rod radius must lie in (0, pi/2)")


@dataclass(frozen=True)
class Tube:
    rho1: float
    rho2: float

    def __post_init__(self):
        if not 0.0 < self.rho1 < self.rho2 <= math.pi / 2:
            raise ValueError("tube needs 0 < rho1 < rho2 <= pi/2")


Region = Slice | Rod | Tube


@dataclass(frozen=True)
class FieldGrid:
    """Complex field samples on a structured (t, rho, theta, phi) grid."""

    t_nodes: np.ndarray
    rho_nodes: np.ndarray
    angular: AngularGrid
    values: np.ndarray  # shape (nt, nrho, ntheta, nphi)

    def __post_init__(self):
        expected = (len(self.t_nodes), len(self.rho_nodes),
                    self.angular.n_theta, self.angular.n_phi)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape} != {expected}")
        if np.any(self.rho_nodes < 0.0) or np.any(self.rho_nodes >= math.pi / 2):
            raise ValueError("rho nodes must lie in [0, pi/2)")

    def interpolator(self) -> Callable:
        """Linear interpolant field(t, rho, xi) over the sampled box."""
        from scipy.interpolate import RegularGridInterpolator
        from .harmonics import xyz_to_angles
        interp_re = RegularGridInterpolator(
            (self.t_nodes, self.rho_nodes, self.angular.theta[::-1], self.angular.phi),
            np.real(self.values[:, :, ::-1, :]))
        interp_im = RegularGridInterpolator(
            (self.t_nodes, self.rho_nodes, self.angular.theta[::-1], self.angular.phi),
            np.imag(self.values[:, :, ::-1, :]))

        def closure(t, rho, xi):
            theta, phi = xyz_to_angles(np.asarray(xi) / np.linalg.norm(xi))
            pt = np.array([[t, rho, theta, phi % (2.0 * math.pi)]])
            return complex(interp_re(pt)[0], interp_im(pt)[0])

        return closure


def radial_measure(params: AdsParams, n_nodes: int = 128):
    """Radial quadrature rule (rho_q, w_q) with the tan^{d-1} measure folded
    in: sum_q w_q g(rho_q) ~= int_0^{pi/2} tan^{d-1}(rho) g(rho) drho.

    Built as Gauss-Jacobi in x = cos(2 rho) with weight
    (1-x)^{(d-2)/2} (1+x)^nu: tan^{d-1} drho = weight * (1+x)^{-d/2-nu} dx/2,
    and any product of two same-l Jacobi modes leaves a pure polynomial, so
    the mode orthogonality integrals are exact to roundoff for every mass
    above the Breitenlohner-Freedman bound.
    """
    d, nu = params.d, params.nu
    x, wx = roots_jacobi(n_nodes, (d - 2) / 2.0, nu)
    rho = 0.5 * np.arccos(x)
    w = wx * (1.0 + x) ** (-d / 2.0 - nu) / 2.0
    return rho, w


def kg_residual(radial_fn: Callable[[float], float], omega: float, l: int,
                params: AdsParams, rho_window: tuple[float, float],
                n_points: int = 40, step: float = 1e-4) -> float:
    """Max normalized residual of the radial Klein-Gordon operator
    cos^2 f'' + (d-1)/tan f' + [w^2 cos^2 - l(l+d-2)/tan^2 - m^2 R^2] f
    on a uniform sub-grid of the window, derivatives by 5-point stencils.
    """
    a, b = rho_window
    if not 0.0 < a < b < math.pi / 2:
        raise WindowError("window must lie strictly inside (0, pi/2)")
    d = params.d
    msq = params.msq_r2
    rho = np.linspace(a, b, n_points)
    h = step
    worst = 0.0
    scale = 0.0
    for r in rho:
        fm2, fm1 = radial_fn(r - 2 * h), radial_fn(r - h)
        f0 = radial_fn(r)
        fp1, fp2 = radial_fn(r + h), radial_fn(r + 2 * h)
        d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h)
        d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h)
        c2 = math.cos(r) ** 2
        t = math.tan(r)
        res = c2 * d2 + (d - 1) / t * d1 + \
            (omega * omega * c2 - l * (l + d - 2) / (t * t) - msq) * f0
        worst = max(worst, abs(res))
        scale = max(scale, abs(f0))
    return worst / scale if scale > 0 else worst


# ---------------------------------------------------------------------------
# Killing vector fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TimeTranslation:
    """K_{d+1,0} = d_t."""


@dataclass(frozen=True)
class Rotation:
    j: int
    k: int

    def __post_init__(self):
        if self.j == self.k:
            raise ValueError("rotation needs j != k")


@dataclass(frozen=True)
class Boost0:
    """K_{0j}."""
    j: int


@dataclass(frozen=True)
class BoostD1:
    """K_{d+1,j}."""
    j: int


GeneratorId = TimeTranslation | Rotation | Boost0 | BoostD1

FD_STEP = 1e-3
_FD_W = (1.0, -8.0, 8.0, -1.0)  # 4th-order central weights / 12h
_FD_O = (-2.0, -1.0, 1.0, 2.0)


def _diff(fn, x0: float, h: float):
    return sum(w * fn(x0 + o * h) for w, o in zip(_FD_W, _FD_O)) / (12.0 * h)


def _sphere_grad(field, t, rho, xi, h):
    """Cartesian gradient of the degree-zero extension of the angular slice,
    which equals the tangential projector applied to the field."""
    xi = np.asarray(xi, dtype=float)
    out = np.zeros(3, dtype=complex)
    for j in range(3):
        def fj(s):
            v = xi.copy()
            v[j] = s
            return field(t, rho, v / np.linalg.norm(v))
        out[j] = _diff(fj, xi[j], h)
    return out


def killing_apply(generator: GeneratorId, fld, point, h: float = FD_STEP):
    """(K phi)(point): apply the Killing differential operator numerically.

    `fld` is a smooth closure field(t, rho, xi) with xi a unit 3-vector, or
    a FieldGrid (adapted through its linear interpolator, which limits the
    attainable stencil accuracy); `point` is (t, rho, xi).
    """
    if isinstance(fld, FieldGrid):
        fld = fld.interpolator()
    t, rho, xi = point
    xi = np.asarray(xi, dtype=float)
    if isinstance(generator, TimeTranslation):
        return _diff(lambda s: fld(s, rho, xi), t, h)
    if isinstance(generator, Rotation):
        j, k = generator.j - 1, generator.k - 1
        grad = _sphere_grad(fld, t, rho, xi, h)
        return xi[j] * grad[k] - xi[k] * grad[j]
    if rho - 2 * h <= 0.0 or rho + 2 * h >= math.pi / 2:
        raise BoundaryProximity("rho stencil leaves (0, pi/2)")
    j = generator.j - 1
    dt = _diff(lambda s: fld(s, rho, xi), t, h)
    dr = _diff(lambda s: fld(t, s, xi), rho, h)
    grad = _sphere_grad(fld, t, rho, xi, h)
    sr, cr = math.sin(rho), math.cos(rho)
    st, ct = math.sin(t), math.cos(t)
    if isinstance(generator, Boost0):
        return (-xi[j] * ct * sr * dt - xi[j] * st * cr * dr
                - (st / sr) * grad[j])
    if isinstance(generator, BoostD1):
        return (-xi[j] * st * sr * dt + xi[j] * ct * cr * dr
                + (ct / sr) * grad[j])
    raise TypeError(f"unknown generator {generator!r}")


def boost_rho_coefficient(generator: GeneratorId, t: float, rho: float,
                          xi) -> float:
    """Analytic coefficient of d_rho in the boost generators.

    cos(rho) is evaluated as sin(pi/2 - rho) so the coefficient is exactly
    zero at the represented boundary value rho = pi/2: the boosts map the
    boundary to itself.
    """
    xi = np.asarray(xi, dtype=float)
    cr = math.sin(math.pi / 2 - rho)
    if isinstance(generator, Boost0):
        return -xi[generator.j - 1] * math.sin(t) * cr
    if isinstance(generator, BoostD1):
        return xi[generator.j - 1] * math.cos(t) * cr
    return 0.0


def _canonical_pair(gen: GeneratorId, d: int) -> tuple[int, int]:
    """Embedding-space index pair (A, B) with K_{AB} = X_A d_B - X_B d_A."""
    if isinstance(gen, TimeTranslation):
        return (d + 1, 0)
    if isinstance(gen, Rotation):
        return (gen.j, gen.k)
    if isinstance(gen, Boost0):
        return (0, gen.j)
    return (d + 1, gen.j)


def _from_pair(a: int, b: int, d: int) -> tuple[float, GeneratorId]:
    """Map an index pair to (sign, generator)."""
    if a == b:
        raise ValueError("degenerate pair")
    for (x, y, s) in ((a, b, 1.0), (b, a, -1.0)):
        if x == d + 1 and y == 0:
            return s, TimeTranslation()
        if x == 0 and 1 <= y <= d:
            return s, Boost0(y)
        if x == d + 1 and 1 <= y <= d:
            return s, BoostD1(y)
    if 1 <= a <= d and 1 <= b <= d:
        return 1.0, Rotation(a, b)
    raise ValueError(f"pair ({a},{b}) not representable")


def _eta(i: int, j: int, d: int) -> float:
    """Embedding metric diag(-1, +1...+1, -1) of R^{2,d}."""
    if i != j:
        return 0.0
    return -1.0 if i == 0 or i == d + 1 else 1.0


def bracket_rhs(gen_a: GeneratorId, gen_b: GeneratorId, d: int):
    """[K_A, K_B] as a list of (coefficient, generator) terms, from
    [K_AB, K_CD] = -eta_AC K_BD + eta_BC K_AD - eta_BD K_AC + eta_AD K_BC.
    """
    a, b = _canonical_pair(gen_a, d)
    c, e = _canonical_pair(gen_b, d)
    raw = [(-_eta(a, c, d), (b, e)),
           (_eta(b, c, d), (a, e)),
           (-_eta(b, e, d), (a, c)),
           (_eta(a, e, d), (b, c))]
    out = []
    for coeff, (p, q) in raw:
        if coeff == 0.0 or p == q:
            continue
        sign, gen = _from_pair(p, q, d)
        out.append((coeff * sign, gen))
    return out


def verify_lie_bracket(gen_a: GeneratorId, gen_b: GeneratorId,
                       test_field: Callable, sample_points: Sequence,
                       d: int = 3, h: float = 5e-3) -> float:
    """Max |[K_A, K_B] phi - (bracket table RHS) phi| over the points.

    The commutator is evaluated by nested numerical application; the inner
    operator becomes the field of the outer one.
    """
    if gen_a == gen_b:
        return 0.0
    rhs_terms = bracket_rhs(gen_a, gen_b, d)

    def k_of(gen):
        return lambda t, rho, xi: killing_apply(gen, test_field, (t, rho, xi), h)

    ka_field = k_of(gen_a)
    kb_field = k_of(gen_b)
    worst = 0.0
    for point in sample_points:
        comm = (killing_apply(gen_a, kb_field, point, h)
                - killing_apply(gen_b, ka_field, point, h))
        rhs = sum(coeff * killing_apply(gen, test_field, point, h)
                  for coeff, gen in rhs_terms)
        worst = max(worst, abs(comm - rhs))
    return worst


def flat_rescale(params: AdsParams, t: float, rho: float) -> tuple[float, float]:
    """(tau, r) = (R t, R rho)."""
    return params.R * t, params.R * rho


def flat_unscale(params: AdsParams, tau: float, r: float) -> tuple[float, float]:
    return tau / params.R, r / params.R


def flat_labels(params: AdsParams, omega: float) -> tuple[float, float, float]:
    """(omega_tilde, p^R_omega, p_tilde) of the flat-limit rescaling."""
    p_r = math.sqrt(abs(omega * omega - params.msq_r2))
    return omega / params.R, p_r, p_r / params.R
