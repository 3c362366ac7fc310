"""Minkowski (d = 3) reference theory: jcheck/ncheck radial functions,
slice and tube expansions, their symplectic structures, Killing operators,
and the flat-limit comparison harness against the AdS machinery.

Tube representations live on an EnergyGrid (E_k = k dE, integral realized
as dE * sum, conjugate window T = 2 pi / dE).  Slice representations are
point-supported in the radial momentum p; their symplectic pairing is the
label-diagonal momentum form (a continuum quadrature form would be
delta-normalized for point labels).

Flat-limit per-mode map used by the comparison harness: for the AdS label
(n, l, m) with w = w+_{nl}, w~ = w/R, p~ = sqrt|w~^2 - m^2|,

    J+_{nl}(r/R) -> (2l+d-2)!! / (p^R)^l  j_l(p~ r),

so field-equal representations satisfy phi_AdS = T' phi_Mink with
T' = 2 p~ (p^R)^l / (sqrt(2 pi) (2l+d-2)!!), and label-diagonal symplectic
contributions match after the measure Jacobian dn/dp~ = R p~ / (2 w~).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .expansions import OmegaGrid, SliceRep, pairwise_sum
from .geometry import AdsParams, _diff, _sphere_grad, make_params
from .harmonics import AngularGrid, sph_harm
from .modes import RadialKind, magic_frequency, norm_constant, radial_eval
from .specfun import double_factorial, spherical_bessel, spherical_bessel_dx

EnergyGrid = OmegaGrid  # same discretization: E_k = k dE, window 2 pi / dE


@dataclass(frozen=True)
class MinkTubeLabel:
    E: float
    l: int
    m: int

    def __post_init__(self):
        if self.l < 0 or abs(self.m) > self.l:
            raise IndexError("need l >= 0 and |m| <= l")


@dataclass(frozen=True)
class MinkSliceLabel:
    p: float
    l: int
    m: int

    def __post_init__(self):
        if self.p <= 0.0:
            raise ValueError("radial momentum p must be positive")
        if self.l < 0 or abs(self.m) > self.l:
            raise IndexError("need l >= 0 and |m| <= l")


@dataclass(frozen=True)
class MinkTubeRep:
    """Sparse tube rep on an EnergyGrid: (k, l, m) -> (a, b)."""

    grid: EnergyGrid
    coeffs: dict
    m_field: float = 0.0

    def labels(self):
        return sorted(self.coeffs)

    def coeff(self, k, l, m):
        return self.coeffs.get((k, l, m), (0.0 + 0.0j, 0.0 + 0.0j))


@dataclass(frozen=True)
class MinkSliceRep:
    """Point-supported slice rep: (p, l, m) -> (phi_plus, phi_minus_conj)."""

    coeffs: dict
    m_field: float = 0.0

    def labels(self):
        return sorted(self.coeffs)

    def coeff(self, p, l, m):
        return self.coeffs.get((p, l, m), (0.0 + 0.0j, 0.0 + 0.0j))


# ---------------------------------------------------------------------------
# evanescent-branch modified spherical functions (real ascending series)
# ---------------------------------------------------------------------------

def _mod_j(l: int, x: float, tol: float = 1e-16) -> float:
    """i^{-l} j_l(i x): positive-term ascending series, real for real x."""
    if x == 0.0:
        return 1.0 if l == 0 else 0.0
    pref = x ** l / double_factorial(2 * l + 1)
    term, total = 1.0, 1.0
    k = 0
    while True:
        term *= (x * x / 4.0) / ((k + 1.0) * (l + 1.5 + k))
        total += term
        k += 1
        if term <= tol * total or k > 600:
            break
    return pref * total


def _mod_n(l: int, x: float, tol: float = 1e-16) -> float:
    """i^{l+1} n_l(i x): real ascending series; diverges at x = 0."""
    if x <= 0.0:
        raise DomainError("modified Neumann series needs x > 0")
    pref = -double_factorial(2 * l - 1) / x ** (l + 1)
    term, total = 1.0, 1.0
    k = 0
    while True:
        term *= (x * x / 4.0) / ((k + 1.0) * (0.5 - l + k))
        total += term
        k += 1
        if abs(term) <= tol * abs(total) or k > 600:
            break
    return pref * total


def _mod_j_dx(l: int, x: float) -> float:
    lower = math.cosh(x) / x if l == 0 else _mod_j(l - 1, x)
    return lower - (l + 1.0) / x * _mod_j(l, x)


def _mod_n_dx(l: int, x: float) -> float:
    lower = math.sinh(x) / x if l == 0 else _mod_n(l - 1, x)
    return -lower - (l + 1.0) / x * _mod_n(l, x)


def jcheck(E: float, l: int, r: float, m_field: float) -> float:
    """Radial tube function: j_l(p r) on the propagating branch
    (D = E^2 - m^2 >= 0), i^{-l} j_l(i p r) on the evanescent branch."""
    d_disc = E * E - m_field * m_field
    p = math.sqrt(abs(d_disc))
    if d_disc >= 0.0:
        return spherical_bessel("J", l, p * r)
    return _mod_j(l, p * r)


def ncheck(E: float, l: int, r: float, m_field: float) -> float:
    """Radial tube function: n_l(p r) / i^{l+1} n_l(i p r); r > 0."""
    if r <= 0.0:
        raise DomainError("ncheck needs r > 0")
    d_disc = E * E - m_field * m_field
    p = math.sqrt(abs(d_disc))
    if d_disc == 0.0:
        raise DomainError("ncheck diverges at the threshold |E| = m")
    if d_disc > 0.0:
        return spherical_bessel("N", l, p * r)
    return _mod_n(l, p * r)


def jcheck_dr(E: float, l: int, r: float, m_field: float) -> float:
    d_disc = E * E - m_field * m_field
    p = math.sqrt(abs(d_disc))
    if d_disc >= 0.0:
        return p * spherical_bessel_dx("J", l, p * r)
    return p * _mod_j_dx(l, p * r)


def ncheck_dr(E: float, l: int, r: float, m_field: float) -> float:
    d_disc = E * E - m_field * m_field
    p = math.sqrt(abs(d_disc))
    if d_disc > 0.0:
        return p * spherical_bessel_dx("N", l, p * r)
    return p * _mod_n_dx(l, p * r)


# ---------------------------------------------------------------------------
# synthesis and symplectic structures
# ---------------------------------------------------------------------------

def mink_synth_slice(rep: MinkSliceRep, point) -> complex:
    """sum over labels of 2 p (2 pi)^{-1/2} j_l(p r) [phi^+ e^{-iEt} Y +
    conj(phi^-) e^{+iEt} conj(Y)]."""
    t, r, theta, phi = point
    m_f = rep.m_field
    terms = []
    for (p, l, m) in rep.labels():
        cp, cq = rep.coeffs[(p, l, m)]
        e_p = math.sqrt(p * p + m_f * m_f)
        weight = 2.0 * p / math.sqrt(2.0 * math.pi) * spherical_bessel("J", l, p * r)
        ylm = sph_harm(l, m, theta, phi)
        terms.append(weight * (cp * np.exp(-1j * e_p * t) * ylm
                               + cq * np.exp(1j * e_p * t) * np.conj(ylm)))
    return pairwise_sum(terms)


def mink_synth_tube(rep: MinkTubeRep, point) -> complex:
    """dE sum over labels of (p^R_E / 4 pi) [a jcheck + b ncheck] e^{-iEt} Y."""
    t, r, theta, phi = point
    terms = []
    for (k, l, m) in rep.labels():
        a, b = rep.coeffs[(k, l, m)]
        e_k = rep.grid.omega(k)
        p_r = math.sqrt(abs(e_k * e_k - rep.m_field ** 2))
        val = (a * jcheck(e_k, l, r, rep.m_field)
               + b * ncheck(e_k, l, r, rep.m_field))
        terms.append(p_r / (4.0 * math.pi) * val
                     * np.exp(-1j * e_k * t) * sph_harm(l, m, theta, phi))
    return rep.grid.d_omega * pairwise_sum(terms)


def mink_synth_tube_dr(rep: MinkTubeRep, point) -> complex:
    t, r, theta, phi = point
    terms = []
    for (k, l, m) in rep.labels():
        a, b = rep.coeffs[(k, l, m)]
        e_k = rep.grid.omega(k)
        p_r = math.sqrt(abs(e_k * e_k - rep.m_field ** 2))
        val = (a * jcheck_dr(e_k, l, r, rep.m_field)
               + b * ncheck_dr(e_k, l, r, rep.m_field))
        terms.append(p_r / (4.0 * math.pi) * val
                     * np.exp(-1j * e_k * t) * sph_harm(l, m, theta, phi))
    return rep.grid.d_omega * pairwise_sum(terms)


def mink_omega_slice(eta: MinkSliceRep, zeta: MinkSliceRep) -> complex:
    """Momentum form +i sum E_p (conj(eta^-) zeta^+ - eta^+ conj(zeta^-)).

    Point-supported labels admit no finite radial quadrature form (the
    continuum pairing is delta-normalized), so only this form is exposed.
    """
    labels = sorted(set(eta.coeffs) | set(zeta.coeffs))
    m_f = eta.m_field
    terms = []
    for (p, l, m) in labels:
        ep_, eq_ = eta.coeff(p, l, m)
        zp_, zq_ = zeta.coeff(p, l, m)
        e_p = math.sqrt(p * p + m_f * m_f)
        terms.append(1j * e_p * (eq_ * zp_ - ep_ * zq_))
    return pairwise_sum(terms)


def mink_omega_tube_momentum(eta: MinkTubeRep, zeta: MinkTubeRep) -> complex:
    """dE sum (p_E / 16 pi) (eta^a_{Elm} zeta^b_{-E,l,-m} - eta^b zeta^a)."""
    terms = []
    for (k, l, m) in eta.labels():
        ea, eb = eta.coeffs[(k, l, m)]
        za, zb = zeta.coeff(-k, l, -m)
        e_k = eta.grid.omega(k)
        p_r = math.sqrt(abs(e_k * e_k - eta.m_field ** 2))
        terms.append(p_r / (16.0 * math.pi) * (ea * zb - eb * za))
    return eta.grid.d_omega * pairwise_sum(terms)


def mink_omega_tube_quadrature(eta: MinkTubeRep, zeta: MinkTubeRep,
                               r0: float,
                               angular: AngularGrid | None = None) -> complex:
    """(r0^2/2) int dt dOmega (eta d_r zeta - zeta d_r eta) over one window."""
    ang = angular or AngularGrid(16, 32)
    grid = eta.grid
    span = max(abs(k) for k in set(kk for kk, _, _ in eta.coeffs)
               | set(kk for kk, _, _ in zeta.coeffs))
    n_t = 2 * span + 1
    t_nodes = grid.time_nodes(n_t)
    dt = grid.window / n_t
    total = 0.0 + 0.0j
    for i, t in enumerate(t_nodes):
        fe = np.zeros((ang.n_theta, ang.n_phi), dtype=complex)
        fz = np.zeros_like(fe)
        dfe = np.zeros_like(fe)
        dfz = np.zeros_like(fe)
        for rep, f_arr, df_arr in ((eta, fe, dfe), (zeta, fz, dfz)):
            for (k, l, m) in rep.labels():
                a, b = rep.coeffs[(k, l, m)]
                e_k = grid.omega(k)
                p_r = math.sqrt(abs(e_k * e_k - rep.m_field ** 2))
                w = grid.d_omega * p_r / (4.0 * math.pi) * np.exp(-1j * e_k * t)
                ylm = ang.ylm(l, m)
                f_arr += w * (a * jcheck(e_k, l, r0, rep.m_field)
                              + b * ncheck(e_k, l, r0, rep.m_field)) * ylm
                df_arr += w * (a * jcheck_dr(e_k, l, r0, rep.m_field)
                               + b * ncheck_dr(e_k, l, r0, rep.m_field)) * ylm
        total += dt * ang.integrate(fe * dfz - fz * dfe)
    return 0.5 * r0 * r0 * total


# ---------------------------------------------------------------------------
# Minkowski Killing operators
# ---------------------------------------------------------------------------

def mink_killing_apply(name: str, fld, point, j: int = 3,
                       h: float = 1e-3) -> complex:
    """Minkowski Killing operators on closures field(tau, r, xi):
    "T0" = d_tau, "Tj" = xi_j d_r + (1/r)(tangential_j),
    "K0j" = -r xi_j d_tau - tau xi_j d_r - (tau/r)(tangential_j)."""
    tau, r, xi = point
    xi = np.asarray(xi, dtype=float)
    if name == "T0":
        return _diff(lambda s: fld(s, r, xi), tau, h)
    grad = _sphere_grad(fld, tau, r, xi, h)
    dr = _diff(lambda s: fld(tau, s, xi), r, h)
    jj = j - 1
    if name == "Tj":
        return xi[jj] * dr + grad[jj] / r
    if name == "K0j":
        dt = _diff(lambda s: fld(s, r, xi), tau, h)
        return -r * xi[jj] * dt - tau * xi[jj] * dr - tau / r * grad[jj]
    raise ValueError(f"unknown Minkowski generator {name!r}")


# ---------------------------------------------------------------------------
# flat-limit comparison harness
# ---------------------------------------------------------------------------

def _flat_map_factor(params: AdsParams, n: int, l: int) -> tuple[float, float, float]:
    """(omega_tilde, p_tilde, T') for the per-mode flat-limit map."""
    om = magic_frequency("plus", n, l, params)
    om_t = om / params.R
    m_f = math.sqrt(params.m_sq) if params.m_sq > 0 else 0.0
    p_t = math.sqrt(abs(om_t * om_t - m_f * m_f))
    p_r = p_t * params.R
    t_fac = 2.0 * p_t * p_r ** l / (math.sqrt(2.0 * math.pi)
                                    * double_factorial(2 * l + params.d - 2))
    return om_t, p_t, t_fac


def flat_limit_compare(m_field: float = 0.0,
                       R_values=(100.0, 1000.0),
                       omega_tilde: float = 1.3,
                       l_values=(0, 1, 2),
                       r_values=(0.5, 1.0, 3.0, 5.0),
                       tau: float = 0.7) -> dict:
    """Error table for the three flat-limit claims, per curvature radius:

      radial:       rescaled S^a vs jcheck on the r window
      slice_synth:  3-label Jacobi synthesis vs Minkowski slice synthesis
      symplectic:   label-diagonal slice pairings under the per-mode map

    Coordinates (tau, r), the field mass and omega_tilde are held fixed
    while R grows; every entry should shrink roughly like 1/R^2 (radial,
    synthesis) or 1/R (symplectic normalization).
    """
    out = {"radial": {}, "slice_synth": {}, "symplectic": {}}
    theta0, phi0 = 1.1, 0.4
    for R in R_values:
        params = make_params(3, R, m_field * m_field)
        # (i) rescaled radial function vs jcheck
        worst = 0.0
        for l in l_values:
            om = omega_tilde * R
            p_r = math.sqrt(abs(om * om - m_field * m_field * R * R))
            scale = p_r ** l / double_factorial(2 * l + 1)
            for r in r_values:
                ads = scale * radial_eval(RadialKind.Sa, om, l, r / R, params)
                mink = jcheck(omega_tilde, l, r, m_field)
                worst = max(worst, abs(ads - mink) / max(abs(mink), 1e-3))
        out["radial"][R] = worst

        # labels shared by (ii) and (iii): integer n nearest the target
        labels = []
        for i, l in enumerate(l_values):
            n = round((omega_tilde * (1.0 + 0.15 * i) * R - l
                       - params.delta_plus) / 2.0)
            labels.append((max(n, 0), l, min(l, 1)))
        coeffs_mink = {}
        coeffs_ads = {}
        for i, (n, l, m) in enumerate(labels):
            om_t, p_t, t_fac = _flat_map_factor(params, n, l)
            c_p = 0.8 + 0.3j * (i + 1)
            c_q = 0.2 - 0.1j * i
            coeffs_mink[(p_t, l, m)] = (c_p, c_q)
            coeffs_ads[(n, l, m)] = (t_fac * c_p, t_fac * c_q)
        ads_rep = SliceRep(coeffs_ads)
        mink_rep = MinkSliceRep(coeffs_mink, m_field)

        worst = 0.0
        for r in r_values:
            from .expansions import synth
            ads_val = synth(ads_rep, (tau / R, r / R, theta0, phi0), params)
            mink_val = mink_synth_slice(mink_rep, (tau, r, theta0, phi0))
            worst = max(worst, abs(ads_val - mink_val) / max(abs(mink_val), 1e-3))
        out["slice_synth"][R] = worst

        # (iii) symplectic: per-label AdS contribution times dp~/dn vs Mink
        worst = 0.0
        for (n, l, m) in labels:
            om = magic_frequency("plus", n, l, params)
            om_t, p_t, t_fac = _flat_map_factor(params, n, l)
            nrm = norm_constant("plus", n, l, params)
            ep, eq = coeffs_ads[(n, l, m)]
            zp, zq = (0.7 - 0.2j) * ep, (1.1 + 0.4j) * eq
            ads_pair = 1j * om * R ** 2 * nrm * (eq * zp - ep * zq)
            jac = 2.0 * om_t / (R * p_t)  # dp~/dn
            mp, mq = coeffs_mink[(p_t, l, m)]
            e_p = math.sqrt(p_t * p_t + m_field * m_field)
            mink_pair = 1j * e_p * ((0.7 - 0.2j) * mq * mp
                                    - (1.1 + 0.4j) * mp * mq)
            worst = max(worst, abs(ads_pair * jac - mink_pair)
                        / max(abs(mink_pair), 1e-12))
        out["symplectic"][R] = worst
    return out


def killing_correspondence_errors(R_values=(100.0, 1000.0),
                                  points=None) -> dict:
    """Flat-limit Killing correspondence: max deviation of the AdS boosts
    (expressed in (tau, r)) from their Minkowski counterparts, per R.

    R^{-1} K_{d+1,0} equals d_tau identically; the nontrivial entries are
    K_{0d} -> K^Mink_{0d} and R^{-1} K_{d+1,d} -> T_d, with O(1/R^2) error.
    """
    from .geometry import Boost0, BoostD1, killing_apply
    if points is None:
        points = [(0.6, 1.3, np.array([0.2, -0.4, 0.6]) / math.sqrt(0.56)),
                  (-0.4, 2.1, np.array([0.5, 0.5, 0.1]) / math.sqrt(0.51))]

    def fld(tau, r, xi):
        return (np.exp(-0.15 * (tau - 0.3) ** 2 - 0.1 * (r - 1.5) ** 2)
                * (1.0 + 0.5 * xi[2] + 0.25 * xi[0] * xi[1]))

    out = {}
    for R in R_values:
        def fld_ads(t, rho, xi, R=R):
            return fld(R * t, R * rho, xi)
        worst = 0.0
        for (tau, r, xi) in points:
            pt_ads = (tau / R, r / R, xi)
            pt_mink = (tau, r, xi)
            ads = killing_apply(Boost0(3), fld_ads, pt_ads, h=1e-3 / R)
            mink = mink_killing_apply("K0j", fld, pt_mink, j=3)
            worst = max(worst, abs(ads - mink))
            ads = killing_apply(BoostD1(3), fld_ads, pt_ads, h=1e-3 / R) / R
            mink = mink_killing_apply("Tj", fld, pt_mink, j=3)
            worst = max(worst, abs(ads - mink))
        out[R] = worst
    return out
