"""Momentum representations on the three region types, synthesis, initial
data inversion, and the boundary-of-AdS machinery.

Frequency integrals are discretized on an OmegaGrid (omega_k = k d_omega,
integral realized as d_omega * sum); the conjugate time window T = 2 pi /
d_omega makes every time projection an exact discrete Fourier sum on
band-limited representations.  Slice representations are genuinely
discrete.  Radial projections for slice inversion use the Gauss-Jacobi rule
of geometry.radial_measure, under which same-l mode products integrate
exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (BandLimitExceeded, BasisMismatch, CapabilityError,
                     IntegerNu, MagicFrequencyBlind, RadialNodeError,
                     SerializationError)
from .geometry import AdsParams, make_params, radial_measure
from .harmonics import AngularGrid
from .modes import (RadialKind, jacobi_radial_fd, magic_frequency,
                    norm_constant, radial_eval_fd, transfer_matrix)
from .specfun import double_pochhammer, pochhammer

_NU_INTEGER_TOL = 1e-9


def pairwise_sum(values):
    """Deterministic pairwise tree reduction (bit-stable summation order)."""
    vals = list(values)
    if not vals:
        return 0.0
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


@dataclass(frozen=True)
class OmegaGrid:
    """Uniform frequency grid omega_k = k d_omega over a finite index set."""

    d_omega: float
    indices: tuple[int, ...]

    def __post_init__(self):
        if self.d_omega <= 0.0:
            raise ValueError("d_omega must be positive")
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))

    def omega(self, k: int) -> float:
        return k * self.d_omega

    @property
    def window(self) -> float:
        """Conjugate time window T = 2 pi / d_omega."""
        return 2.0 * math.pi / self.d_omega

    def time_nodes(self, n_t: int | None = None) -> np.ndarray:
        if n_t is None:
            span = max(abs(k) for k in self.indices) if self.indices else 0
            n_t = 2 * span + 1
        return self.window * np.arange(n_t) / n_t


@dataclass(frozen=True)
class TubeRep:
    """Sparse tube-region momentum representation: (k, l, m) -> (a, b)."""

    grid: OmegaGrid
    coeffs: dict
    basis: str = "S"

    def __post_init__(self):
        if self.basis not in ("S", "C"):
            raise ValueError("basis must be 'S' or 'C'")

    def labels(self):
        return sorted(self.coeffs)

    def coeff(self, k: int, l: int, m: int) -> tuple[complex, complex]:
        return self.coeffs.get((k, l, m), (0.0 + 0.0j, 0.0 + 0.0j))

    def is_real(self, tol: float = 1e-10) -> bool:
        for (k, l, m), (a, b) in self.coeffs.items():
            a2, b2 = self.coeff(-k, l, -m)
            if abs(a2 - np.conj(a)) > tol or abs(b2 - np.conj(b)) > tol:
                return False
        return True

    def scaled(self, factor: complex) -> "TubeRep":
        return replace(self, coeffs={key: (factor * a, factor * b)
                                     for key, (a, b) in self.coeffs.items()})


@dataclass(frozen=True)
class SliceRep:
    """Sparse slice-region representation: (n, l, m) -> (phi_plus,
    phi_minus_conj).  The second channel stores conj(phi^-), the coefficient
    multiplying the conjugated mode in the expansion."""

    coeffs: dict

    def labels(self):
        return sorted(self.coeffs)

    def coeff(self, n: int, l: int, m: int) -> tuple[complex, complex]:
        return self.coeffs.get((n, l, m), (0.0 + 0.0j, 0.0 + 0.0j))

    def is_real(self, tol: float = 1e-10) -> bool:
        # real iff phi^+ = phi^-, i.e. minus_conj = conj(plus) labelwise
        for (n, l, m), (p, q) in self.coeffs.items():
            if abs(q - np.conj(p)) > tol:
                return False
        return True

    def scaled(self, factor: complex) -> "SliceRep":
        return SliceRep({key: (factor * p, factor * q)
                         for key, (p, q) in self.coeffs.items()})


@dataclass(frozen=True)
class RodRep:
    """Sparse rod-region representation: (k, l, m) -> a."""

    grid: OmegaGrid
    coeffs: dict

    def labels(self):
        return sorted(self.coeffs)

    def coeff(self, k: int, l: int, m: int) -> complex:
        return self.coeffs.get((k, l, m), 0.0 + 0.0j)

    def as_tube(self) -> TubeRep:
        return TubeRep(self.grid, {key: (a, 0.0 + 0.0j)
                                   for key, a in self.coeffs.items()}, "S")


@dataclass(frozen=True)
class BoundaryData:
    """Rescaled boundary value phi^{d-} and twisted-derivative value
    phi^{d+}_nu sampled on a (t, Omega) grid spanning one time window."""

    grid: OmegaGrid
    t_nodes: np.ndarray
    angular: AngularGrid
    phid_minus: np.ndarray  # shape (nt, ntheta, nphi)
    phid_plus: np.ndarray


def _tube_kinds(basis: str) -> tuple[RadialKind, RadialKind]:
    if basis == "S":
        return RadialKind.Sa, RadialKind.Sb
    return RadialKind.Ca, RadialKind.Cb


# ---------------------------------------------------------------------------
# synthesis
# ---------------------------------------------------------------------------

def synth(rep, point, params: AdsParams) -> complex:
    """Evaluate the represented solution at point = (t, rho, theta, phi)."""
    from .harmonics import sph_harm
    t, rho, theta, phi = point
    terms = []
    if isinstance(rep, SliceRep):
        for (n, l, m) in rep.labels():
            p, q = rep.coeffs[(n, l, m)]
            om = magic_frequency("plus", n, l, params)
            rad = jacobi_radial_fd("plus", n, l, rho, params)[0]
            ylm = sph_harm(l, m, theta, phi)
            terms.append(p * np.exp(-1j * om * t) * ylm * rad)
            terms.append(q * np.exp(1j * om * t) * np.conj(ylm) * rad)
        return pairwise_sum(terms)
    if isinstance(rep, RodRep):
        rep = rep.as_tube()
    ka, kb = _tube_kinds(rep.basis)
    for (k, l, m) in rep.labels():
        a, b = rep.coeffs[(k, l, m)]
        om = rep.grid.omega(k)
        ylm = sph_harm(l, m, theta, phi)
        phase = np.exp(-1j * om * t)
        fa = radial_eval_fd(ka, om, l, rho, params)[0] if a != 0.0 else 0.0
        fb = radial_eval_fd(kb, om, l, rho, params)[0] if b != 0.0 else 0.0
        terms.append((a * fa + b * fb) * phase * ylm)
    return rep.grid.d_omega * pairwise_sum(terms)


def synth_dt(rep, point, params: AdsParams) -> complex:
    """d/dt of the synthesized field (phases only, analytic)."""
    from .harmonics import sph_harm
    t, rho, theta, phi = point
    terms = []
    if isinstance(rep, SliceRep):
        for (n, l, m) in rep.labels():
            p, q = rep.coeffs[(n, l, m)]
            om = magic_frequency("plus", n, l, params)
            rad = jacobi_radial_fd("plus", n, l, rho, params)[0]
            ylm = sph_harm(l, m, theta, phi)
            terms.append(-1j * om * p * np.exp(-1j * om * t) * ylm * rad)
            terms.append(1j * om * q * np.exp(1j * om * t) * np.conj(ylm) * rad)
        return pairwise_sum(terms)
    if isinstance(rep, RodRep):
        rep = rep.as_tube()
    ka, kb = _tube_kinds(rep.basis)
    for (k, l, m) in rep.labels():
        a, b = rep.coeffs[(k, l, m)]
        om = rep.grid.omega(k)
        ylm = sph_harm(l, m, theta, phi)
        phase = -1j * om * np.exp(-1j * om * t)
        fa = radial_eval_fd(ka, om, l, rho, params)[0] if a != 0.0 else 0.0
        fb = radial_eval_fd(kb, om, l, rho, params)[0] if b != 0.0 else 0.0
        terms.append((a * fa + b * fb) * phase * ylm)
    return rep.grid.d_omega * pairwise_sum(terms)


def synth_drho(rep, point, params: AdsParams) -> complex:
    """d/drho of the synthesized field (term-wise analytic radial derivative)."""
    from .harmonics import sph_harm
    t, rho, theta, phi = point
    terms = []
    if isinstance(rep, SliceRep):
        for (n, l, m) in rep.labels():
            p, q = rep.coeffs[(n, l, m)]
            om = magic_frequency("plus", n, l, params)
            drad = jacobi_radial_fd("plus", n, l, rho, params)[1]
            ylm = sph_harm(l, m, theta, phi)
            terms.append(p * np.exp(-1j * om * t) * ylm * drad)
            terms.append(q * np.exp(1j * om * t) * np.conj(ylm) * drad)
        return pairwise_sum(terms)
    if isinstance(rep, RodRep):
        rep = rep.as_tube()
    ka, kb = _tube_kinds(rep.basis)
    for (k, l, m) in rep.labels():
        a, b = rep.coeffs[(k, l, m)]
        om = rep.grid.omega(k)
        ylm = sph_harm(l, m, theta, phi)
        phase = np.exp(-1j * om * t)
        da = radial_eval_fd(ka, om, l, rho, params)[1] if a != 0.0 else 0.0
        db = radial_eval_fd(kb, om, l, rho, params)[1] if b != 0.0 else 0.0
        terms.append((a * da + b * db) * phase * ylm)
    return rep.grid.d_omega * pairwise_sum(terms)


# ---------------------------------------------------------------------------
# sampled hypersurface data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SliceData:
    """Field and time derivative sampled on an equal-time surface."""

    t0: float
    rho_nodes: np.ndarray
    rho_weights: np.ndarray  # include the tan^{d-1} measure
    angular: AngularGrid
    phi: np.ndarray          # shape (nrho, ntheta, nphi)
    dphi_dt: np.ndarray


@dataclass(frozen=True)
class TubeData:
    """Field and radial derivative sampled on an equal-radius hypercylinder
    over one time window."""

    rho0: float
    grid: OmegaGrid
    t_nodes: np.ndarray
    angular: AngularGrid
    phi: np.ndarray          # shape (nt, ntheta, nphi)
    dphi_drho: np.ndarray


@dataclass(frozen=True)
class RodData:
    """Field values only, sampled on an equal-radius hypercylinder."""

    rho0: float
    grid: OmegaGrid
    t_nodes: np.ndarray
    angular: AngularGrid
    phi: np.ndarray


def sample_slice(rep: SliceRep, t0: float, params: AdsParams,
                 n_rho: int = 128, angular: AngularGrid | None = None) -> SliceData:
    """Sample a slice solution (and d_t) on the radial x angular grid."""
    ang = angular or AngularGrid()
    rho, w = radial_measure(params, n_rho)
    shape = (len(rho), ang.n_theta, ang.n_phi)
    phi = np.zeros(shape, dtype=complex)
    dphi = np.zeros(shape, dtype=complex)
    for (n, l, m) in rep.labels():
        p, q = rep.coeffs[(n, l, m)]
        om = magic_frequency("plus", n, l, params)
        rad = jacobi_radial_fd("plus", n, l, rho, params)[0]
        ylm = ang.ylm(l, m)
        plus = np.exp(-1j * om * t0) * rad[:, None, None] * ylm[None, :, :]
        minus = np.exp(1j * om * t0) * rad[:, None, None] * np.conj(ylm)[None, :, :]
        phi += p * plus + q * minus
        dphi += -1j * om * p * plus + 1j * om * q * minus
    return SliceData(t0, rho, w, ang, phi, dphi)


def sample_tube(rep: TubeRep, rho0: float, params: AdsParams,
                angular: AngularGrid | None = None,
                n_t: int | None = None) -> TubeData:
    """Sample a tube solution (and d_rho) over one time window at rho0."""
    ang = angular or AngularGrid()
    t_nodes = rep.grid.time_nodes(n_t)
    ka, kb = _tube_kinds(rep.basis)
    shape = (len(t_nodes), ang.n_theta, ang.n_phi)
    phi = np.zeros(shape, dtype=complex)
    dphi = np.zeros(shape, dtype=complex)
    for (k, l, m) in rep.labels():
        a, b = rep.coeffs[(k, l, m)]
        om = rep.grid.omega(k)
        fa, da = radial_eval_fd(ka, om, l, rho0, params)
        fb, db = radial_eval_fd(kb, om, l, rho0, params)
        ylm = ang.ylm(l, m)
        phases = np.exp(-1j * om * t_nodes)
        base = phases[:, None, None] * ylm[None, :, :]
        phi += rep.grid.d_omega * (a * fa + b * fb) * base
        dphi += rep.grid.d_omega * (a * da + b * db) * base
    return TubeData(rho0, rep.grid, t_nodes, ang, phi, dphi)


def sample_rod(rep: RodRep, rho0: float, params: AdsParams,
               angular: AngularGrid | None = None,
               n_t: int | None = None) -> RodData:
    tube = sample_tube(rep.as_tube(), rho0, params, angular, n_t)
    return RodData(rho0, rep.grid, tube.t_nodes, tube.angular, tube.phi)


def _time_project(samples: np.ndarray, grid: OmegaGrid) -> dict[int, np.ndarray]:
    """Per-index coefficient of e^{-i omega_k t} divided by d_omega, i.e. the
    (1/2pi) int dt e^{i omega t} projection of the d_omega-weighted sum."""
    n_t = samples.shape[0]
    span = max(abs(k) for k in grid.indices)
    if n_t < 2 * span + 1:
        raise ValueError("time grid too short for the frequency window")
    coef = np.fft.ifft(samples, axis=0) / grid.d_omega
    return {k: coef[k % n_t] for k in grid.indices}


# ---------------------------------------------------------------------------
# basis change
# ---------------------------------------------------------------------------

def s_to_c(rep: TubeRep, params: AdsParams) -> TubeRep:
    """Re-express an S-basis rep in the C basis; fields agree pointwise.

    Coefficient transpose of (S^a, S^b) = M (C^a, C^b):
    (phi^{C,a}, phi^{C,b}) = (phi^a, phi^b) M.
    """
    if rep.basis != "S":
        raise BasisMismatch("s_to_c expects an S-basis rep")
    out = {}
    for (k, l, m), (a, b) in rep.coeffs.items():
        mat = transfer_matrix(rep.grid.omega(k), l, params)
        out[(k, l, m)] = (a * mat.m11 + b * mat.m21, a * mat.m12 + b * mat.m22)
    return TubeRep(rep.grid, out, "C")


def c_to_s(rep: TubeRep, params: AdsParams) -> TubeRep:
    if rep.basis != "C":
        raise BasisMismatch("c_to_s expects a C-basis rep")
    out = {}
    for (k, l, m), (a, b) in rep.coeffs.items():
        inv = transfer_matrix(rep.grid.omega(k), l, params).inverse()
        out[(k, l, m)] = (a * inv.m11 + b * inv.m21, a * inv.m12 + b * inv.m22)
    return TubeRep(rep.grid, out, "S")


def slice_to_tube(rep: SliceRep, grid: OmegaGrid, params: AdsParams,
                  tol: float = 1e-9) -> TubeRep:
    """View a slice solution as an S-basis tube rep (Jacobi modes are the
    S^a modes at magic frequencies; the conj channel lands on the mirrored
    label).  Magic frequencies must sit on the grid."""
    coeffs: dict = {}
    for (n, l, m), (p, q) in rep.coeffs.items():
        om = magic_frequency("plus", n, l, params)
        k_float = om / grid.d_omega
        k = round(k_float)
        if abs(k_float - k) > tol:
            raise ValueError(
                f"magic frequency {om} not on the grid (d_omega={grid.d_omega})")
        if p != 0.0:
            acc = coeffs.get((k, l, m), (0.0 + 0.0j, 0.0 + 0.0j))
            coeffs[(k, l, m)] = (acc[0] + p / grid.d_omega, acc[1])
        if q != 0.0:
            acc = coeffs.get((-k, l, -m), (0.0 + 0.0j, 0.0 + 0.0j))
            coeffs[(-k, l, -m)] = (acc[0] + q / grid.d_omega, acc[1])
    return TubeRep(grid, coeffs, "S")


# ---------------------------------------------------------------------------
# inversions
# ---------------------------------------------------------------------------

def invert_slice(data: SliceData, params: AdsParams,
                 n_max: int, l_max: int,
                 check_residual: bool = True,
                 residual_tol: float = 1e-6) -> SliceRep:
    """Recover the slice representation from (phi, d_t phi) on Sigma_{t0}.

    phi^+ and conj(phi^-) come from the weighted projection
    int drho dOmega tan^{d-1} conj(Y) J^+ (f phi + d dphi) with
    f = e^{i w t0} / (2 N^+) and d = i e^{i w t0} / (2 w N^+); the minus
    channel pairs m with -m through conj(Y_l^m) = Y_l^{-m}.
    """
    ang = data.angular
    proj_phi = {}
    proj_dphi = {}
    for l in range(l_max + 1):
        for m in range(-l, l + 1):
            yl = np.conj(ang.ylm(l, m))
            wang = ang.cos_weights[:, None] * ang.phi_weight
            proj_phi[(l, m)] = np.tensordot(data.phi, yl * wang, axes=([1, 2], [0, 1]))
            proj_dphi[(l, m)] = np.tensordot(data.dphi_dt, yl * wang, axes=([1, 2], [0, 1]))
    coeffs = {}
    for l in range(l_max + 1):
        rads = {n: jacobi_radial_fd("plus", n, l, data.rho_nodes, params)[0]
                for n in range(n_max + 1)}
        for n in range(n_max + 1):
            om = magic_frequency("plus", n, l, params)
            nrm = norm_constant("plus", n, l, params)
            f_c = np.exp(1j * om * data.t0) / (2.0 * nrm)
            d_c = 1j * np.exp(1j * om * data.t0) / (2.0 * om * nrm)
            wrad = data.rho_weights * rads[n]
            for m in range(-l, l + 1):
                p_phi = np.dot(wrad, proj_phi[(l, m)])
                p_dphi = np.dot(wrad, proj_dphi[(l, m)])
                plus = f_c * p_phi + d_c * p_dphi
                pm_phi = np.dot(wrad, proj_phi[(l, -m)])
                pm_dphi = np.dot(wrad, proj_dphi[(l, -m)])
                minus_conj = np.conj(f_c) * pm_phi + np.conj(d_c) * pm_dphi
                coeffs[(n, l, m)] = (plus, minus_conj)
    rep = SliceRep(coeffs)
    if check_residual:
        recon = sample_slice(rep, data.t0, params, len(data.rho_nodes), ang)
        norm = np.max(np.abs(data.phi)) or 1.0
        resid = np.max(np.abs(recon.phi - data.phi)) / norm
        if resid > residual_tol:
            raise BandLimitExceeded(
                f"reconstruction residual {resid:.2e} exceeds {residual_tol}")
    return rep


def invert_tube(data: TubeData, params: AdsParams, l_max: int,
                basis: str = "S") -> TubeRep:
    """Recover the tube representation from (phi, d_rho phi) on Sigma_{rho0}.

    Per label: tan^{d-1}(rho0)/(2l+d-2) [f_b'(rho0) P[phi] - f_b(rho0)
    P[d_rho phi]] for the a-coefficient (S basis; 2 nu replaces the factor
    in the C basis), with P the time-frequency / harmonic projection.
    """
    ka, kb = _tube_kinds(basis)
    grid = data.grid
    ang = data.angular
    tp_phi = _time_project(data.phi, grid)
    tp_dphi = _time_project(data.dphi_drho, grid)
    d = params.d
    tan_fac = math.tan(data.rho0) ** (d - 1)
    coeffs = {}
    for k in grid.indices:
        om = grid.omega(k)
        for l in range(l_max + 1):
            fa, da = radial_eval_fd(ka, om, l, data.rho0, params)
            fb, db = radial_eval_fd(kb, om, l, data.rho0, params)
            weight = tan_fac / (2 * l + d - 2) if basis == "S" \
                else tan_fac / (2.0 * params.nu)
            for m in range(-l, l + 1):
                p_phi = ang.project(l, m, tp_phi[k])
                p_dphi = ang.project(l, m, tp_dphi[k])
                a = weight * (db * p_phi - fb * p_dphi)
                b = weight * (-da * p_phi + fa * p_dphi)
                coeffs[(k, l, m)] = (a, b)
    return TubeRep(grid, coeffs, basis)


def invert_rod_interior(data: RodData, params: AdsParams, l_max: int,
                        node_tol: float = 1e-10) -> RodRep:
    """Recover the rod representation from field values at rho0 < pi/2:
    a = (time-angular projection) / S^a(rho0)."""
    grid = data.grid
    ang = data.angular
    tp = _time_project(data.phi, grid)
    coeffs = {}
    for k in grid.indices:
        om = grid.omega(k)
        for l in range(l_max + 1):
            sa = radial_eval_fd(RadialKind.Sa, om, l, data.rho0, params)[0]
            if abs(sa) < node_tol:
                raise RadialNodeError(
                    f"S^a({data.rho0}) ~ 0 at omega={om}, l={l}")
            for m in range(-l, l + 1):
                coeffs[(k, l, m)] = ang.project(l, m, tp[k]) / sa
    return RodRep(grid, coeffs)


# ---------------------------------------------------------------------------
# boundary machinery
# ---------------------------------------------------------------------------

def _floor_nu(nu: float) -> int:
    """Largest natural number strictly below (noninteger) nu."""
    return int(math.floor(nu))


def taylor_coeffs(branch: str, omega: float, l: int, params: AdsParams,
                  a_max: int) -> np.ndarray:
    """Boundary Taylor coefficients d^{+-}_a of the C-modes:
    C^a = sum_a cos^{D+ + 2a} d^+_a, C^b = sum_a cos^{D- + 2a} d^-_a.

    Finite double sums mixing the sin^l binomial tail with hypergeometric
    Pochhammer ratios.
    """
    if a_max > 30:
        raise ValueError("a_max > 30 not supported")
    from .modes import hyper_params
    kind = RadialKind.Ca if branch == "plus" else RadialKind.Cb
    al, be, ga = hyper_params(kind, omega, l, params)
    out = np.zeros(a_max + 1)
    for a in range(a_max + 1):
        total = 0.0
        for b in range(a + 1):
            sin_part = (-1.0) ** b / math.factorial(b) \
                * pochhammer(l / 2.0 + 1.0 - b, b)
            hyp_part = (pochhammer(al, a - b) * pochhammer(be, a - b)
                        / (pochhammer(ga, a - b) * math.factorial(a - b)))
            total += sin_part * hyp_part
        out[a] = total
    return out


def twisted_boundary_limit(kind: RadialKind, params: AdsParams) -> float:
    """Boundary value of the twisted derivative of the C-modes:
    ((2 nu - 2 floor(nu)))_{floor(nu)+1} for C^a and 0 for C^b."""
    nu = params.nu
    if abs(nu - round(nu)) < _NU_INTEGER_TOL:
        raise IntegerNu(f"twisted boundary limit degenerates at nu = {nu}")
    if kind is RadialKind.Cb:
        return 0.0
    if kind is RadialKind.Ca:
        fl = _floor_nu(nu)
        return double_pochhammer(2.0 * nu - 2.0 * fl, fl + 1)
    raise ValueError("twisted limits defined for C-modes only")


def twisted_derivative(kind: RadialKind, omega: float, l: int, rho: float,
                       params: AdsParams, a_max: int = 30) -> float:
    """Twisted derivative d^{(nu)}_rho of a C-mode, evaluated analytically
    on the boundary Taylor series:

      d^{(nu)} C^a = sum_a cos^{2a} d^+_a ((2nu+2a-2fl))_{fl+1}
      d^{(nu)} C^b = sum_{a>fl} cos^{-2nu+2a} d^-_a ((2a-2fl))_{fl+1}

    with fl = floor(nu).  Accurate near the boundary where cos(rho) is small.
    """
    nu = params.nu
    if abs(nu - round(nu)) < _NU_INTEGER_TOL:
        raise IntegerNu(f"twisted derivative degenerates at nu = {nu}")
    fl = _floor_nu(nu)
    c = math.cos(rho)
    if kind is RadialKind.Ca:
        d_a = taylor_coeffs("plus", omega, l, params, a_max)
        return float(sum(d_a[a] * double_pochhammer(2 * nu + 2 * a - 2 * fl, fl + 1)
                         * c ** (2 * a) for a in range(a_max + 1)))
    if kind is RadialKind.Cb:
        d_a = taylor_coeffs("minus", omega, l, params, a_max)
        total = 0.0
        for a in range(a_max + 1):
            dpoch = double_pochhammer(2.0 * a - 2.0 * fl, fl + 1)
            if dpoch == 0.0:
                continue  # avoid 0 * inf from the negative powers of cos
            total += d_a[a] * dpoch * c ** (-2.0 * nu + 2 * a)
        return total
    raise ValueError("twisted derivative defined for C-modes only")


def boundary_data_of(rep: TubeRep, params: AdsParams,
                     angular: AngularGrid | None = None,
                     n_t: int | None = None) -> BoundaryData:
    """Analytic boundary data of a C-basis rep (Taylor-tail limits, never
    numerical sampling at rho -> pi/2):

      phi^{d-} = d_omega sum phi^{C,b} e^{-iwt} Y      (blind to C^a)
      phi^{d+}_nu = d_omega sum phi^{C,a} L e^{-iwt} Y

    with L the twisted boundary limit of C^a.
    """
    if rep.basis != "C":
        raise BasisMismatch("boundary data requires the C basis")
    lam = twisted_boundary_limit(RadialKind.Ca, params)
    ang = angular or AngularGrid()
    t_nodes = rep.grid.time_nodes(n_t)
    shape = (len(t_nodes), ang.n_theta, ang.n_phi)
    minus = np.zeros(shape, dtype=complex)
    plus = np.zeros(shape, dtype=complex)
    for (k, l, m), (a, b) in rep.coeffs.items():
        om = rep.grid.omega(k)
        base = np.exp(-1j * om * t_nodes)[:, None, None] * ang.ylm(l, m)[None, :, :]
        minus += rep.grid.d_omega * b * base
        plus += rep.grid.d_omega * a * lam * base
    return BoundaryData(rep.grid, t_nodes, ang, minus, plus)


def boundary_reconstruct(data: BoundaryData, params: AdsParams,
                         l_max: int) -> TubeRep:
    """Recover the C-basis momentum representation from boundary data:
    phi^{C,a} from the twisted-derivative channel (divided by the C^a
    boundary limit), phi^{C,b} from the rescaled field value."""
    if not params.c_modes_valid:
        raise CapabilityError("boundary reconstruction needs noninteger nu")
    lam = twisted_boundary_limit(RadialKind.Ca, params)
    grid = data.grid
    ang = data.angular
    tp_minus = _time_project(data.phid_minus, grid)
    tp_plus = _time_project(data.phid_plus, grid)
    coeffs = {}
    for k in grid.indices:
        for l in range(l_max + 1):
            for m in range(-l, l + 1):
                a = ang.project(l, m, tp_plus[k]) / lam
                b = ang.project(l, m, tp_minus[k])
                coeffs[(k, l, m)] = (a, b)
    return TubeRep(grid, coeffs, "C")


def rod_boundary_data_of(rep: RodRep, params: AdsParams,
                         angular: AngularGrid | None = None,
                         n_t: int | None = None):
    """Rescaled boundary field value of a rod solution:
    phi^d = d_omega sum phi^a m12(w, l) e^{-iwt} Y  (only the C^b part of
    S^a survives the rescaling)."""
    ang = angular or AngularGrid()
    t_nodes = rep.grid.time_nodes(n_t)
    shape = (len(t_nodes), ang.n_theta, ang.n_phi)
    out = np.zeros(shape, dtype=complex)
    for (k, l, m), a in rep.coeffs.items():
        om = rep.grid.omega(k)
        m12 = transfer_matrix(om, l, params).m12
        base = np.exp(-1j * om * t_nodes)[:, None, None] * ang.ylm(l, m)[None, :, :]
        out += rep.grid.d_omega * a * m12 * base
    return RodData(math.pi / 2, rep.grid, t_nodes, ang, out)


def rod_boundary_reconstruct(data: RodData, params: AdsParams, l_max: int,
                             blind_tol: float = 1e-10) -> RodRep:
    """Recover a rod representation from rescaled boundary data:
    a = (projection) / m12(w, l); labels at magic frequencies are invisible
    (m12 = 0) and raise MagicFrequencyBlind."""
    grid = data.grid
    ang = data.angular
    tp = _time_project(data.phi, grid)
    coeffs = {}
    for k in grid.indices:
        om = grid.omega(k)
        for l in range(l_max + 1):
            m12 = transfer_matrix(om, l, params).m12
            if abs(m12) < blind_tol:
                raise MagicFrequencyBlind(
                    f"m12 ~ 0 at omega={om}, l={l}: boundary data is blind")
            for m in range(-l, l + 1):
                coeffs[(k, l, m)] = ang.project(l, m, tp[k]) / m12
    return RodRep(grid, coeffs)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

_REP_VERSION = "v1"


def save_rep(path, rep, params: AdsParams) -> None:
    """Write a rep in the line format
    `basis k l m re_a im_a re_b im_b` under an `adskg-rep v1 ...` header."""
    if isinstance(rep, TubeRep):
        basis, grid = rep.basis, rep.grid
        rows = [(basis, k, l, m, a, b) for (k, l, m), (a, b) in sorted(rep.coeffs.items())]
    elif isinstance(rep, RodRep):
        basis, grid = "rod", rep.grid
        rows = [("rod", k, l, m, a, 0.0 + 0.0j) for (k, l, m), a in sorted(rep.coeffs.items())]
    elif isinstance(rep, SliceRep):
        basis, grid = "slice", None
        rows = [("slice", n, l, m, p, q) for (n, l, m), (p, q) in sorted(rep.coeffs.items())]
    else:
        raise SerializationError(f"cannot serialize {type(rep).__name__}")
    d_omega = grid.d_omega if grid is not None else 0.0
    lines = [f"adskg-rep {_REP_VERSION} d={params.d} R={params.R!r} "
             f"msq={params.m_sq!r} domega={d_omega!r}"]
    for basis, k, l, m, a, b in rows:
        a, b = complex(a), complex(b)
        lines.append(f"{basis} {k} {l} {m} {a.real!r} {a.imag!r} {b.real!r} {b.imag!r}")
    text = "\n".join(lines) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def load_rep(path):
    """Parse a rep file; returns (rep, params).  Rejects unknown versions."""
    if hasattr(path, "read"):
        text = path.read()
    else:
        with open(path) as fh:
            text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SerializationError("empty rep file")
    head = lines[0].split()
    if len(head) < 2 or head[0] != "adskg-rep":
        raise SerializationError("missing adskg-rep header")
    if head[1] != _REP_VERSION:
        raise SerializationError(f"unsupported rep version {head[1]!r}")
    meta = {}
    for tok in head[2:]:
        key, _, val = tok.partition("=")
        meta[key] = val
    try:
        params = make_params(int(meta["d"]), float(meta["R"]), float(meta["msq"]))
        d_omega = float(meta["domega"])
    except (KeyError, ValueError) as exc:
        raise SerializationError(f"bad header fields: {exc}") from exc
    rows = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 8:
            raise SerializationError(f"malformed line: {ln!r}")
        basis = parts[0]
        try:
            k, l, m = int(parts[1]), int(parts[2]), int(parts[3])
            a = complex(float(parts[4]), float(parts[5]))
            b = complex(float(parts[6]), float(parts[7]))
        except ValueError as exc:
            raise SerializationError(f"malformed line: {ln!r}") from exc
        rows.append((basis, k, l, m, a, b))
    bases = {r[0] for r in rows}
    if not rows:
        raise SerializationError("rep file has no labels")
    if len(bases) > 1:
        raise SerializationError(f"mixed bases in one file: {sorted(bases)}")
    basis = rows[0][0]
    if basis == "slice":
        rep = SliceRep({(k, l, m): (a, b) for _, k, l, m, a, b in rows})
    elif basis == "rod":
        grid = OmegaGrid(d_omega, tuple(r[1] for r in rows))
        rep = RodRep(grid, {(k, l, m): a for _, k, l, m, a, b in rows})
    elif basis in ("S", "C"):
        grid = OmegaGrid(d_omega, tuple(r[1] for r in rows))
        rep = TubeRep(grid, {(k, l, m): (a, b) for _, k, l, m, a, b in rows}, basis)
    else:
        raise SerializationError(f"unknown basis {basis!r}")
    return rep, params
