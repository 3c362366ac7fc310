import math

import pytest

from adskg.errors import BasisMismatch
from adskg.expansions import OmegaGrid, SliceRep, TubeRep, s_to_c
from adskg.harmonics import AngularGrid
from adskg.symplectic import (omega_slice_momentum, omega_slice_quadrature,
                              omega_tube_momentum, omega_tube_quadrature,
                              symplectic_potential)

ANG = AngularGrid(16, 32)


def _random_slice_rep(rng, n_labels=6):
    coeffs = {}
    while len(coeffs) < n_labels:
        n = int(rng.integers(0, 4))
        l = int(rng.integers(0, 4))
        m = int(rng.integers(-l, l + 1))
        coeffs[(n, l, m)] = (complex(rng.normal(), rng.normal()),
                             complex(rng.normal(), rng.normal()))
    return SliceRep(coeffs)


def _random_tube_rep(rng, grid, n_labels=6, basis="S"):
    coeffs = {}
    while len(coeffs) < n_labels:
        k = int(rng.choice(grid.indices))
        l = int(rng.integers(0, 3))
        m = int(rng.integers(-l, l + 1))
        coeffs[(k, l, m)] = (complex(rng.normal(), rng.normal()),
                             complex(rng.normal(), rng.normal()))
    return TubeRep(grid, coeffs, basis)


# --- equal-time structure ---------------------------------------------------------

def test_slice_antisymmetry(params_m0, rng):
    eta = _random_slice_rep(rng)
    assert abs(complex(omega_slice_quadrature(eta, eta, 0.3, params_m0,
                                              64, ANG))) < 1e-12
    assert abs(complex(omega_slice_momentum(eta, eta, params_m0))) < 1e-14


def test_slice_single_label_value(params_m0):
    # eta with phi+ = 1, zeta with conj(phi-) = 1, label (0,0,0):
    # -i omega N = -3i pi/32
    eta = SliceRep({(0, 0, 0): (1.0, 0.0)})
    zeta = SliceRep({(0, 0, 0): (0.0, 1.0)})
    expected = -1j * 3.0 * math.pi / 32.0
    quad = complex(omega_slice_quadrature(eta, zeta, 0.0, params_m0, 64, ANG))
    mom = complex(omega_slice_momentum(eta, zeta, params_m0))
    assert quad == pytest.approx(expected, rel=1e-10)
    assert mom == pytest.approx(expected, rel=1e-14)
    assert abs(expected + 0.29452431127j) < 1e-8


def test_slice_quadrature_vs_momentum(params_m0, rng):
    eta = _random_slice_rep(rng)
    zeta = _random_slice_rep(rng)
    quad = complex(omega_slice_quadrature(eta, zeta, 0.3, params_m0, 96, ANG))
    mom = complex(omega_slice_momentum(eta, zeta, params_m0))
    assert quad == pytest.approx(mom, rel=1e-8)


def test_slice_t0_independence(params_m0, rng):
    eta = _random_slice_rep(rng)
    zeta = _random_slice_rep(rng)
    vals = [complex(omega_slice_quadrature(eta, zeta, t0, params_m0, 96, ANG))
            for t0 in (0.0, 0.37, 1.9)]
    for v in vals[1:]:
        assert v == pytest.approx(vals[0], rel=1e-9)


def test_slice_bilinearity(params_m0, rng):
    eta = _random_slice_rep(rng, 3)
    zeta = _random_slice_rep(rng, 3)
    al = 0.7 - 1.3j
    scaled = eta.scaled(al)
    assert complex(omega_slice_momentum(scaled, zeta, params_m0)) == \
        pytest.approx(al * complex(omega_slice_momentum(eta, zeta, params_m0)),
                      rel=1e-14)


def test_slice_lagrangian_subspaces(params_m0, rng):
    # two positive-frequency reps pair to zero
    eta = SliceRep({(0, 1, 0): (1.2, 0.0), (2, 2, 1): (0.4j, 0.0)})
    zeta = SliceRep({(0, 1, 0): (0.3, 0.0), (1, 0, 0): (-0.8j, 0.0)})
    assert abs(complex(omega_slice_momentum(eta, zeta, params_m0))) < 1e-14
    # and two negative-frequency reps likewise
    eta = SliceRep({(0, 1, 0): (0.0, 0.9j), (1, 1, -1): (0.0, 0.5)})
    zeta = SliceRep({(0, 1, 0): (0.0, 1.1), (1, 1, -1): (0.0, 0.2j)})
    assert abs(complex(omega_slice_momentum(eta, zeta, params_m0))) < 1e-14


# --- hypercylinder structure ---------------------------------------------------------

GRID = OmegaGrid(0.5, tuple(range(-7, 8)))


def test_tube_antisymmetry(params_m0, rng):
    eta = _random_tube_rep(rng, GRID)
    assert abs(complex(omega_tube_quadrature(eta, eta, 0.9, params_m0, ANG))) < 1e-12
    assert abs(complex(omega_tube_momentum(eta, eta, params_m0))) < 1e-13


@pytest.mark.parametrize("basis", ["S", "C"])
def test_tube_quadrature_vs_momentum(params_m0, rng, basis):
    eta = _random_tube_rep(rng, GRID, 6, basis)
    zeta = _random_tube_rep(rng, GRID, 6, basis)
    quad = complex(omega_tube_quadrature(eta, zeta, 0.8, params_m0, ANG))
    mom = complex(omega_tube_momentum(eta, zeta, params_m0))
    assert quad == pytest.approx(mom, rel=1e-8, abs=1e-10)


def test_tube_rho_independence(params_m0, rng):
    eta = _random_tube_rep(rng, GRID)
    zeta = _random_tube_rep(rng, GRID)
    vals = [complex(omega_tube_quadrature(eta, zeta, rho0, params_m0, ANG))
            for rho0 in (0.5, 0.9, 1.3)]
    scale = max(abs(v) for v in vals)
    for v in vals[1:]:
        assert abs(v - vals[0]) < 1e-8 * max(scale, 1.0)


def test_tube_bases_agree(params_m0, rng):
    eta = _random_tube_rep(rng, GRID)
    zeta = _random_tube_rep(rng, GRID)
    s_val = complex(omega_tube_momentum(eta, zeta, params_m0))
    c_val = complex(omega_tube_momentum(s_to_c(eta, params_m0),
                                        s_to_c(zeta, params_m0), params_m0))
    assert c_val == pytest.approx(s_val, rel=1e-7, abs=1e-10)


def test_tube_basis_mismatch(params_m0, rng):
    eta = _random_tube_rep(rng, GRID, 3, "S")
    zeta = _random_tube_rep(rng, GRID, 3, "C")
    with pytest.raises(BasisMismatch):
        omega_tube_momentum(eta, zeta, params_m0)


def test_tube_momentum_pairing_structure(params_m0):
    # eta supported at (k,l,m), zeta lacking (-k,l,-m): zero
    eta = TubeRep(GRID, {(3, 1, 0): (1.0, 0.5)}, "S")
    zeta = TubeRep(GRID, {(3, 1, 0): (0.7, 0.1), (2, 1, 0): (0.2, 0.9)}, "S")
    assert complex(omega_tube_momentum(eta, zeta, params_m0)) == 0.0


def test_rod_solutions_null(params_m0):
    # pure-a pairs (rod solutions) have vanishing symplectic structure
    eta = TubeRep(GRID, {(3, 1, 0): (1.2, 0.0), (-3, 1, 0): (0.4j, 0.0),
                         (4, 0, 0): (0.8, 0.0), (-4, 0, 0): (0.2, 0.0)}, "S")
    zeta = TubeRep(GRID, {(3, 1, 0): (0.5j, 0.0), (-3, 1, 0): (0.7, 0.0),
                          (4, 0, 0): (-0.1, 0.0), (-4, 0, 0): (0.3j, 0.0)}, "S")
    assert abs(complex(omega_tube_momentum(eta, zeta, params_m0))) < 1e-14
    assert abs(complex(omega_tube_quadrature(eta, zeta, 0.9, params_m0, ANG))) < 1e-9


def test_slice_solutions_null_in_tube_pairing(params_m0):
    # Jacobi modes are S^a modes: the hypercylinder pairing returns zero
    from adskg.expansions import slice_to_tube
    eta = SliceRep({(0, 1, 0): (0.8, 0.3j), (1, 0, 0): (0.2, 0.6)})
    zeta = SliceRep({(0, 1, 0): (1.1j, 0.4), (1, 0, 0): (0.5, 0.2j)})
    grid = OmegaGrid(1.0, tuple(range(-9, 10)))
    te = slice_to_tube(eta, grid, params_m0)
    tz = slice_to_tube(zeta, grid, params_m0)
    assert abs(complex(omega_tube_momentum(te, tz, params_m0))) < 1e-14
    assert abs(complex(omega_tube_quadrature(te, tz, 0.8, params_m0, ANG))) < 1e-9


# --- symplectic potential -------------------------------------------------------------

def test_potential_antisymmetrization_slice(params_m0, rng):
    eta = _random_slice_rep(rng, 4)
    zeta = _random_slice_rep(rng, 4)
    t0 = 0.4
    th_ze = symplectic_potential("t", t0, zeta, eta, params_m0, 96, ANG)
    th_ez = symplectic_potential("t", t0, eta, zeta, params_m0, 96, ANG)
    target = complex(omega_slice_momentum(eta, zeta, params_m0))
    assert -0.5 * (th_ze - th_ez) == pytest.approx(target, rel=1e-8)


def test_potential_antisymmetrization_tube(params_m0, rng):
    eta = _random_tube_rep(rng, GRID, 4)
    zeta = _random_tube_rep(rng, GRID, 4)
    th_ze = symplectic_potential("rho", 0.8, zeta, eta, params_m0, angular=ANG)
    th_ez = symplectic_potential("rho", 0.8, eta, zeta, params_m0, angular=ANG)
    target = complex(omega_tube_momentum(eta, zeta, params_m0))
    assert -0.5 * (th_ze - th_ez) == pytest.approx(target, rel=1e-8)


def test_potential_zero_probe(params_m0, rng):
    eta = _random_slice_rep(rng, 3)
    zero = SliceRep({})
    assert symplectic_potential("t", 0.0, eta, zero, params_m0, 64, ANG) == 0.0


def test_potential_rod_antisymmetrized_difference(params_m0):
    # for rod-type (pure-a) pairs the antisymmetrized potential vanishes at
    # every radius (single-boundary region), so its radius difference does too
    eta = TubeRep(GRID, {(3, 1, 0): (1.2, 0.0), (-3, 1, 0): (0.4j, 0.0)}, "S")
    zeta = TubeRep(GRID, {(3, 1, 0): (0.5j, 0.0), (-3, 1, 0): (0.7, 0.0)}, "S")
    vals = []
    for rho0 in (0.6, 1.0):
        th_ze = symplectic_potential("rho", rho0, zeta, eta, params_m0, angular=ANG)
        th_ez = symplectic_potential("rho", rho0, eta, zeta, params_m0, angular=ANG)
        vals.append(-0.5 * (th_ze - th_ez))
    assert abs(vals[0]) < 1e-9
    assert abs(vals[1] - vals[0]) < 1e-9
