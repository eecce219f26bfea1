import csv
import io
from fractions import Fraction as F

import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from rankone import spectral as sp
from rankone.errors import InconclusiveGap
from rankone.operators import RankOneShift
from rankone.series import PowerSeries, build_h0
from rankone.space import make_space

NAMED = ["hardy", "bergman", "dirichlet"]
SPACES = {k: make_space(k) for k in NAMED}
H = SPACES["hardy"]
PROBES = [0, 0.5, 1, 1j, -1.2, 2, 0.7 + 0.7j, -0.3 - 1.1j, 1.5j]


def op(kind, f, g=1):
    return RankOneShift(SPACES[kind], PowerSeries.poly(f) if isinstance(f, list) else f, g)


# injectivity modulus ---------------------------------------------------------


def test_modulus_examples():
    M = op("hardy", 0, 0)
    assert sp.injectivity_modulus(M, 0, 64) == pytest.approx(1.0, abs=1e-12)
    assert sp.injectivity_modulus(M, 2, 256) == pytest.approx(1.0, abs=2e-3)
    vals = [sp.injectivity_modulus(M, 1, N) for N in (64, 128, 256, 512)]
    assert vals[-1] <= 0.05
    assert all(b < a for a, b in zip(vals, vals[1:]))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(NAMED),
       st.sampled_from([[0], [2], [1, 1], [F(1, 2), -1], [0, -1, 1], [1, 0, 2]]),
       st.complex_numbers(max_magnitude=2.5, allow_nan=False, allow_infinity=False),
       st.sampled_from([8, 17, 40]))
def test_fast_modulus_matches_dense_svd(kind, f, lam, N):
    S = op(kind, f)
    fast = sp.modulus_many(S, [lam], N)[0]
    dense = sp.injectivity_modulus_dense(S, lam, N)
    assert fast == pytest.approx(dense, abs=1e-12)
    assert sp.injectivity_modulus(S, lam, N) == pytest.approx(dense, abs=1e-12)


@pytest.mark.parametrize("kind", NAMED)
@pytest.mark.parametrize("f", [[0], [2], [1, 1], [F(1, 2), -1]])
def test_modulus_nonincreasing_in_N(kind, f):
    S = op(kind, f)
    rows = np.array([sp.modulus_many(S, PROBES, N) for N in (16, 32, 64, 128)])
    assert np.all(np.diff(rows, axis=0) <= 1e-12)


@pytest.mark.parametrize("kind", NAMED)
@pytest.mark.parametrize("f", [[2], [1, 1], [0, -1]])
def test_perturbation_moves_modulus_by_at_most_its_norm(kind, f):
    # no spurious eigenvalues: sigma_min(S - lam) >= sigma_min(M_z - lam) - ||f|| ||g||
    S = op(kind, f)
    base = op(kind, 0, 0)
    norm = np.sqrt(float(SPACES[kind].inner(S.f, S.f).re))
    lams = [3, -2.5, 0.2 + 0.1j, 1.8j, -0.4]
    ms = sp.modulus_many(S, lams, 64)
    mb = sp.modulus_many(base, lams, 64)
    assert np.all(ms >= mb - norm - 1e-12)


def test_modulus_at_non_eigenvalue_off_spectrum():
    S = op("hardy", [2])
    m = sp.injectivity_modulus(S, 3, 128)
    assert m >= 0.5
    h = build_h0(PowerSeries.poly([2]), 2, 0)
    assert sp.eigen_check(S, 3, h, 128).residual >= m


def test_threads_do_not_change_values():
    S = op("bergman", [1, 1])
    lams = np.linspace(-2, 2, 25) + 0.3j
    a = sp.modulus_many(S, lams, 48, threads=1, chunk=5)
    b = sp.modulus_many(S, lams, 48, threads=3, chunk=5)
    assert np.array_equal(a, b)


# grids and scans -------------------------------------------------------------------


def test_grid_round_trip_and_origin():
    g = sp.GridSpec.square(2.5, 201)
    assert sp.GridSpec.from_dict(g.to_dict()) == g
    assert g.step == pytest.approx(0.025)
    i, j = g.nearest(0j)
    assert g.points()[i, j] == 0
    assert g.nearest(2 + 0j) == (100, 180)


def test_base_scan_is_circle():
    # the default tau = 10/sqrt(N) is wide at N = 128; a tight one shows the circle
    scan = sp.left_spectrum_scan(op("hardy", 0, 0), sp.GridSpec.square(2, 41), N=128, tau=0.15)
    pts = scan.grid.points()
    r = np.abs(pts)
    assert not scan.mask[np.abs(r - 1) > 0.2].any()
    assert scan.mask[np.abs(r - 1) < 0.02].all()
    assert np.all(scan.modulus >= 0)
    assert np.array_equal(scan.mask, scan.modulus <= scan.tau)


def test_perturbed_scans():
    grid = sp.GridSpec.square(2.5, 41)
    base = sp.left_spectrum_scan(op("hardy", 0, 0), grid, N=128, tau=0.2)
    s2 = sp.left_spectrum_scan(op("hardy", [2]), grid, N=128, tau=0.2)
    assert s2.mask[grid.nearest(2 + 0j)]
    assert not (base.mask & ~s2.mask).any()
    s3 = sp.left_spectrum_scan(op("hardy", [1, 1]), grid, N=128, tau=0.2)
    assert not s3.mask[grid.nearest(2 + 0j)]
    assert not s3.mask[np.abs(np.abs(grid.points()) - 1) > 0.5].any()


def test_scan_csv():
    grid = sp.GridSpec(-1, 1, -0.5, 0.5, 3, 2)
    scan = sp.left_spectrum_scan(op("hardy", 0, 0), grid, N=32, tau=0.5)
    rows = list(csv.reader(io.StringIO(scan.to_csv())))
    assert rows[0] == ["re", "im", "modulus", "in_left_spectrum"]
    assert [(float(r[0]), float(r[1])) for r in rows[1:]] == [
        (-1, -0.5), (0, -0.5), (1, -0.5), (-1, 0.5), (0, 0.5), (1, 0.5)]
    assert scan.to_csv() == scan.to_csv()


def test_default_tau():
    assert sp.default_tau(256) == pytest.approx(0.625)


# spectral radius ------------------------------------------------------------------


@pytest.mark.parametrize("f,expected", [([0], 1.0), ([2], 2.0), ([F(1, 2), -1], 1.0)])
def test_gelfand_examples(f, expected):
    g = 0 if f == [0] else 1
    est = sp.spectral_radius_gelfand(op("hardy", f, g), 256, 32)
    tol = 0.02 if f == [0] else 0.05
    assert abs(est.value - expected) / expected <= tol
    assert len(est.sequence) == 32


def test_gelfand_sequence_is_power_norms():
    S = op("bergman", [1, 1])
    est = sp.spectral_radius_gelfand(S, 40, 8)
    A = S.square(40 + 8 * S.raise_by)
    P = np.eye(A.shape[0])[:, :40].astype(complex)
    for n in range(1, 9):
        P = A @ P
        assert est.sequence[n - 1] == pytest.approx(np.linalg.norm(P, 2) ** (1 / n), rel=1e-10)


# adjoint kernel and hyper-range --------------------------------------------------------


@pytest.mark.parametrize("f,expected", [
    ([0, -1, 1], [[1, 0], [0, 1]]),
    ([0, 0, 1], [[1, 0]]),
    ([1], [[1, -1]]),
])
def test_adjoint_kernel_examples(f, expected):
    est = sp.adjoint_kernel(op("hardy", f), 256, 10)
    assert est.dimension == len(expected)
    assert est.gap_ratio >= 10
    P = np.zeros((256, len(expected)), dtype=complex)
    for k, v in enumerate(expected):
        P[: len(v), k] = v
    assert np.max(sla.subspace_angles(est.basis, P)) < 1e-8
    assert np.allclose(est.basis.conj().T @ est.basis, np.eye(est.dimension), atol=1e-10)


def test_hyper_range_examples():
    h0 = sp.orthonormal_coords(build_h0(PowerSeries.poly([2]), 2, 0), H, 256)
    est = sp.hyper_range(op("hardy", [2]), 256, 12, 10)
    assert est.dimension == 1 and est.gap_ratio >= 10
    assert sla.subspace_angles(est.basis, h0[:, None])[0] < 1e-6
    assert sp.hyper_range(op("hardy", [1, 1]), 256, 12, 10).dimension == 0
    est = sp.hyper_range(op("hardy", [F(1, 2), -1]), 256, 12, 10)
    assert est.dimension == 1
    assert abs(est.basis[0, 0]) == pytest.approx(1.0, abs=1e-8)


def test_hyper_range_boundary_case_is_inconclusive():
    # 1/(21/20 - z) is barely outside the Bergman space: no clean gap at N = 256
    with pytest.raises(InconclusiveGap):
        sp.hyper_range(op("bergman", [F(21, 20)]), 256, 12, 10)


# eigen checks ------------------------------------------------------------------------


def test_eigen_check_examples():
    h0 = build_h0(PowerSeries.poly([2]), 2, 0)
    chk = sp.eigen_check(op("hardy", [2]), 2, h0, 256)
    assert chk.residual < 1e-10
    assert chk.tail_norm < 1e-70
    b = F(1, 2)
    chk = sp.eigen_check(op("hardy", [b, -1]), 0.5, PowerSeries.poly([1]), 64)
    assert chk.residual == 0 and chk.tail_norm == 0


@pytest.mark.parametrize("mu", [2, F(3, 2), F(5, 2)])
def test_eigen_residual_decays_geometrically(mu):
    S = op("hardy", [mu])
    h0 = build_h0(PowerSeries.poly([mu]), mu, 0)
    res = [sp.eigen_check(S, float(mu), h0, N).residual for N in (8, 16, 24, 32)]
    bound = (1 / float(mu) + 0.1) ** 8
    assert all(b <= a * bound for a, b in zip(res, res[1:]))


# wandering subspace ----------------------------------------------------------------------


@pytest.mark.parametrize("kind", NAMED)
def test_wandering_subspace(kind):
    assert sp.wandering_subspace_check(op(kind, 0, 1), 128).max_residual < 1e-12
    assert sp.wandering_subspace_check(op(kind, [1]), 256).max_residual < 1e-8


@pytest.mark.parametrize("kind", NAMED)
def test_wandering_negative_control(kind):
    w = sp.wandering_subspace_check(op(kind, [2, -1]), 128)
    assert w.kernel_dim == 1
    assert w.residuals[0] > 0.5
