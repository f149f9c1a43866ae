"""Brute-force verifiers and the scan kernels."""

import numpy as np
import pytest

from curvpar._kernels import HAVE_NUMBA, numba_enabled, scan_scores
from curvpar.adapt import adapt
from curvpar.config import DEFAULT_TOL
from curvpar.forms import second_form
from curvpar.heights import height_hessian
from curvpar.oracle import affine_hull_distance, asymptotic_scan, finite_difference_hessian
from curvpar.parabola import build_parabola

from conftest import germ


def test_affine_hull_distance_parabola_plane():
    pts = [np.array([0.0, 2 * y, 2 * y * y, 0.0]) for y in np.linspace(-5, 5, 101)]
    assert affine_hull_distance(pts) == pytest.approx(0.0, abs=1e-9)


def test_affine_hull_distance_constant_point():
    pts = [np.array([0.0, 2.0, 0.0, 0.0])] * 101
    assert affine_hull_distance(pts) == pytest.approx(2.0, abs=1e-12)


def test_affine_hull_distance_shifted_plane():
    c = -1.75
    pts = [np.array([0.0, 2 * y, 2 + 2 * y * y, 2 * c]) for y in np.linspace(-5, 5, 101)]
    assert affine_hull_distance(pts) == pytest.approx(2 * abs(c), abs=1e-9)


def test_affine_hull_needs_three_points():
    with pytest.raises(ValueError, match="at least 3"):
        affine_hull_distance([np.zeros(3), np.ones(3)])


def scan_for(text, order=6, force=None):
    ad = adapt(germ(text, order=order))
    sf = second_form(ad)
    pp = build_parabola(sf)
    return asymptotic_scan(sf, pp.ep, DEFAULT_TOL, force_kernel=force)


def test_scan_hyperbolic_clusters():
    scan = scan_for("(x, x*y, y^2 + x^2, 0)", order=4)
    assert scan.kind == "finite"
    assert len(scan.clusters) == 2
    assert abs(scan.clusters[0] + 1.0) < 1e-3
    assert abs(scan.clusters[1] - 1.0) < 1e-3
    assert not scan.includes_infinity


def test_scan_elliptic_empty():
    scan = scan_for("(x, x*y, y^2 - x^2, 0)", order=4)
    assert scan.kind == "finite"
    assert scan.clusters == ()


def test_scan_parabolic_double_root():
    scan = scan_for("(x, x*y, y^2, 0)", order=4)
    assert scan.kind == "finite"
    assert len(scan.clusters) == 1
    assert abs(scan.clusters[0]) < 1e-3


def test_scan_radial_half_line_saturates():
    scan = scan_for("(x, y^2, 0, 0)", order=4)
    assert scan.kind == "all"
    assert scan.marked_fraction > 0.99


def test_scan_non_radial_half_line_vertex_and_infinity():
    scan = scan_for("(x, y^2 + x*y, x^2, 0)", order=4)
    assert scan.kind == "finite"
    assert len(scan.clusters) == 1
    assert abs(scan.clusters[0] - (-0.5)) < 1e-3
    assert scan.includes_infinity


def test_fd_hessian_example():
    ad = adapt(germ("(x, x*y, y^2, 0)", order=4))
    h = finite_difference_hessian(ad, (0.0, 0.0, 1.0, 0.0))
    assert np.max(np.abs(h - np.array([[0.0, 0.0], [0.0, 2.0]]))) < 1e-6
    assert np.max(np.abs(finite_difference_hessian(ad, np.zeros(4)))) == 0.0


def test_fd_hessian_matches_closed_form(rng):
    ad = adapt(germ("(x, x*y - y^2, x^2 + 2*y^2, 3*x^2 + x*y)", order=4))
    sf = second_form(ad)
    for _ in range(10):
        nu = rng.normal(size=3)
        closed = np.array(
            [[float(v) for v in row] for row in height_hessian(sf, nu)]
        )
        fd = finite_difference_hessian(ad, np.concatenate(([0.0], nu)))
        assert np.max(np.abs(closed - fd)) < 1e-6


# -- kernel selection -------------------------------------------------------


def test_numpy_and_numba_paths_agree(rng):
    n = 5000
    p1, p2, q1, q2 = (rng.normal(size=n) for _ in range(4))
    via_numpy = scan_scores(p1, p2, q1, q2, 360, force="numpy")
    if HAVE_NUMBA:
        via_numba = scan_scores(p1, p2, q1, q2, 360, force="numba")
        assert np.max(np.abs(via_numpy - via_numba)) < 1e-14


def test_env_flag_disables_numba(monkeypatch):
    monkeypatch.setenv("CURVPAR_NO_NUMBA", "1")
    assert not numba_enabled()
    monkeypatch.delenv("CURVPAR_NO_NUMBA")
    assert numba_enabled() == HAVE_NUMBA


def test_scan_deterministic_across_kernels():
    a = scan_for("(x, x*y, y^2 + x^2, 0)", order=4, force="numpy")
    if HAVE_NUMBA:
        b = scan_for("(x, x*y, y^2 + x^2, 0)", order=4, force="numba")
        assert a.clusters == b.clusters
        assert a.kind == b.kind
