"""Averaged cone-contraction operator and the decomposition identity."""
import numpy as np
import pytest

from orliczforms import (Box, apply_Ky, apply_T, closed_part,
                         decomposition_residual, named_form)
from orliczforms.errors import DegreeError
from orliczforms.homotopy import BumpFunction

BOX = Box([0.0, 0.0], [1.0, 1.0])


def test_kernel_on_constant_oneform():
    # K_y(dx1) at x is the linear function x1 - y1
    u = named_form("const:dx1", 2)
    y = np.array([0.2, 0.3])
    got = apply_Ky(u, y, np.array([[0.7, 0.9]]))
    assert got.degree == 0
    assert got.coeffs[0] == pytest.approx(0.5, rel=1e-12)


def test_kernel_quadrature_in_t_is_exact_for_polynomials():
    u = named_form("oneform:x2,0", 2)
    y = np.array([0.2, 0.3])
    got = apply_Ky(u, y, np.array([[0.6, 0.7]]))
    # integrand (0.3 + 0.4 t) * 0.4 integrates to 0.2
    assert got.coeffs[0] == pytest.approx(0.2, rel=1e-12)


def test_bump_is_normalized_and_supported_inside():
    psi = BumpFunction(BOX)
    quad = BOX.quadrature(81)
    mass = float(np.dot(quad.weights, psi(quad.points)))
    assert mass == pytest.approx(1.0, rel=0.02)
    # vanishes at the boundary
    edge = np.array([[0.0, 0.5], [1.0, 0.5], [0.5, 0.0], [0.5, 1.0]])
    np.testing.assert_allclose(psi(edge), 0.0, atol=1e-12)


def test_apply_T_lowers_degree():
    u = named_form("corpus:poly-1form", 2)
    assert apply_T(u, BOX, resolution=11).degree == 0
    with pytest.raises(DegreeError):
        apply_T(named_form("poly:x1", 2), BOX, resolution=11)


def test_apply_T_is_linear():
    a = named_form("oneform:x2,0", 2)
    b = named_form("oneform:0,x1^2", 2)
    combo = named_form("oneform:3*x2,2*x1^2", 2)
    pts = np.array([[0.3, 0.4], [0.7, 0.6], [0.5, 0.9]])
    ta = apply_T(a, BOX, resolution=11)
    tb = apply_T(b, BOX, resolution=11)
    tc = apply_T(combo, BOX, resolution=11)
    for p in pts:
        want = 3.0 * ta.value_at(p).coeffs + 2.0 * tb.value_at(p).coeffs
        np.testing.assert_allclose(tc.value_at(p).coeffs, want, atol=1e-12)


def test_decomposition_residual_small_on_smooth_oneform():
    u = named_form("corpus:poly-1form", 2)
    assert decomposition_residual(u, BOX, resolution=21) < 1e-3


def test_decomposition_residual_decreases_with_resolution():
    u = named_form("corpus:mixed-1form", 2)
    coarse = decomposition_residual(u, BOX, resolution=21)
    fine = decomposition_residual(u, BOX, resolution=42)
    assert fine < coarse


def test_closed_form_reproduced_by_closed_part():
    # du = 0 means u = d(Tu): the closed part is u itself up to quadrature noise
    u = named_form("corpus:poly-closed-1form", 2)
    cp = closed_part(u, BOX, resolution=21)
    pts = np.array([[0.35, 0.45], [0.55, 0.65], [0.25, 0.75]])
    for p in pts:
        np.testing.assert_allclose(cp.value_at(p).coeffs, u.value_at(p).coeffs,
                                   atol=1e-3)


def test_closed_part_of_scalar_is_the_mean():
    cp = closed_part(named_form("poly:x1", 2), BOX)
    for p in ([0.3, 0.3], [0.8, 0.1]):
        assert cp.value_at(np.array(p)).coeffs[0] == pytest.approx(0.5, abs=1e-9)


def test_closed_part_of_zero_mean_scalar_vanishes():
    u = named_form("corpus:zeromean-0form", 2)
    cp = closed_part(u, BOX)
    assert abs(cp.value_at(np.array([0.4, 0.9])).coeffs[0]) < 1e-9
