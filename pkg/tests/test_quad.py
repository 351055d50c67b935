import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperconical import quad
from hyperconical.errors import ContourGate, EvaluationFailure, NonConvergence
from hyperconical.quad import BentContour, QuadConfig


def gauss(z):
    return np.exp(-z * z)


def test_gaussian_on_real_line():
    r = quad.integrate_line(gauss, 0.0, 1.0)
    assert abs(r.value - math.sqrt(math.pi)) < 1e-12
    assert r.err_est >= 0
    assert r.trunc_left <= r.trunc_right
    assert r.n_evals > 0


def test_oscillatory_gaussian_fourier_transform():
    # int exp(-t^2) exp(i k t) dt = sqrt(pi) exp(-k^2/4)
    for k in (0.5, 3.0, 8.0):
        r = quad.integrate_line(lambda t: np.exp(-t * t + 1j * k * t), 0.0, 1.0)
        assert abs(r.value - math.sqrt(math.pi) * math.exp(-k * k / 4)) < 1e-11


def test_exponential_tail_sech():
    # int sech(t) cos(k t) dt = pi sech(pi k / 2)
    k = 1.7
    r = quad.integrate_line(lambda t: np.cos(k * t) / np.cosh(t), 0.0, 1.0)
    assert abs(r.value - math.pi / math.cosh(math.pi * k / 2)) < 1e-10


def test_half_line():
    r = quad.integrate_half_line(lambda t: np.exp(-2.0 * t), decay_rate_hint=2.0)
    assert abs(r.value - 0.5) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(-1.5, 1.5))
def test_shifted_line_is_contour_independent(c):
    # exp(-z^2) is entire: every horizontal line gives sqrt(pi)
    r = quad.integrate_line(gauss, c, 1.0)
    assert abs(r.value - math.sqrt(math.pi)) < 1e-10


def test_bent_contour_separates_poles():
    # sech z has a simple pole at i pi/2 with residue -i; a contour passing
    # above it differs from the real line by -2 pi i * (-i) = -2 pi
    f = lambda z: 1.0 / np.cosh(z)
    straight = quad.integrate_line(f, 0.0, 1.0).value
    assert abs(straight - math.pi) < 1e-10
    c = BentContour(left=0.0, mid=2.0, right=0.0, t1=-0.1, t2=0.1, width=0.2)
    c.check_clear(0.0, lo=math.pi / 2, hi=3 * math.pi / 2, margin=0.1)
    bent = quad.integrate_contour(f, c, 1.0).value
    assert abs(bent + math.pi) < 1e-9


def test_bent_contour_gate():
    c = BentContour(left=0.0, mid=0.5, right=0.0)
    with pytest.raises(ContourGate):
        c.check_clear(0.0, lo=0.45, margin=0.1)


def test_config_validation():
    with pytest.raises(ValueError):
        QuadConfig(abs_tol=0)
    with pytest.raises(ValueError):
        QuadConfig(tail_cut=1.5)
    with pytest.raises(ValueError):
        QuadConfig(max_subdivisions=0)
    assert QuadConfig().replace(abs_tol=1e-6).abs_tol == 1e-6


def test_nonfinite_integrand():
    with pytest.raises(EvaluationFailure):
        quad.integrate_line(lambda t: np.full(np.shape(t), np.nan), 0.0, 1.0)


def test_nondecaying_tail():
    with pytest.raises(NonConvergence):
        quad.integrate_line(lambda t: np.ones_like(t), 0.0, 1.0)


def test_subdivision_budget():
    cfg = QuadConfig(max_subdivisions=20, abs_tol=1e-14, rel_tol=1e-14)
    with pytest.raises(NonConvergence):
        quad.integrate_line(lambda t: np.exp(-t * t) * np.cos(300 * t), 0.0, 1.0, cfg)


def test_recording_collects_results():
    with quad.recording() as log:
        quad.integrate_line(gauss, 0.0, 1.0)
        quad.integrate_half_line(lambda t: np.exp(-t))
    assert len(log) == 2
    quad.integrate_line(gauss, 0.0, 1.0)
    assert len(log) == 2
