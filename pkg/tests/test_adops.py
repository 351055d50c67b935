import cmath

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from hyperconical import adops, corefn
from hyperconical.adops import AdoSpec, ResidualReport
from hyperconical.errors import DomainViolation
from hyperconical.hypgamma import ScaleParams

P = ScaleParams(1.0, 1.3)


def test_apply_ado_shift_convention():
    # coeff_plus multiplies f(z - step), coeff_minus f(z + step)
    spec = AdoSpec(lambda z: 2.0 + 0 * z, lambda z: 3.0 + 0 * z, 1j)
    f = lambda z: z * z
    z = 0.5
    assert complex(adops.apply_ado(spec, f, z)) == pytest.approx(2 * (z - 1j) ** 2 + 3 * (z + 1j) ** 2)


def test_compose_order():
    shift = AdoSpec(lambda z: 1.0 + 0 * z, lambda z: 0.0 * z, 1.0)  # f(z - 1)
    scale = AdoSpec(lambda z: z, lambda z: 0.0 * z, 0.0)  # z f(z)
    f = lambda z: np.asarray(z) + 0j
    # scale acts first, then shift: (z - 1) * (z - 1)
    v = adops.compose(f, shift, scale)(3.0)
    assert complex(v) == pytest.approx(4.0)


def test_residual_report_verdict():
    r = ResidualReport.make("x", {}, 1.0, 1.0 + 1e-12, 1e-10)
    assert r.passed and r.residual == pytest.approx(1e-12)
    assert not ResidualReport.make("x", {}, 1.0, 2.0, 1e-10).passed


def test_continued_sqrt_tracks_branch():
    # sqrt(z^2) continued from z0 = 1 to -1 along the upper half circle
    # would give -1; along the straight segment through 0 it must fail
    with pytest.raises(DomainViolation):
        adops.continued_sqrt(lambda u: u * u, -1.0, 1.0)
    v = adops.continued_sqrt(lambda u: u * u, -1.0 + 0.5j, 1.0 + 0.5j)
    assert abs(v - (-1.0 + 0.5j)) < 1e-12


@pytest.mark.parametrize("ident", adops.KERNEL_IDS)
def test_kernel_identities(ident):
    r = adops.kernel_identity_residual(ident, P, 0.7 - 0.1j, 0.2 + 0.1j, 1, 0.4 - 0.1j, 0.9 + 0.05j)
    assert r.passed, r


def test_similarity_transform_consistency():
    for delta in (1, -1):
        lhs, rhs = adops.cA_consistency(P, 0.6, delta, 0.4 + 0.1j)
        assert abs(lhs - rhs) < 1e-12 * max(1, abs(rhs))


@pytest.mark.parametrize("op", adops.EIGEN_OPS)
def test_eigenvalue_equations(op):
    r = adops.eigen_residual(P, 0.3, 0.7, 0.5, op)
    assert r.residual < 1e-6 * max(1, abs(r.rhs)), r


def test_eigen_gate():
    with pytest.raises(DomainViolation):
        adops.eigen_residual(P, 0.9, 0.7, 0.5, "A+x")


@pytest.mark.parametrize("ident", adops.OPERATOR_SHIFT_IDS)
def test_operator_shift_relations(ident):
    r = adops.shift_relation_residual(ident, P, 0.6, 0.4 + 0.1j, delta=1)
    assert r.residual < 1e-11 * max(1, abs(r.rhs)), r


@settings(max_examples=20, deadline=None)
@given(st.floats(0.1, 1.0), st.floats(-2, 2), st.floats(-0.2, 0.2), st.sampled_from([1, -1]))
def test_up_shift_intertwines(b, re, im, delta):
    assume(abs(re) > 0.05)  # s_delta vanishes at z = 0
    r = adops.shift_relation_residual("ush", P, b, complex(re, im), delta=delta)
    assert r.residual < 1e-10 * max(1, abs(r.rhs))


def test_probe_function_is_plane_wave():
    f = adops.probe_function(P, 0.5)
    assert complex(f(1.0)) == pytest.approx(cmath.exp(0.5j * P.alpha * 0.5))


def test_hermitian_form_coefficients_real_on_real_line():
    spec = adops.H_op(P, 0.6, 1)
    z = np.array([0.8, 2.5])
    cp, cm = spec.coeff_plus(z), spec.coeff_minus(z)
    # the two coefficients are complex conjugates for real z
    assert np.allclose(cp, np.conj(cm), atol=1e-12)
    assert corefn.cfun(P, 0.6, 0.8) != 0
