import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from hyperconical import corefn as cf
from hyperconical.errors import DomainViolation, PolePinch, TailDivergence
from hyperconical.hypgamma import ScaleParams

P11 = ScaleParams(1.0, 1.0)
P = ScaleParams(1.0, 1.3)


def test_coupling_gate_message():
    with pytest.raises(DomainViolation, match=r"outside \(eps_b, 2a - eps_b\)"):
        cf.conical_C(P11, 2.5, 0.3, 0.5)
    with pytest.raises(DomainViolation):
        cf.rcal(P11, 0.5 + 0.1j, 0.3, 0.5)
    assert cf.check_coupling(P11, 0.5) == 0.5


def test_normalisation_at_y_equal_ib():
    for b, x in ((0.6, 0.8), (0.5, -0.4)):
        assert abs(cf.rcal(P, b, x, 1j * b) - 1) < 1e-8


def test_all_representations_agree():
    b, x, y = 0.7, 0.9, 0.4
    vals = [cf.rcal_r(P, b, x, y, rep) for rep in cf.REPS]
    for v in vals[1:]:
        assert abs(v - vals[0]) < 1e-8


def test_symmetries():
    b, x, y = 0.8, 0.6, 1.1
    v = cf.rcal(P, b, x, y)
    assert abs(v.imag) < 1e-10  # real for real arguments
    assert abs(cf.rcal(P, b, y, x) - v) < 1e-9  # self-duality
    assert abs(cf.rcal(P, b, -x, y) - v) < 1e-9  # evenness
    assert abs(cf.rcal(P.swapped(), b, x, y) - v) < 1e-9  # modular invariance


def test_scaling_invariance():
    # R depends on (a+, a-, b, x, y) only through ratios
    b, x, y, lam = 0.8, 0.6, 1.1, 1.7
    v = cf.rcal(P, b, x, y)
    w = cf.rcal(ScaleParams(lam * P.a_plus, lam * P.a_minus), lam * b, lam * x, lam * y)
    assert abs(v - w) < 1e-9


def test_small_b_limit():
    b, x, y = 1e-3, 0.5, 0.7
    v = cf.rcal_r(P11, b, x, y, eps_b=b / 2)
    assert abs(v - 2 * math.cos(P11.alpha * x * y / 2)) < 1e-2


def test_elementary_R0_matches_quadrature():
    p = ScaleParams(0.8, 1.3)
    x, y = 0.5, 0.9
    closed = cf.elementary_RN(p, 0, x, y)
    direct = cf.rcal_r(p, p.a_plus, x, y)
    assert abs(closed - direct) < 1e-8


def test_complex_arguments_gated():
    # moving y far off the real axis pinches the contour
    with pytest.raises((PolePinch, TailDivergence)):
        cf.rcal_r(P11, 0.5, 0.3, 0.3 + 3j)
    assert cf.select_rep(P11, 0.5, 0.3, 0.4) == 1


def test_kernel_K_mero():
    m = cf.kernel_K(P11, 0.5, 0.3, 0.4)
    assert m.is_regular
    # at x = 0, v = 1.5i, b = 0.5 two factors sit at the pole -ia of G
    pole = cf.kernel_K(P11, 0.5, 0.0, 1.5j)
    assert pole.kind == "pole" and pole.order == 2


def test_weight_package_relations():
    b, z = 0.7, 0.9
    w = cf.weight_package(P, b, z)
    c_minus = cf.cfun(P, b, -z)
    assert abs(w.w - 1 / (w.c * c_minus)) < 1e-12
    assert abs(w.u + w.c / c_minus) < 1e-12
    assert abs(abs(w.phi) - 1) < 1e-15
    # w is positive on the real line
    assert w.w.real > 0 and abs(w.w.imag) < 1e-12 * abs(w.w)


def test_E_large_x_asymptotics():
    b, y = 0.7, 0.8
    x = 9.0
    e = cf.efn_E(P, b, x, y, method="shifted")
    u_minus = cf.weight_package(P, b, -y).u
    asym = cmath.exp(0.5j * P.alpha * x * y) - u_minus * cmath.exp(-0.5j * P.alpha * x * y)
    assert abs(e - asym) < 1e-4


def test_E_methods_agree():
    b, x, y = 0.7, 1.5, 0.8
    assert abs(cf.efn_E(P, b, x, y, method="shifted") - cf.efn_E(P, b, x, y, method="direct")) < 1e-8


def test_F_is_real_and_symmetric():
    b, x, y = 0.7, 1.2, 0.5
    f = cf.ffn_F(P, b, x, y)
    assert abs(f.imag) < 1e-10
    assert abs(cf.ffn_F(P, b, y, x) - f) < 1e-9
    with pytest.raises(DomainViolation):
        cf.ffn_F(P, b, -x, y)


def test_B_forms_agree():
    b, x, y = 0.7, 0.4, 0.6
    vals = [cf.bfn_B(P, b, x, y, form) for form in ("bnew", "rep2", "rep3")]
    assert abs(vals[0] - vals[1]) < 1e-8 * max(1, abs(vals[0]))
    assert abs(vals[0] - vals[2]) < 1e-8 * max(1, abs(vals[0]))


def test_gegenbauer_low_orders():
    assert cf.gegenbauer_P(P, 0.7, 0, c=0.3) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        cf.gegenbauer_P(P, 0.7, -1, c=0.3)


@settings(max_examples=10, deadline=None)
@given(st.floats(0.2, 1.8), st.floats(-1.5, 1.5), st.floats(0.1, 1.5))
def test_reality_property(b, x, y):
    v = cf.rcal(P11, b, x, y)
    assert abs(v.imag) < 1e-9 * max(1.0, abs(v))
