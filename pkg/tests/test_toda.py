import numpy as np
import pytest

from hyperconical import toda
from hyperconical.adops import apply_ado
from hyperconical.errors import BranchAmbiguity, DomainViolation
from hyperconical.hypgamma import ScaleParams, c_delta
from hyperconical.toda import NrTodaParams, TodaParams

P11 = ScaleParams(1.0, 1.0)
P16 = ScaleParams(1.0, 1.6)

# 2 sqrt(k sinh(pi k)/pi) K_{ik}(2 lambda e^{-r}) with mpmath.besselk
NR_TODA_ORACLE = [
    ((1.0, 0.5, 1.2), 1.1313908305061309),
    ((0.6, -0.4, 0.5), 0.16889503098197262),
    ((2.0, 1.5, 2.5), 1.009946494574547),
]

# K_{ik}(x) from mpmath.besselk
BESSEL_ORACLE = [
    ((0.7, 1.5), 0.1877014154702139),
    ((2.0, 0.5), 0.01650201894948144),
    ((1e-6, 2.0), 0.11389387274950982),
]


def test_F_real_for_real_arguments():
    v = toda.toda_F(TodaParams(P11, 0.4), 0.3, 0.8)
    assert abs(v.imag) < 1e-9


def test_four_representations_agree():
    t = TodaParams(P16, 0.5)
    vals = [toda.toda_F(t, 0.3, 1.2, rep) for rep in toda.TODA_REPS]
    for v in vals[1:]:
        assert abs(v - vals[0]) < 1e-8


def test_large_x_asymptotics():
    t = TodaParams(P11, 0.0)
    v = toda.toda_F(t, 18.0, 0.7)
    assert abs(v - toda.toda_F_asymptotic(t, 18.0, 0.7)) < 1e-10


def test_representations_3_4_roundoff_at_large_x():
    # reps 3/4 cancel exponentially for large x and flag it
    t = TodaParams(P11, 0.0)
    for rep in (3, 4):
        assert toda.toda_F(t, 18.0, 0.7, rep, full=True).roundoff_limited
    assert not toda.toda_F(t, 18.0, 0.7, 1, full=True).roundoff_limited


def test_exponential_decay_to_the_left():
    far, near = toda.expdec_pair(TodaParams(P11, 0.0), 0.7)
    assert far < near


def test_H_reconstruction_and_cross_reps():
    t = TodaParams(P11, 0.3)
    x, y = 0.6, 0.9
    assert abs(toda.toda_H(x - t.eta, y, 1, P11) - toda.toda_H_from_F(t, x, y)) < 1e-9
    z, w = 0.4 + 0.2j, 0.7 - 0.1j
    vals = [toda.toda_H(z, w, rep, P16) for rep in toda.TODA_REPS]
    for v in vals[1:]:
        assert abs(v - vals[0]) < 1e-8 * max(1, abs(vals[0]))


def test_H_lattice_relation_at_zeros_of_s():
    for delta in (1, -1):
        lhs, rhs = toda.H_lattice_sides(ScaleParams(1.0, 1.2), 0.4, 1, delta)
        assert abs(lhs - rhs) < 1e-8 * max(1, abs(rhs))


def test_H_lattice_relation_fails_at_real_lattice():
    # The relation H(x, y + i a') = H(x, y - i a') follows from the dual
    # eigenvalue equation only where s_delta(y) = 0, i.e. y = i k a_delta.
    # At the real points y = k a_delta it does not hold.
    p = ScaleParams(1.0, 1.2)
    ao = p.a_delta(-1)
    y0 = 1.0 * p.a_delta(1)
    lhs = toda.toda_H(0.4, y0 + 1j * ao, 1, p)
    rhs = toda.toda_H(0.4, y0 - 1j * ao, 1, p)
    assert abs(lhs - rhs) > 1e-2 * max(1, abs(rhs))


def test_dual_eigenvalue_equation_for_H():
    lhs, rhs = toda.H_dual_eigen_sides(P16, 0.3, 0.5 + 0.1j, 1)
    assert abs(lhs - rhs) < 1e-8 * max(1, abs(rhs))


@pytest.mark.parametrize("delta", [1, -1])
def test_AT_new_eigenvalue_equation(delta):
    x, y = 0.3, 0.8
    spec = toda.toda_operator("AT_new", delta, TodaParams(P16, 0.0))

    def h(z):
        return np.array([toda.toda_H(complex(u), y, 1 if complex(u).imag >= 0 else 2, P16)
                         for u in np.atleast_1d(z)])

    lhs = complex(np.atleast_1d(apply_ado(spec, h, x))[0])
    rhs = complex(2 * c_delta(P16, delta, y) * toda.toda_H(x, y, 1, P16))
    assert abs(lhs - rhs) < 1e-8 * max(1, abs(rhs))


def test_HT_on_F():
    t = TodaParams(P16, 0.2)
    y, x = 0.9, 0.5

    def f(z):
        return np.array([toda.toda_F(t, complex(u), y) for u in np.atleast_1d(z)])

    lhs = complex(np.atleast_1d(apply_ado(toda.toda_operator("HT", -1, t), f, x))[0])
    rhs = complex(2 * c_delta(P16, -1, y) * toda.toda_F(t, x, y))
    assert abs(lhs - rhs) < 1e-8


def test_similarity_transform_matches_HT():
    t = TodaParams(P16, 0.3)
    f = lambda z: np.exp(0.2j * np.asarray(z, dtype=complex))
    for x in (0.4, -1.5):
        lhs, rhs = toda.cAT_conjugation_sides(t, 1, x, f)
        assert abs(lhs - rhs) < 1e-10 * max(1, abs(rhs))


def test_dual_hamiltonian_branch_gate():
    spec = toda.toda_operator("HTd", 1, TodaParams(P11, 0.0))
    with pytest.raises(BranchAmbiguity):
        spec.coeff_plus(np.array([-0.5]))
    with pytest.raises(ValueError):
        toda.toda_operator("nope", 1, TodaParams(P11, 0.0))


@pytest.mark.parametrize("ident,delta,u,z", [
    ("Kid1", 1, 0.4 - 3.2j, 0.6),
    ("Kid1", -1, 0.2 + 0.3j, -0.3 + 0.2j),
    ("Kdid", -1, 0.5, 0.3 + 2.1j),
    ("Kdid", 1, 0.9 - 0.2j, -0.4 + 1.5j),
])
def test_kernel_identities(ident, delta, u, z):
    p = P11 if delta == 1 and ident == "Kid1" else ScaleParams(1.0, 1.4)
    r = toda.toda_kernel_residual(ident, p, delta, u, z)
    assert r.residual < 1e-10 * max(1, abs(r.rhs))


def test_limit_probe_decreases():
    seq = toda.toda_limit_probe(TodaParams(P11, 0.2), [1.0, 2.0, 3.0], 0.4, 0.7)
    devs = [d for _, d in seq]
    assert devs == sorted(devs, reverse=True) and devs[-1] < 1e-2


def test_potential_limits():
    r, _, _ = toda.vlim_residual(P16, 1, 0.3, 0.2, 1, 8.0)
    assert r < 1e-10
    r, _, _ = toda.dual_vlim_residual(P16, 1, 0.3, 0.2, 1, 12.0)
    assert r < 1e-10


@pytest.mark.parametrize("lrk,expected", NR_TODA_ORACLE)
def test_nr_toda_against_oracle(lrk, expected):
    n = NrTodaParams(*lrk)
    assert abs(toda.nr_toda_F(n, 1) - expected) < 1e-12
    assert abs(toda.nr_toda_F(n, 2) - expected) < 1e-9


@pytest.mark.parametrize("kx,expected", BESSEL_ORACLE)
def test_bessel_K_imaginary_order(kx, expected):
    assert abs(toda.bessel_K_imag(*kx) - expected) < 1e-13
    with pytest.raises(DomainViolation):
        toda.bessel_K_imag(1.0, -1.0)


def test_nr_toda_asymptotics_and_kernel():
    n = NrTodaParams(1.0, 10.0, 1.2)
    assert abs(toda.nr_toda_F(n) - toda.nr_toda_asymptotic(n)) < 1e-3
    lhs, rhs = toda.nr_kernel_sides(1.3, 0.4 + 0.2j)
    assert abs(lhs - rhs) < 1e-10 * max(1, abs(rhs))
    assert abs(abs(toda.u_hat_nr_toda_sqrt(1.0, 1.2)) - 1) < 1e-14


def test_nonrelativistic_operator_orders():
    # the Hamiltonian and the dual operators converge at O(beta^2);
    # the similarity-transformed A^T_+ only at O(beta)
    b1, b2 = 1e-3, 5e-4
    r1, r2 = toda.nr_toda_operator_probe(b1), toda.nr_toda_operator_probe(b2)
    for key in ("HT+", "HTd+", "ATd+", "cATd+"):
        assert 3.0 < r1[key] / r2[key] < 5.0, key
    assert 1.7 < r1["cAT+"] / r2["cAT+"] < 2.3
    assert r2["HT-"] < 1e-12


def test_exploratory_probes_return_tables():
    rows = toda.yas_probe(TodaParams(P11, 0.0), 0.3, [2.0, 4.0])
    assert len(rows) == 2 and all(len(r) == 4 for r in rows)
    rows = toda.kas_probe(1.0, 0.5, [2.0, 4.0])
    assert len(rows) == 2
