"""Nonrelativistic limit of the conical function.

With a_+ = 2pi/mu, a_- = hbar*beta, b = g*beta and y = beta*p/mu, the
conical function tends to a Gauss hypergeometric function as beta -> 0.
In the dimensionless variables

    lambda = g/hbar,   r = mu x/2,   k = p/(hbar mu)

the limit is psi_nr(lambda; r, k), a conical (Mehler) function up to an
elementary factor.  This module evaluates psi_nr from 2F1 and from four
integral representations, together with the Harish-Chandra c-function,
the scattering function and the limit probes that compare the
relativistic objects at small beta with their limits.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _arith as ar
from .corefn import EPS_B, cfun, log_cfun, phi_b, rcal
from .errors import BadC, DomainViolation, NonConvergence
from .hypgamma import ScaleParams, log_G, log_gamma, rgamma
from .quad import DEFAULT_CONFIG, integrate_half_line, integrate_real

_SERIES_MAX_TERMS = 20000
# below this distance of a - b from the integers the 1/(1-z) connection
# formula cancels badly and the Pfaff series is summed instead
_CONNECTION_MIN_GAP = 1e-2


@dataclass(frozen=True)
class NrParams:
    """Point (lambda; r, k) plus the physical scales used by limit probes.

    g, x and p are recovered from lambda = g/hbar, r = mu x/2 and
    k = p/(hbar mu).  k may be complex (the dual operator shifts it by
    +/- i).
    """

    lam: float
    r: float
    k: complex
    mu: float = 2.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.mu > 0 and self.hbar > 0):
            raise DomainViolation("mu and hbar must be positive")
        if self.lam < 0:
            raise DomainViolation("lambda must be nonnegative")

    @classmethod
    def physical(cls, mu, hbar, g, x, p):
        return cls(g / hbar, mu * x / 2, p / (hbar * mu), mu, hbar)

    @property
    def g(self):
        return self.lam * self.hbar

    @property
    def x(self):
        return 2 * self.r / self.mu

    @property
    def p(self):
        return self.k * self.hbar * self.mu

    def with_k(self, k):
        return NrParams(self.lam, self.r, k, self.mu, self.hbar)

    def with_r(self, r):
        return NrParams(self.lam, r, self.k, self.mu, self.hbar)

    def relativistic(self, beta):
        """(ScaleParams, b, x, y) whose conical function tends to psi_nr."""
        if not beta > 0:
            raise DomainViolation("beta must be positive")
        sp = ScaleParams(2 * math.pi / self.mu, self.hbar * beta)
        return sp, self.g * beta, self.x, beta * self.p / self.mu


@dataclass(frozen=True)
class HypArgs:
    a: complex
    b: complex
    c: complex
    z: float

    def __post_init__(self):
        c = complex(self.c)
        if c.imag == 0 and c.real <= 0 and c.real == round(c.real):
            raise BadC(f"c = {c.real:g} is a nonpositive integer")
        z = complex(self.z)
        if z.imag != 0 or z.real > 0:
            raise DomainViolation("only real z <= 0 is supported")


def _series(a, b, c, w):
    """Gauss series at 0 <= w <= 1/2 (or any w when it terminates)."""
    total = term = 1.0 + 0j
    for n in range(_SERIES_MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * w
        total += term
        if term == 0:
            return total
        if abs(term) <= 0.25 * ar.EPS * abs(total) and n > 2:
            # the ratio of successive terms tends to w; stop once it has
            # settled below 1 and the tail is negligible
            ratio = abs((a + n + 1) * (b + n + 1) / ((c + n + 1) * (n + 2)) * w)
            if ratio < 1:
                return total
    raise NonConvergence(f"2F1 series did not converge at w = {w:.6g}")


def _lg(z):
    return complex(log_gamma(complex(z)))


def _rg(z):
    return complex(rgamma(complex(z)))


def _gap_from_integers(z):
    z = complex(z)
    return math.hypot(z.real - round(z.real), z.imag)


def hyp2f1(args):
    """2F1(a, b; c; z) for real z <= 0.

    For -1 <= z <= 0 the Pfaff transformation maps z to z/(z-1) in
    [0, 1/2].  For z < -1 the connection formula at infinity, followed by
    Pfaff on each term, gives two series in 1/(1-z), again in (0, 1/2).
    When a - b is close to an integer that formula cancels and the Pfaff
    series is summed directly (slowly convergent for z far below -1).
    """
    a, b, c, z = complex(args.a), complex(args.b), complex(args.c), float(complex(args.z).real)
    if z == 0.0:
        return 1.0 + 0j
    pfaff = z >= -1.0 or _gap_from_integers(a - b) < _CONNECTION_MIN_GAP
    if pfaff:
        return (1 - z) ** (-a) * _series(a, c - b, c, z / (z - 1))
    w = 1.0 / (1.0 - z)
    lz = math.log(1.0 - z)
    out = 0j
    for s, t in ((a, b), (b, a)):
        coef = np.exp(_lg(c) + _lg(t - s) - s * lz) * _rg(t) * _rg(c - s)
        if coef != 0:
            out += coef * _series(s, c - t, s - t + 1, w)
    return complex(out)


def f21(a, b, c, z):
    return hyp2f1(HypArgs(a, b, c, z))


def _realify(v, k):
    return float(v.real) if complex(k).imag == 0 else complex(v)


def psi_nr(n, variant="psi1"):
    """psi_nr(lambda; r, k) from 2F1 at -sinh^2 r (psi1) or at
    -sinh^2(r/2) (psi2)."""
    lam, k = n.lam, complex(n.k)
    if variant == "psi1":
        v = f21((lam + 1j * k) / 2, (lam - 1j * k) / 2, lam + 0.5, -math.sinh(n.r) ** 2)
    elif variant == "psi2":
        v = f21(lam + 1j * k, lam - 1j * k, lam + 0.5, -math.sinh(n.r / 2) ** 2)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return _realify(v, k)


def quadratic_transform_sides(a, b, w):
    """Both sides of 2F1(a,b;a+b+1/2;4w(1-w)) = 2F1(2a,2b;a+b+1/2;w), w <= 0."""
    c = a + b + 0.5
    return f21(a, b, c, 4 * w * (1 - w)), f21(2 * a, 2 * b, c, w)


def _conical_prefactor(lam, r):
    return math.sinh(r) ** (lam - 0.5) * 2.0 ** (0.5 - lam) * complex(rgamma(lam + 0.5)).real


def conical_P(n):
    """P^{1/2-lambda}_{ik-1/2}(cosh r) from its 2F1 definition."""
    if not (n.lam > 0 and n.r > 0):
        raise DomainViolation("conical_P needs lambda > 0 and r > 0")
    k = complex(n.k)
    v = f21(n.lam + 1j * k, n.lam - 1j * k, n.lam + 0.5, (1 - math.cosh(n.r)) / 2)
    return _realify(_conical_prefactor(n.lam, n.r) * v, k)


# ---------------------------------------------------- integral representations


def _log_cosh(t):
    t = np.abs(t)
    return t + np.log1p(np.exp(-2 * t)) - math.log(2)


def _log_cosh_sum(r, t):
    """log(cosh r + cosh t) for real arrays t, without overflow."""
    return np.logaddexp(_log_cosh(r), _log_cosh(t))


def _gamma_pm(lam, k):
    """log Gamma(lambda + ik) + log Gamma(lambda - ik)."""
    return _lg(lam + 1j * k) + _lg(lam - 1j * k)


def conical_P_integral(n, cfg=DEFAULT_CONFIG):
    """P^{1/2-lambda}_{ik-1/2}(cosh r) from the cosine-transform integral."""
    lam, r, k = n.lam, n.r, float(complex(n.k).real)
    if not (lam > 0 and r > 0):
        raise DomainViolation("conical_P_integral needs lambda > 0 and r > 0")

    def f(t):
        return np.cos(k * t) * np.exp(-lam * _log_cosh_sum(r, t))

    res = integrate_half_line(f, cfg, decay_rate_hint=lam)
    pref = np.exp(_lg(lam) - _gamma_pm(lam, k)) * math.sqrt(2 / math.pi) * math.sinh(r) ** (lam - 0.5)
    return float((pref * res.value).real)


def _rep_i(lam, r, k, cfg):
    def f(t):
        ratio = _log_cosh((t + r) / 2) - _log_cosh((t - r) / 2)
        return np.exp(-lam * _log_cosh_sum(r, t)) * np.cos(k * ratio)

    res = integrate_real(f, lam, cfg)
    return np.exp(_lg(2 * lam) - 2 * _lg(lam)) * 2.0 ** (-lam) * res.value


def _rep_iii(lam, r, k, cfg):
    c = max(0.0, lam - 1) + 0.5

    def f(tau):
        tau = ar.carray(tau)
        lg = (log_gamma((1j * tau - lam + 1j * k + 1) / 2) + log_gamma((1j * tau - lam - 1j * k + 1) / 2)
              - log_gamma((1j * tau + lam + 1j * k + 1) / 2) - log_gamma((1j * tau + lam - 1j * k + 1) / 2))
        return np.exp(lg + 1j * tau * r)

    # the integrand only decays like |t|^(-2 lambda) on the line; beyond
    # |t| = T (right of every pole column, which sit at Re tau = +/-k) the
    # tails are turned into vertical rays where exp(i tau r) decays
    T = abs(k) + 10.0
    mid = integrate_real(lambda t: f(t - 1j * c), 1.0, cfg, left=-T, right=T)
    right = integrate_half_line(lambda s: f(T - 1j * c + 1j * s), cfg, decay_rate_hint=r)
    left = integrate_half_line(lambda s: f(-T - 1j * c + 1j * s), cfg, decay_rate_hint=r)
    total = mid.value + 1j * right.value - 1j * left.value
    pref = np.exp(_lg(2 * lam)) * math.sinh(r) ** (1 - 2 * lam) / (2.0 ** (2 * lam + 1) * math.pi)
    return pref * total


def _rep_iv(lam, r, k, cfg):
    def f(t):
        t = ar.carray(t)
        lg = (log_gamma((1j * t + lam + 1j * k) / 2) + log_gamma((1j * t + lam - 1j * k) / 2)
              + log_gamma((-1j * t + lam + 1j * k) / 2) + log_gamma((-1j * t + lam - 1j * k) / 2))
        return np.exp(lg + 1j * t * r)

    res = integrate_real(f, math.pi / 2, cfg)
    pref = np.exp(_lg(2 * lam) - 2 * _lg(lam) - _gamma_pm(lam, k)) / (4 * math.pi)
    return pref * res.value


def _rep_v(lam, r, k, cfg):
    def f(t):
        return np.exp(1j * k * t - lam * _log_cosh_sum(r, t))

    res = integrate_real(f, lam, cfg)
    return np.exp(_lg(2 * lam) - _gamma_pm(lam, k)) * 2.0 ** (-lam) * res.value


_REPS = {"i": _rep_i, "iii": _rep_iii, "iv": _rep_iv, "v": _rep_v}
NR_REPS = tuple(_REPS)


def psi_nr_rep(n, rep, cfg=DEFAULT_CONFIG):
    """psi_nr(lambda; r, k) from one of the integral representations
    "i", "iii", "iv", "v" (the limits of relativistic representations 1, 3,
    4 and 5)."""
    if rep not in _REPS:
        raise ValueError(f"unknown representation {rep!r}")
    lam, r, k = n.lam, n.r, complex(n.k)
    if k.imag != 0:
        raise DomainViolation("integral representations need real k")
    if not (lam > 0 and r > 0 and k.real > 0):
        raise DomainViolation("integral representations need lambda, r, k > 0")
    if rep == "iii" and not lam > 0.5:
        raise DomainViolation("representation iii converges absolutely only for lambda > 1/2")
    return float(complex(_REPS[rep](lam, r, k.real, cfg)).real)


# ------------------------------------------------------ c-function, E_nr


def w_nr(lam, r):
    return (2 * math.sinh(r)) ** (2 * lam)


def c_hat_nr(lam, k):
    """Harish-Chandra c-function 2 Gamma(2l) Gamma(ik) / (Gamma(l) Gamma(l+ik))."""
    k = complex(k)
    if lam == 0:
        return 1.0 + 0j
    return complex(2 * np.exp(_lg(2 * lam) + _lg(1j * k) - _lg(lam) - _lg(lam + 1j * k)))


def u_hat_nr(lam, k):
    return -c_hat_nr(lam, k) / c_hat_nr(lam, -k)


@dataclass(frozen=True)
class NrScattering:
    c_hat: complex
    u_hat: complex
    E_nr: complex


def e_nr(n):
    """E_nr = 2 w_nr^{1/2} psi_nr / c_hat_nr."""
    lam, r, k = n.lam, n.r, complex(n.k)
    # w_nr^{1/2} psi_nr is formed in logs so that large r does not overflow
    half_w = lam * math.log(2 * math.sinh(r))
    return complex(2 * np.exp(half_w) * psi_nr(n) / c_hat_nr(lam, k))


def nr_scattering(n):
    if not (n.lam > 0 and complex(n.k).real != 0):
        raise DomainViolation("scattering data need lambda > 0 and k != 0")
    return NrScattering(c_hat_nr(n.lam, n.k), u_hat_nr(n.lam, n.k), e_nr(n))


def e_nr_asymptotic(n):
    """exp(irk) - u_hat(lambda; -k) exp(-irk)."""
    k = complex(n.k)
    return complex(np.exp(1j * n.r * k) - u_hat_nr(n.lam, -k) * np.exp(-1j * n.r * k))


# ------------------------------------------------------------ operator checks


def _psi_of_x(n, x):
    return psi_nr(n.with_r(n.mu * x / 2))


def nr_A_residual(n, h=1e-2):
    """|A psi - (p^2/4) psi| with A = -hbar^2 d^2/dx^2 - g hbar mu coth(mu x/2) d/dx
    - g^2 mu^2/4, derivatives from central differences at steps h and h/2
    combined by Richardson extrapolation."""
    x = n.x
    if not x > 0:
        raise DomainViolation("the x-space operator needs x > 0")

    def derivs(s):
        fm, f0, fp = _psi_of_x(n, x - s), _psi_of_x(n, x), _psi_of_x(n, x + s)
        return (fp - fm) / (2 * s), (fp - 2 * f0 + fm) / s ** 2

    d1a, d2a = derivs(h)
    d1b, d2b = derivs(h / 2)
    d1 = (4 * d1b - d1a) / 3
    d2 = (4 * d2b - d2a) / 3
    psi = _psi_of_x(n, x)
    mu, hb, g = n.mu, n.hbar, n.g
    lhs = -hb ** 2 * d2 - g * hb * mu / math.tanh(mu * x / 2) * d1 - g ** 2 * mu ** 2 / 4 * psi
    rhs = complex(n.p) ** 2 / 4 * psi
    return abs(lhs - rhs), lhs, rhs


def nr_Ahat_sides(n):
    """Both sides of the dual eigenvalue equation
    ((k - i lambda)/k) psi(k - i) + ((k + i lambda)/k) psi(k + i) = 2 cosh(r) psi(k),
    i.e. p -> p -/+ i hbar mu with exact shifts of the analytic 2F1."""
    k, lam = complex(n.k), n.lam
    if k == 0:
        raise DomainViolation("the dual operator is singular at k = 0")
    lhs = ((k - 1j * lam) / k * psi_nr(n.with_k(k - 1j))
           + (k + 1j * lam) / k * psi_nr(n.with_k(k + 1j)))
    return complex(lhs), complex(2 * math.cosh(n.r) * psi_nr(n))


# -------------------------------------------------------------- limit probes


def _limit_eps_b(sp, b):
    return min(EPS_B * sp.a, 0.5 * b)


def nr_limit_probe(base, beta_seq, cfg=DEFAULT_CONFIG):
    """[(beta, |R(2pi/mu, hbar beta, g beta; x, beta p/mu) - psi_nr|), ...].

    The coupling b = g beta falls below the default interior guard of the
    relativistic evaluator as beta shrinks, so the guard is relaxed to b/2.
    """
    target = psi_nr(base)
    out = []
    for beta in beta_seq:
        sp, b, x, y = base.relativistic(beta)
        v = rcal(sp, b, x, y, rep=1, cfg=cfg, eps_b=_limit_eps_b(sp, b))
        out.append((float(beta), abs(v - target)))
    return out


def cx_limit_probe(base, beta):
    """|phi(b)/c(b;x) - w_nr(lambda; r)^{1/2}| at the given beta."""
    sp, b, x, _ = base.relativistic(beta)
    v = phi_b(sp, b) / cfun(sp, b, x)
    return abs(v - w_nr(base.lam, base.r) ** 0.5), complex(v)


def cy_limit_probe(base, beta):
    """|G(ia - 2ib) G(ib - ia)/c(b;y) - 2/c_hat_nr(lambda; k)| at the given beta."""
    sp, b, _, y = base.relativistic(beta)
    ia, ib = 1j * sp.a, 1j * b
    lv = log_G(sp, ia - 2 * ib) + log_G(sp, ib - ia) - log_cfun(sp, b, y)
    v = complex(np.exp(lv))
    return abs(v - 2 / c_hat_nr(base.lam, base.k)), v


def cwnorm_probe(lam, r, k):
    """(|w_nr(lambda; r) - 1|, |c_hat_nr(lambda; k) - 1|) for small lambda."""
    return abs(w_nr(lam, r) - 1), abs(c_hat_nr(lam, k) - 1)
