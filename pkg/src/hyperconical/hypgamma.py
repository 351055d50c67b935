"""Hyperbolic gamma function G(a+, a-; z) and its relatives.

Evaluation strategy
-------------------
The scale pair is normalised so that the larger period is 1.  For
|Re z| beyond a fixed cut the asymptotic form exp(-/+ i(chi + alpha z^2/4))
is exact to double precision.  Otherwise the imaginary part of z is
reduced with the first-order difference equations, first in steps of the
larger period and then in steps of the smaller one, until
|Im z| <= a_s/2.  There g(z) is an integral over the whole real y-axis of
an even function that is analytic in |Im y| < pi/a_l, so the midpoint
trapezoidal rule converges geometrically.

Subtracting the Bernoulli-type term z/(a+ a- y^2) would leave an
algebraically decaying integrand; instead the term is replaced by
z A^2/(a+ a- sinh^2(A y)) with A^2 = (a+^2 + a-^2)/2, whose integral
against the difference is known in closed form and which also cancels
the next order at y = 0.

Every step of the ladder that starts inside the strip |Im z| < a uses a
cosh factor with positive real part, so log G computed this way is the
analytic branch i*g(z) throughout the strip.
"""

import functools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _arith as ar
from .errors import (DomainViolation, LadderOverflow, OutsideStrip)
from .quad import DEFAULT_CONFIG, integrate_half_line, integrate_line, integrate_real

# Beyond this |Re z| (in units of a_l) the asymptotic form is used.
R_FAR = 7.0
_STRIP_D = 0.9 * math.pi
_TRAP_H = 2 * math.pi * _STRIP_D / (40.0 + 2 * _STRIP_D * R_FAR)
_MAX_STEPS = 10 ** 6
_CHUNK = 4096


@dataclass(frozen=True)
class ScaleParams:
    a_plus: float
    a_minus: float

    def __post_init__(self):
        if not (self.a_plus > 0 and self.a_minus > 0):
            raise DomainViolation("a_plus and a_minus must be positive")

    @property
    def a(self):
        return 0.5 * (self.a_plus + self.a_minus)

    @property
    def alpha(self):
        return 2 * math.pi / (self.a_plus * self.a_minus)

    @property
    def chi(self):
        return math.pi / 24 * (self.a_plus / self.a_minus + self.a_minus / self.a_plus)

    @property
    def a_s(self):
        return min(self.a_plus, self.a_minus)

    @property
    def a_l(self):
        return max(self.a_plus, self.a_minus)

    @property
    def q_plus(self):
        return complex(np.exp(1j * math.pi * self.a_plus / self.a_minus))

    @property
    def q_minus(self):
        return complex(np.exp(1j * math.pi * self.a_minus / self.a_plus))

    def a_delta(self, delta):
        return self.a_plus if delta > 0 else self.a_minus

    def swapped(self):
        return ScaleParams(self.a_minus, self.a_plus)


@dataclass(frozen=True)
class MeroValue:
    """Value of a meromorphic function at a point.

    kind is "regular", "pole" or "zero"; value is None for poles.
    """

    kind: str
    value: Optional[complex] = None
    order: int = 0
    residue: Optional[complex] = None
    warning: Optional[str] = None

    @staticmethod
    def regular(v, warning=None):
        return MeroValue("regular", complex(v), warning=warning)

    @property
    def is_regular(self):
        return self.kind == "regular"


@dataclass(frozen=True)
class LatticePoint:
    k: int
    l: int
    sign: int

    def point(self, p):
        return self.sign * 1j * (p.a + self.k * p.a_plus + self.l * p.a_minus)


def s_delta(p, delta, z):
    return ar.sinh(ar.pi * ar.carray(z) / p.a_delta(delta))


def c_delta(p, delta, z):
    return ar.cosh(ar.pi * ar.carray(z) / p.a_delta(delta))


def e_delta(p, delta, z):
    return ar.exp(ar.pi * ar.carray(z) / p.a_delta(delta))


# ---------------------------------------------------------------- Euler gamma

_LANCZOS_G = 7.0
_LANCZOS = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def _log_gamma_right(z):
    zm = z - 1.0
    x = np.full(z.shape, _LANCZOS[0], dtype=ar.CDTYPE)
    for i in range(1, _LANCZOS.size):
        x = x + _LANCZOS[i] / (zm + i)
    t = zm + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (zm + 0.5) * ar.log(t) - t + ar.log(x)


def _log_sin_pi(z):
    """log sin(pi z), stable for large |Im z| (branch not normalised)."""
    up = z.imag >= 0
    e_up = ar.exp(2j * ar.pi * np.where(up, z, 0))
    e_dn = ar.exp(-2j * ar.pi * np.where(up, 0, z))
    a = -1j * ar.pi * z + ar.log(e_up - 1.0) - np.log(2j)
    b = 1j * ar.pi * z + ar.log(1.0 - e_dn) - np.log(2j)
    return np.where(up, a, b)


def log_gamma(z):
    """log Gamma(z) for complex arrays, modulo 2*pi*i.  +inf at poles."""
    z = ar.carray(z)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=ar.CDTYPE)
    right = z.real >= 0.5
    with ar.errstate(divide="ignore", invalid="ignore"):
        out[right] = _log_gamma_right(z[right])
        zl = z[~right]
        if zl.size:
            val = math.log(math.pi) - _log_sin_pi(zl) - _log_gamma_right(1.0 - zl)
            pole = (zl.imag == 0) & (zl.real == np.round(zl.real))
            val[pole] = np.inf
            out[~right] = val
    return out[0] if scalar else out


def gamma(z):
    """Euler Gamma on complex arrays (inf at poles)."""
    with ar.errstate(over="ignore", invalid="ignore"):
        v = ar.exp(log_gamma(z))
    z = ar.carray(z)
    pole = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    return np.where(pole, np.inf, v)


def rgamma(z):
    """1/Gamma(z); zero at the poles of Gamma."""
    lg = log_gamma(z)
    with ar.errstate(over="ignore", invalid="ignore"):
        v = ar.exp(-lg)
    return np.where(np.isinf(lg.real), 0.0, v)


def euler_gamma(z):
    """Gamma(z) as a MeroValue; simple poles at 0, -1, -2, ..."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == round(z.real):
        n = int(-z.real)
        return MeroValue("pole", order=1, residue=complex((-1) ** n / math.factorial(n)))
    return MeroValue.regular(complex(ar.exp(log_gamma(z))))


# ------------------------------------------------------- strip evaluation of g


def _sinhc_m1(t):
    """sinh(t)/t - 1 for real t >= 0, accurate near 0."""
    t = np.asarray(t, dtype=float)
    t2 = t * t
    series = t2 / 6 * (1 + t2 / 20 * (1 + t2 / 42 * (1 + t2 / 72 * (1 + t2 / 110))))
    with ar.errstate(over="ignore"):
        direct = np.sinh(t) / np.where(t == 0, 1, t) - 1
    return np.where(t < 0.2, series, direct)


def _sinc_m1(t):
    """sin(t)/t - 1 for complex t, accurate near 0."""
    t2 = t * t
    series = -t2 / 6 * (1 - t2 / 20 * (1 - t2 / 42 * (1 - t2 / 72 * (1 - t2 / 110))))
    small = np.abs(t) < 0.25
    safe = np.where(small, 1.0, t)
    return np.where(small, series, ar.sin(safe) / safe - 1)


@functools.lru_cache(maxsize=64)
def _strip_nodes(ap, am):
    """Midpoint trapezoid data for the normalised pair (max(ap, am) = 1)."""
    s = min(ap, am)
    upper = 40.0 + max(0.0, -math.log(s)) + 4.0
    y = (np.arange(int(math.ceil(upper / _TRAP_H))) + 0.5) * _TRAP_H
    big_a = math.sqrt(0.5 * (ap * ap + am * am))
    s1, s2, sa = _sinhc_m1(ap * y), _sinhc_m1(am * y), _sinhc_m1(big_a * y)
    q = 1.0 / ((1 + s1) * (1 + s2))
    qm1 = -(s1 + s2 + s1 * s2) * q
    pm1 = -(2 * sa + sa * sa) / (1 + sa) ** 2
    wts = _TRAP_H / (y * y)
    return y, q, qm1 - pm1, wts, big_a


def _g_strip(ap, am, w):
    """g for normalised parameters at points with |Im w| <= min(ap, am)/2."""
    y, q, qmp, wts, big_a = _strip_nodes(ap, am)
    out = np.empty(w.shape, dtype=ar.CDTYPE)
    base = float(np.dot(wts, qmp))
    for i in range(0, w.size, _CHUNK):
        wc = w[i:i + _CHUNK]
        t = 2.0 * wc[:, None] * y[None, :]
        acc = (_sinc_m1(t) * q[None, :]) @ wts + base
        out[i:i + _CHUNK] = wc / (ap * am) * (acc - big_a)
    return out


def _ladder(w, step, other, acc, up_count):
    """Shift w by -i*step*n (n = up_count, may be negative) accumulating the
    log of the cosh factors of the difference equation
    G(w + i step/2) = 2 cosh(pi w/other) G(w - i step/2)."""
    n = up_count.astype(np.int64)
    m = int(np.max(np.abs(n))) if n.size else 0
    if m > _MAX_STEPS:
        raise LadderOverflow("imaginary part too large for the difference ladder")
    w = w.copy()
    with ar.errstate(divide="ignore", invalid="ignore"):
        for j in range(m):
            upm = n > j
            if np.any(upm):
                u = w[upm] - 0.5j * step
                acc[upm] += ar.log_2cosh(ar.pi * u / other)
                w[upm] -= 1j * step
            dnm = n < -j
            if np.any(dnm):
                u = w[dnm] + 0.5j * step
                acc[dnm] -= ar.log_2cosh(ar.pi * u / other)
                w[dnm] += 1j * step
    return w


def _log_g_core(p, z, quad_shift=0):
    """log G(z) + quad_shift * i(chi + alpha z^2/4) for a complex array z."""
    z = np.atleast_1d(ar.carray(z))
    al = p.a_l
    ap, am = p.a_plus / al, p.a_minus / al
    s = min(ap, am)
    w = z / al
    out = np.empty(z.shape, dtype=ar.CDTYPE)
    quad = 1j * (p.chi + p.alpha * z * z / 4)
    far = np.abs(w.real) > R_FAR
    if np.any(far):
        sgn = np.sign(w.real[far])
        out[far] = (quad_shift - sgn) * quad[far]
    near = ~far
    if np.any(near):
        wn = w[near]
        acc = np.zeros(wn.shape, dtype=ar.CDTYPE)
        n_big = np.round(wn.imag)
        if s < 1.0:
            wn = _ladder(wn, 1.0, s, acc, n_big)
            n_small = np.round(wn.imag / s)
            wn = _ladder(wn, s, 1.0, acc, n_small)
        else:
            wn = _ladder(wn, 1.0, 1.0, acc, n_big)
        out[near] = 1j * _g_strip(ap, am, wn) + acc + quad_shift * quad[near]
    return out


def _shape_like(z, v):
    return v[0] if np.ndim(z) == 0 else v.reshape(np.shape(z))


def log_G(p, z):
    """Vectorised log G(a+, a-; z): equals i*g(z) in the strip |Im z| < a,
    is defined modulo 2*pi*i elsewhere; -inf at zeros, +inf at poles."""
    return _shape_like(z, _log_g_core(p, z))


def G(p, z):
    """Vectorised hyperbolic gamma function (no lattice bookkeeping)."""
    with ar.errstate(over="ignore", invalid="ignore"):
        return ar.exp(log_G(p, z))


def log_G_right(p, z):
    return _shape_like(z, _log_g_core(p, z, +1))


def log_G_left(p, z):
    return _shape_like(z, _log_g_core(p, z, -1))


def G_right(p, z):
    """G_R(z) = G(z) exp(i(chi + alpha z^2/4)); tends to 1 as Re z -> +inf."""
    with ar.errstate(over="ignore", invalid="ignore"):
        return ar.exp(log_G_right(p, z))


def G_left(p, z):
    """G_L(z) = G(z) exp(-i(chi + alpha z^2/4)); tends to 1 as Re z -> -inf."""
    with ar.errstate(over="ignore", invalid="ignore"):
        return ar.exp(log_G_left(p, z))


# ------------------------------------------------------------- scalar surface


def log_gamma_strip(p, z):
    """g(a+, a-; z) for |Im z| < a (analytic branch, g(0) = 0)."""
    z = complex(z)
    if abs(z.imag) >= p.a:
        raise OutsideStrip(f"|Im z| = {abs(z.imag):.6g} is not below a = {p.a:.6g}")
    return complex(-1j * log_G(p, z))


def lattice_hits(p, z, tol=None):
    """Lattice points z_kl^+/- within tol of z (empty list if none)."""
    z = complex(z)
    if tol is None:
        tol = 1e-12 * (1 + abs(z))
    if abs(z.real) > tol:
        return []
    t = abs(z.imag) - p.a
    if t < -tol:
        return []
    sign = 1 if z.imag > 0 else -1
    hits = []
    for k in range(int(t / p.a_plus + 2)):
        rest = t - k * p.a_plus
        if rest < -tol:
            break
        l = round(rest / p.a_minus)
        if l >= 0 and abs(rest - l * p.a_minus) <= tol:
            hits.append(LatticePoint(k, int(l), sign))
    return hits


def _circle_residue(fun, z0, radius, n=64):
    th = 2 * np.pi * (np.arange(n) + 0.5) / n
    pts = z0 + radius * np.exp(1j * th)
    return complex(np.mean(radius * np.exp(1j * th) * fun(pts)))


def hyp_gamma(p, z):
    """G(a+, a-; z) as a MeroValue, with pole/zero bookkeeping."""
    z = complex(z)
    hits = lattice_hits(p, z)
    if hits:
        order = len(hits)
        if hits[0].sign > 0:
            return MeroValue("zero", order=order)
        res = None
        if order == 1:
            res = _circle_residue(lambda u: G(p, u), z, 0.1 * p.a_s)
        return MeroValue("pole", order=order, residue=res)
    warn = None
    if lattice_hits(p, z, tol=1e-8):
        warn = "within 1e-8 of a lattice point; value is ill-conditioned"
    return MeroValue.regular(complex(G(p, z)), warning=warn)


def hyp_gamma_asymp(p, z, side):
    """exp(-/+ i(chi + alpha z^2/4)) for side = +1/-1."""
    z = ar.carray(z)
    return ar.exp(-side * 1j * (p.chi + p.alpha * z * z / 4))


def g_right(p, z):
    return complex(G_right(p, complex(z)))


def g_left(p, z):
    return complex(G_left(p, complex(z)))


# ------------------------------------------------------------------- E-function


def k_delta(p, delta):
    """Constant K_delta = ln(a_delta/a_{-delta}) / (2 a_{-delta})."""
    ad, aod = p.a_delta(delta), p.a_delta(-delta)
    return math.log(ad / aod) / (2 * aod)


def log_EE(p, z, cfg=DEFAULT_CONFIG):
    """log(E(z)E(-z)) from its integral over (0, inf), |Im z| < a."""
    z = complex(z)
    if abs(z.imag) >= p.a:
        raise OutsideStrip("E(z)E(-z) integral needs |Im z| < a")
    ap, am = p.a_plus, p.a_minus
    c = z * z / (ap * am)

    def f(y):
        y = np.asarray(y, dtype=float)
        ys = np.maximum(y, 1e-6)
        small = ys < 1.0
        yl = np.where(small, 1.0, ys)
        ysm = np.where(small, ys, 1.0)
        near = 2 * np.sin(ysm * z) ** 2 / (np.sinh(ap * ysm) * np.sinh(am * ysm))
        # large y: (1 - cos 2yz) e^{-2ay} scaled by 4/((1-e^{-2a+y})(1-e^{-2a-y}))
        ea = np.exp(-2 * p.a * yl)
        scaled = ea - 0.5 * (np.exp(2j * yl * z - 2 * p.a * yl) + np.exp(-2j * yl * z - 2 * p.a * yl))
        far = 4 * scaled / (np.expm1(-2 * ap * yl) * np.expm1(-2 * am * yl))
        sub = c * (np.exp(-2 * ap * ys) + np.exp(-2 * am * ys))
        return (np.where(small, near, far) - sub) / ys

    rate = 2 * (p.a - abs(z.imag))
    r = integrate_half_line(f, cfg.replace(abs_tol=1e-13, rel_tol=1e-13),
                            decay_rate_hint=min(rate, 2 * p.a_s))
    return 0.5 * r.value


def e_func(p, z, cfg=DEFAULT_CONFIG):
    """The entire function E(z) with G(z) = E(z)/E(-z) and E(0) = 1."""
    z = complex(z)
    delta = 1 if p.a_plus >= p.a_minus else -1
    step = p.a_delta(delta)
    other = p.a_delta(-delta)
    kd = k_delta(p, delta)
    n = int(round(z.imag / step))
    if abs(z.imag - n * step) >= p.a:
        n += 1 if z.imag > 0 else -1
    if abs(n) > _MAX_STEPS:
        raise LadderOverflow("imaginary part too large for the E ladder")
    w = z - 1j * n * step
    log_e = 0.5 * (complex(log_G(p, w)) + log_EE(p, w, cfg))
    factor = 1.0 + 0j
    sq = math.sqrt(2 * math.pi)
    for j in range(abs(n)):
        if n > 0:
            u = w + 1j * step * (j + 0.5)
            factor *= sq * np.exp(1j * u * kd) * complex(rgamma(1j * u / other + 0.5))
        else:
            u = w - 1j * step * (j + 0.5)
            factor /= sq * np.exp(1j * u * kd) * complex(rgamma(1j * u / other + 0.5))
    return complex(np.exp(log_e) * factor)


# --------------------------------------------------------- Fourier transforms


def fourier_F(p, mu, nu, y, mode="closed", cfg=DEFAULT_CONFIG):
    """Integral of exp(i alpha x y) G(x - nu)/G(x - mu) over real x."""
    mu, nu, y = complex(mu), complex(nu), complex(y)
    if not (-p.a < mu.imag < nu.imag < p.a):
        raise DomainViolation("need -a < Im mu < Im nu < a")
    kappa = 0.5 * (nu - mu)
    if not abs(y.imag) < kappa.imag:
        raise DomainViolation("need |Im y| < Im(nu - mu)/2")
    if mode == "closed":
        lg = (log_G(p, 1j * p.a - 2 * kappa) + log_G(p, y - 1j * p.a + kappa)
              + log_G(p, -y - 1j * p.a + kappa))
        return complex(math.sqrt(p.a_plus * p.a_minus)
                       * np.exp(1j * p.alpha * y * (mu + nu) / 2 + lg))
    if mode != "quadrature":
        raise ValueError("mode must be 'closed' or 'quadrature'")
    al = p.alpha

    def f(x):
        return ar.exp(1j * al * x * y + log_G(p, x - nu) - log_G(p, x - mu))

    rate = al * (kappa.imag - abs(y.imag))
    return integrate_line(f, 0.0, rate, cfg).value


def cosine_transform_pair(p, kappa, y, cfg=DEFAULT_CONFIG):
    """Both sides of the cosine transform of G(x - kappa)G(-x - kappa)."""
    kappa, y = complex(kappa), complex(y)
    khat = 1j * p.a - kappa
    al = p.alpha

    def f(x):
        return ar.cos(al * x * y) * ar.exp(log_G(p, x - kappa) + log_G(p, -x - kappa))

    rate = al * (kappa.imag - abs(y.imag))
    r = integrate_real(f, rate, cfg, left=0.0)
    lhs = math.sqrt(2 * al / math.pi) * r.value
    rhs = complex(np.exp(log_G(p, khat - kappa) + log_G(p, y - khat) + log_G(p, -y - khat)))
    return lhs, rhs


def gauss_pair_transform(p, y, s, cfg=DEFAULT_CONFIG):
    """Both sides of the G_R -> G_L Fourier transform on the line
    Im w = a - 2s, with z = y + i s."""
    s = float(s)
    if not 0 < s < p.a / 2:
        raise DomainViolation("s must lie in (0, a/2)")
    z = complex(y) + 1j * s
    al = p.alpha
    off = p.a - 2 * s

    def f(w):
        return ar.exp(1j * al * w * z + log_G_right(p, w - 1j * p.a))

    r = integrate_line(f, off, al * s, cfg)
    lhs = math.sqrt(al / (2 * math.pi)) * r.value
    rhs = complex(np.exp(-1j * math.pi / 4 - 2j * p.chi) * G_left(p, z - 1j * p.a))
    return lhs, rhs


# ----------------------------------------------------------- small a_- probes


def appendix_b_probe(a_plus, lam, z, a_minus_seq):
    """Compare g_R(a+, a-; z + lam*s) with its small-a- prediction.

    s(a+, a-) = (a+/2pi) ln(1/a-); the prediction is
    a-^lam e_+(-2z) / (2 sin(pi a-/a+)).
    """
    if not lam > 1 / math.sqrt(2):
        raise DomainViolation("lambda must exceed 1/sqrt(2)")
    rows = []
    for am in a_minus_seq:
        p = ScaleParams(a_plus, am)
        shift = a_plus / (2 * math.pi) * math.log(1 / am)
        measured = complex(-1j * log_G_right(p, complex(z) + lam * shift))
        predicted = complex(am ** lam / (2 * math.sin(math.pi * am / a_plus))
                            * e_delta(p, 1, -2 * complex(z)))
        rows.append((am, measured, predicted))
    return rows

