"""The relativistic conical function and its companions.

All of C, R, R_r, B, E and F are evaluated from Fourier-type integrals
whose integrands are ratios of four hyperbolic gamma functions, possibly
times a plane wave.  For real arguments the integrals run over the real
line.  Complex arguments are accepted when the real line still
separates the pole sequences (with a margin) and both tails still decay,
which is exactly the region reached by continuing from real arguments.

Numbering of the representations of R(b;x,y):

  1  G(z +/- (x-y)/2 - ib/2) / G(z +/- (x+y)/2 + ib/2)
  2  G(z +/- x/2 - ia + ib/2) / G(z +/- x/2 + ia - ib/2) * exp(i alpha z y)
  3  G(z +/- y/2 - ib/2) / G(z +/- y/2 + ib/2) * exp(i alpha z x)
  4  rep 2 with x and y interchanged
  5  rep 3 with x and y interchanged
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _arith as ar
from ._gprod import GProduct, den, num
from .errors import (DivisionByZero, DomainViolation, PolePinch,
                     RecurrenceBreakdown, TailDivergence)
from .hypgamma import MeroValue, c_delta, e_delta, hyp_gamma, log_G, s_delta
from .quad import DEFAULT_CONFIG, integrate_line

EPS_B = 0.02          # b must lie in [EPS_B a, (2 - EPS_B) a]
POLE_MARGIN = 0.05    # minimal pole distance, in units of a_s
REPS = (1, 2, 3, 4, 5)


def _lg(p, z):
    return complex(log_G(p, complex(z)))


def check_coupling(p, b, eps_b=None):
    """Return b as a float, or raise DomainViolation unless it is real and
    inside [eps_b, 2a - eps_b] (eps_b defaults to EPS_B * a)."""
    b = complex(b)
    if b.imag != 0:
        raise DomainViolation("the integral representations need a real coupling b")
    b = b.real
    eps = EPS_B * p.a if eps_b is None else float(eps_b)
    if not eps <= b <= 2 * p.a - eps:
        raise DomainViolation(f"b = {b:.6g} outside (eps_b, 2a - eps_b) = [{eps:.3g}, {2 * p.a - eps:.6g}]")
    return b


def _gates(p, eps_b, pole_margin):
    eps = EPS_B * p.a if eps_b is None else float(eps_b)
    margin = POLE_MARGIN * p.a_s if pole_margin is None else float(pole_margin)
    return margin, p.alpha * eps / 4


# ----------------------------------------------------------------- kernel K


def kernel_K(p, b, x, v):
    """K(b;x,v) = prod over signs of G((+/-x +/- v - ib)/2), as a MeroValue."""
    b, x, v = complex(b), complex(x), complex(v)
    order = 0
    value = 1.0 + 0j
    for s1 in (1, -1):
        for s2 in (1, -1):
            g = hyp_gamma(p, (s1 * x + s2 * v - 1j * b) / 2)
            if g.kind == "pole":
                order += g.order
            elif g.kind == "zero":
                order -= g.order
            else:
                value *= g.value
    if order > 0:
        return MeroValue("pole", order=order)
    if order < 0:
        return MeroValue("zero", order=-order)
    return MeroValue.regular(value)


def kernel_K_array(p, b, x, v):
    """Vectorised K(b;x,v) without lattice bookkeeping."""
    x, v = ar.carray(x), ar.carray(v)
    ib = 1j * complex(b)
    lg = sum(log_G(p, (s1 * x + s2 * v - ib) / 2) for s1 in (1, -1) for s2 in (1, -1))
    with ar.errstate(over="ignore", invalid="ignore"):
        return ar.exp(lg)


# --------------------------------------------------- representations of R_r


def _log_rr_factor(p, b):
    """log of R_r / R = log G(ib - ia) - log G(2ib - ia)."""
    a = p.a
    return _lg(p, 1j * (b - a)) - _lg(p, 1j * (2 * b - a))


def rep_integrand(p, b, x, y, rep):
    """The rep-th integrand of R_r(b;x,y), prefactor included."""
    a = p.a
    ib, ia = 1j * b, 1j * a
    x, y = complex(x), complex(y)
    c0 = 0.5 * math.log(p.alpha / (2 * math.pi))
    if rep == 1:
        f = num((x - y) / 2 - ib / 2, -(x - y) / 2 - ib / 2) + \
            den((x + y) / 2 + ib / 2, -(x + y) / 2 + ib / 2)
        return GProduct(p, f, log_const=c0 + _lg(p, ia - ib))
    if rep in (2, 4):
        u, w = (x, y) if rep == 2 else (y, x)
        f = num(u / 2 - ia + ib / 2, -u / 2 - ia + ib / 2) + \
            den(u / 2 + ia - ib / 2, -u / 2 + ia - ib / 2)
        lc = c0 + _lg(p, ia - ib) + _lg(p, u + ia - ib) + _lg(p, -u + ia - ib)
        return GProduct(p, f, wave=w, log_const=lc)
    if rep in (3, 5):
        u, w = (x, y) if rep == 3 else (y, x)
        f = num(w / 2 - ib / 2, -w / 2 - ib / 2) + den(w / 2 + ib / 2, -w / 2 + ib / 2)
        lc = c0 + _lg(p, ib - ia) + _lg(p, u + ia - ib) + _lg(p, -u + ia - ib)
        return GProduct(p, f, wave=u, log_const=lc)
    raise ValueError(f"rep must be one of {REPS}")


def select_rep(p, b, x, y, eps_b=None, pole_margin=None, order=(1, 3, 5, 2, 4)):
    """First representation whose real-line contour passes the gates."""
    margin, min_decay = _gates(p, eps_b, pole_margin)
    last = None
    for rep in order:
        try:
            rep_integrand(p, b, x, y, rep).check_line(0.0, margin, min_decay)
            return rep
        except (PolePinch, TailDivergence) as exc:
            last = exc
    raise last


def rcal_r(p, b, x, y, rep=1, cfg=DEFAULT_CONFIG, eps_b=None, pole_margin=None,
           full=False):
    """Renormalised conical function R_r(b;x,y) from representation rep
    (1..5, or "auto" to pick the first admissible one)."""
    b = check_coupling(p, b, eps_b)
    if rep == "auto":
        rep = select_rep(p, b, x, y, eps_b, pole_margin)
    margin, min_decay = _gates(p, eps_b, pole_margin)
    res = rep_integrand(p, b, x, y, rep).integrate_line(0.0, cfg, margin, min_decay)
    return res if full else res.value


def rcal(p, b, x, y, rep=1, cfg=DEFAULT_CONFIG, eps_b=None, pole_margin=None):
    """The conical function R(b;x,y), normalised by R(b;x,ib) = 1."""
    v = rcal_r(p, b, x, y, rep, cfg, eps_b, pole_margin)
    return complex(v * np.exp(-_log_rr_factor(p, float(complex(b).real))))


def conical_C(p, b, x, y, cfg=DEFAULT_CONFIG, eps_b=None, pole_margin=None):
    """C(b;x,y): sqrt(alpha/2pi) times the integral of the rep-1 G-ratio."""
    b = check_coupling(p, b, eps_b)
    margin, min_decay = _gates(p, eps_b, pole_margin)
    g = rep_integrand(p, b, x, y, 1)
    g.log_const -= _lg(p, 1j * (p.a - b))
    return g.integrate_line(0.0, cfg, margin, min_decay).value


# ------------------------------------------------------------------ B-function


def bfn_B(p, b, x, y, form="bnew", cfg=DEFAULT_CONFIG, eps_b=None, pole_margin=None):
    """B(b;x,y) from one of its three integral forms: "bnew" (the kernel
    Fourier transform), "rep2" or "rep3"."""
    b = check_coupling(p, b, eps_b)
    margin, min_decay = _gates(p, eps_b, pole_margin)
    x, y = complex(x), complex(y)
    ib, ia = 1j * b, 1j * p.a
    if form == "bnew":
        f = num((x - ib) / 2, -(x + ib) / 2) + den(-(x - ib) / 2, (x + ib) / 2)
        g = GProduct(p, f, wave=y)
    elif form == "rep2":
        f = num((x - y) / 2 - ia + ib / 2, -(x - y) / 2 - ia + ib / 2) + \
            den((x + y) / 2 + ia - ib / 2, -(x + y) / 2 + ia - ib / 2)
        g = GProduct(p, f, log_const=_lg(p, x + ia - ib) + _lg(p, -x + ia - ib))
    elif form == "rep3":
        c = [y / 2 - ia + ib / 2, -y / 2 - ia + ib / 2]
        f = num(*c) + num(*c, sigma=-1)
        g = GProduct(p, f, wave=x, log_const=2 * _lg(p, ia - ib))
    else:
        raise ValueError("form must be 'bnew', 'rep2' or 'rep3'")
    return g.integrate_line(0.0, cfg, margin, min_decay).value


# --------------------------------------------------- c, u, w, w_r and phi


@dataclass(frozen=True)
class WeightPackage:
    c: complex
    u: complex
    w: complex
    w_r: complex
    phi: complex


def _exp(v):
    with ar.errstate(over="ignore", invalid="ignore"):
        return complex(np.exp(v))


def log_cfun(p, b, z):
    """log c(b;z) = log G(z + ia - ib) - log G(z + ia)."""
    ia, ib = 1j * p.a, 1j * complex(b)
    z = ar.carray(z)
    return log_G(p, z + ia - ib) - log_G(p, z + ia)


def cfun(p, b, z):
    return _exp(log_cfun(p, b, complex(z)))


def phi_b(p, b):
    b = complex(b)
    return complex(np.exp(1j * p.alpha * b * (b - 2 * p.a) / 4))


def weight_package(p, b, z):
    """Harish-Chandra c-function, scattering function u, weights w and w_r
    and the constant phi(b), all at the point z."""
    z, b = complex(z), complex(b)
    ia, ib = 1j * p.a, 1j * b
    lc = complex(log_cfun(p, b, z))
    lcm = complex(log_cfun(p, b, -z))
    return WeightPackage(
        c=_exp(lc),
        u=-_exp(lc - lcm),
        w=_exp(-lc - lcm),
        w_r=_exp(_lg(p, z - ia + ib) + _lg(p, -z - ia + ib)),
        phi=phi_b(p, b),
    )


# ----------------------------------------------------------------- E and F


def _efn_shifted(p, b, x, y, cfg):
    """E(b;x,y) from rep 3 with the contour moved above the two poles at
    z = +/-y/2 + ia - ib/2; accurate for large Re x."""
    a = p.a
    ia, ib = 1j * a, 1j * b
    h = a - b / 2 + 0.5 * p.a_s
    lpre = (np.log(phi_b(p, b)) - 0.5 * math.log(p.a_plus * p.a_minus) + _lg(p, ib - ia)
            - complex(log_cfun(p, b, y)) + _lg(p, x + ia) - _lg(p, x - ia + ib))
    f = num(y / 2 - ib / 2, -y / 2 - ib / 2) + den(y / 2 + ib / 2, -y / 2 + ib / 2)
    # rescale so the shifted integrand is O(1) in size
    g = GProduct(p, f, wave=x, log_const=lpre + p.alpha * h * x)
    # the gate would object to the two poles just crossed; the residues
    # below account for them
    shifted = integrate_line(g, h, p.alpha * b / 2, cfg).value * np.exp(-p.alpha * h * x)
    res0 = 1j * math.sqrt(p.a_plus * p.a_minus) / (2 * math.pi)
    lg_ab = _lg(p, ia - ib)
    total = 0j
    for s in (1, -1):
        zp = -s * y / 2 - ib / 2 + ia
        lres = (lg_ab + complex(log_cfun(p, b, -s * y)) + 1j * p.alpha * zp * x + lpre)
        total += 2j * math.pi * (-res0) * np.exp(lres)
    return complex(shifted + total)


def efn_E(p, b, x, y, cfg=DEFAULT_CONFIG, method="auto", rep=1, eps_b=None,
          pole_margin=None):
    """E(b;x,y) = phi(b) R_r(b;x,y) / (c(b;x) c(b;y)).

    method "direct" divides a quadrature value of R_r by the c-functions;
    "shifted" evaluates the contour-shifted form, which keeps full
    relative accuracy when R_r is exponentially small (large Re x, real
    y != 0).  "auto" takes the shifted form for real x >= 1, y > 0.
    """
    b = check_coupling(p, b, eps_b)
    x, y = complex(x), complex(y)
    if method == "auto":
        ok = x.imag == 0 and y.imag == 0 and x.real >= 1 and abs(y.real) > 1e-6
        method = "shifted" if ok else "direct"
    if method == "shifted":
        return _efn_shifted(p, b, x, y, cfg)
    if method != "direct":
        raise ValueError("method must be 'auto', 'direct' or 'shifted'")
    rr = rcal_r(p, b, x, y, rep, cfg, eps_b, pole_margin)
    lc = complex(log_cfun(p, b, x) + log_cfun(p, b, y))
    return complex(phi_b(p, b) * rr * np.exp(-lc))


def rcal_r_asymptotic_form(p, b, x, y, cfg=DEFAULT_CONFIG):
    """R_r(b;x,y) exp(alpha b x/2) computed through the shifted E-form, so
    that it stays accurate for large x."""
    e = efn_E(p, b, x, y, cfg, method="shifted")
    lc = complex(log_cfun(p, b, x) + log_cfun(p, b, y)) + p.alpha * b * x / 2
    return complex(e * np.exp(lc) / phi_b(p, b))


def _pos_sqrt(v, what):
    v = complex(v)
    if v.real <= 0 or abs(v.imag) > 1e-8 * abs(v):
        raise DomainViolation(f"{what} is not positive: {v}")
    return math.sqrt(v.real)


def ffn_F(p, b, x, y, cfg=DEFAULT_CONFIG, rep=1, eps_b=None, pole_margin=None):
    """F(b;x,y) = w(b;x)^(1/2) w(b;y)^(1/2) R_r(b;x,y) for b, x, y > 0."""
    for name, v in (("b", b), ("x", x), ("y", y)):
        v = complex(v)
        if v.imag != 0 or not v.real > 0:
            raise DomainViolation(f"F needs {name} > 0")
    wx = weight_package(p, b, x).w
    wy = weight_package(p, b, y).w
    rr = rcal_r(p, b, x, y, rep, cfg, eps_b, pole_margin)
    return _pos_sqrt(wx, "w(b;x)") * _pos_sqrt(wy, "w(b;y)") * rr


# ---------------------------------------------------- q-Gegenbauer polynomials


def gegenbauer_coeffs(p, b, n):
    """Coefficient arrays (lowest degree first) of P_0, ..., P_n, where
    R(b;x, ib + i m a_-) = P_m(c_+(x))."""
    b = complex(b)
    ib = 1j * b
    polys = [np.array([1.0 + 0j])]
    prev = np.array([0j])
    for m in range(n):
        ym = ib + 1j * m * p.a_minus
        s_lo = complex(s_delta(p, 1, ym - ib))
        s_mid = complex(s_delta(p, 1, ym))
        s_hi = complex(s_delta(p, 1, ym + ib))
        if abs(s_hi) < 1e-14 or abs(s_mid) < 1e-14:
            raise RecurrenceBreakdown(f"vanishing coefficient at step m = {m}")
        cur = polys[-1]
        nxt = np.zeros(m + 2, dtype=complex)
        nxt[1:] += 2 * s_mid * cur
        nxt[:prev.size] -= s_lo * prev
        polys.append(nxt / s_hi)
        prev = cur
    return polys


def gegenbauer_P(p, b, n, x=None, c=None):
    """P_n evaluated at c_+(x), or at c directly when c is given."""
    if n < 0:
        raise ValueError("n must be non-negative")
    coef = gegenbauer_coeffs(p, b, n)[n]
    if c is None:
        c = complex(c_delta(p, 1, complex(x)))
    return complex(np.polynomial.polynomial.polyval(complex(c), coef))


# ------------------------------------------------------- elementary cases


def _check_N(p, N):
    if N < 0 or int(N) != N:
        raise ValueError("N must be a non-negative integer")
    if not (N + 1) * p.a_plus < 2 * p.a:
        raise DomainViolation("need (N+1) a_+ < a_+ + a_-, i.e. N a_+ < a_-")


def kn_coefficients(p, N):
    """Matrix c_kl with K_N(x,y) = exp(i alpha xy/2) e_-(N(x+y)) sum c_kl r^k t^l,
    r = e_-(-2x), t = e_-(-2y)."""
    _check_N(p, N)
    q = p.q_plus
    r = p.a_plus / p.a_minus
    pref = np.prod([2 * math.sin(math.pi * l * r) for l in range(1, N + 1)])
    P = np.polynomial.polynomial
    out = np.zeros((N + 1, N + 1), dtype=complex)
    for j in range(N + 1):
        poly = np.array([1.0 + 0j])
        for k in range(j + 1, N + 1):
            poly = P.polymul(poly, [q ** (-k), -q ** k])      # s_-(y - i k a_+)
        for k in range(N - j + 1, N + 1):
            poly = P.polymul(poly, [q ** k, -q ** (-k)])      # s_-(y + i k a_+)
        den_ = np.prod([math.sin(math.pi * (j - k) * r) for k in range(N + 1) if k != j])
        out[N - j, :poly.size] += pref * poly / (2 ** N * den_)
    return out


def kernel_KN(p, N, x, y):
    """K_N(x,y), evaluated from the coefficient matrix."""
    x, y = ar.carray(x), ar.carray(y)
    c = kn_coefficients(p, N)
    r = e_delta(p, -1, -2 * x)
    t = e_delta(p, -1, -2 * y)
    s = np.polynomial.polynomial.polyval2d(r, t, c)
    return ar.exp(1j * p.alpha * x * y / 2) * e_delta(p, -1, N * (x + y)) * s


def kernel_KN_direct(p, N, x, y):
    """K_N(x,y) summed term by term as a sum over j of products of sines."""
    _check_N(p, N)
    x, y = complex(x), complex(y)
    ap = p.a_plus
    r = ap / p.a_minus
    pref = np.prod([2 * math.sin(math.pi * l * r) for l in range(1, N + 1)])
    tot = 0j
    for j in range(N + 1):
        t = complex(e_delta(p, -1, (2 * j - N) * x))
        for k in range(j + 1, N + 1):
            t *= complex(s_delta(p, -1, y - 1j * k * ap))
        for k in range(N - j + 1, N + 1):
            t *= complex(s_delta(p, -1, y + 1j * k * ap))
        t /= np.prod([math.sin(math.pi * (j - k) * r) for k in range(N + 1) if k != j])
        tot += t
    return complex(np.exp(1j * p.alpha * x * y / 2) * pref * tot)


def pn_product(p, N, z):
    z = complex(z)
    return complex(np.prod([2 * s_delta(p, -1, z + 1j * j * p.a_plus) for j in range(-N, N + 1)]))


def elementary_RN(p, N, x, y):
    """R_N(x,y) = R_r((N+1) a_+; x, y) in closed form."""
    _check_N(p, N)
    x, y = complex(x), complex(y)
    if N == 0:
        d = 2 * s_delta(p, -1, x) * s_delta(p, -1, y)
        if abs(d) < 1e-300:
            raise DivisionByZero("s_-(x) s_-(y) vanishes")
        return complex(np.sin(math.pi * x * y / (p.a_plus * p.a_minus)) / d)
    d = pn_product(p, N, x) * pn_product(p, N, y)
    if abs(d) < 1e-300:
        raise DivisionByZero("P_N(x) P_N(y) vanishes")
    k1 = complex(kernel_KN(p, N, x, y))
    k2 = complex(kernel_KN(p, N, x, -y))
    return (-1j) ** (N + 1) * (k1 - k2) / d


def gbnm_sides(p, N, M, v):
    """Both sides of the G-ratio identity at b = (N+1)a_+ - M a_-."""
    v = complex(v)
    ap, am = p.a_plus, p.a_minus
    b = (N + 1) * ap - M * am
    lhs = complex(np.exp(_lg(p, v - 0.5j * b) - _lg(p, v + 0.5j * b)))
    nu = np.prod([2 * complex(c_delta(p, 1, v + 0.5j * ((N + 1) * ap + (M + 1 - 2 * k) * am)))
                  for k in range(1, M + 1)])
    de = np.prod([2 * complex(c_delta(p, -1, v + 0.5j * (M * am + (N - 2 * j) * ap)))
                  for j in range(N + 1)])
    return lhs, complex(nu / de)
