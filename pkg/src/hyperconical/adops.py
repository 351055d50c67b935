"""Analytic difference operators acting on function handles.

An operator c_+(z) T_step + c_-(z) T_-step acts on f as
c_+(z) f(z - step) + c_-(z) f(z + step).  Function handles take a
complex scalar or array; compositions are built by wrapping.  On top of
that sit the residual checks for the kernel identities, the eigenvalue
equations of C and the parameter shifts of R_r.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _arith as ar
from . import corefn
from .errors import DomainViolation, LatticeHit
from .hypgamma import c_delta, e_delta, lattice_hits, s_delta
from .quad import DEFAULT_CONFIG

PROBE_Y = 0.37


@dataclass(frozen=True)
class AdoSpec:
    coeff_plus: Callable
    coeff_minus: Callable
    step: complex
    variable: str = "x"


@dataclass
class ResidualReport:
    identity_id: str
    params: dict
    lhs: complex
    rhs: complex
    residual: float
    tol: float
    verdict: str
    extra: dict = field(default_factory=dict)

    @classmethod
    def make(cls, identity_id, params, lhs, rhs, tol, **extra):
        lhs, rhs = complex(lhs), complex(rhs)
        r = abs(lhs - rhs)
        return cls(identity_id, dict(params), lhs, rhs, r, tol,
                   "pass" if r < tol else "fail", extra)

    @property
    def passed(self):
        return self.verdict == "pass"


def apply_ado(spec, f, z):
    z = ar.carray(z)
    return spec.coeff_plus(z) * f(z - spec.step) + spec.coeff_minus(z) * f(z + spec.step)


def as_function(spec, f):
    """The function z -> (spec f)(z), for composing operators."""
    return lambda z: apply_ado(spec, f, z)


def compose(f, *specs):
    """specs[0] specs[1] ... specs[-1] applied to f (rightmost acts first)."""
    for spec in reversed(specs):
        f = as_function(spec, f)
    return f


def _s(p, d, z):
    return s_delta(p, d, z)


# ------------------------------------------------------------------ builders


def A_op(p, b, delta, variable="x"):
    """A_delta(b;z) = s(z-ib)/s(z) T_{ia'} + s(z+ib)/s(z) T_{-ia'}, a' = a_{-delta}."""
    ib = 1j * complex(b)
    return AdoSpec(lambda z: _s(p, delta, z - ib) / _s(p, delta, z),
                   lambda z: _s(p, delta, z + ib) / _s(p, delta, z),
                   1j * p.a_delta(-delta), variable)


def V_coeff(p, b, delta, z):
    ib, iap = 1j * complex(b), 1j * p.a_delta(-delta)
    return (_s(p, delta, z + ib) * _s(p, delta, z - ib + iap)
            / (_s(p, delta, z) * _s(p, delta, z + iap)))


def cA_op(p, b, delta, variable="x"):
    """The similarity transform c(b;z)^-1 A_delta(b;z) c(b;z) = T_{ia'} + V T_{-ia'}."""
    return AdoSpec(lambda z: np.ones_like(ar.carray(z)),
                   lambda z: V_coeff(p, b, delta, z),
                   1j * p.a_delta(-delta), variable)


def continued_sqrt(fun, z, z0, n=200):
    """Square root of fun at z, continued along the segment from z0, where
    the principal branch is taken."""
    t = np.linspace(0.0, 1.0, n + 1)
    vals = ar.carray(fun(z0 + t * (complex(z) - z0)))
    if np.any(vals == 0) or not np.all(np.isfinite(vals)):
        raise DomainViolation("square root continuation path meets a zero or pole")
    r = np.sqrt(vals[0])
    for v in vals[1:]:
        cand = np.sqrt(v)
        r = cand if abs(cand - r) <= abs(cand + r) else -cand
    return complex(r)


def _ratio_sqrt(p, delta, z, w):
    """sqrt(s(z+w)/s(z)), continued from Re z far to the right along
    the horizontal line through z."""
    def fun(u):
        return _s(p, delta, u + w) / _s(p, delta, u)

    z = complex(z)
    z0 = complex(max(z.real, 0.0) + 10 * p.a_delta(delta), z.imag)
    return continued_sqrt(fun, z, z0)


def H_op(p, b, delta, variable="x"):
    """w^{1/2} A_delta w^{-1/2}: sum over tau of
    (s(z-tau ib)/s(z))^{1/2} T_{tau ia'} (s(z+tau ib)/s(z))^{1/2}.

    Every square root is the continuation from Re z = +inf (where the
    ratios tend to exp(-/+ i pi b/a_delta)) along a horizontal line, which
    is the positive-for-large-real-z branch of the design notes.
    """
    ib, iap = 1j * complex(b), 1j * p.a_delta(-delta)

    def coeff(tau):
        def c(z):
            z = np.atleast_1d(ar.carray(z))
            out = np.array([_ratio_sqrt(p, delta, u, -tau * ib)
                            * _ratio_sqrt(p, delta, u - tau * iap, tau * ib) for u in z])
            return out
        return c

    return AdoSpec(coeff(1), coeff(-1), iap, variable)


def Su_op(p, delta, variable="x"):
    """Up-shift -i/(2 s(z)) (T_{ia'} - T_{-ia'})."""
    return AdoSpec(lambda z: -0.5j / _s(p, delta, z), lambda z: 0.5j / _s(p, delta, z),
                   1j * p.a_delta(-delta), variable)


def Sd_op(p, b, delta, variable="x"):
    """Down-shift 2i/s(z) [s(z-ib)s(z+ia'-ib) T_{ia'} - s(z+ib)s(z-ia'+ib) T_{-ia'}]."""
    ib, iap = 1j * complex(b), 1j * p.a_delta(-delta)
    return AdoSpec(
        lambda z: 2j * _s(p, delta, z - ib) * _s(p, delta, z + iap - ib) / _s(p, delta, z),
        lambda z: -2j * _s(p, delta, z + ib) * _s(p, delta, z - iap + ib) / _s(p, delta, z),
        iap, variable)


def sSu_op(p, b, delta, variable="x"):
    """Up-shift conjugated by c-functions, in explicit form."""
    ib, iap = 1j * complex(b), 1j * p.a_delta(-delta)
    return AdoSpec(
        lambda z: np.ones_like(ar.carray(z)),
        lambda z: -(_s(p, delta, z - ib) * _s(p, delta, z - ib + iap)
                    / (_s(p, delta, z) * _s(p, delta, z + iap))),
        iap, variable)


def sSd_op(p, b, delta, variable="x"):
    """Down-shift conjugated by c-functions, in explicit form."""
    ib, iap = 1j * complex(b), 1j * p.a_delta(-delta)
    return AdoSpec(
        lambda z: np.ones_like(ar.carray(z)),
        lambda z: -(_s(p, delta, z + ib) * _s(p, delta, z + ib - iap)
                    / (_s(p, delta, z) * _s(p, delta, z + iap))),
        iap, variable)


def probe_function(p, y=PROBE_Y):
    """Default zero-free entire probe exp(i alpha x y/2)."""
    return lambda z: ar.exp(1j * p.alpha * ar.carray(z) * y / 2)


def _scalar(v):
    return complex(np.asarray(v).reshape(-1)[0])


# ----------------------------------------------------------- kernel identities


KERNEL_IDS = ("idd", "id2", "id3")


def _check_kernel_args(p, b, x, v, shifts):
    ib = 1j * complex(b)
    for sx in shifts:
        for s1 in (1, -1):
            for s2 in (1, -1):
                z = (s1 * (x + sx[0]) + s2 * (v + sx[1]) - ib) / 2
                if lattice_hits(p, z, tol=1e-10):
                    raise LatticeHit(f"kernel factor G({complex(z):.6g}) hits the pole/zero lattice")


def kernel_identity_sides(p, ident, b, d, delta, x, v):
    b, d, x, v = complex(b), complex(d), complex(x), complex(v)
    iap = 1j * p.a_delta(-delta)
    ib, id_ = 1j * b, 1j * d

    def K(xx, vv):
        return _scalar(corefn.kernel_K_array(p, b, xx, vv))

    def s(z):
        return complex(s_delta(p, delta, z))

    if ident == "idd":
        _check_kernel_args(p, b, x, v, [(iap * t, 0) for t in (-1, 1)] + [(0, iap * t) for t in (-1, 1)])
        lhs = (s(x - ib + id_) / s(x) * K(x - iap, v) + s(x + ib - id_) / s(x) * K(x + iap, v))
        rhs = (s(v - id_) / s(v) * K(x, v - iap) + s(v + id_) / s(v) * K(x, v + iap))
    elif ident == "id2":
        _check_kernel_args(p, b, x, v, [(2 * iap * t, 0) for t in (-1, 1)] + [(0, 2 * iap * t) for t in (-1, 1)])
        lhs = (s(x - ib) / s(x) * K(x - 2 * iap, v) + s(x + ib) / s(x) * K(x + 2 * iap, v))
        rhs = (s(v - ib) / s(v) * K(x, v - 2 * iap) + s(v + ib) / s(v) * K(x, v + 2 * iap))
    elif ident == "id3":
        _check_kernel_args(p, b, x, v, [(iap * t, 0) for t in (-1, 1)] + [(0, iap * t) for t in (-1, 1)])
        lhs = (s((x - ib) / 2) / s(x / 2) * K(x - iap, v) + s((x + ib) / 2) / s(x / 2) * K(x + iap, v))
        rhs = (s((v - ib) / 2) / s(v / 2) * K(x, v - iap) + s((v + ib) / 2) / s(v / 2) * K(x, v + iap))
    else:
        raise ValueError(f"unknown kernel identity {ident!r}")
    return lhs, rhs


def kernel_identity_residual(ident, p, b, d, delta, x, v, tol=1e-10):
    lhs, rhs = kernel_identity_sides(p, ident, b, d, delta, x, v)
    params = dict(a_plus=p.a_plus, a_minus=p.a_minus, b=b, d=d, delta=delta, x=x, v=v)
    extra = {}
    if ident == "idd" and complex(d) == 0:
        # A_delta(b;x) K = (T^v_{ia'} + T^v_{-ia'}) K
        A = A_op(p, b, delta)
        dv_l = _scalar(apply_ado(A, lambda z: corefn.kernel_K_array(p, b, z, v), complex(x)))
        iap = 1j * p.a_delta(-delta)
        dv_r = _scalar(corefn.kernel_K_array(p, b, x, v - iap) + corefn.kernel_K_array(p, b, x, v + iap))
        extra = dict(dv_residual=max(abs(dv_l - lhs), abs(dv_r - rhs)))
    return ResidualReport.make(ident, params, lhs, rhs, tol, **extra)


# ------------------------------------------------------------ eigen equations


EIGEN_OPS = ("A+x", "A-x", "A+y", "A-y")


def eigen_residual(p, b, x, y, op, cfg=DEFAULT_CONFIG, tol=1e-6, eps_b=None):
    """Residual of A_delta(b;x) C = 2 c_delta(y) C (or its y-counterpart)
    with C from quadrature.  b must lie in (eps_b, a_s/2) and x, y must
    be real, so that the shifted arguments stay in the contour's reach."""
    b = float(corefn.check_coupling(p, b, eps_b))
    if not b < p.a_s / 2:
        raise DomainViolation("eigenvalue checks need b < a_s/2")
    x, y = float(x), float(y)
    delta = 1 if op[1] == "+" else -1
    var = op[2]
    A = A_op(p, b, delta, var)

    def C(u):
        u = np.atleast_1d(ar.carray(u))
        if var == "x":
            return np.array([corefn.conical_C(p, b, w, y, cfg) for w in u])
        return np.array([corefn.conical_C(p, b, x, w, cfg) for w in u])

    z, other = (x, y) if var == "x" else (y, x)
    lhs = _scalar(apply_ado(A, C, z))
    c0 = _scalar(C(z))
    rhs = 2 * complex(c_delta(p, delta, other)) * c0
    params = dict(a_plus=p.a_plus, a_minus=p.a_minus, b=b, x=x, y=y, op=op)
    return ResidualReport.make("Cades", params, lhs, rhs, tol)


# ------------------------------------------------------------ shift relations


SHIFT_IDS = ("ush", "dsh", "SA1", "SA2", "udrel", "ucomm", "dcomm", "cRu", "cRd", "Eu", "Ed")
OPERATOR_SHIFT_IDS = ("ush", "dsh", "SA1", "SA2", "udrel", "ucomm", "dcomm")


def shift_relation_sides(ident, p, b, x, y=None, delta=1, delta2=None, b2=None,
                         probe=None, cfg=DEFAULT_CONFIG):
    b = float(np.real(complex(b)))
    x = complex(x)
    if delta2 is None:
        delta2 = delta
    # the operators built from s_delta and T_{+/-i a_{-delta}} move the
    # coupling by a_{-delta}
    ad = p.a_delta(-delta)
    f = probe if probe is not None else probe_function(p)
    if ident == "ush":
        lhs = compose(f, Su_op(p, delta), A_op(p, b, delta2))(x)
        rhs = compose(f, A_op(p, b + ad, delta2), Su_op(p, delta))(x)
    elif ident == "dsh":
        lhs = compose(f, Sd_op(p, b, delta), A_op(p, b, delta2))(x)
        rhs = compose(f, A_op(p, b - ad, delta2), Sd_op(p, b, delta))(x)
    elif ident in ("SA1", "SA2"):
        A = A_op(p, b, delta)
        if ident == "SA1":
            lhs = compose(f, Su_op(p, delta), Sd_op(p, b, delta))(x)
            k = 4 * math.cos(math.pi * (b - ad) / p.a_delta(delta)) ** 2
        else:
            lhs = compose(f, Sd_op(p, b + ad, delta), Su_op(p, delta))(x)
            k = 4 * math.cos(math.pi * b / p.a_delta(delta)) ** 2
        rhs = compose(f, A, A)(x) - k * f(x)
    elif ident == "udrel":
        lhs = apply_ado(sSu_op(p, 2 * p.a - b, delta), f, x)
        rhs = apply_ado(sSd_op(p, b, delta), f, x)
    elif ident == "ucomm":
        lhs = compose(f, Su_op(p, 1), Su_op(p, -1))(x)
        rhs = compose(f, Su_op(p, -1), Su_op(p, 1))(x)
    elif ident == "dcomm":
        b2 = b if b2 is None else float(b2)
        lhs = compose(f, Sd_op(p, b, 1), Sd_op(p, b2, -1))(x)
        rhs = compose(f, Sd_op(p, b2, -1), Sd_op(p, b, 1))(x)
    elif ident in ("cRu", "cRd"):
        y = complex(y)

        def rr(bb):
            return lambda u: np.array([corefn.rcal_r(p, bb, w, y, "auto", cfg)
                                       for w in np.atleast_1d(ar.carray(u))])

        if ident == "cRu":
            lhs = apply_ado(Su_op(p, delta), rr(b), x)
            rhs = 4 * s_delta(p, delta, y + 1j * b) * s_delta(p, delta, y - 1j * b) * rr(b + ad)(x)
        else:
            lhs = apply_ado(Sd_op(p, b, delta), rr(b), x)
            rhs = rr(b - ad)(x)
    elif ident in ("Eu", "Ed"):
        y = complex(y)

        def ee(bb):
            return lambda u: np.array([corefn.efn_E(p, bb, w, y, cfg, method="direct", rep="auto")
                                       for w in np.atleast_1d(ar.carray(u))])

        if ident == "Eu":
            lhs = apply_ado(sSu_op(p, b, delta), ee(b), x)
            rhs = 2 * e_delta(p, delta, -1j * b) * s_delta(p, delta, y + 1j * b) * ee(b + ad)(x)
        else:
            lhs = apply_ado(sSd_op(p, b, delta), ee(b), x)
            rhs = (2 * e_delta(p, delta, 1j * (b - ad)) * s_delta(p, delta, y - 1j * b + 1j * ad)
                   * ee(b - ad)(x))
    else:
        raise ValueError(f"unknown shift relation {ident!r}")
    return _scalar(lhs), _scalar(rhs)


def shift_relation_residual(ident, p, b, x, y=None, delta=1, tol=None, **kw):
    if tol is None:
        tol = 1e-11 if ident in OPERATOR_SHIFT_IDS else 1e-6
    lhs, rhs = shift_relation_sides(ident, p, b, x, y, delta, **kw)
    params = dict(a_plus=p.a_plus, a_minus=p.a_minus, b=b, x=x, y=y, delta=delta)
    return ResidualReport.make(ident, params, lhs, rhs, tol)


def cA_consistency(p, b, delta, z):
    """Both sides of c^-1 A_delta c = cA_delta applied to f = 1."""
    z = complex(z)
    one = lambda u: np.ones_like(ar.carray(u))
    lhs = _scalar(apply_ado(cA_op(p, b, delta), one, z))
    cf = lambda u: np.array([corefn.cfun(p, b, w) for w in np.atleast_1d(ar.carray(u))])
    rhs = _scalar(apply_ado(A_op(p, b, delta), cf, z)) / corefn.cfun(p, b, z)
    return lhs, rhs
