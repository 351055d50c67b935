"""Registry of the numerical identities checked by `hyperconical verify`.

Each entry knows its default grid of points (deterministic; random grids
come from a seeded generator) and how to turn one point into a
ResidualReport.  Entries are grouped into suites.  Identities between
function values of arbitrary size compare |lhs - rhs| against
tol * max(1, |rhs|); this is marked by scaled=True.  Limit and
asymptotics checks carry a tolerance that bounds the approximation
error of the limit itself rather than the numerics; they are marked
fixed_tol=True and ignore command-line tolerance overrides.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import adops, corefn, hypgamma, nonrel, toda
from .adops import ResidualReport
from .hypgamma import ScaleParams
from .quad import DEFAULT_CONFIG

GOLDEN = (1 + math.sqrt(5)) / 2


@dataclass(frozen=True)
class Identity:
    id: str
    suite: str
    tol: float
    points: Callable
    check: Callable
    doc: str = ""
    scaled: bool = False
    fixed_tol: bool = False

    def run(self, pt, cfg=DEFAULT_CONFIG, tol=None):
        tol = self.tol if tol is None or self.fixed_tol else tol
        rep = self.check(pt, cfg)
        if isinstance(rep, tuple):
            lhs, rhs, extra = (rep + ({},))[:3]
            t = tol * max(1.0, abs(rhs)) if self.scaled else tol
            rep = ResidualReport.make(self.id, _clean(pt), lhs, rhs, t, **extra)
        elif tol != rep.tol:
            rep = ResidualReport.make(self.id, rep.params, rep.lhs, rep.rhs, tol, **rep.extra)
        return rep


REGISTRY = {}


def register(id, suite, tol, points, doc="", scaled=False, fixed_tol=False):
    def deco(fun):
        REGISTRY[id] = Identity(id, suite, tol, points, fun, doc, scaled, fixed_tol)
        return fun
    return deco


def suites():
    out = {}
    for ident in REGISTRY.values():
        out.setdefault(ident.suite, []).append(ident.id)
    return out


def suite_identities(name):
    ids = suites().get(name)
    if ids is None:
        raise KeyError(f"unknown suite {name!r}")
    return [REGISTRY[i] for i in ids]


def _clean(pt):
    return {k: v for k, v in pt.items()}


def _p(pt):
    return ScaleParams(pt["a_plus"], pt["a_minus"])


def _rng(seed):
    return np.random.default_rng(seed)


def _cplx(rng, re, im):
    return complex(rng.uniform(-re, re), rng.uniform(-im, im))


def _probe_report(ident, pt, seq, final_tol):
    """Probe sequences pass when the deviations decrease and the last one
    is below final_tol."""
    devs = [d for _, d in seq]
    dec = all(b < a for a, b in zip(devs, devs[1:]))
    return ResidualReport.make(ident, pt, devs[-1], 0.0, final_tol if dec else 0.0,
                               sequence=[list(r) for r in seq], decreasing=dec)


# ------------------------------------------------------- hyperbolic gamma


def _gamma_points(seed, n=200, im_frac=0.45):
    rng = _rng(seed)
    out = []
    for i in range(n):
        ap, am = rng.uniform(0.5, 2.0, 2)
        a = (ap + am) / 2
        out.append(dict(a_plus=float(ap), a_minus=float(am), z=_cplx(rng, 3.0, im_frac * a),
                        delta=1 if i % 2 == 0 else -1))
    return out


def _G(p, z):
    return complex(hypgamma.G(p, complex(z)))


@register("Gades", "gamma", 1e-9, lambda: _gamma_points(1), scaled=True,
          doc="G(z + i a_d/2) = 2 c_{-d}(z) G(z - i a_d/2), alternating d")
def _gades(pt, cfg):
    p, z = _pt_pz(pt)
    d = pt.get("delta", 1)
    h = 0.5j * p.a_delta(d)
    return _G(p, z + h), complex(2 * hypgamma.c_delta(p, -d, z)) * _G(p, z - h)


def _pt_pz(pt):
    return _p(pt), complex(pt["z"])


@register("refl", "gamma", 1e-10, lambda: _gamma_points(2), scaled=True, doc="G(z) G(-z) = 1")
def _refl(pt, cfg):
    p, z = _pt_pz(pt)
    return _G(p, z) * _G(p, -z), 1.0


@register("modinv", "gamma", 1e-9, lambda: _gamma_points(3), scaled=True,
          doc="G(a-, a+; z) = G(a+, a-; z)")
def _modinv(pt, cfg):
    p, z = _pt_pz(pt)
    return _G(ScaleParams(p.a_minus, p.a_plus), z), _G(p, z)


@register("scale", "gamma", 1e-9, lambda: _gamma_points(4), scaled=True,
          doc="G(l a+, l a-; l z) = G(a+, a-; z) for l in {0.5, 2}")
def _scale(pt, cfg):
    p, z = _pt_pz(pt)
    lam = 0.5 if z.real < 0 else 2.0
    return _G(ScaleParams(lam * p.a_plus, lam * p.a_minus), lam * z), _G(p, z), {"lambda": lam}


@register("Gcon", "gamma", 1e-9, lambda: _gamma_points(5), scaled=True,
          doc="conj G(z) = G(-conj z)")
def _gcon(pt, cfg):
    p, z = _pt_pz(pt)
    return _G(p, z).conjugate(), _G(p, -z.conjugate())


@register("dupl", "gamma", 1e-9, lambda: _gamma_points(6, im_frac=0.2), scaled=True,
          doc="G(2z) = prod of G(z +/- i a+/4 +/- i a-/4)")
def _dupl(pt, cfg):
    p, z = _pt_pz(pt)
    prod = 1.0 + 0j
    for s1, s2 in itertools.product((1, -1), repeat=2):
        prod *= _G(p, z + 0.25j * (s1 * p.a_plus + s2 * p.a_minus))
    return _G(p, 2 * z), prod


@register("G2", "gamma", 1e-9, lambda: _gamma_points(7, im_frac=0.2), scaled=True,
          doc="G(a+, 2a-; 2z) = G(a+, a-; z +/- i a+/4)")
def _g2(pt, cfg):
    p, z = _pt_pz(pt)
    p2 = ScaleParams(p.a_plus, 2 * p.a_minus)
    return _G(p2, 2 * z), _G(p, z + 0.25j * p.a_plus) * _G(p, z - 0.25j * p.a_plus)


@register("Geval", "gamma", 1e-9, lambda: _gamma_points(8),
          doc="G(i a+/2 - i a-/2) = (a+/a-)^{1/2}")
def _geval(pt, cfg):
    p = _p(pt)
    return _G(p, 0.5j * (p.a_plus - p.a_minus)), math.sqrt(p.a_plus / p.a_minus)


@register("Gres", "gamma", 1e-9, lambda: _gamma_points(9),
          doc="residue of G at -ia equals (i/2pi)(a+ a-)^{1/2}")
def _gres(pt, cfg):
    p = _p(pt)
    mv = hypgamma.hyp_gamma(p, -1j * p.a)
    if mv.kind != "pole" or mv.order != 1:
        return float("nan"), 0.0
    return mv.residue, 0.5j / math.pi * math.sqrt(p.a_plus * p.a_minus)


# ------------------------------------------------------- kernel identities


def _prop31_points(seed, n=50):
    rng = _rng(seed)
    out = []
    for i in range(n):
        ap, am = rng.uniform(0.6, 1.6, 2)
        a = (ap + am) / 2
        b = complex(rng.uniform(0.1, 1.9) * a, rng.uniform(-0.3, 0.3))
        d = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.3, 0.3))
        out.append(dict(a_plus=float(ap), a_minus=float(am), b=b, d=d,
                        delta=1 if i % 2 == 0 else -1,
                        x=_cplx(rng, 1.5, 0.4), v=_cplx(rng, 1.5, 0.4)))
    return out


def _kernel_check(ident):
    def check(pt, cfg):
        return adops.kernel_identity_sides(_p(pt), ident, pt["b"], pt.get("d", 0.0),
                                           pt["delta"], pt["x"], pt["v"])
    return check


for _i, _s in (("idd", 11), ("id2", 12), ("id3", 13)):
    register(_i, "prop31", 1e-10, (lambda s=_s: _prop31_points(s)), scaled=True,
             doc=f"kernel identity {_i} for K(b;x,v)")(_kernel_check(_i))


# -------------------------------------------------- Fourier transform of G


def _ffts_points():
    p = dict(a_plus=1.0, a_minus=1.0)
    mus = (-0.3j, 0.2 - 0.1j, -0.4 - 0.5j, 0.1 + 0.0j)
    nus = (0.5j, 0.3 + 0.7j, -0.2 + 0.4j, 0.1 + 0.6j)
    ys = (0.0, 0.3, -0.7, 0.2 + 0.05j)
    out = []
    for (mu, nu, y) in itertools.product(mus, nus, ys):
        out.append(dict(p, mu=mu, nu=nu, y=y))
    return out


@register("FFt", "propC1", 1e-7, _ffts_points,
          doc="closed form versus quadrature for the Fourier transform of G(x-nu)/G(x-mu)")
def _fft(pt, cfg):
    p = _p(pt)
    q = hypgamma.fourier_F(p, pt["mu"], pt["nu"], pt["y"], "quadrature", cfg)
    c = hypgamma.fourier_F(p, pt["mu"], pt["nu"], pt["y"], "closed", cfg)
    return q, c


def _fft_elem_points():
    out = []
    for ap, am in ((1.0, 1.0), (1.0, 1.4), (0.7, 1.2)):
        for y in (0.0, 0.3, 0.8):
            out.append(dict(a_plus=ap, a_minus=am, y=y))
    return out


@register("FFt-elem", "propC1", 1e-7, _fft_elem_points,
          doc="kappa = i a-/2: 2 x closed form equals the elementary integral a+/c-(y) of 1/c+")
def _fft_elem(pt, cfg):
    p = _p(pt)
    h = 0.5j * p.a_minus
    return 2 * hypgamma.fourier_F(p, -h, h, pt["y"], "closed"), p.a_plus / complex(hypgamma.c_delta(p, -1, pt["y"]))


@register("FFt-elemq", "propC1", 1e-7, _fft_elem_points,
          doc="kappa = i a-/2: 2 x quadrature equals a+/c-(y)")
def _fft_elemq(pt, cfg):
    p = _p(pt)
    h = 0.5j * p.a_minus
    q = hypgamma.fourier_F(p, -h, h, pt["y"], "quadrature", cfg)
    return 2 * q, p.a_plus / complex(hypgamma.c_delta(p, -1, pt["y"]))


def _corc2_points():
    return [dict(a_plus=1.0, a_minus=1.0, y=0.5, s=0.3), dict(a_plus=1.0, a_minus=1.0, y=0.0, s=0.25),
            dict(a_plus=1.0, a_minus=2.0, y=1.0, s=0.5), dict(a_plus=1.3, a_minus=0.8, y=-0.4, s=0.2)]


@register("corC2", "propC1", 1e-7, _corc2_points,
          doc="G_R Fourier transform to G_L on a shifted line")
def _corc2(pt, cfg):
    return hypgamma.gauss_pair_transform(_p(pt), pt["y"], pt["s"], cfg)


# ------------------------------------------------------- R representations


def _reps_points():
    out = []
    for ap, am in ((1.0, 1.0), (1.0, GOLDEN)):
        a = (ap + am) / 2
        for bf, x, y in itertools.product((0.5, 1.0, 1.5), (0.3, 0.8, 1.5), (0.4, 1.0, 2.0)):
            out.append(dict(a_plus=ap, a_minus=am, b=bf * a, x=x, y=y))
    return out


@register("Rreps", "minimal-reps", 1e-7, _reps_points,
          doc="the five minimal representations of R agree pairwise (worst pair reported)")
def _rreps(pt, cfg):
    p = _p(pt)
    vals = [corefn.rcal(p, pt["b"], pt["x"], pt["y"], rep=r, cfg=cfg) for r in corefn.REPS]
    i, j = max(itertools.combinations(range(len(vals)), 2), key=lambda ij: abs(vals[ij[0]] - vals[ij[1]]))
    return vals[i], vals[j], {"reps": [corefn.REPS[i], corefn.REPS[j]]}


def _norm_points():
    return [dict(a_plus=1.0, a_minus=1.0, b=0.6, x=0.8), dict(a_plus=1.0, a_minus=1.3, b=0.9, x=0.4),
            dict(a_plus=0.8, a_minus=1.5, b=0.5, x=1.1)]


@register("cRnorm", "minimal-reps", 1e-8, _norm_points, doc="R(b; x, ib) = 1")
def _crnorm(pt, cfg):
    return corefn.rcal(_p(pt), pt["b"], pt["x"], 1j * pt["b"], rep=1, cfg=cfg), 1.0


def _er0_points():
    return [dict(a_plus=1.0, a_minus=1.0, b=1e-4, x=0.5, y=0.7)]


@register("ER0", "minimal-reps", 1e-3, _er0_points, fixed_tol=True,
          doc="R_r(b; x, y) -> 2 cos(alpha x y/2) as b -> 0")
def _er0(pt, cfg):
    p = _p(pt)
    b = pt["b"]
    v = corefn.rcal_r(p, b, pt["x"], pt["y"], 1, cfg, eps_b=b / 2)
    return v, 2 * math.cos(p.alpha * pt["x"] * pt["y"] / 2)


# ------------------------------------------------------- eigen equations


def _cades_points(n=20):
    rng = _rng(21)
    out = []
    for i in range(n):
        ap, am = ((1.0, 1.0), (1.0, 1.3), (0.8, 1.1))[i % 3]
        a_s = min(ap, am)
        b = float(rng.uniform(0.1, 0.45) * a_s)
        out.append(dict(a_plus=ap, a_minus=am, b=b, x=float(rng.uniform(0.2, 1.4)),
                        y=float(rng.uniform(0.2, 1.4)), op=adops.EIGEN_OPS[i % 4]))
    return out


@register("Cades", "cades", 1e-6, _cades_points,
          doc="A_d(b;x) and A_d(b;y) have eigenvalues 2c_d(y), 2c_d(x) on C(b;x,y)")
def _cades(pt, cfg):
    return adops.eigen_residual(_p(pt), pt["b"], pt["x"], pt["y"], pt["op"], cfg)


# ------------------------------------------------------- shift relations


def _op_shift_points():
    out = []
    for ap, am in ((1.0, 1.0), (1.0, 1.2), (0.7, 1.3)):
        for delta in (1, -1):
            out.append(dict(a_plus=ap, a_minus=am, b=0.6, x=0.45, delta=delta))
            out.append(dict(a_plus=ap, a_minus=am, b=0.8, x=-0.3 + 0.1j, delta=delta))
    return out


def _shift_check(ident):
    def check(pt, cfg):
        kw = {"b2": 0.7} if ident == "dcomm" else {}
        return adops.shift_relation_sides(ident, _p(pt), pt["b"], pt["x"], pt.get("y"),
                                          pt["delta"], cfg=cfg, **kw)
    return check


for _i in adops.OPERATOR_SHIFT_IDS:
    register(_i, "shifts", 1e-11, _op_shift_points, doc=f"operator relation {_i} on a probe function",
             scaled=True)(_shift_check(_i))


def _fn_shift_points(ident):
    pts = []
    for ap, am in ((0.4, 1.0), (1.0, 1.3)):
        p = ScaleParams(ap, am)
        lo, hi = corefn.EPS_B * p.a, 2 * p.a - corefn.EPS_B * p.a
        for delta, b in ((1, 1.1), (-1, 1.1), (1, 0.15), (-1, 0.15), (1, 0.5), (-1, 0.5)):
            sh = p.a_delta(-delta)
            if not lo <= b <= hi:
                continue
            nb = b + sh if ident in ("cRu", "Eu") else b - sh
            if lo <= nb <= hi:
                pts.append(dict(a_plus=ap, a_minus=am, b=b, x=0.5, y=0.7, delta=delta))
    return pts


for _i in ("cRu", "cRd", "Eu", "Ed"):
    register(_i, "shifts", 1e-6, (lambda i=_i: _fn_shift_points(i)),
             doc=f"parameter shift {_i} acting on the function itself")(_shift_check(_i))


# ------------------------------------------------------- elementary cases


def _rn_points():
    out = []
    for N, pairs in ((0, ((0.4, 1.0), (1.0, 2.0), (0.7, 1.3))), (1, ((0.4, 1.0), (1.0, 3.0)))):
        for (ap, am) in pairs:
            for x, y in ((0.5, 0.9), (0.3, 0.7)):
                out.append(dict(a_plus=ap, a_minus=am, N=N, x=x, y=y))
    return out


@register("RN", "elementary", 1e-7, _rn_points,
          doc="closed-form R_N versus quadrature R_r at b = (N+1) a+")
def _rn(pt, cfg):
    p = _p(pt)
    N = int(pt["N"])
    q = corefn.rcal_r(p, (N + 1) * p.a_plus, pt["x"], pt["y"], "auto", cfg)
    return corefn.elementary_RN(p, N, pt["x"], pt["y"]), q


def _csym_points():
    out = []
    for N in (1, 2, 3, 4):
        out.append(dict(a_plus=1.0, a_minus=N + 0.7, N=N))
    return out


@register("csym", "elementary", 1e-10, _csym_points,
          doc="K_N coefficient symmetries c_kl = c_lk = c_{N-k,N-l} (worst deviation)", scaled=True)
def _csym(pt, cfg):
    c = corefn.kn_coefficients(_p(pt), int(pt["N"]))
    d1 = np.abs(c - c.T)
    d2 = np.abs(c - c[::-1, ::-1])
    k = np.unravel_index(np.argmax(np.maximum(d1, d2)), c.shape)
    other = c.T[k] if d1[k] >= d2[k] else c[::-1, ::-1][k]
    return complex(c[k]), complex(other)


# ------------------------------------------------------- nonrelativistic


def _nr_grid():
    return [dict(lam=l, r=r, k=k) for l, r, k in itertools.product((0.8, 1.3), (0.5, 1.2), (0.7, 1.6))]


def _fq_points():
    return [dict(a=0.3 + 0.2j, b=0.3 - 0.2j, w=-0.4), dict(a=0.4 + 0.7j, b=0.4 - 0.7j, w=-1.5),
            dict(a=0.65 + 0.55j, b=0.65 - 0.55j, w=-0.1)]


@register("Fq", "nonrel", 1e-10, _fq_points, doc="quadratic transformation of 2F1")
def _fq(pt, cfg):
    return nonrel.quadratic_transform_sides(pt["a"], pt["b"], pt["w"])


@register("psi12", "nonrel", 1e-10, _nr_grid, doc="the two 2F1 forms of psi_nr agree")
def _psi12(pt, cfg):
    n = nonrel.NrParams(pt["lam"], pt["r"], pt["k"])
    return nonrel.psi_nr(n, "psi1"), nonrel.psi_nr(n, "psi2")


def _nrreps_points():
    return [dict(pt, rep=rep) for pt in _nr_grid() for rep in nonrel.NR_REPS]


@register("nrreps", "nonrel", 1e-6, _nrreps_points, doc="limit integral representations equal psi_nr")
def _nrreps(pt, cfg):
    n = nonrel.NrParams(pt["lam"], pt["r"], pt["k"])
    return nonrel.psi_nr_rep(n, pt["rep"], cfg), nonrel.psi_nr(n)


def _enr_points():
    return [dict(r=0.6, k=1.4), dict(r=2.0, k=0.3), dict(r=0.1, k=3.0)]


@register("Enr1", "nonrel", 1e-8, _enr_points, doc="E_nr(1; r, k) = 2i sin(kr)")
def _enr1(pt, cfg):
    return nonrel.e_nr(nonrel.NrParams(1.0, pt["r"], pt["k"])), 2j * math.sin(pt["k"] * pt["r"])


def _nrlimit_points():
    return [dict(mu=2.0, hbar=1.0, g=0.8, x=0.7, p=1.3, betas=[0.3, 0.1, 0.03])]


@register("nrlimit", "nonrel", 1e-2, _nrlimit_points, fixed_tol=True,
          doc="R at (2pi/mu, hbar beta, g beta; x, beta p/mu) approaches psi_nr, decreasing deviations")
def _nrlimit(pt, cfg):
    base = nonrel.NrParams.physical(pt["mu"], pt["hbar"], pt["g"], pt["x"], pt["p"])
    return _probe_report("nrlimit", pt, nonrel.nr_limit_probe(base, pt["betas"], cfg), 1e-2)


# ------------------------------------------------------------------ Toda


def _toda_grid():
    out = []
    for (ap, am), eta, x, y in itertools.product(((1.0, 1.0), (1.0, 1.6)), (0.0, 0.5), (-1.0, 0.3, 2.0),
                                                   (0.5, 1.2)):
        out.append(dict(a_plus=ap, a_minus=am, eta=eta, x=x, y=y))
    return out


def _tp(pt):
    return toda.TodaParams(_p(pt), pt.get("eta", 0.0))


@register("Treps", "toda", 1e-7, _toda_grid, doc="the four representations of F^T agree (worst pair)")
def _treps(pt, cfg):
    t = _tp(pt)
    vals = [toda.toda_F(t, pt["x"], pt["y"], r, cfg) for r in toda.TODA_REPS]
    i, j = max(itertools.combinations(range(4), 2), key=lambda ij: abs(vals[ij[0]] - vals[ij[1]]))
    return vals[i], vals[j], {"reps": [i + 1, j + 1]}


def _treal_points():
    return [dict(a_plus=1.0, a_minus=1.0, eta=0.4, x=0.3, y=0.8)] + _toda_grid()[::3]


@register("Treal", "toda", 1e-9, _treal_points, doc="F^T is real for real x and y > 0 (Im F^T vs 0)")
def _treal(pt, cfg):
    return toda.toda_F(_tp(pt), pt["x"], pt["y"], 1, cfg).imag, 0.0


@register("xade", "toda", 1e-6, lambda: [dict(a_plus=1.0, a_minus=1.0, delta=1, x=0.2 - 3.5j, y=0.8),
                                         dict(a_plus=1.0, a_minus=1.3, delta=-1, x=-0.3 - 4.2j, y=0.6)],
          scaled=True, doc="A^T_d(0;x) M(x,y) = 2 c_d(y) M(x,y)")
def _xade(pt, cfg):
    r = toda.xade_residual(_p(pt), pt["delta"], pt["x"], pt["y"], cfg)
    return r.lhs, r.rhs


@register("ATM", "toda", 1e-6, lambda: [dict(a_plus=1.0, a_minus=1.0, delta=-1, x=0.5, y=0.3),
                                        dict(a_plus=1.0, a_minus=1.3, delta=1, x=-0.4, y=0.2 + 0.3j)],
          scaled=True, doc="dual A^T_d(0;y) M^(x,y) = e_d(x) M^(x,y)")
def _atm(pt, cfg):
    r = toda.atm_residual(_p(pt), pt["delta"], pt["x"], pt["y"], cfg)
    return r.lhs, r.rhs


@register("Kid1", "toda", 1e-10, lambda: [dict(a_plus=1.0, a_minus=1.0, delta=1, x=0.4 - 3.2j, z=0.6),
                                          dict(a_plus=1.0, a_minus=1.4, delta=-1, x=0.2 + 0.3j, z=-0.3 + 0.2j)],
          scaled=True, doc="Toda kernel identity in x")
def _kid1(pt, cfg):
    return toda.toda_kernel_sides("Kid1", _p(pt), pt["delta"], pt["x"], pt["z"])


@register("Kdid", "toda", 1e-10, lambda: [dict(a_plus=1.0, a_minus=1.4, delta=-1, y=0.5, z=0.3 + 2.1j),
                                          dict(a_plus=1.0, a_minus=1.0, delta=1, y=0.9 - 0.2j, z=-0.4 + 1.5j)],
          scaled=True, doc="dual Toda kernel identity in y")
def _kdid(pt, cfg):
    return toda.toda_kernel_sides("Kdid", _p(pt), pt["delta"], pt["y"], pt["z"])


def _hcross_points(n=20):
    rng = _rng(31)
    out = []
    for i in range(n):
        out.append(dict(a_plus=1.0, a_minus=(1.0, 1.3)[i % 2], x=_cplx(rng, 1.5, 0.6),
                        y=_cplx(rng, 1.5, 0.4)))
    return out


@register("Hcross", "toda", 1e-6, _hcross_points, scaled=True,
          doc="the four representations of H(x,y) agree at complex points (worst pair)")
def _hcross(pt, cfg):
    p = _p(pt)
    vals = [toda.toda_H(pt["x"], pt["y"], r, p, cfg) for r in toda.TODA_REPS]
    i, j = max(itertools.combinations(range(4), 2), key=lambda ij: abs(vals[ij[0]] - vals[ij[1]]))
    return vals[i], vals[j], {"reps": [i + 1, j + 1]}


@register("Hrecon", "toda", 1e-7, lambda: [dict(a_plus=1.0, a_minus=1.0, eta=0.3, x=0.6, y=0.9),
                                           dict(a_plus=1.0, a_minus=1.6, eta=-0.2, x=1.1, y=0.4)],
          doc="H(x - eta, y) from its integral equals the weight-stripped F^T")
def _hrecon(pt, cfg):
    t = _tp(pt)
    return toda.toda_H(pt["x"] - pt["eta"], pt["y"], 1, t.scale, cfg), toda.toda_H_from_F(t, pt["x"], pt["y"], 1, cfg)


@register("Hlattice", "toda", 1e-7, lambda: [dict(a_plus=1.0, a_minus=1.2, x=0.4, k=1, delta=1),
                                             dict(a_plus=1.0, a_minus=1.2, x=0.4, k=1, delta=-1),
                                             dict(a_plus=1.0, a_minus=1.0, x=-0.3, k=0, delta=1)],
          scaled=True, doc="H(x, i k a_d + i a_{-d}) = H(x, i k a_d - i a_{-d})")
def _hlattice(pt, cfg):
    return toda.H_lattice_sides(_p(pt), pt["x"], pt["k"], pt["delta"], cfg)


@register("todalimit", "toda", 1e-2, lambda: [dict(a_plus=1.0, a_minus=1.0, eta=0.2, x=0.4, y=0.7,
                                                   Lambdas=[1.0, 2.0, 3.0])], fixed_tol=True,
          doc="F(a - i eta - i L; x + L, y) approaches F^T(eta; x, y), decreasing deviations")
def _todalimit(pt, cfg):
    seq = toda.toda_limit_probe(_tp(pt), pt["Lambdas"], pt["x"], pt["y"], cfg)
    return _probe_report("todalimit", pt, seq, 1e-2)


# ------------------------------------------------- nonrelativistic Toda


@register("FnrT12", "nr-toda", 1e-8, lambda: [dict(lam=1.0, r=0.5, k=1.2), dict(lam=0.6, r=-0.4, k=0.5),
                                              dict(lam=2.0, r=1.5, k=2.5)],
          doc="cosine-transform and Gamma-contour forms of F_nr^T agree")
def _fnrt12(pt, cfg):
    n = toda.NrTodaParams(pt["lam"], pt["r"], pt["k"])
    return toda.nr_toda_F(n, 1, cfg), toda.nr_toda_F(n, 2, cfg)


@register("K0", "nr-toda", 1e-8, lambda: [dict(k=1e-6, x=2.0)],
          doc="k -> 0: the cosine-transform integral equals the Gamma-contour value K_0(2)")
def _k0(pt, cfg):
    v = toda.bessel_K_imag(pt["k"], pt["x"], cfg)
    nu = -math.log(pt["x"] / 2)
    return v, (toda._nr_rep2_integral(pt["k"], nu, cfg) / (8 * math.pi)).real


@register("nrTasym", "nr-toda", 1e-3, lambda: [dict(lam=1.0, r=10.0, k=1.2), dict(lam=0.7, r=10.0, k=0.8)],
          fixed_tol=True, doc="large-r asymptotics of F_nr^T with u_nr^{1/2}")
def _nrtasym(pt, cfg):
    n = toda.NrTodaParams(pt["lam"], pt["r"], pt["k"])
    return toda.nr_toda_F(n, 1, cfg), toda.nr_toda_asymptotic(n)


@register("nrTkernel", "nr-toda", 1e-10, lambda: [dict(k=1.3, t=0.4 + 0.2j), dict(k=0.6, t=-1.1 + 0.5j)],
          scaled=True, doc="i/k (K(k+i,t) - K(k-i,t)) = K(k, t-i) for K = Gamma(-it/2 +/- ik/2)")
def _nrtkernel(pt, cfg):
    return toda.nr_kernel_sides(pt["k"], pt["t"])


# --------------------------------------------------- small a_- probe


@register("appB", "appendix-b", 0.05, lambda: [dict(a_plus=1.0, lam=1.0, z=0.2, a_minus=1e-3)], fixed_tol=True,
          doc="g_R at z + s(a+,a-): ratio to the small-a- prediction (compared with 1)")
def _appb(pt, cfg):
    (_, m, pr), = hypgamma.appendix_b_probe(pt["a_plus"], pt["lam"], pt["z"], [pt["a_minus"]])
    return m / pr, 1.0


@register("appB2", "appendix-b", 1e-3, lambda: [dict(a_plus=1.0, lam=2.0, z=0.2, a_minus=1e-3)], fixed_tol=True,
          doc="g_R at z + 2 s(a+,a-) vanishes as a- -> 0 (compared with 0)")
def _appb2(pt, cfg):
    (_, m, _), = hypgamma.appendix_b_probe(pt["a_plus"], pt["lam"], pt["z"], [pt["a_minus"]])
    return m, 0.0
