"""Integrands built from hyperbolic gamma factors.

A GProduct is exp(log_const + i alpha k z + i alpha q z^2) times a product
of factors F(sigma z + c)^(+/-1), where F is G, G_R or G_L.  Since every
factor has its poles and zeros on vertical half-lines, the product knows
where its pole sequences sit, and the asymptotic form of G gives the
exponential growth rate of the integrand along either tail of a
horizontal line.  That is enough to decide whether a contour is
admissible and to pick one when the real line is not.
"""

from dataclasses import dataclass

import numpy as np

from . import _arith as ar
from .errors import PolePinch, TailDivergence
from .hypgamma import log_G, log_G_left, log_G_right
from .quad import DEFAULT_CONFIG, BentContour, integrate_contour, integrate_line

_LOGF = {"G": log_G, "R": log_G_right, "L": log_G_left}
# log|F(w)| ~ alpha Im(w) (|Re w| + kappa Re w) / 2 for |Re w| -> inf
_KAPPA = {"G": 0, "R": -1, "L": 1}


@dataclass(frozen=True)
class Factor:
    shift: complex
    power: int = 1
    sigma: int = 1
    kind: str = "G"


@dataclass(frozen=True)
class PoleLine:
    """A pole sequence on the vertical line Re z = re, starting at Im z = edge
    and running down (direction -1) or up (direction +1)."""

    re: float
    edge: float
    direction: int


def num(*shifts, sigma=1, kind="G"):
    return [Factor(complex(c), 1, sigma, kind) for c in shifts]


def den(*shifts, sigma=1, kind="G"):
    return [Factor(complex(c), -1, sigma, kind) for c in shifts]


class GProduct:
    def __init__(self, p, factors, wave=0.0, quad=0.0, log_const=0.0):
        self.p = p
        self.factors = list(factors)
        self.wave = complex(wave)
        self.quad = float(quad)
        self.log_const = complex(log_const)

    def log_value(self, z):
        z = ar.carray(z)
        al = self.p.alpha
        out = self.log_const + 1j * al * self.wave * z
        if self.quad:
            out = out + 1j * al * self.quad * z * z
        for f in self.factors:
            out = out + f.power * _LOGF[f.kind](self.p, f.sigma * z + f.shift)
        return out

    def __call__(self, z):
        with ar.errstate(over="ignore", invalid="ignore"):
            return ar.exp(self.log_value(z))

    def pole_lines(self):
        a = self.p.a
        lines = []
        for f in self.factors:
            c = f.shift
            re = -f.sigma * c.real
            if f.power > 0:
                # poles of F(sigma z + c): sigma z + c = -ia - z_kl
                if f.sigma > 0:
                    lines.append(PoleLine(re, -c.imag - a, -1))
                else:
                    lines.append(PoleLine(re, c.imag + a, 1))
            else:
                # zeros of F: sigma z + c = ia + z_kl
                if f.sigma > 0:
                    lines.append(PoleLine(re, a - c.imag, 1))
                else:
                    lines.append(PoleLine(re, c.imag - a, -1))
        return lines

    def growth(self, h, side):
        """Exponential growth rate of |integrand| per unit |Re z| along the
        line Im z = h, as Re z -> side*inf (side = +1 or -1)."""
        al = self.p.alpha
        g = -al * side * self.wave.imag - 2 * al * self.quad * h * side
        for f in self.factors:
            im_w = f.sigma * h + f.shift.imag
            g += f.power * al * im_w * (1 + _KAPPA[f.kind] * f.sigma * side) / 2
        return g

    def _slope(self, side):
        return self.growth(1.0, side) - self.growth(0.0, side)

    def check_line(self, h, margin, min_decay):
        for ln in self.pole_lines():
            _check_pole(ln, h, margin)
        for side in (-1, 1):
            g = self.growth(h, side)
            if not g < -min_decay:
                raise TailDivergence(
                    f"integrand grows like exp({g:.4g}|t|) on the "
                    f"{'right' if side > 0 else 'left'} tail of Im z = {h:.4g}")

    def integrate_line(self, h=0.0, cfg=DEFAULT_CONFIG, margin=0.0, min_decay=0.0):
        self.check_line(h, margin, min_decay)
        rate = min(-self.growth(h, -1), -self.growth(h, 1))
        return integrate_line(self, h, 0.5 * rate, cfg, center=self._center())

    def _center(self):
        lines = self.pole_lines()
        if not lines:
            return 0.0
        res = [ln.re for ln in lines]
        return 0.5 * (min(res) + max(res))

    def choose_contour(self, margin, min_decay, preferred=0.0, decay_target=None):
        """A BentContour separating all pole sequences, with tails tilted as
        needed to make both ends decay at least at decay_target."""
        lines = self.pole_lines()
        lo = max([ln.edge for ln in lines if ln.direction < 0], default=-np.inf)
        hi = min([ln.edge for ln in lines if ln.direction > 0], default=np.inf)
        if not lo + margin < hi - margin:
            raise PolePinch(f"pole sequences pinch the contour: top {lo:.4g}, bottom {hi:.4g}")
        pad = min(0.25 * (hi - lo), self.p.a_s / 2)
        mid = float(np.clip(preferred, lo + pad, hi - pad))
        if decay_target is None:
            decay_target = max(2 * min_decay, 0.25 * self.p.alpha * self.p.a_s)
        tails = []
        for side in (-1, 1):
            g = self.growth(mid, side)
            if g < -decay_target:
                tails.append(mid)
                continue
            s = self._slope(side)
            if s == 0:
                raise TailDivergence("tail growth does not depend on the contour height")
            tails.append(mid + (-decay_target - g) / s)
        if lines:
            res = [ln.re for ln in lines]
            t1, t2 = min(res) - 1.0, max(res) + 1.0
        else:
            t1 = t2 = 0.0
        contour = BentContour(tails[0], mid, tails[1], t1, t2, 0.25)
        for ln in lines:
            h = float(contour.height(ln.re))
            _check_pole(ln, h, margin)
        for side, ht in zip((-1, 1), tails):
            if not self.growth(ht, side) < -min_decay:
                raise TailDivergence("no decaying tail height found")
        return contour

    def integrate_bent(self, cfg=DEFAULT_CONFIG, margin=0.0, min_decay=0.0,
                       preferred=0.0, contour=None):
        if contour is None:
            contour = self.choose_contour(margin, min_decay, preferred)
        rate = min(-self.growth(contour.left, -1), -self.growth(contour.right, 1))
        return integrate_contour(self, contour, 0.5 * rate, cfg)

    def integrate(self, cfg=DEFAULT_CONFIG, margin=0.0, min_decay=0.0):
        """Real-line integral when the real line is admissible, otherwise a
        bent contour."""
        try:
            return self.integrate_line(0.0, cfg, margin, min_decay)
        except (PolePinch, TailDivergence):
            return self.integrate_bent(cfg, margin, min_decay)


def _check_pole(ln, h, margin):
    if ln.direction < 0 and not h > ln.edge + margin:
        raise PolePinch(f"pole sequence at Re z = {ln.re:.4g} reaches Im z = {ln.edge:.4g}, "
                        f"contour at {h:.4g}")
    if ln.direction > 0 and not h < ln.edge - margin:
        raise PolePinch(f"pole sequence at Re z = {ln.re:.4g} starts at Im z = {ln.edge:.4g}, "
                        f"contour at {h:.4g}")
