"""Arithmetic layer.

All numerical modules take their elementary functions and array
constructors from here, so that switching the working precision means
replacing this file rather than touching the algorithms.
"""

import numpy as np

CDTYPE = np.complex128
RDTYPE = np.float64
EPS = float(np.finfo(RDTYPE).eps)

pi = np.pi
exp = np.exp
log = np.log
log1p = np.log1p
sqrt = np.sqrt
sin = np.sin
cos = np.cos
sinh = np.sinh
cosh = np.cosh
tanh = np.tanh
errstate = np.errstate


def carray(z):
    return np.asarray(z, dtype=CDTYPE)


def rarray(x):
    return np.asarray(x, dtype=RDTYPE)


def log_2cosh(u):
    """log(2 cosh u) without overflow; agrees with the principal log for |Im u| < pi/2."""
    u = carray(u)
    flip = u.real < 0
    v = np.where(flip, -u, u)
    return v + np.log1p(np.exp(-2.0 * v))
