import pytest

from hyperconical import registry
from hyperconical.quad import DEFAULT_CONFIG


@pytest.mark.parametrize("ident", sorted(registry.REGISTRY))
def test_every_identity_has_points_and_doc(ident):
    entry = registry.REGISTRY[ident]
    pts = entry.points()
    assert pts and all(isinstance(p, dict) for p in pts)
    assert entry.doc
    assert entry.points() == pts  # grids are deterministic


def test_suites_cover_registry():
    s = registry.suites()
    assert sum(len(v) for v in s.values()) == len(registry.REGISTRY)
    with pytest.raises(KeyError):
        registry.suite_identities("nope")


def test_tolerance_override():
    ident = registry.REGISTRY["refl"]
    pt = ident.points()[0]
    assert ident.run(pt, DEFAULT_CONFIG).passed
    assert ident.run(pt, DEFAULT_CONFIG, tol=1e-3).tol >= 1e-3
    # limit checks ignore overrides: their tolerance bounds the limit error
    er0 = registry.REGISTRY["ER0"]
    assert er0.fixed_tol
    assert er0.run(er0.points()[0], DEFAULT_CONFIG, tol=1e-12).tol == er0.tol


def test_scaled_tolerance():
    ident = registry.REGISTRY["Gades"]
    big = max(ident.points(), key=lambda p: abs(p["z"].imag))
    rep = ident.run(big)
    assert rep.tol >= ident.tol and rep.passed
