"""Schwartz-Bruhat functions: Fourier, Plancherel, canonical forms."""

import random
from fractions import Fraction

from gjzeta.padic import PAdicContext, PAdicMatrix
from gjzeta.cli import random_schwartz
from gjzeta.schwartz import SchwartzBruhatFn
from gjzeta.scalars import scalar_is_zero


def test_unit_ball_is_self_dual():
    for n, p in [(1, 2), (2, 3)]:
        phi = SchwartzBruhatFn.unit_ball(n, PAdicContext(p))
        assert phi.fourier().fn_equal(phi)


def test_scaled_ball_transform_volume():
    # F(1_{pM}) = p^(-n^2) 1_{p^-1 M}
    n, p = 2, 2
    ctx = PAdicContext(p)
    phi = SchwartzBruhatFn.scaled_ball(n, ctx, 1).fourier()
    target = SchwartzBruhatFn.scaled_ball(n, ctx, -1).scale(Fraction(1, p ** (n * n)))
    assert phi.fn_equal(target)


def test_double_transform_is_reflection():
    rng = random.Random(11)
    for n, p in [(1, 2), (1, 3), (2, 2), (2, 3)]:
        ctx = PAdicContext(p)
        for _ in range(5):
            f = random_schwartz(n, ctx, rng)
            assert f.fourier().fourier().fn_equal(f.reflect())


def test_plancherel():
    rng = random.Random(12)
    for n, p in [(1, 2), (2, 3)]:
        ctx = PAdicContext(p)
        for _ in range(5):
            f = random_schwartz(n, ctx, rng)
            g = random_schwartz(n, ctx, rng)
            assert scalar_is_zero(f.inner_product(g)
                                  - f.fourier().inner_product(g.fourier()))


def test_norm_detects_zero_function():
    ctx = PAdicContext(2)
    # 1_{M} written as the sum of its two level-1 scalar-shift slices plus
    # the rest, minus itself, is the zero function despite nonzero terms
    f = SchwartzBruhatFn.unit_ball(1, ctx)
    halves = SchwartzBruhatFn.indicator(1, ctx, PAdicMatrix([[0]]), 1) \
        + SchwartzBruhatFn.indicator(1, ctx, PAdicMatrix([[1]]), 1)
    assert (f - halves).is_zero_fn()
    assert not f.is_zero_fn()


def test_canonicalize_disjoint_support():
    ctx = PAdicContext(2)
    f = SchwartzBruhatFn.unit_ball(1, ctx) \
        + SchwartzBruhatFn.indicator(1, ctx, PAdicMatrix([[1]]), 1, coeff=2)
    c = f.canonicalize()
    assert c.fn_equal(f)
    # disjoint cells at a single level, no modulations
    levels = {t.level for t in c.terms}
    assert len(levels) == 1
    assert all(t.modulation == PAdicMatrix.zero(1) for t in c.terms)


def test_json_roundtrip():
    rng = random.Random(13)
    for n, p in [(1, 2), (2, 3)]:
        ctx = PAdicContext(p)
        f = random_schwartz(n, ctx, rng)
        g = SchwartzBruhatFn.from_json(f.to_json())
        assert f.fn_equal(g)


def test_det_valuation_bound():
    ctx = PAdicContext(2)
    phi = SchwartzBruhatFn.scaled_ball(2, ctx, -2)
    assert phi.det_valuation_bound() == -4
    assert SchwartzBruhatFn.unit_ball(1, ctx).det_valuation_bound() == 0
