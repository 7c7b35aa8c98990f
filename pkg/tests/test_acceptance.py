"""Acceptance gate: the binding correctness and budget criteria.

Each test pins its tolerance explicitly: exact equality over the scalar
tower wherever the engine is exact, numeric tolerances only for the
complex-embedding and real-place checks.  Wall-clock budgets follow each
criterion's stated limit.
"""

import json
import time
from fractions import Fraction

import mpmath
import pytest

from gjzeta.cli import main, random_schwartz
from gjzeta.distributions import (INVERSE, TwistedDistribution, cstar_gamma,
                                  gj_delta, tilde, verify_bk_identity,
                                  verify_inverse_weak, verify_relation)
from gjzeta.archimedean import (RealCharacter, RealSchwartzFn, fourier_real,
                                gamma_oracle, gamma_real)
from gjzeta.padic import PAdicContext, PAdicMatrix
from gjzeta.ratfun import LaurentPoly, RationalFunctionT, ratfun_equal
from gjzeta.scalars import as_scalar, embed_complex, root_of_unity, scalar_is_zero
from gjzeta.schwartz import SchwartzBruhatFn
from gjzeta.zeta import (MultiplicativeCharacter, dual_gamma_factor,
                         gamma_factor, phi_independence_check)


def char_triple(p):
    """trivial, unramified nontrivial, ramified — the three character types."""
    return [MultiplicativeCharacter.trivial(p),
            MultiplicativeCharacter.unramified(p, root_of_unity(p, 1, 1)),
            MultiplicativeCharacter.quadratic_ramified(p)]


def good_phis(n, p, chi):
    ctx = PAdicContext(p)
    if chi.is_ramified:
        c = chi.conductor_exp
        return [SchwartzBruhatFn.shifted_ball(n, ctx, 1, c),
                SchwartzBruhatFn.shifted_ball(n, ctx, 1, c + 1)]
    return [SchwartzBruhatFn.unit_ball(n, ctx),
            SchwartzBruhatFn.scaled_ball(n, ctx, 1)]


def test_criterion_1_fourier_selftest_200_exact():
    """200 randomized functions per (n,p) in {1,2}x{2,3}: double transform =
    reflect and Plancherel, both EXACT; < 2 minutes total."""
    import random
    t0 = time.time()
    rng = random.Random(20260824)
    for n in (1, 2):
        for p in (2, 3):
            ctx = PAdicContext(p)
            for _ in range(200):
                f = random_schwartz(n, ctx, rng)
                g = random_schwartz(n, ctx, rng)
                assert f.fourier().fourier().fn_equal(f.reflect())
                assert scalar_is_zero(
                    f.inner_product(g) - f.fourier().inner_product(g.fourier()))
    assert time.time() - t0 < 120


def test_criterion_2_tate_gamma_exact():
    """gamma for n=1 trivial chi is exactly (1-T^2)/(1-q^-1 T^-2), the same
    from >= 3 distinct Phi; also p=3 and an unramified zeta_3 twist; < 10 s."""
    t0 = time.time()
    for p in (2, 3):
        ctx = PAdicContext(p)
        chi = MultiplicativeCharacter.trivial(p)
        phis = [SchwartzBruhatFn.unit_ball(1, ctx),
                SchwartzBruhatFn.scaled_ball(1, ctx, 1),
                SchwartzBruhatFn.shifted_ball(1, ctx, 1, 2)]
        ok, gamma, warnings = phi_independence_check(phis, chi)
        assert ok and not warnings
        target = RationalFunctionT(
            LaurentPoly({0: as_scalar(1, p), 2: as_scalar(-1, p)}),
            LaurentPoly({0: as_scalar(1, p), -2: as_scalar(Fraction(-1, p), p)}), p)
        assert ratfun_equal(gamma.value, target)
    # unramified zeta_3-twisted character at p = 3
    p = 3
    z3 = root_of_unity(3, 1, 1)
    chi = MultiplicativeCharacter.unramified(p, z3)
    ctx = PAdicContext(p)
    phis = [SchwartzBruhatFn.unit_ball(1, ctx),
            SchwartzBruhatFn.scaled_ball(1, ctx, 1),
            SchwartzBruhatFn.shifted_ball(1, ctx, 1, 2)]
    ok, gamma, warnings = phi_independence_check(phis, chi)
    assert ok and not warnings
    target = RationalFunctionT(
        LaurentPoly({0: as_scalar(1, p), 2: -z3}),
        LaurentPoly({0: as_scalar(1, p), -2: -(z3.inverse() * Fraction(1, p))}), p)
    assert ratfun_equal(gamma.value, target)
    assert time.time() - t0 < 10


def test_criterion_3_ramified_epsilon_monomial():
    """Smallest ramified chi at p=2: gamma is a Laurent monomial in T whose
    coefficient has modulus q^(w/2), integer w, to 1e-10; Phi-independent
    exactly; < 30 s.  (At p = 2 the principal units ARE 1 + 2 Z_2, so the
    smallest ramified conductor exponent is 2.)"""
    t0 = time.time()
    p = 2
    ctx = PAdicContext(p)
    chi = MultiplicativeCharacter.quadratic_ramified(p)
    phis = [SchwartzBruhatFn.shifted_ball(1, ctx, 1, 2),
            SchwartzBruhatFn.shifted_ball(1, ctx, 1, 3),
            SchwartzBruhatFn.shifted_ball(1, ctx, 3, 2)]
    ok, gamma, _ = phi_independence_check(phis, chi)
    assert ok
    assert gamma.value.is_monomial()
    coeff = next(iter(gamma.value.num.coeffs.values()))
    dcoeff = next(iter(gamma.value.den.coeffs.values()))
    mag = abs(embed_complex(coeff, 30) / embed_complex(dcoeff, 30))
    w = 2 * mpmath.log(mag) / mpmath.log(p)
    assert abs(w - mpmath.nint(w)) < mpmath.mpf(10) ** -10
    assert time.time() - t0 < 30


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("kind", ["trivial", "unramified"])
def test_criterion_4_n2_phi_independence(p, kind):
    """n=2 gamma from 1_{M_2} and 1_{p M_2} agree exactly; denominator
    degree <= 2 in T^2; < 10 minutes per case."""
    t0 = time.time()
    ctx = PAdicContext(p)
    if kind == "trivial":
        chi = MultiplicativeCharacter.trivial(p)
    else:
        chi = MultiplicativeCharacter.unramified(p, root_of_unity(p, 1, 1))
    phis = [SchwartzBruhatFn.unit_ball(2, ctx), SchwartzBruhatFn.scaled_ball(2, ctx, 1)]
    g0 = gamma_factor(phis[0], chi)
    g1 = gamma_factor(phis[1], chi)
    assert ratfun_equal(g0.value, g1.value)
    assert g0.value.den.degree() <= 4  # degree in T^2 is half the T-degree
    assert time.time() - t0 < 600


def test_criterion_5_gamma_duality():
    """gamma(s, chi) * gamma(n-s, chi^-1) = chi(-1)^n exactly for the
    criterion 2-4 cases."""
    for p in (2, 3):
        for chi in char_triple(p):
            phi = good_phis(1, p, chi)[0]
            g = gamma_factor(phi, chi)
            gd = dual_gamma_factor(phi, chi)
            assert g.value * gd.value == chi.value_at_minus_one()
    for p in (2, 3):
        for chi in (MultiplicativeCharacter.trivial(p),
                    MultiplicativeCharacter.unramified(p, root_of_unity(p, 1, 1))):
            phi = SchwartzBruhatFn.unit_ball(2, PAdicContext(p))
            g = gamma_factor(phi, chi)
            gd = dual_gamma_factor(phi, chi)
            # chi(-1)^2 = 1 always for n = 2
            assert g.value * gd.value == 1


def test_criterion_6_bk_identity():
    """Generating-distribution spectral identity: n=1 over p in {2,3} and
    three character types at x in {1, p, 1/p}; n=2 flagship at p=2 trivial
    chi with three sample points; < 30 minutes."""
    t0 = time.time()
    for p in (2, 3):
        xs = [PAdicMatrix([[1]]), PAdicMatrix([[p]]), PAdicMatrix([[Fraction(1, p)]])]
        for chi in char_triple(p):
            rep = verify_bk_identity(chi, 1, good_phis(1, p, chi), xs)
            assert rep["verdict"] == "PASS", (p, chi)
    p = 2
    chi = MultiplicativeCharacter.trivial(p)
    xs = [PAdicMatrix.identity(2), PAdicMatrix([[1, 0], [0, 2]]),
          PAdicMatrix([[0, 1], [2, 0]])]
    rep = verify_bk_identity(chi, 2, good_phis(2, p, chi), xs)
    assert rep["verdict"] == "PASS"
    assert time.time() - t0 < 1800


def test_criterion_7_weak_inverse():
    """spectral(D) * spectral(closed-form inverse of D) = 1 exactly:
    n=1, alpha in {1/2, 1, 3/2}, p in {2,3}, three character types; and the
    sign-flipped normalizing distribution at n=2, p=2, trivial chi; < 30 min."""
    t0 = time.time()
    for p in (2, 3):
        for alpha2 in (1, 2, 3):
            d = TwistedDistribution(1, alpha2, -1, INVERSE)
            rep = verify_inverse_weak(d, char_triple(p))
            assert rep["verdict"] == "PASS", (p, alpha2)
    rep = verify_inverse_weak(tilde(cstar_gamma(2)),
                              [MultiplicativeCharacter.trivial(2)])
    assert rep["verdict"] == "PASS"
    assert time.time() - t0 < 1800


def test_criterion_8_tuple_identity():
    """verify-relation passes for n = 1..8 in < 1 second."""
    t0 = time.time()
    for n in range(1, 9):
        assert verify_relation(n)["verdict"] == "PASS"
    assert time.time() - t0 < 1


def test_criterion_9_archimedean_gamma():
    """Real-place gamma matches the Gamma-quotient oracle to 1e-6 on the
    pinned grid, gamma(1/2) = 1 to 1e-9, Phi-independence to 1e-6; < 1 min."""
    t0 = time.time()
    triv = RealCharacter()
    gauss = RealSchwartzFn.gaussian()
    for s in (0.3, 0.5, 0.7, 0.4 + 0.2j):
        assert abs(gamma_real(triv, s, gauss) - gamma_oracle(triv, s)) < 1e-6
    assert abs(gamma_real(triv, 0.5, gauss) - 1) < 1e-9
    phis = [RealSchwartzFn.hermite_multiple([1, 1]),
            RealSchwartzFn.hermite_multiple([2, 1, 1])]
    vals = [gamma_real(triv, 0.4 + 0.2j, phi) for phi in phis]
    assert abs(vals[0] - vals[1]) < 1e-6
    assert time.time() - t0 < 60


def _report_for(argv, tmp_path, tag):
    out = tmp_path / ("%s.json" % tag)
    code = main(argv + ["--out", str(out)])
    doc = json.loads(out.read_text())
    # timing is run metadata, not a computed value
    doc.pop("elapsed_seconds")
    return code, json.dumps(doc, sort_keys=True)


def test_criterion_10_thread_determinism(tmp_path):
    """Representative runs of every report-producing command are
    bit-identical (timing metadata aside) at 1, 4, and 8 worker threads."""
    runs = [
        ["gamma", "--p", "2", "--n", "1", "--char", "trivial"],
        ["gamma", "--p", "2", "--n", "2", "--char", "trivial",
         "--phis", "unit_ball,scaled_ball(1)"],
        ["verify-bk", "--p", "3", "--n", "1", "--char", "quadratic",
         "--phis", "shifted_ball(1,1)"],
        ["verify-inverse", "--p", "2", "--n", "1", "--alpha2", "3"],
    ]
    for i, argv in enumerate(runs):
        texts = set()
        for t in ("1", "4", "8"):
            code, text = _report_for(argv + ["--threads", t], tmp_path,
                                     "run%d_t%s" % (i, t))
            assert code == 0, argv
            texts.add(text)
        assert len(texts) == 1, argv
