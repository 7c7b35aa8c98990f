"""Exact integration over multiplicative shells of GL_n(Q_p).

The measure is d^x g = |det g|^(-n) dg with the additive dg normalized by
vol(M_n(Z_p)) = 1; shell k is {v(det g) = k}.  Every integrand handled here
has the shape psi(tr(B g)) * chi(unit part of det g) restricted to a coset
of p^L M_n(Z_p), which covers Schwartz-Bruhat terms and the truncated
distribution kernels alike.

Three evaluation paths:
  * n = 1: direct unit enumeration at the certified constancy level;
  * n = 2, zero-centered coset with scalar modulation: Hermite-orbit
    decomposition G = gamma * [[p^a, b], [0, p^d]] with the b-sum collapsed
    analytically and gamma binned by an integer histogram kernel;
  * generic: recursive residue-cell refinement with an exact resolution
    rule, bounded by a hard cell budget.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._kernels import gl2_histogram
from .errors import BudgetExceeded, NoStabilization
from .padic import INFINITE, PAdicContext, PAdicMatrix, psi_value, valuation
from .ratfun import LaurentPoly, RationalFunctionT
from .recurrence import detect_recurrence
from .scalars import as_scalar, scalar_is_zero

# integer sweeps inside the histogram kernels are far cheaper than exact
# python cells, so they get their own (fixed) budget
_KERNEL_SWEEP_BUDGET = 3 * 10 ** 8


@dataclass
class IntegrationConfig:
    """Truncation, certification, and budget knobs.

    m_*: truncation-ball growth for non-compact distribution integrals.
    r_max/confirm: recurrence order bound and confirmation window for
    rationalization (r_max defaults to n at the call site).
    hard_budget: max refinement cells per integral (env GJZETA_HARD_BUDGET
    overrides).
    """
    m_start: int = 0
    m_max: int = 8
    m_confirm: int = 2
    k_extra: int = 2
    r_max: int = 0
    confirm: int = 3
    hard_budget: int = 10 ** 7
    force_enumeration: bool = False
    threads: int = 1

    def __post_init__(self):
        env = os.environ.get("GJZETA_HARD_BUDGET", "").strip()
        if env:
            self.hard_budget = int(env)


def parallel_map(fn, items, threads: int = 1):
    """Order-preserving map; results are identical for any thread count."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def _unit_values(unit_char):
    """(conductor exponent, value callback) for an optional unit character."""
    if unit_char is None:
        return 0, None
    return unit_char.conductor_exp, unit_char.unit_value


def _is_scalar_matrix(b: PAdicMatrix):
    """The scalar c if b = c * Id, else None (0 counts: returns Fraction 0)."""
    c = b.entries[0][0]
    n = b.n
    for i in range(n):
        for j in range(n):
            if b.entries[i][j] != (c if i == j else 0):
                return None
    return c


def term_shell_integral(ctx: PAdicContext, k: int, center: PAdicMatrix,
                        level: int, modulation: PAdicMatrix,
                        config: IntegrationConfig, unit_char=None, stats=None):
    """int over {v(det g) = k} cap (center + p^level M) of
    psi(tr(modulation g)) chi(det g / p^k) d^x g."""
    n = center.n
    if n == 1:
        return _shell_n1(ctx, k, center, level, modulation, unit_char, stats)
    if n == 2 and not config.force_enumeration:
        c = _is_scalar_matrix(modulation)
        if c is not None and center.in_coset(PAdicMatrix.zero(2), level, ctx.p):
            return _shell_n2_hermite(ctx, k, level, c, unit_char, stats)
    return _shell_generic(ctx, k, center, level, modulation, config, unit_char, stats)


def _bump(stats, key, amount=1):
    if stats is not None:
        stats[key] = stats.get(key, 0) + amount


# -- n = 1 --------------------------------------------------------------

def _shell_n1(ctx, k, center, level, modulation, unit_char, stats):
    p = ctx.p
    cu, chi = _unit_values(unit_char)
    a = center.entries[0][0]
    b = modulation.entries[0][0]
    vb = valuation(b, p)
    j = max(1, cu, level - k)
    if vb is not INFINITE:
        j = max(j, -(k + vb))
    pk = Fraction(p) ** k
    pcu = p ** cu
    total = as_scalar(0, p)
    for r in range(p ** j):
        if r % p == 0:
            continue
        _bump(stats, "cells")
        x = pk * r
        if valuation(x - a, p) < level:
            continue
        val = psi_value(b * x, ctx)
        if chi is not None:
            val = chi(r % pcu) * val
        total = total + val
    return total * Fraction(1, p ** j)


# -- n = 2 Hermite-orbit fast path --------------------------------------

@lru_cache(maxsize=None)
def _gl2_hist_cached(p, J, m1, cu):
    if p ** (4 * J) > _KERNEL_SWEEP_BUDGET:
        raise BudgetExceeded("histogram sweep p^(4*%d) exceeds the kernel budget" % J)
    return gl2_histogram(p, J, m1, cu)


def _geometric_char_sum(w: Fraction, N: int, ctx: PAdicContext):
    """sum_{b=0}^{N-1} psi(w b), exact."""
    p = ctx.p
    if N == 1 or w == 0 or valuation(w, p) >= 0:
        return as_scalar(N, p)
    zN = psi_value(w * N, ctx)
    one = as_scalar(1, p)
    if (zN - one).is_zero():
        return as_scalar(0, p)
    return (zN - one) * (psi_value(w, ctx) - one).inverse()


def _shell_n2_hermite(ctx, k, level, c, unit_char, stats):
    """Zero-centered coset p^level M_2, modulation c * Id.

    Substituting g = p^level H reduces to integral H with v(det H) = k',
    k' = k - 2*level; the d^x measure is scale-invariant so no prefactor
    survives except the gamma-cell volume p^(-4J).
    """
    p = ctx.p
    cu, chi = _unit_values(unit_char)
    kp = k - 2 * level
    if kp < 0:
        return as_scalar(0, p)
    cH = Fraction(c) * Fraction(p) ** level
    vc = valuation(cH, p)
    mc = 0 if vc is INFINITE else max(0, -int(vc))
    J = max(1, cu, mc)
    counts = _gl2_hist_cached(p, J, mc, cu)
    M1 = p ** mc
    MU = p ** cu
    psi_tab = [psi_value(cH * t, ctx) for t in range(M1)]
    chi_tab = {u: (chi(u) if chi is not None else as_scalar(1, p))
               for u in range(MU) if MU == 1 or u % p != 0}
    total = as_scalar(0, p)
    i11g, i22g = np.meshgrid(np.arange(M1), np.arange(M1), indexing="ij")
    for a in range(kp + 1):
        d = kp - a
        # trace phase index (gamma11 p^a + gamma22 p^d) mod p^mc
        tkey = ((i11g * pow(p, a, M1) if a < mc else np.zeros_like(i11g))
                + (i22g * pow(p, d, M1) if d < mc else np.zeros_like(i22g))) % M1
        for i21 in range(M1):
            # b-sum over the off-diagonal Hermite entry, collapsed analytically
            if i21 == 0:
                bsum = as_scalar(p ** d, p)
            else:
                v21 = 0
                r = i21
                while r % p == 0:
                    r //= p
                    v21 += 1
                if v21 >= mc - d:
                    continue  # full character sum vanishes
                bsum = _geometric_char_sum(cH * i21, p ** d, ctx)
            for u, chival in chi_tab.items():
                acc = np.zeros(M1, dtype=np.int64)
                np.add.at(acc, tkey.ravel(), counts[:, i21, :, u].ravel())
                _bump(stats, "cells", M1)
                sub = as_scalar(0, p)
                for t in range(M1):
                    if acc[t]:
                        sub = sub + psi_tab[t] * int(acc[t])
                total = total + sub * bsum * chival
    return total * Fraction(1, p ** (4 * J))


# -- generic recursive refinement ---------------------------------------

def _mod_int(x: Fraction, modulus: int) -> int:
    """Integer representative of a p-integral rational mod p^j."""
    x = Fraction(x)
    if modulus <= 1:
        return 0
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def _int_det(a, n: int) -> int:
    """Determinant of a flat integer tuple, cofactor expansion (n is small)."""
    if n == 1:
        return a[0]
    if n == 2:
        return a[0] * a[3] - a[1] * a[2]
    total = 0
    minor_rows = range(1, n)
    for col in range(n):
        if a[col] == 0:
            continue
        sub = tuple(a[r * n + c] for r in minor_rows for c in range(n) if c != col)
        total += (-1) ** col * a[col] * _int_det(sub, n - 1)
    return total


def _shell_generic(ctx, k, center, level, modulation, config, unit_char, stats):
    """Residue-cell refinement on integer matrices after scaling to M_n(Z_p).

    A cell is (flat integer entries mod p^j, j).  Resolution: if
    v(det a) < j the det valuation is constant on the cell; it is resolved
    once j also certifies the psi phase and the det unit residue.  If
    v(det a) >= j every point has v(det) >= j, so the cell is dead once
    j > k'.  Otherwise split into p^(n^2) children at level j+1.
    """
    p = ctx.p
    n = center.n
    n2 = n * n
    cu, chi = _unit_values(unit_char)
    mv = center.min_valuation(p)
    m = max(0, -level, 0 if mv is INFINITE else -min(0, int(mv)))
    kp = k + n * m
    if kp < 0:
        return as_scalar(0, p)
    pm = Fraction(p) ** m
    Lp = level + m
    # integer representative of the scaled center mod p^Lp (denominators
    # prime to p are inverted modularly)
    A = tuple(_mod_int(e * pm, p ** max(Lp, 0)) for row in center.entries for e in row)
    C = tuple(e / pm for row in modulation.entries for e in row)
    cv = min((valuation(c, p) for c in C if c != 0), default=INFINITE)
    mpsi = 0 if cv is INFINITE else max(0, -int(cv))
    pcu = p ** cu
    prefactor = Fraction(p) ** (n * k + m * n2)
    budget = config.hard_budget
    visited = 0
    total = as_scalar(0, p)
    stack = [(A, max(Lp, 0))]
    while stack:
        a, j = stack.pop()
        visited += 1
        if visited > budget:
            raise BudgetExceeded("refinement exceeded %d cells" % budget,
                                 shell=k, truncation=m, cells=visited)
        det = _int_det(a, n)
        if det != 0:
            dv = 0
            d = det
            while d % p == 0:
                d //= p
                dv += 1
        else:
            dv = j  # only "v >= j" is known
        if det != 0 and dv < j:
            if dv != kp:
                continue
            if j >= mpsi and j >= dv + cu:
                tr = sum(C[i * n + l] * a[l * n + i] for i in range(n) for l in range(n))
                val = psi_value(tr, ctx)
                if chi is not None:
                    val = chi(d % pcu if pcu > 1 else 0) * val
                total = total + val * Fraction(1, p ** (j * n2))
                continue
        else:
            if kp < j:
                continue
        pj = p ** j
        offs = [tuple(pj * t[i] for i in range(n2))
                for t in _offset_digits(n2, p)]
        for off in offs:
            stack.append((tuple(x + y for x, y in zip(a, off)), j + 1))
    _bump(stats, "cells", visited)
    return total * prefactor


@lru_cache(maxsize=None)
def _offset_digits(n2: int, p: int):
    out = []
    idx = [0] * n2
    while True:
        out.append(tuple(idx))
        pos = 0
        while pos < n2:
            idx[pos] += 1
            if idx[pos] < p:
                break
            idx[pos] = 0
            pos += 1
        if pos == n2:
            return tuple(out)


# -- whole-function and stabilized integrals ----------------------------

def schwartz_shell_integral(phi, k: int, config: IntegrationConfig,
                            unit_char=None, stats=None):
    """int_{v(det g)=k} Phi(g) chi(det g / p^k) d^x g for a Schwartz-Bruhat Phi."""
    ctx = phi.ctx
    vals = parallel_map(
        lambda t: t.coeff * term_shell_integral(ctx, k, t.center, t.level,
                                                t.modulation, config, unit_char, stats),
        phi.terms, config.threads)
    total = as_scalar(0, ctx.p)
    for v in vals:
        total = total + v
    return total


def stabilized_shell_integral(ctx: PAdicContext, n: int, k: int,
                              modulation: PAdicMatrix, config: IntegrationConfig,
                              unit_char=None, stats=None):
    """int_{v(det g)=k} psi(tr(modulation g)) chi(det g / p^k) d^x g.

    The domain is not compact; truncate to p^(-m) M_n(Z_p) and grow m until
    m_confirm consecutive truncations agree exactly.  Returns (value, m).
    """
    center = PAdicMatrix.zero(n)
    prev = None
    agree = 0
    for m in range(config.m_start, config.m_max + 1):
        val = term_shell_integral(ctx, k, center, -m, modulation, config,
                                  unit_char, stats)
        if prev is not None and scalar_is_zero(val - prev):
            agree += 1
            if agree >= config.m_confirm:
                return val, m
        else:
            agree = 0
        prev = val
    raise NoStabilization("shell %d did not stabilize by truncation m = %d"
                          % (k, config.m_max))


# -- rationalization ----------------------------------------------------

def rationalize(seq, k0: int, weight: int, q: int, r_max: int,
                confirm: int) -> RationalFunctionT:
    """Exact rational function from shell entries.

    seq[i] is the coefficient of T^(weight*(k0+i)); the tail must satisfy a
    linear recurrence of order <= r_max, certified on `confirm` extra terms.
    """
    rec = detect_recurrence(seq, r_max, confirm)
    s = rec.start
    r = rec.order
    head = LaurentPoly({weight * (k0 + i): as_scalar(seq[i])
                        for i in range(s) if not scalar_is_zero(seq[i])})
    den = LaurentPoly({0: as_scalar(1)})
    for i, ci in enumerate(rec.coeffs, start=1):
        den = den - LaurentPoly({weight * i: as_scalar(ci)})
    tail = LaurentPoly()
    for jj in range(r):
        e = seq[s + jj]
        for i in range(1, jj + 1):
            e = e - rec.coeffs[i - 1] * seq[s + jj - i]
        if not scalar_is_zero(e):
            tail = tail + LaurentPoly({weight * (k0 + s + jj): as_scalar(e)})
    return RationalFunctionT(head * den + tail, den, q)
