"""Godement-Jacquet zeta integrals and gamma factors on GL_n(Q_p).

Z(Phi, s, chi) = int_{GL_n} Phi(g) chi(det g) |det g|^s d^x g is computed
shell by shell; each shell entry is an exact scalar and the shell series is
an exact rational function in T = q^(-s/2) (weight T^2 per unit of det
valuation).  The gamma factor is the ratio of the dual integral
Z(Phi^, n - s, chi^(-1)) to Z(Phi, s, chi), with the dual series expanded
in T^(-2) from fresh shell integrals of the Fourier transform.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AllDegenerate, ZeroArgument, ZeroDenominator
from .integrate import IntegrationConfig, rationalize, schwartz_shell_integral
from .padic import valuation
from .ratfun import RationalFunctionT
from .scalars import as_scalar, root_of_unity, scalar_is_zero


class MultiplicativeCharacter:
    """Character of Q_p^x: a unit-group table mod p^c plus the value at p.

    The table carries chi on (Z/p^c)^x in full; c = 0 means unramified.
    Values must lie in the engine's scalar tower (p-power roots of unity
    and rationals), which covers every character needed at p = 2, 3.
    """

    def __init__(self, p: int, conductor_exp: int, table, value_at_p=1):
        self.p = p
        self.conductor_exp = conductor_exp
        self.table = {int(u): as_scalar(v, p) for u, v in table.items()}
        self.value_at_p = as_scalar(value_at_p, p)
        pc = p ** conductor_exp
        units = [u for u in range(pc) if pc == 1 or u % p != 0]
        if conductor_exp and sorted(self.table) != sorted(units):
            raise ValueError("table must cover all units mod p^%d" % conductor_exp)

    # -- constructors --------------------------------------------------

    @staticmethod
    def trivial(p: int) -> "MultiplicativeCharacter":
        return MultiplicativeCharacter(p, 0, {}, 1)

    @staticmethod
    def unramified(p: int, value_at_p) -> "MultiplicativeCharacter":
        return MultiplicativeCharacter(p, 0, {}, value_at_p)

    @staticmethod
    def quadratic_ramified(p: int, value_at_p=1) -> "MultiplicativeCharacter":
        """The quadratic ramified character: Legendre symbol mod p for odd p,
        the character mod 4 (conductor exponent 2) for p = 2."""
        if p == 2:
            return MultiplicativeCharacter(2, 2, {1: 1, 3: -1}, value_at_p)
        table = {u: 1 if pow(u, (p - 1) // 2, p) == 1 else -1 for u in range(1, p)}
        return MultiplicativeCharacter(p, 1, table, value_at_p)

    @staticmethod
    def from_generators(p: int, conductor_exp: int, gen_values,
                        value_at_p=1) -> "MultiplicativeCharacter":
        """Build the full table from values on generators of (Z/p^c)^x.

        gen_values: {generator residue: scalar value}; the generated
        subgroup must be the whole unit group.
        """
        pc = p ** conductor_exp
        if conductor_exp == 0:
            return MultiplicativeCharacter(p, 0, {}, value_at_p)
        table = {1: as_scalar(1, p)}
        frontier = [1]
        gens = {int(g) % pc: as_scalar(v, p) for g, v in gen_values.items()}
        while frontier:
            u = frontier.pop()
            for g, val in gens.items():
                w = (u * g) % pc
                if w not in table:
                    table[w] = table[u] * val
                    frontier.append(w)
        n_units = pc - pc // p
        if len(table) != n_units:
            raise ValueError("generators span only %d of %d units" % (len(table), n_units))
        return MultiplicativeCharacter(p, conductor_exp, table, value_at_p)

    # -- evaluation ----------------------------------------------------

    @property
    def is_ramified(self) -> bool:
        return self.conductor_exp > 0

    def unit_value(self, u: int):
        if self.conductor_exp == 0:
            return as_scalar(1, self.p)
        return self.table[u % self.p ** self.conductor_exp]

    def char_eval(self, x):
        """chi(x) for a nonzero rational x."""
        x = Fraction(x)
        if x == 0:
            raise ZeroArgument("character evaluated at 0")
        v = int(valuation(x, self.p))
        u = x / Fraction(self.p) ** v
        pc = self.p ** self.conductor_exp
        ures = u.numerator * pow(u.denominator, -1, pc) % pc if pc > 1 else 0
        return self.value_at_p ** v * self.unit_value(ures)

    def inverse(self) -> "MultiplicativeCharacter":
        return MultiplicativeCharacter(
            self.p, self.conductor_exp,
            {u: v.inverse() for u, v in self.table.items()},
            self.value_at_p.inverse())

    def value_at_minus_one(self):
        return self.unit_value((-1) % max(self.p ** self.conductor_exp, 1))

    def __repr__(self):
        return "MultiplicativeCharacter(p=%d, c=%d, chi(p)=%r)" % (
            self.p, self.conductor_exp, self.value_at_p)


def contragredient_twist(chi: MultiplicativeCharacter) -> MultiplicativeCharacter:
    """Central character data of the contragredient: chi -> chi^(-1)."""
    return chi.inverse()


def phi_fingerprint(phi) -> str:
    return hashlib.sha256(phi.to_json().encode()).hexdigest()[:16]


@dataclass
class ZetaResult:
    value: RationalFunctionT
    entries: dict
    k_range: tuple
    phi_fingerprint: str
    stats: dict = field(default_factory=dict)


def zeta_integral(phi, chi: MultiplicativeCharacter,
                  config: IntegrationConfig | None = None,
                  dual_weight: bool = False) -> ZetaResult:
    """Exact Z(Phi, s, chi compose det) as a rational function in T.

    With dual_weight=True the series is expanded at the reflected argument
    n - s (each shell k weighted by q^(-nk) T^(-2k) instead of T^(2k)),
    which is how the numerator of the gamma factor is assembled.
    """
    config = config or IntegrationConfig()
    n = phi.n
    p = phi.ctx.p
    r_max = config.r_max or n
    k_min = phi.det_valuation_bound()
    count = 2 * r_max + config.confirm + config.k_extra
    stats = {}
    seq = []
    for k in range(k_min, k_min + count):
        entry = schwartz_shell_integral(phi, k, config, chi, stats)
        entry = entry * chi.value_at_p ** k
        if dual_weight:
            entry = entry * Fraction(p) ** (-n * k)
        seq.append(entry)
    weight = -2 if dual_weight else 2
    value = rationalize(seq, k_min, weight, p, r_max, config.confirm)
    return ZetaResult(value=value,
                      entries={k_min + i: s for i, s in enumerate(seq)},
                      k_range=(k_min, k_min + count - 1),
                      phi_fingerprint=phi_fingerprint(phi),
                      stats=stats)


@dataclass
class GammaResult:
    value: RationalFunctionT
    num: ZetaResult
    den: ZetaResult


def gamma_factor(phi, chi: MultiplicativeCharacter,
                 config: IntegrationConfig | None = None) -> GammaResult:
    """gamma(s, chi) = Z(Phi^, n - s, chi^(-1)) / Z(Phi, s, chi)."""
    den = zeta_integral(phi, chi, config)
    if den.value.is_zero():
        raise ZeroDenominator("Z(Phi, s, chi) vanishes identically for this Phi")
    num = zeta_integral(phi.fourier(), chi.inverse(), config, dual_weight=True)
    return GammaResult(value=num.value / den.value, num=num, den=den)


def dual_gamma_factor(phi, chi: MultiplicativeCharacter,
                      config: IntegrationConfig | None = None) -> GammaResult:
    """gamma(n - s, contragredient) computed from the same Phi:
    Z(reflect Phi, s, chi) / Z(Phi^, n - s, chi^(-1))."""
    den = zeta_integral(phi.fourier(), chi.inverse(), config, dual_weight=True)
    if den.value.is_zero():
        raise ZeroDenominator("Z(Phi^, n - s, chi^(-1)) vanishes identically")
    num = zeta_integral(phi.reflect(), chi, config)
    return GammaResult(value=num.value / den.value, num=num, den=den)


def phi_independence_check(phis, chi: MultiplicativeCharacter,
                           config: IntegrationConfig | None = None):
    """gamma factors from several Phi must coincide.

    Returns (all_equal, gamma, warnings); Phi with identically vanishing
    Z are skipped as degenerate.  AllDegenerate if none survives.
    """
    gammas = []
    warnings = []
    for phi in phis:
        try:
            gammas.append(gamma_factor(phi, chi, config))
        except ZeroDenominator:
            warnings.append("degenerate Phi %s skipped" % phi_fingerprint(phi))
    if not gammas:
        raise AllDegenerate("every Phi produced a vanishing zeta integral")
    if len(gammas) == 1:
        warnings.append("only one nondegenerate Phi; independence is vacuous")
    first = gammas[0].value
    ok = all(g.value == first for g in gammas[1:])
    return ok, gammas[0], warnings
