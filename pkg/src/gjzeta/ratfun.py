"""Laurent polynomials and rational functions in the formal variable T.

T stands for q^(-s/2), so |x|^s = q^(-vs) contributes T^(2v) and
half-integer exponents of q^(-s) are integer powers of T.  Coefficients
are exact scalars (cyclotomic, possibly extended by sqrt(q)).
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import as_scalar, scalar_is_zero


class LaurentPoly:
    """Finite sum of c_e * T^e with exact scalar coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for e, c in coeffs.items():
                if not scalar_is_zero(c):
                    self.coeffs[int(e)] = c

    @staticmethod
    def monomial(c, e: int = 0) -> "LaurentPoly":
        return LaurentPoly({e: c})

    @staticmethod
    def const(c) -> "LaurentPoly":
        return LaurentPoly({0: as_scalar(c)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def low_degree(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, e: int) -> "LaurentPoly":
        return LaurentPoly({k + e: c for k, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs)))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join("(%r)*T^%d" % (c, e) for e, c in sorted(self.coeffs.items()))

    def leading(self):
        return self.coeffs[self.degree()]

    def trailing(self):
        return self.coeffs[self.low_degree()]


def _poly_divmod(a: LaurentPoly, b: LaurentPoly):
    """Division with remainder for ordinary (non-negative-degree) polys."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q = LaurentPoly()
    r = a
    db = b.degree()
    lb = b.leading()
    while not r.is_zero() and r.degree() >= db:
        e = r.degree() - db
        c = r.leading() * (Fraction(1) / lb if isinstance(lb, (int, Fraction)) else lb.inverse())
        mono = LaurentPoly.monomial(c, e)
        q = q + mono
        r = r - mono * b
    return q, r


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a = a.shift(-a.low_degree()) if not a.is_zero() else a
    b = b.shift(-b.low_degree()) if not b.is_zero() else b
    while not b.is_zero():
        _, r = _poly_divmod(a, b)
        a, b = b, r
        if not b.is_zero():
            b = b.shift(-b.low_degree())
    return a


class RationalFunctionT:
    """Exact rational function num/den in T, with residue cardinality q.

    Canonical form: num/den gcd-reduced, den shifted to lowest degree 0 and
    normalized so its trailing coefficient is 1.
    """

    __slots__ = ("num", "den", "q")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, q: int, reduce: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.q = q
        if reduce and not num.is_zero():
            shift_n, shift_d = num.low_degree(), den.low_degree()
            num = num.shift(-shift_n)
            den = den.shift(-shift_d)
            g = _poly_gcd(num, den)
            if g.degree() > 0:
                num, _ = _poly_divmod(num, g)
                den, _ = _poly_divmod(den, g)
            num = num.shift(shift_n - shift_d)
        elif num.is_zero():
            num = LaurentPoly()
            den = LaurentPoly.const(1)
        # trailing-coefficient normalization of the denominator
        t = den.trailing()
        tin = Fraction(1) / t if isinstance(t, (int, Fraction)) else t.inverse()
        den = den * tin
        num = num * tin
        den = den.shift(-den.low_degree())
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(pnum: LaurentPoly, q: int) -> "RationalFunctionT":
        return RationalFunctionT(pnum, LaurentPoly.const(1), q, reduce=False)

    @staticmethod
    def const(c, q: int) -> "RationalFunctionT":
        return RationalFunctionT.from_poly(LaurentPoly.const(as_scalar(c)), q)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunctionT(self.num * other.den + other.num * self.den,
                                 self.den * other.den, self.q)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionT(-self.num, self.den, self.q, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunctionT(self.num * other.num, self.den * other.den, self.q)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunctionT(self.num * other.den, self.den * other.num, self.q)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def _coerce(self, other) -> "RationalFunctionT":
        if isinstance(other, RationalFunctionT):
            if other.q != self.q:
                raise ValueError("mixed base q")
            return other
        return RationalFunctionT.from_poly(LaurentPoly.const(as_scalar(other)), self.q)

    def equals(self, other) -> bool:
        """Exact equality by cross-multiplication; no evaluation."""
        other = self._coerce(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def __eq__(self, other):
        if isinstance(other, RationalFunctionT):
            return self.equals(other)
        try:
            return self.equals(RationalFunctionT.from_poly(
                LaurentPoly.const(as_scalar(other)), self.q))
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.q, self.num, self.den))

    def is_monomial(self) -> bool:
        return len(self.num.coeffs) == 1 and len(self.den.coeffs) == 1

    def series_coefficients(self, k0: int, count: int, step: int = 1):
        """Expand as sum_{k>=k0} a_k T^(step*k); returns a_k for count terms.

        Requires den to have a nonzero constant term in the variable T^step.
        """
        den = {e // step: c for e, c in self.den.coeffs.items()}
        num = {e // step: c for e, c in self.num.coeffs.items()}
        if any(e % step for e in self.den.coeffs) or any(e % step for e in self.num.coeffs):
            raise ValueError("not a function of T^%d" % step)
        d0 = den.get(0)
        if d0 is None or scalar_is_zero(d0):
            raise ValueError("denominator not invertible as a power series")
        inv0 = Fraction(1) / d0 if isinstance(d0, (int, Fraction)) else d0.inverse()
        out = []
        cache = {}
        for k in range(k0, k0 + count):
            acc = num.get(k, 0)
            for j, c in den.items():
                if j != 0 and (k - j) in cache:
                    acc = acc - c * cache[k - j]
            val = acc * inv0
            cache[k] = val
            out.append(val)
        return out

    def serialize(self):
        def ser(poly):
            return {str(e): repr(c) for e, c in sorted(poly.coeffs.items())}
        return {"num": ser(self.num), "den": ser(self.den), "base_q": self.q}

    def __repr__(self):
        return "(%r) / (%r)  [q=%d]" % (self.num, self.den, self.q)


def ratfun_equal(r1: RationalFunctionT, r2: RationalFunctionT) -> bool:
    if r1.q != r2.q:
        raise ValueError("mixed base q")
    return r1.equals(r2)
