"""Rational-function arithmetic over Q[U] and exact linear algebra used for
minimal polynomials modulo zero-dimensional ideals."""

from __future__ import annotations

from fractions import Fraction

from .errors import CpdsError
from .factor import multivariate_gcd
from .poly import Polynomial, exact_divide


class RatFunc:
    """num/den with polynomial parts, den primitive-normalized and positive."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        ring = num.ring
        if den is None:
            den = Polynomial.constant(ring, 1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Polynomial.constant(ring, 1)
        elif not den.is_constant() or not num.is_constant():
            g = multivariate_gcd(num, den)
            if not g.is_constant():
                num = exact_divide(num, g)
                den = exact_divide(den, g)
        if den.is_constant():
            num = num * (1 / den.constant_value())
            den = Polynomial.constant(ring, 1)
        else:
            scale = den.primitive_normalize()
            c = _leading_ratio(den, scale)
            num = num * (1 / c)
            den = scale
        self.num = num
        self.den = den

    @classmethod
    def of(cls, p):
        return cls(p)

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __mul__(self, other):
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError
        return RatFunc(self.num * other.den, self.den * other.num)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError
        return RatFunc(self.den, self.num)

    def __eq__(self, other):
        return (isinstance(other, RatFunc) and self.num == other.num
                and self.den == other.den)

    def __repr__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _leading_ratio(p, q):
    """c with p = c*q for proportional polynomials."""
    m = next(iter(p.terms))
    return p.terms[m] / q.terms[m]


def lcm_polys(polys):
    ring = polys[0].ring
    out = Polynomial.constant(ring, 1)
    for p in polys:
        if p.is_constant():
            continue
        g = multivariate_gcd(out, p)
        extra = exact_divide(p, g) if not g.is_constant() else p
        out = out * extra
    return out.primitive_normalize()


def clear_denominators(coeffs):
    """Common denominator d and the integral numerators d*coeffs."""
    dens = [c.den for c in coeffs if not c.is_zero()]
    ring = coeffs[0].num.ring
    if not dens:
        return Polynomial.constant(ring, 1), [c.num for c in coeffs]
    d = lcm_polys(dens)
    out = []
    for c in coeffs:
        if c.is_zero():
            out.append(c.num)
        else:
            q = exact_divide(d, c.den)
            out.append(c.num * q)
    return d, out


def find_linear_dependency(next_vector, rows, length, ring):
    """Reduce a coordinate vector against echelon rows.

    rows hold (pivot_key, vector dict, combination list); the combination
    expresses each row in terms of the original vectors v_0..v_k.  Returns
    ("dependent", combination, None) when the new vector lies in the span, or
    ("independent", combination, (pivot, reduced_vector)) otherwise.
    """
    zero = RatFunc(Polynomial.zero(ring))
    one = RatFunc(Polynomial.constant(ring, 1))
    vec = dict(next_vector)
    combo = [zero] * (length - 1) + [one]
    for pivot, pvec, pcombo in rows:
        c = vec.get(pivot)
        if c is None or c.is_zero():
            continue
        f = c / pvec[pivot]
        for k, v in pvec.items():
            nv = vec.get(k, zero) - f * v
            if nv.is_zero():
                vec.pop(k, None)
            else:
                vec[k] = nv
        for i, pc in enumerate(pcombo):
            combo[i] = combo[i] - f * pc
    vec = {k: v for k, v in vec.items() if not v.is_zero()}
    if not vec:
        return "dependent", combo, None
    pivot = min(vec, key=lambda m: m.exps)
    return "independent", combo, (pivot, vec)
