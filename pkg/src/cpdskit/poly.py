"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import CpdsError
from .ring import Monomial, RingContext


class Polynomial:
    """Immutable sparse polynomial over a ring context.

    Terms are held as a dict Monomial -> nonzero Fraction; the canonical
    printed form sorts terms descending under the ring's default order.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def constant(cls, ring, c):
        c = Fraction(c)
        return cls(ring, {Monomial.ONE: c} if c else {})

    @classmethod
    def variable(cls, ring, name, exp=1):
        return cls(ring, {Monomial.variable(ring.index(name), exp): Fraction(1)})

    @classmethod
    def from_terms(cls, ring, pairs):
        d = {}
        for m, c in pairs:
            c = Fraction(c)
            if not c:
                continue
            d[m] = d.get(m, Fraction(0)) + c
            if not d[m]:
                del d[m]
        return cls(ring, d)

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(m.is_one() for m in self.terms)

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise CpdsError("not a constant polynomial")
        return self.terms[Monomial.ONE]

    def support_indices(self):
        out = set()
        for m in self.terms:
            out |= m.support()
        return frozenset(out)

    def has_main_part(self):
        """True if some term involves a slack or ordinary variable."""
        main = self.ring.main_indices
        return any(m.support() & main for m in self.terms)

    def total_degree(self):
        return max((m.degree() for m in self.terms), default=-1)

    def degree_in(self, name):
        i = self.ring.index(name) if isinstance(name, str) else name
        return max((m.degree_in(i) for m in self.terms), default=-1)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        self.ring.same(other.ring)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ring, other)
        self._check(other)
        d = dict(self.terms)
        for m, c in other.terms.items():
            v = d.get(m, Fraction(0)) + c
            if v:
                d[m] = v
            elif m in d:
                del d[m]
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.ring)
            return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        if len(self.terms) > len(other.terms):
            self, other = other, self
        d = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1.mul(m2)
                v = d.get(m, Fraction(0)) + c1 * c2
                if v:
                    d[m] = v
                elif m in d:
                    del d[m]
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.ring, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.ring.names == other.ring.names
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    # -- order-aware views ---------------------------------------------------

    def sorted_terms(self, order=None):
        order = order or self.ring.default_order
        n = self.ring.nnames
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0].dense(n)),
                      reverse=True)

    def leading_monomial(self, order=None):
        if not self.terms:
            raise CpdsError("zero polynomial has no leading monomial")
        order = order or self.ring.default_order
        n = self.ring.nnames
        return max(self.terms, key=lambda m: order.key(m.dense(n)))

    def leading_coefficient(self, order=None):
        return self.terms[self.leading_monomial(order)]

    # -- structure over K[A] ---------------------------------------------------

    def main_groups(self, main=None):
        """Group terms by their main-block monomial: dict monomial -> coefficient poly.

        The main block defaults to slack plus ordinary variables, leaving
        K[A] coefficients; passing another index set realizes coefficients in
        K[U] for any U."""
        main = self.ring.main_indices if main is None else main
        groups = {}
        for m, c in self.terms.items():
            mm, am = m.split(main)
            g = groups.setdefault(mm, {})
            g[am] = g.get(am, Fraction(0)) + c
        return {mm: Polynomial(self.ring, d) for mm, d in groups.items()
                if any(d.values())}

    def leading_data(self, order=None, main=None):
        """(lc in the coefficient ring, lm over the main block, lt)."""
        if not self.terms:
            raise CpdsError("zero polynomial has no leading data")
        order = order or self.ring.default_order
        groups = self.main_groups(main)
        n = self.ring.nnames
        lm = max(groups, key=lambda m: order.key(m.dense(n)))
        lc = groups[lm]
        lt = lc * Polynomial(self.ring, {lm: Fraction(1)})
        return lc, lm, lt

    # -- normalization ---------------------------------------------------------

    def primitive_normalize(self, order=None):
        """Scale by a positive rational so coefficients are coprime integers and lc > 0."""
        if not self.terms:
            return self
        num_gcd, den_lcm = 0, 1
        for c in self.terms.values():
            num_gcd = int_gcd(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
        scale = Fraction(den_lcm, num_gcd)
        if self.leading_coefficient(order) < 0:
            scale = -scale
        return self * scale

    def monic(self, order=None):
        return self * (1 / self.leading_coefficient(order))

    # -- calculus / substitution ------------------------------------------------

    def derivative(self, name):
        i = self.ring.index(name) if isinstance(name, str) else name
        d = {}
        for m, c in self.terms.items():
            e = m.degree_in(i)
            if not e:
                continue
            ex = dict(m.exps)
            ex[i] = e - 1
            nm = Monomial(ex.items())
            v = d.get(nm, Fraction(0)) + c * e
            if v:
                d[nm] = v
            elif nm in d:
                del d[nm]
        return Polynomial(self.ring, d)

    def substitute(self, name, value):
        """Substitute a polynomial (same ring) for one variable, exactly."""
        i = self.ring.index(name) if isinstance(name, str) else name
        if isinstance(value, (int, Fraction)):
            value = Polynomial.constant(self.ring, value)
        # split off the powers of the substituted variable, then Horner
        by_power = {}
        for m, c in self.terms.items():
            e = m.degree_in(i)
            rest = Monomial((j, x) for j, x in m.exps if j != i)
            by_power.setdefault(e, {})[rest] = \
                by_power.setdefault(e, {}).get(rest, Fraction(0)) + c
        out = Polynomial.zero(self.ring)
        for e in range(max(by_power, default=0), -1, -1):
            out = out * value + Polynomial(self.ring, by_power.get(e, {}))
        return out

    def specialize(self, point, target=None):
        """Image under the specialization homomorphism sending parameters to rationals."""
        ring = self.ring
        missing = [a for a in ring.parameters if a not in point]
        if missing:
            raise CpdsError(f"point misses parameters {missing}")
        target = target or ring.without_parameters()
        d = {}
        for m, c in self.terms.items():
            val = c
            rest = []
            for i, e in m.exps:
                nm = ring.names[i]
                if ring.is_param(i):
                    val *= Fraction(point[nm]) ** e
                else:
                    rest.append((target.index(nm), e))
            if not val:
                continue
            nm2 = Monomial(rest)
            v = d.get(nm2, Fraction(0)) + val
            if v:
                d[nm2] = v
            elif nm2 in d:
                del d[nm2]
        return Polynomial(target, d)

    def transport(self, ring):
        """The same polynomial in another ring containing all used names."""
        if ring.names == self.ring.names:
            return Polynomial(ring, dict(self.terms))
        d = {}
        for m, c in self.terms.items():
            nm = Monomial((ring.index(self.ring.names[i]), e) for i, e in m.exps)
            d[nm] = d.get(nm, Fraction(0)) + c
        return Polynomial(ring, {m: c for m, c in d.items() if c})

    def coefficients_in(self, indices):
        """Coefficient polynomials with respect to monomials in `indices`.

        Returns dict: monomial over `indices` -> Polynomial in the remaining names.
        """
        groups = {}
        for m, c in self.terms.items():
            mm, rest = m.split(indices)
            groups.setdefault(mm, {})[rest] = \
                groups.setdefault(mm, {}).get(rest, Fraction(0)) + c
        return {mm: Polynomial(self.ring, d) for mm, d in groups.items()
                if any(d.values())}

    # -- printing ---------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for m, c in self.sorted_terms():
            factors = []
            for i, e in sorted(m.exps):
                nm = self.ring.names[i]
                factors.append(nm if e == 1 else f"{nm}^{e}")
            # keep factor order by significance (ring name order)
            factors.sort(key=lambda s: self.ring.index(s.split("^")[0]))
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            sign = "-" if c < 0 else "+"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"<poly {self}>"


def poly_arith(f, g, op):
    """Spec-facing arithmetic entry point; op is one of add, sub, mul."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def exact_divide(f, g, order=None):
    """f / g when the division is exact, else None."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    ring.same(g.ring)
    order = order or ring.default_order
    n = ring.nnames
    lm_g = g.leading_monomial(order)
    lc_g = g.terms[lm_g]
    rem = f
    quot = {}
    while not rem.is_zero():
        lm = rem.leading_monomial(order)
        if not lm_g.divides(lm):
            return None
        q = lm.div(lm_g)
        c = rem.terms[lm] / lc_g
        quot[q] = quot.get(q, Fraction(0)) + c
        rem = rem - Polynomial(ring, {q: c}) * g
    return Polynomial(ring, {m: c for m, c in quot.items() if c})
