"""Ideal-level operations: sums, products, intersections, quotients,
saturation, elimination, dimension, independent sets, and contraction."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import CpdsError, SaturationCap
from .factor import multivariate_gcd, squarefree_part
from .groebner import groebner_basis, normal_form, traced_groebner_basis
from .poly import Polynomial, exact_divide
from .ring import Monomial

SATURATION_CAP = 50


class Ideal:
    """Generator list plus cached reduced Groebner bases per order."""

    __slots__ = ("ring", "generators", "_gb")

    def __init__(self, ring, generators):
        self.ring = ring
        gens = []
        seen = set()
        for g in generators:
            if isinstance(g, (int, Fraction)):
                g = Polynomial.constant(ring, g)
            ring.same(g.ring)
            if g.is_zero():
                continue
            g = g.primitive_normalize()
            if g not in seen:
                seen.add(g)
                gens.append(g)
        self.generators = tuple(gens)
        self._gb = {}

    def groebner(self, order=None):
        order = order or self.ring.default_order
        if order not in self._gb:
            self._gb[order] = tuple(groebner_basis(list(self.generators), order))
        return self._gb[order]

    # -- predicates -----------------------------------------------------------

    def is_zero(self):
        return not self.generators

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def contains(self, f):
        if f.is_zero():
            return True
        return normal_form(f, list(self.groebner())).is_zero()

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.generators)

    def equals(self, other):
        return self.groebner() == other.groebner()

    def support_indices(self):
        out = set()
        for g in self.generators:
            out |= g.support_indices()
        return frozenset(out)

    def specialize(self, point, target=None):
        target = target or self.ring.without_parameters()
        return Ideal(target, [g.specialize(point, target) for g in self.generators])

    def transport(self, ring):
        return Ideal(ring, [g.transport(ring) for g in self.generators])

    def __repr__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"

    def key(self):
        """Canonical comparison key: printed reduced basis."""
        return tuple(str(g) for g in self.groebner())


def unit_ideal(ring):
    return Ideal(ring, [Polynomial.constant(ring, 1)])


def sum_product(i1, i2, op):
    i1.ring.same(i2.ring)
    if op == "sum":
        return Ideal(i1.ring, list(i1.generators) + list(i2.generators))
    if op == "product":
        if i1.is_zero() or i2.is_zero():
            return Ideal(i1.ring, [])
        return Ideal(i1.ring, [f * g for f in i1.generators for g in i2.generators])
    raise ValueError(f"unknown op {op!r}")


def ideal_sum(*ideals):
    ring = ideals[0].ring
    gens = []
    for i in ideals:
        ring.same(i.ring)
        gens.extend(i.generators)
    return Ideal(ring, gens)


# -- intersection via slack variables ----------------------------------------


def intersect(ideals, trace=None):
    """Intersection of finitely many ideals via the slack-variable ideal
    t1*Q1 + ... + (1 - sum t_i)*Qr and elimination of the slack block.

    With a trace, leading coefficients assumed nonzero during the slack
    Groebner run are recorded (the stability certificate of the operation).
    """
    ideals = list(ideals)
    if not ideals:
        raise CpdsError("intersection of an empty family")
    ring = ideals[0].ring
    for i in ideals:
        ring.same(i.ring)
    ideals = [i for i in ideals if not i.is_unit()] or [ideals[0]]
    if len(ideals) == 1:
        out = ideals[0]
        if trace is not None:
            _, trace = traced_groebner_basis(list(out.generators), trace)
            return out, trace
        return out
    fresh = ring.fresh_names(len(ideals) - 1, "t")
    ext = ring.with_slack(fresh)
    tvars = [Polynomial.variable(ext, nm) for nm in fresh]
    last_coeff = Polynomial.constant(ext, 1)
    for t in tvars:
        last_coeff = last_coeff - t
    gens = []
    for k, ideal in enumerate(ideals):
        coeff = tvars[k] if k < len(tvars) else last_coeff
        for g in ideal.generators:
            gens.append(coeff * g.transport(ext))
    if trace is not None:
        ext_trace = trace.__class__(ext, tuple(b.transport(ext) for b in trace.base),
                                    tuple(f.transport(ext) for f in trace.factors))
        basis, ext_trace = traced_groebner_basis(gens, ext_trace)
        for f in ext_trace.factors:
            trace = trace.adding(f.transport(ring))
    else:
        basis = groebner_basis(gens)
    slack_idx = frozenset(range(len(fresh)))
    kept = [g.transport(ring) for g in basis
            if not (g.support_indices() & slack_idx)]
    result = Ideal(ring, kept)
    return (result, trace) if trace is not None else result


def elimination_ideal(ideal, keep):
    """Generators of I intersected with K[keep]."""
    ring = ideal.ring
    keep_idx = frozenset(ring.index(v) if isinstance(v, str) else v for v in keep)
    eliminate = frozenset(range(ring.nnames)) - keep_idx
    order = ring.elimination_order(eliminate)
    basis = groebner_basis(list(ideal.generators), order)
    return Ideal(ring, [g for g in basis if g.support_indices() <= keep_idx])


def condition_ideal(ideal):
    """I intersected with the parameter ring K[A]."""
    return elimination_ideal(ideal, [ideal.ring.names[i]
                                     for i in sorted(ideal.ring.param_indices)])


def quotient(ideal, other):
    """I : J = {f | f*J in I}."""
    ideal.ring.same(other.ring)
    if other.is_zero():
        return unit_ideal(ideal.ring)
    parts = []
    for f in other.generators:
        inter = intersect([ideal, Ideal(ideal.ring, [f])])
        quot_gens = []
        for g in inter.generators:
            q = exact_divide(g, f)
            if q is None:
                raise CpdsError("quotient division was not exact")
            quot_gens.append(q)
        parts.append(Ideal(ideal.ring, quot_gens))
    out = parts[0]
    for p in parts[1:]:
        out = intersect([out, p])
    return out


def saturate(ideal, f):
    """(I : f^infinity, minimal exponent s with I : f^s stable)."""
    ring = ideal.ring
    if isinstance(f, (int, Fraction)):
        f = Polynomial.constant(ring, f)
    if f.is_zero():
        raise CpdsError("saturation by zero")
    if f.is_constant():
        return ideal, 0
    fresh = ring.fresh_names(1, "y")[0]
    ext = ring.with_slack((fresh,))
    gens = [g.transport(ext) for g in ideal.generators]
    gens.append(Polynomial.constant(ext, 1) -
                Polynomial.variable(ext, fresh) * f.transport(ext))
    basis = groebner_basis(gens)
    kept = [g.transport(ring) for g in basis
            if not (g.support_indices() & {0})]
    sat = Ideal(ring, kept)
    gb = list(ideal.groebner())
    exponent = 0
    for g in sat.generators:
        k, h = 0, g
        while not normal_form(h, gb).is_zero():
            k += 1
            if k > SATURATION_CAP:
                raise SaturationCap(f"exponent above {SATURATION_CAP} for {f}")
            h = h * f
        exponent = max(exponent, k)
    return sat, exponent


def radical_membership(f, ideal):
    """f in sqrt(I), by the Rabinowitsch trick."""
    if f.is_zero():
        return True
    ring = ideal.ring
    fresh = ring.fresh_names(1, "y")[0]
    ext = ring.with_slack((fresh,))
    gens = [g.transport(ext) for g in ideal.generators]
    gens.append(Polynomial.constant(ext, 1) -
                Polynomial.variable(ext, fresh) * f.transport(ext))
    basis = groebner_basis(gens)
    return len(basis) == 1 and basis[0].is_constant()


def inclusion_test(i1, i2):
    """(I1 subset of I2, witness generator when false)."""
    i1.ring.same(i2.ring)
    gb = list(i2.groebner())
    for g in i1.generators:
        if not normal_form(g, gb).is_zero():
            return False, g
    return True, None


# -- dimension and independent sets -------------------------------------------


def _leading_monomials(ideal, order=None):
    order = order or ideal.ring.default_order
    return [g.leading_monomial(order) for g in ideal.groebner(order)]


def _independent(subset, lms):
    return all(not (m.support() <= subset) for m in lms)


def dimension_and_mis(ideal, scope=None):
    """(Krull dimension, first maximal independent set in enumeration order).

    `scope` restricts the candidate variables (used for local independent
    sets inside X); by default all ring names participate.
    """
    if ideal.is_unit():
        raise CpdsError("the unit ideal has no dimension")
    ring = ideal.ring
    lms = _leading_monomials(ideal)
    indices = sorted(scope) if scope is not None else list(range(ring.nnames))
    best, best_size = (), 0
    for size in range(len(indices), 0, -1):
        found = None
        for combo in combinations(indices, size):
            if _independent(frozenset(combo), lms):
                found = combo
                break
        if found is not None:
            best, best_size = found, size
            break
    names = tuple(ring.names[i] for i in best)
    return best_size, names


def quotient_basis(ideal, rest_indices=None, order=None):
    """Standard monomials when the ideal is zero-dimensional over the scope."""
    from .errors import NotZeroDimensional
    ring = ideal.ring
    order = order or ring.default_order
    if rest_indices is None:
        rest_indices = frozenset(range(ring.nnames))
    # under an order with rest >> U the restriction of the full leading
    # monomial is the leading monomial over the coefficient field K(U)
    lms = [m.restrict(rest_indices) for m in _leading_monomials(ideal, order)]
    if any(m.is_one() for m in lms):
        return []
    caps = {}
    for i in sorted(rest_indices):
        pures = [m.degree_in(i) for m in lms if m.support() == {i}]
        if not pures:
            raise NotZeroDimensional(
                f"no pure power of {ring.names[i]} among leading monomials")
        caps[i] = min(pures)
    basis = [Monomial.ONE]
    for i in sorted(rest_indices):
        basis = [m.mul(Monomial.variable(i, e)) for m in basis
                 for e in range(caps[i])]
    out = [m for m in basis if not any(l.divides(m) for l in lms)]
    n = ring.nnames
    out.sort(key=lambda m: order.key(m.dense(n)))
    return out


def contraction(ideal, independent, trace=None):
    """I^{ec}: saturate away the components meeting K[U] nontrivially.

    U must be an independent set; h is the product of the distinct squarefree
    leading-coefficient factors of a Groebner basis under (rest) >> U."""
    ring = ideal.ring
    u_idx = frozenset(ring.index(v) if isinstance(v, str) else v
                      for v in independent)
    order = ring.elimination_order(frozenset(range(ring.nnames)) - u_idx)
    basis = ideal.groebner(order)
    h = Polynomial.constant(ring, 1)
    seen = set()
    for g in basis:
        groups = g.coefficients_in(frozenset(range(ring.nnames)) - u_idx)
        n = ring.nnames
        lead = max(groups, key=lambda m: order.key(m.dense(n)))
        if lead.is_one():
            raise CpdsError("the given set is not independent: basis meets K[U]")
        lc = groups[lead]
        if lc.support_indices() - u_idx:
            raise CpdsError("independent set is not independent for this basis")
        if lc.is_constant():
            continue
        part = squarefree_part(lc).primitive_normalize()
        if part not in seen:
            seen.add(part)
            h = h * part
            if trace is not None:
                trace = trace.adding(_param_witness(part))
    sat, _ = saturate(ideal, h)
    return (sat, h, trace) if trace is not None else (sat, h)


def _param_witness(p):
    """A K[A]-coefficient of p whose nonvanishing keeps p nonzero under
    specialization (the leading main-block coefficient, or p itself in K[A])."""
    if p.has_main_part():
        lc, _, _ = p.leading_data()
        return lc
    return p


def equidimensional_hull(ideal):
    """Intersection of the top-dimensional primary components."""
    if ideal.is_unit():
        raise CpdsError("the unit ideal has no hull")
    dim, mis = dimension_and_mis(ideal)
    if dim == 0:
        return ideal
    part, h = contraction(ideal, mis)
    if h.is_constant():
        return part
    _, s = saturate(ideal, h)
    rest = ideal_sum(ideal, Ideal(ideal.ring, [h ** max(s, 1)]))
    if rest.is_unit():
        return part
    try:
        rest_dim, _ = dimension_and_mis(rest)
    except CpdsError:
        return part
    if rest_dim < dim:
        return part
    return intersect([part, equidimensional_hull(rest)])
