"""Constructible-set algebra over the parameter space and Suzuki-Sato
comprehensive Groebner systems.

Emptiness and covering are decided over the complex numbers (Nullstellensatz
semantics); point membership and sampling are exact over Q.  The two
semantics can disagree: a cell may be nonempty over C yet contain no
rational point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .errors import CpdsError
from .factor import multivariate_gcd, squarefree_part
from .groebner import groebner_basis
from .ideals import Ideal, ideal_sum, radical_membership, sum_product, unit_ideal
from .poly import Polynomial

_SS_DEPTH_CAP = 80


class LocallyClosedSet:
    """V(zero) minus V(nonzero), with zero <= nonzero normalization."""

    __slots__ = ("zero", "nonzero")

    def __init__(self, zero, nonzero):
        zero.ring.same(nonzero.ring)
        self.zero = zero
        self.nonzero = ideal_sum(zero, nonzero) if not nonzero.is_unit() \
            else unit_ideal(zero.ring)

    @property
    def ring(self):
        return self.zero.ring

    def is_empty_over_c(self):
        """True iff V_C(zero) lies inside V_C(nonzero)."""
        if self.zero.is_unit():
            return True
        return all(radical_membership(g, self.zero)
                   for g in self.nonzero.generators)

    def is_full_closed(self):
        """No nonzero condition: the cell is all of V(zero)."""
        return self.nonzero.is_unit()

    def contains_point(self, point):
        for g in self.zero.generators:
            if _value_at(g, point) != 0:
                return False
        if self.nonzero.is_unit():
            return True
        return any(_value_at(g, point) != 0 for g in self.nonzero.generators)

    def __repr__(self):
        if self.is_full_closed():
            return f"V({self.zero})"
        return f"V({self.zero}) \\ V({self.nonzero})"


class ConstructibleSet:
    """A finite union of locally closed cells; the empty union is the empty set."""

    __slots__ = ("ring", "cells")

    def __init__(self, ring, cells):
        self.ring = ring
        self.cells = tuple(c for c in cells if not c.is_empty_over_c())

    @classmethod
    def full_space(cls, ring):
        return cls(ring, [LocallyClosedSet(Ideal(ring, []), unit_ideal(ring))])

    @classmethod
    def empty(cls, ring):
        return cls(ring, [])

    @classmethod
    def of_cell(cls, zero, nonzero):
        return cls(zero.ring, [LocallyClosedSet(zero, nonzero)])

    def is_empty_over_c(self):
        return not self.cells

    def contains_point(self, point):
        return any(c.contains_point(point) for c in self.cells)

    def union(self, other):
        return ConstructibleSet(self.ring, self.cells + other.cells)

    def intersect(self, other):
        cells = []
        for c1 in self.cells:
            for c2 in other.cells:
                zero = ideal_sum(c1.zero, c2.zero)
                if c1.nonzero.is_unit() and c2.nonzero.is_unit():
                    nz = unit_ideal(self.ring)
                elif c1.nonzero.is_unit():
                    nz = c2.nonzero
                elif c2.nonzero.is_unit():
                    nz = c1.nonzero
                else:
                    nz = sum_product(c1.nonzero, c2.nonzero, "product")
                cells.append(LocallyClosedSet(zero, nz))
        return ConstructibleSet(self.ring, cells)

    def complement(self):
        out = ConstructibleSet.full_space(self.ring)
        for c in self.cells:
            piece = ConstructibleSet(self.ring, [
                LocallyClosedSet(Ideal(self.ring, []), c.zero),
                LocallyClosedSet(c.nonzero, unit_ideal(self.ring)),
            ])
            out = out.intersect(piece)
        return out

    def difference(self, other):
        return self.intersect(other.complement())

    def __repr__(self):
        if not self.cells:
            return "{}"
        return " u ".join(repr(c) for c in self.cells)


def cset_algebra(c1, c2, op):
    if op == "union":
        return c1.union(c2)
    if op == "intersect":
        return c1.intersect(c2)
    if op == "difference":
        return c1.difference(c2)
    raise ValueError(f"unknown set operation {op!r}")


def _value_at(poly, point):
    v = poly.specialize(point)
    if not v.is_constant():
        raise CpdsError("cell ideal involves non-parameter variables")
    return v.constant_value()


# -- rational sampling ---------------------------------------------------------


def rationals_of_height(bound):
    """All rationals p/q with |p|, q <= bound, ordered by height then value."""
    out = {Fraction(0)}
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            out.add(Fraction(p, q))
    return sorted(out, key=lambda r: (max(abs(r.numerator), r.denominator),
                                      r.denominator, r.numerator))


def sample_rational_point(cset, height_bound=5):
    """First rational point of the set on the bounded-height grid, or None."""
    if isinstance(cset, LocallyClosedSet):
        cset = ConstructibleSet(cset.ring, [cset])
    ring = cset.ring
    params = ring.parameters
    if not params:
        point = {}
        return point if cset.contains_point(point) else None
    rats = rationals_of_height(height_bound)
    candidates = sorted(
        product(rats, repeat=len(params)),
        key=lambda tup: (max(max(abs(r.numerator), r.denominator) for r in tup),
                         tuple(rats.index(r) for r in tup)))
    for tup in candidates:
        point = dict(zip(params, tup))
        if cset.contains_point(point):
            return point
    return None


# -- Suzuki-Sato comprehensive Groebner systems --------------------------------


class CgsSegment:
    """A locally closed cell with a basis specializing to a Groebner basis."""

    __slots__ = ("cell", "basis")

    def __init__(self, cell, basis):
        self.cell = cell
        self.basis = tuple(basis)

    def __repr__(self):
        return f"({self.cell!r}, {{{', '.join(map(str, self.basis))}}})"


def _param_content_normalize(g):
    """Divide out the K[A]-content (nonvanishing on the cell) and normalize."""
    coeffs = list(g.main_groups().values())
    content = coeffs[0]
    for c in coeffs[1:]:
        if content.is_constant():
            break
        content = multivariate_gcd(content, c)
    if not content.is_constant():
        from .poly import exact_divide
        g = exact_divide(g, content)
    return g.primitive_normalize()


def suzuki_sato_cgs(polys):
    """Comprehensive Groebner system of the generated parametric ideal.

    Cells cover the whole parameter space (disjointness is not promised);
    cells that are empty over C are pruned.  On each cell the stored basis
    specializes to a Groebner basis of the specialized ideal.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise CpdsError("empty generator list")
    ring = polys[0].ring
    segments = []
    _ss_rec(polys, [], ring, segments, 0)
    return segments


def _ss_rec(polys, stratum_gens, ring, segments, depth):
    if depth > _SS_DEPTH_CAP:
        raise CpdsError("comprehensive system recursion exceeded its depth cap")
    basis = groebner_basis(polys + stratum_gens)
    E = Ideal(ring, stratum_gens)
    if len(basis) == 1 and basis[0].is_constant():
        cell = LocallyClosedSet(E, unit_ideal(ring))
        if not cell.is_empty_over_c():
            segments.append(CgsSegment(cell, [Polynomial.constant(ring, 1)]))
        return
    param_part = [g for g in basis if not g.has_main_part()]
    main_part = [g for g in basis if g.has_main_part()]
    base = Ideal(ring, param_part)
    outside = LocallyClosedSet(E, base)
    if not outside.is_empty_over_c():
        segments.append(CgsSegment(outside, [Polynomial.constant(ring, 1)]))
    lcs = []
    seen = set()
    for g in main_part:
        lc, _, _ = g.leading_data()
        if lc.is_constant():
            continue
        lc = squarefree_part(lc).primitive_normalize()
        if lc not in seen:
            seen.add(lc)
            lcs.append(lc)
    prod = Polynomial.constant(ring, 1)
    for lc in lcs:
        prod = prod * lc
    generic = LocallyClosedSet(base, ideal_sum(base, Ideal(ring, [prod])))
    if not generic.is_empty_over_c():
        segments.append(CgsSegment(
            generic, [_param_content_normalize(g) for g in main_part]))
    for h in lcs:
        _ss_rec(polys, list(base.generators) + [h], ring, segments, depth + 1)


def cgs_covering_is_complete(segments, ring):
    """Complement of the union of cells is empty over C."""
    union = ConstructibleSet(ring, [s.cell for s in segments])
    return union.complement().is_empty_over_c()
