"""Minimal polynomials, generic position, zero-dimensional decomposition,
GTZ-style primary decomposition, radicals, and minimality post-processing.

Positive-dimensional ideals are reduced to the zero-dimensional case over the
rational function field Q(U) along a maximal independent set U; components of
the extension are contracted back by saturating with leading coefficients.
Parameters are treated as ordinary (least significant) variables throughout.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (CpdsError, GenericPositionFailure, NotZeroDimensional)
from .factor import (KRONECKER_DEGREE_BOUND, factor_over_function_field,
                     is_irreducible, multivariate_gcd, squarefree_decompose)
from .funcfield import RatFunc, clear_denominators, find_linear_dependency
from .groebner import pseudo_normal_form
from .ideals import (Ideal, contraction, dimension_and_mis, ideal_sum, intersect,
                     quotient_basis, saturate)
from .poly import Polynomial, exact_divide

GTZ_DEPTH_CAP = 40
GENERIC_POSITION_ATTEMPTS = 64


class MinimalPolynomial:
    """Least-degree monic dependency of the powers of an element modulo an ideal.

    The polynomial is stored denominator-cleared and primitive in an extended
    ring with one fresh variable; `monic_coeffs` keeps the exact Q(U)
    coefficients (RatFunc) for degree d, ..., 0."""

    __slots__ = ("element", "modulo", "u_vars", "tname", "tring", "poly",
                 "monic_coeffs")

    def __init__(self, element, modulo, u_vars, tname, tring, poly, monic_coeffs):
        self.element = element
        self.modulo = modulo
        self.u_vars = tuple(u_vars)
        self.tname = tname
        self.tring = tring
        self.poly = poly
        self.monic_coeffs = monic_coeffs

    @property
    def degree(self):
        return self.poly.degree_in(self.tname)

    def evaluated(self, value=None, ring=None):
        """poly with the fresh variable replaced by `value` (default: element)."""
        ring = ring or self.element.ring
        value = value if value is not None else self.element
        ext_val = value.transport(self.tring)
        out = self.poly.substitute(self.tname, ext_val)
        return out.transport(ring)

    def __repr__(self):
        return f"<minpoly {self.poly} of {self.element}>"


def _u_indices(ring, u_vars):
    return frozenset(ring.index(v) if isinstance(v, str) else v for v in u_vars)


def minimal_polynomial(element, ideal, u_vars=(), collect=None):
    """Minimal polynomial of `element` modulo a zero-dimensional ideal over Q(U).

    Exact linear algebra over the function field on the standard-monomial
    coordinates of the normal forms of successive powers.  Pseudo-reduction
    multipliers land in `collect` when given."""
    ring = ideal.ring
    u_idx = _u_indices(ring, u_vars)
    rest = frozenset(range(ring.nnames)) - u_idx
    order = ring.elimination_order(rest)
    gb = list(ideal.groebner(order))
    if len(gb) == 1 and gb[0].is_constant():
        raise CpdsError("minimal polynomial modulo the unit ideal")
    std = quotient_basis(ideal, rest, order)  # raises NotZeroDimensional
    one = Polynomial.constant(ring, 1)
    rows = []
    w, den = one, one
    k = 0
    while True:
        coords = {}
        for mm, coeff in w.main_groups(rest).items():
            coords[mm] = RatFunc(coeff, den)
        status, combo, piv = find_linear_dependency(coords, rows, k + 1, ring)
        if status == "dependent":
            return _build_minpoly(element, ideal, u_vars, combo)
        rows.append((piv[0], piv[1], combo))
        k += 1
        if k > len(std) + 1:
            raise CpdsError("power sequence exceeded the quotient dimension")
        w = element * w
        res = pseudo_normal_form(w, gb, order, main=rest, collect=collect)
        w, den = res.remainder, den * res.multiplier


def _build_minpoly(element, ideal, u_vars, combo):
    ring = ideal.ring
    tname = ring.fresh_names(1, "t")[0]
    tring = ring.with_slack((tname,))
    t = Polynomial.variable(tring, tname)
    _, nums = clear_denominators(combo)
    poly = Polynomial.zero(tring)
    for i, c in enumerate(nums):
        poly = poly + c.transport(tring) * t ** i
    poly = poly.primitive_normalize()
    return MinimalPolynomial(element, ideal, u_vars, tname, tring, poly, combo)


def squarefree_minpoly_part(mp):
    """Squarefree part of the cleared minimal polynomial with respect to t."""
    parts = squarefree_decompose(mp.poly, mp.tname)
    out = Polynomial.constant(mp.tring, 1)
    for g, _ in parts.factors:
        out = out * g
    return out.primitive_normalize()


def zerodim_radical_representative(ideal, u_vars=(), collect=None):
    """Generators whose Q(U)-extension is the radical of the extension of I.

    Seidenberg: add the squarefree part of each variable's minimal polynomial
    (denominator-cleared, so only the extension is preserved exactly)."""
    ring = ideal.ring
    u_idx = _u_indices(ring, u_vars)
    rest = sorted(frozenset(range(ring.nnames)) - u_idx)
    gens = list(ideal.generators)
    extra = []
    for i in rest:
        v = Polynomial.variable(ring, ring.names[i])
        mp = minimal_polynomial(v, ideal, u_vars, collect=collect)
        sq = squarefree_minpoly_part(mp)
        if sq.degree_in(mp.tname) < mp.degree:
            extra.append(sq.substitute(mp.tname, v.transport(mp.tring)).transport(ring))
    return Ideal(ring, gens + extra)


def _candidate_elements(ring, rest_indices):
    """Deterministic generic-position candidates: single variables from the
    least significant up, then small integer combinations."""
    names = [ring.names[i] for i in sorted(rest_indices, reverse=True)]
    vs = [Polynomial.variable(ring, nm) for nm in names]
    for v in vs:
        yield v
    coeffs = [1, -1, 2, -2, 3, -3, 4, -4]
    for width in range(2, len(vs) + 1):
        base = vs[:width]
        for c in coeffs:
            g = base[0]
            for j in range(1, width):
                g = g + (c ** j) * base[j]
            yield g


def generic_position_search(ideal, u_vars=(), collect=None,
                            attempts=GENERIC_POSITION_ATTEMPTS):
    """(element g, minpoly of g mod I, radical representative, quotient dim of the radical).

    g is in generic position: the squarefree part of its minimal polynomial
    has degree equal to the Q(U)-linear dimension of the radical quotient."""
    ring = ideal.ring
    u_idx = _u_indices(ring, u_vars)
    rest = frozenset(range(ring.nnames)) - u_idx
    order = ring.elimination_order(rest)
    rad = zerodim_radical_representative(ideal, u_vars, collect=collect)
    qdim = len(quotient_basis(rad, rest, order))
    count = 0
    for g in _candidate_elements(ring, rest):
        count += 1
        if count > attempts:
            break
        mp_rad = minimal_polynomial(g, rad, u_vars, collect=collect)
        if mp_rad.degree == qdim:
            mp = minimal_polynomial(g, ideal, u_vars, collect=collect)
            return g, mp, rad, qdim
    raise GenericPositionFailure(
        f"no generic-position element within {attempts} candidates")


def _contract_back(ideal, u_vars):
    if not u_vars:
        return ideal
    out, _ = contraction(ideal, u_vars)
    return out


def _is_unit_power(poly, base, tname):
    """poly == unit * base**e for some e >= 1 (unit free of t)."""
    dp, db = poly.degree_in(tname), base.degree_in(tname)
    if db == 0 or dp % db:
        return False
    q = exact_divide(poly, base ** (dp // db))
    return q is not None and q.degree_in(tname) == 0


def zerodim_decompose(ideal, u_vars=(), want="primary",
                      bound=KRONECKER_DEGREE_BOUND, collect=None):
    """Prime or primary components of a zero-dimensional ideal over Q(U),
    contracted back to K[A,X] when U is nonempty."""
    if want not in ("prime", "primary"):
        raise ValueError(f"unknown decomposition flavor {want!r}")
    if ideal.is_unit():
        return []
    ring = ideal.ring
    u_names = tuple(v if isinstance(v, str) else ring.names[v] for v in u_vars)
    g, mp, rad, qdim = generic_position_search(ideal, u_names, collect=collect)
    target_mp = minimal_polynomial(g, rad, u_names, collect=collect) \
        if want == "prime" else mp
    tname, tring = target_mp.tname, target_mp.tring
    u_ext = u_names  # same names in the extended ring
    sq = squarefree_minpoly_part(target_mp)
    if is_irreducible(sq, tname, u_ext, bound):
        if want == "prime":
            return [_contract_back(rad, u_names)]
        if not _is_unit_power(target_mp.poly, sq, tname):
            raise CpdsError("squarefree part inconsistent with factorization")
        return [_contract_back(ideal, u_names)]
    fac = factor_over_function_field(target_mp.poly, tname, u_ext, bound)
    pieces = [(mi, ei) for mi, ei in fac.factors if mi.degree_in(tname) > 0]
    comps = []
    if want == "prime":
        for mi, _ in pieces:
            gi = mi.substitute(tname, g.transport(tring)).transport(ring)
            P = Ideal(ring, list(rad.generators) + [gi])
            comps.append(_contract_back(P, u_names))
        return comps
    evals = []
    for mi, ei in pieces:
        evals.append((mi.substitute(tname, g.transport(tring)).transport(ring), ei))
    for idx, (gi, ei) in enumerate(evals):
        Q = Ideal(ring, list(ideal.generators) + [gi ** ei])
        for jdx, (gj, _) in enumerate(evals):
            if jdx != idx:
                Q, _ = saturate(Q, gj)
        comps.append(_contract_back(Q, u_names))
    return comps


# -- GTZ recursion -------------------------------------------------------------


def _gtz(ideal, want, depth, bound):
    if depth > GTZ_DEPTH_CAP:
        raise CpdsError("primary decomposition recursion exceeded its depth cap")
    if ideal.is_unit():
        return []
    dim, mis = dimension_and_mis(ideal)
    u = mis if dim > 0 else ()
    comps = zerodim_decompose(ideal, u, want, bound)
    if dim == 0:
        return comps
    _, h = contraction(ideal, u)
    if h.is_constant():
        return comps
    _, s = saturate(ideal, h)
    if s == 0:
        return comps
    rest = ideal_sum(ideal, Ideal(ideal.ring, [h ** s]))
    return comps + _gtz(rest, want, depth + 1, bound)


class PrimaryComponentSet:
    """Components of a decomposition plus its flavor; recombination is
    guaranteed at construction time for primary decompositions."""

    __slots__ = ("components", "flavor")

    def __init__(self, components, flavor):
        self.components = tuple(components)
        self.flavor = flavor

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def radical_keys(self):
        return sorted(radical(c).key() for c in self.components)

    def __repr__(self):
        return f"<{self.flavor}: {list(self.components)}>"


def primary_decompose(ideal, bound=KRONECKER_DEGREE_BOUND):
    """Minimal primary decomposition over Q, parameters as ordinary variables."""
    if ideal.is_unit():
        raise CpdsError("the unit ideal has no primary decomposition")
    comps = _gtz(ideal, "primary", 0, bound)
    comps = minimality_cleanup_list(comps)
    recon = intersect(comps) if comps else None
    if recon is None or not recon.equals(ideal):
        raise CpdsError("primary decomposition failed to recombine")
    return PrimaryComponentSet(comps, "primary-decomposition")


def minimal_primes(ideal, bound=KRONECKER_DEGREE_BOUND):
    """The minimal primes of I (the prime components of its radical)."""
    if ideal.is_unit():
        return []
    comps = _gtz(ideal, "prime", 0, bound)
    seen = {}
    for c in comps:
        seen.setdefault(c.key(), c)
    unique = list(seen.values())
    out = []
    for i, c in enumerate(unique):
        if any(j != i and c.contains_ideal(unique[j]) and
               not unique[j].contains_ideal(c) for j in range(len(unique))):
            continue  # properly contains another prime: not minimal
        out.append(c)
    out.sort(key=lambda c: c.key())
    return out


def radical(ideal):
    """The radical, by Seidenberg squarefree parts along the GTZ recursion."""
    if ideal.is_unit():
        raise CpdsError("the unit ideal has no radical here")
    dim, mis = dimension_and_mis(ideal)
    if dim == 0:
        return Ideal(ideal.ring,
                     zerodim_radical_representative(ideal, ()).generators)
    rep = zerodim_radical_representative(ideal, mis)
    rad1 = _contract_back(rep, mis)
    _, h = contraction(ideal, mis)
    if h.is_constant():
        return rad1
    _, s = saturate(ideal, h)
    if s == 0:
        return rad1
    rad2 = radical(ideal_sum(ideal, Ideal(ideal.ring, [h ** s])))
    return intersect([rad1, rad2])


def is_primary(ideal, bound=KRONECKER_DEGREE_BOUND):
    """Classify a proper ideal as prime, primary, or neither."""
    if ideal.is_unit():
        raise CpdsError("the unit ideal is neither prime nor primary")
    dim, mis = dimension_and_mis(ideal)
    u = mis if dim > 0 else ()
    if u:
        contracted = _contract_back(ideal, u)
        if not contracted.equals(ideal):
            return "neither"
    g, mp, rad_rep, qdim = generic_position_search(ideal, u)
    sq = squarefree_minpoly_part(mp)
    if not is_irreducible(sq, mp.tname, tuple(u), bound):
        return "neither"
    if mp.degree == sq.degree_in(mp.tname):
        return "prime"
    if _is_unit_power(mp.poly, sq, mp.tname):
        return "primary"
    return "neither"


def minimality_cleanup_list(components):
    """Enforce (M-1) and (M-2): drop redundant components, merge equal radicals."""
    comps = []
    seen = set()
    for c in components:
        if c.is_unit():
            continue
        if c.key() not in seen:
            seen.add(c.key())
            comps.append(c)
    changed = True
    while changed:
        changed = False
        # (M-2) merge components with equal radicals
        by_rad = {}
        for c in comps:
            by_rad.setdefault(radical(c).key(), []).append(c)
        merged = []
        for key in sorted(by_rad):
            group = by_rad[key]
            if len(group) == 1:
                merged.append(group[0])
            else:
                merged.append(intersect(group))
                changed = True
        comps = merged
        # (M-1) drop a component containing the intersection of the others
        if len(comps) > 1:
            for i, c in enumerate(comps):
                others = comps[:i] + comps[i + 1:]
                inter = others[0] if len(others) == 1 else intersect(others)
                if c.contains_ideal(inter):
                    comps = others
                    changed = True
                    break
    comps.sort(key=lambda c: c.key())
    return comps


def minimality_cleanup(component_set):
    comps = minimality_cleanup_list(list(component_set.components))
    return PrimaryComponentSet(comps, component_set.flavor)
