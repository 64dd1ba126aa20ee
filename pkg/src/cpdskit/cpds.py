"""Comprehensive primary decomposition systems: stability certificates,
filtered decompositions, the feasible and minimal-feasible algorithms,
Hilbert-subset certificates, and point-wise verification.

The recursion follows the stratify-decompose-certify scheme: split the
condition ideal's radical into primes H, decompose I+H, filter the components
whose condition-ideal radical equals H, certify stability on V(H) \\ V(J) via
traced Groebner runs, and recurse on I+J.  Termination rests on the strict
ascent J properly containing H.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CpdsError, GenericPositionFailure, KroneckerBound
from .factor import KRONECKER_DEGREE_BOUND, is_irreducible, multivariate_gcd
from .funcfield import RatFunc, clear_denominators
from .groebner import (StabilityTrace, groebner_basis, normal_form,
                       pseudo_normal_form, traced_groebner_basis)
from .ideals import (Ideal, condition_ideal, dimension_and_mis, ideal_sum,
                     inclusion_test, intersect, quotient_basis, saturate,
                     unit_ideal)
from .poly import Polynomial
from .primdec import (MinimalPolynomial, PrimaryComponentSet,
                      generic_position_search, is_primary, minimal_polynomial,
                      minimal_primes, primary_decompose, radical)
from .strata import ConstructibleSet, LocallyClosedSet

CPDS_DEPTH_CAP = 24
POWER_MEMBERSHIP_CAP = 24


class HilbertCertificate:
    """Local MIS and denominator-cleared local minimal polynomial of a component."""

    __slots__ = ("component_index", "mis", "minpoly", "tname", "tring")

    def __init__(self, component_index, mis, minpoly, tname, tring):
        self.component_index = component_index
        self.mis = tuple(mis)
        self.minpoly = minpoly
        self.tname = tname
        self.tring = tring

    def __repr__(self):
        return f"<hilbert #{self.component_index} U={list(self.mis)} f={self.minpoly}>"


class Segment:
    """A constructible cell with the component list valid over it."""

    __slots__ = ("cell", "components", "hilbert")

    def __init__(self, cell, components, hilbert=None):
        self.cell = cell
        self.components = tuple(components)
        self.hilbert = tuple(hilbert) if hilbert is not None else None

    def is_unit_segment(self):
        return len(self.components) == 1 and self.components[0].is_unit()

    def __repr__(self):
        return f"({self.cell!r}, {list(self.components)!r})"


class CPDS:
    """Source ideal, flavor, and the list of certified segments."""

    __slots__ = ("source", "flavor", "segments")

    def __init__(self, source, flavor, segments):
        self.source = source
        self.flavor = flavor
        self.segments = list(segments)

    def __iter__(self):
        return iter(self.segments)

    def __len__(self):
        return len(self.segments)

    def __repr__(self):
        body = ",\n  ".join(repr(s) for s in self.segments)
        return f"<{self.flavor} CPDS of {self.source!r}:\n  {body}>"


# -- filtered primary decomposition ---------------------------------------------


def _cond_radical_key(ideal):
    cond = condition_ideal(ideal)
    if cond.is_zero():
        return ()
    return radical(cond).key()


def filtered_pd(ideal, component_set):
    """Components whose condition-ideal radical matches the ideal's own.

    Never empty for a genuine decomposition of an ideal with prime condition
    ideal; an empty result signals an upstream bug."""
    comps = list(component_set)
    target = _cond_radical_key(ideal)
    keyed = [(q, _cond_radical_key(q)) for q in comps]
    kept = [q for q, k in keyed if k == target]
    if not kept:
        raise CpdsError("filtered primary decomposition is empty")
    dropped = [q for q, k in keyed if k != target]
    return PrimaryComponentSet(kept, component_set.flavor), dropped


def _param_ideal(ring, gens):
    return Ideal(ring, gens)


def _finalized(trace):
    return Ideal(trace.ring, trace.finalize_gens())


def _param_intersect(ideals):
    ideals = [i for i in ideals if not i.is_unit()]
    if not ideals:
        return None  # the unit ideal
    if len(ideals) == 1:
        return ideals[0]
    return intersect(ideals)


def _assert_strictly_above(J, H):
    """J must properly contain H (termination guard)."""
    gbH = list(H.groebner()) if not H.is_zero() else []
    for g in J.groebner():
        if not normal_form(g, gbH).is_zero():
            return
    raise CpdsError("stability ideal J does not properly contain the stratum")


def pd2_stability(ideal, all_components, kept_components, dropped, stratum):
    """The exceptional ideal J for condition (PD-2) on V(H) \\ V(J).

    Traced slack-variable Groebner run for the intersection of all
    components, intersected with the condition ideals of the filtered-out
    ones."""
    ring = ideal.ring
    trace = StabilityTrace(ring, stratum.generators)
    inter, trace = intersect(list(all_components), trace=trace)
    if not inter.equals(ideal):
        raise CpdsError("components do not intersect to the decomposed ideal")
    pieces = [_finalized(trace)]
    for q in dropped:
        pieces.append(condition_ideal(q))
    J = _param_intersect(pieces) or unit_ideal(ring)
    _assert_strictly_above(J, stratum)
    cell = LocallyClosedSet(stratum, J)
    if not stratum.is_zero() and cell.is_empty_over_c():
        raise CpdsError("stability cell is empty over C (certificate broke)")
    return J


def noninclusion_certificate(i1, i2, stratum):
    """J with specialize(I1) not inside specialize(I2) off V(J), per the
    pseudo-reduction witness construction (I2 primary, prime condition)."""
    ring = i1.ring
    trace = StabilityTrace(ring, stratum.generators)
    gb2, trace = traced_groebner_basis(list(i2.generators), trace)
    witness = None
    for g in i1.generators:
        if not normal_form(g, gb2).is_zero():
            witness = g
            break
    if witness is None:
        raise CpdsError("noninclusion certificate requires I1 not inside I2")
    res, trace = pseudo_normal_form(witness, gb2, trace=trace, param_reduce=True)
    rem = res.remainder
    if rem.is_zero():
        raise CpdsError("pseudo-remainder vanished although membership fails")
    coeffs = [c for c in rem.main_groups().values() if not c.is_zero()]
    j2 = Ideal(ring, coeffs + list(stratum.generators))
    J = _param_intersect([_finalized(trace), j2]) or unit_ideal(ring)
    _assert_strictly_above(J, stratum)
    return J


def _power_membership(g, ideal, cap=POWER_MEMBERSHIP_CAP):
    gb = list(ideal.groebner())
    h = g
    for _ in range(cap):
        if normal_form(h, gb).is_zero():
            return True
        h = h * g
    return False


def _bezout_constant_factor(mp):
    """Nonvanishing certificate for squarefreeness of a cleared minimal
    polynomial: the constant (in t) ending the Euclidean remainder sequence
    of (m, dm/dt) over the coefficient field."""
    tname = mp.tname
    tring = mp.tring
    tidx = tring.index(tname)
    m = mp.poly

    def dense(p):
        groups = {}
        for mono, c in p.terms.items():
            e = mono.degree_in(tidx)
            rest = mono.div(mono.restrict({tidx}))
            groups.setdefault(e, {})[rest] = groups.setdefault(e, {}).get(rest, Fraction(0)) + c
        n = max(groups, default=0)
        return [Polynomial(tring, groups.get(i, {})) for i in range(n + 1)]

    a = [RatFunc(c) for c in dense(m)]
    b = [RatFunc(c) for c in dense(m.derivative(tname))]

    def strip(v):
        while v and v[-1].is_zero():
            v.pop()
        return v

    a, b = strip(a), strip(b)
    while len(b) > 1:
        # remainder of a by b over the coefficient field
        r = list(a)
        while len(r) >= len(b):
            f = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, bc in enumerate(b):
                r[shift + i] = r[shift + i] - f * bc
            strip(r)
            if not r:
                break
        a, b = b, strip(r)
    if not b:
        return None  # not squarefree at all: no certificate
    return b[0].num


def radical_stability_certificate(component, comp_radical, stratum,
                                  bound=KRONECKER_DEGREE_BOUND):
    """J certifying specialize(radical(Q)) == radical(specialize(Q)) off V(J).

    Conditions collected: stable Groebner bases of Q and its radical,
    bounded-power membership of the radical's generators (unconditional),
    degree- and squarefreeness-stability of the variable minimal polynomials
    of the radical over Q(U), and stability of the contraction saturations.
    """
    ring = component.ring
    trace = StabilityTrace(ring, stratum.generators)
    _, trace = traced_groebner_basis(list(component.generators), trace)
    _, trace = traced_groebner_basis(list(comp_radical.generators), trace)
    for g in comp_radical.generators:
        if not _power_membership(g, component):
            raise CpdsError("radical generator has no bounded power in the component")
    dim, mis = dimension_and_mis(comp_radical)
    u_names = tuple(mis) + tuple(a for a in ring.parameters if a not in mis)
    u_idx = frozenset(ring.index(v) for v in u_names)
    rest = sorted(frozenset(range(ring.nnames)) - u_idx)
    for i in rest:
        v = Polynomial.variable(ring, ring.names[i])
        mp = minimal_polynomial(v, comp_radical, u_names)
        lc_t = mp.poly.main_groups({mp.tring.index(mp.tname)})
        tidx = mp.tring.index(mp.tname)
        lead = max(lc_t, key=lambda mono: mono.degree_in(tidx))
        trace = _adding_param_witness(trace, lc_t[lead].transport(ring))
        cert = _bezout_constant_factor(mp)
        if cert is None:
            raise CpdsError("radical minimal polynomial is not squarefree")
        trace = _adding_param_witness(trace, cert.transport(ring))
    if dim > 0:
        from .ideals import contraction
        _, _, trace = contraction(comp_radical, mis, trace)
        comp_dim, comp_mis = dimension_and_mis(component)
        if comp_dim > 0:
            _, _, trace = contraction(component, comp_mis, trace)
    return _finalized(trace)


def _adding_param_witness(trace, poly):
    """Fold the nonvanishing of a (possibly mixed) polynomial into the trace
    via one designated K[A]-coefficient."""
    if poly.is_constant():
        return trace
    ring = trace.ring
    if poly.has_main_part():
        lc, _, _ = poly.leading_data()
        poly = lc
    if poly.is_constant():
        return trace
    return trace.adding(poly)


def minimality_stability(ideal, kept, stratum, bound=KRONECKER_DEGREE_BOUND):
    """J under which conditions (M-1) and (M-2) survive specialization."""
    ring = ideal.ring
    pieces = []
    comps = list(kept)
    r = len(comps)
    if r > 1:
        for i in range(r):
            others = comps[:i] + comps[i + 1:]
            trace = StabilityTrace(ring, stratum.generators)
            n_i, trace = intersect(others, trace=trace)
            pieces.append(_finalized(trace))
            pieces.append(noninclusion_certificate(n_i, comps[i], stratum))
    rads = [radical(q) for q in comps]
    for q, rq in zip(comps, rads):
        pieces.append(radical_stability_certificate(q, rq, stratum, bound))
    for i in range(r):
        for j in range(i + 1, r):
            dir_ij = None
            if not inclusion_test(rads[i], rads[j])[0]:
                dir_ij = noninclusion_certificate(rads[i], rads[j], stratum)
            dir_ji = None
            if not inclusion_test(rads[j], rads[i])[0]:
                dir_ji = noninclusion_certificate(rads[j], rads[i], stratum)
            if dir_ij is None and dir_ji is None:
                raise CpdsError("two components share a radical after cleanup")
            if dir_ij is not None and dir_ji is not None:
                pieces.append(ideal_sum(dir_ij, dir_ji))
            else:
                pieces.append(dir_ij or dir_ji)
    J = _param_intersect(pieces) or unit_ideal(ring)
    _assert_strictly_above(J, stratum)
    return J


# -- the main recursions ----------------------------------------------------------


def _condition_radical_primes(ideal):
    """Minimal primes H_1..H_l of sqrt(I cap K[A]); [<0>] for a generic ideal."""
    ring = ideal.ring
    cond = condition_ideal(ideal)
    if cond.is_zero():
        return [Ideal(ring, [])]
    primes = minimal_primes(cond)
    return primes if primes else [Ideal(ring, [])]


def _closed_cell(ring, stratum):
    return ConstructibleSet.of_cell(stratum, unit_ideal(ring))


def _try_coalesce(ring, stratum, J, kept, children):
    """Absorb a single full-closed child covering exactly V(J) whose
    components are units on the parent cell; the merged segment certifies
    (PD-2) on all of V(H)."""
    if len(children) != 1:
        return None
    ch = children[0]
    if ch.is_unit_segment() or ch.hilbert is not None:
        return None
    if len(ch.cell.cells) != 1 or not ch.cell.cells[0].is_full_closed():
        return None
    z = ch.cell.cells[0].zero
    if radical(z).key() != radical(J).key():
        return None
    from .ideals import radical_membership
    for q in ch.components:
        cond_q = condition_ideal(q)
        target = ideal_sum(stratum, cond_q) if not stratum.is_zero() else cond_q
        if target.is_zero():
            return None
        for g in J.generators:
            if not radical_membership(g, target):
                return None
    merged = list(kept)
    keys = {q.key() for q in merged}
    for q in ch.components:
        if q.key() not in keys:
            keys.add(q.key())
            merged.append(q)
    return Segment(_closed_cell(ring, stratum), merged)


def _cpds_rec(ideal, minimal, depth, bound):
    if depth > CPDS_DEPTH_CAP:
        raise CpdsError("CPDS recursion exceeded its depth cap")
    if ideal.is_unit():
        return []
    ring = ideal.ring
    segments = []
    for stratum in _condition_radical_primes(ideal):
        with_h = ideal_sum(ideal, stratum) if not stratum.is_zero() else ideal
        if with_h.is_unit():
            # specialization is the unit ideal on all of V(H)
            segments.append(Segment(_closed_cell(ring, stratum),
                                    [unit_ideal(ring)]))
            continue
        decomposition = primary_decompose(with_h, bound)
        kept_set, dropped = filtered_pd(with_h, decomposition)
        kept = [Ideal(ring, q.groebner()) for q in kept_set]
        J = pd2_stability(with_h, list(decomposition), kept, dropped, stratum)
        if minimal:
            Jm = minimality_stability(with_h, kept, stratum, bound)
            J = _param_intersect([J, Jm]) or unit_ideal(ring)
            _assert_strictly_above(J, stratum)
        cell = ConstructibleSet.of_cell(stratum, J)
        seg = Segment(cell, kept)
        nxt = ideal_sum(ideal, J)
        if not any(not normal_form(g, list(ideal.groebner())).is_zero()
                   for g in J.generators):
            raise CpdsError("recursion failed to ascend strictly")
        children = _cpds_rec(nxt, minimal, depth + 1, bound)
        if not minimal:
            merged = _try_coalesce(ring, stratum, J, kept, children)
            if merged is not None:
                segments.append(merged)
                continue
        segments.append(seg)
        segments.extend(children)
    return segments


def _with_outer_unit_segment(ideal, segments):
    """Complete the covering outside V(sqrt(I cap K[A]))."""
    ring = ideal.ring
    cond = condition_ideal(ideal)
    if cond.is_zero():
        return segments
    outside = LocallyClosedSet(Ideal(ring, []), radical(cond))
    if outside.is_empty_over_c():
        return segments
    return segments + [Segment(ConstructibleSet(ring, [outside]),
                               [unit_ideal(ring)])]


def feasible_cpds(ideal, bound=KRONECKER_DEGREE_BOUND):
    """Algorithm: feasible comprehensive primary decomposition system."""
    if ideal.is_unit():
        return CPDS(ideal, "feasible", [])
    segments = _cpds_rec(ideal, False, 0, bound)
    segments = _with_outer_unit_segment(ideal, segments)
    return CPDS(ideal, "feasible", segments)


def minimal_feasible_cpds(ideal, bound=KRONECKER_DEGREE_BOUND):
    """Algorithm: minimal feasible CPDS ((M-1) and (M-2) hold on each cell)."""
    if ideal.is_unit():
        return CPDS(ideal, "minimal-feasible", [])
    segments = _cpds_rec(ideal, True, 0, bound)
    segments = _with_outer_unit_segment(ideal, segments)
    return CPDS(ideal, "minimal-feasible", segments)


# -- Hilbert certificates ----------------------------------------------------------


def _local_mis(component):
    """Local maximal independent set inside X from the main-block leading
    monomials of the default-order basis."""
    ring = component.ring
    order = ring.default_order
    lms = []
    for g in component.groebner():
        if g.has_main_part():
            _, lm, _ = g.leading_data(order)
            lms.append(lm)
    x_indices = sorted(ring.main_indices - frozenset(range(len(ring.slack))))
    from itertools import combinations
    best = ()
    for size in range(len(x_indices), 0, -1):
        found = None
        for combo in combinations(x_indices, size):
            sub = frozenset(combo)
            if all(not (m.support() <= sub) for m in lms):
                found = combo
                break
        if found:
            best = found
            break
    return tuple(ring.names[i] for i in best)


def hilbert_subset(segment, bound=KRONECKER_DEGREE_BOUND):
    """Local MIS and local minimal polynomial certificates per component."""
    certs = []
    for idx, q in enumerate(segment.components):
        if q.is_unit():
            continue
        ring = q.ring
        mis = _local_mis(q)
        u_field = tuple(mis) + tuple(a for a in ring.parameters if a not in mis)
        g, mp, rad_rep, qdim = generic_position_search(q, u_field)
        certs.append(HilbertCertificate(idx, mis, mp.poly, mp.tname, mp.tring))
    return certs


def hilbert_cpds(ideal, bound=KRONECKER_DEGREE_BOUND):
    """Minimal feasible CPDS with Hilbert-subset certificates attached."""
    base = minimal_feasible_cpds(ideal, bound)
    segments = []
    for seg in base.segments:
        if seg.is_unit_segment():
            segments.append(Segment(seg.cell, seg.components, []))
            continue
        certs = hilbert_subset(seg, bound)
        segments.append(Segment(seg.cell, seg.components, certs))
    return CPDS(ideal, "hilbert", segments)


def hilbert_membership(cert, point, bound=KRONECKER_DEGREE_BOUND):
    """True iff the specialized local minimal polynomial stays irreducible
    over Q(U)."""
    tring = cert.tring
    target = tring.without_parameters()
    f = cert.minpoly.specialize(point, target)
    if f.degree_in(cert.tname) <= 0:
        return False
    u_names = [v for v in cert.mis]
    return is_irreducible(f, cert.tname, u_names, bound)


# -- verification -------------------------------------------------------------------


def verify_segment(ideal, segment, point, level="pd2",
                   bound=KRONECKER_DEGREE_BOUND):
    """Check the decomposition conditions at a rational parameter point.

    Levels: pd2 (intersection identity), minimal (adds M-1 and M-2),
    primary (adds primarity of each specialized component).  Returns a
    report dict; 'ok' aggregates the requested level."""
    if not segment.cell.contains_point(point):
        raise CpdsError("the point lies outside the segment cell")
    ring = ideal.ring
    target = ring.without_parameters()
    phi_ideal = ideal.specialize(point, target)
    phi_comps = [q.specialize(point, target) for q in segment.components]
    report = {"point": dict(point), "level": level}
    proper = [c for c in phi_comps if not c.is_unit()]
    inter = intersect(phi_comps) if phi_comps else unit_ideal(target)
    report["pd2"] = inter.equals(phi_ideal)
    ok = report["pd2"]
    if level in ("minimal", "primary"):
        m1 = True
        for i, c in enumerate(phi_comps):
            others = phi_comps[:i] + phi_comps[i + 1:]
            if not others:
                if c.is_unit():
                    m1 = False
                continue
            inter_others = intersect(others)
            if c.contains_ideal(inter_others):
                m1 = False
        rad_keys = [radical(c).key() if not c.is_unit() else ("<1>",)
                    for c in phi_comps]
        m2 = len(set(rad_keys)) == len(rad_keys) and \
            all(not c.is_unit() for c in phi_comps)
        report["m1"] = m1
        report["m2"] = m2
        ok = ok and m1 and m2
    if level == "primary":
        verdicts = []
        for c in phi_comps:
            if c.is_unit():
                verdicts.append("unit")
            else:
                verdicts.append(is_primary(c, bound))
        report["primary"] = verdicts
        ok = ok and all(v in ("prime", "primary", "unit") for v in verdicts)
    report["ok"] = ok
    return report


def covering_is_complete(cpds):
    """Complement of the union of all segment cells is empty over C."""
    ring = cpds.source.ring
    cells = []
    for seg in cpds.segments:
        cells.extend(seg.cell.cells)
    union = ConstructibleSet(ring, cells)
    return union.complement().is_empty_over_c()
