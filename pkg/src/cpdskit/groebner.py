"""Buchberger engine: reduced bases, normal forms, pseudo-reduction, stability traces."""

from __future__ import annotations

from fractions import Fraction

from .errors import CpdsError, StratumSplitNeeded
from .poly import Polynomial
from .ring import Monomial


# -- dense-tuple helpers -----------------------------------------------------

def _t_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _t_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _t_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _t_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _to_dict(p):
    n = p.ring.nnames
    return {m.dense(n): c for m, c in p.terms.items()}


def _to_poly(ring, d):
    return Polynomial(ring, {Monomial((i, e) for i, e in enumerate(m) if e): c
                             for m, c in d.items() if c})


def _normalize_dict(d):
    """Scale to coprime integer coefficients (sign untouched)."""
    if not d:
        return d
    from math import gcd
    num, den = 0, 1
    for c in d.values():
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    s = Fraction(den, num)
    return {m: c * s for m, c in d.items()}


def _lead(d, keyfn):
    return max(d, key=keyfn)


def _reduce_dict(f, basis, keyfn, tail=True):
    """Normal form of the term dict `f` modulo basis [(lm, lc, terms)]."""
    result = {}
    work = dict(f)
    while work:
        m = _lead(work, keyfn)
        c = work.pop(m)
        if not c:
            continue
        hit = None
        for lm, lc, gterms in basis:
            if _t_divides(lm, m):
                hit = (lm, lc, gterms)
                break
        if hit is None:
            result[m] = c
            if not tail:
                result.update(work)
                return result
            continue
        lm, lc, gterms = hit
        q = _t_div(m, lm)
        factor = c / lc
        for gm, gc in gterms.items():
            if gm == lm:
                continue
            mm = _t_mul(gm, q)
            v = work.get(mm, Fraction(0)) - factor * gc
            if v:
                work[mm] = v
            elif mm in work:
                del work[mm]
    return result


def _basis_view(dicts, keyfn):
    out = []
    for d in dicts:
        lm = _lead(d, keyfn)
        out.append((lm, d[lm], d))
    return out


def _update(G, lmG, P, f, keyfn):
    """Gebauer-Moeller pair update when f joins the basis."""
    lmf = _lead(f, keyfn)
    new_idx = len(G)
    # drop pairs whose lcm is a proper multiple of lmf (chain criterion)
    kept = set()
    for i, j in P:
        l = _t_lcm(lmG[i], lmG[j])
        if (not _t_divides(lmf, l)
                or l == _t_lcm(lmG[i], lmf)
                or l == _t_lcm(lmG[j], lmf)):
            kept.add((i, j))
    # candidate pairs with f, minimalized by their lcms
    lcm_of = {i: _t_lcm(lmG[i], lmf) for i in range(len(G))}
    by_lcm = {}
    for i, l in lcm_of.items():
        by_lcm.setdefault(l, []).append(i)
    minimal = []
    for l in sorted(by_lcm, key=keyfn):
        if all(not _t_divides(l2, l) for l2 in minimal):
            minimal.append(l)
    for l in minimal:
        # product criterion: skip if some representative pair is coprime
        if any(_t_mul(lmG[i], lmf) == l for i in by_lcm[l]):
            continue
        kept.add((min(by_lcm[l]), new_idx))
    G.append(f)
    lmG.append(lmf)
    return G, lmG, kept


def groebner_basis(polys, order=None):
    """Reduced Groebner basis of the ideal the polynomials generate.

    Output elements are primitive-normalized with positive leading
    coefficient and sorted by decreasing leading monomial; deterministic for
    a fixed input order.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    ring = polys[0].ring
    for p in polys:
        ring.same(p.ring)
    order = order or ring.default_order
    keyfn = order.key
    seeds = []
    seen = set()
    for p in polys:
        d = _normalize_dict(_to_dict(p))
        lmd = _lead(d, keyfn)
        if d[lmd] < 0:
            d = {m: -c for m, c in d.items()}
        fz = frozenset(d.items())
        if fz not in seen:
            seen.add(fz)
            seeds.append(d)

    G, lmG, P = [], [], set()
    for f in seeds:
        f = _reduce_dict(f, _basis_view(G, keyfn), keyfn)
        if f:
            G, lmG, P = _update(G, lmG, P, _normalize_dict(f), keyfn)
    while P:
        pair = min(P, key=lambda ij: (keyfn(_t_lcm(lmG[ij[0]], lmG[ij[1]])), ij))
        P.discard(pair)
        i, j = pair
        fi, fj = G[i], G[j]
        l = _t_lcm(lmG[i], lmG[j])
        qi, qj = _t_div(l, lmG[i]), _t_div(l, lmG[j])
        ci, cj = fi[lmG[i]], fj[lmG[j]]
        s = {}
        for m, c in fi.items():
            mm = _t_mul(m, qi)
            s[mm] = s.get(mm, Fraction(0)) + c / ci
        for m, c in fj.items():
            mm = _t_mul(m, qj)
            v = s.get(mm, Fraction(0)) - c / cj
            if v:
                s[mm] = v
            elif mm in s:
                del s[mm]
        s = {m: c for m, c in s.items() if c}
        h = _reduce_dict(s, _basis_view(G, keyfn), keyfn)
        if h:
            G, lmG, P = _update(G, lmG, P, _normalize_dict(h), keyfn)

    # minimal basis
    order_idx = sorted(range(len(G)), key=lambda i: keyfn(lmG[i]))
    minimal = []
    for i in order_idx:
        if all(not _t_divides(lmG[j], lmG[i]) for j in minimal):
            minimal.append(i)
    # interreduce
    reduced = []
    chosen = [G[i] for i in minimal]
    for k, g in enumerate(chosen):
        others = _basis_view(chosen[:k] + chosen[k + 1:], keyfn) if len(chosen) > 1 else []
        h = _reduce_dict(g, others, keyfn)
        reduced.append(_normalize_dict(h))
    out = []
    for d in reduced:
        if not d:
            continue
        lm = _lead(d, keyfn)
        if d[lm] < 0:
            d = {m: -c for m, c in d.items()}
        out.append(d)
    out.sort(key=lambda d: keyfn(_lead(d, keyfn)), reverse=True)
    return [_to_poly(ring, d) for d in out]


def normal_form(f, basis, order=None):
    """Unique remainder of f modulo a Groebner basis; zero iff f is a member."""
    if f.is_zero() or not basis:
        return f
    ring = f.ring
    order = order or ring.default_order
    keyfn = order.key
    view = _basis_view([_to_dict(g) for g in basis], keyfn)
    return _to_poly(ring, _reduce_dict(_to_dict(f), view, keyfn))


def spolynomial(f, g, order=None):
    ring = f.ring
    order = order or ring.default_order
    keyfn = order.key
    df, dg = _to_dict(f), _to_dict(g)
    lf, lg = _lead(df, keyfn), _lead(dg, keyfn)
    l = _t_lcm(lf, lg)
    mf = _to_poly(ring, {_t_div(l, lf): 1 / df[lf]})
    mg = _to_poly(ring, {_t_div(l, lg): 1 / dg[lg]})
    return mf * f - mg * g


def is_groebner_basis(basis, order=None):
    """Check that every S-polynomial reduces to zero."""
    if not basis:
        return True
    order = order or basis[0].ring.default_order
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = spolynomial(basis[i], basis[j], order)
            if not normal_form(s, basis, order).is_zero():
                return False
    return True


# -- stability traces ---------------------------------------------------------


class StabilityTrace:
    """Nonvanishing conditions harvested from parametric Groebner runs.

    `base` generates the stratum ideal H in K[A]; `factors` are squarefree
    primitive polynomials in K[A], reduced modulo the basis of H, whose
    nonvanishing was assumed.  finalize() is the paper-style exceptional
    ideal J = <product of factors> + H.
    """

    __slots__ = ("ring", "base", "factors", "_base_gb")

    def __init__(self, ring, base=(), factors=(), _base_gb=None):
        self.ring = ring
        self.base = tuple(base)
        self.factors = tuple(factors)
        self._base_gb = _base_gb

    def base_gb(self):
        if self._base_gb is None:
            self._base_gb = groebner_basis(list(self.base)) if self.base else []
        return self._base_gb

    def adding(self, candidate):
        """New trace with one more nonvanishing requirement."""
        from .factor import squarefree_part
        if candidate.is_zero():
            raise StratumSplitNeeded("vanishing leading coefficient in trace")
        if candidate.is_constant():
            return self
        c = normal_form(candidate, self.base_gb()) if self.base else candidate
        if c.is_zero():
            raise StratumSplitNeeded(
                f"trace factor {candidate} lies in the stratum ideal")
        if c.is_constant():
            return self
        c = squarefree_part(c).primitive_normalize()
        if c in self.factors:
            return self
        return StabilityTrace(self.ring, self.base, self.factors + (c,),
                              self._base_gb)

    def merged(self, other):
        t = self
        for f in other.factors:
            t = t.adding(f)
        return t

    def finalize_gens(self):
        """Generators of J = <prod factors> + H; the empty product is 1."""
        prod = Polynomial.constant(self.ring, 1)
        for f in self.factors:
            prod = prod * f
        return (prod,) + self.base

    def __repr__(self):
        return f"<trace base={list(map(str, self.base))} factors={list(map(str, self.factors))}>"


def traced_groebner_basis(gens, trace, order=None):
    """Reduced basis of <gens> + H together with the harvested trace.

    For every rational point of V(H) avoiding the trace factors, the
    specialized basis is a Groebner basis of the specialized ideal.
    """
    ring = gens[0].ring if gens else trace.ring
    basis = groebner_basis(list(gens) + [b for b in trace.base], order)
    out = trace
    for g in basis:
        if g.has_main_part():
            lc, _, _ = g.leading_data(order)
            out = out.adding(lc)
    return basis, out


# -- pseudo-reduction over the parameter ring ---------------------------------


class PseudoReductionResult:
    """Remainder and K[A]-multiplier of an X-block pseudo-reduction."""

    __slots__ = ("remainder", "multiplier")

    def __init__(self, remainder, multiplier):
        self.remainder = remainder
        self.multiplier = multiplier


def pseudo_normal_form(f, basis, order=None, trace=None, param_reduce=False,
                       main=None, collect=None):
    """Reduce f by the main-block leading terms of `basis`, collecting multipliers.

    multiplier * f - remainder lies in the ideal the basis generates; the
    remainder has no term whose main-block monomial is divisible by a basis
    leading monomial.  The main block defaults to slack plus ordinary
    variables (coefficients in K[A]); another index set realizes reduction
    over K[U].  Collected leading coefficients go to `trace` (K[A] semantics)
    or to the plain list `collect`.  With param_reduce=True the
    coefficient-only basis elements also reduce the remainder's coefficients
    (valid when they belong to the same ideal).
    """
    ring = f.ring
    order = order or ring.default_order
    main_idx = ring.main_indices if main is None else frozenset(main)
    n = ring.nnames
    keyfn = order.key
    reducers = []
    coeff_only = []
    for g in basis:
        if g.is_zero():
            continue
        if any(m.support() & main_idx for m in g.terms):
            lc, lmx, _ = g.leading_data(order, main_idx)
            reducers.append((g, lc, lmx))
        else:
            coeff_only.append(g)
    multiplier = Polynomial.constant(ring, 1)
    work = f
    while not work.is_zero():
        groups = work.main_groups(main_idx)
        target = None
        for mm in sorted(groups, key=lambda m: keyfn(m.dense(n)), reverse=True):
            for g, lc, lmx in reducers:
                if lmx.divides(mm):
                    target = (mm, g, lc, lmx)
                    break
            if target:
                break
        if target is None:
            break
        mm, g, lc, lmx = target
        q = Polynomial(ring, {mm.div(lmx): Fraction(1)})
        cf = groups[mm]
        work = lc * work - cf * q * g
        multiplier = multiplier * lc
        if trace is not None:
            trace = trace.adding(lc)
        if collect is not None and not lc.is_constant():
            collect.append(lc)
    if param_reduce and coeff_only and not work.is_zero():
        work = normal_form(work, groebner_basis(coeff_only, order), order)
    result = PseudoReductionResult(work, multiplier)
    return (result, trace) if trace is not None else result
