"""Exact factorization: univariate over Q (Zassenhaus), multivariate gcd,
squarefree decomposition, and factorization over rational function fields Q(U)
via Kronecker substitution with certified trial division."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import gcd as int_gcd, isqrt

from .errors import CpdsError, KroneckerBound
from .poly import Polynomial, exact_divide
from .ring import Monomial

KRONECKER_DEGREE_BOUND = 64
_CZ_SEED = 0x5EED0C9D


class Factorization:
    """unit * prod(factor^multiplicity) reconstructs the input exactly.

    The unit is a polynomial supported on the coefficient field's variables
    (a rational constant in the absolutely univariate case)."""

    __slots__ = ("unit", "factors")

    def __init__(self, unit, factors):
        self.unit = unit
        self.factors = list(factors)

    def reconstruct(self):
        out = self.unit
        for f, e in self.factors:
            out = out * f ** e
        return out

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        parts = " * ".join(f"({f})^{e}" for f, e in self.factors)
        return f"<factorization ({self.unit}) * {parts}>"


# -- dense integer univariate helpers (coefficients low to high) -------------


def _z_strip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _z_deg(a):
    return len(a) - 1


def _z_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _z_strip(out)


def _z_content(a):
    g = 0
    for x in a:
        g = int_gcd(g, x)
    return g or 1


def _z_primitive(a):
    g = _z_content(a)
    if a and a[-1] < 0:
        g = -g
    return [x // g for x in a]


def _z_divmod_exact(a, b):
    """Exact division of integer polynomials; None when not exact."""
    a = list(a)
    if not b:
        raise ZeroDivisionError
    q = [0] * max(len(a) - len(b) + 1, 0)
    while a and len(a) >= len(b):
        if a[-1] % b[-1]:
            return None
        c = a[-1] // b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        _z_strip(a)
    return q if not a else None


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _primes_from(start):
    n = start
    while True:
        if _is_prime(n):
            yield n
        n += 1


# -- arithmetic mod p ---------------------------------------------------------


def _p_norm(a, p):
    a = [x % p for x in a]
    return _z_strip(a)


def _p_mul(a, b, p):
    return _p_norm(_z_mul(a, b), p)


def _p_monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [(x * inv) % p for x in a]


def _p_divmod(a, b, p):
    a = [x % p for x in a]
    b = _p_norm(b, p)
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        if len(a) < len(b) + k:
            continue
        c = (a[len(b) + k - 1] * inv) % p
        if c:
            q[k] = c
            for i, y in enumerate(b):
                a[k + i] = (a[k + i] - c * y) % p
        _z_strip(a)
    return q, a


def _p_gcd(a, b, p):
    a, b = _p_norm(a, p), _p_norm(b, p)
    while b:
        a, b = b, _p_divmod(a, b, p)[1]
    return _p_monic(a, p)


def _p_pow_mod(base, e, mod, p):
    result = [1]
    base = _p_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _p_divmod(_p_mul(result, base, p), mod, p)[1]
        base = _p_divmod(_p_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _p_deriv(a, p):
    return _z_strip([(i * x) % p for i, x in enumerate(a)][1:])


def _p_factor_squarefree_monic(f, p, rng):
    """Irreducible monic factors of a squarefree monic polynomial mod p."""
    # distinct-degree decomposition
    factors = []
    stack = []
    h = [0, 1]  # x
    v = list(f)
    d = 0
    while _z_deg(v) >= 1:
        d += 1
        if 2 * d > _z_deg(v):
            stack.append((v, _z_deg(v)))
            break
        h = _p_pow_mod(h, p, v, p)
        g = _p_gcd(_p_sub(h, [0, 1], p), v, p)
        if _z_deg(g) >= 1:
            stack.append((g, d))
            v = _p_divmod(v, g, p)[0]
            h = _p_divmod(h, v, p)[1]
    # equal-degree splitting (Cantor-Zassenhaus)
    for g, d in stack:
        factors.extend(_p_equal_degree(g, d, p, rng))
    factors.sort(key=lambda a: (len(a), a))
    return factors


def _p_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _z_strip(out)


def _p_equal_degree(f, d, p, rng):
    if _z_deg(f) == d:
        return [_p_monic(f, p)]
    while True:
        r = [rng.randrange(p) for _ in range(_z_deg(f))] + [1]
        if p == 2:  # not reachable: p >= 5
            raise CpdsError("p must be odd")
        g = _p_pow_mod(r, (p ** d - 1) // 2, f, p)
        g = _p_sub(g, [1], p)
        h = _p_gcd(g, f, p)
        if 1 <= _z_deg(h) < _z_deg(f):
            return _p_equal_degree(h, d, p, rng) + \
                _p_equal_degree(_p_divmod(f, h, p)[0], d, p, rng)


# -- Hensel lifting -----------------------------------------------------------


def _m_norm(a, m):
    return _z_strip([x % m for x in a])


def list_add(a, b):
    n = max(len(a), len(b))
    return _z_strip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                     for i in range(n)])


def list_sub(a, b):
    return list_add(a, [-x for x in b])


def _m_divmod(a, b, m):
    """Division with an invertible leading coefficient mod m."""
    a = _m_norm(a, m)
    b = _m_norm(b, m)
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, m)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = (a[-1] * inv) % m
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = (a[k + i] - c * y) % m
        _z_strip(a)
    return _z_strip(q), a


def _hensel_step(m, f, g, h, s, t):
    """One quadratic Hensel step: f = GH mod m**2 with SG + TH = 1 mod m**2."""
    mm = m * m
    e = _m_norm(list_sub(f, _z_mul(g, h)), mm)
    q, r = _m_divmod(_z_mul(s, e), h, mm)
    G = _m_norm(list_add(list_add(g, _z_mul(t, e)), _z_mul(q, g)), mm)
    H = _m_norm(list_add(h, r), mm)
    b = _m_norm(list_sub(list_add(_z_mul(s, G), _z_mul(t, H)), [1]), mm)
    c, d = _m_divmod(_z_mul(s, b), H, mm)
    S = _m_norm(list_sub(s, d), mm)
    T = _m_norm(list_sub(list_sub(t, _z_mul(t, b)), _z_mul(c, G)), mm)
    return G, H, S, T


def _hensel_lift(p, f, f_list, l):
    """Lift f = lc(f)*prod(f_list) mod p to the same shape mod p**l."""
    r = len(f_list)
    lc = f[-1]
    m = p
    k = r // 2
    d = (l - 1).bit_length()
    if r == 1:
        F = _m_norm([x * pow(lc, -1, p ** l) for x in f], p ** l)
        return [F]
    g = [lc % p]
    for fi in f_list[:k]:
        g = _p_mul(g, fi, p)
    h = [1]
    for fi in f_list[k:]:
        h = _p_mul(h, fi, p)
    s, t = _p_xgcd(g, h, p)
    for _ in range(d):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _hensel_lift(p, g, f_list[:k], l) + _hensel_lift(p, h, f_list[k:], l)


def _p_xgcd(a, b, p):
    """s, t with s*a + t*b = 1 mod p for coprime a, b."""
    r0, r1 = _p_norm(a, p), _p_norm(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _p_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _p_sub(s0, _p_mul(q, s1, p), p)
        t0, t1 = t1, _p_sub(t0, _p_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return [(x * inv) % p for x in s0], [(x * inv) % p for x in t0]


# -- Zassenhaus over Z --------------------------------------------------------


def _zassenhaus(f):
    """Irreducible factors of a squarefree integer polynomial, deg >= 1."""
    f = _z_primitive(list(f))
    n = _z_deg(f)
    if n == 1:
        return [_z_primitive(f)]
    lc = f[-1]
    rng = random.Random(_CZ_SEED)
    for p in _primes_from(5):
        if lc % p == 0:
            continue
        fp = _p_norm(f, p)
        if _z_deg(fp) != n:
            continue
        if _z_deg(_p_gcd(fp, _p_deriv(fp, p), p)) != 0:
            continue
        break
    modular = _p_factor_squarefree_monic(_p_monic(fp, p), p, rng)
    if len(modular) == 1:
        return [_z_primitive(f)]
    # Mignotte-style bound on factor coefficients (times lc)
    height = max(abs(x) for x in f)
    B = (isqrt(n + 1) + 1) * (1 << n) * height * abs(lc)
    l = 1
    while p ** l < 2 * B + 1:
        l += 1
    pl = p ** l
    lifted = _hensel_lift(p, f, modular, l)

    def centered(x):
        x %= pl
        return x - pl if x > pl // 2 else x

    result = []
    T = list(range(len(lifted)))
    rest = list(f)
    s = 1
    while 2 * s <= len(T):
        found = False
        for subset in combinations(T, s):
            g = [rest[-1] % pl]
            for i in subset:
                g = _m_norm(_z_mul(g, lifted[i]), pl)
            g = _z_primitive(_z_strip([centered(x) for x in g]))
            if not g:
                continue
            q = _z_divmod_exact(rest, g)
            if q is not None:
                result.append(g)
                rest = _z_primitive(q)
                T = [i for i in T if i not in subset]
                found = True
                break
        if not found:
            s += 1
    if _z_deg(rest) >= 1:
        result.append(_z_primitive(rest))
    result.sort(key=lambda a: (len(a), a))
    return result


# -- conversions between Polynomial and dense forms ---------------------------


def _poly_to_dense_q(f, idx):
    """Dense Fraction coefficient list of a univariate polynomial."""
    coeffs = {}
    for m, c in f.terms.items():
        if any(i != idx for i, _ in m.exps):
            raise CpdsError("polynomial is not univariate in the requested variable")
        coeffs[m.degree_in(idx)] = coeffs.get(m.degree_in(idx), Fraction(0)) + c
    n = max(coeffs, default=0)
    return [coeffs.get(i, Fraction(0)) for i in range(n + 1)]


def _dense_to_poly(ring, idx, coeffs):
    return Polynomial(ring, {Monomial.variable(idx, i) if i else Monomial.ONE:
                             Fraction(c) for i, c in enumerate(coeffs) if c})


def _clear_denominators(coeffs):
    den = 1
    for c in coeffs:
        den = den * c.denominator // int_gcd(den, c.denominator)
    return [int(c * den) for c in coeffs]


# -- multivariate gcd ---------------------------------------------------------


def _coeff_list(f, idx):
    """f as a dense list of coefficient Polynomials in the variable idx."""
    ring = f.ring
    groups = {}
    for m, c in f.terms.items():
        e = m.degree_in(idx)
        rest = Monomial((i, x) for i, x in m.exps if i != idx)
        groups.setdefault(e, {})[rest] = groups.setdefault(e, {}).get(rest, Fraction(0)) + c
    n = max(groups, default=0)
    return [Polynomial(ring, groups.get(i, {})) for i in range(n + 1)]


def _from_coeff_list(ring, idx, coeffs):
    out = Polynomial.zero(ring)
    xi = Polynomial(ring, {Monomial.variable(idx): Fraction(1)})
    for i, c in enumerate(coeffs):
        if not c.is_zero():
            out = out + c * xi ** i
    return out


def multivariate_gcd(f, g):
    """Greatest common divisor over Q, primitive-normalized."""
    if f.is_zero() and g.is_zero():
        raise CpdsError("gcd(0, 0) is undefined")
    if f.is_zero():
        return g.primitive_normalize()
    if g.is_zero():
        return f.primitive_normalize()
    ring = f.ring
    ring.same(g.ring)
    support = f.support_indices() | g.support_indices()
    if not support:
        return Polynomial.constant(ring, 1)
    idx = max(support)
    fc, gc = _coeff_list(f, idx), _coeff_list(g, idx)
    if len(fc) == 1 or len(gc) == 1:
        # one argument is free of the main variable: gcd with the content
        cont = fc[0] if len(fc) == 1 else gc[0]
        other = g if len(fc) == 1 else f
        acc = cont
        for c in _coeff_list(other, idx):
            if acc.is_constant():
                break
            if not c.is_zero():
                acc = multivariate_gcd(acc, c)
        return acc.primitive_normalize()

    def content(coeffs):
        acc = None
        for c in coeffs:
            if c.is_zero():
                continue
            acc = c if acc is None else multivariate_gcd(acc, c)
            if acc.is_constant():
                break
        return acc.primitive_normalize()

    def divide_out(coeffs, d):
        return [exact_divide(c, d) if not c.is_zero() else c for c in coeffs]

    cf, cg = content(fc), content(gc)
    a = divide_out(fc, cf)
    b = divide_out(gc, cg)
    cont_gcd = multivariate_gcd(cf, cg)

    def prem(u, v):
        """Pseudo-remainder of coefficient lists in the main variable."""
        u = list(u)
        dv = len(v) - 1
        lv = v[-1]
        while len(u) - 1 >= dv and any(not c.is_zero() for c in u):
            while u and u[-1].is_zero():
                u.pop()
            if len(u) - 1 < dv:
                break
            lu = u[-1]
            shift = len(u) - 1 - dv
            u = [c * lv for c in u]
            for i, vc in enumerate(v):
                u[shift + i] = u[shift + i] - lu * vc
            while u and u[-1].is_zero():
                u.pop()
        return u

    if len(a) < len(b):
        a, b = b, a
    while True:
        while b and b[-1].is_zero():
            b.pop()
        if not b or all(c.is_zero() for c in b):
            break
        r = prem(a, b)
        a, b = b, r
        if b:
            cb = content([c for c in b if not c.is_zero()]) if any(not c.is_zero() for c in b) else None
            if cb is not None:
                b = divide_out(b, cb)
    if len(a) == 1 or all(c.is_zero() for c in a[1:]):
        gcd_pp = Polynomial.constant(ring, 1)
    else:
        ca = content([c for c in a if not c.is_zero()])
        a = divide_out(a, ca)
        gcd_pp = _from_coeff_list(ring, idx, a)
    return (cont_gcd * gcd_pp).primitive_normalize()


def squarefree_part(f):
    """f divided by the gcd with all its partial derivatives."""
    if f.is_zero():
        raise CpdsError("zero polynomial has no squarefree part")
    g = f
    for i in sorted(f.support_indices()):
        d = f.derivative(i)
        if d.is_zero():
            continue
        g = multivariate_gcd(g, d)
        if g.is_constant():
            break
    if g.is_constant():
        return f.primitive_normalize()
    return exact_divide(f, g).primitive_normalize()


# -- squarefree decomposition with respect to a main variable ----------------


def squarefree_decompose(f, main):
    """Musser decomposition f = unit * prod(part_i ^ i) with squarefree parts.

    Coefficients may involve other variables; parts are primitive and the
    reconstruction identity is exact."""
    if f.is_zero():
        raise CpdsError("zero polynomial has no squarefree decomposition")
    ring = f.ring
    idx = ring.index(main) if isinstance(main, str) else main
    if f.degree_in(idx) <= 0:
        return Factorization(f, [])
    fp = f.primitive_normalize()
    deriv = fp.derivative(idx)
    c = multivariate_gcd(fp, deriv)
    w = exact_divide(fp, c).primitive_normalize()
    parts = []
    i = 1
    while not (w.degree_in(idx) <= 0):
        y = multivariate_gcd(w, c)
        z = exact_divide(w, y).primitive_normalize()
        if z.degree_in(idx) > 0:
            parts.append((z, i))
        i += 1
        w = y.primitive_normalize()
        c = exact_divide(c, y)
    prod = Polynomial.constant(ring, 1)
    for g, e in parts:
        prod = prod * g ** e
    unit = exact_divide(f, prod)
    if unit is None:
        raise CpdsError("squarefree reconstruction failed")
    return Factorization(unit, parts)


# -- univariate factorization over Q ------------------------------------------


def factor_univariate_int(coeffs):
    """Factor an integer coefficient list; returns (unit, [(dense, mult)])."""
    coeffs = _z_strip(list(coeffs))
    if not coeffs:
        raise CpdsError("cannot factor zero")
    cont = _z_content(coeffs)
    if coeffs[-1] < 0:
        cont = -cont
    prim = [x // cont for x in coeffs]
    if _z_deg(prim) == 0:
        return cont, []
    # squarefree decomposition via Yun over Z (primitive parts)
    result = []

    def yun(a):
        da = _z_strip([i * x for i, x in enumerate(a)][1:])
        g = _z_primitive_gcd(a, da)
        b = _z_divmod_exact(a, g)
        c = _z_divmod_exact(da, g)
        d = _z_strip([x - y for x, y in zip(c + [0] * len(b), _z_strip([i * q for i, q in enumerate(b)][1:]) + [0] * len(c))][:max(len(c), len(b))])
        i = 1
        while _z_deg(b) >= 1:
            acm = _z_primitive_gcd(b, d)
            if _z_deg(acm) >= 1:
                result.append((acm, i))
            b = _z_divmod_exact(b, acm)
            c = _z_divmod_exact(d, acm)
            db = _z_strip([k * x for k, x in enumerate(b)][1:])
            d = _z_strip([x - y for x, y in zip(c + [0] * len(db), db + [0] * len(c))][:max(len(c), len(db), 1)])
            i += 1

    yun(prim)
    factors = []
    for part, mult in result:
        for irr in _zassenhaus(part):
            factors.append((irr, mult))
    factors.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return cont, factors


def _z_primitive_gcd(a, b):
    """gcd of integer polynomials via a primitive PRS, positive leading coeff."""
    a, b = _z_strip(list(a)), _z_strip(list(b))
    if not a:
        return _z_primitive(b) if b else [1]
    if not b:
        return _z_primitive(a)
    ca, cb = _z_content(a), _z_content(b)
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    if len(a) < len(b):
        a, b = b, a
    while b:
        # pseudo-remainder
        r = list(a)
        while r and len(r) >= len(b):
            lead = r[-1]
            lb = b[-1]
            shift = len(r) - len(b)
            r = [x * lb for x in r]
            for i, y in enumerate(b):
                r[shift + i] -= lead * y
            _z_strip(r)
        a, b = b, _z_primitive(r) if r else []
    g = _z_primitive(a)
    gc = int_gcd(ca, cb)
    return _z_strip([x * gc for x in g]) if _z_deg(g) == 0 else g


def factor_univariate_q(f, var=None):
    """Irreducible factorization over Q of a univariate polynomial."""
    if f.is_zero():
        raise CpdsError("cannot factor zero")
    ring = f.ring
    support = f.support_indices()
    if var is None:
        if len(support) != 1:
            raise CpdsError("polynomial is not univariate")
        idx = next(iter(support))
    else:
        idx = ring.index(var) if isinstance(var, str) else var
    dense = _poly_to_dense_q(f, idx)
    den = 1
    for c in dense:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in dense]
    cont, parts = factor_univariate_int(ints)
    unit = Polynomial.constant(ring, Fraction(cont, den))
    factors = [(_dense_to_poly(ring, idx, g), e) for g, e in parts]
    return Factorization(unit, factors)


# -- Kronecker factorization over Q(U) -----------------------------------------


def _kronecker_image_degree(f, var_order):
    degs = [f.degree_in(i) for i in var_order]
    D = max(degs) + 1
    top = 0
    for m, _ in f.terms.items():
        val = 0
        for k, i in enumerate(var_order):
            val += m.degree_in(i) * D ** k
        top = max(top, val)
    return D, top


def _kronecker_encode(f, var_order, D):
    out = {}
    for m, c in f.terms.items():
        val = 0
        for k, i in enumerate(var_order):
            val += m.degree_in(i) * D ** k
        out[val] = out.get(val, Fraction(0)) + c
    n = max(out, default=0)
    return [out.get(i, Fraction(0)) for i in range(n + 1)]


def _kronecker_decode(ring, dense, var_order, D):
    terms = {}
    for j, c in enumerate(dense):
        if not c:
            continue
        digits = []
        v = j
        for _ in var_order:
            digits.append(v % D)
            v //= D
        if v:
            return None
        m = Monomial((i, d) for i, d in zip(var_order, digits) if d)
        terms[m] = terms.get(m, Fraction(0)) + Fraction(c)
    return Polynomial(ring, terms)


def _specialization_attempts(count, span=9):
    rng = random.Random(_CZ_SEED ^ 0xA5A5)
    seen = set()
    vals = [1, -1, 2, -2, 3, -3]
    while len(seen) < count:
        if vals:
            v = vals.pop(0)
        else:
            v = rng.randint(-span, span) or 1
        if v not in seen:
            seen.add(v)
            yield v


def _descent_irreducible(f, main_idx, u_indices, bound, depth=0):
    """True when some degree-preserving specialization certifies irreducibility.

    Irreducibility lifts from specializations of the function-field variables,
    so a single good witness is a proof; None means undecided."""
    ring = f.ring
    lc = _coeff_list(f, main_idx)[-1]
    if not u_indices:
        return len(_zassenhaus(_clear_denominators(_poly_to_dense_q(f, main_idx)))) == 1
    # try eliminating all but one U variable, then recurse
    keep = min(u_indices)
    others = [i for i in u_indices if i != keep]
    if not others:
        D, top = _kronecker_image_degree(f, [main_idx, keep])
        if top <= bound:
            return len(_kronecker_irreducibles(f, [main_idx, keep], D)) == 1
        return None
    for trial in _specialization_attempts(8):
        subs = {ring.names[i]: Fraction(trial + k) for k, i in enumerate(others)}
        img = f
        for name, val in subs.items():
            img = img.substitute(name, val)
        lcv = lc
        for name, val in subs.items():
            lcv = lcv.substitute(name, val)
        if lcv.is_zero():
            continue
        sq = multivariate_gcd(img, img.derivative(main_idx))
        if not sq.is_constant():
            continue  # specialization lost squarefreeness; no information
        sub = _descent_irreducible(img, main_idx, frozenset([keep]), bound, depth + 1)
        if sub is True:
            return True
    return None


def _kronecker_irreducibles(f, var_order, D):
    """Irreducible factors over Q(U) of a primitive squarefree-in-main poly."""
    ring = f.ring
    main_idx = var_order[0]
    dense = _kronecker_encode(f, var_order, D)
    ints = _clear_denominators(dense)
    _, image_factors = factor_univariate_int(ints)
    pool = []
    for g, e in image_factors:
        pool.extend([g] * e)
    pool.sort(key=lambda a: (len(a), a))
    found = []
    remaining = f.primitive_normalize()
    s = 1
    while pool and remaining.degree_in(main_idx) > 0:
        if 2 * s > len(pool):
            break
        progressed = False
        for subset in combinations(range(len(pool)), s):
            prod = [1]
            for i in subset:
                prod = _z_mul(prod, pool[i])
            cand = _kronecker_decode(ring, prod, var_order, D)
            if cand is None or cand.degree_in(main_idx) <= 0:
                continue
            cand = cand.primitive_normalize()
            q = exact_divide(remaining, cand)
            if q is not None:
                found.append(cand)
                remaining = q.primitive_normalize()
                pool = [g for i, g in enumerate(pool) if i not in subset]
                progressed = True
                break
        if not progressed:
            s += 1
    if remaining.degree_in(main_idx) > 0:
        found.append(remaining.primitive_normalize())
    return found


def factor_over_function_field(f, main, u_vars, bound=KRONECKER_DEGREE_BOUND):
    """Irreducible factorization of f in Q(U)[main]; factors are primitive
    polynomials in Q[U][main], the unit is the content in Q[U]."""
    ring = f.ring
    main_idx = ring.index(main) if isinstance(main, str) else main
    u_indices = frozenset(ring.index(v) if isinstance(v, str) else v for v in u_vars)
    if f.is_zero():
        raise CpdsError("cannot factor zero")
    extra = f.support_indices() - u_indices - {main_idx}
    if extra:
        names = [ring.names[i] for i in sorted(extra)]
        raise CpdsError(f"coefficients involve variables outside Q(U): {names}")
    if f.degree_in(main_idx) <= 0:
        return Factorization(f, [])
    sqf = squarefree_decompose(f, main_idx)
    factors = []
    for part, mult in sqf.factors:
        pu = sorted(part.support_indices() & u_indices)
        if part.degree_in(main_idx) == 1:
            factors.append((part, mult))
            continue
        if not pu:
            for g, e in factor_univariate_q(part, main_idx).factors:
                factors.append((g, e * mult))
            continue
        var_order = [main_idx] + pu
        D, top = _kronecker_image_degree(part, var_order)
        if top > bound:
            if _descent_irreducible(part, main_idx, frozenset(pu), bound) is True:
                factors.append((part, mult))
                continue
            raise KroneckerBound(top, bound)
        for g in _kronecker_irreducibles(part, var_order, D):
            factors.append((g, mult))
    prod = Polynomial.constant(ring, 1)
    for g, e in factors:
        prod = prod * g ** e
    unit = exact_divide(f, prod)
    if unit is None or (unit.support_indices() - u_indices):
        raise CpdsError("function-field factorization failed to reconstruct")
    factors.sort(key=lambda t: (t[0].total_degree(), str(t[0])))
    return Factorization(unit, factors)


def is_irreducible(f, main, u_vars, bound=KRONECKER_DEGREE_BOUND):
    """Certified irreducibility over Q(U) (over Q when U is empty)."""
    ring = f.ring
    main_idx = ring.index(main) if isinstance(main, str) else main
    u_indices = frozenset(ring.index(v) if isinstance(v, str) else v for v in u_vars)
    if f.degree_in(main_idx) <= 0:
        return False
    fp = f.primitive_normalize()
    if fp.degree_in(main_idx) == 1:
        return True
    g = multivariate_gcd(fp, fp.derivative(main_idx))
    if not g.is_constant():
        return False
    pu = frozenset(fp.support_indices() & u_indices)
    verdict = _descent_irreducible(fp, main_idx, pu, bound)
    if verdict is not None:
        return verdict
    fac = factor_over_function_field(fp, main_idx, u_indices, bound)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1
