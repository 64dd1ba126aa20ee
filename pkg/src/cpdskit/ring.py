"""Ring contexts, sparse monomials, and block monomial orders.

A ring context declares three variable blocks in decreasing significance:
slack variables T, ordinary variables X, and parameters A.  Monomial
comparison is block-by-block; within a block the order is lex by default,
grevlex optionally for the X block.
"""

from __future__ import annotations

from .errors import RingMismatch

LEX = "lex"
GREVLEX = "grevlex"


class BlockOrder:
    """A block monomial order given by (index tuple, style) blocks, most significant first."""

    __slots__ = ("blocks", "_hash")

    def __init__(self, blocks):
        self.blocks = tuple((tuple(ix), style) for ix, style in blocks)
        self._hash = hash(self.blocks)

    def key(self, dense):
        """Sort key for a dense exponent tuple; larger key means larger monomial."""
        parts = []
        for indices, style in self.blocks:
            exps = tuple(dense[i] for i in indices)
            if style == LEX:
                parts.append(exps)
            else:
                parts.append((sum(exps),) + tuple(-e for e in reversed(exps)))
        return tuple(parts)

    def __eq__(self, other):
        return isinstance(other, BlockOrder) and self.blocks == other.blocks

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"BlockOrder({self.blocks!r})"


class RingContext:
    """Declared polynomial ring Q[T, X, A] with a block order T >> X >> A."""

    __slots__ = ("slack", "variables", "parameters", "names", "_index",
                 "var_order", "param_order", "default_order", "param_indices",
                 "main_indices", "_cache")

    def __init__(self, variables, parameters=(), slack=(), var_order=LEX,
                 param_order=LEX):
        self.slack = tuple(slack)
        self.variables = tuple(variables)
        self.parameters = tuple(parameters)
        names = self.slack + self.variables + self.parameters
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate names in ring declaration: {names}")
        if not self.variables:
            raise ValueError("a ring needs at least one ordinary variable")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        self.var_order = var_order
        self.param_order = param_order
        ns, nv = len(self.slack), len(self.variables)
        blocks = []
        if ns:
            blocks.append((range(0, ns), LEX))
        blocks.append((range(ns, ns + nv), var_order))
        if self.parameters:
            blocks.append((range(ns + nv, len(names)), param_order))
        self.default_order = BlockOrder(blocks)
        self.param_indices = frozenset(range(ns + nv, len(names)))
        self.main_indices = frozenset(range(0, ns + nv))
        self._cache = {}

    @property
    def nnames(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r} in ring {self}") from None

    def is_param(self, i):
        return i in self.param_indices

    def same(self, other):
        if self is not other and self.names != getattr(other, "names", None):
            raise RingMismatch(f"ring mismatch: {self} vs {other}")

    # -- derived rings ----------------------------------------------------

    def with_slack(self, extra):
        """New ring with additional slack names prepended (most significant)."""
        key = ("slack", tuple(extra))
        if key not in self._cache:
            self._cache[key] = RingContext(self.variables, self.parameters,
                                           tuple(extra) + self.slack,
                                           self.var_order, self.param_order)
        return self._cache[key]

    def without_parameters(self):
        """The specialization target ring Q[T, X]."""
        key = ("noparams",)
        if key not in self._cache:
            self._cache[key] = RingContext(self.variables, (), self.slack,
                                           self.var_order, self.param_order)
        return self._cache[key]

    def fresh_names(self, count, stem="t"):
        """`count` identifiers not colliding with declared names."""
        out, k = [], 1
        while len(out) < count:
            cand = f"{stem}{k}"
            if cand not in self._index and cand not in out:
                out.append(cand)
            k += 1
        return tuple(out)

    def elimination_order(self, eliminate):
        """Block order with the given indices dominating all remaining ones."""
        eliminate = frozenset(eliminate)
        key = ("elim", eliminate)
        if key not in self._cache:
            first = [i for i in range(self.nnames) if i in eliminate]
            rest = [i for i in range(self.nnames) if i not in eliminate]
            blocks = []
            if first:
                blocks.append((first, LEX))
            if rest:
                blocks.append((rest, LEX))
            self._cache[key] = BlockOrder(blocks)
        return self._cache[key]

    def contraction_order(self, independent):
        """Block order (everything not in U) >> U used for contraction along U."""
        keep = frozenset(self.index(v) if isinstance(v, str) else v
                         for v in independent)
        return self.elimination_order(frozenset(range(self.nnames)) - keep)

    def __repr__(self):
        parts = []
        if self.slack:
            parts.append("slack " + ",".join(self.slack))
        parts.append("vars " + ",".join(self.variables))
        if self.parameters:
            parts.append("params " + ",".join(self.parameters))
        return f"<ring {'; '.join(parts)}>"


class Monomial:
    """Sparse monomial: sorted tuple of (variable index, positive exponent)."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps=()):
        cleaned = tuple(sorted((i, e) for i, e in exps if e))
        if any(e < 0 for _, e in cleaned):
            raise ValueError(f"negative exponent in {cleaned}")
        self.exps = cleaned
        self._hash = hash(cleaned)

    ONE = None  # set below

    @classmethod
    def variable(cls, i, e=1):
        return cls(((i, e),))

    def degree(self):
        return sum(e for _, e in self.exps)

    def degree_in(self, i):
        for j, e in self.exps:
            if j == i:
                return e
        return 0

    def is_one(self):
        return not self.exps

    def support(self):
        return frozenset(i for i, _ in self.exps)

    def dense(self, n):
        out = [0] * n
        for i, e in self.exps:
            out[i] = e
        return tuple(out)

    def mul(self, other):
        d = dict(self.exps)
        for i, e in other.exps:
            d[i] = d.get(i, 0) + e
        return Monomial(d.items())

    def divides(self, other):
        d = dict(other.exps)
        return all(d.get(i, 0) >= e for i, e in self.exps)

    def div(self, other):
        """self / other; caller must ensure divisibility."""
        d = dict(self.exps)
        for i, e in other.exps:
            d[i] = d.get(i, 0) - e
        return Monomial(d.items())

    def lcm(self, other):
        d = dict(self.exps)
        for i, e in other.exps:
            d[i] = max(d.get(i, 0), e)
        return Monomial(d.items())

    def gcd(self, other):
        d = dict(other.exps)
        return Monomial((i, min(e, d[i])) for i, e in self.exps if i in d)

    def restrict(self, indices):
        """Keep only exponents of the given index set."""
        return Monomial((i, e) for i, e in self.exps if i in indices)

    def split(self, indices):
        """(part inside `indices`, part outside)."""
        ins = [(i, e) for i, e in self.exps if i in indices]
        outs = [(i, e) for i, e in self.exps if i not in indices]
        return Monomial(ins), Monomial(outs)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({self.exps!r})"


Monomial.ONE = Monomial()
