"""Brute-force reference implementations.

Everything here works from an explicit order relation (a set of pairs) or
from raw element tuples, and never touches the library's tables, so the
tests compare two independent computations.
"""

from __future__ import annotations

import itertools
from math import gcd


class Order:
    """A finite poset given by its order relation ``{(x, y) : x <= y}``."""

    def __init__(self, n, rel):
        self.n = n
        self.rel = set(rel)

    @classmethod
    def of(cls, L):
        # read the relation once, through the public predicate
        return cls(L.n, {(x, y) for x in range(L.n) for y in range(L.n) if L.leq(x, y)})

    def le(self, x, y):
        return (x, y) in self.rel

    def glb(self, x, y):
        lower = [z for z in range(self.n) if self.le(z, x) and self.le(z, y)]
        best = [z for z in lower if all(self.le(w, z) for w in lower)]
        return best[0] if len(best) == 1 else None

    def lub(self, x, y):
        upper = [z for z in range(self.n) if self.le(x, z) and self.le(y, z)]
        best = [z for z in upper if all(self.le(z, w) for w in upper)]
        return best[0] if len(best) == 1 else None

    @property
    def bottom(self):
        return next(x for x in range(self.n) if all(self.le(x, y) for y in range(self.n)))

    @property
    def top(self):
        return next(x for x in range(self.n) if all(self.le(y, x) for y in range(self.n)))

    def is_lattice(self):
        return all(self.glb(x, y) is not None and self.lub(x, y) is not None
                   for x in range(self.n) for y in range(self.n))

    def join_of(self, xs):
        acc = self.bottom
        for x in xs:
            acc = self.lub(acc, x)
        return acc

    def below(self, t):
        return [x for x in range(self.n) if self.le(x, t)]

    # -- essentiality, straight from the definitions ----------------------
    def essential_in(self, a, t):
        """``a`` essential in ``[0, t]``: every non-zero ``x <= t`` meets ``a`` non-trivially."""
        z = self.bottom
        return self.le(a, t) and all(x == z or self.glb(a, x) != z for x in self.below(t))

    def closed(self, a):
        return not any(t != a and self.le(a, t) and self.essential_in(a, t) for t in range(self.n))

    def closures(self, a):
        return {t for t in range(self.n) if self.essential_in(a, t) and self.closed(t)}

    def is_uc(self):
        return all(len(self.closures(a)) == 1 for a in range(self.n))

    def is_uniform(self):
        z, top = self.bottom, self.top
        return all(x == z or self.essential_in(x, top) for x in range(self.n))

    def independent(self, ys):
        ys = list(ys)
        z = self.bottom
        if z in ys or len(set(ys)) != len(ys):
            return False
        for x in ys:
            rest = [y for y in ys if y != x]
            for k in range(len(rest) + 1):
                for sub in itertools.combinations(rest, k):
                    if self.glb(self.join_of(sub), x) != z:
                        return False
        return True

    def udim(self):
        best = 0
        nonzero = [x for x in range(self.n) if x != self.bottom]
        for k in range(1, len(nonzero) + 1):
            if any(self.independent(s) for s in itertools.combinations(nonzero, k)):
                best = k
        return best

    def is_modular(self):
        r = range(self.n)
        return all(self.lub(x, self.glb(y, z)) == self.glb(self.lub(x, y), z)
                   for x in r for y in r for z in r if self.le(x, z))

    def is_distributive_below(self, t):
        els = self.below(t)
        return all(self.glb(x, self.lub(y, z)) == self.lub(self.glb(x, y), self.glb(x, z))
                   for x in els for y in els for z in els)

    def cyclic(self):
        return {t for t in range(self.n) if self.is_distributive_below(t)}

    def dual(self):
        return Order(self.n, {(y, x) for x, y in self.rel})


def is_monotone(P: Order, Q: Order, f):
    return all(Q.le(f[x], f[y]) for x, y in P.rel)


def adjoint(P: Order, Q: Order, alpha, beta):
    return all(Q.le(alpha[a], b) == P.le(a, beta[b]) for a in range(P.n) for b in range(Q.n))


def all_connections(P: Order, Q: Order):
    """All adjoint pairs, by trying every pair of maps."""
    out = []
    maps_pq = [f for f in itertools.product(range(Q.n), repeat=P.n) if is_monotone(P, Q, f)]
    maps_qp = [g for g in itertools.product(range(P.n), repeat=Q.n) if is_monotone(Q, P, g)]
    for f in maps_pq:
        for g in maps_qp:
            if adjoint(P, Q, f, g):
                out.append((f, g))
    return out


# -- lattices up to isomorphism ------------------------------------------------

def _close_bounds(m, strict):
    n = m + 2
    rel = {(x, x) for x in range(n)}
    rel |= {(0, x) for x in range(n)} | {(x, n - 1) for x in range(n)}
    rel |= {(i + 1, j + 1) for i, j in strict}
    return Order(n, rel)


def lattice_count(n):
    """Number of ``n``-element lattices up to isomorphism, from all relations on the middle points."""
    m = n - 2
    pairs = [(i, j) for i in range(m) for j in range(m) if i != j]
    seen = set()
    for bitsel in range(1 << len(pairs)):
        strict = {pairs[k] for k in range(len(pairs)) if (bitsel >> k) & 1}
        if any((j, i) in strict for i, j in strict):
            continue
        if any((i, l) not in strict for i, j in strict for k, l in strict if j == k):
            continue
        P = _close_bounds(m, strict)
        if not P.is_lattice():
            continue
        key = min(
            tuple(sorted((p[i], p[j]) for i, j in strict))
            for p in itertools.permutations(range(m)))
        seen.add(key)
    return len(seen)


def isomorphic(P: Order, Q: Order):
    if P.n != Q.n:
        return False
    for p in itertools.permutations(range(P.n)):
        if all(Q.le(p[x], p[y]) == P.le(x, y) for x in range(P.n) for y in range(P.n)):
            return True
    return False


# -- finite abelian groups -------------------------------------------------------

def group_elements(orders):
    return list(itertools.product(*(range(m) for m in orders)))


def group_add(orders, x, y):
    return tuple((a + b) % m for a, b, m in zip(x, y, orders))


def all_subgroups(orders):
    els = group_elements(orders)
    zero = tuple(0 for _ in orders)
    out = []
    for sel in range(1 << len(els)):
        S = {els[k] for k in range(len(els)) if (sel >> k) & 1}
        if zero in S and all(group_add(orders, x, y) in S for x in S for y in S):
            out.append(frozenset(S))
    return out


def all_homs(src, dst):
    """Every additive map, found by trying every function between element sets."""
    els, tgt = group_elements(src), group_elements(dst)
    out = []
    for values in itertools.product(tgt, repeat=len(els)):
        f = dict(zip(els, values))
        if all(f[group_add(src, x, y)] == group_add(dst, f[x], f[y]) for x in els for y in els):
            out.append(f)
    return out


def hom_order_formula(src, dst):
    r = 1
    for m in src:
        for n in dst:
            r *= gcd(m, n)
    return r
