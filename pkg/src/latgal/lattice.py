"""Finite bounded lattices stored as dense index tables.

Elements are the integers ``0 .. n-1``; labels are only used for I/O.
The order is kept as bitmasks (bit ``x`` of ``down[a]`` is set iff
``x <= a``) and meet/join are precomputed ``n x n`` tables, so every
predicate built on top of this module is a tight loop over lookups.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CycleInCovers, DegenerateInterval, EmptyInterval, NotALattice, NotBounded


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def lattice_cached(fn):
    """Memoize a one-argument function of a lattice on the lattice itself."""
    key = f"{fn.__module__}.{fn.__qualname__}"

    @functools.wraps(fn)
    def wrapper(L):
        try:
            return L._cache[key]
        except KeyError:
            value = L._cache[key] = fn(L)
            return value

    return wrapper


class Lattice:
    """An immutable finite bounded lattice.

    Build one with :func:`build_from_covers` (or :meth:`from_down_sets`);
    the constructor verifies that every pair has a unique meet and join.
    A one-element lattice is representable only with ``degenerate=True``
    (it arises as a trivial interval or as the submodule lattice of a zero
    module).
    """

    __slots__ = (
        "name", "n", "names", "down", "up", "meet", "join", "bottom", "top",
        "degenerate", "_cache", "_index",
    )

    def __init__(self, names, down, *, name="L", allow_degenerate=False):
        names = tuple(str(x) for x in names)
        down = tuple(down)
        n = len(names)
        if n == 0 or len(down) != n:
            raise ValueError("a lattice needs at least one element and one down-set per element")
        if len(set(names)) != n:
            raise ValueError("element labels must be distinct")
        if n == 1 and not allow_degenerate:
            raise NotBounded("a bounded lattice needs bottom != top")
        for a in range(n):
            if not (down[a] >> a) & 1:
                raise ValueError(f"order is not reflexive at {names[a]!r}")
            for x in bits(down[a]):
                if down[x] & ~down[a]:
                    raise ValueError(f"order is not transitive below {names[a]!r}")
        if len(set(down)) != n:
            raise CycleInCovers("order is not antisymmetric")
        up = [0] * n
        for b in range(n):
            for a in bits(down[b]):
                up[a] |= 1 << b
        by_down = {d: i for i, d in enumerate(down)}
        by_up = {u: i for i, u in enumerate(up)}
        meet, join = [], []
        for a in range(n):
            mrow, jrow = [], []
            for b in range(n):
                m = by_down.get(down[a] & down[b])
                if m is None:
                    raise NotALattice((names[a], names[b]), "meet")
                j = by_up.get(up[a] & up[b])
                if j is None:
                    raise NotALattice((names[a], names[b]), "join")
                mrow.append(m)
                jrow.append(j)
            meet.append(tuple(mrow))
            join.append(tuple(jrow))
        full = (1 << n) - 1
        self._set(
            name=name, names=names, down=down, up=tuple(up), meet=tuple(meet),
            join=tuple(join), bottom=by_up[full], top=by_down[full], degenerate=(n == 1),
        )

    def _set(self, *, name, names, down, up, meet, join, bottom, top, degenerate):
        self.name = name
        self.n = len(names)
        self.names = names
        self.down = down
        self.up = up
        self.meet = meet
        self.join = join
        self.bottom = bottom
        self.top = top
        self.degenerate = degenerate
        self._cache = {}
        self._index = {lab: i for i, lab in enumerate(names)}

    @classmethod
    def _raw(cls, **fields):
        obj = cls.__new__(cls)
        obj._set(**fields)
        return obj

    @classmethod
    def from_down_sets(cls, names, down, *, name="L", allow_degenerate=False):
        return cls(names, down, name=name, allow_degenerate=allow_degenerate)

    # -- element access -------------------------------------------------
    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(range(self.n))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not an element of lattice {self.name!r}") from None

    def label(self, x: int) -> str:
        return self.names[x]

    def labels(self, xs: Iterable[int]) -> set[str]:
        return {self.names[x] for x in xs}

    def leq(self, a: int, b: int) -> bool:
        return bool((self.down[b] >> a) & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and bool((self.down[b] >> a) & 1)

    @property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs ``(a, b)`` with ``a < b`` and nothing strictly between."""
        try:
            return self._cache["covers"]
        except KeyError:
            pass
        out = []
        for b in range(self.n):
            for a in bits(self.down[b]):
                if a != b and self.up[a] & self.down[b] == (1 << a) | (1 << b):
                    out.append((a, b))
        out.sort()
        self._cache["covers"] = tuple(out)
        return self._cache["covers"]

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.names == other.names and self.down == other.down

    def __hash__(self):
        return hash((self.names, self.down))

    def __repr__(self):
        return f"Lattice({self.name!r}, n={self.n})"


def build_from_covers(labels: Sequence[str], bottom: str, top: str,
                      covers: Iterable[tuple[str, str]], name: str = "L") -> Lattice:
    """Build a lattice from its Hasse diagram.

    ``covers`` lists pairs ``(lower, upper)``; the order is their
    reflexive-transitive closure.  Raises :class:`CycleInCovers`,
    :class:`NotBounded` or :class:`NotALattice` (with the offending pair).
    """
    labels = [str(x) for x in labels]
    if len(set(labels)) != len(labels):
        raise ValueError("element labels must be distinct")
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    for lab in (bottom, top):
        if lab not in index:
            raise KeyError(f"unknown element {lab!r}")
    above = [0] * n
    for lo, hi in covers:
        if lo not in index or hi not in index:
            raise KeyError(f"cover {lo!r} < {hi!r} references an unknown element")
        if lo == hi:
            raise CycleInCovers(f"cover {lo!r} < {hi!r} is reflexive")
        above[index[lo]] |= 1 << index[hi]
    # up-closure by depth-first propagation; a cycle shows up as mutual reachability
    up = [0] * n
    state = [0] * n

    def visit(x):
        state[x] = 1
        acc = 1 << x
        for y in bits(above[x]):
            if state[y] == 1:
                raise CycleInCovers(f"cover relation has a cycle through {labels[y]!r}")
            if state[y] == 0:
                visit(y)
            acc |= up[y]
        up[x] = acc
        state[x] = 2

    for x in range(n):
        if state[x] == 0:
            visit(x)
    full = (1 << n) - 1
    b, t = index[bottom], index[top]
    if n < 2 or b == t:
        raise NotBounded("a bounded lattice needs bottom != top")
    if up[b] != full:
        missing = [labels[x] for x in range(n) if not (up[b] >> x) & 1]
        raise NotBounded(f"declared bottom {bottom!r} is not below {missing}")
    not_below_top = [labels[x] for x in range(n) if not (up[x] >> t) & 1]
    if not_below_top:
        raise NotBounded(f"declared top {top!r} is not above {not_below_top}")
    down = [0] * n
    for a in range(n):
        for x in bits(up[a]):
            down[x] |= 1 << a
    return Lattice(labels, down, name=name)


def chain(n: int, name: str | None = None) -> Lattice:
    """The ``n``-element chain ``0 < 1 < ... < n-1``."""
    labels = [str(i) for i in range(n)]
    return build_from_covers(labels, "0", labels[-1], zip(labels, labels[1:]),
                             name=name or f"chain{n}")


def meet(L: Lattice, a: int, b: int) -> int:
    return L.meet[a][b]


def join(L: Lattice, a: int, b: int) -> int:
    return L.join[a][b]


def join_all(L: Lattice, xs: Iterable[int]) -> int:
    acc = L.bottom
    for x in xs:
        acc = L.join[acc][x]
    return acc


def meet_all(L: Lattice, xs: Iterable[int]) -> int:
    acc = L.top
    for x in xs:
        acc = L.meet[acc][x]
    return acc


def _dual_name(name: str) -> str:
    return name[:-3] if name.endswith("^op") else name + "^op"


def dual(L: Lattice) -> Lattice:
    """The order dual, on the same element indices and labels.

    Cached in both directions, so ``dual(dual(L)) is L``.
    """
    try:
        return L._cache["dual"]
    except KeyError:
        pass
    D = Lattice._raw(
        name=_dual_name(L.name), names=L.names, down=L.up, up=L.down, meet=L.join,
        join=L.meet, bottom=L.top, top=L.bottom, degenerate=L.degenerate,
    )
    L._cache["dual"] = D
    D._cache["dual"] = L
    return D


@dataclass(frozen=True)
class Interval:
    lattice: Lattice
    lo: int
    hi: int

    def __post_init__(self):
        if not self.lattice.leq(self.lo, self.hi):
            L = self.lattice
            raise EmptyInterval(f"{L.names[self.lo]!r} is not below {L.names[self.hi]!r}")

    @property
    def mask(self) -> int:
        return self.lattice.up[self.lo] & self.lattice.down[self.hi]

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def as_lattice(self) -> Lattice:
        L = self.lattice
        elems = self.elements
        pos = {x: i for i, x in enumerate(elems)}
        down = [mask_of(pos[y] for y in bits(L.down[x] & self.mask)) for x in elems]
        return Lattice([L.names[x] for x in elems], down,
                       name=f"{L.name}[{L.names[self.lo]},{L.names[self.hi]}]",
                       allow_degenerate=True)


def interval(L: Lattice, lo: int, hi: int, *, allow_degenerate: bool = True) -> Lattice:
    """The sublattice ``{x : lo <= x <= hi}`` with the induced order.

    When ``lo == hi`` the result is a one-element lattice flagged
    ``degenerate``; pass ``allow_degenerate=False`` to get
    :class:`DegenerateInterval` instead.
    """
    iv = Interval(L, lo, hi)
    if iv.degenerate and not allow_degenerate:
        raise DegenerateInterval(f"interval [{L.names[lo]}, {L.names[hi]}] has one element")
    return iv.as_lattice()


def _distributive_on(L: Lattice, elems: Sequence[int]) -> bool:
    meet, join = L.meet, L.join
    for a in elems:
        ma, ja = meet[a], join[a]
        for b in elems:
            for c in elems:
                if ma[join[b][c]] != join[ma[b]][ma[c]]:
                    return False
    return True


@lattice_cached
def is_modular(L: Lattice) -> bool:
    """True iff ``a | (b & c) == (a | b) & c`` whenever ``a <= c``."""
    meet, join = L.meet, L.join
    for c in range(L.n):
        for a in bits(L.down[c]):
            ja = join[a]
            for b in range(L.n):
                if ja[meet[b][c]] != meet[ja[b]][c]:
                    return False
    return True


@lattice_cached
def is_distributive(L: Lattice) -> bool:
    return _distributive_on(L, range(L.n))


def complements_of(L: Lattice, a: int) -> frozenset[int]:
    return frozenset(x for x in range(L.n)
                     if L.meet[a][x] == L.bottom and L.join[a][x] == L.top)


def is_complement(L: Lattice, a: int) -> bool:
    return bool(complements_of(L, a))


@lattice_cached
def cyclic_elements(L: Lattice) -> frozenset[int]:
    """Elements whose down-interval is distributive.

    The ascending chain condition that also belongs to the definition
    holds automatically in a finite lattice.
    """
    return frozenset(a for a in range(L.n) if _distributive_on(L, tuple(bits(L.down[a]))))


@lattice_cached
def is_cyclically_generated(L: Lattice) -> bool:
    cyc = cyclic_elements(L)
    return all(join_all(L, (c for c in bits(L.down[a]) if c in cyc)) == a for a in range(L.n))


@dataclass(frozen=True)
class MonotoneMap:
    """A map between lattices given by a table of target indices."""

    src: Lattice
    dst: Lattice
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(x) for x in self.table))
        if len(self.table) != self.src.n:
            raise ValueError(f"map table has {len(self.table)} entries, source has {self.src.n}")
        if any(not 0 <= y < self.dst.n for y in self.table):
            raise ValueError("map table entry out of range")

    def __call__(self, x: int) -> int:
        return self.table[x]

    @classmethod
    def from_labels(cls, src: Lattice, dst: Lattice, mapping: dict[str, str]) -> "MonotoneMap":
        missing = [lab for lab in src.names if lab not in mapping]
        if missing:
            raise KeyError(f"map leaves {missing} undefined")
        return cls(src, dst, tuple(dst.index(mapping[lab]) for lab in src.names))

    @classmethod
    def identity(cls, L: Lattice) -> "MonotoneMap":
        return cls(L, L, tuple(range(L.n)))


def monotone_violation(m: MonotoneMap) -> tuple[int, int] | None:
    """First pair ``(x, y)`` with ``x <= y`` but ``m(x) > m(y)``, if any."""
    src, dst, t = m.src, m.dst, m.table
    for y in range(src.n):
        for x in bits(src.down[y]):
            if not dst.leq(t[x], t[y]):
                return (x, y)
    return None


def validate_monotone(m: MonotoneMap) -> bool:
    return monotone_violation(m) is None


# -- isomorphism ----------------------------------------------------------

def _element_invariants(L: Lattice) -> list[tuple]:
    height = [0] * L.n
    order = sorted(range(L.n), key=lambda x: bin(L.down[x]).count("1"))
    lower = [[] for _ in range(L.n)]
    upper = [[] for _ in range(L.n)]
    for a, b in L.covers:
        lower[b].append(a)
        upper[a].append(b)
    for x in order:
        height[x] = max((height[a] + 1 for a in lower[x]), default=0)
    base = [
        (height[x], bin(L.down[x]).count("1"), bin(L.up[x]).count("1"), len(lower[x]), len(upper[x]))
        for x in range(L.n)
    ]
    return [
        (base[x], tuple(sorted(base[a] for a in lower[x])), tuple(sorted(base[b] for b in upper[x])))
        for x in range(L.n)
    ]


def canonical_order(L: Lattice) -> tuple[int, ...]:
    """A relabelling ``new position -> old element`` that minimises the order matrix.

    Elements are first partitioned by isomorphism-invariant features; only
    permutations inside each class are tried, which is exact and cheap for
    the small lattices this is used on.
    """
    return _canonical(L)[1]


def canonical_form(L: Lattice) -> tuple:
    return _canonical(L)[0]


@lattice_cached
def _canonical(L: Lattice):
    inv = _element_invariants(L)
    classes: dict[tuple, list[int]] = {}
    for x in range(L.n):
        classes.setdefault(inv[x], []).append(x)
    keys = sorted(classes)
    groups = [classes[k] for k in keys]
    best_key = None
    best_order = None
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = tuple(itertools.chain.from_iterable(choice))
        pos = {old: new for new, old in enumerate(order)}
        key = tuple(mask_of(pos[y] for y in bits(L.down[old])) for old in order)
        if best_key is None or key < best_key:
            best_key, best_order = key, order
    return (L.n, tuple(keys), best_key), best_order


def is_isomorphic(L1: Lattice, L2: Lattice) -> bool:
    return L1.n == L2.n and canonical_form(L1) == canonical_form(L2)


def symmetry_count(L: Lattice) -> int:
    """Upper bound on the permutations tried by the canonical form."""
    inv = _element_invariants(L)
    sizes: dict[tuple, int] = {}
    for x in inv:
        sizes[x] = sizes.get(x, 0) + 1
    return math.prod(math.factorial(s) for s in sizes.values())


def relabel(L: Lattice, order: Sequence[int], names: Sequence[str] | None = None,
            name: str | None = None) -> Lattice:
    """Copy of ``L`` whose element ``i`` is the old element ``order[i]``."""
    pos = {old: new for new, old in enumerate(order)}
    down = [mask_of(pos[y] for y in bits(L.down[old])) for old in order]
    if names is None:
        names = [L.names[old] for old in order]
    return Lattice(names, down, name=name or L.name, allow_degenerate=L.degenerate)
