"""Essential, closed and related elements of a finite bounded lattice.

Every relative notion is phrased on an explicit interval ``[0, a']``;
"essential in the lattice" is the case ``a' = top``.  The co-notions
(coessential, coclosed, hollow, lifting, ...) are never reimplemented:
they are the primal predicates evaluated on :func:`~latgal.lattice.dual`,
which keeps element indices, so results need no translation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    MultipleClosures, NoClosure, NotBelow, NotCyclicallyGenerated, NotModular, TheoremViolation,
)
from .lattice import (
    Lattice, bits, complements_of, cyclic_elements, dual, is_cyclically_generated, is_modular,
    join_all, lattice_cached,
)


@dataclass(frozen=True)
class DimensionResult:
    value: int
    witness: tuple[int, ...] = ()


@dataclass(frozen=True)
class ClosureSet:
    element: int
    closures: frozenset[int] = field(default_factory=frozenset)

    def __len__(self):
        return len(self.closures)

    def __contains__(self, x):
        return x in self.closures


@lattice_cached
def _disjoint_masks(L: Lattice) -> tuple[int, ...]:
    # bit x of entry a set iff a & x == 0
    out = []
    for a in range(L.n):
        row = L.meet[a]
        m = 0
        for x in range(L.n):
            if row[x] == L.bottom:
                m |= 1 << x
        out.append(m)
    return tuple(out)


def _essential(L: Lattice, a: int, a_prime: int) -> bool:
    return _disjoint_masks(L)[a] & L.down[a_prime] == 1 << L.bottom


def is_essential_in(L: Lattice, a: int, a_prime: int) -> bool:
    """Whether ``a`` is essential in ``[0, a_prime]``.

    That is: every ``x <= a_prime`` with ``a & x == 0`` is ``0``.
    """
    if not L.leq(a, a_prime):
        raise NotBelow(f"{L.names[a]!r} is not below {L.names[a_prime]!r}")
    return _essential(L, a, a_prime)


def is_essential(L: Lattice, a: int) -> bool:
    return _essential(L, a, L.top)


@lattice_cached
def _essential_extensions(L: Lattice) -> tuple[int, ...]:
    """Mask of all ``a'`` with ``a`` essential in ``[0, a']``, per ``a``."""
    disjoint = _disjoint_masks(L)
    unit = 1 << L.bottom
    return tuple(
        sum(1 << c for c in bits(L.up[a]) if disjoint[a] & L.down[c] == unit)
        for a in range(L.n)
    )


def essential_via_cyclic(L: Lattice, a: int) -> bool:
    """Essentiality in the whole lattice, tested only against cyclic elements."""
    if not is_cyclically_generated(L):
        raise NotCyclicallyGenerated(f"lattice {L.name!r} is not cyclically generated")
    return all(x == L.bottom or L.meet[a][x] != L.bottom for x in cyclic_elements(L))


@lattice_cached
def _closed_mask(L: Lattice) -> int:
    ext = _essential_extensions(L)
    return sum(1 << a for a in range(L.n) if ext[a] == 1 << a)


def is_closed(L: Lattice, a: int) -> bool:
    return bool((_closed_mask(L) >> a) & 1)


def closed_elements(L: Lattice) -> frozenset[int]:
    return frozenset(bits(_closed_mask(L)))


@lattice_cached
def _closure_masks(L: Lattice) -> tuple[int, ...]:
    closed = _closed_mask(L)
    return tuple(ext & closed for ext in _essential_extensions(L))


def closures_of(L: Lattice, a: int) -> ClosureSet:
    """All closed ``a'`` with ``a`` essential in ``[0, a']``.

    Nonempty on modular lattices; may be empty otherwise.
    """
    return ClosureSet(a, frozenset(bits(_closure_masks(L)[a])))


def closure_count(L: Lattice, a: int) -> int:
    return bin(_closure_masks(L)[a]).count("1")


@lattice_cached
def is_uc(L: Lattice) -> bool:
    return all(closure_count(L, a) == 1 for a in range(L.n))


def unique_closure(L: Lattice, a: int) -> int:
    cl = closures_of(L, a).closures
    if not cl:
        raise NoClosure(f"{L.names[a]!r} has no closure")
    if len(cl) > 1:
        raise MultipleClosures(a, cl)
    return next(iter(cl))


@lattice_cached
def is_uniform(L: Lattice) -> bool:
    return all(x == L.bottom or _essential(L, x, L.top) for x in range(L.n))


# -- join-independence and dimensions ------------------------------------

def is_join_independent(L: Lattice, Y: Iterable[int]) -> bool:
    """Definitional check: ``(join S) & x == 0`` for all ``S ⊆ Y`` and ``x ∈ Y \\ S``."""
    Y = sorted(set(Y))
    if L.bottom in Y:
        return False
    for x in Y:
        rest = [y for y in Y if y != x]
        for r in range(len(rest) + 1):
            for S in itertools.combinations(rest, r):
                if L.meet[join_all(L, S)][x] != L.bottom:
                    return False
    return True


def join_independent_incremental(L: Lattice, ordered: Sequence[int]) -> bool:
    """Prefix form: ``(y_1 | ... | y_{k-1}) & y_k == 0`` for every ``k``, all ``y_i != 0``.

    Agrees with :func:`is_join_independent` on modular lattices only.
    """
    if any(y == L.bottom for y in ordered):
        return False
    acc = L.bottom
    for y in ordered:
        if L.meet[acc][y] != L.bottom:
            return False
        acc = L.join[acc][y]
    return True


def _independent_extension(L: Lattice, chosen: list[int], y: int) -> bool:
    # By monotonicity of join, Y is independent iff (join of Y\{x}) & x == 0 for each x.
    members = chosen + [y]
    for x in members:
        if L.meet[join_all(L, (z for z in members if z != x))][x] != L.bottom:
            return False
    return True


@lattice_cached
def uniform_dimension(L: Lattice) -> DimensionResult:
    """Largest join-independent subset, with the lexicographically least witness.

    Depth-first search in increasing index order: independence is
    hereditary, so branches die as soon as an extension fails, and the
    first maximum found in pre-order is the lexicographically least one.
    """
    candidates = [x for x in range(L.n) if x != L.bottom]
    disjoint = _disjoint_masks(L)
    best: list[int] = []
    chosen: list[int] = []

    def search(start: int, allowed: int):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        for i in range(start, len(candidates)):
            y = candidates[i]
            if not (allowed >> y) & 1:
                continue
            # every later member must be disjoint from all chosen ones
            if len(chosen) + bin(allowed >> y).count("1") <= len(best):
                break
            if _independent_extension(L, chosen, y):
                chosen.append(y)
                search(i + 1, allowed & disjoint[y])
                chosen.pop()

    search(0, (1 << L.n) - 1)
    return DimensionResult(len(best), tuple(best))


def hollow_dimension(L: Lattice) -> DimensionResult:
    return uniform_dimension(dual(L))


# -- extending lattices ---------------------------------------------------

@lattice_cached
def _extending_forms(L: Lattice) -> tuple[bool, bool]:
    ext = _essential_extensions(L)
    has_complement = [bool(complements_of(L, x)) for x in range(L.n)]
    every_element = all(any(has_complement[c] for c in bits(ext[a])) for a in range(L.n))
    closed_are_complements = all(has_complement[c] for c in closed_elements(L))
    return every_element, closed_are_complements


def is_extending(L: Lattice) -> bool:
    """Every element is essential in some complement (equivalently: closed ⇒ complement)."""
    if not is_modular(L):
        raise NotModular(f"lattice {L.name!r} is not modular")
    first, second = _extending_forms(L)
    if first != second:
        raise TheoremViolation(f"the two forms of the extending property disagree on {L.name!r}")
    return first


# -- co-notions via the dual lattice -------------------------------------

def is_coessential_in(L: Lattice, a: int, a_prime: int) -> bool:
    """Whether ``a`` is coessential in ``[a_prime, 1]``: ``x >= a_prime`` and ``a | x == 1`` force ``x == 1``."""
    if not L.leq(a_prime, a):
        raise NotBelow(f"{L.names[a_prime]!r} is not below {L.names[a]!r}")
    return _essential(dual(L), a, a_prime)


def coclosed_elements(L: Lattice) -> frozenset[int]:
    return closed_elements(dual(L))


def coclosures_of(L: Lattice, a: int) -> ClosureSet:
    return closures_of(dual(L), a)


def is_ucc(L: Lattice) -> bool:
    return is_uc(dual(L))


def is_hollow(L: Lattice) -> bool:
    return is_uniform(dual(L))


def is_lifting(L: Lattice) -> bool:
    return is_extending(dual(L))


@dataclass(frozen=True)
class DualNotions:
    lattice: Lattice
    coclosed: frozenset[int]
    coclosures: dict[int, frozenset[int]]
    ucc: bool
    hollow: bool
    lifting: bool | None

    def is_coessential_in(self, a: int, a_prime: int) -> bool:
        return is_coessential_in(self.lattice, a, a_prime)


def dual_notion_suite(L: Lattice) -> DualNotions:
    """Evaluate all co-notions at once (``lifting`` is ``None`` off modular lattices)."""
    return DualNotions(
        lattice=L,
        coclosed=coclosed_elements(L),
        coclosures={a: coclosures_of(L, a).closures for a in range(L.n)},
        ucc=is_ucc(L),
        hollow=is_hollow(L),
        lifting=is_lifting(L) if is_modular(L) else None,
    )


# -- supplements ----------------------------------------------------------

def supplements_of(L: Lattice, a: int) -> frozenset[int]:
    """Minimal ``x`` with ``a | x == 1``."""
    cover = [x for x in range(L.n) if L.join[a][x] == L.top]
    cover_mask = sum(1 << x for x in cover)
    return frozenset(x for x in cover if L.down[x] & cover_mask == 1 << x)


def is_small_in(L: Lattice, s: int, x: int) -> bool:
    """``s <= x`` and no proper ``y < x`` has ``s | y == x``."""
    if not L.leq(s, x):
        raise NotBelow(f"{L.names[s]!r} is not below {L.names[x]!r}")
    return all(y == x or L.join[s][y] != x for y in bits(L.down[x]))


@lattice_cached
def is_amply_supplemented_literal(L: Lattice) -> bool:
    """Every ``a`` has a supplement ``x`` whose overlap ``a & x`` is small in ``[0, x]``.

    This is the coessentiality requirement transported into the interval
    of the supplement; read verbatim (``a`` coessential over ``x``) the
    condition can only hold for ``a = 1``.
    """
    return all(
        any(is_small_in(L, L.meet[a][x], x) for x in supplements_of(L, a))
        for a in range(L.n)
    )


@lattice_cached
def is_amply_supplemented_standard(L: Lattice) -> bool:
    """Whenever ``a | b == 1``, ``b`` contains a supplement of ``a``."""
    for a in range(L.n):
        sups = supplements_of(L, a)
        for b in range(L.n):
            if L.join[a][b] == L.top and not any(L.leq(x, b) for x in sups):
                return False
    return True


def is_amply_supplemented(L: Lattice) -> bool:
    return is_amply_supplemented_literal(L)


# -- statement checks on a single lattice --------------------------------

def check_lattice_lemmas(L: Lattice) -> dict[str, bool | None]:
    """Evaluate the standard facts about essential/closed elements on ``L``.

    Keys map to ``True`` (holds), ``False`` (fails) or ``None`` when the
    hypotheses of that fact are not met by ``L``.
    """
    n, meet = L.n, L.meet
    out: dict[str, bool | None] = {}
    ok_chain = ok_meet = True
    for c in range(n):
        for b in bits(L.down[c]):
            for a in bits(L.down[b]):
                lhs = _essential(L, a, c)
                if lhs != (_essential(L, a, b) and _essential(L, b, c)):
                    ok_chain = False
                if lhs and not _essential(L, meet[a][b], b):
                    ok_meet = False
    out["essential_transitive"] = ok_chain
    out["essential_meet_restricts"] = ok_meet
    if is_cyclically_generated(L):
        out["essential_via_cyclic"] = all(
            essential_via_cyclic(L, a) == _essential(L, a, L.top) for a in range(n))
    else:
        out["essential_via_cyclic"] = None
    modular = is_modular(L)
    if modular:
        closed = closed_elements(L)
        out["complements_are_closed"] = all(
            c in closed for a in range(n) for c in complements_of(L, a))
        out["closure_exists"] = all(closure_count(L, a) >= 1 for a in range(n))
        first, second = _extending_forms(L)
        out["extending_forms_agree"] = first == second
        mod_dual = dual(L)
        first_d, second_d = _extending_forms(mod_dual)
        out["lifting_forms_agree"] = first_d == second_d
        out["coclosure_exists"] = all(closure_count(mod_dual, a) >= 1 for a in range(n))
    else:
        for key in ("complements_are_closed", "closure_exists", "extending_forms_agree",
                    "lifting_forms_agree", "coclosure_exists"):
            out[key] = None
    if modular and is_uc(L):
        cl = [unique_closure(L, a) for a in range(n)]
        out["closure_monotone"] = all(L.leq(cl[a], cl[b]) for b in range(n) for a in bits(L.down[b]))
    else:
        out["closure_monotone"] = None
    if L.degenerate:
        out["udim_one_iff_uniform"] = None
    else:
        out["udim_one_iff_uniform"] = (uniform_dimension(L).value == 1) == is_uniform(L)
    return out
