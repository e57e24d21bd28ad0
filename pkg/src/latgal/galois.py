"""Verified Galois connections between finite bounded lattices.

A :class:`GaloisConnection` can only be created through the exhaustive
adjunction check, so every classifier and verifier below may assume the
adjunction.  The verifiers separate two outcomes: an instance outside a
statement's hypotheses raises :class:`HypothesisNotMet`, while a conclusion
failing on an instance inside them is reported as ``FAIL``.  Since the
statements are theorems, ``FAIL`` means a bug somewhere and is treated as
an alarm by the CLI and the test-suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import HypothesisNotMet, NotAdjoint, NotMonotone, TheoremViolation
from .essentiality import (
    _essential, closed_elements, closure_count, closures_of, coclosed_elements, coclosures_of,
    is_amply_supplemented_literal, is_closed, is_coessential_in, is_extending, is_uc, is_ucc,
    is_uniform, uniform_dimension, unique_closure,
)
from .lattice import (
    Lattice, MonotoneMap, bits, complements_of, cyclic_elements, dual, is_cyclically_generated,
    is_modular, monotone_violation,
)


@dataclass(frozen=True, eq=False)
class GaloisConnection:
    """An adjoint pair ``alpha: A -> B``, ``beta: B -> A``.

    Construction verifies monotonicity and ``alpha(a) <= b  <=>  a <= beta(b)``
    on all ``|A| * |B|`` pairs.
    """

    alpha: MonotoneMap
    beta: MonotoneMap
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        alpha, beta = self.alpha, self.beta
        if alpha.src != beta.dst or alpha.dst != beta.src:
            raise ValueError("alpha must map A -> B and beta must map B -> A")
        for side, m in (("alpha", alpha), ("beta", beta)):
            bad = monotone_violation(m)
            if bad is not None:
                raise NotMonotone(bad, side)
        A, B = alpha.src, alpha.dst
        al, be = alpha.table, beta.table
        for a in range(A.n):
            ua = B.up[al[a]]
            for b in range(B.n):
                if bool((ua >> b) & 1) != bool((A.down[be[b]] >> a) & 1):
                    raise NotAdjoint((a, b))
        bad = _structural_violation(A, B, al, be)
        if bad:
            raise TheoremViolation(f"adjoint pair violates {bad}")

    @property
    def A(self) -> Lattice:
        return self.alpha.src

    @property
    def B(self) -> Lattice:
        return self.alpha.dst

    @property
    def al(self) -> tuple[int, ...]:
        return self.alpha.table

    @property
    def be(self) -> tuple[int, ...]:
        return self.beta.table

    def ba(self, a: int) -> int:
        return self.be[self.al[a]]

    def ab(self, b: int) -> int:
        return self.al[self.be[b]]

    def tables(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.al, self.be

    def __repr__(self):
        return f"GaloisConnection({self.A.name!r} -> {self.B.name!r}, alpha={self.al}, beta={self.be})"


def _structural_violation(A, B, al, be) -> str | None:
    for a in range(A.n):
        if not A.leq(a, be[al[a]]):
            return "unit a <= beta(alpha(a))"
        if al[be[al[a]]] != al[a]:
            return "alpha beta alpha = alpha"
    for b in range(B.n):
        if not B.leq(al[be[b]], b):
            return "counit alpha(beta(b)) <= b"
        if be[al[be[b]]] != be[b]:
            return "beta alpha beta = beta"
    if al[A.bottom] != B.bottom or be[B.top] != A.top:
        return "alpha(0) = 0 and beta(1) = 1"
    return None


def build_connection(alpha: MonotoneMap, beta: MonotoneMap) -> GaloisConnection:
    return GaloisConnection(alpha, beta)


def from_tables(A: Lattice, B: Lattice, alpha, beta) -> GaloisConnection:
    return GaloisConnection(MonotoneMap(A, B, tuple(alpha)), MonotoneMap(B, A, tuple(beta)))


def from_labels(A: Lattice, B: Lattice, alpha: dict[str, str], beta: dict[str, str]) -> GaloisConnection:
    return GaloisConnection(MonotoneMap.from_labels(A, B, alpha), MonotoneMap.from_labels(B, A, beta))


def identity_connection(L: Lattice) -> GaloisConnection:
    return from_tables(L, L, range(L.n), range(L.n))


def constant_connection(A: Lattice, B: Lattice) -> GaloisConnection:
    """``alpha`` constantly bottom, ``beta`` constantly top: always adjoint."""
    return from_tables(A, B, [B.bottom] * A.n, [A.top] * B.n)


def galois_elements(G: GaloisConnection) -> tuple[frozenset[int], frozenset[int]]:
    """Fixed points of ``beta alpha`` on ``A`` and of ``alpha beta`` on ``B``."""
    left = frozenset(a for a in range(G.A.n) if G.ba(a) == a)
    right = frozenset(b for b in range(G.B.n) if G.ab(b) == b)
    return left, right


def dual_connection(G: GaloisConnection) -> GaloisConnection:
    """``(beta, alpha)`` as a connection from ``B^op`` to ``A^op`` (cached both ways)."""
    try:
        return G._cache["dual"]
    except KeyError:
        pass
    Ad, Bd = dual(G.A), dual(G.B)
    D = GaloisConnection(MonotoneMap(Bd, Ad, G.be), MonotoneMap(Ad, Bd, G.al))
    G._cache["dual"] = D
    D._cache["dual"] = G
    return D


# -- primal properties: each returns the least failing element or None ----

def _essential_witness(G: GaloisConnection, elements=None) -> int | None:
    A = G.A
    for a in (range(A.n) if elements is None else sorted(elements)):
        if not _essential(A, a, G.ba(a)):
            return a
    return None


def _retractable_witness(G: GaloisConnection) -> int | None:
    B = G.B
    for b in range(B.n):
        if not _essential(B, G.ab(b), b):
            return b
    return None


def _uc_witness(G: GaloisConnection) -> int | None:
    B = G.B
    for b in sorted(closed_elements(B)):
        if closures_of(B, G.ab(b)).closures != {b}:
            return b
    return None


def _beta_reflects_zero_witness(G: GaloisConnection) -> int | None:
    # beta(b) = beta(0) forces b = 0; this reads "beta(b) = 0 forces b = 0"
    # exactly when beta(0) = 0, and without that the plain form is not enough
    floor = G.be[G.B.bottom]
    for b in range(G.B.n):
        if G.be[b] == floor and b != G.B.bottom:
            return b
    return None


def _beta_additive_witness(G: GaloisConnection) -> tuple[int, int] | None:
    A, B, be = G.A, G.B, G.be
    for b in range(B.n):
        for c in range(B.n):
            if B.meet[b][c] == B.bottom and be[B.join[b][c]] != A.join[be[b]][be[c]]:
                return (b, c)
    return None


def is_essential_connection(G: GaloisConnection) -> bool:
    return _essential_witness(G) is None


def is_cyclically_essential_connection(G: GaloisConnection) -> bool:
    return _essential_witness(G, cyclic_elements(G.A)) is None


def is_retractable_connection(G: GaloisConnection) -> bool:
    """``alpha beta (b)`` essential in ``[0, b]`` for every ``b``.

    Cross-checked against the equivalent criterion "``beta(b) = 0`` only
    for ``b = 0``".
    """
    direct = _retractable_witness(G) is None
    if direct != (_beta_reflects_zero_witness(G) is None):
        raise TheoremViolation("retractability disagrees with the zero-reflection criterion")
    return direct


def is_uc_connection(G: GaloisConnection) -> bool:
    return _uc_witness(G) is None


def is_beta_additive(G: GaloisConnection) -> bool:
    """``beta(b | b') = beta(b) | beta(b')`` whenever ``b & b' = 0``.

    When additionally ``beta(0) = 0``, an additive ``beta`` must send
    complementary pairs to complementary pairs; that is cross-checked.
    """
    additive = _beta_additive_witness(G) is None
    if additive and G.be[G.B.bottom] == G.A.bottom:
        A, B, be = G.A, G.B, G.be
        for b in range(B.n):
            for c in complements_of(B, b):
                if be[c] not in complements_of(A, be[b]):
                    raise TheoremViolation("additive beta fails to preserve a complement")
    return additive


# -- dual properties, by direct definition --------------------------------

def _coessential_direct_witness(G: GaloisConnection) -> int | None:
    for b in range(G.B.n):
        if not is_coessential_in(G.B, b, G.ab(b)):
            return b
    return None


def _coretractable_direct_witness(G: GaloisConnection) -> int | None:
    for a in range(G.A.n):
        if not is_coessential_in(G.A, G.ba(a), a):
            return a
    return None


def _ucc_direct_witness(G: GaloisConnection) -> int | None:
    for a in sorted(coclosed_elements(G.A)):
        if coclosures_of(G.A, G.ba(a)).closures != {a}:
            return a
    return None


def is_coessential_connection(G: GaloisConnection) -> bool:
    return classify(G).coessential


def is_coretractable_connection(G: GaloisConnection) -> bool:
    return classify(G).coretractable


def is_ucc_connection(G: GaloisConnection) -> bool:
    return classify(G).ucc


FLAG_NAMES = (
    "essential", "cyclically_essential", "retractable", "uc", "coessential", "coretractable",
    "ucc", "beta_additive", "alpha_top", "beta_bottom",
)

# which side each flag's witness lives on
WITNESS_SIDE = {
    "essential": "A", "cyclically_essential": "A", "retractable": "B", "uc": "B",
    "coessential": "B", "coretractable": "A", "ucc": "A", "beta_additive": "B",
    "alpha_top": "A", "beta_bottom": "B",
}


@dataclass(frozen=True)
class PropertyReport:
    essential: bool
    cyclically_essential: bool
    retractable: bool
    uc: bool
    coessential: bool
    coretractable: bool
    ucc: bool
    beta_additive: bool
    alpha_top: bool
    beta_bottom: bool
    witnesses: dict[str, Any] = field(default_factory=dict)

    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in FLAG_NAMES}

    def witness_labels(self, G: GaloisConnection) -> dict[str, Any]:
        out = {}
        for name, w in self.witnesses.items():
            L = G.A if WITNESS_SIDE[name] == "A" else G.B
            out[name] = [L.names[x] for x in w] if isinstance(w, tuple) else L.names[w]
        return out

    def to_json(self, G: GaloisConnection) -> dict[str, Any]:
        out: dict[str, Any] = dict(self.flags())
        out["witnesses"] = self.witness_labels(G)
        return out


def _primal_witnesses(G: GaloisConnection) -> dict[str, Any]:
    return {
        "essential": _essential_witness(G),
        "cyclically_essential": _essential_witness(G, cyclic_elements(G.A)),
        "retractable": _retractable_witness(G),
        "uc": _uc_witness(G),
    }


def classify(G: GaloisConnection) -> PropertyReport:
    """All connection properties, each failure with its least-index witness.

    The co-properties are computed twice, on :func:`dual_connection` and
    from their direct definitions, and must agree.
    """
    try:
        return G._cache["report"]
    except KeyError:
        pass
    prim = _primal_witnesses(G)
    if (prim["retractable"] is None) != (_beta_reflects_zero_witness(G) is None):
        raise TheoremViolation("retractability disagrees with the zero-reflection criterion")
    D = dual_connection(G)
    via_dual = {
        "coessential": _essential_witness(D),
        "coretractable": _retractable_witness(D),
        "ucc": _uc_witness(D),
    }
    direct = {
        "coessential": _coessential_direct_witness(G),
        "coretractable": _coretractable_direct_witness(G),
        "ucc": _ucc_direct_witness(G),
    }
    if via_dual != direct:
        raise TheoremViolation(f"dual properties disagree: via dual {via_dual}, direct {direct}")
    wit = dict(prim)
    wit.update(direct)
    wit["beta_additive"] = _beta_additive_witness(G)
    wit["alpha_top"] = None if G.al[G.A.top] == G.B.top else G.A.top
    wit["beta_bottom"] = None if G.be[G.B.bottom] == G.A.bottom else G.B.bottom
    flags = {name: wit[name] is None for name in FLAG_NAMES}
    if flags["essential"] and not flags["cyclically_essential"]:
        raise TheoremViolation("essential connection is not cyclically essential")
    if flags["beta_additive"]:
        is_beta_additive(G)  # runs the complement cross-check
    report = PropertyReport(**flags, witnesses={k: v for k, v in wit.items() if v is not None})
    G._cache["report"] = report
    return report


# -- statement verifiers --------------------------------------------------

PASS, FAIL, SKIP, VACUOUS = "PASS", "FAIL", "SKIP", "VACUOUS"


@dataclass
class TheoremReport:
    """Outcome of a statement check.

    ``clauses`` maps each clause to ``PASS``/``FAIL``, ``SKIP`` when its
    extra hypotheses do not hold, or ``VACUOUS`` when its premise is false.
    """

    name: str
    clauses: dict[str, str]
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return FAIL if FAIL in self.clauses.values() else PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict[str, Any]:
        return {"status": self.status, "clauses": dict(self.clauses), "details": self.details}


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def _require(conditions: list[tuple[str, bool]]):
    failed = [name for name, ok in conditions if not ok]
    if failed:
        raise HypothesisNotMet(failed)


def verify_udim_theorem(G: GaloisConnection) -> TheoremReport:
    """Uniform dimension across a retractable connection with ``beta(0) = 0``.

    Always ``udim(B) <= udim(A)``; equality when the connection is
    essential, and also when ``A`` is cyclically generated, the connection
    cyclically essential and ``beta`` additive.
    """
    r = classify(G)
    _require([
        ("A modular", is_modular(G.A)), ("B modular", is_modular(G.B)),
        ("retractable", r.retractable), ("beta(0) = 0", r.beta_bottom),
    ])
    dA, dB = uniform_dimension(G.A), uniform_dimension(G.B)
    clauses = {"bound": _verdict(dB.value <= dA.value)}
    clauses["essential_equality"] = _verdict(dA.value == dB.value) if r.essential else SKIP
    cyc = is_cyclically_generated(G.A) and r.cyclically_essential and r.beta_additive
    clauses["cyclic_equality"] = _verdict(dA.value == dB.value) if cyc else SKIP
    details = {
        "udim_A": dA.value, "udim_B": dB.value,
        "witness_A": [G.A.names[x] for x in dA.witness],
        "witness_B": [G.B.names[x] for x in dB.witness],
    }
    return TheoremReport("udim", clauses, details)


@dataclass
class CorrespondenceResult:
    script_A: frozenset[int]
    script_B: frozenset[int]
    phi: dict[int, int]
    psi: dict[int, int]
    mode: str
    checks: dict[str, bool]
    facts: dict[str, bool]
    failure_witness: tuple[str, Any] | None = None

    @property
    def verified(self) -> bool:
        return all(self.checks.values())

    def to_json(self, G: GaloisConnection) -> dict[str, Any]:
        A, B = G.A, G.B
        return {
            "mode": self.mode,
            "verified": self.verified,
            "script_A": sorted(A.names[a] for a in self.script_A),
            "script_B": sorted(B.names[b] for b in self.script_B),
            "phi": {A.names[a]: B.names[b] for a, b in sorted(self.phi.items())},
            "psi": {B.names[b]: A.names[a] for b, a in sorted(self.psi.items())},
            "checks": dict(self.checks),
            "facts": dict(self.facts),
        }


MODES = ("general", "modular")


def closed_correspondence(G: GaloisConnection, mode: str = "modular") -> CorrespondenceResult:
    """Closed elements matched by ``a -> closure(alpha(a))`` and ``b -> closure(beta(b))``.

    ``mode="general"`` works on arbitrary bounded lattices with the sets
    restricted to elements whose images have unique closures; ψ is well
    defined exactly when those ``b`` are the closed ones with ``beta(b)``
    closed, and then the maps are mutually inverse.  ``mode="modular"``
    additionally requires modular sides and checks that the sets are all
    closed elements, with order preservation when ``B`` is UC.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    r = classify(G)
    hyps = [("essential", r.essential), ("retractable", r.retractable), ("uc", r.uc)]
    if mode == "modular":
        hyps += [("A modular", is_modular(G.A)), ("B modular", is_modular(G.B))]
    _require(hyps)
    A, B, al, be = G.A, G.B, G.al, G.be
    closed_A, closed_B = closed_elements(A), closed_elements(B)
    script_A = frozenset(a for a in closed_A if closure_count(B, al[a]) == 1)
    script_B = frozenset(b for b in closed_B if closure_count(A, be[b]) == 1)
    phi = {a: unique_closure(B, al[a]) for a in sorted(script_A)}
    psi = {b: unique_closure(A, be[b]) for b in sorted(script_B)}
    coincide = script_B == frozenset(b for b in closed_B if is_closed(A, be[b]))
    psi_ok = all(psi[b] in script_A for b in psi)
    checks: dict[str, bool] = {
        "phi_well_defined": all(phi[a] in script_B for a in phi),
        "psi_criterion": psi_ok == coincide,
    }
    if coincide:
        checks["mutually_inverse"] = (
            all(psi.get(phi[a]) == a for a in phi) and all(phi.get(psi[b]) == b for b in psi))
    if mode == "modular":
        checks["script_A_is_closed_A"] = script_A == closed_A
        checks["script_B_is_closed_B"] = script_B == closed_B
        checks["beta_of_closed_is_closed"] = all(is_closed(A, be[b]) for b in closed_B)
        checks["mutually_inverse"] = checks.get("mutually_inverse", False)
        if is_uc(B):
            checks["phi_order_preserving"] = all(
                B.leq(phi[x], phi[y]) for x in phi for y in phi if A.leq(x, y))
            checks["psi_order_preserving"] = all(
                A.leq(psi[x], psi[y]) for x in psi for y in psi if B.leq(x, y))
    failure = None
    for name, ok in checks.items():
        if not ok:
            failure = (name, None)
            break
    return CorrespondenceResult(
        script_A, script_B, phi, psi, mode, checks,
        facts={"psi_well_defined": psi_ok, "script_B_matches_closed_preimages": coincide},
        failure_witness=failure,
    )


def closed_galois_equivalence(G: GaloisConnection) -> bool:
    """Whether the closed-element bijections are plain restrictions of alpha and beta.

    Both sides of the equivalence (restriction form; every closed element
    of ``B`` is Galois) are evaluated independently and must agree.
    """
    res = closed_correspondence(G, "modular")
    if not res.verified:
        raise TheoremViolation(f"closed correspondence failed: {res.failure_witness}")
    restriction = (all(res.phi[a] == G.al[a] for a in res.phi)
                   and all(res.psi[b] == G.be[b] for b in res.psi))
    all_galois = all(G.ab(b) == b for b in closed_elements(G.B))
    if restriction != all_galois:
        raise TheoremViolation("restriction form and closed-Galois form disagree")
    return restriction


def verify_extending_transfer(G: GaloisConnection) -> TheoremReport:
    """Extending transfers B -> A when beta is additive, and A -> B when alpha(1) = 1."""
    r = classify(G)
    _require([
        ("essential", r.essential), ("retractable", r.retractable), ("uc", r.uc),
        ("A modular", is_modular(G.A)), ("B modular", is_modular(G.B)),
    ])
    ext_A, ext_B = is_extending(G.A), is_extending(G.B)
    clauses = {}
    if r.beta_additive:
        clauses["to_domain"] = _verdict(ext_A) if ext_B else VACUOUS
    else:
        clauses["to_domain"] = SKIP
    if r.alpha_top:
        clauses["to_codomain"] = _verdict(ext_B) if ext_A else VACUOUS
    else:
        clauses["to_codomain"] = SKIP
    return TheoremReport("extending", clauses, {"A_extending": ext_A, "B_extending": ext_B})


def verify_dual_correspondence(G: GaloisConnection) -> TheoremReport:
    """Coclosed elements of A and B in bijection under coessential coretractable UCC hypotheses.

    Runs the modular closed correspondence on :func:`dual_connection` and
    reports it in terms of the original lattices.
    """
    r = classify(G)
    _require([
        ("coessential", r.coessential), ("coretractable", r.coretractable), ("ucc", r.ucc),
        ("A modular", is_modular(G.A)), ("B modular", is_modular(G.B)),
        ("A amply supplemented", is_amply_supplemented_literal(G.A)),
    ])
    D = dual_connection(G)
    res = closed_correspondence(D, "modular")
    order_keys = ("phi_order_preserving", "psi_order_preserving")
    bijection_ok = all(ok for k, ok in res.checks.items() if k not in order_keys)
    clauses = {"bijection": _verdict(bijection_ok)}
    if is_ucc(G.A):
        clauses["order_preserving"] = _verdict(all(res.checks[k] for k in order_keys))
    else:
        clauses["order_preserving"] = SKIP
    A, B = G.A, G.B
    details = {
        "coclosed_A": sorted(A.names[a] for a in res.script_B),
        "coclosed_B": sorted(B.names[b] for b in res.script_A),
        "A_to_B": {A.names[a]: B.names[b] for a, b in sorted(res.psi.items())},
        "B_to_A": {B.names[b]: A.names[a] for b, a in sorted(res.phi.items())},
    }
    return TheoremReport("dual_correspondence", clauses, details)


# -- lemma-level statement checks -----------------------------------------

def _essential_or_below(L: Lattice, a: int, c: int) -> bool:
    return L.leq(a, c) and _essential(L, a, c)


def check_connection_lemmas(G: GaloisConnection) -> dict[str, bool | None]:
    """Evaluate the standard consequences of the connection properties.

    ``None`` marks a statement whose hypotheses ``G`` does not satisfy.
    """
    A, B, al, be = G.A, G.B, G.al, G.be
    r = classify(G)
    out: dict[str, bool | None] = {}
    out["alpha_preserves_joins"] = all(
        al[A.join[x][y]] == B.join[al[x]][al[y]] for x in range(A.n) for y in range(A.n))
    out["beta_preserves_meets"] = all(
        be[B.meet[x][y]] == A.meet[be[x]][be[y]] for x in range(B.n) for y in range(B.n))
    left, right = galois_elements(G)
    out["galois_elements_bijection"] = (
        {al[a] for a in left} == set(right) and all(be[al[a]] == a for a in left)
        and all(al[be[b]] == b for b in right))
    out["retractable_iff_beta_reflects_zero"] = (
        r.retractable == (_beta_reflects_zero_witness(G) is None))
    out["retractable_iff_beta_kernel_trivial"] = (
        None if be[B.bottom] != A.bottom
        else r.retractable == all(be[b] != A.bottom for b in range(B.n) if b != B.bottom))

    if r.essential:
        out["closed_are_galois"] = closed_elements(A) <= left and r.beta_bottom
    else:
        out["closed_are_galois"] = None

    def disjoint_images(elements):
        elements = sorted(elements)
        return all(B.meet[al[x]][al[y]] == B.bottom
                   for x in elements for y in elements if A.meet[x][y] == A.bottom)

    out["disjoint_images"] = disjoint_images(range(A.n)) if r.essential and r.retractable else None
    out["disjoint_images_cyclic"] = (
        disjoint_images(cyclic_elements(A)) if r.cyclically_essential and r.retractable else None)
    if r.essential and r.retractable and r.alpha_top:
        out["complements_preserved"] = all(
            al[c] in complements_of(B, al[a]) for a in range(A.n) for c in complements_of(A, a))
    else:
        out["complements_preserved"] = None

    transfer = r.retractable and r.beta_bottom
    if transfer:
        out["beta_essential_pullback"] = all(
            _essential(B, B.meet[b][c], c)
            for b in range(B.n) for c in range(B.n) if _essential_or_below(A, be[b], be[c]))
        out["alpha_essential_on_galois"] = all(
            _essential(B, al[a], al[c])
            for c in left for a in bits(A.down[c]) if _essential(A, a, c))
    else:
        out["beta_essential_pullback"] = out["alpha_essential_on_galois"] = None

    def beta_preserves_essential():
        return all(_essential(A, be[b], be[c])
                   for c in range(B.n) for b in bits(B.down[c]) if _essential(B, b, c))

    def alpha_reflects_essential(elements):
        return all(_essential(A, A.meet[a][c], c)
                   for a in sorted(elements) for c in range(A.n)
                   if _essential_or_below(B, al[a], al[c]))

    if transfer and r.essential:
        out["beta_preserves_essential"] = beta_preserves_essential()
        out["alpha_reflects_essential"] = alpha_reflects_essential(range(A.n))
    else:
        out["beta_preserves_essential"] = out["alpha_reflects_essential"] = None
    if transfer and r.cyclically_essential and is_cyclically_generated(A):
        out["beta_preserves_essential_cyclic"] = beta_preserves_essential()
        out["alpha_reflects_essential_cyclic"] = alpha_reflects_essential(cyclic_elements(A))
    else:
        out["beta_preserves_essential_cyclic"] = out["alpha_reflects_essential_cyclic"] = None

    # sufficient conditions on the lattices, with the side conditions they need
    out["uniform_domain_essential"] = (
        r.essential if is_uniform(A) and r.beta_bottom else None)
    nonvanishing = all(G.ab(b) != B.bottom for b in range(B.n) if b != B.bottom)
    out["uniform_codomain_retractable"] = (
        r.retractable if is_uniform(B) and nonvanishing else None)
    out["uc_codomain_uc"] = r.uc if is_uc(B) and r.retractable else None
    return out
