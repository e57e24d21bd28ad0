"""Exhaustive enumeration of small lattices and adjoint pairs, witness search
with boolean property queries, and the sweep that checks every implemented
statement on every enumerated instance."""

from __future__ import annotations

import os
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Iterator

from .errors import BoundExceeded, BudgetExceeded, HypothesisNotMet, LatgalError, ParseError
from .essentiality import check_lattice_lemmas, is_extending, is_uc, is_uniform
from .formats import format_lattice, format_map
from .galois import (
    FAIL, FLAG_NAMES, PASS, SKIP, VACUOUS, GaloisConnection, check_connection_lemmas, classify,
    closed_correspondence, closed_galois_equivalence, from_tables, verify_dual_correspondence,
    verify_extending_transfer, verify_udim_theorem,
)
from .lattice import (
    Lattice, bits, canonical_form, canonical_order, is_cyclically_generated, is_distributive,
    is_modular, relabel,
)

MAX_LATTICE_SIZE = 8
MAX_WITNESS_SIZE = 7
DEFAULT_BUDGET = 64


# -- lattices ----------------------------------------------------------------

def _posets(m: int) -> Iterator[list[int]]:
    """Naturally labelled posets on ``m`` points as strict down-set masks.

    Point ``i`` may only lie above points ``j < i``, and its set of lower
    points is chosen down-closed, so transitivity holds by construction.
    """
    below: list[int] = []

    def extend(i: int):
        if i == m:
            yield list(below)
            return
        for s in range(1 << i):
            if all(below[j] & ~s == 0 for j in bits(s)):
                below.append(s)
                yield from extend(i + 1)
                below.pop()

    yield from extend(0)


def _with_bounds(below: list[int]) -> list[int]:
    """Down-set masks of the poset with a new bottom (index 0) and top (last)."""
    m = len(below)
    down = [1]
    for i, s in enumerate(below):
        down.append(1 | (s << 1) | (1 << (i + 1)))
    down.append((1 << (m + 2)) - 1)
    return down


def _element_names(n: int) -> list[str]:
    return ["0"] + [f"e{i}" for i in range(1, n - 1)] + ["1"]


@lru_cache(maxsize=None)
def _lattices(n: int) -> tuple[Lattice, ...]:
    if n == 1:
        return ()
    names = _element_names(n)
    found: dict[tuple, Lattice] = {}
    for below in _posets(n - 2):
        try:
            L = Lattice(names, _with_bounds(below))
        except LatgalError:
            continue
        key = canonical_form(L)
        if key not in found:
            found[key] = L
    out = []
    for k, key in enumerate(sorted(found)):
        L = found[key]
        out.append(relabel(L, canonical_order(L), names, name=f"n{n}_{k}"))
    return tuple(out)


def enumerate_lattices(n: int) -> Iterator[Lattice]:
    """All bounded lattices with ``n`` elements up to isomorphism, in canonical order.

    Elements are named ``0``, ``e1``, ..., ``1``; the ``k``-th lattice is ``n{n}_{k}``.
    """
    if not 2 <= n <= MAX_LATTICE_SIZE:
        raise BoundExceeded(f"lattice size must be between 2 and {MAX_LATTICE_SIZE}, got {n}")
    return iter(_lattices(n))


def lattices_up_to(max_n: int) -> list[Lattice]:
    return [L for n in range(2, max_n + 1) for L in enumerate_lattices(n)]


# -- adjoint pairs -----------------------------------------------------------

def _right_adjoints(A: Lattice, B: Lattice) -> Iterator[tuple[int, ...]]:
    """Every ``beta: B -> A`` preserving the top and all binary meets."""
    order = sorted(range(B.n), key=lambda b: (-bin(B.down[b]).count("1"), b))
    beta = [-1] * B.n
    # for each b, the assigned pairs whose meet is b (they come earlier in `order`)
    pos = {b: i for i, b in enumerate(order)}
    forcing = [[] for _ in range(B.n)]
    for c in range(B.n):
        for d in range(c + 1, B.n):
            m = B.meet[c][d]
            if m != c and m != d:
                forcing[m].append((c, d))
    above = [[c for c in bits(B.up[b]) if c != b] for b in range(B.n)]

    def candidates(b: int) -> list[int]:
        if b == B.top:
            return [A.top]
        bound = A.top
        for c in above[b]:
            bound = A.meet[bound][beta[c]]
        if forcing[b]:
            c, d = forcing[b][0]
            v = A.meet[beta[c]][beta[d]]
            return [v] if all(A.meet[beta[x]][beta[y]] == v for x, y in forcing[b]) else []
        return list(bits(A.down[bound]))

    def assign(i: int):
        if i == len(order):
            yield tuple(beta)
            return
        b = order[i]
        for v in candidates(b):
            beta[b] = v
            yield from assign(i + 1)
        beta[b] = -1

    assert all(pos[c] < pos[m] for m in range(B.n) for c, _ in forcing[m])
    yield from assign(0)


def _left_adjoint(A: Lattice, B: Lattice, beta: tuple[int, ...]) -> list[int]:
    alpha = []
    for a in range(A.n):
        m = B.top
        for b in range(B.n):
            if A.leq(a, beta[b]):
                m = B.meet[m][b]
        alpha.append(m)
    return alpha


def enumerate_connections(A: Lattice, B: Lattice, budget: int = DEFAULT_BUDGET
                          ) -> Iterator[GaloisConnection]:
    """Every Galois connection ``A -> B``, generated from its right adjoint.

    Each candidate pair is re-verified by the connection constructor.
    ``budget`` caps ``|A| * |B|``.
    """
    if A.n * B.n > budget:
        raise BudgetExceeded(f"|A|*|B| = {A.n * B.n} exceeds the budget {budget}")
    for beta in _right_adjoints(A, B):
        yield from_tables(A, B, _left_adjoint(A, B, beta), beta)


# -- queries -----------------------------------------------------------------

LATTICE_PREDICATES: dict[str, Callable[[Lattice], bool]] = {
    "modular": is_modular,
    "distributive": is_distributive,
    "uc": is_uc,
    "uniform": is_uniform,
    "extending": lambda L: is_modular(L) and is_extending(L),
    "cyclically_generated": is_cyclically_generated,
}

_TOKEN = re.compile(r"\s*(?:(?P<op>[()¬!∧&∨|])|(?P<word>[A-Za-z_][A-Za-z0-9_.]*))")
_WORD_OPS = {"and": "and", "or": "or", "not": "not"}
_SYMBOL_OPS = {"∧": "and", "&": "and", "∨": "or", "|": "or", "¬": "not", "!": "not"}


@dataclass(frozen=True)
class PropertyQuery:
    """A boolean formula over property names, evaluated on a connection or a lattice.

    Connection queries use the classification flags by bare name and the
    lattice predicates of either side as ``A.<name>`` / ``B.<name>``.
    Lattice queries use the lattice predicates by bare name.
    """

    tree: tuple
    target: str

    @classmethod
    def parse(cls, text: str, target: str | None = None) -> "PropertyQuery":
        tokens = _tokenize(text)
        parser = _Parser(tokens, text)
        tree = parser.expr()
        if parser.i != len(tokens):
            raise ParseError(f"unexpected {tokens[parser.i][1]!r}", 1, tokens[parser.i][2] + 1)
        names = _names(tree)
        if target is None:
            lattice_only = set(LATTICE_PREDICATES) - set(FLAG_NAMES)
            target = "lattice" if names and all(x in lattice_only for x in names) else "connection"
        if target not in ("connection", "lattice"):
            raise ValueError("target must be 'connection' or 'lattice'")
        for x in names:
            if target == "lattice":
                ok = x in LATTICE_PREDICATES
            else:
                side, _, pred = x.partition(".")
                ok = x in FLAG_NAMES or (side in ("A", "B") and pred in LATTICE_PREDICATES)
            if not ok:
                raise ParseError(f"unknown property {x!r} for a {target} query", 1,
                                 text.find(x) + 1 if x in text else None)
        return cls(tree, target)

    def __str__(self) -> str:
        return _show(self.tree)

    @property
    def names(self) -> set[str]:
        return _names(self.tree)

    def evaluate(self, lookup: Callable[[str], bool]) -> bool:
        return _eval(self.tree, lookup)

    def holds_for(self, obj) -> bool:
        if self.target == "lattice":
            return self.evaluate(lambda x: LATTICE_PREDICATES[x](obj))
        flags = classify(obj).flags()

        def lookup(x: str) -> bool:
            if x in flags:
                return flags[x]
            side, _, pred = x.partition(".")
            return LATTICE_PREDICATES[pred](obj.A if side == "A" else obj.B)

        return self.evaluate(lookup)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    i = 0
    while i < len(text):
        if text[i:].strip() == "":
            break
        m = _TOKEN.match(text, i)
        if not m:
            j = i + len(text[i:]) - len(text[i:].lstrip())
            raise ParseError(f"unexpected character {text[j]!r}", 1, j + 1)
        if m.group("op"):
            sym = m.group("op")
            kind = _SYMBOL_OPS.get(sym, sym)
            out.append((kind, sym, m.start("op")))
        else:
            w = m.group("word")
            out.append((_WORD_OPS.get(w, "name"), w, m.start("word")))
        i = m.end()
    return out


class _Parser:
    def __init__(self, tokens, text):
        self.tokens, self.text, self.i = tokens, text, 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def fail(self, msg):
        col = self.tokens[self.i][2] + 1 if self.i < len(self.tokens) else len(self.text) + 1
        raise ParseError(msg, 1, col)

    def expr(self):
        node = self.conj()
        while self.peek() == "or":
            self.i += 1
            node = ("or", node, self.conj())
        return node

    def conj(self):
        node = self.neg()
        while self.peek() == "and":
            self.i += 1
            node = ("and", node, self.neg())
        return node

    def neg(self):
        if self.peek() == "not":
            self.i += 1
            return ("not", self.neg())
        return self.atom()

    def atom(self):
        kind = self.peek()
        if kind == "(":
            self.i += 1
            node = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.i += 1
            return node
        if kind == "name":
            name = self.tokens[self.i][1]
            self.i += 1
            return ("var", name)
        self.fail("expected a property name or '('")


def _names(t) -> set[str]:
    if t[0] == "var":
        return {t[1]}
    return set().union(*(_names(c) for c in t[1:]))


def _eval(t, lookup) -> bool:
    op = t[0]
    if op == "var":
        return bool(lookup(t[1]))
    if op == "not":
        return not _eval(t[1], lookup)
    if op == "and":
        return _eval(t[1], lookup) and _eval(t[2], lookup)
    return _eval(t[1], lookup) or _eval(t[2], lookup)


_PREC = {"or": 1, "and": 2, "not": 3, "var": 4}


def _show(t, parent: int = 0) -> str:
    op = t[0]
    if op == "var":
        return t[1]
    if op == "not":
        return "not " + _show(t[1], _PREC["not"])
    p = _PREC[op]
    # binary operators associate to the left, so a right child of equal
    # precedence needs brackets to survive a round trip
    s = f"{_show(t[1], p)} {op} {_show(t[2], p + 1)}"
    return f"({s})" if p < parent else s


@dataclass
class Witness:
    instance: Any
    certificate: dict[str, Any]


def find_witness(q: PropertyQuery, max_n: int, budget: int = DEFAULT_BUDGET) -> Witness | None:
    """The first instance satisfying ``q``.

    Lattices are tried by size, then canonical order; connections by
    ``|A| + |B|``, then ``|A|``, then lattice order, then enumeration order.
    """
    if q.target == "lattice":
        for L in lattices_up_to(min(max_n, MAX_LATTICE_SIZE)):
            if q.holds_for(L):
                return Witness(L, {p: f(L) for p, f in LATTICE_PREDICATES.items()})
        return None
    if max_n > MAX_WITNESS_SIZE:
        raise BoundExceeded(f"connection search is limited to lattices of size {MAX_WITNESS_SIZE}")
    for total in range(4, 2 * max_n + 1):
        for na in range(2, total - 1):
            nb = total - na
            if na > max_n or nb > max_n:
                continue
            for A in enumerate_lattices(na):
                for B in enumerate_lattices(nb):
                    for G in enumerate_connections(A, B, max(budget, na * nb)):
                        if q.holds_for(G):
                            return Witness(G, classify(G).to_json(G))
    return None


# -- the statement sweep -------------------------------------------------------

CONNECTION_LEMMA_GROUPS = {
    "adjunction": ("alpha_preserves_joins", "beta_preserves_meets", "galois_elements_bijection"),
    "connection_properties": (
        "retractable_iff_beta_reflects_zero", "retractable_iff_beta_kernel_trivial",
        "closed_are_galois", "disjoint_images", "disjoint_images_cyclic", "complements_preserved",
    ),
    "essentiality_transfer": (
        "beta_essential_pullback", "alpha_essential_on_galois", "beta_preserves_essential",
        "alpha_reflects_essential", "beta_preserves_essential_cyclic",
        "alpha_reflects_essential_cyclic",
    ),
    "sufficient_conditions": (
        "uniform_domain_essential", "uniform_codomain_retractable", "uc_codomain_uc",
    ),
}

STATEMENTS = (
    "lattice_essentiality", *CONNECTION_LEMMA_GROUPS, "uniform_dimension",
    "closed_correspondence_general", "closed_correspondence_modular", "closed_galois_restriction",
    "extending_transfer", "dual_correspondence",
)


@dataclass
class ClauseStats:
    tested: int = 0
    vacuous: int = 0
    failures: int = 0

    def add(self, outcome: str) -> None:
        if outcome == PASS:
            self.tested += 1
        elif outcome == FAIL:
            self.tested += 1
            self.failures += 1
        else:
            self.vacuous += 1


@dataclass
class SuiteReport:
    max_n: int
    lattices: int = 0
    connections: int = 0
    clauses: dict[str, dict[str, ClauseStats]] = field(default_factory=dict)
    failures: list[dict[str, Any]] = field(default_factory=list)

    def record(self, statement: str, clause: str, outcome: str) -> None:
        self.clauses.setdefault(statement, {}).setdefault(clause, ClauseStats()).add(outcome)

    def merge(self, other: "SuiteReport") -> None:
        self.lattices += other.lattices
        self.connections += other.connections
        for st, cl in other.clauses.items():
            for name, s in cl.items():
                mine = self.clauses.setdefault(st, {}).setdefault(name, ClauseStats())
                mine.tested += s.tested
                mine.vacuous += s.vacuous
                mine.failures += s.failures
        self.failures.extend(other.failures)

    @property
    def total_failures(self) -> int:
        return sum(s.failures for cl in self.clauses.values() for s in cl.values())

    def untested(self) -> list[str]:
        return [f"{st}.{name}" for st, cl in self.clauses.items() for name, s in cl.items()
                if s.tested == 0]

    def to_json(self) -> dict[str, Any]:
        return {
            "max_n": self.max_n,
            "lattices": self.lattices,
            "connections": self.connections,
            "failures": self.total_failures,
            "clauses": {
                st: {name: vars(s) for name, s in sorted(cl.items())}
                for st, cl in sorted(self.clauses.items())
            },
        }


def _outcome(value: bool | None) -> str:
    return VACUOUS if value is None else (PASS if value else FAIL)


_REPORT_CLAUSES = {
    "uniform_dimension": ("bound", "essential_equality", "cyclic_equality"),
    "extending_transfer": ("to_domain", "to_codomain"),
    "dual_correspondence": ("bijection", "order_preserving"),
}
_CORRESPONDENCE_CLAUSES = {
    "general": ("phi_well_defined", "psi_criterion", "mutually_inverse"),
    "modular": ("phi_well_defined", "psi_criterion", "mutually_inverse", "script_A_is_closed_A",
                "script_B_is_closed_B", "beta_of_closed_is_closed", "phi_order_preserving",
                "psi_order_preserving"),
}


def _check_connection(G: GaloisConnection, rep: SuiteReport) -> list[str]:
    failed: list[str] = []

    def note(statement, clause, outcome):
        rep.record(statement, clause, outcome)
        if outcome == FAIL:
            failed.append(f"{statement}.{clause}")

    lemmas = check_connection_lemmas(G)
    for group, keys in CONNECTION_LEMMA_GROUPS.items():
        for k in keys:
            note(group, k, _outcome(lemmas[k]))
    for statement, fn in (("uniform_dimension", verify_udim_theorem),
                          ("extending_transfer", verify_extending_transfer),
                          ("dual_correspondence", verify_dual_correspondence)):
        try:
            res = fn(G)
        except HypothesisNotMet:
            for clause in _REPORT_CLAUSES[statement]:
                note(statement, clause, VACUOUS)
            continue
        for clause in _REPORT_CLAUSES[statement]:
            note(statement, clause, res.clauses.get(clause, SKIP))
    for mode in ("general", "modular"):
        statement = f"closed_correspondence_{mode}"
        try:
            res = closed_correspondence(G, mode)
        except HypothesisNotMet:
            for clause in _CORRESPONDENCE_CLAUSES[mode]:
                note(statement, clause, VACUOUS)
            continue
        for clause in _CORRESPONDENCE_CLAUSES[mode]:
            ok = res.checks.get(clause)
            note(statement, clause, _outcome(ok))
    try:
        closed_galois_equivalence(G)
        note("closed_galois_restriction", "forms_agree", PASS)
    except HypothesisNotMet:
        note("closed_galois_restriction", "forms_agree", VACUOUS)
    return failed


def _write_reproducer(directory: Path, tag: str, G: GaloisConnection) -> str:
    d = directory / tag
    d.mkdir(parents=True, exist_ok=True)
    (d / "A.lat").write_text(format_lattice(G.A))
    (d / "B.lat").write_text(format_lattice(G.B))
    (d / "alpha.map").write_text(format_map("alpha", G.alpha, "A.lat", "B.lat"))
    (d / "beta.map").write_text(format_map("beta", G.beta, "B.lat", "A.lat"))
    return str(d)


def _sweep_pair(args) -> SuiteReport:
    max_n, ia, ib, reproducer_dir = args
    lats = lattices_up_to(max_n)
    A, B = lats[ia], lats[ib]
    rep = SuiteReport(max_n)
    for k, G in enumerate(enumerate_connections(A, B, budget=max_n * max_n)):
        rep.connections += 1
        try:
            failed = _check_connection(G, rep)
        except LatgalError as exc:  # an internal cross-check raised
            rep.record("alarms", type(exc).__name__, FAIL)
            failed = [f"alarm:{exc}"]
        if failed:
            entry = {"A": A.name, "B": B.name, "index": k, "alpha": list(G.al),
                     "beta": list(G.be), "failed": failed}
            if reproducer_dir is not None:
                entry["reproducer"] = _write_reproducer(Path(reproducer_dir),
                                                        f"{A.name}__{B.name}__{k}", G)
            rep.failures.append(entry)
    return rep


def run_theorem_suite(max_n: int = 6, workers: int | None = None,
                      reproducer_dir: str | os.PathLike | None = None) -> SuiteReport:
    """Check every implemented statement on all lattices and connections up to ``max_n``.

    ``workers`` > 1 spreads lattice pairs over processes; the merged report
    does not depend on it.
    """
    if not 2 <= max_n <= MAX_LATTICE_SIZE:
        raise BoundExceeded(f"max_n must be between 2 and {MAX_LATTICE_SIZE}")
    lats = lattices_up_to(max_n)
    report = SuiteReport(max_n, lattices=len(lats))
    for L in lats:
        for k, v in check_lattice_lemmas(L).items():
            report.record("lattice_essentiality", k, _outcome(v))
            if v is False:
                report.failures.append({"lattice": L.name, "failed": [f"lattice_essentiality.{k}"]})
    jobs = [(max_n, ia, ib, str(reproducer_dir) if reproducer_dir else None)
            for ia in range(len(lats)) for ib in range(len(lats))]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_pair, jobs, chunksize=4))
    else:
        parts = [_sweep_pair(j) for j in jobs]
    for part in parts:
        report.merge(part)
    return report


def counts(max_n: int) -> dict[int, int]:
    return dict(Counter(L.n for L in lattices_up_to(max_n)))
