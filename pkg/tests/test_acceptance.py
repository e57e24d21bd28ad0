"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line in ``RESULTS``; ``conftest.py`` prints
them at the end of the run.  Criteria 2 and 3 cannot be met as stated (the
reference tables for those two connections are not order-preserving, and an
exhaustive search shows no valid replacement with the claimed flags on the
same lattices), so they are strict xfails: pytest stays green and the
summary shows FAIL with the reason.
"""

import itertools
import json
import time

import pytest

from latgal.abelian import (
    FinAbGroup, bimodule, groups_up_to, is_coretractable_module, is_retractable_module, is_semi_injective,
    is_semi_projective, subgroup_lattice,
)
from latgal.cli import main
from latgal.errors import NotMonotone
from latgal.essentiality import (
    closed_elements, closures_of, hollow_dimension, is_essential_in, is_join_independent, is_uc,
    is_uniform, join_independent_incremental, uniform_dimension,
)
from latgal.fixtures import connection, fixture_path, lattice as fixture
from latgal.formats import format_lattice, load_lattice, save_lattice
from latgal.galois import (
    classify, closed_correspondence, galois_elements, is_beta_additive,
)
from latgal.lattice import cyclic_elements, is_modular
from latgal.search import STATEMENTS, enumerate_connections, lattices_up_to, run_theorem_suite
from oracles import Order

RESULTS: dict[int, str] = {}


def record(number, title, ok, detail=""):
    RESULTS[number] = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}" + (
        f": {detail}" if detail else "")
    return ok


def labels(L, xs):
    return {L.names[x] for x in xs}


def pair_labels(L, exc):
    x, y = exc.pair
    return f"{L.names[x]} <= {L.names[y]}"


def test_criterion_1_grid_connection():
    t0 = time.perf_counter()
    G = connection("grid")
    A, B = G.A, G.B
    r = classify(G)
    left, right = galois_elements(G)
    closed = closed_elements(B)
    checks = {
        "flags": (r.essential, r.retractable, r.uc) == (True, True, True),
        "galois_A": labels(A, left) == {"0", "H3", "H5", "G"},
        "galois_B": labels(B, right) == {"0", "H1", "H2", "H4"},
        "closed": labels(A, closed_elements(A)) == {"0", "H3", "H5", "G"},
        "H3_closed_not_galois": B.index("H3") in closed and B.index("H3") not in right,
    }
    elapsed = time.perf_counter() - t0
    checks["time"] = elapsed < 1
    failed = [k for k, v in checks.items() if not v]
    assert record(1, "grid connection reproduced", not failed,
                  f"{elapsed:.3f}s" if not failed else f"failed {failed}")


def _z2z4_search():
    L = fixture("z2z4")
    conns = list(enumerate_connections(L, L))
    bad = [G for G in conns if classify(G).essential and classify(G).retractable
           and not classify(G).uc]
    return len(conns), bad


@pytest.mark.xfail(strict=True, reason="the reference Z2xZ4 tables are not order-preserving; "
                   "no connection on that lattice is essential, retractable and not UC")
def test_criterion_2_z2z4_connection():
    t0 = time.perf_counter()
    L = fixture("z2z4")
    closures_ok = labels(L, closures_of(L, L.index("H3")).closures) == {"H5", "H6"}
    flags_ok = False
    try:
        r = classify(connection("z2z4"))
        flags_ok = r.essential and r.retractable and not r.uc
        tables = f"flags essential={r.essential} retractable={r.retractable} uc={r.uc}"
    except NotMonotone as exc:
        tables = f"reference alpha not monotone on {pair_labels(L, exc)}"
    total, hits = _z2z4_search()
    elapsed = time.perf_counter() - t0
    detail = (f"closures_of(H3) = {{H5, H6}} {'reproduced' if closures_ok else 'WRONG'}; "
              f"{tables}; {len(hits)} of {total} connections are essential+retractable+not UC")
    assert record(2, "Z2xZ4 connection", closures_ok and flags_ok and elapsed < 1, detail)


@pytest.mark.xfail(strict=True, reason="the reference lattice-C tables are not order-preserving; "
                   "no connection C -> C is cyclically essential but not essential")
def test_criterion_3_abstract_examples():
    t0 = time.perf_counter()
    parts = {}
    G = connection("a9b8")
    A, B = G.A, G.B
    r = classify(G)
    w = r.witness_labels(G)
    a4, a6, b2, b4 = A.index("a4"), A.index("a6"), B.index("b2"), B.index("b4")
    parts["(1)"] = (
        not (r.essential or r.retractable or r.uc)
        and (w["essential"], w["retractable"], w["uc"]) == ("a3", "b2", "b5")
        and G.ba(a4) == a4 and a4 not in closed_elements(A)
        and is_essential_in(A, a4, a6) and not is_essential_in(B, G.al[a4], G.al[a6])
        and is_essential_in(B, b2, b4) and not is_essential_in(A, G.be[b2], G.be[b4])
    )
    r2 = classify(connection("a9b8_retractable"))
    parts["(2)"] = r2.retractable and not r2.essential and not r2.uc
    C = fixture("c7")
    cyclic_ok = labels(C, cyclic_elements(C)) == {"0", "c1", "c2", "c3", "c4"}
    try:
        G3 = connection("c7")
        r3 = classify(G3)
        parts["(3)"] = (cyclic_ok and r3.cyclically_essential and not r3.essential
                        and r3.witness_labels(G3)["essential"] == "c5")
        note = ""
    except NotMonotone as exc:
        parts["(3)"] = False
        separating = [H for H in enumerate_connections(C, C)
                      if classify(H).cyclically_essential and not classify(H).essential]
        note = (f"; (3) reference alpha not monotone on {pair_labels(C, exc)}, cyclic elements "
                f"{'reproduced' if cyclic_ok else 'WRONG'}, {len(separating)} separating "
                f"connections on C")
    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"{k} {'ok' if v else 'FAIL'}" for k, v in parts.items()) + note
    assert record(3, "abstract-lattice examples", all(parts.values()) and elapsed < 1, detail)


def test_criterion_4_statement_suite():
    t0 = time.perf_counter()
    rep = run_theorem_suite(5)
    elapsed = time.perf_counter() - t0
    missing = [s for s in STATEMENTS if s not in rep.clauses]
    untested = rep.untested()
    ok = rep.total_failures == 0 and not untested and not missing and elapsed < 600
    detail = (f"{rep.lattices} lattices, {rep.connections} connections, "
              f"{sum(len(c) for c in rep.clauses.values())} clauses, "
              f"{rep.total_failures} failures, untested {untested or 'none'}, {elapsed:.1f}s")
    assert record(4, "statement suite up to size 5", ok, detail)


def test_criterion_5_dimensions():
    grid = fixture("grid9")
    d = uniform_dimension(grid)
    grid_ok = d.value == 2 and labels(grid, d.witness) == {"H1", "H2"}
    lats = lattices_up_to(7) + [fixture(n) for n in ("grid9", "z2z4", "a9", "b8", "c7", "d7")]
    uniform_ok = all((uniform_dimension(L).value == 1) == is_uniform(L) for L in lats)
    orders = 0
    agree = True
    for L in lattices_up_to(6):
        if not is_modular(L):
            continue
        P = Order.of(L)
        nonzero = [x for x in range(L.n) if x != L.bottom]
        for k in range(1, len(nonzero) + 1):
            for ys in itertools.combinations(nonzero, k):
                full = is_join_independent(L, ys)
                agree &= full == P.independent(ys)
                for order in itertools.permutations(ys):
                    agree &= join_independent_incremental(L, order) == full
                    orders += 1
    ok = grid_ok and uniform_ok and agree
    assert record(5, "dimension checks", ok,
                  f"udim(grid9) = {d.value} via {sorted(labels(grid, d.witness))}; "
                  f"{orders} orderings compared")


def test_criterion_6_module_layer():
    t0 = time.perf_counter()
    problems = []
    for name in ("4", "2,4"):
        M = FinAbGroup.parse(name)
        H = bimodule(M, M)
        H.connection_rm_lu, H.connection_rn_lu  # constructing them runs the adjunction check
    groups = groups_up_to(8)
    counted = {"dim_i": 0, "dim_ii": 0, "dim_iii": 0, "dim_iv": 0}
    for M, N in itertools.product(groups, groups):
        H = bimodule(M, N)
        rn, rm = H.connection_rn_lu, H.connection_rm_lu
        if is_retractable_module(M, N) != classify(rn).retractable:
            problems.append(("retractable", M.name, N.name))
        if is_coretractable_module(M, N) != classify(rm).retractable:
            problems.append(("coretractable", M.name, N.name))
        if not is_beta_additive(rn):
            problems.append(("additive", M.name, N.name))
        udim_n = uniform_dimension(subgroup_lattice(N)).value
        udim_s = uniform_dimension(H.s_lattice).value
        hdim_m = hollow_dimension(subgroup_lattice(M)).value
        udim_t = uniform_dimension(H.t_lattice).value
        if is_retractable_module(M, N):
            counted["dim_i"] += 1
            if udim_n > udim_s:
                problems.append(("dim_i", M.name, N.name))
            if is_semi_projective(M, N):
                counted["dim_iii"] += 1
                if udim_n != udim_s:
                    problems.append(("dim_iii", M.name, N.name))
        if is_coretractable_module(M, N):
            counted["dim_ii"] += 1
            if hdim_m > udim_t:
                problems.append(("dim_ii", M.name, N.name))
            if is_semi_injective(M, N):
                counted["dim_iv"] += 1
                if hdim_m != udim_t:
                    problems.append(("dim_iv", M.name, N.name))
    elapsed = time.perf_counter() - t0
    ok = not problems and all(counted.values()) and elapsed < 300
    assert record(6, "module layer", ok,
                  f"{len(groups) ** 2} group pairs, instances {counted}, "
                  f"problems {problems or 'none'}, {elapsed:.1f}s")


def _correspondence_instances():
    for A in lattices_up_to(5):
        for B in lattices_up_to(5):
            yield from enumerate_connections(A, B)
    for name in ("grid", "z2z4_identity", "a9b8", "a9b8_retractable", "d7m3"):
        yield connection(name)
    groups = groups_up_to(8)
    for M, N in itertools.product(groups, groups):
        H = bimodule(M, N)
        yield H.connection_rn_lu
        yield H.connection_rm_lu


def test_criterion_7_correspondence():
    tested = ordered = 0
    failures = []
    for G in _correspondence_instances():
        r = classify(G)
        if not (r.essential and r.retractable and r.uc and is_modular(G.A) and is_modular(G.B)):
            continue
        res = closed_correspondence(G, "modular")
        tested += 1
        core = all(v for k, v in res.checks.items() if not k.endswith("order_preserving"))
        sets = (res.script_A == closed_elements(G.A) and res.script_B == closed_elements(G.B))
        if is_uc(G.B):
            ordered += 1
            core &= res.checks["phi_order_preserving"] and res.checks["psi_order_preserving"]
        if not (core and sets):
            failures.append((G.A.name, G.B.name, res.failure_witness))
    ok = tested > 0 and ordered > 0 and not failures
    assert record(7, "closed-element correspondence", ok,
                  f"{tested} instances, {ordered} with order check, {len(failures)} failures")


def test_criterion_8_cli_contract(capsys, tmp_path):
    from test_cli import GOLDEN, MATRIX
    mismatched = []
    for name, argv, code in MATRIX:
        got = main(argv)
        out = capsys.readouterr().out
        if got != code or out != (GOLDEN / f"{name}.json").read_text(encoding="utf-8"):
            mismatched.append(name)
        json.loads(out)
    stable = True
    for name in ("grid9", "z2z4", "a9", "b8", "c7", "d7", "m3"):
        L = load_lattice(fixture_path(f"{name}.lat"))
        p = tmp_path / f"{name}.lat"
        save_lattice(L, p)
        stable &= format_lattice(load_lattice(p)) == format_lattice(L)
    from latgal.cli import build_parser
    commands = {argv[0] for _, argv, _ in MATRIX}
    all_commands = set(build_parser()._subparsers._group_actions[0].choices)
    ok = not mismatched and stable and commands == all_commands
    assert record(8, "CLI contract", ok,
                  f"{len(MATRIX)} invocations over {len(commands)} commands, "
                  f"mismatches {mismatched or 'none'}, round-trip {'stable' if stable else 'UNSTABLE'}")
