import json

import pytest
from hypothesis import given, strategies as st

from latgal.errors import BoundExceeded, BudgetExceeded, ParseError
from latgal.fixtures import connection, lattice as fixture
from latgal.galois import classify, constant_connection, identity_connection
from latgal.lattice import canonical_form, chain, is_isomorphic
from latgal.search import (
    LATTICE_PREDICATES, PropertyQuery, counts, enumerate_connections, enumerate_lattices,
    find_witness, lattices_up_to, run_theorem_suite,
)
from oracles import Order, all_connections, lattice_count

FLAGS = ["essential", "retractable", "uc", "cyclically_essential", "beta_additive"]


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 1), (4, 2), (5, 5), (6, 15)])
def test_counts_match_independent_oracle(n, expected):
    assert lattice_count(n) == expected
    assert len(list(enumerate_lattices(n))) == expected


def test_larger_counts():
    assert counts(8) == {2: 1, 3: 1, 4: 2, 5: 5, 6: 15, 7: 53, 8: 222}


def test_size_limit():
    with pytest.raises(BoundExceeded):
        list(enumerate_lattices(9))


def test_enumeration_is_deterministic_and_duplicate_free():
    first = [(L.name, L.down) for L in lattices_up_to(7)]
    again = [(L.name, L.down) for L in lattices_up_to(7)]
    assert first == again
    forms = [canonical_form(L) for L in lattices_up_to(7)]
    assert len(set(forms)) == len(forms)


def test_every_emitted_lattice_is_a_lattice():
    for L in lattices_up_to(6):
        assert Order.of(L).is_lattice()


def test_two_chain_connections():
    L = chain(2)
    conns = {(G.al, G.be) for G in enumerate_connections(L, L)}
    assert conns == {((0, 1), (0, 1)), ((0, 0), (1, 1))}
    assert conns == set(all_connections(Order.of(L), Order.of(L)))


@pytest.mark.parametrize("A", lattices_up_to(5), ids=lambda L: L.name)
def test_constant_pair_always_present(A):
    for B in lattices_up_to(4):
        const = constant_connection(A, B)
        assert (const.al, const.be) in {(G.al, G.be) for G in enumerate_connections(A, B)}


def test_grid_enumeration_contains_the_grid_fixture():
    grid = fixture("grid9")
    target = connection("grid")
    found = {(G.al, G.be) for G in enumerate_connections(grid, grid, budget=81)}
    assert (target.al, target.be) in found


def test_budget():
    grid = fixture("grid9")
    with pytest.raises(BudgetExceeded):
        next(enumerate_connections(grid, grid))


# -- queries -------------------------------------------------------------------------------

def test_parse_and_print():
    q = PropertyQuery.parse("essential ∧ ¬uc ∨ retractable")
    assert q.tree == ("or", ("and", ("var", "essential"), ("not", ("var", "uc"))),
                      ("var", "retractable"))
    assert str(q) == "essential and not uc or retractable"
    assert PropertyQuery.parse("A.modular and not B.uc").target == "connection"
    assert PropertyQuery.parse("modular and not distributive").target == "lattice"
    assert PropertyQuery.parse("uc").target == "connection"
    assert PropertyQuery.parse("uc", target="lattice").target == "lattice"


@pytest.mark.parametrize("text", ["", "essential and", "(essential", "bogus", "essential )",
                                  "A.bogus", "essential uc"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        PropertyQuery.parse(text)


def trees(depth):
    leaf = st.sampled_from(FLAGS).map(lambda x: ("var", x))
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            sub.map(lambda t: ("not", t)),
            st.tuples(st.just("and"), sub, sub),
            st.tuples(st.just("or"), sub, sub),
        ),
        max_leaves=depth,
    )


def naive_eval(t, env):
    if t[0] == "var":
        return env[t[1]]
    if t[0] == "not":
        return not naive_eval(t[1], env)
    a, b = naive_eval(t[1], env), naive_eval(t[2], env)
    return (a and b) if t[0] == "and" else (a or b)


@given(trees(8), st.fixed_dictionaries({k: st.booleans() for k in FLAGS}))
def test_printing_round_trips(tree, env):
    text = str(PropertyQuery(tree, "connection"))
    again = PropertyQuery.parse(text, target="connection")
    assert naive_eval(again.tree, env) == naive_eval(tree, env)
    assert str(again) == text
    assert again.evaluate(env.__getitem__) == naive_eval(tree, env)


# -- witness search ------------------------------------------------------------------------

def smaller_instances(G):
    total = G.A.n + G.B.n
    for na in range(2, total - 1):
        nb = total - na
        if min(na, nb) < 2:
            continue
        if (na + nb, na) >= (total, G.A.n):
            continue
        for A in enumerate_lattices(na):
            for B in enumerate_lattices(nb):
                yield from enumerate_connections(A, B, budget=na * nb)


@pytest.mark.parametrize("text", [
    "retractable and not essential",
    "essential and retractable and not uc",
])
def test_witnesses_exist_and_are_minimal(text):
    q = PropertyQuery.parse(text)
    w = find_witness(q, 6)
    assert w is not None and q.holds_for(w.instance)
    flags = classify(w.instance).flags()
    assert all(w.certificate[k] == v for k, v in flags.items())
    assert not any(q.holds_for(G) for G in smaller_instances(w.instance))


def test_contradiction_has_no_witness():
    assert find_witness(PropertyQuery.parse("essential and not essential"), 5) is None


def test_cyclic_distinction_needs_seven_elements():
    q = PropertyQuery.parse("cyclically_essential and not essential")
    assert find_witness(q, 6) is None
    assert q.holds_for(connection("d7m3"))


def test_lattice_query():
    q = PropertyQuery.parse("modular and not distributive")
    w = find_witness(q, 6)
    assert w.instance.n == 5 and is_isomorphic(w.instance, fixture("m3"))
    assert set(w.certificate) == set(LATTICE_PREDICATES)
    q2 = PropertyQuery.parse("not cyclically_generated")
    w2 = find_witness(q2, 8)
    assert w2 is not None and not LATTICE_PREDICATES["cyclically_generated"](w2.instance)


def test_identity_satisfies_core_flags():
    q = PropertyQuery.parse("essential and retractable")
    for L in lattices_up_to(5):
        assert q.holds_for(identity_connection(L))


# -- statement sweep ---------------------------------------------------------------------------

def test_suite_small():
    rep = run_theorem_suite(4)
    assert rep.total_failures == 0 and not rep.failures
    assert rep.lattices == 4
    json.dumps(rep.to_json())


def test_suite_parallel_matches_serial():
    a = run_theorem_suite(4).to_json()
    b = run_theorem_suite(4, workers=2).to_json()
    assert a == b


def test_suite_bounds():
    with pytest.raises(BoundExceeded):
        run_theorem_suite(9)
