import random

import pytest
from hypothesis import given, strategies as st

from latgal.errors import (
    CycleInCovers, DegenerateInterval, EmptyInterval, NotALattice, NotBounded,
)
from latgal.fixtures import lattice as fixture
from latgal.formats import format_lattice, parse_lattice_text
from latgal.lattice import (
    MonotoneMap, build_from_covers, canonical_form, chain, complements_of, cyclic_elements, dual,
    interval, is_cyclically_generated, is_distributive, is_isomorphic, is_modular, join, meet,
    relabel, validate_monotone,
)
from latgal.search import lattices_up_to
from oracles import Order, isomorphic

ALL = lattices_up_to(6) + [fixture(n) for n in ("grid9", "z2z4", "a9", "b8", "c7", "d7", "m3")]
ids = [L.name for L in ALL]


def test_two_chain():
    L = build_from_covers(["0", "1"], "0", "1", [("0", "1")])
    assert L.n == 2 and meet(L, 0, 1) == 0 and join(L, 0, 1) == 1


def test_grid_meets_and_joins():
    G = fixture("grid9")
    i = G.index
    assert meet(G, i("H3"), i("H5")) == i("0")
    assert join(G, i("H3"), i("H5")) == i("G")


def test_c7_joins():
    C = fixture("c7")
    i = C.index
    assert join(C, i("c1"), i("c2")) == i("1")
    assert join(C, i("c2"), i("c3")) == i("c5")


def test_missing_top_relation_is_not_bounded():
    with pytest.raises(NotBounded):
        build_from_covers(["0", "x", "y", "1"], "0", "1", [("0", "x"), ("0", "y")])


def test_cycle_rejected():
    with pytest.raises(CycleInCovers):
        build_from_covers(["0", "x", "y", "1"], "0", "1",
                          [("0", "x"), ("x", "y"), ("y", "x"), ("y", "1")])


def test_non_lattice_reports_pair():
    # two incomparable upper bounds for {x, y}: no least one
    labels = ["0", "x", "y", "u", "v", "1"]
    covers = [("0", "x"), ("0", "y"), ("x", "u"), ("y", "u"), ("x", "v"), ("y", "v"),
              ("u", "1"), ("v", "1")]
    with pytest.raises(NotALattice) as exc:
        build_from_covers(labels, "0", "1", covers)
    assert exc.value.pair is not None


@pytest.mark.parametrize("L", ALL, ids=ids)
def test_tables_match_brute_force(L):
    P = Order.of(L)
    for a in range(L.n):
        for b in range(L.n):
            assert L.meet[a][b] == P.glb(a, b)
            assert L.join[a][b] == P.lub(a, b)
    assert L.bottom == P.bottom and L.top == P.top


@pytest.mark.parametrize("L", ALL, ids=ids)
def test_structural_predicates(L):
    P = Order.of(L)
    assert is_modular(L) == P.is_modular()
    assert is_distributive(L) == P.is_distributive_below(P.top)
    assert set(cyclic_elements(L)) == P.cyclic()


@pytest.mark.parametrize("L", ALL, ids=ids)
def test_dual_reverses_everything(L):
    D = dual(L)
    assert dual(D) is L
    assert D.bottom == L.top and D.top == L.bottom
    for a in range(L.n):
        for b in range(L.n):
            assert D.leq(a, b) == L.leq(b, a)
            assert D.meet[a][b] == L.join[a][b]
    assert Order.of(D).rel == Order.of(L).dual().rel


def test_dual_of_c7_turns_atoms_into_coatoms():
    C = fixture("c7")
    D = dual(C)
    assert D.bottom == C.index("1")
    coatoms = {a for a, b in D.covers if b == D.top}
    assert {C.index(f"c{k}") for k in range(1, 5)} == coatoms


def test_c7_cyclic_elements_and_complements():
    C = fixture("c7")
    assert C.labels(cyclic_elements(C)) == {"0", "c1", "c2", "c3", "c4"}
    assert C.labels(complements_of(C, C.index("c1"))) == {"c2", "c3", "c4", "c5"}
    assert is_cyclically_generated(C)


@pytest.mark.parametrize("L", ALL, ids=ids)
def test_intervals_are_sublattices(L):
    for lo in range(L.n):
        for hi in range(L.n):
            if not L.leq(lo, hi):
                with pytest.raises(EmptyInterval):
                    interval(L, lo, hi)
                continue
            iv = interval(L, lo, hi)
            els = [x for x in range(L.n) if L.leq(lo, x) and L.leq(x, hi)]
            assert list(iv.names) == [L.names[x] for x in els]
            for i, x in enumerate(els):
                for j, y in enumerate(els):
                    assert iv.names[iv.meet[i][j]] == L.names[L.meet[x][y]]
                    assert iv.names[iv.join[i][j]] == L.names[L.join[x][y]]


def test_degenerate_interval():
    L = chain(3)
    assert interval(L, 1, 1).degenerate
    with pytest.raises(DegenerateInterval):
        interval(L, 1, 1, allow_degenerate=False)


def test_c7_interval_below_c5_is_the_diamond():
    C = fixture("c7")
    iv = interval(C, C.bottom, C.index("c5"))
    assert iv.n == 5 and is_isomorphic(iv, fixture("m3"))


@pytest.mark.parametrize("L", ALL, ids=ids)
def test_text_round_trip(L):
    text = format_lattice(L)
    again = parse_lattice_text(text)
    assert format_lattice(again) == text
    assert again.down == L.down


@given(data=st.data())
def test_canonical_form_ignores_relabelling(data):
    L = data.draw(st.sampled_from(ALL))
    rest = [x for x in range(L.n) if x not in (L.bottom, L.top)]
    perm = data.draw(st.permutations(rest))
    order = [L.bottom, *perm, L.top]
    R = relabel(L, order)
    assert canonical_form(R) == canonical_form(L)
    assert is_isomorphic(R, L)


def test_canonical_form_separates_non_isomorphic():
    lats = lattices_up_to(6)
    for i, L in enumerate(lats):
        for M in lats[i + 1:]:
            if L.n == M.n:
                assert not is_isomorphic(L, M)
                assert not isomorphic(Order.of(L), Order.of(M))


@given(st.integers(2, 9), st.integers(0, 2**31))
def test_random_monotone_maps_between_chains(n, seed):
    rng = random.Random(seed)
    L, M = chain(n), chain(n)
    table = sorted(rng.randrange(n) for _ in range(n))
    assert validate_monotone(MonotoneMap(L, M, table))
    if table[0] != table[-1]:
        assert not validate_monotone(MonotoneMap(L, M, table[::-1]))
