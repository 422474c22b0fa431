import pytest

import oracle as O
from roquette import groups as G
from roquette.errors import GroupTooLarge, InvalidParameter, NotNormal
from roquette.expr import build
from roquette.rtype import RoquetteType as R

# expression: (subgroups, cyclic subgroup classes, conjugacy classes, subgroup classes),
# frozen from the naive set-based enumeration in oracle.py
FROZEN = {
    "C8": (4, 4, 8, 4),
    "D8": (10, 5, 5, 8),
    "Q8": (6, 5, 5, 6),
    "D16": (19, 6, 7, 11),
    "Q16": (11, 6, 7, 9),
    "SD16": (15, 6, 7, 10),
    "E2,3": (16, 8, 8, 16),
    "X+3": (19, 6, 11, 11),
    "X-3": (10, 6, 11, 8),
    "C4 x C2": (8, 6, 8, 8),
    "D8 x C2": (35, 10, 10, 27),
    "D8*Q8": (78, 17, 17, 73),
    "Q8 x C4": (38, 15, 20, 35),
    "E3,2": (6, 5, 9, 6),
    "C2 x C2 x C4": (27, 12, 16, 27),
    "D32": (36, 7, 11, 14),
}


@pytest.mark.parametrize("text", sorted(FROZEN))
def test_counts_match_naive_enumeration(text):
    g = build(text)
    subs = G.all_subgroups(g)
    n_subs, n_cyc, n_conj, n_classes = FROZEN[text]
    assert len(subs) == n_subs
    assert G.cyclic_subgroup_classes(g) == n_cyc
    assert G.conjugacy_class_count(g) == n_conj
    assert len(G.conjugacy_classes_of_subgroups(g, subs)) == n_classes
    t = O.table_of(g)
    assert {frozenset(s.members) for s in subs} == O.subgroups(t)


def test_enumeration_handles_order_64_products():
    g = build("D8 x D8")
    t = O.table_of(g)
    assert {frozenset(s.members) for s in G.all_subgroups(g)} == O.subgroups(t)
    assert G.cyclic_subgroup_classes(g) == 25


@pytest.mark.parametrize("text", ["C4", "D8", "Q8", "SD16", "Q16", "X+3", "X-3", "E2,3", "D8*Q8"])
def test_tables_are_groups(text):
    g = build(text)
    assert O.is_associative(O.table_of(g))
    assert sorted(g.table[0]) == list(range(g.order))


def _relations_hold(g, r, s, n, twist, s_square):
    # r^n = 1, s^2 = s_square, s^-1 r s = r^twist, and <r, s> = g
    if g.power(r, n) != 0 or g.element_orders[r] != n:
        return False
    if g.mul(s, s) != s_square:
        return False
    if g.mul(g.mul(g.inv(s), r), s) != g.power(r, twist):
        return False
    return g.generate([r, s]).order == g.order


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_metacyclic_presentations(m):
    # A group of order 2n satisfying the defining relations is the presented group.
    n = 2 ** (m - 1)
    for kind, twist in (("D", -1), ("Q", -1), ("SD", n // 2 - 1)):
        if kind == "SD" and m < 4:
            continue
        g = {"D": G.dihedral_group, "Q": G.quaternion_group, "SD": G.semidihedral_group}[kind](m)
        assert g.order == 2 * n
        r = next(x for x in g.elements if g.element_orders[x] == n)
        rotations = g.generate([r])
        s_square = 0 if kind != "Q" else g.power(r, n // 2)
        ok = any(_relations_hold(g, r, s, n, twist % n, s_square)
                 for s in g.elements if s not in rotations)
        assert ok, kind


def test_extraspecial_odd_exponents():
    plus, minus = G.extraspecial_group(3, "+"), G.extraspecial_group(3, "-")
    assert plus.exponent == 3 and minus.exponent == 9
    for g in (plus, minus):
        assert G.center(g).order == 3
        assert not g.is_abelian


def test_extraspecial_two_is_d8_and_q8():
    assert G.roquette_type(G.extraspecial_group(2, "-")) == R.quaternion(3)
    d8 = G.extraspecial_group(2, "+")
    assert G.fingerprint(d8) == G.fingerprint(G.dihedral_group(3))


def test_make_family_names_and_errors():
    assert G.make_family("Dihedral", 4).order == 16
    assert G.make_family("elementary_abelian", 3, 2).order == 9
    with pytest.raises(InvalidParameter):
        G.make_family("Semidihedral", 3)
    with pytest.raises(InvalidParameter):
        G.make_family("Quaternion", 2)
    with pytest.raises(InvalidParameter):
        G.make_family("Nonsense", 2)


def test_order_bound(monkeypatch):
    with pytest.raises(GroupTooLarge):
        G.cyclic_group(2, 10)
    assert G.cyclic_group(2, 10, max_order=1024).order == 1024
    monkeypatch.setenv("ROQUETTE_MAX_ORDER", "2048")
    assert G.cyclic_group(2, 11).order == 2048


def test_bad_tables_are_rejected():
    with pytest.raises(InvalidParameter):
        G.FiniteGroup([[0, 1], [1, 1]], 2)
    with pytest.raises(InvalidParameter):
        G.FiniteGroup([[0, 1, 2], [1, 2, 0], [2, 0, 1]], 2)   # order 3 is not a power of 2


@pytest.mark.parametrize("text,expected", [
    ("C8", R.cyclic(2, 3)), ("Q8", R.quaternion(3)), ("D16", R.dihedral(4)),
    ("SD16", R.semidihedral(4)), ("Q32", R.quaternion(5)), ("SD32", R.semidihedral(5)),
    ("C9", R.cyclic(3, 2)), ("1", R.trivial(2)),
    ("D8", None), ("E2,2", None), ("C4 x C2", None), ("X+3", None), ("X-3", None),
])
def test_roquette_type(text, expected):
    g = build(text)
    assert G.roquette_type(g, method="definition") == expected
    assert G.roquette_type(g, method="orders") == expected


def test_roquette_type_via_definition_on_subgroups_of_products():
    # compare both recognisers on every subgroup of a group of order 32
    g = build("D8*Q8")
    for s in G.all_subgroups(g):
        sub, _ = G.subgroup_as_group(g, s)
        assert G.roquette_type(sub, method="orders") == G.roquette_type(sub, method="definition")


def test_axes_and_axial_subgroups():
    g = build("D16")
    assert G.exponent_of(g) == 8
    axes = G.axes(g)
    assert len(axes) == 1 and axes[0].order == 8
    assert sorted(s.order for s in G.axial_subgroups(g)) == [1, 2, 4, 8]
    assert len(G.axes(build("C4 x C4"))) == 6


def test_center_and_normalizer_agree_with_naive():
    g = build("SD16 x C2")
    t = O.table_of(g)
    assert frozenset(G.center(g).members) == O.center(t)
    inv = O.inverse_of(t)
    for s in G.all_subgroups(g)[::7]:
        naive = frozenset(x for x in range(g.order)
                          if O.conjugate(t, inv, frozenset(s.members), x) == frozenset(s.members))
        assert frozenset(G.normalizer(g, s).members) == naive


def test_quotient_by_center():
    g = build("Q16")
    q = G.quotient_group(g, G.center(g)).group
    assert G.fingerprint(q) == G.fingerprint(build("D8"))
    with pytest.raises(NotNormal):
        d8 = build("D8")
        reflection = next(s for s in G.all_subgroups(d8) if s.order == 2 and not G.is_normal(d8, s))
        G.quotient_group(d8, reflection)


def test_central_products_counts():
    d8 = build("D8")
    results = G.central_products(d8, d8)
    assert len(results) == 1 and results[0][1].order == 32
    x = build("X+3")
    assert len(G.central_products(x, x)) == 2
    e = build("E2,2")
    assert len(G.central_products(e, build("C2"))) == 3


def test_subgroup_operations():
    g = build("D8")
    subs = G.all_subgroups(g)
    whole, trivial = g.whole, g.trivial_subgroup
    for s in subs:
        assert trivial <= s <= whole
        assert (s & whole) == s
        assert s.conjugate(0) == s
    assert len({s for s in subs}) == len(subs)


def test_element_orders_are_naive():
    g = build("C4 x Q8")
    t = O.table_of(g)
    assert [int(k) for k in g.element_orders] == [O.element_order(t, x) for x in range(g.order)]
    for a in (1, 5, 17):
        assert [int(c) for c in g.conj[a]] == [g.mul(g.mul(g.inv(a), x), a) for x in range(g.order)]


def test_isomorphisms_of_q8():
    q8 = build("Q8")
    assert len(G.isomorphisms(q8, q8)) == 24
    assert G.isomorphisms(q8, build("D8")) == []
