"""Acceptance criteria 1 to 11, each at its stated tolerance and time budget.

Tests are tagged with ``criterion(n)``; conftest prints one PASS/FAIL line
per criterion at the end of the run.
"""

import time

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from roquette import functors as F
from roquette import groups as G
from roquette.decompose import decompose, faithful_part
from roquette.edges import (EdgeSum, canonical_form, dihedral_power_closed_form, direct_sum,
                            edge_tensor, power, subtract, tensor)
from roquette.expr import build, concrete_order, parse_expr
from roquette.genetic import (bizlie_matrix, centrally_diagonal_genetics, genetic_basis,
                              is_genetic, quotient_edge_identity)
from roquette.rtype import CYCLIC
from roquette.rtype import RoquetteType as R
from roquette.suites import (FAMILIES_UP_TO_64, ORACLE_EXPRESSIONS, PRODUCT_BASIS_CASES,
                             diamond_table, oracle_families, product_basis)
from strategies import TYPES, edge_sum_triples, edge_sums

THOUSAND = settings(max_examples=1000, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])


def es(terms, p=2):
    return EdgeSum(p, terms)


def run_suite(cases, budget):
    start = time.perf_counter()
    failures = [f"{c.name}: {c.detail}" for c in cases if not c.ok]
    elapsed = time.perf_counter() - start
    assert not failures, "\n".join(failures)
    assert elapsed <= budget, f"took {elapsed:.1f} s, budget {budget} s"


def timed(f, budget=1.0):
    start = time.perf_counter()
    value = f()
    assert time.perf_counter() - start < budget
    return value


# 1 -----------------------------------------------------------------------


@pytest.mark.criterion(1)
@pytest.mark.parametrize("text,expected", [
    ("D8", es({"1": 1, "C2": 4})),
    ("Q8", es({"1": 1, "C2": 3, "Q8": 1})),
    ("E2,2", es({"1": 1, "C2": 3})),
    ("E2,3", es({"1": 1, "C2": 7})),
    ("E3,2", es({"1": 1, "C3": 4}, 3)),
    ("X+3", es({"1": 1, "C3": 5}, 3)),
    ("X-3", es({"1": 1, "C3": 5}, 3)),
    ("X+5", es({"1": 1, "C5": 7}, 5)),
    ("X-5", es({"1": 1, "C5": 7}, 5)),
])
def test_golden_decompositions(text, expected):
    assert timed(lambda: decompose(text, raw=True)) == expected


# 2 -----------------------------------------------------------------------


@pytest.mark.criterion(2)
def test_oracle_expression_list():
    small = [t for t in ORACLE_EXPRESSIONS if concrete_order(parse_expr(t)) <= 256]
    assert small == list(ORACLE_EXPRESSIONS)
    assert len(small) >= 30
    for name in ("D8 x D8", "D8*Q8", "SD16*SD16", "Q8 x Q8", "C4 x D16"):
        assert name in small


@pytest.mark.criterion(2)
def test_oracle_equivalence():
    run_suite(oracle_families(ORACLE_EXPRESSIONS), budget=600)


# 3 -----------------------------------------------------------------------


@pytest.mark.criterion(3)
def test_diamond_and_nu_table():
    cases = list(diamond_table())
    assert len(cases) == 12 * 12
    run_suite(cases, budget=300)


# 4 -----------------------------------------------------------------------


@pytest.mark.criterion(4)
def test_d8_powers_symbolic():
    d8 = decompose("D8")
    for n in range(0, 11):
        assert F.rq_rank(power(d8, n)) == 5 ** n


@pytest.mark.criterion(4)
def test_d8_squared_brute_force():
    assert G.cyclic_subgroup_classes(build("D8 x D8")) == 25


# 5 -----------------------------------------------------------------------


@pytest.mark.criterion(5)
@pytest.mark.parametrize("m", [3, 4, 5, 6])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_dihedral_closed_form(m, n):
    closed = dihedral_power_closed_form(m, n)
    direct = power(decompose(f"D{2 ** m}"), n)
    assert closed.canonical == direct
    assert closed.raw == power(decompose(f"D{2 ** m}", raw=True), n, raw=True)


# 6 -----------------------------------------------------------------------


@pytest.mark.criterion(6)
@pytest.mark.parametrize("m,n", [(4, 1), (4, 2), (5, 2), (4, 3)])
def test_dade_torsion_of_semidihedral_powers(m, n):
    value = F.dade_torsion(decompose(f"SD{2 ** m} ^* {n}", raw=True))
    assert value == F.AbelianSignature(0, (2,) * 2 ** ((n - 1) * (m - 3)))


@pytest.mark.criterion(6)
def test_sd16_central_square_brute_force():
    g = build("SD16 * SD16")
    assert g.order == 128
    records = genetic_basis(g).records
    sd16 = [r for r in records if r.quotient_type == R.semidihedral(4)]
    big_cyclic = [r for r in records
                  if r.quotient_type.kind == CYCLIC and r.quotient_type.order >= 4]
    assert len(sd16) == 2
    assert len(big_cyclic) == 0


@pytest.mark.criterion(6)
def test_mixed_semidihedral_torsion():
    assert F.dade_torsion(decompose("SD16 * SD32", raw=True)) == F.AbelianSignature(0, (2,))
    assert faithful_part("SD16 * SD32").terms.keys() == {R.cyclic(2, 4)}


# 7 -----------------------------------------------------------------------


@pytest.mark.criterion(7)
def test_burnside_unit_ranks():
    assert F.burnside_units_rank(decompose("D8", raw=True)) == 5
    assert F.burnside_units_rank(decompose("D16", raw=True)) == 6
    assert F.burnside_units_rank(decompose("D8 x D8", raw=True)) == 25
    q8 = F.burnside_units_rank(decompose("Q8", raw=True))
    assert isinstance(q8, F.Partial)
    assert q8.unknown == es({"Q8": 1})


# 8 -----------------------------------------------------------------------


@pytest.mark.criterion(8)
def test_q8_involution_and_action():
    q8 = R.quaternion(3)
    assert edge_tensor(q8, q8) == EdgeSum.unit(2)
    assert edge_tensor(q8, R.dihedral(4)) == es({"Q16": 1})
    assert edge_tensor(q8, R.quaternion(4)) == es({"D16": 1})
    assert edge_tensor(q8, R.semidihedral(4)) == es({"SD16": 1})
    assert edge_tensor(q8, R.cyclic(2, 3)) == es({"C8": 1})


@pytest.mark.criterion(8)
def test_q8_squared_diagonal_brute_force():
    q8 = build("Q8")
    found = centrally_diagonal_genetics(q8, q8, method="exhaustive")
    assert found.product.order == 64
    assert found.class_count == 1
    assert found.quotient_types == {R.cyclic(2, 1)}


# 9 -----------------------------------------------------------------------


@pytest.mark.criterion(9)
def test_product_basis_construction():
    assert [concrete_order(parse_expr(f"{a} x {b}")) for a, b in PRODUCT_BASIS_CASES] == [4, 32, 64, 64]
    run_suite(product_basis(PRODUCT_BASIS_CASES), budget=120)


# 10 ----------------------------------------------------------------------


@pytest.mark.criterion(10)
@THOUSAND
@given(edge_sum_triples())
def test_tensor_laws(xyz):
    x, y, z = xyz
    p = x.prime
    assert tensor(x, y) == tensor(y, x)
    assert tensor(tensor(x, y), z) == tensor(x, tensor(y, z))
    assert tensor(EdgeSum.unit(p), x) == canonical_form(x)


@pytest.mark.criterion(10)
@THOUSAND
@given(edge_sum_triples())
def test_cancellation(xyz):
    x, y, z = xyz
    assert subtract(direct_sum(x, z), z) == canonical_form(x)
    assert (direct_sum(x, z) == direct_sum(y, z)) == (canonical_form(x) == canonical_form(y))


@pytest.mark.criterion(10)
@pytest.mark.parametrize("text", FAMILIES_UP_TO_64)
def test_bizlie_transitive(text):
    g = build(text)
    gen = [s for s in G.all_subgroups(g) if is_genetic(g, s)]
    m = bizlie_matrix(g, gen).astype(np.int64)
    assert np.all(np.diag(m) == 1)
    assert np.array_equal(m, m.T)
    assert np.all((m @ m > 0) <= (m > 0))


@pytest.mark.criterion(10)
@pytest.mark.parametrize("text", FAMILIES_UP_TO_64)
def test_quotient_edge_identity(text):
    lhs, rhs = quotient_edge_identity(build(text))
    assert canonical_form(lhs) == canonical_form(rhs)


def _signatures():
    return st.builds(F.AbelianSignature, st.integers(0, 3),
                     st.lists(st.sampled_from([2, 4]), max_size=2).map(tuple))


@pytest.mark.criterion(10)
@THOUSAND
@given(st.dictionaries(st.sampled_from(TYPES[2][2:]), _signatures()), _signatures(),
       st.sampled_from(["dade-torsion", "bx-rank", "rq-rank", None]), edge_sums(2))
def test_collapse_invariance(values, unit_value, base, x):
    entries = [{"type": t.tag, "free_rank": v.free_rank, "torsion": list(v.torsion)}
               for t, v in values.items()]
    if base is None:
        for tag in ("1", "C:2^1"):
            entries.append({"type": tag, "prime": 2, "free_rank": unit_value.free_rank,
                            "torsion": list(unit_value.torsion)})
    table = F.register_table("acceptance-table", entries, base=base)
    try:
        assert table.collapse_invariant()
        raw, canon = F.evaluate(table, x), F.evaluate(table, canonical_form(x))
        if isinstance(raw, F.Partial):
            assert raw.known == canon.known
            assert canonical_form(raw.unknown) == canonical_form(canon.unknown)
        else:
            assert raw == canon
    finally:
        F.unregister_table("acceptance-table")


# 11 ----------------------------------------------------------------------


@pytest.mark.criterion(11)
def test_odd_cyclic_edge_product():
    c3 = R.cyclic(3, 1)
    assert edge_tensor(c3, c3) == es({c3: 2}, 3)


@pytest.mark.criterion(11)
@pytest.mark.parametrize("text", ["C27", "X+3", "X-3", "C3 x C9"])
def test_center_signature_dimension(text):
    degrees = F.center_signature(decompose(text))
    assert sum(d * k for d, k in degrees.items()) == G.conjugacy_class_count(build(text))


@pytest.mark.criterion(11)
def test_extraspecial_decompositions_agree():
    assert decompose("X+3") == decompose("X-3")
