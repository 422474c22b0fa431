import dataclasses

import pytest

from roquette.decompose import central_symbol, decompose, faithful_part, symbol
from roquette.edges import EdgeSum, canonical_form, iso_equal, power, tensor
from roquette.errors import CentralProductUndefined, NoCentralSubgroup
from roquette.expr import build
from roquette.genetic import edge_decomposition_bruteforce


def es(terms, p=2):
    return EdgeSum(p, terms)


@pytest.mark.parametrize("text,raw", [
    ("D8", {"1": 1, "C2": 4}),
    ("Q8", {"1": 1, "C2": 3, "Q8": 1}),
    ("SD16", {"1": 1, "C2": 4, "SD16": 1}),
    ("D16", {"1": 1, "C2": 4, "D16": 1}),
    ("D32", {"1": 1, "C2": 4, "D16": 1, "D32": 1}),
    ("C8", {"1": 1, "C2": 1, "C4": 1, "C8": 1}),
    ("E2,3", {"1": 1, "C2": 7}),
    ("1", {"1": 1}),
])
def test_raw_goldens(text, raw):
    assert decompose(text, raw=True) == es(raw)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (5, 3), (3, 4)])
def test_elementary_abelian(p, n):
    expected = EdgeSum(p, {"1": 1, f"C{p}": (p ** n - 1) // (p - 1)})
    assert decompose(f"E{p},{n}", raw=True) == expected


@pytest.mark.parametrize("p", [3, 5, 7])
def test_extraspecial(p):
    expected = EdgeSum(p, {"1": 1, f"C{p}": p + 2})
    assert decompose(f"X+{p}") == decompose(f"X-{p}") == expected


@pytest.mark.parametrize("m,n", [(4, 1), (4, 2), (5, 2), (4, 3), (6, 2), (5, 4)])
def test_semidihedral_central_powers(m, n):
    sd = f"SD{2 ** m}"
    expected_faithful = es({sd: 2 ** ((n - 1) * (m - 3))})
    assert faithful_part(f"{sd} ^* {n}") == expected_faithful
    quotient = power(decompose(f"D{2 ** (m - 1)}", raw=True), n)
    assert decompose(f"{sd} ^* {n}") == canonical_form(expected_faithful) + quotient


def test_mixed_semidihedral_product_has_single_cyclic_faithful_edge():
    assert faithful_part("SD16 * SD32") == es({"C16": 1})


def test_dihedral_and_quaternion_central_powers():
    # the faithful edge of Q^{*n} alternates between quaternion and dihedral
    assert faithful_part("Q16 ^* 2") == es({"D16": 2})
    assert faithful_part("Q16 ^* 3") == es({"Q16": 4})
    assert faithful_part("D16 ^* 3") == es({"D16": 4})


def test_extraspecial_two_groups_have_one_faithful_edge():
    assert faithful_part("D8 * Q8") == es({"Q8": 1})
    assert faithful_part("D8 * D8") == es({"C2": 1})
    assert faithful_part("D8 ^* 4").total() == 1


def test_zero_faithful_part_for_noncyclic_center():
    assert faithful_part("C2 x C2") == EdgeSum.zero(2)
    assert faithful_part("D8 x Q8") == EdgeSum.zero(2)


def test_products_are_tensors():
    assert decompose("D16 x Q8") == tensor(decompose("D16"), decompose("Q8"))
    assert decompose("D8 ^ 2", raw=True) == es({"1": 1, "C2": 24})


def test_modz_and_errors():
    assert decompose("SD16.modZ") == decompose("D8")
    assert decompose("X+3.modZ") == decompose("E3,2")
    with pytest.raises(NoCentralSubgroup):
        decompose("(D8 x Q8).modZ")
    with pytest.raises(NoCentralSubgroup):
        decompose("E2,2 * Q8")


def test_odd_central_product_needs_gluing_invariance():
    c9 = symbol("C9")
    shaky = dataclasses.replace(c9, gluing_invariant=False)
    with pytest.raises(CentralProductUndefined):
        central_symbol(shaky, c9)
    # for p = 2 there is a single gluing, no invariance needed
    q8 = dataclasses.replace(symbol("Q8"), gluing_invariant=False)
    assert central_symbol(q8, symbol("D8")).faithful == es({"Q8": 1})


def test_x_plus_and_minus_agree_but_groups_differ():
    assert iso_equal(decompose("X+3"), decompose("X-3"))
    assert build("X+3").exponent != build("X-3").exponent


@pytest.mark.parametrize("text", ["C4*C4", "C8*C8", "C9*C9", "(C4*D16)*C4", "C4*C8", "C25*C25"])
def test_central_products_with_large_centers_match_oracle(text):
    assert decompose(text) == canonical_form(edge_decomposition_bruteforce(build(text)))
