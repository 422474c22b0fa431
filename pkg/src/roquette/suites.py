"""Cross-checks between the symbolic algebra and the brute-force engine.

Each suite yields CaseResult values; the CLI prints them and the test suite
asserts on them, so both run exactly the same comparisons.
"""

from __future__ import annotations

from typing import Callable, Iterator, NamedTuple

from . import groups as G
from .decompose import decompose, symbol
from .edges import (EdgeSum, canonical_form, diamond, dihedral_power_closed_form,
                    edge_tensor, nu, power, tensor)
from .expr import build
from .genetic import (centrally_diagonal_genetics, edge_decomposition_bruteforce,
                      genetic_basis, product_genetic_basis, quotient_edge_identity)
from .rtype import RoquetteType


class CaseResult(NamedTuple):
    name: str
    ok: bool
    detail: str


def small_roquette_types() -> list[RoquetteType]:
    """Nontrivial Roquette 2-groups of order at most 32."""
    return ([RoquetteType.cyclic(2, m) for m in range(1, 6)]
            + [RoquetteType.quaternion(m) for m in (3, 4, 5)]
            + [RoquetteType.dihedral(m) for m in (4, 5)]
            + [RoquetteType.semidihedral(m) for m in (4, 5)])


ORACLE_EXPRESSIONS = (
    "C2", "C4", "C8", "C16", "D8", "Q8", "D16", "Q16", "SD16", "D32", "Q32", "SD32",
    "E2,2", "E2,3", "E2,4", "E3,2", "E3,3", "X+3", "X-3", "X+5", "X-5", "C9", "C27",
    "C3 x C9", "C9 x C9", "D8 x D8", "D8*Q8", "SD16*SD16", "Q8 x Q8", "C4 x D16",
    "D8 x Q8", "D16 x Q8", "D8 x C4", "Q8 x C8", "D8*D8", "Q8*Q8", "C4*C4", "C4*D16",
    "Q16*C4", "C8*SD16", "D16*Q16", "SD32*C4", "SD16 x C2", "D8 x C2 x C2",
    "C4 x C4 x C4", "X+3*X+3", "X-3*X-3", "X+3*C9", "C3*X+3", "C9*C9", "C25*C25",
    "SD16.modZ", "(D8*Q8).modZ", "D8^*3", "(C4*Q8)*(C4*D8)",
)

PRODUCT_BASIS_CASES = (("C2", "C2"), ("D8", "C4"), ("D8", "D8"), ("Q8", "Q8"))

# Built-in family expressions of order at most 64.
FAMILIES_UP_TO_64 = (
    "C2", "C4", "C8", "C16", "C32", "C64", "D8", "Q8", "D16", "Q16", "SD16", "D32", "Q32",
    "SD32", "D64", "Q64", "SD64", "E2,2", "E2,3", "E2,4", "E2,5", "E2,6", "E3,2", "E3,3",
    "X+3", "X-3", "C3", "C9", "C27", "C3 x C9", "C5", "C25", "E5,2", "D8 x C2", "Q8 x C2",
    "C4 x C4", "C4 x C2", "D8*C4", "D8*Q8", "D8*D8", "Q8*Q8", "D8 x C4", "Q8 x C4",
    "Q8 x Q8", "D8 x D8", "D8 x Q8", "D8 x C2 x C2", "D16 x C2", "SD16 x C2", "Q16 x C2",
    "SD16 x C4", "C8 x C8", "C4*C8", "C4*D16", "C8*SD16", "Q16*C4", "SD32 x C2",
)


def diamond_table(*, max_order: int | None = 1024) -> Iterator[CaseResult]:
    """diamond and nu against the centrally diagonal genetic subgroups."""
    for a in small_roquette_types():
        ga = G.roquette_group(a)
        for b in small_roquette_types():
            d = centrally_diagonal_genetics(ga, G.roquette_group(b), max_order=max_order)
            want = (diamond(a, b), nu(a, b))
            got = (sorted(d.quotient_types), d.class_count)
            ok = got == ([want[0]], want[1])
            yield CaseResult(f"{a.name} x {b.name}", ok,
                             f"expected {want[1]}·∂{want[0].name}, "
                             f"found types {[t.name for t in got[0]]} in {got[1]} classes")


def oracle_families(expressions=ORACLE_EXPRESSIONS, *, max_order: int | None = None) -> Iterator[CaseResult]:
    """Symbolic decomposition against the brute-force genetic basis."""
    for text in expressions:
        symbolic = decompose(text)
        brute = canonical_form(edge_decomposition_bruteforce(build(text, max_order=max_order),
                                                             max_order=max_order))
        yield CaseResult(text, symbolic == brute, f"symbolic {symbolic}; brute force {brute}")


def product_basis(cases=PRODUCT_BASIS_CASES) -> Iterator[CaseResult]:
    """Bases lifted from the factors against the direct computation."""
    for left, right in cases:
        gl, gr = build(left), build(right)
        lifted = product_genetic_basis(gl, gr).histogram()
        direct = genetic_basis(G.direct_product(gl, gr)).histogram()
        yield CaseResult(f"{left} x {right}", lifted == direct,
                         f"lifted {_hist(lifted)}; direct {_hist(direct)}")


def identities(families=FAMILIES_UP_TO_64) -> Iterator[CaseResult]:
    """Algebraic identities: quotient edges, closed forms, the Q8 involution."""
    for text in families:
        lhs, rhs = quotient_edge_identity(build(text))
        ok = canonical_form(lhs) == canonical_form(rhs)
        yield CaseResult(f"sum of quotient edges: {text}", ok, f"P = {lhs}; sum = {rhs}")
    for m in (3, 4, 5, 6):
        for n in range(1, 6):
            closed = dihedral_power_closed_form(m, n).canonical
            direct = power(decompose(f"D{2 ** m}"), n)
            yield CaseResult(f"D{2 ** m}^{n} closed form", closed == direct,
                             f"closed {closed}; tensor power {direct}")
    q8 = RoquetteType.quaternion(3)
    unit = EdgeSum.unit(2)
    yield CaseResult("∂Q8 x ∂Q8 = 1", edge_tensor(q8, q8) == unit, str(edge_tensor(q8, q8)))
    for t in small_roquette_types() + [RoquetteType.trivial(2)]:
        once = edge_tensor(q8, t, raw=True)
        twice = tensor(once, EdgeSum.edge(q8))
        yield CaseResult(f"∂Q8 twice on ∂{t.name}", twice == canonical_form(EdgeSum.edge(t)), str(twice))
    for m, n in ((4, 1), (4, 2), (5, 2), (4, 3), (5, 3)):
        faithful = symbol(f"SD{2 ** m} ^* {n}").faithful
        want = EdgeSum(2, {RoquetteType.semidihedral(m): 2 ** ((n - 1) * (m - 3))})
        yield CaseResult(f"∂(SD{2 ** m}^*{n})", faithful == want, f"{faithful}")


def _hist(h) -> str:
    return "{" + ", ".join(f"{t.name}:{k}" for t, k in sorted(h.items())) + "}"


SUITES: dict[str, Callable[[], Iterator[CaseResult]]] = {
    "diamond-table": diamond_table,
    "oracle-families": oracle_families,
    "product-basis": product_basis,
    "identities": identities,
}
