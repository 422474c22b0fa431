"""Symbolic edge decompositions of family expressions.

Each subexpression is folded into a GroupSymbol that carries just enough
structure to continue: the full decomposition, the abelian invariants of the
center, the faithful part ∂P and, for cyclic centers, the symbol of P/Z.
No group tables are built here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .edges import (EdgeSum, canonical_form, direct_sum, divide, scale,
                    subtract, tensor)
from .errors import (CentralProductUndefined, InvalidParameter,
                     NoCentralSubgroup)
from .expr import (Atom, Central, CentralPower, Direct, GroupExpr, ModZ, Power,
                   as_expr, render)
from .rtype import RoquetteType, prime_power_log


@dataclass(frozen=True)
class GroupSymbol:
    prime: int
    order: int
    full: EdgeSum                 # raw decomposition of P
    center: tuple[int, ...]       # exponents of the abelian invariants of Z(P), descending
    faithful: EdgeSum             # raw ∂P, zero when Z(P) is not cyclic
    quotient: "GroupSymbol | None"  # P/Z for the unique central subgroup of order p
    gluing_invariant: bool        # all central gluings with this factor are isomorphic
    label: str

    @property
    def has_cyclic_center(self) -> bool:
        return len(self.center) == 1

    def require_quotient(self) -> "GroupSymbol":
        if self.quotient is None:
            raise NoCentralSubgroup(f"{self.label} has no unique central subgroup of order p")
        return self.quotient


def _sum(p: int, terms: dict) -> EdgeSum:
    return EdgeSum(p, {(RoquetteType.trivial(p) if t == "1" else RoquetteType.from_name(t, p)): k
                       for t, k in terms.items()})


def trivial_symbol(p: int) -> GroupSymbol:
    return GroupSymbol(p, 1, EdgeSum.unit(p), (), EdgeSum.unit(p), None, True, "1")


def roquette_symbol(t: RoquetteType) -> GroupSymbol:
    """Symbol of a Roquette group, built by peeling off the center."""
    p = t.p
    if t.is_trivial:
        return trivial_symbol(p)
    edge = EdgeSum.edge(t)
    if t.is_abelian:
        below = roquette_symbol(RoquetteType.cyclic(p, t.m - 1))
        return GroupSymbol(p, t.order, direct_sum(edge, below.full, raw=True), (t.m,), edge,
                           below, True, t.name)
    if t == RoquetteType.quaternion(3):
        below = elementary_symbol(2, 2)
    else:
        below = dihedral_symbol(t.m - 1)
    return GroupSymbol(2, t.order, direct_sum(edge, below.full, raw=True), (1,), edge, below,
                       True, t.name)


def elementary_symbol(p: int, k: int) -> GroupSymbol:
    if k < 0:
        raise InvalidParameter("rank must be nonnegative")
    if k <= 1:
        return roquette_symbol(RoquetteType.cyclic(p, k))
    count = (p ** k - 1) // (p - 1)
    full = EdgeSum(p, {RoquetteType.trivial(p): 1, RoquetteType.cyclic(p, 1): count})
    return GroupSymbol(p, p ** k, full, (1,) * k, EdgeSum.zero(p), None, True, f"E{p},{k}")


def dihedral_symbol(m: int) -> GroupSymbol:
    """D_{2^m}; for m = 3 this is D8, whose quotient by the center is C2 x C2."""
    if m >= 4:
        return roquette_symbol(RoquetteType.dihedral(m))
    if m != 3:
        raise InvalidParameter("dihedral groups need order at least 8")
    c2 = RoquetteType.cyclic(2, 1)
    below = elementary_symbol(2, 2)
    edge = EdgeSum.edge(c2)
    return GroupSymbol(2, 8, direct_sum(edge, below.full, raw=True), (1,), edge, below, True, "D8")


def extraspecial_symbol(p: int, sign: str) -> GroupSymbol:
    if p == 2:
        return dihedral_symbol(3) if sign == "+" else roquette_symbol(RoquetteType.quaternion(3))
    edge = EdgeSum.edge(RoquetteType.cyclic(p, 1))
    below = elementary_symbol(p, 2)
    return GroupSymbol(p, p ** 3, direct_sum(edge, below.full, raw=True), (1,), edge, below,
                       True, f"X{sign}{p}")


def atom_symbol(a: Atom) -> GroupSymbol:
    p = a.prime
    fam = a.family
    if fam == "1":
        return trivial_symbol(p)
    if fam == "C":
        return roquette_symbol(RoquetteType.cyclic(p, prime_power_log(a.params[0], p)))
    if fam == "E":
        return elementary_symbol(*a.params)
    if fam in ("X+", "X-"):
        return extraspecial_symbol(a.params[0], fam[1])
    m = prime_power_log(a.params[0], 2)
    if fam == "D":
        return dihedral_symbol(m)
    if fam == "Q":
        return roquette_symbol(RoquetteType.quaternion(m))
    return roquette_symbol(RoquetteType.semidihedral(m))


def direct_symbol(a: GroupSymbol, b: GroupSymbol) -> GroupSymbol:
    if a.order == 1:
        return b
    if b.order == 1:
        return a
    p = a.prime
    center = tuple(sorted(a.center + b.center, reverse=True))
    return GroupSymbol(p, a.order * b.order, tensor(a.full, b.full, raw=True), center,
                       EdgeSum.zero(p), None, a.gluing_invariant and b.gluing_invariant,
                       f"({a.label} x {b.label})")


def _glued_center(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # (C_{p^s} x C_{p^t}) / diagonal of order p  =  C_{p^max} x C_{p^(min-1)}
    hi, lo = max(a[0], b[0]), min(a[0], b[0])
    return (hi, lo - 1) if lo > 1 else (hi,)


def _minus(x: EdgeSum, y: EdgeSum) -> EdgeSum:
    try:
        return subtract(x, y, raw=True)
    except InvalidParameter:
        # raw ∂C2 and 1 may sit on different sides; they agree canonically
        return subtract(canonical_form(x), canonical_form(y))


def central_symbol(a: GroupSymbol, b: GroupSymbol) -> GroupSymbol:
    """Central product along the unique central subgroups of order p.

    Summed over the p - 1 gluings,
        sum P *_φ Q  =  P x Q + p·(P/Z x Q/Z) - (P/Z x Q) - (P x Q/Z),
    which for |Z(P)| = p reduces to ∂P x ∂Q + P/Z x Q/Z.  A single gluing is
    reported only when all gluings are known to be isomorphic.
    """
    p = a.prime
    abar, bbar = a.require_quotient(), b.require_quotient()
    pq = tensor(a.full, b.full, raw=True)
    bars = tensor(abar.full, bbar.full, raw=True)
    summed = _minus(_minus(direct_sum(pq, scale(bars, p, raw=True), raw=True),
                           tensor(abar.full, b.full, raw=True)),
                    tensor(a.full, bbar.full, raw=True))
    center = _glued_center(a.center, b.center)
    invariant = a.gluing_invariant and b.gluing_invariant
    gluings = p - 1
    if gluings > 1 and not invariant:
        raise CentralProductUndefined(
            f"{a.label} * {b.label}: the {gluings} gluings are not known to be isomorphic")
    label = f"({a.label} * {b.label})"
    order = a.order * b.order // p
    if len(center) == 1:
        faithful_sum = tensor(a.faithful, b.faithful, raw=True)
        quotient = direct_symbol(abar, bbar)
        if not canonical_form(direct_sum(faithful_sum, scale(bars, gluings, raw=True), raw=True)) \
                == canonical_form(summed):
            raise AssertionError(f"central product identities disagree on {label}")
        faithful = divide(faithful_sum, gluings, raw=True)
        full = direct_sum(faithful, quotient.full, raw=True)
        return GroupSymbol(p, order, full, center, faithful, quotient, invariant, label)
    full = divide(summed, gluings, raw=True)
    return GroupSymbol(p, order, full, center, EdgeSum.zero(p), None, invariant, label)


def symbol(e) -> GroupSymbol:
    """Fold an expression (or its text) into a GroupSymbol."""
    e = as_expr(e)
    if isinstance(e, Atom):
        return atom_symbol(e)
    if isinstance(e, Direct):
        return direct_symbol(symbol(e.left), symbol(e.right))
    if isinstance(e, Central):
        return central_symbol(symbol(e.left), symbol(e.right))
    if isinstance(e, Power):
        base = symbol(e.base)
        out = trivial_symbol(e.prime)
        for _ in range(e.n):
            out = direct_symbol(out, base)
        return out
    if isinstance(e, CentralPower):
        base = symbol(e.base)
        out = base
        for _ in range(e.n - 1):
            out = central_symbol(out, base)
        return out
    if isinstance(e, ModZ):
        return symbol(e.base).require_quotient()
    raise TypeError(e)


def decompose(e, *, raw: bool = False) -> EdgeSum:
    """The decomposition of a family expression as a sum of edges."""
    full = symbol(e).full
    return full if raw else canonical_form(full)


def faithful_part(e, *, raw: bool = True) -> EdgeSum:
    """∂P, the faithful summand; zero when the center is not cyclic."""
    f = symbol(e).faithful
    return f if raw else canonical_form(f)


def describe(e: GroupExpr | str) -> str:
    return render(as_expr(e))
