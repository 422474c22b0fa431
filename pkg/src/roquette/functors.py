"""Evaluating rational biset functor data edge by edge.

A functor table assigns to each Roquette type R the abelian group ∂F(R);
the value of F on a sum of edges is then the direct sum of the values.
When a table does not know an edge, the evaluators return a Partial listing
the unknown edges instead of guessing.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from .edges import EdgeSum, canonical_form
from .errors import InvalidParameter, OddPrimeRequired, UnknownFunctor
from .rtype import (CYCLIC, DIHEDRAL, SEMIDIHEDRAL, TRIVIAL, RoquetteType,
                    euler_phi_prime_power, prime_power_log)


@dataclass(frozen=True)
class AbelianSignature:
    """Z^free_rank plus cyclic torsion factors of prime-power order."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise InvalidParameter("free rank must be nonnegative")
        for q in self.torsion:
            if q < 2 or prime_power_log(q, _smallest_prime(q)) is None:
                raise InvalidParameter(f"torsion order {q} is not a prime power > 1")
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))

    def __add__(self, other: "AbelianSignature") -> "AbelianSignature":
        return AbelianSignature(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def times(self, k: int) -> "AbelianSignature":
        return AbelianSignature(k * self.free_rank, self.torsion * k)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def torsion_rank(self, q: int | None = None) -> int:
        return len(self.torsion) if q is None else self.torsion.count(q)

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for q, k in sorted(Counter(self.torsion).items()):
            parts.append(f"Z/{q}" if k == 1 else f"(Z/{q})^{k}")
        return " ⊕ ".join(parts) or "0"

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _smallest_prime(n: int) -> int:
    return next(d for d in range(2, n + 1) if n % d == 0)


ZERO = AbelianSignature()


@dataclass(frozen=True)
class Partial:
    """The known part of a value plus the edges the table could not evaluate."""

    known: AbelianSignature | int
    unknown: EdgeSum

    def __str__(self) -> str:
        return f"partial: known {self.known}; unknown edges {self.unknown}"

    def to_dict(self) -> dict:
        known = self.known.to_dict() if isinstance(self.known, AbelianSignature) else self.known
        return {"partial": True, "known": known, "unknown": self.unknown.to_dict()}


Rule = Callable[[RoquetteType], "AbelianSignature | None"]


@dataclass(frozen=True)
class FunctorTable:
    """Per-edge values of a functor; None from the rule means "not known"."""

    name: str
    rule: Rule
    scope_note: str
    extension: bool = False
    overrides: Mapping[RoquetteType, AbelianSignature] = field(default_factory=dict)

    def value(self, t: RoquetteType) -> AbelianSignature | None:
        if t in self.overrides:
            return self.overrides[t]
        return self.rule(t)

    def collapse_invariant(self) -> bool:
        """∂C2 ≅ 1, so both must get the same value where both are known."""
        a = self.value(RoquetteType.trivial(2))
        b = self.value(RoquetteType.cyclic(2, 1))
        return a is None or b is None or a == b


def evaluate(table: FunctorTable, x: EdgeSum) -> AbelianSignature | Partial:
    known = ZERO
    unknown: dict[RoquetteType, int] = {}
    for t, k in x.items():
        v = table.value(t)
        if v is None:
            unknown[t] = k
        else:
            known = known + v.times(k)
    if unknown:
        return Partial(known, EdgeSum(x.prime, unknown))
    return known


# Built-in tables --------------------------------------------------------


def _dade_rule(t: RoquetteType) -> AbelianSignature | None:
    if t.p != 2:
        return None
    if t.kind == TRIVIAL or t.kind == DIHEDRAL or t.is_cyclic_of_order(2):
        return ZERO
    if t.kind in (CYCLIC, SEMIDIHEDRAL):
        return AbelianSignature(0, (2,))
    return None   # generalized quaternion edges


def _bx_rule(t: RoquetteType) -> AbelianSignature | None:
    if t.p == 2 and (t.kind in (TRIVIAL, DIHEDRAL) or t.is_cyclic_of_order(2)):
        return AbelianSignature(0, (2,))
    return None


def _rq_rule(t: RoquetteType) -> AbelianSignature:
    return AbelianSignature(1)


DADE_TORSION = FunctorTable(
    "dade-torsion", _dade_rule,
    "p = 2 only; trivial, C2 and dihedral edges are torsion free, C_{2^m} (m >= 2) and "
    "semidihedral edges give Z/2; quaternion edges are unknown")
BURNSIDE_UNITS = FunctorTable(
    "bx-rank", _bx_rule,
    "p = 2 only; one F2-dimension per trivial, C2 or dihedral edge; other edges unknown")
RATIONAL_REPS = FunctorTable(
    "rq-rank", _rq_rule, "every edge contributes one irreducible rational representation")

_TABLES: dict[str, FunctorTable] = {t.name: t for t in (DADE_TORSION, BURNSIDE_UNITS, RATIONAL_REPS)}
TABLES = MappingProxyType(_TABLES)


def get_table(name: str) -> FunctorTable:
    try:
        return _TABLES[name]
    except KeyError:
        raise UnknownFunctor(f"no functor table named {name!r}") from None


def register_table(name: str, entries: Iterable[Mapping], *, base: str | None = None,
                   scope_note: str = "user extension", prime: int | None = None) -> FunctorTable:
    """Register a table (optionally overlaying a built-in one).

    Each entry is {"type": tag, "free_rank": int, "torsion": [orders]} with the
    tags of the EdgeSum serialization.  The tag "1" needs a "prime" field or
    the prime keyword.
    """
    overrides: dict[RoquetteType, AbelianSignature] = {}
    for entry in entries:
        p = entry.get("prime", prime)
        t = RoquetteType.from_tag(entry["type"], p)
        overrides[t] = AbelianSignature(int(entry.get("free_rank", 0)),
                                        tuple(int(q) for q in entry.get("torsion", ())))
    rule = get_table(base).rule if base else (lambda t: None)
    if base:
        overrides = {**get_table(base).overrides, **overrides}
    table = FunctorTable(name, rule, scope_note, extension=True, overrides=overrides)
    if not table.collapse_invariant():
        raise InvalidParameter(f"table {name!r} gives ∂C2 and 1 different values")
    _TABLES[name] = table
    return table


def unregister_table(name: str) -> None:
    table = get_table(name)
    if not table.extension:
        raise InvalidParameter(f"{name!r} is a built-in table")
    del _TABLES[name]


# Evaluators -------------------------------------------------------------


def rq_rank(x: EdgeSum) -> int:
    """Rank of the rational representation ring, i.e. the number of edges."""
    return canonical_form(x).total()


def faithful_count(x: EdgeSum) -> int:
    """Number of faithful irreducible rational representations of ∂P = x."""
    return x.total()


def dade_torsion(x: EdgeSum) -> AbelianSignature | Partial:
    return evaluate(DADE_TORSION, x)


def burnside_units_rank(x: EdgeSum) -> int | Partial:
    value = evaluate(BURNSIDE_UNITS, x)
    if isinstance(value, Partial):
        return Partial(value.known.torsion_rank(), value.unknown)
    return value.torsion_rank()


def center_signature(x: EdgeSum) -> Counter:
    """Degrees of the cyclotomic fields in the center of the rational group algebra."""
    if x.prime == 2:
        raise OddPrimeRequired("the center signature does not determine the edges for p = 2")
    degrees: Counter = Counter()
    for t, k in x.items():
        degrees[euler_phi_prime_power(t.p, t.m)] += k
    return degrees


def format_degrees(degrees: Counter) -> str:
    return "{" + ", ".join(f"{d}:{k}" for d, k in sorted(degrees.items())) + "}"

