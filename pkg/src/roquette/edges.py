"""Formal sums of Roquette edges and their tensor product.

An EdgeSum is a finite multiset of edges; the edge of a Roquette group R is
written with a leading ∂ and the edge of the trivial group is the unit 1.
Two layers coexist: the raw layer keeps ∂C2 as produced by decompositions,
the canonical layer merges ∂C2 into the unit (they are isomorphic for p = 2).
"""

from __future__ import annotations

import json
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, NamedTuple

from .errors import InvalidParameter, PrimeMismatch
from .rtype import (CYCLIC, DIHEDRAL, QUATERNION, SEMIDIHEDRAL, RoquetteType,
                    euler_phi_prime_power, is_prime, prime_power_log)


class EdgeSum:
    """A finite formal sum of edges with exact nonnegative multiplicities."""

    __slots__ = ("prime", "_terms", "canonical")

    def __init__(self, prime: int, terms: Mapping | None = None, *, canonical: bool = False):
        if not is_prime(prime):
            raise InvalidParameter(f"{prime} is not a prime")
        clean: dict[RoquetteType, int] = {}
        for t, k in (terms or {}).items():
            if isinstance(t, str):
                t = RoquetteType.from_name(t, prime)
            if t.p != prime:
                raise PrimeMismatch(f"edge {t} does not live over p = {prime}")
            k = int(k)
            if k < 0:
                raise InvalidParameter(f"negative multiplicity {k} for {t}")
            if k:
                clean[t] = clean.get(t, 0) + k
        if canonical and _c2(prime) in clean:
            raise InvalidParameter("a canonical sum cannot contain ∂C2")
        self.prime = prime
        self._terms = {t: clean[t] for t in sorted(clean)}
        self.canonical = canonical

    @classmethod
    def unit(cls, p: int) -> "EdgeSum":
        return cls(p, {RoquetteType.trivial(p): 1}, canonical=True)

    @classmethod
    def zero(cls, p: int) -> "EdgeSum":
        return cls(p, {}, canonical=True)

    @classmethod
    def edge(cls, t: RoquetteType, mult: int = 1) -> "EdgeSum":
        return cls(t.p, {t: mult})

    @property
    def terms(self) -> Mapping[RoquetteType, int]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __getitem__(self, t: RoquetteType) -> int:
        return self._terms.get(t, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def total(self) -> int:
        return sum(self._terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeSum):
            return NotImplemented
        return self.prime == other.prime and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.prime, tuple(self._terms.items())))

    def __add__(self, other: "EdgeSum") -> "EdgeSum":
        return direct_sum(self, other)

    def __mul__(self, other: "EdgeSum") -> "EdgeSum":
        return tensor(self, other)

    def __rmul__(self, k: int) -> "EdgeSum":
        return scale(self, k)

    def __pow__(self, n: int) -> "EdgeSum":
        return power(self, n)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for t, k in self._terms.items():
            name = "1" if t.is_trivial else f"∂{t.name}"
            parts.append(name if k == 1 else f"{k}·{name}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        flag = "canonical" if self.canonical else "raw"
        return f"EdgeSum(p={self.prime}, {self}, {flag})"

    # Serialization ------------------------------------------------------

    def to_records(self) -> list[dict]:
        return [{"type": t.tag, "mult": str(k)} for t, k in self._terms.items()]

    def to_dict(self) -> dict:
        return {"prime": self.prime, "terms": self.to_records()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "EdgeSum":
        p = int(data["prime"])
        terms: dict[RoquetteType, int] = {}
        for rec in data["terms"]:
            t = RoquetteType.from_tag(rec["type"], p)
            if t in terms:
                raise InvalidParameter(f"duplicate record for {rec['type']}")
            mult = rec["mult"]
            if not isinstance(mult, str) or not mult.isdigit():
                raise InvalidParameter(f"multiplicity must be a decimal string, got {mult!r}")
            terms[t] = int(mult)
        return cls(p, terms)

    @classmethod
    def from_json(cls, text: str) -> "EdgeSum":
        return cls.from_dict(json.loads(text))


def _c2(p: int):
    return RoquetteType(CYCLIC, 2, 1) if p == 2 else None


def _same_prime(x: EdgeSum, y: EdgeSum) -> None:
    if x.prime != y.prime:
        raise PrimeMismatch(f"cannot combine sums over p = {x.prime} and p = {y.prime}")


def canonical_form(x: EdgeSum) -> EdgeSum:
    """Merge ∂C2 into the unit when p = 2; other primes are unchanged."""
    if x.canonical:
        return x
    terms = dict(x.items())
    if x.prime == 2:
        c2 = terms.pop(_c2(2), 0)
        if c2:
            one = RoquetteType.trivial(2)
            terms[one] = terms.get(one, 0) + c2
    return EdgeSum(x.prime, terms, canonical=True)


def _finish(p: int, terms: dict, raw: bool) -> EdgeSum:
    out = EdgeSum(p, terms)
    return out if raw else canonical_form(out)


def direct_sum(x: EdgeSum, y: EdgeSum, *, raw: bool = False) -> EdgeSum:
    _same_prime(x, y)
    terms = dict(x.items())
    for t, k in y.items():
        terms[t] = terms.get(t, 0) + k
    return _finish(x.prime, terms, raw)


def scale(x: EdgeSum, k: int, *, raw: bool = False) -> EdgeSum:
    if k < 0:
        raise InvalidParameter("cannot scale by a negative integer")
    return _finish(x.prime, {t: k * m for t, m in x.items()}, raw)


def subtract(x: EdgeSum, y: EdgeSum, *, raw: bool = False) -> EdgeSum:
    """x - y, defined when y is contained in x (cancellation)."""
    _same_prime(x, y)
    if not raw:
        x, y = canonical_form(x), canonical_form(y)
    terms = dict(x.items())
    for t, k in y.items():
        left = terms.get(t, 0) - k
        if left < 0:
            raise InvalidParameter(f"{y} is not a summand of {x}")
        terms[t] = left
    return _finish(x.prime, terms, raw)


def divide(x: EdgeSum, k: int, *, raw: bool = False) -> EdgeSum:
    """x / k, defined when every multiplicity is divisible by k."""
    if k <= 0:
        raise InvalidParameter("divisor must be positive")
    terms = {}
    for t, m in x.items():
        if m % k:
            raise InvalidParameter(f"multiplicity {m} of {t} is not divisible by {k}")
        terms[t] = m // k
    return _finish(x.prime, terms, raw)


# The diamond product and nu ---------------------------------------------


def _diamond_sorted(a: RoquetteType, b: RoquetteType) -> RoquetteType:
    """Diamond product assuming exponent(a) <= exponent(b)."""
    if a.is_trivial or a.is_cyclic_of_order(a.p):
        return b
    q8 = RoquetteType.quaternion(3)
    if a == q8 and b == q8:
        return RoquetteType.cyclic(2, 1)
    if b.order >= 16 and a.kind == b.kind and a.kind in (DIHEDRAL, QUATERNION):
        return RoquetteType.dihedral(b.m)
    if {a.kind, b.kind} == {DIHEDRAL, QUATERNION}:
        return RoquetteType.quaternion(b.m)
    if b.kind == SEMIDIHEDRAL and (
            (a.kind in (DIHEDRAL, QUATERNION) and a.order < b.order) or a == b):
        return RoquetteType.semidihedral(b.m)
    return RoquetteType.cyclic(b.p, prime_power_log(b.exponent, b.p))


@lru_cache(maxsize=None)
def diamond(a: RoquetteType, b: RoquetteType) -> RoquetteType:
    """Type of N/L for a centrally diagonal genetic subgroup L of a x b."""
    if a.p != b.p:
        raise PrimeMismatch(f"diamond of {a} and {b} over different primes")
    if a.exponent < b.exponent:
        return _diamond_sorted(a, b)
    if b.exponent < a.exponent:
        return _diamond_sorted(b, a)
    left, right = _diamond_sorted(a, b), _diamond_sorted(b, a)
    if left != right:
        raise AssertionError(f"diamond table is ambiguous on {a}, {b}")
    return left


@lru_cache(maxsize=None)
def nu(a: RoquetteType, b: RoquetteType) -> int:
    """Number of copies of ∂(a diamond b) in ∂a x ∂b."""
    d = diamond(a, b)
    q8 = RoquetteType.quaternion(3)
    if a.is_trivial or b.is_trivial or a == q8 or b == q8:
        return 1
    m = min(a.exponent, b.exponent)
    num = euler_phi_prime_power(a.p, prime_power_log(m, a.p)) * m * d.order
    den = a.order * b.order
    if num % den:
        raise AssertionError(f"nu formula is not integral on {a}, {b}")
    return num // den


def edge_tensor(a: RoquetteType, b: RoquetteType, *, raw: bool = False) -> EdgeSum:
    """∂a x ∂b as nu(a, b) copies of ∂(a diamond b)."""
    if a.p != b.p:
        raise PrimeMismatch(f"edges {a} and {b} live over different primes")
    return _finish(a.p, {diamond(a, b): nu(a, b)}, raw)


def tensor(x: EdgeSum, y: EdgeSum, *, raw: bool = False) -> EdgeSum:
    """Bilinear extension of edge_tensor."""
    _same_prime(x, y)
    terms: dict[RoquetteType, int] = {}
    for a, k in x.items():
        for b, l in y.items():
            d = diamond(a, b)
            terms[d] = terms.get(d, 0) + k * l * nu(a, b)
    return _finish(x.prime, terms, raw)


def power(x: EdgeSum, n: int, *, raw: bool = False) -> EdgeSum:
    if n < 0:
        raise InvalidParameter("negative tensor power")
    result = EdgeSum.unit(x.prime)
    base = x
    while n:
        if n & 1:
            result = tensor(result, base, raw=raw)
        n >>= 1
        if n:
            base = tensor(base, base, raw=raw)
    return result if raw else canonical_form(result)


def iso_equal(x: EdgeSum, y: EdgeSum) -> bool:
    """Isomorphism in the category: equality of canonical forms."""
    _same_prime(x, y)
    return canonical_form(x).terms == canonical_form(y).terms


class ClosedForm(NamedTuple):
    raw: EdgeSum
    canonical: EdgeSum


def dihedral_power_closed_form(m: int, n: int) -> ClosedForm:
    """The n-th direct power of D_{2^m} summed in closed form."""
    if m < 3 or n < 0:
        raise InvalidParameter("closed form needs m >= 3 and n >= 0")
    terms = {RoquetteType.trivial(2): 1, RoquetteType.cyclic(2, 1): 5 ** n - 1}
    for l in range(4, m + 1):
        num = (3 + 2 ** (l - 2)) ** n - (3 + 2 ** (l - 3)) ** n
        if num % 2 ** (l - 3):
            raise AssertionError("closed-form coefficient is not integral")
        terms[RoquetteType.dihedral(l)] = num // 2 ** (l - 3)
    raw = EdgeSum(2, terms)
    return ClosedForm(raw, canonical_form(raw))
