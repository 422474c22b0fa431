"""Isomorphism types of Roquette p-groups.

A Roquette group is a p-group all of whose normal abelian subgroups are
cyclic.  For odd p only the cyclic groups qualify; for p = 2 there are in
addition the generalized quaternion groups of order at least 8 and the
dihedral and semidihedral groups of order at least 16.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InvalidParameter

TRIVIAL = "1"
CYCLIC = "C"
DIHEDRAL = "D"
QUATERNION = "Q"
SEMIDIHEDRAL = "SD"

_KIND_RANK = {TRIVIAL: 0, CYCLIC: 1, DIHEDRAL: 2, QUATERNION: 3, SEMIDIHEDRAL: 4}
_MIN_M = {TRIVIAL: 0, CYCLIC: 1, DIHEDRAL: 4, QUATERNION: 3, SEMIDIHEDRAL: 4}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power_log(n: int, p: int):
    """Return m with n == p**m, or None."""
    if n < 1:
        return None
    m = 0
    while n % p == 0:
        n //= p
        m += 1
    return m if n == 1 else None


def euler_phi_prime_power(p: int, m: int) -> int:
    """Euler's function at p**m."""
    if m == 0:
        return 1
    return (p - 1) * p ** (m - 1)


@dataclass(frozen=True)
class RoquetteType:
    """The type of a Roquette group of order p**m.

    kind is one of "1", "C", "D", "Q", "SD".  Nonabelian kinds force p = 2.
    """

    kind: str
    p: int
    m: int

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise InvalidParameter(f"unknown Roquette kind {self.kind!r}")
        if not is_prime(self.p):
            raise InvalidParameter(f"{self.p} is not a prime")
        if self.kind == TRIVIAL:
            if self.m != 0:
                raise InvalidParameter("the trivial type has m = 0")
            return
        if self.kind != CYCLIC and self.p != 2:
            raise InvalidParameter(f"{self.kind} types exist only for p = 2")
        if self.m < _MIN_M[self.kind]:
            raise InvalidParameter(
                f"{self.kind} type needs m >= {_MIN_M[self.kind]}, got {self.m}")

    @classmethod
    def trivial(cls, p: int) -> "RoquetteType":
        return cls(TRIVIAL, p, 0)

    @classmethod
    def cyclic(cls, p: int, m: int) -> "RoquetteType":
        """Cyclic group of order p**m; m = 0 gives the trivial type."""
        if m == 0:
            return cls.trivial(p)
        return cls(CYCLIC, p, m)

    @classmethod
    def dihedral(cls, m: int) -> "RoquetteType":
        return cls(DIHEDRAL, 2, m)

    @classmethod
    def quaternion(cls, m: int) -> "RoquetteType":
        return cls(QUATERNION, 2, m)

    @classmethod
    def semidihedral(cls, m: int) -> "RoquetteType":
        return cls(SEMIDIHEDRAL, 2, m)

    @property
    def order(self) -> int:
        return self.p ** self.m

    @property
    def exponent(self) -> int:
        if self.kind in (TRIVIAL, CYCLIC):
            return self.p ** self.m
        return 2 ** (self.m - 1)

    @property
    def is_trivial(self) -> bool:
        return self.kind == TRIVIAL

    @property
    def is_abelian(self) -> bool:
        return self.kind in (TRIVIAL, CYCLIC)

    def is_cyclic_of_order(self, n: int) -> bool:
        return self.kind in (TRIVIAL, CYCLIC) and self.order == n

    @property
    def tag(self) -> str:
        """Serialization tag: "1", "C:p^m", "D:2^m", "Q:2^m" or "SD:2^m"."""
        if self.kind == TRIVIAL:
            return "1"
        return f"{self.kind}:{self.p}^{self.m}"

    @property
    def name(self) -> str:
        if self.kind == TRIVIAL:
            return "1"
        return f"{self.kind}{self.order}"

    def sort_key(self):
        return (self.p, self.m, _KIND_RANK[self.kind])

    def __lt__(self, other: "RoquetteType") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"RoquetteType({self.name}, p={self.p})"

    @classmethod
    def from_tag(cls, tag: str, p: int | None = None) -> "RoquetteType":
        if tag == "1":
            if p is None:
                raise InvalidParameter("the tag '1' needs an explicit prime")
            return cls.trivial(p)
        match = re.fullmatch(r"(C|D|Q|SD):(\d+)\^(\d+)", tag)
        if not match:
            raise InvalidParameter(f"malformed type tag {tag!r}")
        kind, q, m = match.group(1), int(match.group(2)), int(match.group(3))
        if p is not None and q != p:
            raise InvalidParameter(f"tag {tag!r} does not match prime {p}")
        return cls(kind, q, m)

    @classmethod
    def from_name(cls, name: str, p: int | None = None) -> "RoquetteType":
        """Parse display names such as "1", "C4", "D16", "Q8", "SD32"."""
        name = name.strip().lstrip("∂")
        if name == "1":
            if p is None:
                raise InvalidParameter("the name '1' needs an explicit prime")
            return cls.trivial(p)
        match = re.fullmatch(r"(SD|C|D|Q)(\d+)", name)
        if not match:
            raise InvalidParameter(f"malformed type name {name!r}")
        kind, order = match.group(1), int(match.group(2))
        if kind == CYCLIC:
            q = p
            if q is None:
                q = next((d for d in range(2, order + 1) if order % d == 0), None)
            m = prime_power_log(order, q) if q else None
            if m is None or m == 0:
                raise InvalidParameter(f"{name!r} is not a nontrivial prime-power order")
            return cls.cyclic(q, m)
        m = prime_power_log(order, 2)
        if m is None:
            raise InvalidParameter(f"{name!r} needs a power-of-two order")
        return cls(kind, 2, m)
