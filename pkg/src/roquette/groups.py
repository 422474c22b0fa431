"""Concrete finite p-groups given by explicit multiplication tables.

Elements are the integers 0..order-1 and 0 is always the identity.  A
subgroup is stored as a Python int bitmask over the parent's elements, which
makes intersections and containments single machine-level operations.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (GroupTooLarge, InvalidParameter, NoCentralSubgroup,
                     NotNormal, PrimeMismatch)
from .rtype import RoquetteType, is_prime, prime_power_log

DEFAULT_MAX_ORDER = 512
# Tables above this order are trusted rather than checked for associativity.
EXHAUSTIVE_CHECK_ORDER = 512


def order_bound(override: int | None = None) -> int:
    """The active order bound: explicit override, ROQUETTE_MAX_ORDER, or 512."""
    if override is not None:
        return int(override)
    env = os.environ.get("ROQUETTE_MAX_ORDER")
    if env:
        return int(env)
    return DEFAULT_MAX_ORDER


def check_order(order: int, max_order: int | None = None) -> None:
    bound = order_bound(max_order)
    if order > bound:
        raise GroupTooLarge(order, bound)


def _bits_to_mask(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


class FiniteGroup:
    """A finite p-group with elements 0..order-1 and identity 0.

    table[a, b] is the index of the product a*b.  The table is validated on
    construction: Latin square, identity, inverses and (for order up to
    EXHAUSTIVE_CHECK_ORDER) associativity on every triple.
    """

    def __init__(self, table, prime: int, *, labels: Sequence[str] | None = None,
                 family_tag: str | None = None, check: bool = True,
                 max_order: int | None = None):
        table = np.array(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvalidParameter("multiplication table must be a non-empty square array")
        n = table.shape[0]
        if not is_prime(prime):
            raise InvalidParameter(f"{prime} is not a prime")
        log = prime_power_log(n, prime)
        if log is None:
            raise InvalidParameter(f"order {n} is not a power of {prime}")
        check_order(n, max_order)
        table.setflags(write=False)
        self.table = table
        self.order = n
        self.prime = prime
        self.log_order = log
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise InvalidParameter("labels must have one entry per element")
        self.family_tag = family_tag
        self.inverse = np.argmax(table == 0, axis=1).astype(np.int32)
        self.inverse.setflags(write=False)
        self._cache: dict = {}
        if check:
            self._check_axioms()

    def _check_axioms(self) -> None:
        t, n = self.table, self.order
        ar = np.arange(n)
        if (t.min() < 0) or (t.max() >= n):
            raise InvalidParameter("table entries out of range")
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise InvalidParameter("element 0 is not a two-sided identity")
        if not (np.all(np.sort(t, axis=1) == ar) and np.all(np.sort(t, axis=0) == ar[:, None])):
            raise InvalidParameter("table is not a Latin square")
        inv = self.inverse
        if not (np.all(t[ar, inv] == 0) and np.all(t[inv, ar] == 0)):
            raise InvalidParameter("inverses are not two-sided")
        if n <= EXHAUSTIVE_CHECK_ORDER:
            chunk = max(1, (1 << 22) // (n * n))
            for start in range(0, n, chunk):
                rows = t[start:start + chunk]
                if not np.array_equal(t[rows], rows[:, t]):
                    raise InvalidParameter("table is not associative")
        orders = self.element_orders
        if np.any(n % orders != 0):
            raise InvalidParameter("an element order does not divide the group order")

    def __repr__(self) -> str:
        tag = self.family_tag or "group"
        return f"<FiniteGroup {tag} of order {self.order}>"

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def label(self, a: int) -> str:
        if self.labels is None:
            return str(a)
        return self.labels[a]

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def conj(self) -> np.ndarray:
        """conj[g, x] = g^-1 x g."""
        c = self.table[self.inverse[:, None], self.table.T]
        c.setflags(write=False)
        return c

    @cached_property
    def pth_power(self) -> np.ndarray:
        ar = np.arange(self.order)
        y = ar.copy()
        for _ in range(self.prime - 1):
            y = self.table[y, ar]
        y.setflags(write=False)
        return y

    @cached_property
    def element_orders(self) -> np.ndarray:
        y = np.arange(self.order)
        orders = np.ones(self.order, dtype=np.int64)
        active = y != 0
        while active.any():
            orders[active] *= self.prime
            y = self.pth_power[y]
            active = y != 0
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(self.element_orders.max())

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def power(self, x: int, k: int) -> int:
        k %= int(self.element_orders[x])
        result, base = 0, x
        while k:
            if k & 1:
                result = int(self.table[result, base])
            base = int(self.table[base, base])
            k >>= 1
        return result

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, found greedily from high element orders."""
        gens: list[int] = []
        inside = np.zeros(self.order, dtype=bool)
        inside[0] = True
        for x in np.argsort(-self.element_orders, kind="stable"):
            if not inside[x]:
                gens.append(int(x))
                inside = _closure_flags(self, gens)
        return tuple(gens)

    # Subgroups ----------------------------------------------------------

    def subgroup_from_flags(self, flags: np.ndarray) -> "Subgroup":
        return Subgroup(self, _bits_to_mask(flags), np.flatnonzero(flags))

    def subgroup_from_indices(self, idx) -> "Subgroup":
        idx = np.unique(np.asarray(idx, dtype=np.int64))
        flags = np.zeros(self.order, dtype=bool)
        flags[idx] = True
        return Subgroup(self, _bits_to_mask(flags), idx)

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        """The subgroup with exactly these elements (must be closed)."""
        s = self.subgroup_from_indices(list(elements))
        if not is_closed(self, s.indices):
            raise InvalidParameter("element set is not a subgroup")
        return s

    def generate(self, elements: Iterable[int]) -> "Subgroup":
        """The subgroup generated by the given elements."""
        return self.subgroup_from_flags(_closure_flags(self, list(elements)))

    @cached_property
    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, 1, np.array([0]))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, (1 << self.order) - 1, np.arange(self.order))


def _closure_flags(g: FiniteGroup, gens: list[int]) -> np.ndarray:
    flags = np.zeros(g.order, dtype=bool)
    flags[0] = True
    gens = [x for x in dict.fromkeys(int(x) for x in gens) if x != 0]
    if not gens:
        return flags
    gens_arr = np.array(gens)
    frontier = np.array([0])
    while frontier.size:
        prods = np.unique(g.table[frontier][:, gens_arr].ravel())
        frontier = prods[~flags[prods]]
        flags[frontier] = True
    return flags


def is_closed(g: FiniteGroup, idx: np.ndarray) -> bool:
    flags = np.zeros(g.order, dtype=bool)
    flags[idx] = True
    if not flags[0]:
        return False
    return bool(flags[g.table[np.ix_(idx, idx)]].all())


class Subgroup:
    """A subgroup of a FiniteGroup, stored as a bitmask over its elements."""

    __slots__ = ("parent", "mask", "_idx", "_flags")

    def __init__(self, parent: FiniteGroup, mask: int, idx: np.ndarray | None = None):
        self.parent = parent
        self.mask = mask
        self._idx = idx
        self._flags = None

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.order

    @property
    def indices(self) -> np.ndarray:
        if self._idx is None:
            self._idx = np.flatnonzero(self.flags)
        return self._idx

    @property
    def flags(self) -> np.ndarray:
        if self._flags is None:
            n = self.parent.order
            raw = self.mask.to_bytes((n + 7) // 8, "little")
            bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
            self._flags = bits[:n].astype(bool)
        return self._flags

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.indices)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> int(x)) & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.mask != other.mask

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.mask & other.mask)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def sort_key(self):
        """Canonical order: by size, then lexicographically by sorted members."""
        return (self.order, self.members)

    def conjugate(self, g: int) -> "Subgroup":
        """The subgroup g^-1 S g."""
        idx = self.parent.conj[g][self.indices]
        return self.parent.subgroup_from_indices(idx)

    def __repr__(self) -> str:
        shown = ", ".join(self.parent.label(x) for x in self.members[:8])
        more = ", ..." if self.order > 8 else ""
        return f"<Subgroup of order {self.order}: {{{shown}{more}}}>"


@dataclass(frozen=True)
class Section:
    """A pair (top, bottom) of subgroups with bottom normal in top."""

    top: Subgroup
    bottom: Subgroup

    def __post_init__(self):
        if not self.bottom <= self.top:
            raise InvalidParameter("section bottom must lie in its top")
        if not normalizes(self.top.parent, self.top.indices, self.bottom):
            raise NotNormal("section bottom is not normal in its top")

    def conjugate(self, g: int) -> "Section":
        return Section(self.top.conjugate(g), self.bottom.conjugate(g))


@dataclass(frozen=True)
class CentralGluing:
    """An isomorphism between central subgroups of order p of two groups."""

    zp: Subgroup
    zq: Subgroup
    phi: tuple[tuple[int, int], ...]

    def image(self, x: int) -> int:
        return dict(self.phi)[x]


# Family constructors ---------------------------------------------------


def _grid(n: int):
    ar = np.arange(n)
    return ar[:, None], ar[None, :]


def cyclic_group(p: int, m: int, *, max_order: int | None = None) -> FiniteGroup:
    if not is_prime(p) or m < 0:
        raise InvalidParameter(f"Cyclic({p}, {m}) is not a valid family")
    n = p ** m
    check_order(n, max_order)
    i, j = _grid(n)
    labels = ["1"] + [f"x^{k}" for k in range(1, n)]
    return FiniteGroup((i + j) % n, p, labels=labels, family_tag=f"C{n}" if n > 1 else "1",
                       max_order=max_order)


def _metacyclic_2(m: int, kind: str, max_order: int | None) -> FiniteGroup:
    """Groups <r, s> of order 2^m with r of order 2^(m-1) and s acting on r."""
    n = 2 ** m
    check_order(n, max_order)
    h = n // 2
    i, j = _grid(n)
    a, b = i % h, i // h
    c, d = j % h, j // h
    if kind == "D":
        twist = np.where(b == 1, -1, 1)
        r = a + twist * c
    elif kind == "SD":
        twist = np.where(b == 1, h // 2 - 1, 1)
        r = a + twist * c
    else:
        twist = np.where(b == 1, -1, 1)
        r = a + twist * c + (b & d) * (h // 2)
    table = (r % h) + h * ((b + d) % 2)
    labels = []
    for x in range(n):
        ra, sb = x % h, x // h
        parts = ([f"r^{ra}"] if ra else []) + (["s"] if sb else [])
        labels.append("".join(parts) or "1")
    return FiniteGroup(table, 2, labels=labels, family_tag=f"{kind}{n}", max_order=max_order)


def dihedral_group(m: int, *, max_order: int | None = None) -> FiniteGroup:
    """Dihedral group of order 2^m (m >= 3)."""
    if m < 3:
        raise InvalidParameter(f"Dihedral({m}) needs m >= 3")
    return _metacyclic_2(m, "D", max_order)


def quaternion_group(m: int, *, max_order: int | None = None) -> FiniteGroup:
    """Generalized quaternion group of order 2^m (m >= 3)."""
    if m < 3:
        raise InvalidParameter(f"Quaternion({m}) needs m >= 3")
    return _metacyclic_2(m, "Q", max_order)


def semidihedral_group(m: int, *, max_order: int | None = None) -> FiniteGroup:
    """Semidihedral group of order 2^m (m >= 4)."""
    if m < 4:
        raise InvalidParameter(f"Semidihedral({m}) needs m >= 4")
    return _metacyclic_2(m, "SD", max_order)


def elementary_abelian_group(p: int, k: int, *, max_order: int | None = None) -> FiniteGroup:
    if not is_prime(p) or k < 0:
        raise InvalidParameter(f"ElementaryAbelian({p}, {k}) is not a valid family")
    n = p ** k
    check_order(n, max_order)
    i, j = _grid(n)
    table = np.zeros((n, n), dtype=np.int64)
    for t in range(k):
        w = p ** t
        table += ((i // w + j // w) % p) * w
    return FiniteGroup(table, p, family_tag=f"E{p},{k}", max_order=max_order)


def extraspecial_group(p: int, sign: str, *, max_order: int | None = None) -> FiniteGroup:
    """Extraspecial group of order p^3; sign '+' has exponent p (D8 when p = 2)."""
    if sign not in ("+", "-"):
        raise InvalidParameter(f"extraspecial sign must be '+' or '-', got {sign!r}")
    if not is_prime(p):
        raise InvalidParameter(f"{p} is not a prime")
    if p == 2:
        g = dihedral_group(3, max_order=max_order) if sign == "+" else quaternion_group(3, max_order=max_order)
        return g
    n = p ** 3
    check_order(n, max_order)
    i, j = _grid(n)
    if sign == "+":
        # Heisenberg group: (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b').
        a, b, c = i % p, (i // p) % p, i // (p * p)
        a2, b2, c2 = j % p, (j // p) % p, j // (p * p)
        table = (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p)
    else:
        # C_{p^2} semidirect C_p with y x y^-1 = x^(1+p).
        q = p * p
        a, b = i % q, i // q
        a2, b2 = j % q, j // q
        factor = np.array([pow(1 + p, e, q) for e in range(p)])
        twist = factor[b]
        table = (a + twist * a2) % q + q * ((b + b2) % p)
    return FiniteGroup(table, p, family_tag=f"X{sign}{p}", max_order=max_order)


_FAMILY_BUILDERS = {
    "cyclic": cyclic_group,
    "dihedral": dihedral_group,
    "quaternion": quaternion_group,
    "semidihedral": semidihedral_group,
    "elementaryabelian": elementary_abelian_group,
    "extraspecial": extraspecial_group,
}


def make_family(family: str, *params, max_order: int | None = None) -> FiniteGroup:
    """Build a family member, e.g. make_family("Dihedral", 4) for D16.

    Parameters are exponent indices: Cyclic(p, m), Dihedral(m), Quaternion(m),
    Semidihedral(m), ElementaryAbelian(p, k), Extraspecial(p, sign).
    """
    key = family.replace("_", "").replace(" ", "").lower()
    if key not in _FAMILY_BUILDERS:
        raise InvalidParameter(f"unknown family {family!r}")
    try:
        return _FAMILY_BUILDERS[key](*params, max_order=max_order)
    except TypeError as exc:
        raise InvalidParameter(f"bad parameters for {family}: {params}") from exc


def trivial_group(p: int) -> FiniteGroup:
    return FiniteGroup([[0]], p, family_tag="1")


# Products and quotients ------------------------------------------------


def direct_product(g: FiniteGroup, h: FiniteGroup, *, max_order: int | None = None,
                   check: bool = True) -> FiniteGroup:
    """g x h with the pair (a, b) stored at index a * |h| + b."""
    if g.prime != h.prime:
        raise PrimeMismatch(f"cannot multiply a {g.prime}-group by a {h.prime}-group")
    n = g.order * h.order
    check_order(n, max_order)
    nh = h.order
    table = (g.table[:, None, :, None].astype(np.int64) * nh + h.table[None, :, None, :]).reshape(n, n)
    labels = None
    if g.labels is not None or h.labels is not None:
        labels = [f"({g.label(a)},{h.label(b)})" for a in range(g.order) for b in range(nh)]
    tag = f"({g.family_tag or '?'} x {h.family_tag or '?'})"
    return FiniteGroup(table, g.prime, labels=labels, family_tag=tag,
                       check=check, max_order=max_order)


class Quotient(NamedTuple):
    group: FiniteGroup
    projection: np.ndarray


def quotient_group(g: FiniteGroup, n: Subgroup, *, check: bool = False) -> Quotient:
    """g / n with the projection sending each element to its coset index."""
    if not is_normal(g, n):
        raise NotNormal("quotient by a non-normal subgroup")
    proj = np.full(g.order, -1, dtype=np.int64)
    reps = []
    nidx = n.indices
    for x in range(g.order):
        if proj[x] < 0:
            proj[g.table[x, nidx]] = len(reps)
            reps.append(x)
    reps_arr = np.array(reps)
    table = proj[g.table[np.ix_(reps_arr, reps_arr)]]
    tag = f"{g.family_tag or '?'}/N{n.order}"
    q = FiniteGroup(table, g.prime, family_tag=tag, check=check)
    proj.setflags(write=False)
    return Quotient(q, proj)


def central_order_p_subgroups(g: FiniteGroup) -> list[Subgroup]:
    z = center(g)
    seen = {}
    for x in z.indices:
        if x != 0 and g.element_orders[x] == g.prime:
            s = g.generate([int(x)])
            seen.setdefault(s.mask, s)
    return sorted(seen.values(), key=Subgroup.sort_key)


def gluing_subgroup(prod: FiniteGroup, g: FiniteGroup, h: FiniteGroup,
                    gluing: CentralGluing) -> Subgroup:
    """The subgroup {(z, phi(z)^-1)} of g x h that is factored out."""
    elems = [int(z) * h.order + int(h.inverse[w]) for z, w in gluing.phi]
    return prod.subgroup(elems)


def central_products(g: FiniteGroup, h: FiniteGroup, *, max_order: int | None = None):
    """All central products (g x h)/Delta_phi over order-p central subgroups and gluings."""
    if g.prime != h.prime:
        raise PrimeMismatch("central product of groups over different primes")
    if g.order == 1 or h.order == 1:
        raise NoCentralSubgroup("the trivial group has no central subgroup of order p")
    p = g.prime
    check_order(g.order * h.order // p, max_order)
    prod = direct_product(g, h, max_order=p * order_bound(max_order), check=False)
    results = []
    for zp in central_order_p_subgroups(g):
        z = next(int(x) for x in zp.indices if x != 0)
        for zq in central_order_p_subgroups(h):
            w = next(int(x) for x in zq.indices if x != 0)
            for r in range(1, p):
                phi = tuple((g.power(z, i), h.power(w, r * i)) for i in range(p))
                gluing = CentralGluing(zp, zq, phi)
                delta = gluing_subgroup(prod, g, h, gluing)
                quotient = quotient_group(prod, delta).group
                quotient.family_tag = f"({g.family_tag or '?'} * {h.family_tag or '?'})"
                results.append((gluing, quotient))
    return results


# Subgroup analysis -----------------------------------------------------


def normalizes(g: FiniteGroup, elements: np.ndarray, s: Subgroup) -> bool:
    """True when every listed element normalizes s."""
    images = g.conj[np.asarray(elements)][:, s.indices]
    return bool(s.flags[images].all())


def normalizer_flags(g: FiniteGroup, s: Subgroup) -> np.ndarray:
    return s.flags[g.conj[:, s.indices]].all(axis=1)


def normalizer(g: FiniteGroup, s: Subgroup) -> Subgroup:
    _check_parent(g, s)
    return g.subgroup_from_flags(normalizer_flags(g, s))


def centralizer(g: FiniteGroup, s: Subgroup) -> Subgroup:
    _check_parent(g, s)
    idx = s.indices
    return g.subgroup_from_flags((g.conj[:, idx] == idx[None, :]).all(axis=1))


def center(g: FiniteGroup) -> Subgroup:
    if "center" not in g._cache:
        g._cache["center"] = centralizer(g, g.whole)
    return g._cache["center"]


def is_normal(g: FiniteGroup, s: Subgroup) -> bool:
    _check_parent(g, s)
    return normalizes(g, np.array(g.generators or (0,)), s)


def _check_parent(g: FiniteGroup, s: Subgroup) -> None:
    if s.parent is not g:
        raise InvalidParameter("subgroup belongs to a different group")


def is_abelian_subgroup(g: FiniteGroup, s: Subgroup) -> bool:
    idx = s.indices
    block = g.table[np.ix_(idx, idx)]
    return bool(np.array_equal(block, block.T))


def is_cyclic_subgroup(g: FiniteGroup, s: Subgroup) -> bool:
    return bool((g.element_orders[s.indices] == s.order).any())


def exponent_of(g: FiniteGroup) -> int:
    return g.exponent


def cyclic_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """All cyclic subgroups in canonical order."""
    if "cyclic" in g._cache:
        return g._cache["cyclic"]
    n = g.order
    ar = np.arange(n)
    flags = np.zeros((n, n), dtype=bool)
    cur = np.zeros(n, dtype=np.int64)
    for _ in range(g.exponent):
        flags[ar, cur] = True
        cur = g.table[cur, ar]
    packed = np.packbits(flags, axis=1, bitorder="little")
    found = {}
    for x in range(n):
        mask = int.from_bytes(packed[x].tobytes(), "little")
        if mask not in found:
            found[mask] = Subgroup(g, mask)
    result = sorted(found.values(), key=Subgroup.sort_key)
    g._cache["cyclic"] = result
    return result


def axial_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """All subgroups of axes (cyclic subgroups of order equal to the exponent)."""
    e = g.exponent
    found = {}
    for axis in cyclic_subgroups(g):
        if axis.order != e:
            continue
        gen = next(int(x) for x in axis.indices if g.element_orders[x] == e)
        k = 1
        while k <= e:
            s = g.generate([g.power(gen, k)])
            found.setdefault(s.mask, s)
            k *= g.prime
    return sorted(found.values(), key=Subgroup.sort_key)


def axes(g: FiniteGroup) -> list[Subgroup]:
    return [s for s in cyclic_subgroups(g) if s.order == g.exponent]


def conjugates(g: FiniteGroup, s: Subgroup) -> list[tuple[Subgroup, int]]:
    """The distinct conjugates g^-1 S g, each with one conjugating element.

    The first entry is s itself with conjugator 0.
    """
    found = {s.mask: (s, 0)}
    queue = [(s, 0)]
    gens = g.generators
    while queue:
        t, elem = queue.pop()
        for x in gens:
            idx = g.conj[x][t.indices]
            u = g.subgroup_from_indices(idx)
            if u.mask not in found:
                entry = (u, int(g.table[elem, x]))
                found[u.mask] = entry
                queue.append(entry)
    return list(found.values())


def conjugacy_classes_of_subgroups(g: FiniteGroup, subgroups: Iterable[Subgroup]) -> list[list[Subgroup]]:
    """Partition subgroups (closed under conjugation) into conjugacy classes."""
    seen = set()
    classes = []
    for s in subgroups:
        if s.mask in seen:
            continue
        cls = [t for t, _ in conjugates(g, s)]
        seen.update(t.mask for t in cls)
        classes.append(sorted(cls, key=Subgroup.sort_key))
    return classes


def cyclic_subgroup_classes(g: FiniteGroup, *, max_order: int | None = None) -> int:
    """Number of conjugacy classes of cyclic subgroups, trivial one included."""
    check_order(g.order, max_order)
    return len(conjugacy_classes_of_subgroups(g, cyclic_subgroups(g)))


def conjugacy_class_count(g: FiniteGroup) -> int:
    seen = np.zeros(g.order, dtype=bool)
    count = 0
    for x in range(g.order):
        if not seen[x]:
            seen[g.conj[:, x]] = True
            count += 1
    return count


def all_subgroups(g: FiniteGroup, *, max_order: int | None = None) -> list[Subgroup]:
    """Every subgroup of g, in canonical order.

    Built layer by layer: each subgroup K > 1 of a p-group has a normal
    subgroup H of index p, so K = H<x> for some x normalizing H with
    x^p in H, and K is the union of the cosets H x^i.
    """
    check_order(g.order, max_order)
    if "all" in g._cache:
        return g._cache["all"]
    p = g.prime
    result = [g.trivial_subgroup]
    layer = [g.trivial_subgroup]
    while layer:
        nxt: dict[int, Subgroup] = {}
        for h in layer:
            hflags = h.flags
            candidates = normalizer_flags(g, h) & ~hflags & hflags[g.pth_power]
            hidx = h.indices
            while candidates.any():
                x = int(np.argmax(candidates))
                parts = [hidx]
                xi = x
                for _ in range(p - 1):
                    parts.append(g.table[hidx, xi])
                    xi = int(g.table[xi, x])
                kidx = np.concatenate(parts)
                flags = np.zeros(g.order, dtype=bool)
                flags[kidx] = True
                candidates &= ~flags
                mask = _bits_to_mask(flags)
                if mask not in nxt:
                    nxt[mask] = Subgroup(g, mask, np.sort(kidx))
        layer = list(nxt.values())
        result.extend(layer)
    result.sort(key=Subgroup.sort_key)
    g._cache["all"] = result
    return result


def normal_subgroups(g: FiniteGroup) -> list[Subgroup]:
    return [s for s in all_subgroups(g) if is_normal(g, s)]


# Roquette recognition --------------------------------------------------


def _type_from_order_counts(p: int, k: int, counts: Counter) -> RoquetteType | None:
    """Classify a p-group of order p^k from its element-order counts."""
    n = p ** k
    if n == 1:
        return RoquetteType.trivial(p)
    if counts.get(n, 0):
        return RoquetteType.cyclic(p, k)
    if p != 2 or k < 3 or counts.get(n // 2, 0) == 0:
        return None
    # A 2-group with a cyclic subgroup of index 2 is one of C x C2, the
    # modular group, D, SD or Q; the involution count separates them.
    involutions = counts.get(2, 0)
    if involutions == 1:
        return RoquetteType.quaternion(k)
    if k >= 4 and involutions == 2 ** (k - 1) + 1:
        return RoquetteType.dihedral(k)
    if k >= 4 and involutions == 2 ** (k - 2) + 1:
        return RoquetteType.semidihedral(k)
    return None


def coset_order_counts(g: FiniteGroup, top: np.ndarray, bottom: Subgroup) -> Counter:
    """Element-order counts of top/bottom, computed on cosets inside g."""
    inside = bottom.flags
    y = np.asarray(top)
    orders = np.ones(y.shape[0], dtype=np.int64)
    active = ~inside[y]
    while active.any():
        orders[active] *= g.prime
        y = g.pth_power[y]
        active = ~inside[y]
    values, freq = np.unique(orders, return_counts=True)
    return Counter({int(v): int(f) // bottom.order for v, f in zip(values, freq)})


def section_type(g: FiniteGroup, top: Subgroup, bottom: Subgroup) -> RoquetteType | None:
    """Roquette type of top/bottom (bottom normal in top), or None."""
    k = prime_power_log(top.order // bottom.order, g.prime)
    return _type_from_order_counts(g.prime, k, coset_order_counts(g, top.indices, bottom))


def roquette_type(g: FiniteGroup, *, method: str = "definition") -> RoquetteType | None:
    """Roquette type of g, or None when g is not Roquette.

    method="definition" checks every normal abelian subgroup for cyclicity
    before classifying; method="orders" classifies from element orders alone.
    """
    counts = Counter(int(x) for x in g.element_orders)
    if method == "orders":
        return _type_from_order_counts(g.prime, g.log_order, counts)
    if method != "definition":
        raise InvalidParameter(f"unknown method {method!r}")
    for s in all_subgroups(g):
        if is_normal(g, s) and is_abelian_subgroup(g, s) and not is_cyclic_subgroup(g, s):
            return None
    if g.is_abelian:
        return RoquetteType.cyclic(g.prime, g.log_order)
    k = g.log_order
    involutions = counts.get(2, 0)
    if involutions == 1:
        return RoquetteType.quaternion(k)
    if involutions == 2 ** (k - 1) + 1:
        return RoquetteType.dihedral(k)
    if involutions == 2 ** (k - 2) + 1:
        return RoquetteType.semidihedral(k)
    raise AssertionError("normal rank one group outside the known classification")


# Fingerprints and isomorphisms -----------------------------------------


class Fingerprint(NamedTuple):
    order: int
    exponent: int
    order_histogram: tuple[tuple[int, int], ...]
    center_order: int
    abelianization: tuple[int, ...]


def derived_subgroup(g: FiniteGroup) -> Subgroup:
    t, inv = g.table, g.inverse
    ar = np.arange(g.order)
    comm = t[t[inv[:, None], inv[None, :]], t[ar[:, None], ar[None, :]]]
    return g.generate(np.unique(comm).tolist())


def abelian_invariants_from_counts(p: int, counts: Counter) -> tuple[int, ...]:
    """Cyclic factor orders of an abelian p-group from its element-order counts."""
    total = sum(counts.values())
    logs = [0]
    k = 1
    while p ** logs[-1] < total:
        omega = sum(c for o, c in counts.items() if o <= p ** k)
        logs.append(prime_power_log(omega, p))
        k += 1
    at_least = [logs[i] - logs[i - 1] for i in range(1, len(logs))]
    factors = []
    for i, cnt in enumerate(at_least):
        nxt = at_least[i + 1] if i + 1 < len(at_least) else 0
        factors += [p ** (i + 1)] * (cnt - nxt)
    return tuple(sorted(factors, reverse=True))


def fingerprint(g: FiniteGroup) -> Fingerprint:
    hist = Counter(int(x) for x in g.element_orders)
    d = derived_subgroup(g)
    ab = coset_order_counts(g, np.arange(g.order), d)
    return Fingerprint(g.order, g.exponent, tuple(sorted(hist.items())), center(g).order,
                       abelian_invariants_from_counts(g.prime, ab))


def isomorphisms(g: FiniteGroup, h: FiniteGroup) -> list[tuple[int, ...]]:
    """All isomorphisms g -> h as image tuples (brute force over generator images)."""
    if g.order != h.order or fingerprint(g) != fingerprint(h):
        return []
    gens = list(g.generators)
    # Express every element as a word: parent pointer over the Cayley graph.
    word_parent = {0: None}
    order_queue = [0]
    for x in order_queue:
        for i, s in enumerate(gens):
            y = int(g.table[x, s])
            if y not in word_parent:
                word_parent[y] = (x, i)
                order_queue.append(y)
    candidates = [np.flatnonzero(h.element_orders == g.element_orders[s]) for s in gens]
    results = []

    def extend(images):
        phi = np.full(g.order, -1, dtype=np.int64)
        phi[0] = 0
        for y in order_queue[1:]:
            x, i = word_parent[y]
            phi[y] = h.table[phi[x], images[i]]
        if len(set(phi.tolist())) != g.order:
            return None
        if not np.array_equal(phi[g.table], h.table[phi[:, None], phi[None, :]]):
            return None
        return tuple(int(v) for v in phi)

    def search(prefix):
        if len(prefix) == len(gens):
            phi = extend(prefix)
            if phi is not None:
                results.append(phi)
            return
        for c in candidates[len(prefix)]:
            search(prefix + [int(c)])

    search([])
    return results


def subgroup_as_group(g: FiniteGroup, s: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """s as a standalone group, with the embedding of its elements into g."""
    idx = s.indices
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[idx] = np.arange(idx.size)
    table = pos[g.table[np.ix_(idx, idx)]]
    return FiniteGroup(table, g.prime, family_tag=f"sub{s.order}", check=False), idx


def roquette_group(t: RoquetteType, *, max_order: int | None = None) -> FiniteGroup:
    """The concrete group of a Roquette type."""
    if t.is_trivial:
        return trivial_group(t.p)
    builders = {"C": lambda: cyclic_group(t.p, t.m, max_order=max_order),
                "D": lambda: dihedral_group(t.m, max_order=max_order),
                "Q": lambda: quaternion_group(t.m, max_order=max_order),
                "SD": lambda: semidihedral_group(t.m, max_order=max_order)}
    return builders[t.kind]()
