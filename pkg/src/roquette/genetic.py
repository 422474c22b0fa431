"""Genetic subgroups, the relation ⊑ and genetic bases of concrete groups.

This is the brute-force side of the package: everything here is computed
from the multiplication table alone and is used to validate the symbolic
edge algebra.

Conventions: Q^g = g^-1 Q g and ^gR = g R g^-1.  For subgroups Q, R of P,
Q ⊑ R when some g has Q^g ∩ Z_P(R) <= R and ^gR ∩ Z_P(Q) <= Q.  Both
conditions depend on g only through Q^g (conjugate the second by g), so
searching the distinct conjugates of Q is the same as searching all of P.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .edges import EdgeSum
from .errors import InvalidParameter, NotRoquetteError
from .groups import (FiniteGroup, Section, Subgroup, all_subgroups, center,
                     check_order, conjugacy_classes_of_subgroups, conjugates,
                     direct_product, normal_subgroups, normalizer,
                     normalizer_flags, quotient_group, roquette_type,
                     section_type, subgroup_as_group, axial_subgroups,
                     fingerprint, isomorphisms)
from .rtype import RoquetteType, prime_power_log


@dataclass(frozen=True)
class GeneticRecord:
    s: Subgroup
    normalizer: Subgroup
    zhat: Subgroup
    quotient_type: RoquetteType
    central_trivial: bool


@dataclass
class GeneticBasis:
    """One genetic subgroup per ⊑-class, in canonical order.

    class_sizes[i] counts the genetic subgroups in the class of records[i];
    it is None when the basis was not built from a full enumeration.
    """

    parent: FiniteGroup
    records: list[GeneticRecord]
    class_sizes: list[int] | None = None

    def __len__(self) -> int:
        return len(self.records)

    def histogram(self) -> Counter:
        return Counter(r.quotient_type for r in self.records)

    @property
    def unique(self) -> bool | None:
        """True when every class holds a single genetic subgroup."""
        if self.class_sizes is None:
            return None
        return all(k == 1 for k in self.class_sizes)

    def edges(self) -> EdgeSum:
        return EdgeSum(self.parent.prime, self.histogram())

    def faithful_edges(self) -> EdgeSum:
        return EdgeSum(self.parent.prime,
                       Counter(r.quotient_type for r in self.records if r.central_trivial))


@dataclass
class GeneticCheck:
    genetic: bool
    quotient_type: RoquetteType | None

    def __bool__(self) -> bool:
        return self.genetic


def _check_sub(p: FiniteGroup, *subs: Subgroup) -> None:
    for s in subs:
        if s.parent is not p:
            raise InvalidParameter("subgroup belongs to a different group")


# Z_P(Q), expansivity, genetic subgroups -----------------------------------


def z_upper(p: FiniteGroup, q: Subgroup) -> Subgroup:
    """Z_P(Q): the preimage in N_P(Q) of the center of N_P(Q)/Q."""
    _check_sub(p, q)
    n = normalizer(p, q)
    ngroup, embed = subgroup_as_group(p, n)
    pos = {int(x): i for i, x in enumerate(embed)}
    q_in_n = ngroup.subgroup([pos[int(x)] for x in q.indices])
    quotient, proj = quotient_group(ngroup, q_in_n)
    zq = center(quotient)
    lifted = [int(embed[i]) for i in range(ngroup.order) if int(proj[i]) in zq]
    return p.subgroup(lifted)


def _z_upper_fast(p: FiniteGroup, q: Subgroup, nflags: np.ndarray) -> Subgroup:
    """Z_P(Q) as the x in N_P(Q) with [x, y] in Q for every y in N_P(Q)."""
    nidx = np.flatnonzero(nflags)
    t, inv = p.table, p.inverse
    comm = t[t[inv[nidx][:, None], inv[nidx][None, :]], t[np.ix_(nidx, nidx)]]
    keep = q.flags[comm].all(axis=1)
    return p.subgroup_from_indices(nidx[keep])


def _expansive_over(q: Subgroup, zhat: Subgroup, conj_masks) -> bool:
    qm, zm = q.mask, zhat.mask
    for cm in conj_masks:
        if cm != qm and (cm & zm) & ~qm == 0:
            return False
    return True


def is_expansive(p: FiniteGroup, q: Subgroup, *, method: str = "cosets") -> bool:
    """Q^g ∩ Z_P(Q) <= Q forces Q^g = Q, for every g in P.

    method="cosets" runs over the distinct conjugates (one per coset of the
    normalizer); method="all" runs over every element of P.
    """
    _check_sub(p, q)
    zhat = z_upper(p, q)
    if method == "all":
        masks = (q.conjugate(g).mask for g in range(p.order))
    elif method == "cosets":
        masks = (c.mask for c, _ in conjugates(p, q))
    else:
        raise InvalidParameter(f"unknown method {method!r}")
    return _expansive_over(q, zhat, masks)


def is_genetic(p: FiniteGroup, q: Subgroup) -> GeneticCheck:
    """Expansive with Roquette quotient N_P(Q)/Q; the type is reported on success."""
    _check_sub(p, q)
    nflags = normalizer_flags(p, q)
    t = section_type(p, p.subgroup_from_flags(nflags), q)
    if t is None:
        return GeneticCheck(False, None)
    zhat = _z_upper_fast(p, q, nflags)
    if not _expansive_over(q, zhat, (c.mask for c, _ in conjugates(p, q))):
        return GeneticCheck(False, None)
    return GeneticCheck(True, t)


def bizlie_related(p: FiniteGroup, q: Subgroup, r: Subgroup, *, method: str = "all") -> bool:
    """Q ⊑ R.  method="all" tries every g in P; "conjugates" tries each Q^g once."""
    _check_sub(p, q, r)
    zq, zr = z_upper(p, q), z_upper(p, r)
    rm, qm = r.mask, q.mask
    if method == "all":
        for g in range(p.order):
            qg = q.conjugate(g).mask
            gr = r.conjugate(int(p.inverse[g])).mask
            if qg & zr.mask & ~rm == 0 and gr & zq.mask & ~qm == 0:
                return True
        return False
    if method != "conjugates":
        raise InvalidParameter(f"unknown method {method!r}")
    for c, g in conjugates(p, q):
        zc = zq.conjugate(g).mask
        if c.mask & zr.mask & ~rm == 0 and rm & zc & ~c.mask == 0:
            return True
    return False


def bizlie_matrix(p: FiniteGroup, subgroups: list[Subgroup]) -> np.ndarray:
    """Boolean matrix M[i, j] = subgroups[i] ⊑ subgroups[j]."""
    _check_sub(p, *subgroups)
    zs = [z_upper(p, s).mask for s in subgroups]
    conj = [[(c.mask, z_upper(p, s).conjugate(g).mask) for c, g in conjugates(p, s)]
            for s in subgroups]
    n = len(subgroups)
    out = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            rm, zr = subgroups[j].mask, zs[j]
            out[i, j] = any(cm & zr & ~rm == 0 and rm & zc & ~cm == 0 for cm, zc in conj[i])
    return out


def _product_set(p: FiniteGroup, a: Subgroup, b: Subgroup) -> int:
    flags = np.zeros(p.order, dtype=bool)
    flags[p.table[np.ix_(a.indices, b.indices)].ravel()] = True
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def sections_linked(g: FiniteGroup, a: Section, b: Section, *, modulo: bool = False) -> bool:
    """S(T∩Y) = T, X(T∩Y) = Y and T∩X = S∩Y for a = (T,S), b = (Y,X).

    With modulo=True, b may be replaced by any of its conjugates.
    """
    if not modulo:
        t, s, y, x = a.top, a.bottom, b.top, b.bottom
        meet = t & y
        return (_product_set(g, s, meet) == t.mask
                and _product_set(g, x, meet) == y.mask
                and (t & x).mask == (s & y).mask)
    seen = set()
    for h in range(g.order):
        c = b.conjugate(h)
        key = (c.top.mask, c.bottom.mask)
        if key in seen:
            continue
        seen.add(key)
        if sections_linked(g, a, c):
            return True
    return False


# Genetic bases ------------------------------------------------------------


@dataclass
class _GeneticClass:
    """A conjugacy class of genetic subgroups with the data ⊑ needs."""

    rep: Subgroup
    zhat: Subgroup
    quotient_type: RoquetteType
    conj: list = field(default_factory=list)   # (subgroup, conjugated zhat mask)

    def related_to(self, other: "_GeneticClass") -> bool:
        rm, zr = other.rep.mask, other.zhat.mask
        for c, zc in self.conj:
            cm = c.mask
            if cm & zr & ~rm == 0 and rm & zc & ~cm == 0:
                return True
        return False


def _genetic_class(p: FiniteGroup, s: Subgroup) -> _GeneticClass | None:
    nflags = normalizer_flags(p, s)
    t = section_type(p, p.subgroup_from_flags(nflags), s)
    if t is None:
        return None
    zhat = _z_upper_fast(p, s, nflags)
    conj = conjugates(p, s)
    if not _expansive_over(s, zhat, (c.mask for c, _ in conj)):
        return None
    data = [(c, zhat.conjugate(g).mask) for c, g in conj]
    return _GeneticClass(s, zhat, t, data)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        a, b = self.find(i), self.find(j)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _partition(classes: list[_GeneticClass]) -> list[list[int]]:
    """Group indices of genetic classes into ⊑-classes.

    ⊑ only relates subgroups with isomorphic quotients, so only classes with
    the same quotient type are compared.
    """
    uf = _UnionFind(len(classes))
    by_type: dict[RoquetteType, list[int]] = {}
    for i, c in enumerate(classes):
        by_type.setdefault(c.quotient_type, []).append(i)
    for members in by_type.values():
        for a, i in enumerate(members):
            for j in members[a + 1:]:
                if uf.find(i) != uf.find(j) and classes[i].related_to(classes[j]):
                    uf.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(len(classes)):
        groups.setdefault(uf.find(i), []).append(i)
    return list(groups.values())


def make_record(p: FiniteGroup, s: Subgroup, quotient_type: RoquetteType | None = None) -> GeneticRecord:
    nflags = normalizer_flags(p, s)
    n = p.subgroup_from_flags(nflags)
    if quotient_type is None:
        quotient_type = section_type(p, n, s)
        if quotient_type is None:
            raise NotRoquetteError("subgroup has a non-Roquette normalizer quotient")
    zhat = _z_upper_fast(p, s, nflags)
    central_trivial = (s.mask & center(p).mask) == 1
    return GeneticRecord(s, n, zhat, quotient_type, central_trivial)


def genetic_classes(p: FiniteGroup, *, max_order: int | None = None) -> list[list[Subgroup]]:
    """All genetic subgroups of p grouped into ⊑-classes (each sorted canonically)."""
    check_order(p.order, max_order)
    classes = []
    for cls in conjugacy_classes_of_subgroups(p, all_subgroups(p, max_order=max_order)):
        gc = _genetic_class(p, cls[0])
        if gc is not None:
            classes.append(gc)
    result = []
    for part in _partition(classes):
        subs = [c for i in part for c, _ in classes[i].conj]
        result.append(sorted(subs, key=Subgroup.sort_key))
    result.sort(key=lambda subs: subs[0].sort_key())
    return result


def genetic_classes_exhaustive(p: FiniteGroup) -> list[list[Subgroup]]:
    """Reference path: pairwise bizlie_related over every g, no shortcuts."""
    genetic = [s for s in all_subgroups(p) if is_genetic(p, s)]
    uf = _UnionFind(len(genetic))
    for i in range(len(genetic)):
        for j in range(i + 1, len(genetic)):
            if uf.find(i) != uf.find(j) and bizlie_related(p, genetic[i], genetic[j], method="all"):
                uf.union(i, j)
    groups: dict[int, list[Subgroup]] = {}
    for i, s in enumerate(genetic):
        groups.setdefault(uf.find(i), []).append(s)
    result = [sorted(v, key=Subgroup.sort_key) for v in groups.values()]
    result.sort(key=lambda subs: subs[0].sort_key())
    return result


def genetic_basis(p: FiniteGroup, *, max_order: int | None = None,
                  exhaustive: bool = False) -> GeneticBasis:
    """Canonically least genetic subgroup of every ⊑-class, annotated."""
    check_order(p.order, max_order)
    key = ("basis", exhaustive)
    if key in p._cache:
        return p._cache[key]
    parts = genetic_classes_exhaustive(p) if exhaustive else genetic_classes(p, max_order=max_order)
    records = [make_record(p, subs[0]) for subs in parts]
    basis = GeneticBasis(p, records, [len(subs) for subs in parts])
    p._cache[key] = basis
    return basis


def edge_decomposition_bruteforce(p: FiniteGroup, *, max_order: int | None = None) -> EdgeSum:
    """Raw multiset of N_P(S)/S over a genetic basis."""
    return genetic_basis(p, max_order=max_order).edges()


def faithful_edges_bruteforce(p: FiniteGroup, *, max_order: int | None = None) -> EdgeSum:
    """Raw multiset of N_P(S)/S over basis members meeting Z(P) trivially."""
    return genetic_basis(p, max_order=max_order).faithful_edges()


# Centrally diagonal genetic subgroups of a product of Roquette groups ------


@dataclass
class DiagonalGenetics:
    product: FiniteGroup
    subgroups: list[Subgroup]
    quotient_types: set
    classes: list[list[Subgroup]]

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def quotient_type(self) -> RoquetteType:
        if len(self.quotient_types) != 1:
            raise AssertionError(f"quotient types are not unique: {self.quotient_types}")
        return next(iter(self.quotient_types))

    def representatives(self) -> list[Subgroup]:
        return [cls[0] for cls in self.classes]


def _is_centrally_diagonal(prod: FiniteGroup, left: FiniteGroup, right: FiniteGroup, s: Subgroup) -> bool:
    nr = right.order
    zl = center(left).mask
    zr = center(right).mask
    for x in s.indices:
        a, b = divmod(int(x), nr)
        if x == 0:
            continue
        if b == 0 and (zl >> a) & 1:
            return False
        if a == 0 and (zr >> b) & 1:
            return False
    return True


def _diagonal_candidates(p: FiniteGroup, q: FiniteGroup, prod: FiniteGroup) -> list[Subgroup]:
    m = min(p.exponent, q.exponent)
    nq = q.order
    found: dict[int, Subgroup] = {}
    hs = [h for h in axial_subgroups(p) if h.order == m]
    ks = [k for k in axial_subgroups(q) if k.order == m]
    for h in hs:
        hgen = next(int(x) for x in h.indices if p.element_orders[x] == m)
        for k in ks:
            for kgen in k.indices:
                if q.element_orders[kgen] != m:
                    continue
                elems = [p.power(hgen, i) * nq + q.power(int(kgen), i) for i in range(m)]
                s = prod.subgroup_from_indices(elems)
                found.setdefault(s.mask, s)
    q8 = RoquetteType.quaternion(3)
    if roquette_type(p, method="orders") == q8 and roquette_type(q, method="orders") == q8:
        for phi in isomorphisms(p, q):
            s = prod.subgroup_from_indices([x * nq + phi[x] for x in range(p.order)])
            found.setdefault(s.mask, s)
    return sorted(found.values(), key=Subgroup.sort_key)


def centrally_diagonal_genetics(p: FiniteGroup, q: FiniteGroup, *, method: str = "constructive",
                                max_order: int | None = None) -> DiagonalGenetics:
    """Genetic L <= p x q with L ∩ (Z(p) x 1) = L ∩ (1 x Z(q)) = 1, and their ⊑-classes.

    method="constructive" builds the candidates from axial subgroups and
    their isomorphisms; method="exhaustive" filters all subgroups of p x q.
    """
    for g in (p, q):
        if roquette_type(g) is None:
            raise NotRoquetteError(f"{g!r} is not a Roquette group")
    prod = direct_product(p, q, max_order=max_order, check=False)
    if method == "constructive":
        candidates = _diagonal_candidates(p, q, prod)
    elif method == "exhaustive":
        candidates = [s for s in all_subgroups(prod, max_order=max_order)
                      if _is_centrally_diagonal(prod, p, q, s)]
    else:
        raise InvalidParameter(f"unknown method {method!r}")
    classes: list[_GeneticClass] = []
    seen = set()
    for s in candidates:
        if s.mask in seen or not _is_centrally_diagonal(prod, p, q, s):
            continue
        gc = _genetic_class(prod, s)
        if gc is None:
            continue
        # Conjugates of a centrally diagonal subgroup are centrally diagonal.
        seen.update(c.mask for c, _ in gc.conj)
        classes.append(gc)
    parts = []
    for part in _partition(classes):
        subs = sorted((c for i in part for c, _ in classes[i].conj), key=Subgroup.sort_key)
        parts.append(subs)
    parts.sort(key=lambda subs: subs[0].sort_key())
    subgroups = sorted((s for part in parts for s in part), key=Subgroup.sort_key)
    types = {c.quotient_type for c in classes}
    return DiagonalGenetics(prod, subgroups, types, parts)


def product_genetic_basis(p: FiniteGroup, q: FiniteGroup, bp: GeneticBasis | None = None,
                          bq: GeneticBasis | None = None, *,
                          max_order: int | None = None) -> GeneticBasis:
    """A genetic basis of p x q lifted from pairs of basis members of p and q.

    For S in bp and T in bq, each ⊑-class of centrally diagonal genetic
    subgroups of N_P(S)/S x N_Q(T)/T contributes the preimage of one
    representative in N_P(S) x N_Q(T).
    """
    bp = bp or genetic_basis(p)
    bq = bq or genetic_basis(q)
    prod = direct_product(p, q, max_order=max_order, check=False)
    nq = q.order
    records = []
    for rs in bp.records:
        left, proj_l, embed_l = _normalizer_quotient(p, rs)
        for rt in bq.records:
            right, proj_r, embed_r = _normalizer_quotient(q, rt)
            diag = centrally_diagonal_genetics(left, right, max_order=order_bound_for(p, q, max_order))
            nr = right.order
            for rep in diag.representatives():
                wanted = rep.flags
                elems = [int(x) * nq + int(y)
                         for i, x in enumerate(embed_l) for j, y in enumerate(embed_r)
                         if wanted[int(proj_l[i]) * nr + int(proj_r[j])]]
                s = prod.subgroup_from_indices(elems)
                records.append(make_record(prod, s))
    records.sort(key=lambda r: r.s.sort_key())
    return GeneticBasis(prod, records)


def order_bound_for(p: FiniteGroup, q: FiniteGroup, max_order: int | None) -> int | None:
    return max(max_order or 0, p.order * q.order) or None


def _normalizer_quotient(p: FiniteGroup, record: GeneticRecord):
    ngroup, embed = subgroup_as_group(p, record.normalizer)
    pos = np.full(p.order, -1, dtype=np.int64)
    pos[embed] = np.arange(embed.size)
    s_in_n = ngroup.subgroup_from_indices(pos[record.s.indices])
    quotient, proj = quotient_group(ngroup, s_in_n)
    return quotient, proj, embed


def quotient_edge_identity(p: FiniteGroup) -> tuple[EdgeSum, EdgeSum]:
    """Both sides of P = sum over normal N of the faithful edges of P/N."""
    total: Counter = Counter()
    # Abelian quotients are determined by their element-order counts, so
    # their faithful edges are computed once per isomorphism type.
    seen: dict = {}
    for n in normal_subgroups(p):
        quotient, _ = quotient_group(p, n)
        key = fingerprint(quotient) if quotient.is_abelian else None
        if key is None or key not in seen:
            edges = dict(faithful_edges_bruteforce(quotient).items())
            if key is not None:
                seen[key] = edges
        else:
            edges = seen[key]
        total.update(edges)
    return edge_decomposition_bruteforce(p), EdgeSum(p.prime, total)
