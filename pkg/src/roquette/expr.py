"""A small expression language for groups built from the families.

    expr   := term (('x' | '*') term)*          left-associative
    term   := atom suffix*
    suffix := '^' int | '^*' int | '.modZ'
    atom   := 'C'int | 'D'int | 'Q'int | 'SD'int | 'E'int','int
            | 'X+'int | 'X-'int | '1' | '(' expr ')'

Numbers in atoms are group orders (D16 is dihedral of order 16), except
E{p},{k} (elementary abelian of rank k) and X±{p} (extraspecial of order p^3).
Whitespace is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import groups as G
from .errors import (CentralProductUndefined, NoCentralSubgroup, ParseError,
                     SemanticError)
from .rtype import is_prime, prime_power_log


class GroupExpr:
    prime: int

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Atom(GroupExpr):
    family: str          # "1", "C", "D", "Q", "SD", "E", "X+", "X-"
    params: tuple
    prime: int


@dataclass(frozen=True)
class Direct(GroupExpr):
    left: GroupExpr
    right: GroupExpr
    prime: int


@dataclass(frozen=True)
class Central(GroupExpr):
    left: GroupExpr
    right: GroupExpr
    prime: int


@dataclass(frozen=True)
class Power(GroupExpr):
    base: GroupExpr
    n: int
    prime: int


@dataclass(frozen=True)
class CentralPower(GroupExpr):
    base: GroupExpr
    n: int
    prime: int


@dataclass(frozen=True)
class ModZ(GroupExpr):
    base: GroupExpr
    prime: int


def render(e: GroupExpr) -> str:
    if isinstance(e, Atom):
        if e.family == "1":
            return "1"
        if e.family == "E":
            return f"E{e.params[0]},{e.params[1]}"
        if e.family in ("X+", "X-"):
            return f"{e.family}{e.params[0]}"
        return f"{e.family}{e.params[0]}"
    if isinstance(e, Direct):
        return f"({render(e.left)} x {render(e.right)})"
    if isinstance(e, Central):
        return f"({render(e.left)} * {render(e.right)})"
    if isinstance(e, Power):
        return f"{render(e.base)}^{e.n}"
    if isinstance(e, CentralPower):
        return f"{render(e.base)}^*{e.n}"
    if isinstance(e, ModZ):
        return f"{render(e.base)}.modZ"
    raise TypeError(e)


# Parsing ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, default_prime: int):
        self.chars = [(c, i) for i, c in enumerate(text) if not c.isspace()]
        self.pos = 0
        self.default_prime = default_prime
        self.primes: dict[int, int] = {}   # prime -> position of first atom using it

    def where(self) -> int:
        if self.pos < len(self.chars):
            return self.chars[self.pos][1]
        return self.chars[-1][1] + 1 if self.chars else 0

    def peek(self, k: int = 0) -> str:
        i = self.pos + k
        return self.chars[i][0] if i < len(self.chars) else ""

    def take(self, literal: str) -> bool:
        if all(self.peek(k) == ch for k, ch in enumerate(literal)):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str) -> None:
        if not self.take(literal):
            raise ParseError(f"expected {literal!r}", self.where())

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", self.where())
        return int("".join(c for c, _ in self.chars[start:self.pos]))

    def parse(self):
        if not self.chars:
            raise ParseError("empty expression", 0)
        tree = self.expr()
        if self.pos != len(self.chars):
            raise ParseError(f"unexpected {self.peek()!r}", self.where())
        return tree

    def expr(self):
        node = self.term()
        while True:
            if self.take("x"):
                node = ("x", node, self.term())
            elif self.take("*"):
                node = ("*", node, self.term())
            else:
                return node

    def term(self):
        node = self.atom()
        while True:
            if self.take("^*"):
                node = ("^*", node, self.integer())
            elif self.take("^"):
                node = ("^", node, self.integer())
            elif self.take(".modZ"):
                node = ("modZ", node)
            else:
                return node

    def note_prime(self, p: int, at: int) -> None:
        self.primes.setdefault(p, at)

    def atom(self):
        at = self.where()
        if self.take("("):
            node = self.expr()
            self.expect(")")
            return node
        if self.take("SD"):
            n = self.integer()
            m = prime_power_log(n, 2)
            if m is None or m < 4:
                raise SemanticError(f"SD{n}: semidihedral groups have order 2^m with m >= 4")
            self.note_prime(2, at)
            return ("atom", "SD", (n,), at)
        for fam, least in (("D", 3), ("Q", 3)):
            if self.take(fam):
                n = self.integer()
                m = prime_power_log(n, 2)
                if m is None or m < least:
                    raise SemanticError(f"{fam}{n}: needs order 2^m with m >= {least}")
                self.note_prime(2, at)
                return ("atom", fam, (n,), at)
        if self.take("C"):
            n = self.integer()
            p = _prime_of(n)
            if p is None:
                raise SemanticError(f"C{n}: the order must be a prime power")
            if n > 1:
                self.note_prime(p, at)
            return ("atom", "C", (n,), at)
        if self.take("E"):
            p = self.integer()
            self.expect(",")
            k = self.integer()
            if not is_prime(p):
                raise SemanticError(f"E{p},{k}: {p} is not a prime")
            self.note_prime(p, at)
            return ("atom", "E", (p, k), at)
        for sign in ("+", "-"):
            if self.take("X" + sign):
                p = self.integer()
                if not is_prime(p):
                    raise SemanticError(f"X{sign}{p}: {p} is not a prime")
                self.note_prime(p, at)
                return ("atom", "X" + sign, (p,), at)
        if self.take("1"):
            return ("atom", "1", (), at)
        raise ParseError(f"unexpected {self.peek()!r}" if self.peek() else "unexpected end", at)


def _prime_of(n: int) -> int | None:
    if n == 1:
        return 1
    p = next(d for d in range(2, n + 1) if n % d == 0)
    return p if prime_power_log(n, p) is not None else None


def parse_expr(text: str, *, prime: int | None = None) -> GroupExpr:
    """Parse a group expression; all atoms must share one prime."""
    parser = _Parser(text, prime or 2)
    tree = parser.parse()
    primes = dict(parser.primes)
    if prime is not None:
        primes.setdefault(prime, 0)
    if len(primes) > 1:
        raise SemanticError(f"atoms mix the primes {sorted(primes)}")
    p = next(iter(primes), parser.default_prime)
    return _to_ast(tree, p)


def _to_ast(node, p: int) -> GroupExpr:
    kind = node[0]
    if kind == "atom":
        fam, params = node[1], node[2]
        if fam == "C" and params[0] == 1:
            return Atom("1", (), p)
        return Atom(fam, params, p)
    if kind == "x":
        return Direct(_to_ast(node[1], p), _to_ast(node[2], p), p)
    if kind == "*":
        return Central(_to_ast(node[1], p), _to_ast(node[2], p), p)
    if kind == "^":
        return Power(_to_ast(node[1], p), node[2], p)
    if kind == "^*":
        if node[2] < 1:
            raise SemanticError("a central power needs at least one factor")
        return CentralPower(_to_ast(node[1], p), node[2], p)
    if kind == "modZ":
        return ModZ(_to_ast(node[1], p), p)
    raise AssertionError(node)


def as_expr(obj, prime: int | None = None) -> GroupExpr:
    if isinstance(obj, GroupExpr):
        return obj
    return parse_expr(str(obj), prime=prime)


# Concrete groups ----------------------------------------------------------


def concrete_order(e: GroupExpr) -> int:
    """Order of the group an expression denotes, without building it."""
    p = e.prime
    if isinstance(e, Atom):
        if e.family == "1":
            return 1
        if e.family == "E":
            return e.params[0] ** e.params[1]
        if e.family in ("X+", "X-"):
            return e.params[0] ** 3
        return e.params[0]
    if isinstance(e, Direct):
        return concrete_order(e.left) * concrete_order(e.right)
    if isinstance(e, Central):
        return concrete_order(e.left) * concrete_order(e.right) // p
    if isinstance(e, Power):
        return concrete_order(e.base) ** e.n
    if isinstance(e, CentralPower):
        b = concrete_order(e.base)
        return b ** e.n // p ** (e.n - 1)
    if isinstance(e, ModZ):
        return concrete_order(e.base) // p
    raise TypeError(e)


def unique_central_subgroup(g: G.FiniteGroup) -> G.Subgroup:
    subs = G.central_order_p_subgroups(g) if g.order > 1 else []
    if len(subs) != 1:
        raise NoCentralSubgroup(
            f"{g.family_tag or 'group'} has {len(subs)} central subgroups of order p, not one")
    return subs[0]


def central_product_groups(g: G.FiniteGroup, h: G.FiniteGroup, *, max_order: int | None = None):
    """All gluings of g and h along their unique central subgroups of order p."""
    zg, zh = unique_central_subgroup(g), unique_central_subgroup(h)
    return [(glue, grp) for glue, grp in G.central_products(g, h, max_order=max_order)
            if glue.zp == zg and glue.zq == zh]


def central_product(g: G.FiniteGroup, h: G.FiniteGroup, *, max_order: int | None = None) -> G.FiniteGroup:
    """The central product along the unique central subgroups.

    Over odd primes there are p - 1 gluings; one is returned only when all
    results share a fingerprint, otherwise the choice would be arbitrary.
    """
    results = central_product_groups(g, h, max_order=max_order)
    prints = {G.fingerprint(grp) for _, grp in results}
    if len(prints) > 1:
        raise CentralProductUndefined(
            f"the {len(results)} gluings give groups with {len(prints)} distinct fingerprints")
    return results[0][1]


def build(e, *, max_order: int | None = None) -> G.FiniteGroup:
    """The concrete group an expression denotes."""
    e = as_expr(e)
    G.check_order(concrete_order(e), max_order)
    return _build(e, max_order)


def _build(e: GroupExpr, max_order) -> G.FiniteGroup:
    p = e.prime
    if isinstance(e, Atom):
        fam, params = e.family, e.params
        if fam == "1":
            return G.trivial_group(p)
        if fam == "C":
            return G.cyclic_group(p, prime_power_log(params[0], p), max_order=max_order)
        if fam == "E":
            return G.elementary_abelian_group(params[0], params[1], max_order=max_order)
        if fam in ("X+", "X-"):
            return G.extraspecial_group(params[0], fam[1], max_order=max_order)
        m = prime_power_log(params[0], 2)
        return G.make_family({"D": "Dihedral", "Q": "Quaternion", "SD": "Semidihedral"}[fam], m,
                             max_order=max_order)
    if isinstance(e, Direct):
        return G.direct_product(_build(e.left, max_order), _build(e.right, max_order),
                                max_order=max_order)
    if isinstance(e, Central):
        return central_product(_build(e.left, max_order), _build(e.right, max_order),
                               max_order=max_order)
    if isinstance(e, Power):
        base = _build(e.base, max_order)
        out = G.trivial_group(p)
        for _ in range(e.n):
            out = G.direct_product(out, base, max_order=max_order) if out.order > 1 else base
        return out
    if isinstance(e, CentralPower):
        base = _build(e.base, max_order)
        out = base
        for _ in range(e.n - 1):
            out = central_product(out, base, max_order=max_order)
        return out
    if isinstance(e, ModZ):
        base = _build(e.base, max_order)
        quotient = G.quotient_group(base, unique_central_subgroup(base)).group
        quotient.family_tag = f"{base.family_tag}/Z"
        return quotient
    raise TypeError(e)
