"""A symbolic calculator for the Grothendieck ring of compact semi-algebraic sets.

Atoms are formal classes ``[K]`` with a dimension.  Ring elements are
integer combinations of monomials (multisets of atoms); the empty
monomial is ``1 = [I]`` and the empty sum is ``0 = [∅]``.  Relations are
stored as oriented rewrite rules ``atom -> expression``:

========== ============================ =====================
kind       declared as                  dimension constraint
========== ============================ =====================
scissors   ``K = K1 + K2 + ...``        all equal
equiv      ``K = L``                    equal
product    ``P = K * L * ...``          dim P = sum of dims
flatten    ``C = K``  (C = K × I^n)     dim C > dim K
fibration  ``E = F * B``                dim E = dim F + dim B
========== ============================ =====================

Rewriting is not completed to a confluent system, so two expressions with
different normal forms are reported as "not joined", never as unequal.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .errors import (DimensionMismatch, DuplicateRule, InconsistentAssignment,
                     NonTermination, ParseError, UnassignedAtom)
from .exact_geom import Rational, as_rational, format_rational

UNIT = "I"
DEFAULT_BUDGET = 10_000

Monomial = Tuple[str, ...]


class RingExpr:
    """Integer combination of monomials over atom names, in canonical form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        canon: Dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            key = tuple(sorted(a for a in mono if a != UNIT))
            canon[key] = canon.get(key, 0) + int(c)
        self.terms: Dict[Monomial, int] = {m: c for m, c in sorted(canon.items()) if c != 0}

    @classmethod
    def atom(cls, name: str) -> "RingExpr":
        return cls({(name,): 1})

    @classmethod
    def const(cls, n: int) -> "RingExpr":
        return cls({(): n})

    @classmethod
    def zero(cls) -> "RingExpr":
        return cls()

    @classmethod
    def one(cls) -> "RingExpr":
        return cls({(): 1})

    def atoms(self) -> set:
        return {a for mono in self.terms for a in mono}

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return RingExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return RingExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(sorted(m1 + m2))
                out[key] = out.get(key, 0) + c1 * c2
        return RingExpr(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RingExpr.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = RingExpr.const(other)
        return isinstance(other, RingExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for k, (mono, c) in enumerate(self.terms.items()):
            body = "*".join(mono)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not body:
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{mag}*{body}"
            out += (("-" if sign == "-" else "") + piece) if k == 0 else f" {sign} {piece}"
        return out

    def __repr__(self):
        return f"RingExpr({str(self)!r})"


def _lift(x) -> RingExpr:
    if isinstance(x, RingExpr):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return RingExpr.const(x)
    if isinstance(x, str):
        return RingExpr.atom(x)
    raise TypeError(f"cannot use {x!r} in a ring expression")


@dataclass(frozen=True)
class Atom:
    name: str
    dimension: int
    volume: Optional[Union[Rational, float]] = None


@dataclass(frozen=True)
class Rule:
    kind: str
    lhs: str
    rhs: RingExpr

    def __str__(self):
        return f"{self.kind} {self.lhs} = {self.rhs}"


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass
class RelationStore:
    """Atoms plus oriented relations.  Build with the ``declare_*`` methods,
    then call :meth:`freeze` (or just start querying)."""

    atoms: Dict[str, Atom] = field(default_factory=dict)
    rules: List[Rule] = field(default_factory=list)
    frozen: bool = False

    def __post_init__(self):
        if UNIT not in self.atoms:
            self.atoms[UNIT] = Atom(UNIT, 1, Rational(1))

    def freeze(self) -> "RelationStore":
        self.frozen = True
        return self

    def _mutable(self):
        if self.frozen:
            raise RuntimeError("relation store is frozen")

    def declare_atom(self, name: str, dimension: int, volume=None) -> "RelationStore":
        self._mutable()
        if not _NAME_RE.match(name):
            raise ParseError(f"bad atom name {name!r}")
        if name in self.atoms:
            raise DuplicateRule(f"atom {name} already declared")
        if int(dimension) < 1:
            raise DimensionMismatch("atoms have dimension >= 1; points are not classes")
        self.atoms[name] = Atom(name, int(dimension), _volume(volume))
        return self

    def declare_volume(self, name: str, volume) -> "RelationStore":
        self._mutable()
        a = self._get(name)
        if name == UNIT:
            raise DuplicateRule(f"the volume of {UNIT} is fixed at 1")
        self.atoms[name] = Atom(a.name, a.dimension, _volume(volume))
        return self

    def _get(self, name: str) -> Atom:
        try:
            return self.atoms[name]
        except KeyError:
            raise UnassignedAtom(f"unknown atom {name!r}") from None

    def dim(self, name: str) -> int:
        return self._get(name).dimension

    def _add_rule(self, kind: str, lhs: str, rhs: RingExpr) -> "RelationStore":
        self._mutable()
        self._get(lhs)
        if lhs == UNIT:
            raise DuplicateRule(f"{UNIT} is the built-in unit and cannot be rewritten")
        for a in rhs.atoms():
            self._get(a)
        if rhs == RingExpr.atom(lhs):
            raise DuplicateRule(f"{kind} rule {lhs} = {rhs} has identical sides")
        rule = Rule(kind, lhs, rhs)
        if rule in self.rules:
            raise DuplicateRule(f"rule already declared: {rule}")
        self.rules.append(rule)
        return self

    def declare_scissors(self, whole: str, parts: Iterable[str]) -> "RelationStore":
        parts = list(parts)
        d = self.dim(whole)
        bad = [p for p in parts if self.dim(p) != d]
        if bad or len(parts) < 2:
            raise DimensionMismatch(f"scissors pieces of {whole} must be >= 2 atoms of dimension {d}")
        return self._add_rule("scissors", whole, sum((RingExpr.atom(p) for p in parts), RingExpr()))

    def declare_equivalence(self, k: str, image: str) -> "RelationStore":
        if self.dim(k) != self.dim(image):
            raise DimensionMismatch(f"{k} and {image} have different dimensions")
        return self._add_rule("equiv", k, RingExpr.atom(image))

    def declare_product(self, prod: str, factors: Iterable[str]) -> "RelationStore":
        factors = list(factors)
        if self.dim(prod) != sum(self.dim(f) for f in factors):
            raise DimensionMismatch(
                f"dim {prod} = {self.dim(prod)} but factors add up to "
                f"{sum(self.dim(f) for f in factors)}")
        rhs = RingExpr.one()
        for f in factors:
            rhs = rhs * RingExpr.atom(f) if f != UNIT else rhs
        return self._add_rule("product", prod, rhs)

    def declare_flattening(self, cylinder: str, base: str) -> "RelationStore":
        if self.dim(cylinder) <= self.dim(base):
            raise DimensionMismatch(f"{cylinder} must have larger dimension than {base}")
        return self._add_rule("flatten", cylinder, RingExpr.atom(base))

    def declare_fibration(self, total: str, fiber: str, base: str) -> "RelationStore":
        if self.dim(total) != self.dim(fiber) + self.dim(base):
            raise DimensionMismatch(f"dim {total} must equal dim {fiber} + dim {base}")
        return self._add_rule("fibration", total, RingExpr.atom(fiber) * RingExpr.atom(base))

    def rule_for(self, name: str) -> Optional[Rule]:
        """The first declared rule rewriting ``name`` (later ones only constrain volumes)."""
        for r in self.rules:
            if r.lhs == name:
                return r
        return None


def _volume(v):
    if v is None or isinstance(v, float):
        return v
    return as_rational(v)


def normalize(store: RelationStore, e, budget: int = DEFAULT_BUDGET) -> RingExpr:
    """Rewrite every reducible atom until none is left.

    Raises :class:`NonTermination` when the rules cycle or more than
    ``budget`` rewrite steps are needed.
    """
    e = _lift(e)
    for a in e.atoms():
        store._get(a)
    cache: Dict[str, RingExpr] = {}
    steps = [0]

    def atom_nf(name: str, stack: Tuple[str, ...]) -> RingExpr:
        if name in cache:
            return cache[name]
        if name in stack:
            raise NonTermination("rewrite cycle: " + " -> ".join(stack + (name,)))
        rule = store.rule_for(name)
        if rule is None:
            result = RingExpr.atom(name)
        else:
            steps[0] += 1
            if steps[0] > budget:
                raise NonTermination(f"rewrite budget of {budget} steps exceeded")
            result = expr_nf(rule.rhs, stack + (name,))
        cache[name] = result
        return result

    def expr_nf(x: RingExpr, stack) -> RingExpr:
        out = RingExpr()
        for mono, c in x.terms.items():
            term = RingExpr.const(c)
            for a in mono:
                term = term * atom_nf(a, stack)
            out = out + term
        return out

    return expr_nf(e, ())


def joinable(store: RelationStore, e1, e2, budget: int = DEFAULT_BUDGET) -> bool:
    """True when both sides reach the same normal form.  False only means the
    rules could not join them, not that the classes differ."""
    return normalize(store, _lift(e1) - _lift(e2), budget).is_zero()


def _close(a, b) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return math.isclose(float(a), float(b), rel_tol=1e-12, abs_tol=1e-12)
    return a == b


def _evaluate(e: RingExpr, values: Mapping[str, object]):
    """Exact while every volume is rational; floats are contagious."""
    total = Rational(0)
    for mono, c in e.terms.items():
        term = Rational(c)
        for a in mono:
            if a not in values:
                raise UnassignedAtom(f"no volume assigned to {a}")
            v = values[a]
            term = float(term) * v if isinstance(v, float) else term * v
        total = float(total) + term if isinstance(term, float) else total + term
    return total


def vol_eval(store: RelationStore, e, assignment: Optional[Mapping[str, object]] = None,
             budget: int = DEFAULT_BUDGET):
    """Evaluate the volume homomorphism on ``e``.

    Volumes come from ``assignment`` and from volumes declared in the
    store; atoms without either get the volume of their normal form when
    that is determined.  The assignment is first checked against every
    relation whose sides can both be evaluated.
    """
    e = _lift(e)
    values: Dict[str, object] = {UNIT: Rational(1)}
    for name, atom in store.atoms.items():
        if atom.volume is not None:
            values[name] = atom.volume
    for name, v in (assignment or {}).items():
        store._get(name)
        values[name] = _volume(v)

    for name in store.atoms:
        if name not in values:
            try:
                values[name] = _evaluate(normalize(store, RingExpr.atom(name), budget), values)
            except UnassignedAtom:
                pass

    for rule in store.rules:
        if rule.lhs not in values:
            continue
        try:
            rhs_value = _evaluate(rule.rhs, values)
        except UnassignedAtom:
            continue
        if not _close(values[rule.lhs], rhs_value):
            raise InconsistentAssignment(
                f"relation {rule} fails: {_show(values[rule.lhs])} != {_show(rhs_value)}",
                relation=rule)
    return _evaluate(e, values)


def _show(v):
    return f"{v!r}" if isinstance(v, float) else format_rational(v)


# --- expression syntax: integers, atom names, + - *, ^n, parentheses -------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def parse_expr(text: str, line: Optional[int] = None, offset: int = 0) -> RingExpr:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    k = [0]

    def peek():
        return tokens[k[0]]

    def fail(msg):
        raise ParseError(msg, line, offset + peek()[2] + 1)

    def take(kind=None, value=None):
        tok = peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            fail(f"expected {value or kind}, found {tok[1]!r}")
        k[0] += 1
        return tok

    def expr():
        neg = False
        if peek()[:2] == ("op", "-"):
            take()
            neg = True
        out = term()
        out = -out if neg else out
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            t = term()
            out = out + t if op == "+" else out - t
        return out

    def term():
        out = power()
        while peek()[:2] == ("op", "*"):
            take()
            out = out * power()
        return out

    def power():
        base = factor()
        if peek()[:2] == ("op", "^"):
            take()
            base = base ** take("int")[1]
        return base

    def factor():
        tok = peek()
        if tok[0] == "int":
            take()
            return RingExpr.const(tok[1])
        if tok[0] == "name":
            take()
            return RingExpr.atom(tok[1])
        if tok[:2] == ("op", "("):
            take()
            inner = expr()
            take("op", ")")
            return inner
        fail(f"unexpected {tok[1]!r}")

    result = expr()
    if peek()[0] != "end":
        fail(f"unexpected {peek()[1]!r}")
    return result


def parse_relation_script(text: str) -> Tuple[RelationStore, List[RingExpr]]:
    """Parse a relation script; returns the frozen store and any ``query`` lines.

    One declaration per line, ``#`` starts a comment::

        atom K 2 [volume]
        scissors K = K1 + K2
        equiv K = L
        product P = K * L
        flatten C = K
        fibration E = F * B
        volume K = 1/3
        query K + L
    """
    store = RelationStore()
    queries: List[RingExpr] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head, _, rest = line.strip().partition(" ")
        col = raw.index(head) + 1
        try:
            if head == "atom":
                parts = rest.split()
                if len(parts) not in (2, 3):
                    raise ParseError("usage: atom <name> <dimension> [volume]", lineno, col)
                store.declare_atom(parts[0], _int(parts[1], lineno, col),
                                   _rat(parts[2], lineno, col) if len(parts) == 3 else None)
            elif head == "query":
                queries.append(parse_expr(rest, lineno, raw.index(rest)))
            elif head in ("scissors", "equiv", "product", "flatten", "fibration", "volume"):
                lhs, eq, rhs = rest.partition("=")
                lhs = lhs.strip()
                if not eq or not _NAME_RE.match(lhs):
                    raise ParseError(f"usage: {head} <name> = ...", lineno, col)
                rhs = rhs.strip()
                if head == "volume":
                    store.declare_volume(lhs, _rat(rhs, lineno, col))
                    continue
                names = [t for t in re.split(r"\s*[+*]\s*", rhs)]
                if not all(_NAME_RE.match(t) for t in names):
                    raise ParseError(f"right-hand side must list atom names: {rhs!r}", lineno, col)
                if head == "scissors":
                    if "*" in rhs:
                        raise ParseError("scissors pieces are joined with '+'", lineno, col)
                    store.declare_scissors(lhs, names)
                elif head == "equiv":
                    store.declare_equivalence(lhs, _single(names, lineno, col))
                elif head == "flatten":
                    store.declare_flattening(lhs, _single(names, lineno, col))
                elif "+" in rhs:
                    raise ParseError(f"{head} factors are joined with '*'", lineno, col)
                elif head == "product":
                    store.declare_product(lhs, names)
                else:
                    if len(names) != 2:
                        raise ParseError("fibration needs exactly fiber * base", lineno, col)
                    store.declare_fibration(lhs, names[0], names[1])
            else:
                raise ParseError(f"unknown declaration {head!r}", lineno, col)
        except ParseError as exc:
            if exc.line is None:
                raise ParseError(str(exc), lineno, col) from None
            raise
    return store.freeze(), queries


def _single(names, line, col):
    if len(names) != 1:
        raise ParseError("expected a single atom on the right-hand side", line, col)
    return names[0]


def _int(text, line, col):
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, found {text!r}", line, col) from None


def _rat(text, line, col):
    from .exact_geom import parse_rational
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise ParseError(str(exc), line, col) from None
