"""Generic runtime terms: the semantic oracle behind every analysis.

Membership is definitional (a term is in a specialization iff some clause
admits it pointwise); enumeration is exhaustive up to a constructor-nesting
depth, drawing base-type arguments from small fixed pools and instantiating
type parameters with a single opaque hole.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .dsl import Base, ConClause, RecRef, TyVar
from .errors import ParseError, Pos, ValidationError
from .model import Hierarchy, SpecSet

BASE_POOLS = {
    "string": ("p", "q"),
    "int": ("0", "1"),
    "bool": ("true", "false"),
}
OPAQUE = ("_",)  # pool for any other base type

HOLE_TOKEN = "_"


@dataclass(frozen=True)
class BaseLit:
    base: str
    text: str


@dataclass(frozen=True)
class TyHole:
    """The single opaque inhabitant used for type parameters."""

    token: str = HOLE_TOKEN


@dataclass(frozen=True)
class Term:
    constructor: str
    args: tuple["Term | BaseLit | TyHole", ...] = ()


class MalformedTermError(ValidationError):
    pass


def depth(t: Term) -> int:
    """Maximum constructor nesting; literals and holes contribute nothing."""
    return 1 + max((depth(a) for a in t.args if isinstance(a, Term)), default=0)


def _check_shape(specset: SpecSet, t: Term) -> None:
    clause = {c.constructor: c for c in specset.root.clauses}.get(t.constructor)
    if clause is None:
        raise MalformedTermError(
            f"'{t.constructor}' is not a constructor of '{specset.root.name}'"
        )
    if len(t.args) != clause.arity:
        raise MalformedTermError(
            f"'{t.constructor}' takes {clause.arity} argument(s), found {len(t.args)}"
        )
    for a in t.args:
        if isinstance(a, Term):
            _check_shape(specset, a)


def _arg_admitted(specset: SpecSet, arg, atom) -> bool:
    if isinstance(atom, RecRef):
        return isinstance(arg, Term) and _member(specset, arg, atom.target)
    if isinstance(atom, Base):
        return isinstance(arg, BaseLit) and arg.base == atom.name
    return isinstance(arg, TyHole)


def _member(specset: SpecSet, t: Term, spec: str) -> bool:
    for clause in specset.entries[spec].clauses:
        if clause.constructor != t.constructor:
            continue
        if all(_arg_admitted(specset, a, atom) for a, atom in zip(t.args, clause.args)):
            return True
    return False


def membership(specset: SpecSet, t: Term, spec: str) -> bool:
    """True iff some clause of `spec` admits `t` pointwise.

    Multi-clause constructors are a disjunction over their clauses.  Raises
    on an unknown spec or a term malformed over the root datatype.
    """
    specset.require(spec)
    _check_shape(specset, t)
    return _member(specset, t, spec)


def matching_clauses(specset: SpecSet, t: Term, spec: str) -> list[ConClause]:
    """The clauses of `spec` that admit `t` (empty list iff not a member)."""
    specset.require(spec)
    _check_shape(specset, t)
    return [
        c
        for c in specset.entries[spec].clauses
        if c.constructor == t.constructor
        and all(_arg_admitted(specset, a, atom) for a, atom in zip(t.args, c.args))
    ]


def _pool(base: str) -> tuple[str, ...]:
    return BASE_POOLS.get(base, OPAQUE)


def _candidates(specset: SpecSet, atom, depth_left: int) -> tuple:
    if isinstance(atom, RecRef):
        return _enumerate(specset, atom.target, depth_left)
    if isinstance(atom, Base):
        return tuple(BaseLit(atom.name, text) for text in _pool(atom.name))
    return (TyHole(),)


def _enumerate(specset: SpecSet, spec: str, max_depth: int) -> tuple[Term, ...]:
    if max_depth < 1:
        return ()
    cache = specset._caches.setdefault("enum", {})
    key = (spec, max_depth)
    if key in cache:
        return cache[key]
    out: list[Term] = []
    for clause in specset.entries[spec].clauses:
        pools = [_candidates(specset, atom, max_depth - 1) for atom in clause.args]
        for combo in product(*pools):
            out.append(Term(clause.constructor, combo))
    result = tuple(dict.fromkeys(out))
    cache[key] = result
    return result


def enumerate_terms(specset: SpecSet, spec: str, max_depth: int) -> tuple[Term, ...]:
    """Every term of nesting depth <= max_depth that belongs to `spec`,
    in clause order then recursive enumeration order."""
    specset.require(spec)
    if max_depth < 1:
        raise ValidationError("enumeration depth must be at least 1")
    return _enumerate(specset, spec, max_depth)


def count_terms(specset: SpecSet, spec: str, max_depth: int) -> int:
    """Number of enumerable terms, computed arithmetically (no enumeration).

    For specs with multi-clause constructors this counts clause-wise and may
    exceed the deduplicated enumeration length."""
    specset.require(spec)
    cache = specset._caches.setdefault("count", {})

    def go(name: str, d: int) -> int:
        if d < 1:
            return 0
        key = (name, d)
        if key in cache:
            return cache[key]
        total = 0
        for clause in specset.entries[name].clauses:
            n = 1
            for atom in clause.args:
                if isinstance(atom, RecRef):
                    n *= go(atom.target, d - 1)
                elif isinstance(atom, Base):
                    n *= len(_pool(atom.name))
                if n == 0:
                    break
            total += n
        cache[key] = total
        return total

    return go(spec, max_depth)


def iter_terms(specset: SpecSet, spec: str, max_depth: int):
    """Lazy variant of enumeration (no memoization, possible duplicates);
    suited to early-exit searches such as witness hunting."""
    if max_depth < 1:
        return
    for clause in specset.entries[spec].clauses:
        gens = [
            (lambda a=atom: iter_terms(specset, a.target, max_depth - 1))
            if isinstance(atom, RecRef)
            else (lambda a=atom: iter(_candidates(specset, a, max_depth - 1)))
            for atom in clause.args
        ]

        def combos(k: int):
            if k == len(gens):
                yield ()
                return
            for head in gens[k]():
                for rest in combos(k + 1):
                    yield (head,) + rest

        for combo in combos(0):
            yield Term(clause.constructor, combo)


def tractable_depth(specset: SpecSet, spec: str, max_depth: int, budget: int) -> int:
    """Largest depth <= max_depth whose term count stays within budget."""
    best = 1
    for d in range(1, max_depth + 1):
        if count_terms(specset, spec, d) > budget:
            break
        best = d
    return best


def check_hierarchy_against_terms(
    specset: SpecSet,
    h: Hierarchy,
    max_depth: int = 5,
    budget: int = 200_000,
) -> list[str]:
    """Cross-validate the computed preorder against the term oracle.

    For comparable pairs, every enumerated subtype term must be a member of
    the supertype (enumeration depth capped so the term count stays within
    budget); for incomparable pairs, a counterexample term of depth
    <= max_depth must exist.  Returns human-readable discrepancies.
    """
    problems: list[str] = []
    names = specset.names
    for s1 in names:
        for s2 in names:
            if s1 == s2:
                continue
            if h.is_leq(s1, s2):
                d = tractable_depth(specset, s1, max_depth, budget)
                for t in enumerate_terms(specset, s1, d):
                    if not membership(specset, t, s2):
                        problems.append(
                            f"{s1} <= {s2} but {render_term(t)} is not in {s2}"
                        )
                        break
            else:
                seen = 0
                witness = None
                for t in iter_terms(specset, s1, max_depth):
                    seen += 1
                    if not _member(specset, t, s2):
                        witness = t
                        break
                    if seen >= budget:
                        break
                if witness is None:
                    problems.append(
                        f"{s1} !<= {s2} but no witness term of depth <= {max_depth} found"
                    )
    return problems


# --- fixture syntax: Con(arg, ...), strings quoted ---

def render_term(t: Term | BaseLit | TyHole) -> str:
    if isinstance(t, BaseLit):
        if t.base == "string":
            return f'"{t.text}"'
        return t.text
    if isinstance(t, TyHole):
        return t.token
    if not t.args:
        return t.constructor
    return t.constructor + "(" + ", ".join(render_term(a) for a in t.args) + ")"


class _TermReader:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, Pos(1, self.i + 1))

    def skip_ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i] in " \t\r\n":
            self.i += 1

    def peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def term(self):
        self.skip_ws()
        ch = self.peek()
        if ch == '"':
            self.i += 1
            start = self.i
            while self.peek() not in ('"', ""):
                self.i += 1
            if self.peek() != '"':
                raise self.error("unterminated string literal")
            text = self.text[start : self.i]
            self.i += 1
            return BaseLit("string", text)
        if ch.isdigit():
            start = self.i
            while self.peek().isdigit():
                self.i += 1
            return BaseLit("int", self.text[start : self.i])
        if ch == HOLE_TOKEN:
            self.i += 1
            return TyHole()
        if not ch.isalpha():
            raise self.error(f"expected a term, found {ch!r}")
        start = self.i
        while self.peek().isalnum() or self.peek() == "_":
            self.i += 1
        word = self.text[start : self.i]
        if word in ("true", "false"):
            return BaseLit("bool", word)
        if not word[0].isupper():
            raise self.error(f"unknown literal {word!r}")
        args = []
        self.skip_ws()
        if self.peek() == "(":
            self.i += 1
            args.append(self.term())
            self.skip_ws()
            while self.peek() == ",":
                self.i += 1
                args.append(self.term())
                self.skip_ws()
            if self.peek() != ")":
                raise self.error("expected ',' or ')'")
            self.i += 1
        return Term(word, tuple(args))


def parse_term(text: str) -> Term:
    reader = _TermReader(text)
    t = reader.term()
    reader.skip_ws()
    if reader.i != len(reader.text):
        raise reader.error("trailing input after term")
    if not isinstance(t, Term):
        raise reader.error("expected a constructor application")
    return t
