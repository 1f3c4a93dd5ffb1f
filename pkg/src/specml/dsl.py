"""Surface syntax for `datatype ... withspec ...` declaration groups.

Grammar (whitespace-insensitive, `(* ... *)` comments skipped, non-nesting):

    group    ::= "datatype" binder "=" clauses ("withspec" specbind ("and" specbind)*)?
    specbind ::= binder "=" clauses
    binder   ::= tvars? ident
    tvars    ::= tyvar | "(" tyvar ("," tyvar)* ")"
    clauses  ::= clause ("|" clause)*
    clause   ::= Con ("of" atom ("*" atom)*)?
    atom     ::= tyvar | ident | tvars ident

Constructor names begin uppercase; type and specialization names begin
lowercase; `datatype`, `withspec`, `and`, `of` are reserved.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LexError, ParseError, Pos

KEYWORDS = frozenset({"datatype", "withspec", "and", "of"})


# --- declaration model ---

@dataclass(frozen=True)
class TyVar:
    """A type-variable argument, stored without the leading apostrophe."""

    name: str
    pos: Pos = field(default=Pos(), compare=False)


@dataclass(frozen=True)
class Base:
    """An opaque base type such as `string` or `int` (any undeclared name)."""

    name: str
    pos: Pos = field(default=Pos(), compare=False)


@dataclass(frozen=True)
class RecRef:
    """A reference to the root datatype or one of its specializations,
    optionally applied to the declaration's type parameters."""

    target: str
    tyvars: tuple[str, ...] = ()
    pos: Pos = field(default=Pos(), compare=False)


TypeAtom = TyVar | Base | RecRef


@dataclass(frozen=True)
class ConClause:
    constructor: str
    args: tuple[TypeAtom, ...] = ()
    pos: Pos = field(default=Pos(), compare=False)

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True)
class DatatypeDecl:
    name: str
    typarams: tuple[str, ...]
    clauses: tuple[ConClause, ...]
    pos: Pos = field(default=Pos(), compare=False)


@dataclass(frozen=True)
class SpecDecl:
    name: str
    typarams: tuple[str, ...]
    clauses: tuple[ConClause, ...]
    pos: Pos = field(default=Pos(), compare=False)


# --- lexer ---

_PUNCT = {"=": "EQ", "|": "BAR", "*": "STAR", "(": "LPAREN", ")": "RPAREN", ",": "COMMA"}


@dataclass(frozen=True)
class Token:
    kind: str  # KW, UIDENT, LIDENT, TYVAR, EQ, BAR, STAR, LPAREN, RPAREN, COMMA, EOF
    text: str
    pos: Pos


def tokenize(source: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def advance(k: int) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if source[i] == "\n":
                line, col = line + 1, 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            advance(1)
            continue
        if source.startswith("(*", i):
            start = Pos(line, col)
            end = source.find("*)", i + 2)
            if end < 0:
                raise LexError("unterminated comment", start)
            advance(end + 2 - i)
            continue
        pos = Pos(line, col)
        if ch in _PUNCT:
            toks.append(Token(_PUNCT[ch], ch, pos))
            advance(1)
            continue
        if ch == "'":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            name = source[i + 1 : j]
            if not name or not name[0].isalpha():
                raise LexError("malformed type variable after apostrophe", pos)
            toks.append(Token("TYVAR", name, pos))
            advance(j - i)
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            if word in KEYWORDS:
                kind = "KW"
            elif word[0].isupper():
                kind = "UIDENT"
            else:
                kind = "LIDENT"
            toks.append(Token(kind, word, pos))
            advance(j - i)
            continue
        raise LexError(f"unexpected character {ch!r}", pos)
    toks.append(Token("EOF", "", Pos(line, col)))
    return toks


# --- parser ---

class _Parser:
    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def bump(self) -> Token:
        tok = self.cur
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        if self.cur.kind != kind:
            raise ParseError(f"expected {what}, found {self._describe(self.cur)}", self.cur.pos)
        return self.bump()

    def expect_kw(self, word: str) -> Token:
        if self.cur.kind != "KW" or self.cur.text != word:
            raise ParseError(f"expected '{word}', found {self._describe(self.cur)}", self.cur.pos)
        return self.bump()

    def at_kw(self, word: str) -> bool:
        return self.cur.kind == "KW" and self.cur.text == word

    @staticmethod
    def _describe(tok: Token) -> str:
        return "end of input" if tok.kind == "EOF" else f"{tok.text!r}"

    # binder ::= tvars? ident
    def binder(self) -> tuple[tuple[str, ...], str, Pos]:
        typarams: tuple[str, ...] = ()
        pos = self.cur.pos
        if self.cur.kind == "TYVAR":
            typarams = (self.bump().text,)
        elif self.cur.kind == "LPAREN":
            typarams = self._tvars_parens()
        name = self.expect("LIDENT", "a lowercase type name").text
        return typarams, name, pos

    def _tvars_parens(self) -> tuple[str, ...]:
        self.expect("LPAREN", "'('")
        names = [self.expect("TYVAR", "a type variable").text]
        while self.cur.kind == "COMMA":
            self.bump()
            names.append(self.expect("TYVAR", "a type variable").text)
        self.expect("RPAREN", "')'")
        return tuple(names)

    def clauses(self) -> tuple[ConClause, ...]:
        out = [self.clause()]
        while self.cur.kind == "BAR":
            self.bump()
            out.append(self.clause())
        return tuple(out)

    def clause(self) -> ConClause:
        con = self.expect("UIDENT", "a constructor name")
        args: tuple[TypeAtom, ...] = ()
        if self.at_kw("of"):
            self.bump()
            parts = [self.atom()]
            while self.cur.kind == "STAR":
                self.bump()
                parts.append(self.atom())
            args = tuple(parts)
        return ConClause(con.text, args, con.pos)

    def atom(self) -> TypeAtom:
        tok = self.cur
        if tok.kind == "TYVAR":
            self.bump()
            if self.cur.kind == "LIDENT":
                name = self.bump()
                return RecRef(name.text, (tok.text,), tok.pos)
            return TyVar(tok.text, tok.pos)
        if tok.kind == "LPAREN":
            tvs = self._tvars_parens()
            name = self.expect("LIDENT", "a type name after the type-variable list")
            return RecRef(name.text, tvs, tok.pos)
        if tok.kind == "LIDENT":
            self.bump()
            # Bare name; resolved to Base or RecRef once the group is known.
            return Base(tok.text, tok.pos)
        raise ParseError(f"expected a type, found {self._describe(tok)}", tok.pos)

    def group(self) -> tuple[DatatypeDecl, list[SpecDecl]]:
        self.expect_kw("datatype")
        typarams, name, pos = self.binder()
        self.expect("EQ", "'='")
        decl = DatatypeDecl(name, typarams, self.clauses(), pos)
        specs: list[SpecDecl] = []
        if self.at_kw("withspec"):
            self.bump()
            specs.append(self._specbind())
            while self.at_kw("and"):
                self.bump()
                specs.append(self._specbind())
        self.expect("EOF", "end of input")
        return decl, specs

    def _specbind(self) -> SpecDecl:
        typarams, name, pos = self.binder()
        self.expect("EQ", "'='")
        return SpecDecl(name, typarams, self.clauses(), pos)


def _resolve_atom(atom: TypeAtom, declared: frozenset[str]) -> TypeAtom:
    # Bare lowercase names become recursive references when they name a
    # declaration of this group; anything else is an opaque base type.
    # Applied names always parse as references (validation rejects unknown
    # targets).
    if isinstance(atom, Base) and atom.name in declared:
        return RecRef(atom.name, (), atom.pos)
    return atom


def _resolve_clauses(clauses: tuple[ConClause, ...], declared: frozenset[str]) -> tuple[ConClause, ...]:
    return tuple(
        ConClause(c.constructor, tuple(_resolve_atom(a, declared) for a in c.args), c.pos)
        for c in clauses
    )


def _check_duplicates(decl: DatatypeDecl, specs: list[SpecDecl]) -> None:
    seen: dict[str, Pos] = {}
    for c in decl.clauses:
        if c.constructor in seen:
            raise ParseError(
                f"duplicate constructor '{c.constructor}' in datatype '{decl.name}'", c.pos
            )
        seen[c.constructor] = c.pos
    for spec in specs:
        seen_clauses: set[tuple] = set()
        for c in spec.clauses:
            key = (c.constructor, c.args)
            if key in seen_clauses:
                raise ParseError(
                    f"duplicate clause for constructor '{c.constructor}' "
                    f"in specialization '{spec.name}'",
                    c.pos,
                )
            seen_clauses.add(key)


def parse_declarations(source: str) -> tuple[DatatypeDecl, list[SpecDecl]]:
    """Parse one declaration group into the declaration model.

    Raises LexError / ParseError with the offending source position.
    """
    decl, specs = _Parser(tokenize(source)).group()
    declared = frozenset({decl.name} | {s.name for s in specs})
    decl = DatatypeDecl(decl.name, decl.typarams, _resolve_clauses(decl.clauses, declared), decl.pos)
    specs = [
        SpecDecl(s.name, s.typarams, _resolve_clauses(s.clauses, declared), s.pos) for s in specs
    ]
    _check_duplicates(decl, specs)
    return decl, specs


# --- pretty printer ---

def _show_binder(typarams: tuple[str, ...], name: str) -> str:
    if not typarams:
        return name
    if len(typarams) == 1:
        return f"'{typarams[0]} {name}"
    return "(" + ", ".join(f"'{v}" for v in typarams) + f") {name}"


def _show_atom(atom: TypeAtom) -> str:
    if isinstance(atom, TyVar):
        return f"'{atom.name}"
    if isinstance(atom, Base):
        return atom.name
    return _show_binder(atom.tyvars, atom.target)


def _show_clause(clause: ConClause) -> str:
    if not clause.args:
        return clause.constructor
    return clause.constructor + " of " + " * ".join(_show_atom(a) for a in clause.args)


def _show_clauses(clauses: tuple[ConClause, ...]) -> str:
    return " | ".join(_show_clause(c) for c in clauses)


def pretty_print(decl: DatatypeDecl, specs: list[SpecDecl]) -> str:
    """Render a declaration group; reparsing yields a structurally equal model."""
    lines = [f"datatype {_show_binder(decl.typarams, decl.name)} = {_show_clauses(decl.clauses)}"]
    for k, spec in enumerate(specs):
        kw = "withspec" if k == 0 else "     and"
        lines.append(f"  {kw} {_show_binder(spec.typarams, spec.name)} = {_show_clauses(spec.clauses)}")
    return "\n".join(lines) + "\n"
