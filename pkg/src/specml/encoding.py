"""Phantom encodings of hierarchy positions, and unification between them.

Each specialization is encoded as a chain of single-field records spelling
the root-to-spec path, applied to the hidden carrier type.  The concrete
encoding grounds the chain with `unit`; the abstract encoding leaves a type
variable at the leaf.  `conc(s1)` unifies with `abst(s2)` exactly when
`s1 <= s2` in the hierarchy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnificationError
from .model import Hierarchy


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unit:
    pass


UNIT = Unit()


@dataclass(frozen=True)
class Record:
    """Single-field record; the label is a specialization name."""

    label: str
    inner: "EncodingType"


@dataclass(frozen=True)
class Carrier:
    """The phantom chain applied to the carrier type, with the root's
    non-phantom type parameters riding alongside (phantom last)."""

    typarams: tuple[str, ...]
    phantom: "EncodingType"


EncodingType = Var | Unit | Record | Carrier


def encode_abstract(h: Hierarchy, spec: str, leaf: str = "a") -> Carrier:
    """Nested records along the root-to-spec path with a variable at the leaf."""
    h.require(spec)
    enc: EncodingType = Var(leaf)
    for label in reversed(h.path[spec]):
        enc = Record(label, enc)
    return Carrier(h.typarams, enc)


def encode_concrete(h: Hierarchy, spec: str) -> Carrier:
    """The abstract encoding with the leaf instantiated to unit."""
    h.require(spec)
    enc: EncodingType = UNIT
    for label in reversed(h.path[spec]):
        enc = Record(label, enc)
    return Carrier(h.typarams, enc)


def render(enc: EncodingType) -> str:
    """Surface syntax, e.g. `{fmla: {lit: 'a}} t` or `('a, {list: 'b}) t`."""
    if isinstance(enc, Var):
        return f"'{enc.name}"
    if isinstance(enc, Unit):
        return "unit"
    if isinstance(enc, Record):
        return f"{{{enc.label}: {render(enc.inner)}}}"
    phantom = render(enc.phantom)
    if not enc.typarams:
        return f"{phantom} t"
    args = ", ".join([f"'{v}" for v in enc.typarams] + [phantom])
    return f"({args}) t"


# --- unification ---

@dataclass(frozen=True)
class Substitution:
    """Idempotent mapping from variable names to encoding types."""

    mapping: dict[str, EncodingType]

    def apply(self, enc: EncodingType) -> EncodingType:
        if isinstance(enc, Var):
            return self.mapping.get(enc.name, enc)
        if isinstance(enc, Record):
            return Record(enc.label, self.apply(enc.inner))
        if isinstance(enc, Carrier):
            return Carrier(enc.typarams, self.apply(enc.phantom))
        return enc

    def __contains__(self, name: str) -> bool:
        return name in self.mapping


def _occurs(name: str, enc: EncodingType) -> bool:
    if isinstance(enc, Var):
        return enc.name == name
    if isinstance(enc, Record):
        return _occurs(name, enc.inner)
    if isinstance(enc, Carrier):
        return _occurs(name, enc.phantom)
    return False


def unify(e1: EncodingType, e2: EncodingType) -> Substitution:
    """Most general unifier of two encoding types.

    Raises UnificationError on a label/constructor clash or an occurs-check
    failure.  Callers supply encodings over disjoint variable sets.
    """
    mapping: dict[str, EncodingType] = {}
    pending = [(e1, e2)]

    def bind(name: str, enc: EncodingType) -> None:
        if _occurs(name, enc):
            raise UnificationError(
                f"occurs check: '{name} appears inside {render(enc)}", Var(name), enc
            )
        one = Substitution({name: enc})
        for k in mapping:
            mapping[k] = one.apply(mapping[k])
        pending[:] = [(one.apply(a), one.apply(b)) for a, b in pending]
        mapping[name] = enc

    while pending:
        a, b = pending.pop()
        if a == b:
            continue
        if isinstance(a, Var):
            bind(a.name, b)
        elif isinstance(b, Var):
            bind(b.name, a)
        elif isinstance(a, Record) and isinstance(b, Record):
            if a.label != b.label:
                raise UnificationError(
                    f"record labels clash: '{a.label}' vs '{b.label}'", a, b
                )
            pending.append((a.inner, b.inner))
        elif isinstance(a, Carrier) and isinstance(b, Carrier):
            # Non-phantom parameters are plain names, not unification
            # variables; both sides always carry the root's list.
            if a.typarams != b.typarams:
                raise UnificationError("carrier type parameters differ", a, b)
            pending.append((a.phantom, b.phantom))
        else:
            raise UnificationError(f"{render(a)} does not match {render(b)}", a, b)

    return Substitution(mapping)


def unifiable(e1: EncodingType, e2: EncodingType) -> bool:
    try:
        unify(e1, e2)
        return True
    except UnificationError:
        return False
