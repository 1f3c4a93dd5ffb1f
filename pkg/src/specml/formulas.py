"""Reference semantics for Boolean-formula terms.

Operates on generic terms built from the six formula constructors (Var, Not,
True, And, False, Or).  `to_dnf` normalizes by pushing negations down to
literals and distributing conjunctions, producing a disjunction list
terminated by False whose conjunctions are literal lists terminated by True.
"""

from __future__ import annotations

from .terms import BaseLit, Term

ARITIES = {"Var": 1, "Not": 1, "True": 0, "And": 2, "False": 0, "Or": 2}

TRUE = Term("True")
FALSE = Term("False")

_SYMBOLS = {"Not": "~", "And": "/\\", "Or": "\\/", "True": "T", "False": "F"}


class NotAFormulaError(ValueError):
    pass


class UnboundVariableError(KeyError):
    pass


def _check(t: Term) -> Term:
    if not isinstance(t, Term) or ARITIES.get(t.constructor) != len(t.args):
        raise NotAFormulaError(f"not a formula term: {t!r}")
    return t


def identify(t: Term) -> str:
    """Display name of the top-level operator."""
    return _check(t).constructor


def to_string(t: Term) -> str:
    """Fully parenthesized infix rendering (~, /\\, \\/, T, F)."""
    _check(t)
    match t.constructor:
        case "Var":
            return t.args[0].text
        case "True" | "False":
            return _SYMBOLS[t.constructor]
        case "Not":
            return f"({_SYMBOLS['Not']} {to_string(t.args[0])})"
        case op:
            lhs, rhs = (to_string(a) for a in t.args)
            return f"({lhs} {_SYMBOLS[op]} {rhs})"


def evaluate(t: Term, env: dict[str, bool]) -> bool:
    """Truth value under an environment binding every variable of `t`."""
    _check(t)
    match t.constructor:
        case "Var":
            name = t.args[0].text
            if name not in env:
                raise UnboundVariableError(name)
            return env[name]
        case "True":
            return True
        case "False":
            return False
        case "Not":
            return not evaluate(t.args[0], env)
        case "And":
            return evaluate(t.args[0], env) and evaluate(t.args[1], env)
        case _:
            return evaluate(t.args[0], env) or evaluate(t.args[1], env)


def variables(t: Term) -> set[str]:
    _check(t)
    if t.constructor == "Var":
        return {t.args[0].text}
    out: set[str] = set()
    for a in t.args:
        if isinstance(a, Term):
            out |= variables(a)
    return out


# --- DNF conversion ---

def _lit_to_dnf(lit: Term) -> Term:
    # One-conjunction disjunction holding a single literal.
    return Term("Or", (Term("And", (lit, TRUE)), FALSE))


def _and_conjs(c1: Term, c2: Term) -> Term:
    if c1.constructor == "True":
        return c2
    head, tail = c1.args
    return Term("And", (head, _and_conjs(tail, c2)))


def _or_dnfs(d1: Term, d2: Term) -> Term:
    if d1.constructor == "False":
        return d2
    head, tail = d1.args
    return Term("Or", (head, _or_dnfs(tail, d2)))


def _and_dnfs(d1: Term, d2: Term) -> Term:
    # If either argument is a False element, the conjunction is False; when
    # both are Or elements, distribute pairwise.
    if d1.constructor == "False" or d2.constructor == "False":
        return FALSE
    c1, d1rest = d1.args
    c2, d2rest = d2.args
    first = Term("Or", (_and_conjs(c1, c2), FALSE))
    rest = _or_dnfs(
        _and_dnfs(Term("Or", (c1, FALSE)), d2rest), _and_dnfs(d1rest, d2)
    )
    return _or_dnfs(first, rest)


def _to_dnf(t: Term) -> Term:
    match t.constructor:
        case "Var":
            return _lit_to_dnf(t)
        case "Not":
            return _negation_to_dnf(t.args[0])
        case "True":
            return Term("Or", (TRUE, FALSE))
        case "False":
            return FALSE
        case "And":
            return _and_dnfs(_to_dnf(t.args[0]), _to_dnf(t.args[1]))
        case _:
            return _or_dnfs(_to_dnf(t.args[0]), _to_dnf(t.args[1]))


def _negation_to_dnf(t: Term) -> Term:
    match t.constructor:
        case "Var":
            return _lit_to_dnf(Term("Not", (t,)))
        case "Not":
            return _to_dnf(t.args[0])
        case "True":
            return FALSE
        case "False":
            return Term("Or", (TRUE, FALSE))
        case "And":
            return _or_dnfs(_negation_to_dnf(t.args[0]), _negation_to_dnf(t.args[1]))
        case _:
            return _and_dnfs(_negation_to_dnf(t.args[0]), _negation_to_dnf(t.args[1]))


def to_dnf(t: Term) -> Term:
    """An equivalent formula in disjunctive normal form (not minimized)."""
    _check(t)
    return _to_dnf(t)
