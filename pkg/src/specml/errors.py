"""Positioned diagnostics shared by the whole pipeline."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Pos:
    """1-based source position."""

    line: int = 1
    col: int = 1

    def __str__(self):
        return f"{self.line}:{self.col}"


class SpecmlError(Exception):
    """Base class for every diagnosable error.

    `category` is a stable machine-readable tag, `pos` points at the
    offending source token (best effort for errors raised on hand-built
    models).
    """

    category = "error"

    def __init__(self, message: str, pos: Pos | None = None):
        super().__init__(message)
        self.message = message
        self.pos = pos or Pos()

    def diagnostic(self, path: str, severity: str = "error") -> str:
        return f"{path}:{self.pos.line}:{self.pos.col}: {severity}: {self.message}"


class LexError(SpecmlError):
    category = "lex"


class ParseError(SpecmlError):
    category = "syntax"


class ValidationError(SpecmlError):
    category = "validate"


class PlanError(SpecmlError):
    """Datatype-interface planning failed (e.g. generated names collide)."""

    category = "plan"


class UnificationError(Exception):
    """Two encoding types do not unify; carries the clashing pair."""

    def __init__(self, message: str, left=None, right=None):
        super().__init__(message)
        self.left = left
        self.right = right
