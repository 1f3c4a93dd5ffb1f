"""Built-in example declaration groups used by tests and demos."""

from __future__ import annotations

from functools import lru_cache

from .dsl import DatatypeDecl, SpecDecl, parse_declarations
from .model import Hierarchy, SpecSet, compute_hierarchy, validate

SOURCES = {
    "fmla": """\
datatype fmla = Var of string | Not of fmla
              | True | And of fmla * fmla
              | False | Or of fmla * fmla
  withspec atom = Var of string
       and lit  = Var of string | Not of atom
       and conj = True | And of lit * conj
       and dnf  = False | Or of conj * dnf
""",
    "grnd": """\
datatype fmla = Var of string | Not of fmla
              | True | And of fmla * fmla
              | False | Or of fmla * fmla
  withspec grnd = Not of grnd
                | True | And of grnd * grnd
                | False | Or of grnd * grnd
""",
    "nat": """\
datatype nat = Zero | Succ of nat
  withspec zero    = Zero
       and nonzero = Succ of nat
""",
    "lists": """\
datatype 'a list = Nil | Cons of 'a * 'a list
  withspec 'a empty     = Nil
       and 'a singleton = Cons of 'a * 'a empty
       and 'a nonempty  = Cons of 'a * 'a list
""",
    "evenodd": """\
datatype 'a list = Nil | Cons of 'a * 'a list
  withspec 'a even = Nil | Cons of 'a * 'a odd
       and 'a odd  = Cons of 'a * 'a even
""",
    "exp": """\
datatype exp = Bool of bool | And of exp * exp
             | Int of int | Plus of exp * exp
             | If of exp * exp * exp
  withspec boolexp = Bool of bool | And of boolexp * boolexp
                   | If of boolexp * boolexp * boolexp
       and intexp  = Int of int | Plus of intexp * intexp
                   | If of boolexp * intexp * intexp
""",
    "bits": """\
datatype bits = Nil | Zero of bits | One of bits
  withspec even = Nil | Zero of even | One of odd
       and odd  = Zero of odd | One of even
""",
    # Variant with one constructor at two argument types: exercises
    # multi-clause destructor typing; no datatype interface exists for it.
    "dnf_lr": """\
datatype fmla = Var of string | Not of fmla
              | True | And of fmla * fmla
              | False | Or of fmla * fmla
  withspec atom = Var of string
       and lit  = Var of string | Not of atom
       and conj = True | And of lit * conj
       and dnf  = False | Or of conj * dnf | Or of dnf * conj
""",
}

SHIPPED = ("fmla", "grnd", "nat", "lists", "evenodd", "exp", "bits")


@lru_cache(maxsize=None)
def declarations(name: str) -> tuple[DatatypeDecl, list[SpecDecl]]:
    return parse_declarations(SOURCES[name])


@lru_cache(maxsize=None)
def spec_set(name: str) -> SpecSet:
    decl, specs = declarations(name)
    return validate(decl, specs)


@lru_cache(maxsize=None)
def hierarchy(name: str) -> Hierarchy:
    return compute_hierarchy(spec_set(name))
