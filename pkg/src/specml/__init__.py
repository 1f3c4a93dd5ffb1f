"""specml: datatype specializations compiled to phantom-type and
recursion-scheme interfaces for Standard ML."""

from .dsl import (
    Base,
    ConClause,
    DatatypeDecl,
    RecRef,
    SpecDecl,
    TyVar,
    parse_declarations,
    pretty_print,
)
from .encoding import (
    Carrier,
    Record,
    Substitution,
    Unit,
    Var,
    encode_abstract,
    encode_concrete,
    render,
    unifiable,
    unify,
)
from .errors import (
    LexError,
    ParseError,
    PlanError,
    SpecmlError,
    UnificationError,
    ValidationError,
)
from .model import (
    Hierarchy,
    SpecSet,
    build_tree,
    check_inhabited,
    compute_hierarchy,
    compute_subtyping,
    lub,
    to_dot,
    validate,
)
from .terms import (
    BaseLit,
    Term,
    TyHole,
    count_terms,
    enumerate_terms,
    membership,
    parse_term,
    render_term,
)
from .codegen_phantom import GeneratedUnit, gen_phantom, render_even_odd
from .codegen_datatype import DtPlan, gen_dt, plan_datatypes
from .formulas import evaluate, identify, to_dnf, to_string

__all__ = [
    "Base",
    "BaseLit",
    "Carrier",
    "ConClause",
    "DatatypeDecl",
    "DtPlan",
    "GeneratedUnit",
    "Hierarchy",
    "LexError",
    "ParseError",
    "PlanError",
    "RecRef",
    "Record",
    "SpecDecl",
    "SpecSet",
    "SpecmlError",
    "Substitution",
    "Term",
    "TyHole",
    "TyVar",
    "UnificationError",
    "Unit",
    "ValidationError",
    "Var",
    "build_tree",
    "check_inhabited",
    "compute_hierarchy",
    "compute_subtyping",
    "count_terms",
    "encode_abstract",
    "encode_concrete",
    "enumerate_terms",
    "evaluate",
    "gen_dt",
    "gen_phantom",
    "identify",
    "lub",
    "membership",
    "parse_declarations",
    "parse_term",
    "plan_datatypes",
    "pretty_print",
    "render",
    "render_even_odd",
    "render_term",
    "to_dnf",
    "to_dot",
    "to_string",
    "unifiable",
    "unify",
    "validate",
]
