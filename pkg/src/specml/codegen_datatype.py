"""Emit the datatype interface layered on the phantom unit.

Each specialization gets a datatype `t'` describing one unrolling (recursive
argument positions replaced by independent type variables), plus `inj` back
into the specialization type, `prj` out of it, and a shape-preserving `map`.
The generated structure is written purely against the phantom unit; it never
touches the hidden representation.  One combined signature carries both
interfaces, since SML signatures cannot extend substructures.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dsl import ConClause, RecRef, TyVar
from .errors import PlanError
from .model import Hierarchy, SpecSet
from .codegen_phantom import (
    GeneratedUnit,
    abbrev_lines,
    abs_ref,
    cap,
    carrier_decl,
    conc_ref,
    fresh_vars,
    sig_name,
    struct_name,
    substructure_sig_lines,
    type_app,
)


@dataclass(frozen=True)
class ClausePlan:
    clause: ConClause
    primed: str
    arg_vars: tuple[str | None, ...]  # one variable per recursive position

    @property
    def tyvars(self) -> tuple[str, ...]:
        return tuple(v for v in self.arg_vars if v is not None)


@dataclass(frozen=True)
class SpecPlan:
    spec: str
    tyvars: tuple[str, ...]  # all recursive-position variables, clause order
    clause_plans: tuple[ClausePlan, ...]


@dataclass(frozen=True)
class DtPlan:
    per_spec: dict[str, SpecPlan]

    def __getitem__(self, spec: str) -> SpecPlan:
        return self.per_spec[spec]


def _clause_vars(clause: ConClause) -> tuple[str | None, ...]:
    rec_positions = [k for k, a in enumerate(clause.args) if isinstance(a, RecRef)]
    stem = clause.constructor.lower()
    if len(rec_positions) == 1:
        names = [stem]
    elif len(rec_positions) == 2:
        names = [stem + "l", stem + "r"]
    else:
        names = [f"{stem}{k}" for k in range(1, len(rec_positions) + 1)]
    out: list[str | None] = [None] * len(clause.args)
    for name, k in zip(names, rec_positions):
        out[k] = name
    return tuple(out)


def plan_datatypes(specset: SpecSet, h: Hierarchy) -> DtPlan:
    """Pick datatype names, primed constructors, and type variables.

    Rejects plans whose generated names collide (for example a constructor
    used at several argument types, which would need two datatype
    constructors of the same primed name)."""
    per_spec: dict[str, SpecPlan] = {}
    for spec in h.preorder:
        entry = specset.entries[spec]
        clause_plans = []
        tyvars: list[str] = []
        primed_seen: dict[str, ConClause] = {}
        for clause in entry.clauses:
            primed = clause.constructor + "'"
            if primed in primed_seen:
                raise PlanError(
                    f"cannot build a datatype for specialization '{spec}': "
                    f"constructor '{clause.constructor}' appears in several "
                    f"clauses, so '{primed}' would be declared twice — rename "
                    f"or merge the clauses",
                    clause.pos,
                )
            primed_seen[primed] = clause
            arg_vars = _clause_vars(clause)
            for v in arg_vars:
                if v is None:
                    continue
                if v in tyvars or v in specset.root.typarams:
                    raise PlanError(
                        f"cannot build a datatype for specialization '{spec}': "
                        f"type variable ''{v}' generated for constructor "
                        f"'{clause.constructor}' collides with an existing "
                        f"name — rename the constructor",
                        clause.pos,
                    )
                tyvars.append(v)
            clause_plans.append(ClausePlan(clause, primed, arg_vars))
        per_spec[spec] = SpecPlan(spec, tuple(tyvars), tuple(clause_plans))
    return DtPlan(per_spec)


# --- typing ---

def dt_name(spec: str) -> str:
    return "D" + cap(spec)


def dt_head(h: Hierarchy, plan: SpecPlan, name: str = "t'") -> str:
    return type_app(
        [f"'{v}" for v in h.typarams] + [f"'{v}" for v in plan.tyvars], name
    )


def datatype_decl_line(h: Hierarchy, plan: SpecPlan) -> str:
    clauses = []
    for cp in plan.clause_plans:
        if not cp.clause.args:
            clauses.append(cp.primed)
            continue
        parts = []
        for atom, var in zip(cp.clause.args, cp.arg_vars):
            if var is not None:
                parts.append(f"'{var}")
            elif isinstance(atom, TyVar):
                parts.append(f"'{atom.name}")
            else:
                parts.append(atom.name)
        clauses.append(cp.primed + " of " + " * ".join(parts))
    return f"datatype {dt_head(h, plan)} = " + " | ".join(clauses)


def _tprime_app(h: Hierarchy, args: list[str]) -> str:
    return type_app([f"'{v}" for v in h.typarams] + args, "t'")


def inj_type(h: Hierarchy, plan: SpecPlan) -> str:
    fresh = fresh_vars(h.typarams)
    args = []
    for cp in plan.clause_plans:
        for atom, var in zip(cp.clause.args, cp.arg_vars):
            if var is not None:
                args.append(abs_ref(h, atom.target, next(fresh)))
    return f"{_tprime_app(h, args)} -> {conc_ref(h, plan.spec)}"


def prj_type(h: Hierarchy, plan: SpecPlan) -> str:
    fresh = fresh_vars(h.typarams)
    arg_var = next(fresh)
    args = []
    for cp in plan.clause_plans:
        for atom, var in zip(cp.clause.args, cp.arg_vars):
            if var is not None:
                args.append(conc_ref(h, atom.target))
    return f"{abs_ref(h, plan.spec, arg_var)} -> {_tprime_app(h, args)}"


def map_type(h: Hierarchy, plan: SpecPlan) -> str:
    src = _tprime_app(h, [f"'{v}1" for v in plan.tyvars])
    dst = _tprime_app(h, [f"'{v}2" for v in plan.tyvars])
    if not plan.tyvars:
        return f"{src} -> {dst}"
    funs = " * ".join(f"('{v}1 -> '{v}2)" for v in plan.tyvars)
    return f"{funs} -> {src} -> {dst}"


def unrolling_type(h: Hierarchy, plan: SpecPlan, args: list[str]) -> str:
    """A D-type application, for writing nested unrolling types."""
    return type_app([f"'{v}" for v in h.typarams] + args, dt_name(plan.spec))


# --- emission ---

def _fun_name(var: str) -> str:
    return "f" + cap(var)


def _pattern(cp: ClausePlan) -> str:
    arity = len(cp.clause.args)
    if arity == 0:
        return cp.primed
    names = ", ".join(f"x{k}" for k in range(1, arity + 1))
    return f"{cp.primed} ({names})" if arity > 1 else f"{cp.primed} {names}"


def _apply_args(cp: ClausePlan) -> str:
    arity = len(cp.clause.args)
    if arity == 0:
        return ""
    names = ", ".join(f"x{k}" for k in range(1, arity + 1))
    return f" ({names})" if arity > 1 else f" {names}"


def _case_lines(head: str, arms: list[str], indent: str) -> list[str]:
    lines = [head, f"{indent}case v of"]
    for k, arm in enumerate(arms):
        lead = f"{indent}  " if k == 0 else f"{indent}| "
        lines.append(lead + arm)
    return lines


def substructure_dt_sig_lines(specset: SpecSet, h: Hierarchy, plan: SpecPlan) -> list[str]:
    lines = substructure_sig_lines(specset, h, plan.spec)
    lines.append(datatype_decl_line(h, plan))
    lines.append(f"val inj : {inj_type(h, plan)}")
    lines.append(f"val prj : {prj_type(h, plan)}")
    lines.append(f"val map : {map_type(h, plan)}")
    return lines


def _inj_lines(plan: SpecPlan, indent: str) -> list[str]:
    # Clauses sharing a constructor would need suffixed functions; the plan
    # has already rejected those, so the bare name is always right.
    arms = [f"{_pattern(cp)} => {cp.clause.constructor}{_apply_args(cp)}" for cp in plan.clause_plans]
    return _case_lines("fun inj v =", arms, indent)


def _prj_lines(plan: SpecPlan) -> list[str]:
    branches = []
    for cp in plan.clause_plans:
        arity = len(cp.clause.args)
        if arity == 0:
            branches.append(f"{cp.clause.constructor} = fn () => {cp.primed}")
        else:
            names = ", ".join(f"x{k}" for k in range(1, arity + 1))
            pat = f"({names})" if arity > 1 else names
            branches.append(
                f"{cp.clause.constructor} = fn {pat} => {cp.primed}{_apply_args(cp)}"
            )
    return [f"fun prj v = dest v {{{', '.join(branches)}}}"]


def _map_lines(plan: SpecPlan, indent: str) -> list[str]:
    arms = []
    for cp in plan.clause_plans:
        arity = len(cp.clause.args)
        if arity == 0:
            arms.append(f"{cp.primed} => {cp.primed}")
            continue
        results = []
        for k, var in enumerate(cp.arg_vars, start=1):
            results.append(f"{_fun_name(var)} x{k}" if var is not None else f"x{k}")
        if arity > 1:
            body = "(" + ", ".join(results) + ")"
        else:
            body = f"({results[0]})" if " " in results[0] else results[0]
        arms.append(f"{_pattern(cp)} => {cp.primed} {body}")
    if not plan.tyvars:
        head = "fun map v ="
    elif len(plan.tyvars) == 1:
        head = f"fun map {_fun_name(plan.tyvars[0])} v ="
    else:
        params = ", ".join(_fun_name(v) for v in plan.tyvars)
        head = f"fun map ({params}) v ="
    return _case_lines(head, arms, indent)


def substructure_dt_struct_lines(h: Hierarchy, plan: SpecPlan, indent: str) -> list[str]:
    lines = [f"open {cap(plan.spec)}", datatype_decl_line(h, plan)]
    lines += _inj_lines(plan, indent)
    lines += _prj_lines(plan)
    lines += _map_lines(plan, indent)
    return lines


def _d_abbrev_line(h: Hierarchy, plan: SpecPlan, qualify: bool) -> str:
    head = dt_head(h, plan, dt_name(plan.spec))
    body = dt_head(h, plan, f"{cap(plan.spec)}.t'" if qualify else "t'")
    return f"type {head} = {body}"


def gen_dt(specset: SpecSet, h: Hierarchy, plan: DtPlan) -> GeneratedUnit:
    """Generate the `<Root>DT.sig` / `<Root>DT.sml` pair."""
    signame = sig_name(specset) + "_DT"
    structname = struct_name(specset) + "DT"
    base_struct = struct_name(specset)
    carrier_sig, _ = carrier_decl(specset)
    abstract, concrete = abbrev_lines(specset, h)

    sig = [f"signature {signame} =", "  sig", f"    {carrier_sig}", ""]
    sig += [f"    {line}" for line in abstract]
    sig.append("")
    sig += [f"    {line}" for line in concrete]
    for spec in h.preorder:
        sig.append("")
        sig.append(f"    structure {cap(spec)} :")
        sig.append("      sig")
        sig += [
            f"        {line}"
            for line in substructure_dt_sig_lines(specset, h, plan[spec])
        ]
        sig.append("      end")
    sig.append("")
    sig += [f"    {_d_abbrev_line(h, plan[spec], qualify=True)}" for spec in h.preorder]
    sig.append("  end")

    struct = [
        f"structure {structname} :> {signame} =",
        "  struct",
        f"    open {base_struct}",
    ]
    for spec in h.preorder:
        struct.append("")
        struct.append(f"    structure {cap(spec)} =")
        struct.append("      struct")
        struct += [
            f"        {line}"
            for line in substructure_dt_struct_lines(h, plan[spec], "  ")
        ]
        struct.append("      end")
    struct.append("")
    struct += [f"    {_d_abbrev_line(h, plan[spec], qualify=True)}" for spec in h.preorder]
    struct.append("  end")

    return GeneratedUnit(
        "\n".join(sig) + "\n",
        "\n".join(struct) + "\n",
        (f"{structname}.sig", f"{structname}.sml"),
    )
