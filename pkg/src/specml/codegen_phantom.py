"""Emit the phantom-types signature/structure pair for a hierarchy.

The generated unit hides the representation datatype behind an opaque
signature; every specialization gets a substructure with one constructor
function per clause, a destructor taking a record of branch functions, and
an identity coercion.  Phantom parameters make the type checker enforce the
hierarchy: constructor results use concrete encodings, argument positions
use abstract encodings with distinct fresh variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count

from .dsl import Base, ConClause, RecRef, TyVar
from .model import Hierarchy, SpecSet, lub


@dataclass(frozen=True)
class GeneratedUnit:
    sig_text: str
    struct_text: str
    filenames: tuple[str, str]


# --- naming ---

def cap(name: str) -> str:
    return name[0].upper() + name[1:]


def sig_name(specset: SpecSet) -> str:
    return specset.root.name.upper()


def struct_name(specset: SpecSet) -> str:
    return cap(specset.root.name)


def abstract_name(spec: str) -> str:
    return "A" + cap(spec)


def concrete_name(spec: str) -> str:
    return "C" + cap(spec)


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def fresh_vars(avoid: tuple[str, ...]):
    """Yield 'a, 'b, ... (without the tick), skipping the root's parameters."""
    for n in count():
        for ch in _LETTERS:
            name = ch if n == 0 else f"{ch}{n}"
            if name not in avoid:
                yield name


def type_app(args: list[str], name: str) -> str:
    if not args:
        return name
    if len(args) == 1:
        return f"{args[0]} {name}"
    return "(" + ", ".join(args) + f") {name}"


def abs_ref(h: Hierarchy, spec: str, var: str) -> str:
    """Abstract type reference, e.g. `'b AOdd` or `('a, 'b) AOdd`."""
    return type_app([f"'{v}" for v in h.typarams] + [f"'{var}"], abstract_name(spec))


def conc_ref(h: Hierarchy, spec: str) -> str:
    """Concrete type reference, e.g. `CFmla` or `'a CEven`."""
    return type_app([f"'{v}" for v in h.typarams], concrete_name(spec))


# --- per-spec typing ---

def constructor_functions(specset: SpecSet, h: Hierarchy, spec: str) -> list[tuple[str, ConClause]]:
    """(function name, clause) pairs; clauses sharing a constructor get
    numeric suffixes in clause order."""
    clauses = specset.entries[spec].clauses
    tally: dict[str, int] = {}
    for c in clauses:
        tally[c.constructor] = tally.get(c.constructor, 0) + 1
    seen: dict[str, int] = {}
    out = []
    for c in clauses:
        if tally[c.constructor] == 1:
            out.append((c.constructor, c))
        else:
            seen[c.constructor] = seen.get(c.constructor, 0) + 1
            out.append((f"{c.constructor}_{seen[c.constructor]}", c))
    return out


def clause_arg_types(h: Hierarchy, clause: ConClause) -> list[str]:
    """Argument types of a constructor function: abstract encodings with a
    distinct fresh variable at every recursive position."""
    fresh = fresh_vars(h.typarams)
    out = []
    for atom in clause.args:
        if isinstance(atom, RecRef):
            out.append(abs_ref(h, atom.target, next(fresh)))
        elif isinstance(atom, TyVar):
            out.append(f"'{atom.name}")
        else:
            out.append(atom.name)
    return out


def constructor_type(h: Hierarchy, spec: str, clause: ConClause) -> str:
    result = conc_ref(h, spec)
    if not clause.args:
        return result
    return " * ".join(clause_arg_types(h, clause)) + " -> " + result


def branch_fields(specset: SpecSet, h: Hierarchy, spec: str, result_var: str) -> list[tuple[str, str]]:
    """Destructor branch record: one field per distinct constructor.

    Recursive argument positions are typed at the pointwise least upper
    bound over the constructor's clauses, concretely encoded."""
    entry = specset.entries[spec]
    fields = []
    for con in specset.constructors(spec):
        group = [c for c in entry.clauses if c.constructor == con]
        root_clause = specset.root_clause(con)
        if root_clause.arity == 0:
            fields.append((con, f"unit -> '{result_var}"))
            continue
        parts = []
        for k, root_atom in enumerate(root_clause.args):
            if isinstance(root_atom, RecRef):
                target = group[0].args[k].target
                for c in group[1:]:
                    target = lub(h, target, c.args[k].target)
                parts.append(conc_ref(h, target))
            elif isinstance(root_atom, TyVar):
                parts.append(f"'{root_atom.name}")
            else:
                parts.append(root_atom.name)
        fields.append((con, " * ".join(parts) + f" -> '{result_var}"))
    return fields


def dest_type(specset: SpecSet, h: Hierarchy, spec: str) -> str:
    fresh = fresh_vars(h.typarams)
    arg_var = next(fresh)
    result_var = next(fresh)
    record = ", ".join(
        f"{con} : {ty}" for con, ty in branch_fields(specset, h, spec, result_var)
    )
    return f"{abs_ref(h, spec, arg_var)} -> {{{record}}} -> '{result_var}"


def coerce_type(h: Hierarchy, spec: str) -> str:
    fresh = fresh_vars(h.typarams)
    return f"{abs_ref(h, spec, next(fresh))} -> {conc_ref(h, spec)}"


# --- emission ---

def _rep_type_args(specset: SpecSet) -> str:
    return type_app([f"'{v}" for v in specset.root.typarams], "t")


def _rep_datatype_line(specset: SpecSet) -> str:
    rendered = []
    for c in specset.root.clauses:
        if not c.args:
            rendered.append(c.constructor)
            continue
        parts = []
        for atom in c.args:
            if isinstance(atom, TyVar):
                parts.append(f"'{atom.name}")
            elif isinstance(atom, Base):
                parts.append(atom.name)
            else:
                parts.append(_rep_type_args(specset))
        rendered.append(c.constructor + " of " + " * ".join(parts))
    return f"datatype {_rep_type_args(specset)} = " + " | ".join(rendered)


def carrier_decl(specset: SpecSet) -> tuple[str, str]:
    """(signature line, structure line) for the carrier type."""
    fresh = fresh_vars(specset.root.typarams)
    phantom = next(fresh)
    params = [f"'{v}" for v in specset.root.typarams] + [f"'{phantom}"]
    head = type_app(params, "t")
    rep = type_app([f"'{v}" for v in specset.root.typarams], "Rep.t")
    return f"type {head}", f"type {head} = {rep}"


def abbrev_lines(specset: SpecSet, h: Hierarchy) -> tuple[list[str], list[str]]:
    """Abstract and concrete type abbreviations, parents before children."""
    fresh = fresh_vars(specset.root.typarams)
    phantom = next(fresh)
    typarams = [f"'{v}" for v in h.typarams]
    abstract = []
    concrete = []
    for spec in h.preorder:
        head = type_app(typarams + [f"'{phantom}"], abstract_name(spec))
        if spec == h.root:
            body = type_app(typarams + [f"{{{spec}: '{phantom}}}"], "t")
        else:
            body = type_app(
                typarams + [f"{{{spec}: '{phantom}}}"], abstract_name(h.parent[spec])
            )
        abstract.append(f"type {head} = {body}")
        chead = type_app(typarams, concrete_name(spec))
        cbody = type_app(typarams + ["unit"], abstract_name(spec))
        concrete.append(f"type {chead} = {cbody}")
    return abstract, concrete


def substructure_sig_lines(specset: SpecSet, h: Hierarchy, spec: str) -> list[str]:
    lines = []
    for fun_name, clause in constructor_functions(specset, h, spec):
        lines.append(f"val {fun_name} : {constructor_type(h, spec, clause)}")
    lines.append(f"val dest : {dest_type(specset, h, spec)}")
    lines.append(f"val coerce : {coerce_type(h, spec)}")
    return lines


def _arm_args(arity: int) -> tuple[str, str]:
    """(pattern suffix, application suffix) for a case arm of given arity."""
    if arity == 0:
        return "", ""
    names = ", ".join(f"x{k}" for k in range(1, arity + 1))
    wrapped = f" ({names})" if arity > 1 else f" {names}"
    return wrapped, wrapped


def dest_struct_lines(specset: SpecSet, h: Hierarchy, spec: str, indent: str) -> list[str]:
    cons = specset.constructors(spec)
    record = ", ".join(cons)
    lines = [f"fun dest v {{{record}}} =", f"{indent}case v of"]
    first = True
    for con in cons:
        arity = specset.root_clause(con).arity
        pat, app = _arm_args(arity)
        lead = f"{indent}  " if first else f"{indent}| "
        call = f"{con}{app}" if arity else f"{con} ()"
        lines.append(f"{lead}Rep.{con}{pat} => {call}")
        first = False
    if len(cons) < len(specset.root.clauses):
        lines.append(f"{indent}| _ => raise Unreachable")
    return lines


def substructure_struct_lines(specset: SpecSet, h: Hierarchy, spec: str, indent: str) -> list[str]:
    lines = []
    for fun_name, clause in constructor_functions(specset, h, spec):
        lines.append(f"val {fun_name} = Rep.{clause.constructor}")
    lines.extend(dest_struct_lines(specset, h, spec, indent))
    lines.append("fun coerce v = v")
    return lines


def _needs_unreachable(specset: SpecSet) -> bool:
    total = len(specset.root.clauses)
    return any(
        len(specset.constructors(spec)) < total for spec in specset.names
    )


def gen_phantom(specset: SpecSet, h: Hierarchy) -> GeneratedUnit:
    """Generate the `<Root>.sig` / `<Root>.sml` pair."""
    signame = sig_name(specset)
    structname = struct_name(specset)
    carrier_sig, carrier_struct = carrier_decl(specset)
    abstract, concrete = abbrev_lines(specset, h)

    sig = [f"signature {signame} =", "  sig", f"    {carrier_sig}", ""]
    sig += [f"    {line}" for line in abstract]
    sig.append("")
    sig += [f"    {line}" for line in concrete]
    for spec in h.preorder:
        sig.append("")
        sig.append(f"    structure {cap(spec)} :")
        sig.append("      sig")
        sig += [f"        {line}" for line in substructure_sig_lines(specset, h, spec)]
        sig.append("      end")
    sig.append("  end")

    struct = [
        f"structure {structname} :> {signame} =",
        "  struct",
        "    structure Rep =",
        "      struct",
        f"        {_rep_datatype_line(specset)}",
        "      end",
        "",
        f"    {carrier_struct}",
        "",
    ]
    struct += [f"    {line}" for line in abstract]
    struct.append("")
    struct += [f"    {line}" for line in concrete]
    if _needs_unreachable(specset):
        struct.append("")
        struct.append("    exception Unreachable")
    for spec in h.preorder:
        struct.append("")
        struct.append(f"    structure {cap(spec)} =")
        struct.append("      struct")
        struct += [
            f"        {line}"
            for line in substructure_struct_lines(specset, h, spec, "  ")
        ]
        struct.append("      end")
    struct.append("  end")

    return GeneratedUnit(
        "\n".join(sig) + "\n",
        "\n".join(struct) + "\n",
        (f"{structname}.sig", f"{structname}.sml"),
    )


def render_even_odd(specset: SpecSet, h: Hierarchy) -> GeneratedUnit:
    """Phantom unit for a polymorphic even/odd-style hierarchy; identical
    code path to gen_phantom, kept as a named entry point for fixtures."""
    return gen_phantom(specset, h)
