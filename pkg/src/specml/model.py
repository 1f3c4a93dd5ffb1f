"""Validation of specializations and the induced subtyping hierarchy.

A specialization is generated by a subset of the root datatype's
constructors, with recursive argument positions refined to other
specializations.  Subtyping between specializations is the clause-wise
simulation preorder, computed as a greatest fixpoint; on validated input it
always forms a tree rooted at the datatype itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .dsl import Base, ConClause, DatatypeDecl, RecRef, SpecDecl, TyVar
from .errors import Pos, ValidationError


@dataclass(frozen=True)
class SpecEntry:
    """One specialization, with the root registered as the degenerate entry."""

    name: str
    typarams: tuple[str, ...]
    clauses: tuple[ConClause, ...]
    is_root: bool = False
    pos: Pos = field(default=Pos(), compare=False)


@dataclass
class SpecSet:
    """A validated root datatype plus its specializations, name-indexed.

    `entries` preserves declaration order and starts with the root's own
    synthetic entry (the root's clauses, recursive references reading as
    references to the root).
    """

    root: DatatypeDecl
    entries: dict[str, SpecEntry]
    _caches: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.entries)

    def root_clause(self, constructor: str) -> ConClause:
        return self._root_clauses()[constructor]

    def _root_clauses(self) -> dict[str, ConClause]:
        got = self._caches.get("root_clauses")
        if got is None:
            got = {c.constructor: c for c in self.root.clauses}
            self._caches["root_clauses"] = got
        return got

    def constructors(self, spec: str) -> tuple[str, ...]:
        """Distinct constructor names of a spec, in first-occurrence order."""
        return tuple(dict.fromkeys(c.constructor for c in self.entries[spec].clauses))

    def require(self, spec: str) -> SpecEntry:
        entry = self.entries.get(spec)
        if entry is None:
            raise ValidationError(f"unknown specialization '{spec}'")
        return entry


def _check_typarams(root: DatatypeDecl, spec: SpecDecl) -> None:
    if spec.typarams != root.typarams:
        want = ", ".join(f"'{v}" for v in root.typarams) or "none"
        got = ", ".join(f"'{v}" for v in spec.typarams) or "none"
        raise ValidationError(
            f"specialization '{spec.name}' must take the same type parameters as "
            f"'{root.name}' (expected {want}, found {got})",
            spec.pos,
        )


def _check_recref_application(root: DatatypeDecl, atom: RecRef) -> None:
    if atom.tyvars != root.typarams:
        if root.typarams:
            want = ", ".join(f"'{v}" for v in root.typarams)
            raise ValidationError(
                f"reference to '{atom.target}' must be applied to the type "
                f"parameters ({want}) in declaration order",
                atom.pos,
            )
        raise ValidationError(
            f"'{atom.target}' takes no type parameters", atom.pos
        )


def _check_clause(root: DatatypeDecl, spec_name: str, clause: ConClause, declared: frozenset[str]) -> None:
    root_clauses = {c.constructor: c for c in root.clauses}
    rc = root_clauses.get(clause.constructor)
    if rc is None:
        raise ValidationError(
            f"unknown constructor '{clause.constructor}' in specialization "
            f"'{spec_name}' ('{root.name}' declares no such constructor)",
            clause.pos,
        )
    if clause.arity != rc.arity:
        raise ValidationError(
            f"constructor '{clause.constructor}' takes {rc.arity} argument(s) "
            f"in '{root.name}' but {clause.arity} in specialization '{spec_name}'",
            clause.pos,
        )
    for k, (spec_atom, root_atom) in enumerate(zip(clause.args, rc.args), start=1):
        if isinstance(root_atom, RecRef):
            if isinstance(spec_atom, TyVar):
                raise ValidationError(
                    f"argument {k} of '{clause.constructor}' must be a "
                    f"specialization of '{root.name}', found ''{spec_atom.name}",
                    spec_atom.pos,
                )
            # A bare lowercase name that did not resolve is a reference to
            # an undeclared specialization.
            name = spec_atom.name if isinstance(spec_atom, Base) else spec_atom.target
            if isinstance(spec_atom, Base) or spec_atom.target not in declared:
                raise ValidationError(
                    f"unknown specialization '{name}' in argument {k} of "
                    f"'{clause.constructor}' (expected a specialization of "
                    f"'{root.name}')",
                    spec_atom.pos,
                )
        else:
            if type(spec_atom) is not type(root_atom) or spec_atom != root_atom:
                raise ValidationError(
                    f"cannot refine non-recursive argument {k} of "
                    f"'{clause.constructor}': '{root.name}' declares "
                    f"{_show(root_atom)}, specialization '{spec_name}' declares "
                    f"{_show(spec_atom)}",
                    spec_atom.pos,
                )


def _show(atom) -> str:
    if isinstance(atom, TyVar):
        return f"'{atom.name}"
    if isinstance(atom, Base):
        return f"'{atom.name}'"
    return f"'{atom.target}'"


def validate(decl: DatatypeDecl, specs: list[SpecDecl]) -> SpecSet:
    """Check the specializations against the root datatype.

    The root is registered as the degenerate specialization containing every
    clause.  Raises ValidationError on the first violation.
    """
    declared = frozenset({decl.name} | {s.name for s in specs})

    seen: set[str] = set()
    for spec in specs:
        if spec.name == decl.name:
            raise ValidationError(
                f"specialization may not reuse the datatype name '{decl.name}'", spec.pos
            )
        if spec.name in seen:
            raise ValidationError(f"duplicate specialization name '{spec.name}'", spec.pos)
        seen.add(spec.name)
        _check_typarams(decl, spec)

    # The root's own clauses may only reference the root.
    for clause in decl.clauses:
        for atom in clause.args:
            if isinstance(atom, RecRef):
                if atom.target != decl.name:
                    raise ValidationError(
                        f"datatype '{decl.name}' may only reference itself, "
                        f"found '{atom.target}'",
                        atom.pos,
                    )
                _check_recref_application(decl, atom)

    for spec in specs:
        for clause in spec.clauses:
            _check_clause(decl, spec.name, clause, declared)
            for atom in clause.args:
                if isinstance(atom, RecRef):
                    _check_recref_application(decl, atom)

    entries = {
        decl.name: SpecEntry(decl.name, decl.typarams, decl.clauses, is_root=True, pos=decl.pos)
    }
    for spec in specs:
        entries[spec.name] = SpecEntry(spec.name, spec.typarams, spec.clauses, pos=spec.pos)
    return SpecSet(decl, entries)


# --- subtyping preorder ---

def _simulates(specset: SpecSet, s1: str, s2: str, rel: set[tuple[str, str]]) -> bool:
    """One simulation step: every clause of s1 is matched by some clause of s2
    under the current relation."""
    e1, e2 = specset.entries[s1], specset.entries[s2]
    for c1 in e1.clauses:
        if not any(_clause_matches(specset, c1, c2, rel) for c2 in e2.clauses):
            return False
    return True


def _clause_matches(specset: SpecSet, c1: ConClause, c2: ConClause, rel: set[tuple[str, str]]) -> bool:
    if c1.constructor != c2.constructor or c1.arity != c2.arity:
        return False
    root_clause = specset.root_clause(c1.constructor)
    for a1, a2, ra in zip(c1.args, c2.args, root_clause.args):
        if isinstance(ra, RecRef):
            if (a1.target, a2.target) not in rel:
                return False
        elif a1 != a2:
            return False
    return True


def compute_subtyping(specset: SpecSet) -> frozenset[tuple[str, str]]:
    """Greatest fixpoint of the clause-wise simulation between specializations.

    Starts from the full relation and removes pairs until stable; the result
    is reflexive, transitive, and has the root as top element.
    """
    names = specset.names
    rel = {pair for pair in product(names, names)}
    changed = True
    while changed:
        changed = False
        for pair in sorted(rel):
            if not _simulates(specset, pair[0], pair[1], rel):
                rel.discard(pair)
                changed = True
    return frozenset(rel)


# --- tree form ---

@dataclass(frozen=True)
class Hierarchy:
    """The subtyping preorder plus its tree form.

    `path` maps each spec to the root-to-spec name sequence; `preorder` lists
    all specs depth-first with children in declaration order.
    """

    root: str
    typarams: tuple[str, ...]
    leq: frozenset[tuple[str, str]]
    parent: dict[str, str]
    path: dict[str, tuple[str, ...]]
    preorder: tuple[str, ...]

    def is_leq(self, s1: str, s2: str) -> bool:
        return (s1, s2) in self.leq

    def require(self, name: str) -> None:
        if name not in self.path:
            raise ValidationError(f"unknown specialization '{name}'")


def build_tree(specset: SpecSet, leq: frozenset[tuple[str, str]]) -> Hierarchy:
    """Derive parent/path from the preorder; rejects non-tree hierarchies."""
    names = specset.names
    order = {name: k for k, name in enumerate(names)}

    for s1, s2 in sorted(leq):
        if s1 != s2 and (s2, s1) in leq:
            raise ValidationError(
                f"equivalent specializations '{s1}' and '{s2}' (each simulates "
                f"the other) — merge or rename them",
                specset.entries[max(s1, s2, key=lambda n: order[n])].pos,
            )

    root = specset.root.name
    parent: dict[str, str] = {}
    for name in names:
        if name == root:
            continue
        ups = [t for t in names if t != name and (name, t) in leq]
        for u, v in product(ups, ups):
            if (u, v) not in leq and (v, u) not in leq:
                first, second = sorted((u, v))
                raise ValidationError(
                    f"hierarchy is not a tree: '{name}' has incomparable "
                    f"supertypes '{first}' and '{second}'",
                    specset.entries[name].pos,
                )
        parent[name] = next(t for t in ups if all((t, v) in leq for v in ups))

    path: dict[str, tuple[str, ...]] = {root: (root,)}

    def path_of(name: str) -> tuple[str, ...]:
        if name not in path:
            path[name] = path_of(parent[name]) + (name,)
        return path[name]

    for name in names:
        path_of(name)

    children: dict[str, list[str]] = {name: [] for name in names}
    for child, up in parent.items():
        children[up].append(child)
    preorder: list[str] = []

    def walk(name: str) -> None:
        preorder.append(name)
        for child in sorted(children[name], key=lambda n: order[n]):
            walk(child)

    walk(root)
    return Hierarchy(root, specset.root.typarams, leq, parent, path, tuple(preorder))


def compute_hierarchy(specset: SpecSet) -> Hierarchy:
    return build_tree(specset, compute_subtyping(specset))


def lub(h: Hierarchy, s1: str, s2: str) -> str:
    """Least upper bound: the lowest common ancestor in the tree."""
    h.require(s1)
    h.require(s2)
    common = h.root
    for a, b in zip(h.path[s1], h.path[s2]):
        if a != b:
            break
        common = a
    return common


# --- inhabitedness ---

def check_inhabited(specset: SpecSet) -> dict[str, bool]:
    """Least fixpoint: a spec is inhabited iff some clause has every recursive
    argument inhabited.  Drives warnings only; codegen proceeds regardless."""
    inhabited = {name: False for name in specset.names}
    changed = True
    while changed:
        changed = False
        for name, entry in specset.entries.items():
            if inhabited[name]:
                continue
            for clause in entry.clauses:
                if all(
                    inhabited[a.target] for a in clause.args if isinstance(a, RecRef)
                ):
                    inhabited[name] = True
                    changed = True
                    break
    return inhabited


# --- DOT export ---

def to_dot(h: Hierarchy) -> str:
    """Hierarchy as a DOT digraph: one edge child -> parent, root labeled."""
    lines = ["digraph hierarchy {"]
    lines.append(f'  "{h.root}" [label="{h.root} (root)"];')
    for name in h.preorder:
        if name != h.root:
            lines.append(f'  "{name}" -> "{h.parent[name]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
