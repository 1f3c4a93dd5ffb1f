"""Validation, subtyping preorder, tree form, lub, inhabitedness."""

from itertools import product

import pytest

from specml.corpus import SHIPPED, hierarchy, spec_set
from specml.dsl import RecRef, parse_declarations
from specml.errors import ValidationError
from specml.model import (
    build_tree,
    check_inhabited,
    compute_hierarchy,
    compute_subtyping,
    lub,
    to_dot,
    validate,
    _simulates,
)
from specml.terms import enumerate_terms


def strict_pairs(h):
    return {(a, b) for a, b in h.leq if a != b}


def from_source(src):
    specset = validate(*parse_declarations(src))
    return specset, compute_hierarchy(specset)


class TestValidate:
    def test_fmla_has_five_entries(self):
        assert spec_set("fmla").names == ("fmla", "atom", "lit", "conj", "dnf")

    def test_root_entry_is_degenerate_spec(self):
        s = spec_set("fmla")
        root = s.entries["fmla"]
        assert root.is_root
        assert root.clauses == s.root.clauses

    def test_spec_may_reference_the_root(self):
        s = spec_set("nat")
        assert s.entries["nonzero"].clauses[0].args == (RecRef("nat"),)

    def test_unknown_specialization(self):
        src = (
            "datatype fmla = Var of string | Not of fmla"
            " | True | And of fmla * fmla | False | Or of fmla * fmla"
            " withspec conj = True | And of lit * conj"
        )
        with pytest.raises(ValidationError, match="unknown specialization 'lit'"):
            validate(*parse_declarations(src))

    def test_typaram_mismatch(self):
        src = "datatype 'a list = Nil | Cons of 'a * 'a list withspec 'b empty = Nil"
        with pytest.raises(ValidationError, match="same type parameters"):
            validate(*parse_declarations(src))

    def test_refining_base_position_rejected(self):
        src = "datatype fmla = Var of string | Not of fmla withspec bad = Var of int"
        with pytest.raises(ValidationError, match="non-recursive argument"):
            validate(*parse_declarations(src))

    def test_spec_reusing_root_name(self):
        src = "datatype nat = Zero | Succ of nat withspec nat = Zero"
        with pytest.raises(ValidationError, match="may not reuse"):
            validate(*parse_declarations(src))

    def test_duplicate_spec_names(self):
        src = "datatype nat = Zero | Succ of nat withspec z = Zero and z = Zero"
        with pytest.raises(ValidationError, match="duplicate specialization"):
            validate(*parse_declarations(src))


class TestSubtyping:
    def test_fmla_matches_published_hierarchy(self):
        h = hierarchy("fmla")
        assert strict_pairs(h) == {
            ("atom", "lit"),
            ("atom", "fmla"),
            ("lit", "fmla"),
            ("conj", "fmla"),
            ("dnf", "fmla"),
        }
        assert not h.is_leq("atom", "conj")
        assert not h.is_leq("lit", "dnf")
        assert not h.is_leq("conj", "dnf")

    def test_reflexive_and_root_top(self):
        for name in SHIPPED:
            h = hierarchy(name)
            s = spec_set(name)
            for spec in s.names:
                assert h.is_leq(spec, spec)
                assert h.is_leq(spec, h.root)

    def test_singleton_root(self):
        specset, h = from_source("datatype nat = Zero | Succ of nat")
        assert h.leq == frozenset({("nat", "nat")})
        assert h.parent == {}

    def test_even_odd_against_term_oracle(self):
        # Derive the expected relation from depth-5 term-set containment.
        s, h = spec_set("evenodd"), hierarchy("evenodd")
        sets = {name: set(enumerate_terms(s, name, 5)) for name in s.names}
        for a, b in product(s.names, s.names):
            assert h.is_leq(a, b) == (sets[a] <= sets[b]), (a, b)

    def test_transitive(self):
        for name in SHIPPED:
            h = hierarchy(name)
            for (a, b), (c, d) in product(h.leq, h.leq):
                if b == c:
                    assert (a, d) in h.leq

    def test_greatest_fixpoint_is_stable(self):
        # One more refinement step changes nothing.
        for name in SHIPPED:
            s, h = spec_set(name), hierarchy(name)
            rel = set(h.leq)
            for a, b in product(s.names, s.names):
                assert _simulates(s, a, b, rel) == ((a, b) in rel), (name, a, b)


class TestTree:
    def test_fmla_parents_and_paths(self):
        h = hierarchy("fmla")
        assert h.parent == {"atom": "lit", "lit": "fmla", "conj": "fmla", "dnf": "fmla"}
        assert h.path["atom"] == ("fmla", "lit", "atom")

    def test_lists_tree(self):
        h = hierarchy("lists")
        assert h.parent == {
            "empty": "list",
            "singleton": "nonempty",
            "nonempty": "list",
        }
        assert h.path["singleton"] == ("list", "nonempty", "singleton")

    def test_mutually_simulating_specs_rejected(self):
        src = "datatype nat = Zero | Succ of nat withspec a = Zero and b = Zero"
        specset = validate(*parse_declarations(src))
        with pytest.raises(ValidationError, match="equivalent specializations"):
            build_tree(specset, compute_subtyping(specset))

    def test_non_tree_hierarchy_reports_triple(self):
        src = (
            "datatype shape = A | B | C"
            " withspec ab = A | B and ac = A | C and onlya = A"
        )
        specset = validate(*parse_declarations(src))
        with pytest.raises(ValidationError) as e:
            build_tree(specset, compute_subtyping(specset))
        msg = str(e.value)
        assert "onlya" in msg and "ab" in msg and "ac" in msg


class TestLub:
    def test_paper_cases(self):
        h = hierarchy("fmla")
        assert lub(h, "conj", "dnf") == "fmla"
        assert lub(h, "atom", "lit") == "lit"

    def test_idempotent(self):
        h = hierarchy("fmla")
        for s in hierarchy("fmla").preorder:
            assert lub(h, s, s) == s

    @pytest.mark.parametrize("name", SHIPPED)
    def test_algebraic_laws(self, name):
        h = hierarchy(name)
        names = h.preorder
        for a, b in product(names, names):
            j = lub(h, a, b)
            assert j == lub(h, b, a)
            assert h.is_leq(a, j) and h.is_leq(b, j)
        for a, b, c in product(names, names, names):
            assert lub(h, a, lub(h, b, c)) == lub(h, lub(h, a, b), c)

    def test_unknown_name(self):
        with pytest.raises(ValidationError, match="unknown"):
            lub(hierarchy("fmla"), "atom", "nope")


class TestInhabited:
    def test_all_shipped_specs_inhabited(self):
        for name in SHIPPED:
            assert all(check_inhabited(spec_set(name)).values()), name

    def test_spec_without_base_case(self):
        src = (
            "datatype fmla = Var of string | Not of fmla"
            " | True | And of fmla * fmla | False | Or of fmla * fmla"
            " withspec noth = Not of noth"
        )
        specset = validate(*parse_declarations(src))
        flags = check_inhabited(specset)
        assert flags["noth"] is False
        assert flags["fmla"] is True

    def test_odd_is_inhabited(self):
        assert check_inhabited(spec_set("evenodd"))["odd"] is True


class TestDot:
    def test_fmla_digraph(self):
        assert to_dot(hierarchy("fmla")) == (
            "digraph hierarchy {\n"
            '  "fmla" [label="fmla (root)"];\n'
            '  "lit" -> "fmla";\n'
            '  "atom" -> "lit";\n'
            '  "conj" -> "fmla";\n'
            '  "dnf" -> "fmla";\n'
            "}\n"
        )
