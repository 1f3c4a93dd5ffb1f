"""Phantom encodings and the unification property."""

from itertools import product

import pytest

from specml.corpus import SHIPPED, hierarchy, spec_set
from specml.encoding import (
    Carrier,
    Record,
    Substitution,
    UNIT,
    Var,
    encode_abstract,
    encode_concrete,
    render,
    unifiable,
    unify,
)
from specml.errors import UnificationError, ValidationError


class TestEncode:
    def test_abstract_lit(self):
        h = hierarchy("fmla")
        assert encode_abstract(h, "lit") == Carrier(
            (), Record("fmla", Record("lit", Var("a")))
        )

    def test_abstract_root(self):
        h = hierarchy("fmla")
        assert encode_abstract(h, "fmla") == Carrier((), Record("fmla", Var("a")))

    def test_abstract_atom_follows_tree_path(self):
        h = hierarchy("fmla")
        assert render(encode_abstract(h, "atom")) == "{fmla: {lit: {atom: 'a}}} t"

    def test_concrete_lit(self):
        h = hierarchy("fmla")
        assert render(encode_concrete(h, "lit")) == "{fmla: {lit: unit}} t"

    def test_concrete_root(self):
        h = hierarchy("fmla")
        assert encode_concrete(h, "fmla") == Carrier((), Record("fmla", UNIT))

    def test_concrete_dnf(self):
        h = hierarchy("fmla")
        assert render(encode_concrete(h, "dnf")) == "{fmla: {dnf: unit}} t"

    def test_polymorphic_carrier(self):
        h = hierarchy("evenodd")
        assert render(encode_abstract(h, "even", "b")) == "('a, {list: {even: 'b}}) t"

    def test_unknown_spec(self):
        with pytest.raises(ValidationError):
            encode_abstract(hierarchy("fmla"), "nope")


class TestUnify:
    def test_reflexive_case(self):
        h = hierarchy("fmla")
        s = unify(encode_concrete(h, "lit"), encode_abstract(h, "lit"))
        assert s.mapping == {"a": UNIT}

    def test_subtype_direction(self):
        h = hierarchy("fmla")
        assert unifiable(encode_concrete(h, "atom"), encode_abstract(h, "lit"))
        assert not unifiable(encode_concrete(h, "lit"), encode_abstract(h, "atom"))

    def test_everything_unifies_with_abstract_root(self):
        h = hierarchy("fmla")
        s = unify(encode_concrete(h, "conj"), encode_abstract(h, "fmla"))
        assert s.mapping == {"a": Record("conj", UNIT)}

    def test_label_clash(self):
        h = hierarchy("fmla")
        with pytest.raises(UnificationError, match="clash"):
            unify(encode_concrete(h, "conj"), encode_abstract(h, "dnf"))

    def test_occurs_check(self):
        with pytest.raises(UnificationError, match="occurs"):
            unify(Var("a"), Record("lit", Var("a")))

    def test_unit_record_mismatch(self):
        with pytest.raises(UnificationError):
            unify(UNIT, Record("lit", UNIT))

    def test_two_abstract_encodings(self):
        h = hierarchy("fmla")
        s = unify(encode_abstract(h, "lit", "a"), encode_abstract(h, "fmla", "b"))
        assert s.mapping == {"b": Record("lit", Var("a"))}

    def test_mgu_factors_other_unifiers(self):
        # Any unifier of the pair factors through the most general one.
        h = hierarchy("fmla")
        left = encode_abstract(h, "lit", "a")
        right = encode_abstract(h, "fmla", "b")
        mgu = unify(left, right)
        other = Substitution({"a": UNIT, "b": Record("lit", UNIT)})
        via = Substitution({"a": UNIT})
        for v in ("a", "b"):
            assert via.apply(mgu.apply(Var(v))) == other.apply(Var(v))

    def test_substitution_idempotent(self):
        h = hierarchy("fmla")
        s = unify(encode_concrete(h, "atom"), encode_abstract(h, "fmla"))
        enc = encode_abstract(h, "fmla")
        assert s.apply(s.apply(enc)) == s.apply(enc)


class TestRespectsHierarchy:
    """The central property: conc(s1) unifies with abst(s2) iff s1 <= s2."""

    @pytest.mark.parametrize("name", SHIPPED)
    def test_exhaustive_over_pairs(self, name):
        s, h = spec_set(name), hierarchy(name)
        for s1, s2 in product(s.names, s.names):
            got = unifiable(encode_concrete(h, s1), encode_abstract(h, s2))
            assert got == h.is_leq(s1, s2), (name, s1, s2)

    @pytest.mark.parametrize("name", SHIPPED)
    def test_prefix_characterization(self, name):
        s, h = spec_set(name), hierarchy(name)
        for s1, s2 in product(s.names, s.names):
            prefix = h.path[s1][: len(h.path[s2])] == h.path[s2]
            got = unifiable(encode_concrete(h, s1), encode_abstract(h, s2))
            assert got == prefix, (name, s1, s2)


class TestRender:
    def test_spacing_single_space_after_colon(self):
        h = hierarchy("fmla")
        assert render(encode_abstract(h, "lit")) == "{fmla: {lit: 'a}} t"

    def test_var_and_unit(self):
        assert render(Var("b")) == "'b"
        assert render(UNIT) == "unit"
