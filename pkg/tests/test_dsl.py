"""Parser and pretty-printer tests."""

import random
import string

import pytest

from specml.corpus import SOURCES
from specml.dsl import (
    Base,
    ConClause,
    DatatypeDecl,
    RecRef,
    TyVar,
    parse_declarations,
    pretty_print,
    tokenize,
)
from specml.errors import LexError, ParseError, SpecmlError


class TestParseExamples:
    def test_fmla_group(self):
        decl, specs = parse_declarations(SOURCES["fmla"])
        assert decl.name == "fmla"
        assert decl.typarams == ()
        assert len(decl.clauses) == 6
        assert [s.name for s in specs] == ["atom", "lit", "conj", "dnf"]
        assert [len(s.clauses) for s in specs] == [1, 2, 2, 2]

    def test_nat_without_withspec(self):
        decl, specs = parse_declarations("datatype nat = Zero | Succ of nat")
        assert specs == []
        assert decl == DatatypeDecl(
            "nat",
            (),
            (ConClause("Zero"), ConClause("Succ", (RecRef("nat"),))),
        )

    def test_even_odd_typarams(self):
        decl, specs = parse_declarations(SOURCES["evenodd"])
        assert decl.typarams == ("a",)
        assert [s.typarams for s in specs] == [("a",), ("a",)]
        odd = specs[1]
        assert odd.name == "odd"
        assert odd.clauses == (
            ConClause("Cons", (TyVar("a"), RecRef("even", ("a",)))),
        )

    def test_bare_names_resolve_against_group(self):
        decl, specs = parse_declarations(SOURCES["nat"])
        succ = specs[1].clauses[0]
        assert succ.args == (RecRef("nat"),)
        zero_of = decl.clauses[0]
        assert zero_of.args == ()

    def test_undeclared_name_stays_base(self):
        decl, _ = parse_declarations("datatype fmla = Var of string | Not of fmla")
        assert decl.clauses[0].args == (Base("string"),)

    def test_nullary_and_unit_argument_differ(self):
        decl, _ = parse_declarations("datatype b = T | F of unit")
        assert decl.clauses[0].args == ()
        assert decl.clauses[1].args == (Base("unit"),)

    def test_multi_typaram_binder(self):
        decl, _ = parse_declarations(
            "datatype ('k, 'v) assoc = Empty | Node of 'k * 'v * ('k, 'v) assoc"
        )
        assert decl.typarams == ("k", "v")
        assert decl.clauses[1].args[2] == RecRef("assoc", ("k", "v"))

    def test_comments_are_skipped(self):
        decl, _ = parse_declarations(
            "datatype (* the naturals *) nat = Zero | Succ of nat (* rec *)"
        )
        assert decl.name == "nat"

    def test_multi_clause_spec_allowed(self):
        _, specs = parse_declarations(SOURCES["dnf_lr"])
        dnf = specs[-1]
        assert [c.constructor for c in dnf.clauses] == ["False", "Or", "Or"]


class TestParseErrors:
    def test_lex_error_has_position(self):
        with pytest.raises(LexError) as e:
            parse_declarations("datatype nat = Zero | $ucc")
        assert (e.value.pos.line, e.value.pos.col) == (1, 23)

    def test_unterminated_comment(self):
        with pytest.raises(LexError, match="unterminated"):
            parse_declarations("datatype nat = Zero (* oops")

    def test_missing_equals(self):
        with pytest.raises(ParseError, match="expected '='"):
            parse_declarations("datatype nat Zero")

    def test_lowercase_constructor_rejected(self):
        with pytest.raises(ParseError, match="constructor"):
            parse_declarations("datatype nat = zero")

    def test_duplicate_root_constructor(self):
        with pytest.raises(ParseError, match="duplicate constructor 'Zero'"):
            parse_declarations("datatype nat = Zero | Zero")

    def test_duplicate_identical_clause_in_spec(self):
        with pytest.raises(ParseError, match="duplicate clause"):
            parse_declarations("datatype nat = Zero | Succ of nat withspec z = Zero | Zero")

    def test_duplicate_clause_with_different_args_ok(self):
        _, specs = parse_declarations(
            "datatype t = A | B of t * t withspec s = B of s * t | B of t * s"
        )
        assert len(specs[0].clauses) == 2

    def test_nested_product_is_syntax_error(self):
        with pytest.raises(ParseError):
            parse_declarations("datatype t = A of (t * t) * t")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError, match="end of input"):
            parse_declarations("datatype nat = Zero extra")

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_declarations("")


class TestPrettyPrint:
    @pytest.mark.parametrize("name", sorted(SOURCES))
    def test_round_trip(self, name):
        model = parse_declarations(SOURCES[name])
        reparsed = parse_declarations(pretty_print(*model))
        assert reparsed == model

    def test_no_withspec_keyword_without_specs(self):
        decl, specs = parse_declarations("datatype nat = Zero | Succ of nat")
        assert "withspec" not in pretty_print(decl, specs)

    def test_round_trip_is_stable(self):
        model = parse_declarations(SOURCES["evenodd"])
        once = pretty_print(*model)
        assert pretty_print(*parse_declarations(once)) == once


class TestTotality:
    """The parser reports every failure as a positioned error, never crashes."""

    def test_random_garbage(self):
        rng = random.Random(20240810)
        alphabet = string.ascii_letters + " '()|*=,\n\t09_$%"
        for _ in range(400):
            text = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 60)))
            try:
                parse_declarations(text)
            except SpecmlError as e:
                assert e.pos.line >= 1 and e.pos.col >= 1

    def test_mutated_valid_sources(self):
        rng = random.Random(7)
        for name, src in sorted(SOURCES.items()):
            for _ in range(60):
                i = rng.randrange(len(src))
                mutated = src[:i] + rng.choice("'(|*=") + src[i:]
                try:
                    parse_declarations(mutated)
                except SpecmlError as e:
                    assert e.pos.line >= 1

    def test_tokenizer_positions(self):
        toks = tokenize("datatype nat =\n  Zero")
        assert (toks[0].pos.line, toks[0].pos.col) == (1, 1)
        assert (toks[3].pos.line, toks[3].pos.col) == (2, 3)
