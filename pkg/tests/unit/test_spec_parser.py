"""
Tests for the module description parser
"""

import pytest

from src.algebra.families import build_family
from src.models.entities import FamilyName
from src.models.errors import ChainMismatchError, SpecSyntaxError
from src.utils.spec_parser import (
    family_spec_text, format_module_spec, match_family, parse_module_spec, parse_spec,
    shape_from_spec, tokenize,
)

SP2_CHAIN = "sp(2) x gl(3) x gl(2) x gl(1) : std(1) + chain"


class TestParse:

    @pytest.mark.parametrize("text, dim_g, dim_v", [
        (SP2_CHAIN, 24, 24),
        ("so(3) x gl(2) x gl(1) : chain", 8, 8),
        ("gl(1) : std(1) + std(1)", 1, 2),
        ("sl(2) x gl(1) : std(1) * std(2) + trivial", 4, 3),
        ("sl(3) : ad(1)", 8, 8),
        ("gl(2) : dual(1)", 4, 2),
        ("sp(1) x gl(2) x gl(1) : chain(3)", 8, 8),
    ])
    def test_dimensions(self, text, dim_g, dim_v):
        L, R = parse_spec(text)
        assert (L.dim, R.dim_v) == (dim_g, dim_v)

    def test_format_is_canonical(self):
        spec = parse_module_spec("so(3)x gl(2)\n  x gl(1):chain")
        assert format_module_spec(spec) == "so(3) x gl(2) x gl(1) : chain"
        assert parse_module_spec(format_module_spec(spec)) == spec

    @pytest.mark.parametrize("spaced, packed", [
        ("so(3) x gl(2) x gl(1) : chain", "so(3)xgl(2)xgl(1):chain"),
        ("sl(3) x gl(1) : std(1) * std(2)", "sl(3)xgl(1):std(1)*std(2)"),
        ("sp(1) x gl(2) x gl(1) : chain(3)", "sp(1)x\ngl(2)x gl(1):chain(3)"),
    ])
    def test_whitespace_is_insignificant(self, spaced, packed):
        assert parse_module_spec(packed) == parse_module_spec(spaced)
        assert parse_spec(packed)[1] == parse_spec(spaced)[1]

    def test_label_is_the_formatted_text(self):
        _, R = parse_spec("gl(1) :  std(1)+std(1)")
        assert R.label == "gl(1) : std(1) + std(1)"

    def test_tokens_carry_positions(self):
        tokens = list(tokenize("gl(2)\n x"))
        assert tokens[-2].text == "x"
        assert (tokens[-2].line, tokens[-2].column) == (2, 2)
        assert tokens[-1].kind == "eof"


class TestErrors:

    def test_missing_factor(self):
        with pytest.raises(SpecSyntaxError) as info:
            parse_module_spec("gl(2) x : std(1)")
        assert (info.value.line, info.value.column) == (1, 9)

    def test_sizes_start_at_one(self):
        with pytest.raises(SpecSyntaxError) as info:
            parse_module_spec("gl(0) : std(1)")
        assert info.value.column == 4

    def test_unexpected_character(self):
        with pytest.raises(SpecSyntaxError) as info:
            parse_module_spec("gl(2) : std(1) $")
        assert info.value.column == 16

    def test_unknown_factor_index_points_at_the_atom(self):
        with pytest.raises(SpecSyntaxError) as info:
            parse_spec("gl(2) :\n std(3)")
        assert (info.value.line, info.value.column) == (2, 2)
        assert "line 2" in str(info.value)

    def test_trailing_input(self):
        with pytest.raises(SpecSyntaxError):
            parse_module_spec("gl(2) : std(1) std(1)")

    def test_unknown_algebra(self):
        with pytest.raises(SpecSyntaxError):
            parse_module_spec("e(8) : std(1)")

    def test_chain_needs_consecutive_sizes(self):
        with pytest.raises(ChainMismatchError):
            parse_spec("gl(3) x gl(1) : chain")


class TestShapes:

    def test_tensor_shape(self):
        T = shape_from_spec("sl(3) x gl(1) : std(1) * std(2)")
        assert (T.core_dim, T.gl_size) == (3, 1)

    def test_product_core(self):
        T = shape_from_spec("sl(2) x sl(2) x gl(3) : std(1) * std(2) * std(3)")
        assert (T.core_dim, T.gl_size) == (4, 3)

    @pytest.mark.parametrize("text", [
        "sl(3) x sl(2) : std(1) * std(2)",
        "sl(3) x gl(1) : std(1) * std(2) + trivial",
        "sl(3) x gl(1) : std(2) * std(1)",
        "sl(3) x gl(1) : std(2) * std(2)",
        "gl(3) : std(1)",
    ])
    def test_rejected_shapes(self, text):
        with pytest.raises(SpecSyntaxError):
            shape_from_spec(text)


class TestFamilies:

    @pytest.mark.parametrize("name, n", [
        (FamilyName.SP_CHAIN, 2), (FamilyName.SO_CHAIN, 4),
        (FamilyName.SP_E_ONLY, 1), (FamilyName.HELMSTETTER, 2),
    ])
    def test_text_rebuilds_the_family(self, name, n):
        text = family_spec_text(name, n)
        _, R = parse_spec(text)
        F = build_family(name, n, certify=False)
        assert R == F.representation
        assert match_family(parse_module_spec(text)) == (name, n)

    def test_family_text(self):
        assert family_spec_text("sp-chain", 2) == SP2_CHAIN
        assert family_spec_text("sp-e-only", 1) == "sp(1) x gl(2) x gl(1) : chain(3)"

    def test_no_match(self):
        assert match_family(parse_module_spec("gl(1) : std(1)")) is None
        assert match_family(parse_module_spec("so(3) x gl(2) x gl(1) : chain + trivial")) is None
