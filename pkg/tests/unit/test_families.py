"""
Tests for the etale families, their dimension identities and stabilizer chains
"""

import pytest

from src.algebra.families import (
    build_family, dim_chain, dim_identities, family_dims, helmstetter, so_chain,
    sp_E_only, sp_chain, stabilizer_chain_report, verify_by_reduction,
)
from src.algebra.rep import is_etale_at, is_homomorphism
from src.models.entities import FamilyName, Verdict
from src.models.errors import InvalidAlgebraError, StabilizerChainError


class TestDimensions:

    @pytest.mark.parametrize("n, expected", [(1, 4), (2, 24), (3, 76)])
    def test_sp_chain_sizes(self, n, expected):
        F = sp_chain(n, certify=False)
        assert F.algebra.dim == F.representation.dim_v == expected

    @pytest.mark.parametrize("n, expected", [(2, 2), (3, 8), (4, 20), (5, 40), (6, 70)])
    def test_so_chain_sizes(self, n, expected):
        F = so_chain(n, certify=False)
        assert F.algebra.dim == F.representation.dim_v == expected

    @pytest.mark.parametrize("n, expected", [(1, 8), (2, 40)])
    def test_sp_e_only_sizes(self, n, expected):
        F = sp_E_only(n, certify=False)
        assert F.algebra.dim == F.representation.dim_v == expected

    def test_helmstetter_size(self):
        F = helmstetter(certify=False)
        assert F.algebra.dim == F.representation.dim_v == 25

    def test_formulas_match_builders(self):
        for name, n in [("sp-chain", 2), ("so-chain", 4), ("sp-e-only", 1), ("helmstetter", 2)]:
            F = build_family(name, n, certify=False)
            assert family_dims(name, n) == (F.algebra.dim, F.representation.dim_v)

    def test_chain_dimension(self):
        assert [dim_chain(m) for m in range(2, 6)] == [2, 8, 20, 40]

    def test_identities(self):
        table = dim_identities(10)
        assert table.all_hold
        chain_rows = [r for r in table.rows if r.identity == "chain"]
        assert [r.parameter for r in chain_rows] == list(range(2, 11))
        sp_rows = {r.parameter: r.lhs for r in table.rows if r.identity == "sp-chain"}
        assert sp_rows[4] == 176
        so_rows = [r.parameter for r in table.rows if r.identity == "so-chain"]
        assert so_rows == list(range(2, 11))

    def test_identities_need_positive_range(self):
        with pytest.raises(InvalidAlgebraError):
            dim_identities(0)


class TestBuilders:

    def test_ranges(self):
        with pytest.raises(InvalidAlgebraError):
            sp_chain(0)
        with pytest.raises(InvalidAlgebraError):
            so_chain(1)
        with pytest.raises(InvalidAlgebraError):
            sp_E_only(0)
        with pytest.raises(InvalidAlgebraError):
            build_family("so-chain")

    def test_unknown_family(self):
        with pytest.raises(InvalidAlgebraError):
            build_family("gl-chain", 2)

    def test_alias(self):
        assert FamilyName.parse("Sp-Chain-E-Only") is FamilyName.SP_E_ONLY

    def test_sp_chain_is_a_representation(self):
        assert is_homomorphism(sp_chain(1, certify=False).representation)

    def test_sp_chain_point(self):
        F = sp_chain(1, certify=False)
        # e_2 in C^2, then [1; 0] in Mat_2,1
        assert F.canonical_point == (0, 1, 1, 0)

    def test_helmstetter_cites_no_super_etale_claim(self):
        F = helmstetter(certify=False)
        assert any("not super-etale" in c for c in F.citations)
        assert F.expected_stabilizer_chain == []


class TestVerdicts:

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_sp_chain_is_etale(self, n):
        F = sp_chain(n)
        assert not F.used_fallback
        report = is_etale_at(F.representation, F.point)
        assert report.verdict is Verdict.ETALE
        assert report.det_nonzero

    @pytest.mark.slow
    def test_sp_chain_four(self):
        F = sp_chain(4)
        assert F.representation.dim_v == 176
        assert is_etale_at(F.representation, F.point).verdict is Verdict.ETALE

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_so_chain_is_etale(self, n):
        F = so_chain(n)
        assert not F.used_fallback
        assert is_etale_at(F.representation, F.point).verdict is Verdict.ETALE

    @pytest.mark.parametrize("n", [1, 2])
    def test_sp_e_only_is_etale(self, n):
        F = sp_E_only(n)
        assert not F.used_fallback
        assert is_etale_at(F.representation, F.point).verdict is Verdict.ETALE

    def test_helmstetter_is_etale(self):
        F = helmstetter()
        assert F.certified is not None
        report = is_etale_at(F.representation, F.point)
        assert report.verdict is Verdict.ETALE
        assert report.stabilizer_dim == 0

    def test_reduction_matches(self):
        for F in (so_chain(4), sp_chain(2), sp_E_only(1)):
            assert verify_by_reduction(F) is Verdict.ETALE


class TestStabilizerChains:

    @pytest.mark.parametrize("n, first", [(2, 3), (3, 10)])
    def test_sp_chain_first_level(self, n, first):
        chain = stabilizer_chain_report(sp_chain(n, certify=False))
        assert chain.levels[0].kernel_dim == first
        assert chain.passed

    def test_sp_chain_levels(self):
        chain = stabilizer_chain_report(sp_chain(2, certify=False))
        assert [level.kernel_dim for level in chain.levels] == [3, 3, 0]
        assert all(level.pattern_ok for level in chain.levels)
        assert chain.final_algebra_dim == 0
        assert chain.remaining_dim == 0
        assert chain.reduction_verdict is chain.direct_verdict is Verdict.ETALE

    @pytest.mark.parametrize("n, first", [(2, 0), (3, 1), (4, 3), (5, 6)])
    def test_so_chain_first_level(self, n, first):
        chain = stabilizer_chain_report(so_chain(n, certify=False))
        assert chain.levels[0].kernel_dim == first
        assert chain.passed

    def test_so_chain_levels(self):
        chain = stabilizer_chain_report(so_chain(4, certify=False))
        assert [level.kernel_dim for level in chain.levels] == [3, 1, 0]

    def test_sp_e_only_levels(self):
        chain = stabilizer_chain_report(sp_E_only(2, certify=False))
        assert chain.levels[0].kernel_dim == 10
        assert [level.kernel_dim for level in chain.levels[1:]] == [3, 3, 0]
        assert chain.passed

    def test_helmstetter_has_no_chain(self):
        with pytest.raises(InvalidAlgebraError):
            stabilizer_chain_report(helmstetter(certify=False))

    def test_wrong_point_fails_strictly(self):
        F = so_chain(3, certify=False)
        F.canonical_point = tuple(0 for _ in F.canonical_point)
        chain = stabilizer_chain_report(F)
        assert not chain.passed
        assert not chain.levels[0].prehomogeneous
        with pytest.raises(StabilizerChainError):
            stabilizer_chain_report(F, strict=True)
