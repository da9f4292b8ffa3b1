from fractions import Fraction

import pytest

from catgw.chains import EPS, ONE, BarWord, TruncationError, UChain, cyclic_d, default_bar_cap
from catgw.coefficients import TSeries
from catgw.family import WeightTable, make_family, weight_of
from catgw.pairings import (
    NotClosedError, SplittingBasis, coproduct, decompose_class, family_hh_dimension,
    hochschild_homology, hres_pairing, mukai_pairing, splitting_s, splitting_uniqueness,
)


def eps(n, k, m=0, c=1, window=(0, 0), bar_cap=None):
    return UChain.word(BarWord(EPS, k), n, 1, max(k, 1) if bar_cap is None else bar_cap, window, m, c)


class TestHochschildHomology:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_dimension_parity_basis(self, n):
        rep = hochschild_homology(n)
        assert rep.dimension == n and rep.odd_dim == n and rep.even_dim == 0
        assert rep.basis == [BarWord(EPS, j) for j in range(n)]

    @pytest.mark.parametrize("n,order", [(1, 3), (2, 3), (3, 2), (2, 4)])
    def test_family_free_of_rank_n(self, n, order):
        d = family_hh_dimension(n, order)
        assert d["even"] == 0 and d["odd"] == n * d["ring_dim"]


class TestMukai:
    def test_examples(self):
        assert mukai_pairing(eps(3, 1), eps(3, 1)).constant() == 1
        assert mukai_pairing(eps(3, 0), eps(3, 0)).constant() == 0
        for n in range(1, 9):
            for i in range(n):
                assert mukai_pairing(eps(n, i), eps(n, n - 1 - i)).constant() == 1

    @pytest.mark.parametrize("n", range(1, 9))
    def test_table_symmetric_nondegenerate(self, n):
        table = [[mukai_pairing(eps(n, i), eps(n, j)).constant() for j in range(n)] for i in range(n)]
        assert table == [[int(i + j == n - 1) for j in range(n)] for i in range(n)]

    def test_rejects_unit_heads_and_u(self):
        one = UChain.word(BarWord(ONE, 1), 2, 1, 2, (0, 0))
        with pytest.raises(ValueError):
            mukai_pairing(one, eps(2, 0))
        with pytest.raises(ValueError):
            mukai_pairing(eps(2, 0, m=1, window=(0, 1)), eps(2, 1))


class TestHres:
    def test_sign_rule(self):
        a = eps(2, 0, m=1, window=(0, 2))
        b = eps(2, 1, window=(0, 2))
        assert hres_pairing(a, b).terms == {1: TSeries.const(2, 1, -1)}
        assert hres_pairing(eps(2, 0, window=(0, 2)), eps(2, 1, m=2, window=(0, 2))).terms == {
            2: TSeries.one(2, 1)
        }

    @pytest.mark.parametrize("n", range(1, 7))
    def test_splitting_pairs_to_constant_delta(self, n):
        U = 6
        for i in range(n):
            for j in range(n):
                p = hres_pairing(splitting_s(i, n, U), splitting_s(j, n, U))
                low = {k: v for k, v in p.terms.items() if k <= U}
                assert low == ({0: TSeries.one(n, 1)} if i + j == n - 1 else {})


class TestSplitting:
    def test_n2_j1(self):
        s = splitting_s(1, 2, 3)
        got = {(w.tail, m): c.constant() for (w, m), c in s.items()}
        assert got == {(1, 0): 1, (4, 1): -2, (7, 2): 10, (10, 3): -80}

    @pytest.mark.parametrize("n", range(1, 7))
    def test_closed_homogeneous_leading_term(self, n):
        central = make_family(n, 1, central=True)
        wt = WeightTable(n)
        for j in range(n):
            s = splitting_s(j, n, 6)
            assert not cyclic_d(s.with_bar_cap(s.bar_cap + n + 2), central)
            assert {(w, m) for (w, m), _ in s.items() if m == 0} == {(BarWord(EPS, j), 0)}
            weights = {weight_of(w.head, w.tail, m, [0] * n, wt) for (w, m), _ in s.items()}
            assert weights == {Fraction(2 * j + 1 - n, n + 1)}

    def test_index_error(self):
        with pytest.raises(ValueError):
            splitting_s(3, 3, 2)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_uniqueness(self, n):
        for k in range(n):
            for row in splitting_uniqueness(n, k, 5):
                assert row["ambiguity"] == 0 and row["solvable"]


class TestCoproduct:
    def test_examples(self):
        assert coproduct(BarWord(EPS, 2)) == [
            (BarWord(EPS, 0), BarWord(EPS, 2)), (BarWord(EPS, 1), BarWord(EPS, 1)),
            (BarWord(EPS, 2), BarWord(EPS, 0)),
        ]
        assert coproduct(BarWord(EPS, 0)) == [(BarWord(EPS, 0), BarWord(EPS, 0))]
        for k in range(20):
            assert len(coproduct(BarWord(EPS, k))) == k + 1

    def test_unit_head_rejected(self):
        with pytest.raises(ValueError):
            coproduct(BarWord(ONE, 2))


class TestDecompose:
    def setup_method(self):
        self.n = 3
        self.U = 4
        self.L = default_bar_cap(self.n, 1, self.U)
        self.basis = SplittingBasis(self.n, self.U, 1, bar_cap=self.L)

    def test_basis_element(self):
        x = self.basis.element(2, 0, (0, self.U))
        res = decompose_class(x, self.basis)
        assert res.coords == {(2, 0): TSeries.one(3, 1)} and not res.witness

    def test_exact_chain(self):
        n = self.n
        central = make_family(n, 1, central=True)
        w = UChain.word(BarWord(EPS, 2 * n), n, 1, self.L, (0, self.U))
        res = decompose_class(cyclic_d(w, central), self.basis)
        assert res.coords == {} and res.witness

    def test_scaled_negative_power_with_series(self):
        n, cap = self.n, 3
        basis = SplittingBasis(n, self.U, cap, bar_cap=self.L)
        t1 = TSeries.var(n, cap, 1)
        x = basis.element(0, -1, (-1, self.U)).scale(t1)
        assert decompose_class(x, basis).coords == {(0, -1): t1}

    def test_left_inverse_of_assembly(self):
        window = (-2, self.U)
        coords = {(0, -2): Fraction(3), (1, 0): Fraction(-1, 2), (2, 1): Fraction(5), (2, -1): Fraction(1)}
        coords = {k: TSeries.const(3, 1, v) for k, v in coords.items()}
        got = decompose_class(self.basis.assemble(coords, window), self.basis)
        assert got.coords == coords
        # and the reconstruction is exact: X = assemble(coords) + D(witness)
        central = make_family(3, 1, central=True)
        x = self.basis.assemble(coords, window)
        wit = got.witness.with_bar_cap(self.L + 4)
        rebuilt = self.basis.assemble(got.coords, window) + cyclic_d(wit, central).with_bar_cap(self.L)
        assert rebuilt.same_as(x)

    def test_not_closed(self):
        x = UChain.word(BarWord(EPS, 5), 3, 1, self.L, (0, self.U))
        with pytest.raises(NotClosedError):
            decompose_class(x, self.basis)

    def test_rank_deficiency_is_truncation(self):
        # 1|eps^L is closed, but its primitive eps|eps^{L+n} lies beyond bar_cap
        x = UChain.word(BarWord(ONE, self.L), 3, 1, self.L, (0, 0))
        with pytest.raises(TruncationError):
            decompose_class(x, self.basis)

    def test_family_decomposition(self):
        # a D_t-closed chain: the flat-frame element T^{-1}(s_j); its coordinates are {(j,0): 1}
        from catgw.chains import trivialization_apply
        n, cap = 2, 2
        fam = make_family(n, cap)
        basis = SplittingBasis(n, 6, cap, bar_cap=default_bar_cap(n, cap, 6))
        x = trivialization_apply(basis.element(1, 0, (0, 6)), fam, sign=+1)
        assert decompose_class(x, basis, fam).coords == {(1, 0): TSeries.one(n, cap)}
