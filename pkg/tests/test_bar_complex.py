import pytest

from catgw.chains import (
    EPS, ONE, BarWord, TruncationError, UChain, basis_words, cap_B11, cap_b11, connes_B, cyclic_d,
    default_bar_cap, gamma_op, hoch_b, ks_cochains,
)
from catgw.coefficients import TSeries
from catgw.family import Cochain, AlgElem, WeightTable, make_family, weight_of
from catgw.pairings import splitting_s


def word(h, k, n=2, cap=1, bar_cap=20, window=(0, 2), m=0, c=1):
    return UChain.word(BarWord(h, k), n, cap, bar_cap, window, m, c)


def terms(x):
    return {(str(w), m): c for (w, m), c in x.items()}


class TestHochschildB:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_central_table(self, n):
        c = make_family(n, 1, central=True)
        for k in range(3 * (n + 1)):
            img = hoch_b(word(EPS, k, n, bar_cap=4 * n + 4), c)
            expect = {("1|eps^%d" % (k - n), 0)} if k >= n else set()
            assert set(terms(img)) == expect
            if k >= n:
                assert img.coeff(BarWord(ONE, k - n)).constant() == 1
            assert not hoch_b(word(ONE, k, n, bar_cap=4 * n + 4), c)

    def test_family_example_n2(self):
        fam = make_family(2, 3)
        img = hoch_b(word(EPS, 1, 2, cap=3), fam)
        # eps|eps -> t_1 * 1|eps; t_0 never enters b (its insertions cancel)
        assert terms(img) == {("1|eps^1", 0): TSeries.var(2, 3, 1)}

    def test_family_formula(self):
        n, cap = 4, 3
        fam = make_family(n, cap)
        for k in range(12):
            img = hoch_b(word(EPS, k, n, cap=cap, bar_cap=20), fam)
            expect = {}
            for j in range(1, n):
                if k - j + 1 >= 0:
                    expect[BarWord(ONE, k - j + 1)] = TSeries.var(n, cap, j, j)
            if k >= n:
                w = BarWord(ONE, k - n)
                expect[w] = expect.get(w, TSeries.zero(n, cap)) + TSeries.one(n, cap)
            assert {w: c for (w, _), c in img.items()} == {w: c for w, c in expect.items() if c}

    @pytest.mark.parametrize("n", range(1, 7))
    def test_square_zero_family(self, n):
        order = 4
        fam = make_family(n, order)
        L = default_bar_cap(n, order, order + 2)
        for w in basis_words(L - (n + 1)):
            x = UChain.word(w, n, order, L, (0, 2))
            assert not hoch_b(hoch_b(x, fam), fam)
            assert not connes_B(connes_B(x))
            assert not cyclic_d(cyclic_d(x, fam), fam)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_weights(self, n):
        fam = make_family(n, 3)
        wt = WeightTable(n)
        z = [0] * n
        for w in basis_words(3 * (n + 1)):
            x = UChain.word(w, n, 3, 5 * n + 5, (0, 1))
            w0 = weight_of(w.head, w.tail, 0, z, wt)
            for (w2, m), c in hoch_b(x, fam).items():
                for e, _ in c.items():
                    assert weight_of(w2.head, w2.tail, m, e, wt) == w0 - 1
            for (w2, m), _ in connes_B(x).items():
                assert m == 1 and weight_of(w2.head, w2.tail, 0, z, wt) == w0 + 1


class TestConnesB:
    def test_examples(self):
        assert terms(connes_B(word(EPS, 2))) == {("1|eps^3", 1): TSeries.const(2, 1, 3)}
        assert not connes_B(word(ONE, 5))
        assert terms(connes_B(word(EPS, 0))) == {("1|eps^1", 1): TSeries.one(2, 1)}

    def test_overflow_is_reported(self):
        with pytest.raises(TruncationError):
            connes_B(word(EPS, 20, bar_cap=20))

    def test_top_u_power_dropped_by_window(self):
        assert not connes_B(word(EPS, 2, window=(0, 0)))


class TestGamma:
    def test_examples(self):
        assert terms(gamma_op(word(EPS, 3))) == {("eps|eps^3", 0): TSeries.const(2, 1, -3)}
        assert not gamma_op(word(EPS, 0))
        x = word(EPS, 1, c=2) + word(ONE, 1)
        assert gamma_op(x).same_as(x.scale(-1))


class TestCaps:
    def test_arity_too_large_gives_zero(self):
        fam = make_family(3, 1, central=True)
        phi = Cochain(3, 1, {5: AlgElem.unit(3, 1)})
        x = word(EPS, 2, 3)
        assert not cap_b11(phi, x, fam)
        assert not cap_B11(phi, x, fam)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_cap_b_on_tails(self, n):
        fam = make_family(n, 1, central=True)
        phis = ks_cochains(fam)
        for i in range(n):
            for k in range(i, 3 * n):
                for h in (ONE, EPS):
                    img = cap_b11(phis[i], word(h, k, n, bar_cap=4 * n), fam)
                    assert terms(img) == {(f"{h}|eps^{k - i}", 0): TSeries.one(n, 1)}
                    # unit-valued cochains have no B^{1|1}
                    assert not cap_B11(phis[i], word(h, k, n, bar_cap=4 * n), fam)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_cartan_relation_on_cycles(self, n):
        c = make_family(n, 1, central=True)
        for w in basis_words(2 * n):
            x = UChain.word(w, n, 1, 4 * n + 4, (0, 0))
            if hoch_b(x, c):
                continue
            for phi in ks_cochains(c):
                assert not hoch_b(cap_b11(phi, x, c), c)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_order_one_oracle(self, n):
        # b_i(s_{n-1}) - s_{n-1-i} is divisible by u
        c = make_family(n, 1, central=True)
        phis = ks_cochains(c)
        s = splitting_s(n - 1, n, 4)
        for i in range(n):
            d = cap_b11(phis[i], s, c) - splitting_s(n - 1 - i, n, 4, bar_cap=s.bar_cap)
            assert 0 not in d.upowers()


class TestUChain:
    def test_invariants(self):
        x = word(EPS, 1) + word(EPS, 1, c=-1)
        assert not x and len(x) == 0
        with pytest.raises(TruncationError):
            word(EPS, 25, bar_cap=20)
        with pytest.raises(TruncationError):
            word(EPS, 1, window=(0, 2), m=-1)
        # above the window top: dropped (truncation in u)
        assert not word(EPS, 1, window=(0, 2), m=3)

    def test_parity(self):
        assert BarWord(EPS, 3).parity == 1 and BarWord(ONE, 3).parity == 0
