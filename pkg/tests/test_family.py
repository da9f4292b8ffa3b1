from fractions import Fraction
from itertools import product

import pytest

from catgw.coefficients import TSeries
from catgw.family import (
    AlgElem, Head, WeightTable, cyclic_functional, cyclic_pairing, euler_coefficients, ks_euler_cochain,
    ks_map, make_family, mu_weight, rotation_sign, weight_of,
)

ONE, EPS = Head.ONE, Head.EPS


class TestMakeFamily:
    def test_n2(self):
        fam = make_family(2, 3)
        t = lambda j: TSeries.var(2, 3, j)
        assert fam.mu.arities() == [0, 1, 3]
        assert fam.mu.value(0).one == t(0)
        assert fam.mu.value(1).one == t(1)
        assert fam.mu.value(3).one == TSeries.const(2, 3, Fraction(1, 3))
        assert all(not fam.mu.value(k).eps for k in range(5))

    def test_n1(self):
        fam = make_family(1, 2)
        assert fam.mu.arities() == [0, 2]
        assert fam.mu.value(2).one.constant() == Fraction(1, 2)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_central_fiber(self, n):
        c = make_family(n, 3).central_fiber()
        assert c.mu.arities() == [n + 1]
        assert c.mu.value(n + 1).one.constant() == Fraction(1, n + 1)
        assert c.is_central()

    def test_errors(self):
        with pytest.raises(ValueError):
            make_family(0, 2)


class TestCyclicPairing:
    def test_examples(self):
        assert cyclic_pairing(ONE, EPS) == 1
        assert cyclic_pairing(ONE, ONE) == 0
        a = AlgElem(TSeries.const(1, 1, 3), TSeries.const(1, 1, 5))
        assert cyclic_pairing(a, EPS) == 3

    @pytest.mark.parametrize("n", range(1, 6))
    def test_cyclic_invariance(self, n):
        mu = make_family(n, 1, central=True).mu
        for k in mu.arities():
            for word in product((ONE, EPS), repeat=k + 1):
                rot = (word[-1],) + word[:-1]
                assert cyclic_functional(mu, word) == rotation_sign(word) * cyclic_functional(mu, rot)


class TestKS:
    def test_ks_map(self):
        n = 4
        assert ks_map(n, 2, 0).arities() == [0]
        assert ks_map(n, 2, 0).value(0).one.constant() == 1
        last = ks_map(n, 2, n - 1)
        assert last.arities() == [n - 1]
        assert {ks_map(n, 2, j).arities()[0] for j in range(n)} == set(range(n))
        with pytest.raises(ValueError):
            ks_map(n, 2, n)

    def test_ks_euler(self):
        c = ks_euler_cochain(make_family(2, 2, central=True))
        assert c.arities() == [3]
        assert c.value(3).one.constant() == Fraction(-1, 3)
        fam3 = make_family(3, 2)
        e = ks_euler_cochain(fam3)
        assert e.value(2).is_zero()
        assert e.value(1).one == TSeries.var(3, 2, 1)


class TestWeights:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_examples(self, n):
        wt = WeightTable(n)
        z = [0] * n
        assert weight_of(EPS, n - 1, 0, z, wt) == Fraction(n - 1, n + 1)
        assert weight_of(ONE, 0, 0, z, wt) == 0
        for l in range(5):
            assert weight_of(EPS, n - 1 + (n + 1) * l, l, z, wt) == Fraction(n - 1, n + 1)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_mu_weights(self, n):
        fam = make_family(n, 4)
        wt = WeightTable(n)
        for k in fam.mu.arities():
            assert mu_weight(fam, k, wt) == {Fraction(2 - k)}

    def test_euler_coefficients(self):
        wt = WeightTable(5)
        assert euler_coefficients(5) == [-wt.coef_weight(j) / 2 for j in range(5)]
