from fractions import Fraction

import pytest

from catgw.chains import (
    EPS, BarWord, UChain, cap_B11, cap_b11, cyclic_d, default_bar_cap, ks_cochains,
    trivialization_apply,
)
from catgw.coefficients import TSeries
from catgw.connections import (
    BaseVectorField, check_connection_commutator, check_ggm_chain_map, check_good_splitting,
    check_trivialization_flatness, check_u_commutator, euler_field, ggm_connection,
    u_connection, u_connection_log,
)
from catgw.family import WeightTable, make_family
from catgw.pairings import SplittingBasis, decompose_central, splitting_s
from catgw.solver import solve_primitive_form


class TestUConnection:
    def test_pole_order_and_derivative(self):
        n = 3
        c = make_family(n, 1, central=True)
        x = UChain.word(BarWord(EPS, 1), n, 1, 20, (0, 3), 2)
        y = u_connection(x, c)
        assert min(u_connection(UChain.word(BarWord(EPS, 5), n, 1, 20, (0, 3)), c).upowers()) >= -2
        # d/du on alpha u^2 -> 2 alpha u; Gamma(eps|eps) = -eps|eps contributes -1/2 alpha u
        assert y.coeff(BarWord(EPS, 1), 1).constant() == 2 - Fraction(1, 2)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_preserves_closedness(self, n):
        c = make_family(n, 1, central=True)
        for j in range(n):
            s = splitting_s(j, n, 5, bar_cap=n - 1 + (n + 1) * 5 + n + 2)
            y = u_connection(s, c)
            assert not cyclic_d(y, c).restrict_u(None, 3)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_commutator_identity(self, n):
        assert check_u_commutator(make_family(n, 1, central=True)).passed
        assert check_u_commutator(make_family(n, 3)).passed

    def test_empty_range_is_vacuous(self):
        assert check_u_commutator(make_family(2, 1, central=True), upowers=()).passed


class TestGGM:
    def test_t_free_chain(self):
        n, cap = 3, 2
        fam = make_family(n, cap)
        x = UChain.word(BarWord(EPS, 4), n, cap, 20, (0, 2))
        for j in range(n):
            got = ggm_connection(BaseVectorField.partial(n, cap, j), x, fam)
            phi = ks_cochains(fam)[j]
            x1 = x.with_window((-1, 2))
            expect = cap_b11(phi, x1, fam).mul_u(-1).scale(-1) - cap_B11(phi, x1, fam)
            assert got.same_as(expect)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_chain_map_and_flatness(self, n):
        fam = make_family(n, 3)
        assert check_ggm_chain_map(fam).passed
        assert check_trivialization_flatness(fam).passed

    def test_vector_field_range(self):
        with pytest.raises(ValueError):
            BaseVectorField(2, 2, {2: TSeries.one(2, 2)})


class TestEuler:
    def test_n2(self):
        e = euler_field(2, 3)
        assert e.coeffs[0] == TSeries.var(2, 3, 0)
        assert e.coeffs[1] == TSeries.var(2, 3, 1, Fraction(2, 3))
        t0t1 = TSeries.var(2, 3, 0) * TSeries.var(2, 3, 1)
        assert e.apply(t0t1) == t0t1.scale(Fraction(5, 3))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_coefficients_are_minus_half_weights(self, n):
        wt = WeightTable(n)
        e = euler_field(n, 2)
        for j in range(n):
            assert e.coeffs[j].coeff(tuple(int(i == j) for i in range(n))) == -wt.coef_weight(j) / 2


class TestGoodSplitting:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_good_and_r(self, n):
        rep = check_good_splitting(SplittingBasis(n, 6))
        assert rep.passed
        assert rep.data["r"] == str(-Fraction(n - 1, 2 * (n + 1)))

    @pytest.mark.parametrize("n", range(2, 6))
    def test_perturbed_basis_fails(self, n):
        rep = check_good_splitting(SplittingBasis(n, 6), perturbation={0: [(1, 1, Fraction(1))]})
        assert not rep.passed and rep.counterexample

    @pytest.mark.parametrize("n", range(1, 6))
    def test_central_homogeneity(self, n):
        c = make_family(n, 1, central=True)
        wt = WeightTable(n)
        basis = SplittingBasis(n, 4, 1, bar_cap=default_bar_cap(n, 1, 4))
        for j in range(n):
            y = u_connection_log(basis.element(j, 0, (0, 4)), c)
            coords = {k: v.constant() for k, v in decompose_central(y).coords.items() if k[1] <= 2}
            expect = -wt.word(EPS, j) / 2
            assert coords == ({(j, 0): expect} if expect else {})


class TestTrivialization:
    def test_identity_at_origin(self):
        fam = make_family(2, 3)
        s = splitting_s(1, 2, 3, cap=3)
        y = trivialization_apply(s, fam).at_origin()
        assert y.restrict_u(None, s.u_max - 2).same_as(s.restrict_u(None, s.u_max - 2).with_window(y.u_window))

    def test_single_order_shape(self):
        n, cap = 3, 2
        fam = make_family(n, cap)
        s = splitting_s(n - 1, n, 3, cap=cap)
        y = trivialization_apply(s, fam) - s.with_window((-1, 3))
        assert min(y.upowers()) >= -1
        assert all(c.min_degree() == 1 for _, c in y.items())

    def test_commutator_on_zeta(self):
        st = solve_primitive_form(3, 4)
        assert check_connection_commutator(st.zeta, st.family).passed
