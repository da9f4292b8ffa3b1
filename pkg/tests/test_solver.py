from fractions import Fraction
from itertools import product

import pytest

from catgw.chains import EPS, cap_b11, ks_cochains
from catgw.closed_forms import (
    J1_minus1, J2_minus1, J2_minus2, J3_minus2, flat_coordinates_quadratic, potential_derivative_top,
)
from catgw.coefficients import TSeries
from catgw.costello import inv_03, phi_iso
from catgw.family import WeightTable
from catgw.pairings import SplittingBasis
from catgw.solver import (
    PotentialSeries, SolverError, check_dimension_axiom, check_primitive_axioms, check_wdvv,
    correlator, fjr_reconstruction, flat_coordinates, invert_coordinates,
    scrambled_potential, solve_primitive_form,
)
from catgw.verify import potential, solved

NS = range(1, 7)


def nonzero(d):
    return {k: v for k, v in d.items() if v}


class TestSolver:
    @pytest.mark.parametrize("n", NS)
    def test_restriction_and_shape(self, n):
        st = solved(n)
        assert st.pieces[0].same_as(SplittingBasis(n, st.u_cap, st.order).s(n - 1).with_window(st.pieces[0].u_window))
        wt = WeightTable(n)
        for (w, m), c in st.zeta.items():
            assert m >= 0 and w.head is EPS
            for e, _ in c.items():
                assert wt.word(w.head, w.tail) - 2 * m + wt.monomial(e) == Fraction(n - 1, n + 1)
        assert st.r == -Fraction(n - 1, 2 * (n + 1))
        assert all(row["ambiguity"] == 0 for row in st.uniqueness)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_order_one(self, n):
        st = solved(n)
        fam, s = st.family, st.pieces[0]
        phis = ks_cochains(fam)
        sb = SplittingBasis(n, st.u_cap + 3, st.order, bar_cap=st.bar_cap)
        window = (-1, s.u_max)
        expect = s.empty_like().with_window(window)
        for i in range(n):
            term = cap_b11(phis[i], s, fam).with_window(window) - sb.element(n - 1 - i, 0, window)
            expect = expect + term.scale(TSeries.var(n, st.order, i)).mul_u(-1).with_window(window)
        got = st.pieces[1].map_coefficients(lambda c: c.degree_part(1)).with_window(window)
        assert (got - expect).restrict_u(None, st.u_cap - 1).is_zero()

    @pytest.mark.parametrize("n", NS)
    def test_displayed_J_terms(self, n):
        st = solved(n)
        cap = st.order
        assert nonzero(st.J_part(1, 1)) == nonzero(J1_minus1(n, cap))
        assert nonzero(st.J_part(2, 2)) == nonzero(J2_minus2(n, cap))
        assert nonzero(st.J_part(1, 2)) == nonzero(J2_minus1(n, cap))
        assert nonzero(st.J_part(2, 3)) == nonzero(J3_minus2(n, cap))

    def test_errors(self):
        with pytest.raises(ValueError):
            solve_primitive_form(0)
        with pytest.raises(ValueError):
            solve_primitive_form(2, 0)
        with pytest.raises(ValueError):
            solve_primitive_form(2, 4, u_cap=2)
        assert issubclass(SolverError, RuntimeError)

    def test_json(self):
        js = solved(2).to_json()
        assert js["r"] == "-1/6" and js["J"]["-1"]["s_0"] == [[[0, 1], "-1"]]


class TestFlatCoordinates:
    @pytest.mark.parametrize("n", NS)
    def test_quadratic(self, n):
        got = [c.degree_below(3) for c in flat_coordinates(solved(n))]
        assert got == [c.degree_below(3) for c in flat_coordinates_quadratic(n, 4)]
        assert got[n - 1] == TSeries.var(n, 4, n - 1, -1)
        if n >= 2:
            assert got[n - 2] == TSeries.var(n, 4, n - 2, -1)

    @pytest.mark.parametrize("n", NS)
    def test_inverse(self, n):
        pot = potential(n)
        for i, t in enumerate(pot.inverse):
            assert pot.coords[i].substitute(pot.inverse) == TSeries.var(n, 4, i)

    def test_inversion_failure(self):
        bad = [TSeries.var(2, 3, 0, 2), TSeries.var(2, 3, 1, -1)]
        with pytest.raises(ArithmeticError):
            invert_coordinates(bad)


class TestPotential:
    def test_n2_n3(self):
        t = lambda j, n: TSeries.var(n, 5, j)
        F2 = (t(0, 2) * t(0, 2) * t(1, 2)).scale(Fraction(1, 2)) + t(1, 2) ** 4 * Fraction(1, 24)
        assert potential(2).F == F2
        F3 = ((t(0, 3) ** 2) * t(2, 3)).scale(Fraction(1, 2)) + (t(0, 3) * t(1, 3) ** 2).scale(Fraction(1, 2)) \
            + (t(1, 3) ** 2 * t(2, 3) ** 2).scale(Fraction(1, 4))
        assert potential(3).F == F3

    @pytest.mark.parametrize("n", NS)
    def test_top_derivative_display(self, n):
        pot = potential(n)
        assert pot.derivs[n - 1].degree_below(4) == potential_derivative_top(n, 4).degree_below(4)

    @pytest.mark.parametrize("n", NS)
    def test_mixed_partials(self, n):
        assert potential(n).symmetry_residual() == []


class TestCorrelators:
    @pytest.mark.parametrize("n", range(2, 7))
    def test_values(self, n):
        pot = potential(n)
        for i, j in product(range(n), repeat=2):
            assert pot.correlator([i, j]) == (1 if i + j == n - 1 else 0)
        for i, j, k in product(range(n), repeat=3):
            assert pot.correlator([phi_iso(i, n), phi_iso(j, n), phi_iso(k, n)]) == inv_03(i, j, k, n)
        assert pot.correlator([1, 1, n - 1, n - 1]) == 1
        assert correlator(solved(n), [1, 1, n - 1, n - 1]) == 1

    def test_errors(self):
        pot = potential(3)
        with pytest.raises(ValueError):
            pot.correlator([0, 1, 2, 0, 1])
        with pytest.raises(ValueError):
            pot.correlator([0])
        with pytest.raises(ValueError):
            pot.correlator([0, 5])


class TestFrobenius:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_dimension_and_wdvv(self, n):
        pot = potential(n)
        rep = check_dimension_axiom(pot)
        assert rep.passed and rep.data["charge"] == str(3 - Fraction(n - 1, n + 1))
        assert check_wdvv(pot).passed
        assert fjr_reconstruction(pot).passed

    def test_dimension_weight_of_cubic(self):
        for n in range(2, 7):
            ec = [1 - Fraction(j, n + 1) for j in range(n)]
            assert 2 * ec[0] + ec[n - 1] == 3 - Fraction(n - 1, n + 1)

    def test_zero_potential_is_vacuous(self):
        pot = potential(2)
        zero = PotentialSeries(2, 4, pot.coords, pot.inverse, pot.derivs, TSeries.zero(2, 5))
        assert check_dimension_axiom(zero).passed
        assert check_wdvv(zero).passed

    @pytest.mark.parametrize("n", range(3, 7))
    def test_scrambled_control_fails(self, n):
        pot = potential(n)
        assert not check_wdvv(pot, scrambled_potential(pot)).passed

    def test_n1_trivial(self):
        assert check_wdvv(potential(1)).passed


class TestPrimitiveAxioms:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_all_pass(self, n):
        reps = check_primitive_axioms(solved(n))
        assert all(r.passed for r in reps.values()), {k: r.counterexample for k, r in reps.items()}
        assert reps["P4"].data["r"] == str(-Fraction(n - 1, 2 * (n + 1)))

    def test_order_three_n2(self):
        reps = check_primitive_axioms(solve_primitive_form(2, 3))
        assert all(r.passed for r in reps.values())

    @pytest.mark.parametrize("n", range(1, 6))
    def test_p1_matrix(self, n):
        mat = check_primitive_axioms(solved(n))["P1"].data["matrix_at_origin"]
        assert mat == [["-1" if i + j == n - 1 else "0" for j in range(n)] for i in range(n)]

    def test_detects_a_broken_zeta(self):
        st = solve_primitive_form(3, 4)
        st.pieces[1] = st.pieces[1].scale(2)
        reps = check_primitive_axioms(st)
        assert not reps["closed"].passed
