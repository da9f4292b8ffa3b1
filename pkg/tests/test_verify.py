from fractions import Fraction

import pytest

from catgw.coefficients import TSeries
from catgw.verify import (
    check_closed_forms, check_correlators, check_stability, module_checks, solved,
)


@pytest.mark.parametrize("n", [1, 3, 6])
def test_module_checks_pass(n):
    failed = [(r.identity, r.counterexample) for r in module_checks(n) if not r.passed]
    assert failed == []


def test_module_checks_cover_every_module():
    names = {r.identity for r in module_checks(2)}
    for expected in (
        "coeff_c_recursion", "ring_axioms", "mu_weights", "cyclic_invariance",
        "differentials_square_zero", "operator_weights", "hochschild_homology", "family_hh_free_rank_n",
        "mukai_table", "coproduct", "splitting", "splitting_uniqueness", "decompose_left_inverse",
        "costello_invariants", "u_commutator", "ggm_chain_map", "trivialization_flatness",
        "good_splitting", "central_homogeneity", "closed_forms", "flat_coordinates", "correlators",
        "frobenius_structure", "primitive_axioms",
    ):
        assert expected in names


def test_closed_form_check_detects_tampering():
    n = 3
    st = solved(n, 4, 6, None)
    saved = st.J[1][0]
    try:
        st.J[1][0] = saved + TSeries.var(n, 4, 0, Fraction(1, 7))
        rep = check_closed_forms(n, 4, 6, None)
        assert not rep.passed and rep.counterexample["display"] == "J1_-1"
    finally:
        st.J[1][0] = saved


def test_stability_single_level():
    assert check_stability(2).passed


def test_correlators_n1():
    rep = check_correlators(1)
    assert rep.passed and "four_point_11nn" not in rep.data
