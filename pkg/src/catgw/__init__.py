"""Exact arithmetic engine for the genus-zero categorical Gromov-Witten
invariants of the A_n matrix-factorization category MF(x^{n+1}/(n+1)).

Modules
-------
coefficients  exact scalars, truncated power series, Laurent data in u
family        the A_infinity family A_n over K[[t_0..t_{n-1}]], weights
chains        reduced Hochschild chains with u-coefficients; b, B, caps
pairings      Mukai / higher residue pairings, splitting, decomposition
costello      the (0,3) and (1,1) categorical invariants
connections   u-direction and Getzler-Gauss-Manin connections, checks
solver        the primitive form, flat coordinates, potential, axioms
verify        identity sweeps and acceptance criteria
cli           command-line front end (``python3 -m catgw``)
"""
from .chains import TruncationError, UChain, BarWord, hoch_b, connes_B, cyclic_d
from .coefficients import TSeries, ULaurent, coeff_c, series_mul
from .connections import Report
from .costello import InvariantQuery, UnsupportedQuery, inv_03, inv_11, lambda_expansion, phi_iso
from .family import AnFamily, make_family
from .pairings import SplittingBasis, decompose_class, hochschild_homology, splitting_s
from .solver import (
    SolverError, SolverState, PotentialSeries, solve_primitive_form, flat_coordinates,
    potential_derivatives, correlator,
)

__all__ = [
    "TruncationError", "UChain", "BarWord", "hoch_b", "connes_B", "cyclic_d",
    "TSeries", "ULaurent", "coeff_c", "series_mul", "Report",
    "InvariantQuery", "UnsupportedQuery", "inv_03", "inv_11", "lambda_expansion", "phi_iso",
    "AnFamily", "make_family", "SplittingBasis", "decompose_class", "hochschild_homology",
    "splitting_s", "SolverError", "SolverState", "PotentialSeries", "solve_primitive_form",
    "flat_coordinates", "potential_derivatives", "correlator",
]
__version__ = "0.1.0"
