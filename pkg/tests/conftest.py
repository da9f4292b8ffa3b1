from fractions import Fraction

import pytest

from catgw.coefficients import TSeries


@pytest.fixture
def F():
    return Fraction


def series(n, cap, terms):
    """Shorthand: series(2, 3, {(1, 0): 1}) = t0."""
    return TSeries(n, cap, {tuple(e): Fraction(c) for e, c in terms.items()})
