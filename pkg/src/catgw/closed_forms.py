"""Closed-form expectations for low t-orders of the primitive form.

All sums run over ordered index tuples; terms whose splitting index falls
outside 0..n-1 are dropped.  Each function returns ``{s-index: series}``
(or a list of series for coordinates).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .coefficients import TSeries


def _add(out: dict[int, TSeries], l: int, term: TSeries, n: int) -> None:
    if 0 <= l <= n - 1:
        out[l] = out[l] + term if l in out else term


def J1_minus1(n: int, cap: int) -> dict[int, TSeries]:
    """J^{(1)}_{-1} = -sum_i t_i s_{n-1-i}."""
    out: dict[int, TSeries] = {}
    for i in range(n):
        _add(out, n - 1 - i, TSeries.var(n, cap, i, -1), n)
    return out


def J2_minus2(n: int, cap: int) -> dict[int, TSeries]:
    """J^{(2)}_{-2} = 1/2 sum_{i+j<=n-1} t_i t_j s_{n-1-i-j}."""
    out: dict[int, TSeries] = {}
    t = [TSeries.var(n, cap, i) for i in range(n)]
    for i, j in product(range(n), repeat=2):
        if i + j <= n - 1:
            _add(out, n - 1 - i - j, (t[i] * t[j]).scale(Fraction(1, 2)), n)
    return {l: c for l, c in out.items() if c}


def J2_minus1(n: int, cap: int) -> dict[int, TSeries]:
    """J^{(2)}_{-1} = sum_{i+j>=n+1} (j - n/2) t_i t_j s_{2n-i-j}."""
    out: dict[int, TSeries] = {}
    t = [TSeries.var(n, cap, i) for i in range(n)]
    for i, j in product(range(n), repeat=2):
        if i + j >= n + 1:
            _add(out, 2 * n - i - j, (t[i] * t[j]).scale(j - Fraction(n, 2)), n)
    return {l: c for l, c in out.items() if c}


def J3_minus2(n: int, cap: int) -> dict[int, TSeries]:
    """J^{(3)}_{-2} = sum_{i+j+k>=n+1} (n/6 - k/2) t_i t_j t_k s_{2n-i-j-k}."""
    out: dict[int, TSeries] = {}
    t = [TSeries.var(n, cap, i) for i in range(n)]
    for i, j, k in product(range(n), repeat=3):
        if i + j + k >= n + 1:
            coef = Fraction(n, 6) - Fraction(k, 2)
            _add(out, 2 * n - i - j - k, (t[i] * t[j] * t[k]).scale(coef), n)
    return {l: c for l, c in out.items() if c}


def flat_coordinates_quadratic(n: int, cap: int) -> list[TSeries]:
    """tau_k = -t_k + sum_{k+2<=j<=n-1} (j - n/2) t_{n+1+k-j} t_j + O(t^3)."""
    t = [TSeries.var(n, cap, i) for i in range(n)]
    out = []
    for k in range(n):
        tau = -t[k]
        for j in range(k + 2, n):
            tau = tau + (t[n + 1 + k - j] * t[j]).scale(j - Fraction(n, 2))
        out.append(tau)
    return out


def potential_derivative_top(n: int, cap: int) -> TSeries:
    """dF/dtau_{n-1} through cubic order, in flat coordinates:

    1/2 tau_0^2 + sum_{2<=j<=n-1} (n-2j)/2 tau_0 tau_j tau_{n+1-j}
                - sum_{i+j+k=n+1} (n/6 - k/2) tau_i tau_j tau_k.
    """
    tau = [TSeries.var(n, cap, i) for i in range(n)]
    out = (tau[0] * tau[0]).scale(Fraction(1, 2))
    for j in range(2, n):
        out = out + (tau[0] * tau[j] * tau[n + 1 - j]).scale(Fraction(n - 2 * j, 2))
    for i, j, k in product(range(n), repeat=3):
        if i + j + k == n + 1:
            out = out - (tau[i] * tau[j] * tau[k]).scale(Fraction(n, 6) - Fraction(k, 2))
    return out
