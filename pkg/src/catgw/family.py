"""The minimal A-infinity algebra A_n, its versal deformation and weights.

The algebra is spanned by an even unit ``1`` and an odd generator ``eps``.
Only the reduced action on strings of ``eps`` is stored; strict-unit
behaviour lives in :func:`mu_eval`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .coefficients import Exps, Number, TSeries


class Head(IntEnum):
    ONE = 0
    EPS = 1

    @property
    def parity(self) -> int:
        """Unshifted Z/2 degree: 0 for the unit, 1 for eps."""
        return int(self)

    @property
    def shifted_parity(self) -> int:
        return (int(self) + 1) % 2

    def __str__(self) -> str:
        return "1" if self is Head.ONE else "eps"


@dataclass(frozen=True)
class AlgElem:
    """``one * 1 + eps * eps`` with series coefficients."""

    one: TSeries
    eps: TSeries

    @classmethod
    def zero(cls, n: int, cap: int) -> "AlgElem":
        z = TSeries.zero(n, cap)
        return cls(z, z)

    @classmethod
    def unit(cls, n: int, cap: int, c: Number | TSeries = 1) -> "AlgElem":
        if not isinstance(c, TSeries):
            c = TSeries.const(n, cap, c)
        return cls(c, TSeries.zero(n, cap))

    def component(self, h: Head) -> TSeries:
        return self.one if h is Head.ONE else self.eps

    def __add__(self, other: "AlgElem") -> "AlgElem":
        return AlgElem(self.one + other.one, self.eps + other.eps)

    def scale(self, c: Number | TSeries) -> "AlgElem":
        if isinstance(c, TSeries):
            return AlgElem(self.one * c, self.eps * c)
        return AlgElem(self.one.scale(c), self.eps.scale(c))

    def is_zero(self) -> bool:
        return not self.one and not self.eps


@dataclass(frozen=True)
class Cochain:
    """Reduced Hochschild cochain: arity k -> value on eps^{(x)k}.

    Inputs containing the unit are sent to zero.  ``parity`` is the parity
    of the cochain as a map into the unshifted algebra (0 = even).
    """

    n: int
    cap: int
    values: Mapping[int, AlgElem]
    parity: int = 0

    def value(self, k: int) -> AlgElem:
        return self.values.get(k) or AlgElem.zero(self.n, self.cap)

    @property
    def key(self) -> tuple:
        """Hashable identity used to memoise per-word operator images."""
        return (self.n, self.cap, self.parity, tuple(sorted(self.values.items())))

    def arities(self) -> list[int]:
        return sorted(k for k, v in self.values.items() if not v.is_zero())

    def scale(self, c: Number | TSeries) -> "Cochain":
        return Cochain(self.n, self.cap, {k: v.scale(c) for k, v in self.values.items()}, self.parity)

    def __add__(self, other: "Cochain") -> "Cochain":
        vals = dict(self.values)
        for k, v in other.values.items():
            vals[k] = vals[k] + v if k in vals else v
        return Cochain(self.n, self.cap, vals, self.parity)

    def at_origin(self) -> "Cochain":
        def c0(s: TSeries) -> TSeries:
            return TSeries.const(s.n, s.cap, s.constant())

        return Cochain(
            self.n, self.cap,
            {k: AlgElem(c0(v.one), c0(v.eps)) for k, v in self.values.items()},
            self.parity,
        )


@dataclass(frozen=True)
class AnFamily:
    """Versal deformation of A_n over K[[t_0..t_{n-1}]] truncated at ``cap``.

    ``mu`` holds mu_k(eps,...,eps); the unit rules are implicit.
    """

    n: int
    cap: int
    mu: Cochain = field(repr=False)

    @property
    def nvars(self) -> int:
        return self.n

    def zero(self) -> TSeries:
        return TSeries.zero(self.n, self.cap)

    def const(self, c: Number) -> TSeries:
        return TSeries.const(self.n, self.cap, c)

    def t(self, j: int) -> TSeries:
        return TSeries.var(self.n, self.cap, j)

    def central_fiber(self) -> "AnFamily":
        return AnFamily(self.n, self.cap, self.mu.at_origin())

    def is_central(self) -> bool:
        return all(
            v.one.max_degree() in (None, 0) and v.eps.max_degree() in (None, 0)
            for v in self.mu.values.values()
        )


def make_family(n: int, cap: int, central: bool = False) -> AnFamily:
    """mu_j(eps^j) = t_j 1 for j < n and mu_{n+1}(eps^{n+1}) = 1/(n+1) 1.

    With ``central=True`` the t-terms are dropped (the algebra A_n itself,
    with coefficients still carried as series of the given cap).
    """
    if n < 1:
        raise ValueError(f"level n must be >= 1, got {n}")
    if cap < 1:
        raise ValueError(f"truncation order must be >= 1, got {cap}")
    vals: dict[int, AlgElem] = {}
    if not central:
        for j in range(n):
            vals[j] = AlgElem.unit(n, cap, TSeries.var(n, cap, j))
    vals[n + 1] = AlgElem.unit(n, cap, Fraction(1, n + 1))
    return AnFamily(n, cap, Cochain(n, cap, vals, parity=0))


def mu_eval(mu: Cochain, inputs: Sequence[Head], *, unit: bool = True) -> AlgElem:
    """Evaluate the structure maps on basis inputs.

    Strict unit in the shifted convention: mu_2(1, a) = a and
    mu_2(a, 1) = (-1)^{|a|} a; every other operation with a unit input
    vanishes.  ``unit=False`` drops the unit rules (used for derivatives of
    mu, which do not touch the unit).
    """
    n, cap = mu.n, mu.cap
    if Head.ONE in inputs:
        if not unit or len(inputs) != 2:
            return AlgElem.zero(n, cap)
        a, b = inputs
        if a is Head.ONE:
            return AlgElem.unit(n, cap) if b is Head.ONE else AlgElem(TSeries.zero(n, cap), TSeries.one(n, cap))
        # b is the unit, a = eps
        return AlgElem(TSeries.zero(n, cap), TSeries.const(n, cap, -1))
    return mu.value(len(inputs))


def cochain_eval(phi: Cochain, inputs: Sequence[Head]) -> AlgElem:
    if Head.ONE in inputs:
        return AlgElem.zero(phi.n, phi.cap)
    return phi.value(len(inputs))


def cyclic_pairing(a: AlgElem | Head, b: AlgElem | Head) -> TSeries | Fraction:
    """Odd pairing with <1, eps> = 1 and <eps, 1> = -1 (shifted-antisymmetric)."""
    if isinstance(a, Head) and isinstance(b, Head):
        if a is Head.ONE and b is Head.EPS:
            return Fraction(1)
        if a is Head.EPS and b is Head.ONE:
            return Fraction(-1)
        return Fraction(0)
    if isinstance(a, Head):
        a = _basis(a, b.one.n, b.one.cap)
    if isinstance(b, Head):
        b = _basis(b, a.one.n, a.one.cap)
    return a.one * b.eps - a.eps * b.one


def _basis(h: Head, n: int, cap: int) -> AlgElem:
    z, o = TSeries.zero(n, cap), TSeries.one(n, cap)
    return AlgElem(o, z) if h is Head.ONE else AlgElem(z, o)


def ks_map(n: int, cap: int, j: int) -> Cochain:
    """Kodaira-Spencer image of d/dt_j: the cochain [eps^j -> 1]."""
    if not 0 <= j <= n - 1:
        raise ValueError(f"direction j={j} outside 0..{n - 1}")
    return Cochain(n, cap, {j: AlgElem.unit(n, cap)}, parity=0)


def ks_euler_cochain(fam: AnFamily) -> Cochain:
    """sum_k (2 - k) mu_k, the class of the rescaling deformation at t = 1."""
    return Cochain(
        fam.n, fam.cap,
        {k: v.scale(2 - k) for k, v in fam.mu.values.items() if k != 2},
        parity=0,
    )


@dataclass(frozen=True)
class WeightTable:
    """Rational weights: wt(eps) = (n-1)/(n+1), wt(u) = -2.

    ``coef_weight(j)`` is the weight of t_j when it multiplies a chain
    (2j/(n+1) - 2); ``param_weight(j)`` is its weight inside mu
    (2 - 2j/(n+1)).
    """

    n: int

    @property
    def eps(self) -> Fraction:
        return Fraction(self.n - 1, self.n + 1)

    @property
    def u(self) -> Fraction:
        return Fraction(-2)

    def coef_weight(self, j: int) -> Fraction:
        return Fraction(2 * j, self.n + 1) - 2

    def param_weight(self, j: int) -> Fraction:
        return 2 - Fraction(2 * j, self.n + 1)

    def word(self, head: Head, tail: int) -> Fraction:
        if head is Head.ONE:
            return Fraction(2 * tail, self.n + 1)
        return Fraction(2 * tail + 1 - self.n, self.n + 1)

    def monomial(self, exps: Exps) -> Fraction:
        return sum((e * self.coef_weight(j) for j, e in enumerate(exps)), Fraction(0))


def weight_of(head: Head, tail: int, upow: int, exps: Iterable[int], wt: WeightTable) -> Fraction:
    return wt.word(head, tail) + wt.u * upow + wt.monomial(tuple(exps))


def euler_coefficients(n: int) -> list[Fraction]:
    """Coefficients 1 - j/(n+1) of the Euler field (= -coef_weight/2)."""
    return [1 - Fraction(j, n + 1) for j in range(n)]


def mu_weight(fam: AnFamily, k: int, wt: WeightTable) -> set[Fraction]:
    """Weights of mu_k (output minus inputs), t_j carrying its parameter weight."""
    out = set()
    v = fam.mu.value(k)
    for e, _ in v.one.items():
        pw = sum((x * wt.param_weight(j) for j, x in enumerate(e)), Fraction(0))
        out.add(pw - k * wt.eps)
    for e, _ in v.eps.items():
        pw = sum((x * wt.param_weight(j) for j, x in enumerate(e)), Fraction(0))
        out.add(pw + wt.eps - k * wt.eps)
    return out


def cyclic_functional(mu: Cochain, word: Sequence[Head]) -> TSeries | Fraction:
    """<mu_k(a_1..a_k), a_{k+1}> on a basis word of length k+1."""
    *args, last = word
    return cyclic_pairing(mu_eval(mu, args), last)


def rotation_sign(word: Sequence[Head]) -> int:
    """Koszul sign (shifted degrees) for moving the last entry to the front."""
    *rest, last = word
    s = last.shifted_parity * sum(h.shifted_parity for h in rest)
    return -1 if s % 2 else 1

