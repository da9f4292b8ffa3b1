"""Exact scalars, truncated power series in t_0..t_{n-1}, and Laurent data in u.

Scalars are plain :class:`fractions.Fraction` values.  A :class:`TSeries`
stores a sparse map from exponent tuples to fractions and truncates by total
degree: every stored monomial has degree ``< cap``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Union

Scalar = Fraction
Exps = tuple[int, ...]
Number = Union[int, Fraction]


def as_scalar(x: Number | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def scalar_str(x: Number) -> str:
    """Canonical "p/q" string (integers print without a denominator)."""
    return str(Fraction(x))


def coeff_c(k: int, l: int, n: int) -> Fraction:
    """Product  prod_{j<l} (k + 1 + j(n+1)), with the empty product equal to 1."""
    if n < 1:
        raise ValueError(f"level n must be >= 1, got {n}")
    if not 0 <= k <= n - 1:
        raise ValueError(f"index k={k} outside 0..{n - 1}")
    if l < 0:
        raise ValueError(f"l must be nonnegative, got {l}")
    out = 1
    for j in range(l):
        out *= k + 1 + j * (n + 1)
    return Fraction(out)


def monomials(n: int, degree: int) -> Iterator[Exps]:
    """All exponent tuples of the given total degree, in a fixed order."""
    for combo in combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


class TSeries:
    """Truncated power series in ``n`` variables, total degree ``< cap``.

    Instances are immutable; arithmetic returns new objects.  Equality is
    structural (same ``n``, ``cap`` and terms).
    """

    __slots__ = ("n", "cap", "_terms")

    def __init__(self, n: int, cap: int, terms: Mapping[Exps, Number] | None = None):
        if n < 0 or cap < 0:
            raise ValueError("n and cap must be nonnegative")
        clean: dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent tuple {e} for n={n}")
            if sum(e) >= cap:
                continue
            c = as_scalar(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.n = n
        self.cap = cap
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, cap: int, terms: dict[Exps, Fraction]) -> "TSeries":
        obj = cls.__new__(cls)
        obj.n = n
        obj.cap = cap
        obj._terms = terms
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, n: int, cap: int) -> "TSeries":
        return cls._raw(n, cap, {})

    @classmethod
    def const(cls, n: int, cap: int, c: Number) -> "TSeries":
        c = as_scalar(c)
        if cap <= 0 or not c:
            return cls._raw(n, cap, {})
        return cls._raw(n, cap, {(0,) * n: c})

    @classmethod
    def one(cls, n: int, cap: int) -> "TSeries":
        return cls.const(n, cap, 1)

    @classmethod
    def var(cls, n: int, cap: int, j: int, c: Number = 1) -> "TSeries":
        if not 0 <= j < n:
            raise ValueError(f"variable index {j} outside 0..{n - 1}")
        e = [0] * n
        e[j] = 1
        return cls(n, cap, {tuple(e): c})

    @classmethod
    def monomial(cls, n: int, cap: int, exps: Exps, c: Number = 1) -> "TSeries":
        return cls(n, cap, {tuple(exps): c})

    # access ------------------------------------------------------------
    @property
    def terms(self) -> Mapping[Exps, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[Exps, Fraction]]:
        return self._terms.items()

    def coeff(self, exps: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def constant(self) -> Fraction:
        return self._terms.get((0,) * self.n, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def min_degree(self) -> int | None:
        return min((sum(e) for e in self._terms), default=None)

    def max_degree(self) -> int | None:
        return max((sum(e) for e in self._terms), default=None)

    def degree_part(self, d: int) -> "TSeries":
        return TSeries._raw(self.n, self.cap, {e: c for e, c in self._terms.items() if sum(e) == d})

    def degree_below(self, d: int) -> "TSeries":
        return TSeries._raw(self.n, self.cap, {e: c for e, c in self._terms.items() if sum(e) < d})

    # ring operations ---------------------------------------------------
    def _check(self, other: "TSeries") -> None:
        if self.n != other.n or self.cap != other.cap:
            raise ValueError(
                f"series mismatch: (n={self.n}, cap={self.cap}) vs (n={other.n}, cap={other.cap})"
            )

    def _coerce(self, other) -> "TSeries":
        if isinstance(other, TSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TSeries.const(self.n, self.cap, other)
        return NotImplemented

    def __add__(self, other) -> "TSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return TSeries._raw(self.n, self.cap, out)

    __radd__ = __add__

    def __neg__(self) -> "TSeries":
        return TSeries._raw(self.n, self.cap, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "TSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "TSeries":
        return (-self) + other

    def scale(self, c: Number) -> "TSeries":
        c = as_scalar(c)
        if not c:
            return TSeries._raw(self.n, self.cap, {})
        if c == 1:
            return self
        return TSeries._raw(self.n, self.cap, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other) -> "TSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TSeries):
            return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return TSeries._raw(self.n, self.cap, {})
        if len(a) > len(b):
            a, b = b, a
        cap = self.cap
        out: dict[Exps, Fraction] = {}
        for ea, ca in a.items():
            da = sum(ea)
            for eb, cb in b.items():
                if da + sum(eb) >= cap:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return TSeries._raw(self.n, cap, out)

    def __rmul__(self, other) -> "TSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "TSeries":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = TSeries.one(self.n, self.cap)
        for _ in range(k):
            out = out * self
        return out

    def mul_var(self, j: int, c: Number = 1) -> "TSeries":
        """Multiply by ``c * t_j`` (cheap path used by the chain operators)."""
        c = as_scalar(c)
        out: dict[Exps, Fraction] = {}
        if c:
            for e, v in self._terms.items():
                if sum(e) + 1 >= self.cap:
                    continue
                ee = list(e)
                ee[j] += 1
                out[tuple(ee)] = c * v
        return TSeries._raw(self.n, self.cap, out)

    # calculus ----------------------------------------------------------
    def derivative(self, j: int) -> "TSeries":
        out: dict[Exps, Fraction] = {}
        for e, c in self._terms.items():
            if e[j]:
                ee = list(e)
                ee[j] -= 1
                out[tuple(ee)] = c * e[j]
        return TSeries._raw(self.n, self.cap, out)

    def euler(self, weights: Iterable[Number]) -> "TSeries":
        """Apply ``sum_j w_j t_j d/dt_j``."""
        w = [as_scalar(x) for x in weights]
        out: dict[Exps, Fraction] = {}
        for e, c in self._terms.items():
            s = sum(wj * ej for wj, ej in zip(w, e))
            if s:
                out[e] = c * s
        return TSeries._raw(self.n, self.cap, out)

    def substitute(self, values: list["TSeries"]) -> "TSeries":
        """Compose: replace t_j by ``values[j]`` (each without constant term)."""
        if len(values) != self.n:
            raise ValueError("need one substitution per variable")
        if not values:
            return self
        m, cap = values[0].n, values[0].cap
        for v in values:
            if v.n != m or v.cap != cap:
                raise ValueError("substituted series must share n and cap")
            if v.constant():
                raise ValueError("substituted series must vanish at the origin")
        powers: dict[tuple[int, int], TSeries] = {}

        def power(j: int, k: int) -> TSeries:
            key = (j, k)
            if key not in powers:
                powers[key] = TSeries.one(m, cap) if k == 0 else power(j, k - 1) * values[j]
            return powers[key]

        out = TSeries.zero(m, cap)
        for e, c in self._terms.items():
            if sum(e) >= cap:
                continue
            term = TSeries.const(m, cap, c)
            for j, k in enumerate(e):
                if k:
                    term = term * power(j, k)
            out = out + term
        return out

    def with_cap(self, cap: int) -> "TSeries":
        return TSeries._raw(self.n, cap, {e: c for e, c in self._terms.items() if sum(e) < cap})

    # comparisons / output ---------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self == TSeries.const(self.n, self.cap, other)
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.n == other.n and self.cap == other.cap and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, self.cap, frozenset(self._terms.items())))

    def sorted_terms(self) -> list[tuple[Exps, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))

    def to_json(self) -> list:
        return [[list(e), scalar_str(c)] for e, c in self.sorted_terms()]

    def __repr__(self) -> str:
        return f"TSeries(n={self.n}, cap={self.cap}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"t{j}" if k == 1 else f"t{j}^{k}" for j, k in enumerate(e) if k
            )
            if not mono:
                parts.append(scalar_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{scalar_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


Coef = Union[Fraction, TSeries]


class ULaurent:
    """Finite Laurent polynomial in u with Fraction or TSeries coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Coef] | None = None):
        self._terms = {int(k): v for k, v in (terms or {}).items() if v}

    @property
    def terms(self) -> Mapping[int, Coef]:
        return dict(self._terms)

    def coeff(self, k: int, default: Coef = Fraction(0)) -> Coef:
        return self._terms.get(k, default)

    def powers(self) -> list[int]:
        return sorted(self._terms)

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._terms)

    def __add__(self, other: "ULaurent") -> "ULaurent":
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out[k] + v if k in out else v
        return ULaurent(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ULaurent):
            return NotImplemented
        return self._terms == other._terms

    def to_json(self) -> list:
        out = []
        for k in self.powers():
            v = self._terms[k]
            out.append([k, v.to_json() if isinstance(v, TSeries) else scalar_str(v)])
        return out

    def __repr__(self) -> str:
        body = " + ".join(f"({v})*u^{k}" for k, v in sorted(self._terms.items())) or "0"
        return f"ULaurent({body})"


def series_mul(a: TSeries, b: TSeries) -> TSeries:
    """Truncated product of two series over the same variables and cap."""
    return a * b
