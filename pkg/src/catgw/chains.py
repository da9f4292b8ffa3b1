"""Reduced Hochschild chains of the A_n family and their operators.

A basis chain is ``a_0 | eps^k`` (``a_0`` the unit or eps) times ``u^m``.
Coefficients are :class:`TSeries`.  Every operator acts word by word; the
image of a word is memoised.

Sign rules (fixed once, certified by the identities in the test-suite):

* tail entries are read with shifted degrees (eps is even there), so
  rotating tail blocks never produces a sign;
* the head is read with its unshifted degree whenever an odd operation
  (mu or a cap-inserted cochain, both odd after the shift) passes it;
* strict unit: mu_2(1, a) = a, mu_2(a, 1) = (-1)^{|a|} a.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

from .coefficients import Number, TSeries
from .family import AlgElem, AnFamily, Cochain, Head, cochain_eval, mu_eval


class TruncationError(RuntimeError):
    """A computation needed data beyond the configured truncation."""


class BarWord(NamedTuple):
    head: Head
    tail: int

    @property
    def parity(self) -> int:
        return 1 if self.head is Head.EPS else 0

    def __str__(self) -> str:
        return f"{self.head}|eps^{self.tail}"


ONE, EPS = Head.ONE, Head.EPS
Key = tuple[BarWord, int]


def eps_word(k: int) -> BarWord:
    return BarWord(EPS, k)


def one_word(k: int) -> BarWord:
    return BarWord(ONE, k)


def _mul(a: TSeries, b: TSeries) -> TSeries:
    if len(b) == 1:
        (e, c), = b.items()
        if not any(e):
            return a.scale(c)
    if len(a) == 1:
        (e, c), = a.items()
        if not any(e):
            return b.scale(c)
    return a * b


class UChain:
    """Finite combination of ``word * u^m`` with series coefficients.

    ``u_max`` is the truncation order in u (higher powers are dropped as
    O(u^{u_max+1})); ``u_min`` is the lowest power the chain may hold.
    A nonzero retained coefficient on a word longer than ``bar_cap`` raises
    :class:`TruncationError`.
    """

    __slots__ = ("n", "cap", "bar_cap", "u_min", "u_max", "_terms")

    def __init__(
        self,
        n: int,
        cap: int,
        bar_cap: int,
        u_window: tuple[int, int],
        terms: Mapping[Key, TSeries] | None = None,
    ):
        self.n, self.cap, self.bar_cap = n, cap, bar_cap
        self.u_min, self.u_max = u_window
        clean: dict[Key, TSeries] = {}
        for (w, m), c in (terms or {}).items():
            w = BarWord(Head(w[0]), int(w[1]))
            if not isinstance(c, TSeries):
                c = TSeries.const(n, cap, c)
            if c.n != n or c.cap != cap:
                raise ValueError("coefficient series do not match the chain")
            self._admit(clean, w, m, c)
        self._terms = clean

    def _admit(self, terms: dict[Key, TSeries], w: BarWord, m: int, c: TSeries) -> None:
        if not c or m > self.u_max:
            return
        if m < self.u_min:
            raise TruncationError(f"u-power {m} below window minimum {self.u_min} ({w})")
        if w.tail > self.bar_cap:
            raise TruncationError(f"word {w} at u^{m} exceeds bar_cap={self.bar_cap}")
        key = (w, m)
        old = terms.get(key)
        if old is not None:
            c = old + c
            if not c:
                del terms[key]
                return
        terms[key] = c

    def _like(self, terms: dict[Key, TSeries] | None = None, u_window: tuple[int, int] | None = None) -> "UChain":
        out = UChain.__new__(UChain)
        out.n, out.cap, out.bar_cap = self.n, self.cap, self.bar_cap
        out.u_min, out.u_max = u_window or (self.u_min, self.u_max)
        out._terms = {} if terms is None else terms
        return out

    # construction helpers ---------------------------------------------
    @classmethod
    def zero(cls, n: int, cap: int, bar_cap: int, u_window: tuple[int, int]) -> "UChain":
        return cls(n, cap, bar_cap, u_window)

    @classmethod
    def word(
        cls, w: BarWord, n: int, cap: int, bar_cap: int, u_window: tuple[int, int],
        upow: int = 0, coef: Number | TSeries = 1,
    ) -> "UChain":
        return cls(n, cap, bar_cap, u_window, {(w, upow): coef})

    def empty_like(self) -> "UChain":
        return self._like({})

    @property
    def u_window(self) -> tuple[int, int]:
        return (self.u_min, self.u_max)

    # access ------------------------------------------------------------
    def items(self) -> Iterable[tuple[Key, TSeries]]:
        return self._terms.items()

    @property
    def terms(self) -> dict[Key, TSeries]:
        return dict(self._terms)

    def coeff(self, w: BarWord, m: int = 0) -> TSeries:
        return self._terms.get((w, m)) or TSeries.zero(self.n, self.cap)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def upowers(self) -> list[int]:
        return sorted({m for (_, m) in self._terms})

    def max_tail(self) -> int:
        return max((w.tail for (w, _) in self._terms), default=-1)

    def heads(self) -> set[Head]:
        return {w.head for (w, _) in self._terms}

    # linear structure --------------------------------------------------
    def _merge_window(self, other: "UChain") -> tuple[int, int]:
        if (self.n, self.cap) != (other.n, other.cap):
            raise ValueError("chains over different coefficient rings")
        return (min(self.u_min, other.u_min), min(self.u_max, other.u_max))

    def __add__(self, other: "UChain") -> "UChain":
        win = self._merge_window(other)
        out = self._like({}, win)
        out.bar_cap = max(self.bar_cap, other.bar_cap)
        for src in (self, other):
            for (w, m), c in src._terms.items():
                if m <= win[1]:
                    out._admit(out._terms, w, m, c)
        return out

    def __neg__(self) -> "UChain":
        return self._like({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "UChain") -> "UChain":
        return self + (-other)

    def scale(self, c: Number | TSeries) -> "UChain":
        if isinstance(c, TSeries):
            return self._like({k: v for k, v in ((k, _mul(v, c)) for k, v in self._terms.items()) if v})
        if not c:
            return self._like({})
        return self._like({k: v.scale(c) for k, v in self._terms.items()})

    def mul_u(self, k: int) -> "UChain":
        """Multiply by u^k; the window moves with the chain."""
        return self._like(
            {(w, m + k): c for (w, m), c in self._terms.items()},
            (self.u_min + k, self.u_max + k),
        )

    def with_window(self, u_window: tuple[int, int]) -> "UChain":
        out = self._like({}, u_window)
        for (w, m), c in self._terms.items():
            out._admit(out._terms, w, m, c)
        return out

    def with_bar_cap(self, bar_cap: int) -> "UChain":
        out = self._like({})
        out.bar_cap = bar_cap
        for (w, m), c in self._terms.items():
            out._admit(out._terms, w, m, c)
        return out

    def with_t_cap(self, cap: int) -> "UChain":
        """Re-truncate the coefficients at total t-degree < cap."""
        out = self._like({})
        out.cap = cap
        for k, c in self._terms.items():
            c = c.with_cap(cap)
            if c:
                out._terms[k] = c
        return out

    def restrict_u(self, lo: int | None = None, hi: int | None = None) -> "UChain":
        """Projection onto the u-powers in [lo, hi] (the window is kept)."""
        lo = self.u_min if lo is None else lo
        hi = self.u_max if hi is None else hi
        return self._like({k: c for k, c in self._terms.items() if lo <= k[1] <= hi})

    def map_coefficients(self, f: Callable[[TSeries], TSeries]) -> "UChain":
        out = {}
        for k, c in self._terms.items():
            v = f(c)
            if v:
                out[k] = v
        return self._like(out)

    def t_degree_part(self, d: int) -> "UChain":
        return self.map_coefficients(lambda c: c.degree_part(d))

    def at_origin(self) -> "UChain":
        return self.map_coefficients(lambda c: c.degree_part(0))

    def derivative(self, j: int) -> "UChain":
        return self.map_coefficients(lambda c: c.derivative(j))

    def u_derivative(self) -> "UChain":
        out = self._like({}, (self.u_min - 1, self.u_max - 1))
        for (w, m), c in self._terms.items():
            if m:
                out._admit(out._terms, w, m - 1, c.scale(m))
        return out

    def same_as(self, other: "UChain") -> bool:
        """Equality of retained data on the common window."""
        hi = min(self.u_max, other.u_max)
        a = {k: c for k, c in self._terms.items() if k[1] <= hi}
        b = {k: c for k, c in other._terms.items() if k[1] <= hi}
        return a == b

    def __eq__(self, other) -> bool:
        if not isinstance(other, UChain):
            return NotImplemented
        return self.same_as(other) and self.u_max == other.u_max

    __hash__ = None  # type: ignore[assignment]

    # output -------------------------------------------------------------
    def dump(self) -> str:
        """Debug dump: ``head|eps^k u^p : series`` sorted by (u, tail, head)."""
        lines = []
        for (w, m), c in sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0].tail, kv[0][0].head)):
            lines.append(f"{w.head}|eps^{w.tail} u^{m} : {c}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"UChain(n={self.n}, cap={self.cap}, window={self.u_window}, terms={len(self._terms)})"


# ---------------------------------------------------------------------------
# word-level kernels.  Each returns {(BarWord, du): TSeries}.

Image = dict[tuple[BarWord, int], TSeries]


def _acc(img: Image, w: BarWord, du: int, c: TSeries) -> None:
    if not c:
        return
    key = (w, du)
    if key in img:
        v = img[key] + c
        if v:
            img[key] = v
        else:
            del img[key]
    else:
        img[key] = c


def _cochain_from_key(key: tuple) -> Cochain:
    n, cap, parity, items = key
    return Cochain(n, cap, dict(items), parity)


def _sign(bits: int) -> int:
    return -1 if bits % 2 else 1


def _rotation_sign(moved: list[Head], rest: list[Head], head_in_rest: bool) -> int:
    # tail entries carry shifted degrees; the head is read unshifted only
    # when an odd map passes it, which is not the case for a pure rotation.
    a = sum(h.shifted_parity for h in moved)
    b = sum(h.shifted_parity for h in rest)
    return _sign(a * b)


@lru_cache(maxsize=None)
def _b_image(mu_key: tuple, head: Head, k: int, unit: bool) -> Image:
    """Image of head|eps^k under the bar differential built from mu."""
    mu = _cochain_from_key(mu_key)
    img: Image = {}
    arities = set(mu.arities())
    # interior windows a_i..a_{i+r-1} (1 <= i), r >= 0; output lands in the tail
    for r in sorted(arities):
        if r > k:
            continue
        val = mu_eval(mu, (EPS,) * r, unit=unit)
        if not val.eps:
            continue  # unit outputs in a tail slot vanish in the reduced complex
        slots = k - r + 1
        for i in range(1, slots + 1):
            sign = _sign(head.parity + 0)  # mu passes the head; eps tails are even
            _acc(img, BarWord(head, k - r + 1), 0, val.eps.scale(sign))
    # wrap-around windows a_{k-p+1}..a_k, a_0, a_1..a_q
    sizes = set(arities)
    if unit:
        sizes.add(2)
    for m in sorted(sizes):
        if m < 1 or m - 1 > k:
            continue
        for p in range(m):
            q = m - 1 - p
            inputs = (EPS,) * p + (head,) + (EPS,) * q
            val = mu_eval(mu, inputs, unit=unit)
            if val.is_zero():
                continue
            sign = _rotation_sign([EPS] * p, [head] + [EPS] * (k - p), True)
            newk = k - p - q
            _acc(img, BarWord(ONE, newk), 0, val.one.scale(sign))
            _acc(img, BarWord(EPS, newk), 0, val.eps.scale(sign))
    return img


@lru_cache(maxsize=None)
def _B_image(n: int, cap: int, head: Head, k: int) -> Image:
    """Connes operator: 1 | (cyclic rotations of a_0|a_1..a_k); unit heads die."""
    img: Image = {}
    if head is ONE:
        return img
    for j in range(k + 1):
        sign = _rotation_sign([EPS] * (k - j), [EPS] * (j + 1), False)
        _acc(img, BarWord(ONE, k + 1), 1, TSeries.const(n, cap, sign))
    return img


@lru_cache(maxsize=None)
def _cap_b_image(phi_key: tuple, mu_key: tuple, head: Head, k: int) -> Image:
    """b^{1|1}(phi; -): a mu-window through a_0 with phi nested after a_0."""
    phi = _cochain_from_key(phi_key)
    mu = _cochain_from_key(mu_key)
    img: Image = {}
    mu_sizes = set(mu.arities()) | {2}
    phi_shift = (phi.parity + 1) % 2
    for r in phi.arities():
        if r > k:
            continue
        out = cochain_eval(phi, (EPS,) * r)
        for x in (ONE, EPS):
            cx = out.component(x)
            if not cx:
                continue
            for m in sorted(mu_sizes):
                # window: p before a_0, a_0, q, phi-output, s after
                extra = m - 2
                if extra < 0:
                    continue
                for p in range(extra + 1):
                    for q in range(extra - p + 1):
                        s = extra - p - q
                        if p + q + r + s > k:
                            continue
                        inputs = (EPS,) * p + (head,) + (EPS,) * q + (x,) + (EPS,) * s
                        val = mu_eval(mu, inputs)
                        if val.is_zero():
                            continue
                        sign = _sign(phi_shift * (head.parity + 0 * q))
                        newk = k - p - q - r - s
                        _acc(img, BarWord(ONE, newk), 0, _mul(val.one, cx).scale(sign))
                        _acc(img, BarWord(EPS, newk), 0, _mul(val.eps, cx).scale(sign))
    return img


@lru_cache(maxsize=None)
def _cap_B_image(phi_key: tuple, head: Head, k: int) -> Image:
    """B^{1|1}(phi; -): Connes rotation with phi inserted after a_0."""
    phi = _cochain_from_key(phi_key)
    img: Image = {}
    if head is ONE:
        return img
    for r in phi.arities():
        if r > k:
            continue
        out = cochain_eval(phi, (EPS,) * r).eps  # a unit in the tail vanishes
        if not out:
            continue
        count = sum(k - r - q + 1 for q in range(k - r + 1))
        _acc(img, BarWord(ONE, k + 2 - r), 1, out.scale(count))
    return img


def _apply(x: UChain, image: Callable[[Head, int], Image], u_shift_window: int = 0) -> UChain:
    out = x._like({}, (x.u_min + min(u_shift_window, 0), x.u_max + min(u_shift_window, 0)))
    terms = out._terms
    for (w, m), c in x._terms.items():
        for (w2, du), kc in image(w.head, w.tail).items():
            mm = m + du
            if mm > out.u_max:
                continue
            out._admit(terms, w2, mm, _mul(c, kc))
    return out


def hoch_b(x: UChain, fam: AnFamily) -> UChain:
    key = fam.mu.key
    return _apply(x, lambda h, k: _b_image(key, h, k, True))


def lie_derivative(phi: Cochain, x: UChain) -> UChain:
    """Bar differential with mu replaced by phi (no unit terms)."""
    key = phi.key
    return _apply(x, lambda h, k: _b_image(key, h, k, False))


def connes_B(x: UChain) -> UChain:
    n, cap = x.n, x.cap
    return _apply(x, lambda h, k: {kk: v for kk, v in _B_image(n, cap, h, k).items()})


def cyclic_d(x: UChain, fam: AnFamily) -> UChain:
    """b + uB."""
    return hoch_b(x, fam) + connes_B(x)


def cap_b11(phi: Cochain, x: UChain, fam: AnFamily) -> UChain:
    pk, mk = phi.key, fam.mu.key
    return _apply(x, lambda h, k: _cap_b_image(pk, mk, h, k))


def cap_B11(phi: Cochain, x: UChain, fam: AnFamily) -> UChain:
    pk = phi.key
    return _apply(x, lambda h, k: _cap_B_image(pk, h, k))


def gamma_op(x: UChain) -> UChain:
    """Gamma(a_0|a_1..a_k) = -k a_0|a_1..a_k."""
    return x._like({(w, m): c.scale(-w.tail) for (w, m), c in x._terms.items() if w.tail})


def basis_words(max_tail: int, heads: Iterable[Head] = (ONE, EPS)) -> Iterator[BarWord]:
    for k in range(max_tail + 1):
        for h in heads:
            yield BarWord(h, k)


def default_bar_cap(n: int, order: int, u_cap: int) -> int:
    return (n + 1) * (order + u_cap + 1) + n


def ks_cochains(fam: AnFamily) -> list[Cochain]:
    """phi_i = [eps^i -> 1], i = 0..n-1 (the Kodaira-Spencer classes)."""
    return [Cochain(fam.n, fam.cap, {i: AlgElem.unit(fam.n, fam.cap)}) for i in range(fam.n)]


def trivialization_apply(x: UChain, fam: AnFamily, order: int | None = None, sign: int = -1) -> UChain:
    """exp(sign * sum_i t_i b_i / u) applied to x, truncated at t-order ``order``.

    Each factor sum_i t_i b_i raises the t-order by one, so the exponential
    series stops after ``order - 1`` terms.  The u-window is extended
    downwards accordingly.  ``sign=+1`` gives the inverse operator.
    """
    order = fam.cap if order is None else order
    depth = max(order - 1, 0)
    x = x.with_window((x.u_min - depth, x.u_max))
    phis = ks_cochains(fam)
    ts = [TSeries.var(fam.n, fam.cap, i) for i in range(fam.n)]
    out, term = x, x
    for p in range(1, depth + 1):
        nxt = x.empty_like()
        for i in range(fam.n):
            nxt = nxt + cap_b11(phis[i], term, fam).scale(ts[i])
        # the window moves down with each u^{-1}: the top u-orders of the
        # result are only as reliable as the input allows
        term = nxt.mul_u(-1).scale(Fraction(sign, p))
        if term.is_zero():
            break
        out = out + term
    return out.map_coefficients(lambda c: c.degree_below(order))
