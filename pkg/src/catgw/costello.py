"""Low-genus categorical invariants: types (0,3) and (1,1).

Each invariant is evaluated as the composite of the Mukai pairing and the
coproduct to which the corresponding graph action reduces; inputs are
Hochschild classes [eps|eps^k].
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chains import EPS, BarWord, UChain
from .pairings import coproduct, mukai_pairing


class UnsupportedQuery(ValueError):
    """The requested invariant is not computed by this package."""


def _check_index(k: int, n: int, what: str = "index") -> None:
    if n < 1:
        raise ValueError(f"level n must be >= 1, got {n}")
    if not 0 <= k <= n - 1:
        raise ValueError(f"{what} {k} outside 0..{n - 1}")


def _muk(n: int, a: BarWord, b: BarWord) -> Fraction:
    x = UChain.word(a, n, 1, max(a.tail, 1), (0, 0))
    y = UChain.word(b, n, 1, max(b.tail, 1), (0, 0))
    return mukai_pairing(x, y).constant()


def inv_03(i: int, j: int, k: int, n: int) -> Fraction:
    """(1/2) sum over the coproduct of eps|eps^k of the paired products.

    (1/2) sum_{s+t=k} (<i, s><j, t> + <j, s><i, t>), with
    <a, b> the Mukai pairing of eps|eps^a and eps|eps^b.
    """
    for idx in (i, j, k):
        _check_index(idx, n)
    ei, ej = BarWord(EPS, i), BarWord(EPS, j)
    total = Fraction(0)
    for s, t in coproduct(BarWord(EPS, k)):
        total += _muk(n, ej, s) * _muk(n, ei, t) + _muk(n, ej, t) * _muk(n, ei, s)
    return total / 2


def inv_11(k: int, l: int, n: int) -> Fraction:
    """Type (1,1) invariant of [eps|eps^k] with descendant u^l (l in {0, 1}).

    l = 0 vanishes; l = 1 is (1/24) times the Mukai pairing applied to the
    coproduct of eps|eps^k.
    """
    _check_index(k, n)
    if l < 0:
        raise ValueError(f"descendant power must be >= 0, got {l}")
    if l >= 2:
        raise UnsupportedQuery(f"descendant power u^{l} is not computed (only l in {{0, 1}})")
    if l == 0:
        return Fraction(0)
    total = sum((_muk(n, a, b) for a, b in coproduct(BarWord(EPS, k))), Fraction(0))
    return total / 24


@dataclass(frozen=True)
class LambdaTerm:
    """Order-lambda term of the one-insertion Fock-module relation."""

    k: int
    pairs: tuple[tuple[int, int], ...]
    coefficient: Fraction
    correction: Fraction

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "pairs": [list(p) for p in self.pairs],
            "coefficient": str(self.coefficient),
            "correction": str(self.correction),
        }


def lambda_expansion(k: int, n: int) -> LambdaTerm:
    """Pairs (i, j) with i + j = k, coefficient 1/2, and the correction term

    sum_{i+j=k} (1/2) <(i+1) eps|eps^{i+n+1}, eps|eps^j>_Muk,

    which vanishes because i + n + 1 + j > n - 1.
    """
    _check_index(k, n)
    pairs = tuple((a.tail, b.tail) for a, b in coproduct(BarWord(EPS, k)))
    corr = Fraction(0)
    for i, j in pairs:
        corr += Fraction(i + 1, 2) * _muk(n, BarWord(EPS, i + n + 1), BarWord(EPS, j))
    return LambdaTerm(k, pairs, Fraction(1, 2), corr)


def phi_iso(i: int, n: int) -> int:
    """Index of the monomial x^{n-1-i} matching [eps|eps^i]."""
    _check_index(i, n)
    return n - 1 - i


def inv_03_table(n: int) -> dict[str, Fraction]:
    return {
        f"{i},{j},{k}": inv_03(i, j, k, n)
        for i in range(n) for j in range(i, n) for k in range(j, n)
    }


def inv_11_table(n: int) -> dict[str, Fraction]:
    return {f"k={k},l={l}": inv_11(k, l, n) for k in range(n) for l in (0, 1)}


@dataclass(frozen=True)
class InvariantQuery:
    """A single invariant request: ``kind`` is "0,3" (three indices, no
    descendant) or "1,1" (one index, descendant power ``descendant``)."""

    kind: str
    inputs: tuple[int, ...]
    descendant: int = 0

    def __post_init__(self):
        if self.kind == "0,3":
            if len(self.inputs) != 3 or self.descendant != 0:
                raise ValueError("(0,3) queries take three indices and no descendant")
        elif self.kind == "1,1":
            if len(self.inputs) != 1:
                raise ValueError("(1,1) queries take one index")
        else:
            raise ValueError(f"unknown genus-marking {self.kind!r}")

    def evaluate(self, n: int) -> Fraction:
        if self.kind == "0,3":
            return inv_03(*self.inputs, n)
        return inv_11(self.inputs[0], self.descendant, n)
