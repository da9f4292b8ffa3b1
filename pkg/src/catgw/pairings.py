"""Pairings, the weight-preserving splitting, the coproduct and class
decomposition for the A_n family.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any

from .chains import (
    EPS, ONE, BarWord, TruncationError, UChain, cyclic_d, hoch_b, trivialization_apply,
)
from .coefficients import TSeries, ULaurent, coeff_c, monomials, scalar_str
from .family import AnFamily, WeightTable, make_family
from .linalg import Echelon


class NotClosedError(ValueError):
    """Input to a decomposition is not (b+uB)-closed."""


# ---------------------------------------------------------------------------
# pairings

def _eps_terms(x: UChain, what: str):
    for (w, m), c in x.items():
        if w.head is ONE:
            raise ValueError(f"{what}: unit-head word {w} is not a canonical representative")
        yield w.tail, m, c


def mukai_pairing(x: UChain, y: UChain) -> TSeries:
    """<eps|eps^i, eps|eps^j> = delta_{i+j=n-1}, extended bilinearly.

    Both inputs must be u-free and carry only eps-head words.
    """
    if x.n != y.n:
        raise ValueError("chains of different levels")
    n = x.n
    total = TSeries.zero(n, x.cap)
    ys: dict[int, TSeries] = {}
    for j, m, c in _eps_terms(y, "mukai_pairing"):
        if m != 0:
            raise ValueError("mukai_pairing: inputs must be u-free")
        ys[j] = c
    for i, m, c in _eps_terms(x, "mukai_pairing"):
        if m != 0:
            raise ValueError("mukai_pairing: inputs must be u-free")
        other = ys.get(n - 1 - i)
        if other is not None:
            total = total + c * other
    return total


def mukai_table(n: int) -> list[list[int]]:
    return [[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)]


def hres_pairing(x: UChain, y: UChain) -> ULaurent:
    """<a u^i, b u^j> = (-1)^i <a, b>_Muk u^{i+j}, with series coefficients."""
    if x.n != y.n:
        raise ValueError("chains of different levels")
    n, cap = x.n, x.cap
    out: dict[int, TSeries] = {}
    ys: dict[int, list[tuple[int, TSeries]]] = {}
    for j, b, c in _eps_terms(y, "hres_pairing"):
        ys.setdefault(j, []).append((b, c))
    for i, a, c in _eps_terms(x, "hres_pairing"):
        for b, d in ys.get(n - 1 - i, ()):
            v = c * d
            if a % 2:
                v = -v
            out[a + b] = out.get(a + b, TSeries.zero(n, cap)) + v
    return ULaurent({k: v for k, v in out.items() if v})


def hres_coords(x: dict[tuple[int, int], Any], y: dict[tuple[int, int], Any], n: int) -> dict[int, Any]:
    """Higher residue pairing of two coordinate vectors over {u^m s_j}.

    Uses <u^a s_i, u^b s_j> = (-1)^a delta_{i+j=n-1} u^{a+b}.
    """
    out: dict[int, Any] = {}
    for (i, a), c in x.items():
        for (j, b), d in y.items():
            if i + j != n - 1:
                continue
            v = c * d
            if a % 2:
                v = -v
            out[a + b] = out[a + b] + v if a + b in out else v
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# coproduct

def coproduct(x: BarWord) -> list[tuple[BarWord, BarWord]]:
    """eps|eps^k -> sum_{i+j=k} eps|eps^i (x) eps|eps^j."""
    if x.head is not EPS:
        raise ValueError(f"coproduct is defined on eps-head words only, got {x}")
    return [(BarWord(EPS, i), BarWord(EPS, x.tail - i)) for i in range(x.tail + 1)]


# ---------------------------------------------------------------------------
# splitting

def splitting_s(
    j: int, n: int, u_cap: int, *, cap: int = 1, bar_cap: int | None = None,
    u_min: int | None = None,
) -> UChain:
    """s_j = sum_l (-1)^l c_{j,l} eps|eps^{j+(n+1)l} u^l, for l <= u_cap."""
    if not 0 <= j <= n - 1:
        raise ValueError(f"splitting index {j} outside 0..{n - 1}")
    need = j + (n + 1) * u_cap
    bar_cap = need if bar_cap is None else bar_cap
    terms = {}
    for l in range(u_cap + 1):
        terms[(BarWord(EPS, j + (n + 1) * l), l)] = coeff_c(j, l, n) * (-1) ** l
    return UChain(n, cap, bar_cap, (0 if u_min is None else u_min, u_cap), terms)


@dataclass(frozen=True)
class SplittingBasis:
    """The weight-preserving splitting {s_j} truncated at u^{u_cap}."""

    n: int
    u_cap: int
    cap: int = 1
    bar_cap: int | None = None

    def __post_init__(self):
        if self.bar_cap is None:
            object.__setattr__(self, "bar_cap", self.n - 1 + (self.n + 1) * self.u_cap)

    def s(self, j: int) -> UChain:
        return splitting_s(j, self.n, self.u_cap, cap=self.cap, bar_cap=self.bar_cap)

    def element(self, j: int, m: int, u_window: tuple[int, int]) -> UChain:
        """u^m s_j inside the given u-window (truncated at its top)."""
        top = u_window[1] - m
        if top < 0:
            return UChain.zero(self.n, self.cap, self.bar_cap, u_window)
        return splitting_s(j, self.n, top, cap=self.cap, bar_cap=self.bar_cap).mul_u(m).with_window(u_window)

    def assemble(self, coords: dict[tuple[int, int], TSeries], u_window: tuple[int, int]) -> UChain:
        out = UChain.zero(self.n, self.cap, self.bar_cap, u_window)
        for (j, m), c in sorted(coords.items()):
            out = out + self.element(j, m, u_window).scale(c)
        return out


# ---------------------------------------------------------------------------
# decomposition

@dataclass
class ClassCoords:
    """X = sum coords[j, m] u^m s_j + (b+uB)(witness) at truncation."""

    coords: dict[tuple[int, int], TSeries]
    witness: UChain

    def coord(self, j: int, m: int) -> TSeries | None:
        return self.coords.get((j, m))

    def to_json(self) -> dict:
        return {
            "coords": [[j, m, c.to_json()] for (j, m), c in sorted(self.coords.items())],
            "witness_terms": len(self.witness),
        }


def _vec_key(w: BarWord, m: int) -> tuple[int, int, int]:
    return (m, w.tail, int(w.head))


class _Decomposer:
    """Echelon basis of D_0-boundaries and the u^m s_j in a fixed window."""

    def __init__(self, n: int, bar_cap: int, u_window: tuple[int, int]):
        self.n, self.bar_cap, self.u_window = n, bar_cap, u_window
        lo, hi = u_window
        central = make_family(n, 1, central=True)
        big = bar_cap + n + 2
        self.ech = Echelon()
        for m in range(lo, hi + 1):
            for k in range(bar_cap + 1):
                w = BarWord(EPS, k)
                img = cyclic_d(UChain.word(w, n, 1, big, u_window, m), central)
                vec = {_vec_key(ww, mm): c.constant() for (ww, mm), c in img.items()}
                self.ech.add(vec, ("D", k, m))
        basis = SplittingBasis(n, max(hi - lo, 0), 1)
        for m in range(lo, hi + 1):
            for j in range(n):
                el = basis.element(j, m, u_window)
                vec = {_vec_key(ww, mm): c.constant() for (ww, mm), c in el.items()}
                self.ech.add(vec, ("s", j, m))


@lru_cache(maxsize=64)
def _decomposer(n: int, bar_cap: int, u_window: tuple[int, int]) -> _Decomposer:
    return _Decomposer(n, bar_cap, u_window)


def decompose_central(x: UChain, *, check_closed: bool = True) -> ClassCoords:
    """Decompose a D_0-closed chain over the t=0 complex (coefficients may be series)."""
    n, cap = x.n, x.cap
    if check_closed:
        central = make_family(n, cap, central=True)
        d = cyclic_d(x.with_bar_cap(x.bar_cap + n + 2), central)
        if not d.is_zero():
            raise NotClosedError("chain is not (b+uB)-closed:\n" + d.dump())
    dec = _decomposer(n, x.bar_cap, x.u_window)
    vec = {_vec_key(w, m): c for (w, m), c in x.items()}
    residual, combo = dec.ech.reduce(vec)
    if residual:
        raise TruncationError(
            f"decomposition residual on {len(residual)} terms; bar_cap={x.bar_cap} too small"
        )
    coords: dict[tuple[int, int], TSeries] = {}
    wit: dict = {}
    for label, c in combo.items():
        if label[0] == "s":
            coords[(label[1], label[2])] = c
        else:
            wit[(BarWord(EPS, label[1]), label[2])] = c
    witness = UChain(n, cap, x.bar_cap, x.u_window, wit)
    return ClassCoords(coords, witness)


def decompose_class(x: UChain, basis: SplittingBasis | None = None, fam: AnFamily | None = None) -> ClassCoords:
    """Coordinates of a closed chain over {u^m s_j}.

    On the central fibre the decomposition is X = sum c u^m s_j + D_0 W.
    For the family, X is first carried to the central fibre by the
    trivialization exp(-sum t_i b_i / u); the coordinates then refer to the
    flat frame {exp(+sum t_i b_i/u) u^m s_j}.  ``basis`` only fixes the
    level and is checked for consistency.
    """
    if basis is not None and basis.n != x.n:
        raise ValueError("basis and chain have different levels")
    if fam is not None and not fam.is_central():
        if not cyclic_d(x.with_bar_cap(x.bar_cap + x.n + 2), fam).is_zero():
            raise NotClosedError("chain is not closed for the family differential")
        x = trivialization_apply(x, fam)
        return decompose_central(x, check_closed=False)
    return decompose_central(x)


# ---------------------------------------------------------------------------
# Hochschild homology

@dataclass
class HHReport:
    n: int
    max_tail: int
    odd_dim: int
    even_dim: int
    basis: list[BarWord] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return self.odd_dim + self.even_dim

    def to_json(self) -> dict:
        return {
            "n": self.n, "max_tail": self.max_tail, "dimension": self.dimension,
            "odd": self.odd_dim, "even": self.even_dim,
            "basis": [str(w) for w in self.basis],
        }


def hochschild_homology(n: int, max_tail: int | None = None) -> HHReport:
    """HH of A_n by kernel/image on words with tail <= max_tail.

    At t=0 b lowers the tail by exactly n, so the image of words with tail
    <= max_tail + n is the full space of boundaries among words of tail
    <= max_tail.
    """
    max_tail = 3 * (n + 1) if max_tail is None else max_tail
    central = make_family(n, 1, central=True)
    big = max_tail + n + 1

    def b_vec(w: BarWord) -> dict:
        img = hoch_b(UChain.word(w, n, 1, big, (0, 0)), central)
        return {_vec_key(ww, mm): c.constant() for (ww, mm), c in img.items()}

    words = [BarWord(h, k) for k in range(max_tail + 1) for h in (ONE, EPS)]
    # kernel: columns that reduce to zero
    cols = Echelon()
    kernel: list[dict] = []
    for w in words:
        vec = b_vec(w)
        res, combo = cols._reduce_fraction(dict(vec), {w: Fraction(1)})
        if res:
            cols.add(vec, w)
        else:
            kernel.append(combo)
    image = Echelon()
    for k in range(max_tail + n + 1):
        image.add(b_vec(BarWord(EPS, k)))
        image.add(b_vec(BarWord(ONE, k)))
    basis: list[BarWord] = []
    odd = even = 0
    for combo in sorted(kernel, key=lambda c: sorted(_vec_key(w, 0) for w in c)):
        vec = {_vec_key(w, 0): c for w, c in combo.items()}
        if image.add(vec):
            parities = {w.parity for w in combo}
            if parities == {1}:
                odd += 1
            else:
                even += 1
            if len(combo) == 1:
                basis.append(next(iter(combo)))
    return HHReport(n, max_tail, odd, even, sorted(basis, key=lambda w: (w.tail, w.head)))


def family_hh_dimension(n: int, order: int) -> dict[str, int]:
    """dim_K of HH of the family over R/m^order, computed weight by weight.

    b lowers the weight by exactly one, t-monomials have weight <= 0 and
    every weight space of (words) x (t-monomials of degree < order) is
    finite, so each weight stratum is an exact finite problem.  All strata
    up to two above the top class weight (n-1)/(n+1) are enumerated
    completely.  A free module of rank n has odd dimension
    n * dim(R/m^order) and no even part.
    """
    wt = WeightTable(n)
    fam = make_family(n, order)
    monos = [e for d in range(order) for e in monomials(n, d)]
    w_top = wt.word(EPS, n - 1) + 2
    max_tail = n - 1 + (order + 1) * (n + 1)
    big = max_tail + 2
    odd_cells: dict[Fraction, list] = {}
    even_cells: dict[Fraction, list] = {}
    for e in monos:
        for k in range(max_tail + 1):
            odd_cells.setdefault(wt.word(EPS, k) + wt.monomial(e), []).append((k, e))
            even_cells.setdefault(wt.word(ONE, k) + wt.monomial(e), []).append((k, e))

    def b_rank(cells) -> int:
        ech = Echelon()
        for k, e in cells:
            x = UChain.word(BarWord(EPS, k), n, order, big, (0, 0), 0, TSeries.monomial(n, order, e))
            img = hoch_b(x, fam)
            ech.add({(ww.tail, ee): c for (ww, _), s in img.items() for ee, c in s.items()})
        return ech.rank

    odd_dim = even_dim = 0
    for w, cells in odd_cells.items():
        if w <= w_top:
            odd_dim += len(cells) - b_rank(cells)
    for w, cells in even_cells.items():
        if w + 1 <= w_top:
            even_dim += len(cells) - b_rank(odd_cells.get(w + 1, []))
    return {"odd": odd_dim, "even": even_dim, "ring_dim": comb(order - 1 + n, n)}


# ---------------------------------------------------------------------------
# uniqueness of the weight-preserving splitting

def splitting_uniqueness(n: int, k: int, u_cap: int) -> list[dict]:
    """Rank data for homogeneous odd closed lifts of [eps|eps^k].

    At u-order l the unknown x_l ranges over odd words of weight
    wt(eps|eps^k) + 2l and must solve b x_l = -B x_{l-1}.  Two lifts that
    agree below order l differ at order l by an element of ker b on that
    space; the ambiguity is its dimension.
    """
    wt = WeightTable(n)
    target = wt.word(EPS, k)
    central = make_family(n, 1, central=True)
    big = k + (n + 1) * (u_cap + 1) + n + 2
    rows = []
    prev = UChain.word(BarWord(EPS, k), n, 1, big, (0, u_cap + 1))
    for l in range(1, u_cap + 1):
        space = [BarWord(EPS, m) for m in range(big - n - 1) if wt.word(EPS, m) == target + 2 * l]
        ech = Echelon()
        for w in space:
            img = hoch_b(UChain.word(w, n, 1, big, (0, 0)), central)
            ech.add({_vec_key(ww, 0): c.constant() for (ww, _), c in img.items()}, w)
        rhs = -(cyclic_d(prev, central).restrict_u(l, l).mul_u(-l))
        res, combo = ech.reduce({_vec_key(w, 0): c.constant() for (w, _), c in rhs.items()})
        solvable = not res
        rows.append({
            "u_order": l, "unknowns": len(space), "rank": ech.rank,
            "ambiguity": len(space) - ech.rank, "solvable": solvable,
        })
        nxt = prev.empty_like()
        for w, c in combo.items():
            nxt = nxt + UChain.word(w, n, 1, big, prev.u_window, l, c)
        prev = prev + nxt
    return rows


def scalar_table(rows: list[list[Fraction]]) -> list[list[str]]:
    return [[scalar_str(c) for c in r] for r in rows]
