"""Connections on periodic cyclic chains of the A_n family.

* ``u_connection``: d/du + Gamma/2u + B^{1|1}(KS_E)/2u + b^{1|1}(KS_E)/2u^2
  where KS_E = sum_k (2-k) mu_k is the Kodaira-Spencer cochain of the
  rescaling direction;
* ``ggm_connection``: v - u^{-1} b^{1|1}(KS(v)) - B^{1|1}(KS(v));
* identity checks returning :class:`Report` records.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .chains import (
    EPS, ONE, BarWord, UChain, cap_B11, cap_b11, cyclic_d, gamma_op,
    lie_derivative, trivialization_apply,
)
from .coefficients import TSeries, scalar_str
from .family import AnFamily, Cochain, euler_coefficients, ks_euler_cochain, make_family
from .linalg import Echelon
from .pairings import SplittingBasis, decompose_class, decompose_central

__all__ = [
    "BaseVectorField", "Report", "u_connection", "u_connection_log", "ggm_connection",
    "euler_field", "check_u_commutator", "check_good_splitting", "trivialization_apply",
    "homogeneity_operator", "check_ggm_chain_map", "check_trivialization_flatness",
    "check_connection_commutator",
]


@dataclass(frozen=True)
class Report:
    identity: str
    range: Any
    status: str
    counterexample: Any = None
    data: Mapping[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "range": self.range,
            "status": self.status,
            "counterexample": self.counterexample,
        }
        if self.data:
            out["data"] = dict(self.data)
        return out


@dataclass(frozen=True)
class BaseVectorField:
    """sum_j coeffs[j] d/dt_j with series coefficients."""

    n: int
    cap: int
    coeffs: Mapping[int, TSeries]

    def __post_init__(self):
        for j in self.coeffs:
            if not 0 <= j <= self.n - 1:
                raise ValueError(f"direction {j} outside 0..{self.n - 1}")

    @classmethod
    def partial(cls, n: int, cap: int, j: int) -> "BaseVectorField":
        return cls(n, cap, {j: TSeries.one(n, cap)})

    def apply(self, f: TSeries) -> TSeries:
        out = TSeries.zero(self.n, self.cap)
        for j, c in self.coeffs.items():
            d = f.derivative(j)
            if d:
                out = out + c * d
        return out

    def apply_chain(self, x: UChain) -> UChain:
        return x.map_coefficients(self.apply)

    def ks_cochain(self) -> Cochain:
        """KS(v) = sum_j v_j [eps^j -> 1]."""
        from .family import AlgElem

        vals = {j: AlgElem.unit(self.n, self.cap, c) for j, c in self.coeffs.items() if c}
        return Cochain(self.n, self.cap, vals)

    def __str__(self) -> str:
        parts = [f"({c})*d/dt{j}" for j, c in sorted(self.coeffs.items()) if c]
        return " + ".join(parts) or "0"


def euler_field(n: int, cap: int = 2) -> BaseVectorField:
    """E = sum_j (1 - j/(n+1)) t_j d/dt_j."""
    return BaseVectorField(
        n, cap, {j: TSeries.var(n, cap, j, c) for j, c in enumerate(euler_coefficients(n))}
    )


# ---------------------------------------------------------------------------
# connection operators

def u_connection(x: UChain, fam: AnFamily) -> UChain:
    """nabla_{d/du}; the u-window is widened by two on the negative side."""
    ks = ks_euler_cochain(fam)
    x = x.with_window((x.u_min - 2, x.u_max))
    half = Fraction(1, 2)
    out = x.u_derivative()
    out = out + (gamma_op(x) + cap_B11(ks, x, fam)).mul_u(-1).scale(half)
    out = out + cap_b11(ks, x, fam).mul_u(-2).scale(half)
    return out


def u_connection_log(x: UChain, fam: AnFamily) -> UChain:
    """nabla_{u d/du} = u * nabla_{d/du}."""
    return u_connection(x, fam).mul_u(1)


def ggm_connection(v: BaseVectorField, x: UChain, fam: AnFamily) -> UChain:
    """nabla_v = v - u^{-1} b^{1|1}(KS(v)) - B^{1|1}(KS(v))."""
    ks = v.ks_cochain()
    x = x.with_window((x.u_min - 1, x.u_max))
    out = v.apply_chain(x)
    out = out - cap_b11(ks, x, fam).mul_u(-1)
    out = out - cap_B11(ks, x, fam)
    return out


def homogeneity_operator(x: UChain, fam: AnFamily) -> UChain:
    """nabla_{u d/du} + nabla_E."""
    return u_connection_log(x, fam) + ggm_connection(euler_field(fam.n, fam.cap), x, fam)


# ---------------------------------------------------------------------------
# checks

def _word_chain(fam: AnFamily, w: BarWord, m: int, bar_cap: int, window) -> UChain:
    return UChain.word(w, fam.n, fam.cap, bar_cap, window, m)


def check_u_commutator(fam: AnFamily, max_tail: int | None = None, upowers: Iterable[int] = (0, 1)) -> Report:
    """[2u d/du + Gamma + t d/dt|_{t=1}, b + uB] = b + uB on basis words.

    The rescaling part acts on the structure maps as the cochain
    sum_k (2-k) mu_k, so its commutator with b + uB is the Lie derivative
    along that cochain.
    """
    n = fam.n
    max_tail = 3 * (n + 1) if max_tail is None else max_tail
    ks = ks_euler_cochain(fam)
    upowers = list(upowers)
    rng = {"max_tail": max_tail, "u_powers": upowers, "central": fam.is_central()}
    bar_cap = max_tail + n + 2
    window = (min(upowers, default=0) - 1, max(upowers, default=0) + 2)

    def A(y: UChain) -> UChain:
        return y.u_derivative().mul_u(1).scale(2) + gamma_op(y)

    for m in upowers:
        for k in range(max_tail + 1):
            for h in (ONE, EPS):
                x = _word_chain(fam, BarWord(h, k), m, bar_cap, window)
                dx = cyclic_d(x, fam)
                lhs = A(dx) - cyclic_d(A(x), fam) + lie_derivative(ks, x)
                if not lhs.same_as(dx):
                    return Report(
                        "u_commutator", rng, "fail",
                        {"word": str(BarWord(h, k)), "u_power": m, "difference": (lhs - dx).dump()},
                    )
    return Report("u_commutator", rng, "pass")


def _coords_matrix_add(ech: Echelon, coords: Mapping, label) -> None:
    ech.add({(m, j): c.constant() for (j, m), c in coords.items()}, label)


def check_good_splitting(
    basis: SplittingBasis,
    depth: int = 3,
    perturbation: Mapping[int, list[tuple[int, int, Fraction]]] | None = None,
) -> Report:
    """Good-splitting and omega-compatibility checks on the central fibre.

    For every u^m s'_j with -depth <= m <= -1, nabla_{u d/du}(u^m s'_j) must
    lie in the span of {u^{m'} s'_{j'} : m' <= -1}; for omega = s'_{n-1},
    nabla_{u d/du} omega - r omega must lie in that span, and r is reported.
    ``perturbation`` replaces s_j by s_j + sum c u^{du} s_{j'} (negative
    controls).
    """
    n = basis.n
    fam = make_family(n, 1, central=True)
    u_top = basis.u_cap
    window = (-depth - 2, u_top)
    perturbation = dict(perturbation or {})
    # u^m s_j for m down to window[0] reaches tail n-1+(n+1)(u_top-window[0])
    sb = SplittingBasis(n, u_top, 1, bar_cap=n - 1 + (n + 1) * (u_top - window[0]) + n + 2)

    def s_prime_coords(j: int, m: int) -> dict[tuple[int, int], Fraction]:
        c = {(j, m): Fraction(1)}
        for jj, du, coef in perturbation.get(j, []):
            c[(jj, m + du)] = c.get((jj, m + du), Fraction(0)) + Fraction(coef)
        return c

    def chain(coords) -> UChain:
        out = UChain.zero(n, 1, sb.bar_cap, window)
        for (j, m), c in coords.items():
            out = out + sb.element(j, m, window).scale(c)
        return out

    # express s-coordinates in the s'-frame
    frame = Echelon()
    for m in range(window[0], window[1] + 1):
        for j in range(n):
            frame.add({(mm, jj): c for (jj, mm), c in s_prime_coords(j, m).items() if mm <= window[1]}, (j, m))

    def in_frame(coords) -> dict:
        vec = {(m, j): c.constant() for (j, m), c in coords.items()}
        res, combo = frame.reduce(vec)
        if res:
            raise ArithmeticError("frame change failed")
        return combo

    rng = {"n": n, "depth": depth, "u_cap": u_top}
    # reliable u-orders: u_connection of a chain truncated at u_top is exact through u_top - 1
    valid_top = u_top - 2
    for j in range(n):
        for m in range(-depth, 0):
            y = u_connection_log(chain(s_prime_coords(j, m)), fam)
            combo = in_frame(decompose_central(y).coords)
            bad = {lab: c for lab, c in combo.items() if 0 <= lab[1] <= valid_top}
            if bad:
                return Report(
                    "good_splitting", rng, "fail",
                    {"element": f"u^{m} s_{j}", "outside": {f"s_{a} u^{b}": scalar_str(c) for (a, b), c in bad.items()}},
                )
    omega = chain(s_prime_coords(n - 1, 0))
    y = u_connection_log(omega, fam)
    combo = in_frame(decompose_central(y).coords)
    r = combo.get((n - 1, 0), Fraction(0))
    rest = {lab: c for lab, c in combo.items() if lab != (n - 1, 0) and 0 <= lab[1] <= valid_top}
    if rest:
        return Report(
            "good_splitting", rng, "fail",
            {"element": "omega", "outside": {f"s_{a} u^{b}": scalar_str(c) for (a, b), c in rest.items()}},
            {"r": scalar_str(r)},
        )
    return Report("good_splitting", rng, "pass", None, {"r": scalar_str(r)})


def check_ggm_chain_map(fam: AnFamily, max_tail: int | None = None) -> Report:
    """nabla_j (b+uB) Y = (b+uB) nabla_j Y on basis words, every direction j."""
    n, cap = fam.n, fam.cap
    max_tail = 2 * (n + 1) if max_tail is None else max_tail
    bar_cap = max_tail + n + 2
    window = (-2, 2)
    rng = {"max_tail": max_tail, "directions": n}
    for j in range(n):
        v = BaseVectorField.partial(n, cap, j)
        for k in range(max_tail + 1):
            for h in (ONE, EPS):
                for coef in (TSeries.one(n, cap), TSeries.var(n, cap, j) if cap > 1 else TSeries.one(n, cap)):
                    y = UChain.word(BarWord(h, k), n, cap, bar_cap, window, 0, coef)
                    a = ggm_connection(v, cyclic_d(y, fam), fam)
                    b = cyclic_d(ggm_connection(v, y, fam), fam)
                    if not a.same_as(b):
                        return Report("ggm_chain_map", rng, "fail",
                                      {"direction": j, "word": str(BarWord(h, k)), "difference": (a - b).dump()})
    return Report("ggm_chain_map", rng, "pass")


def check_trivialization_flatness(fam: AnFamily, max_tail: int | None = None) -> Report:
    """d/dt_j T(Y) = T(nabla_j Y) for T = exp(-sum t_i b_i/u), on t-degrees < cap - 1."""
    n, cap = fam.n, fam.cap
    max_tail = 2 * (n + 1) if max_tail is None else max_tail
    bar_cap = max_tail + n + 2
    window = (0, 2)
    rng = {"max_tail": max_tail, "t_degree_max": cap - 2}
    for j in range(n):
        v = BaseVectorField.partial(n, cap, j)
        for k in range(max_tail + 1):
            for h in (ONE, EPS):
                y = UChain.word(BarWord(h, k), n, cap, bar_cap, window, 0,
                                TSeries.one(n, cap) + TSeries.var(n, cap, (j + 1) % n) if cap > 1 else 1)
                a = trivialization_apply(y, fam).derivative(j).with_t_cap(cap - 1)
                b = trivialization_apply(ggm_connection(v, y, fam), fam).with_t_cap(cap - 1)
                if not a.same_as(b):
                    return Report("trivialization_flatness", rng, "fail",
                                  {"direction": j, "word": str(BarWord(h, k)), "difference": (a - b).dump()})
    return Report("trivialization_flatness", rng, "pass")


def check_connection_commutator(zeta: UChain, fam: AnFamily) -> Report:
    """[nabla_{d/du}, nabla_j] zeta = 0 in periodic cyclic homology.

    The t-derivative loses the top t-degree, so the commutator is compared
    over R/m^{cap-1}.
    """
    n, cap = fam.n, fam.cap
    rng = {"t_degree_max": cap - 2}
    if cap < 2:
        return Report("connection_commutator", rng, "pass", None, {"note": "no reliable degree"})
    small = make_family(n, cap - 1)
    for j in range(n):
        v = BaseVectorField.partial(n, cap, j)
        x = u_connection(ggm_connection(v, zeta, fam), fam) - ggm_connection(v, u_connection(zeta, fam), fam)
        coords = decompose_class(x.with_t_cap(cap - 1), None, small).coords
        if coords:
            return Report("connection_commutator", rng, "fail",
                          {"direction": j, "coords": {f"s_{a} u^{b}": str(c) for (a, b), c in coords.items()}})
    return Report("connection_commutator", rng, "pass")
