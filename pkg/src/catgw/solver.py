"""Order-by-order construction of the categorical primitive form and the
genus-zero potential of the A_n family.

Notation: X = sum_i t_i b_i with b_i = b^{1|1}(phi_i; -), T = exp(-X/u) the
trivialization, omega = s_{n-1}.  The primitive form zeta is the unique
weight-homogeneous negative-cyclic chain with zeta|_{t=0} = omega and

    T(zeta) = omega + sum_{m>=1} u^{-m} J_{-m},   J_{-m} in sum_j R s_j.

At t-order k this reads zeta^{(k)} + K^{(k)} = (sum_m u^{-m} J^{(k)}_{-m}),
K^{(k)} = sum_{p>=1} (-X/u)^p / p! zeta^{(k-p)}; the J^{(k)} are read off
from the negative u-part of K^{(k)} and zeta^{(k)} is what remains in
non-negative u-degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable

from .chains import (
    EPS, ONE, BarWord, UChain, cap_b11, cyclic_d, default_bar_cap,
    hoch_b, ks_cochains,
)
from .coefficients import TSeries, monomials, scalar_str
from .connections import Report, homogeneity_operator
from .family import AnFamily, WeightTable, euler_coefficients, make_family
from .linalg import Echelon
from .pairings import SplittingBasis, decompose_central, hres_coords


class SolverError(RuntimeError):
    """The recursion found no solution or a non-unique one."""


@dataclass
class SolverState:
    n: int
    order: int
    u_cap: int
    bar_cap: int
    family: AnFamily = field(repr=False)
    pieces: list[UChain] = field(repr=False)          # zeta^{(k)}, k < order
    J: dict[int, dict[int, TSeries]] = field(repr=False)  # m -> j -> series
    r: Fraction = Fraction(0)
    uniqueness: list[dict] = field(default_factory=list)

    def valid_top(self, k: int) -> int:
        """Highest u-power of zeta^{(k)} that is exact."""
        return self.u_cap - k

    @property
    def zeta(self) -> UChain:
        out = self.pieces[0]
        for p in self.pieces[1:]:
            out = out + p
        return out

    def J_coord(self, m: int, j: int) -> TSeries:
        return self.J.get(m, {}).get(j) or TSeries.zero(self.n, self.order)

    def J_part(self, m: int, k: int) -> dict[int, TSeries]:
        """J_{-m}^{(k)}: degree-k part of J_{-m}, as j -> series."""
        return {j: c.degree_part(k) for j, c in self.J.get(m, {}).items() if c.degree_part(k)}

    def to_json(self) -> dict:
        return {
            "n": self.n, "order": self.order, "u_cap": self.u_cap, "bar_cap": self.bar_cap,
            "r": scalar_str(self.r),
            "J": {
                f"-{m}": {f"s_{j}": c.to_json() for j, c in sorted(js.items()) if c}
                for m, js in sorted(self.J.items())
            },
        }


def _minus_X_over_u(x: UChain, fam: AnFamily, phis, ts) -> UChain:
    out = x.empty_like()
    for i in range(fam.n):
        y = cap_b11(phis[i], x, fam)
        if y:
            out = out + y.scale(ts[i])
    return out.mul_u(-1).scale(-1)


def solve_primitive_form(
    n: int, order: int = 4, u_cap: int | None = None, bar_cap: int | None = None,
    *, verify: bool = True,
) -> SolverState:
    """Solve for zeta through t-order ``order`` (t-degree < order)."""
    if n < 1:
        raise ValueError(f"level n must be >= 1, got {n}")
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    U = order + 2 if u_cap is None else u_cap
    if U < order:
        raise ValueError(f"u_cap={U} must be at least the order {order}")
    L = default_bar_cap(n, order, U) if bar_cap is None else bar_cap
    N = order
    fam = make_family(n, N)
    phis = ks_cochains(fam)
    ts = [TSeries.var(n, N, i) for i in range(n)]
    wt = WeightTable(n)
    basis = SplittingBasis(n, U + N, N, bar_cap=L)

    omega = basis.element(n - 1, 0, (0, U))
    pieces = [omega]
    J: dict[int, dict[int, TSeries]] = {}
    # powers[q][p] = (-X/u)^p zeta^{(q)}
    powers: list[list[UChain]] = [[omega]]
    uniqueness = []
    for k in range(1, N):
        top = U - k
        window = (-k, top)
        K = UChain.zero(n, N, L, window)
        for q in range(k):
            seq = powers[q]
            while len(seq) <= k - q:
                seq.append(_minus_X_over_u(seq[-1], fam, phis, ts))
            term = seq[k - q].with_window((seq[k - q].u_min, min(seq[k - q].u_max, top)))
            K = K + term.scale(Fraction(1, factorial(k - q))).with_window(window)
        # read J^{(k)}_{-m} from the eps|eps^j u^{-m} coefficients (j < n)
        Jk: dict[int, dict[int, TSeries]] = {}
        for (w, m), c in K.items():
            if m < 0 and w.head is EPS and w.tail < n:
                Jk.setdefault(-m, {})[w.tail] = c
        S = UChain.zero(n, N, L, window)
        for m, js in Jk.items():
            for j, c in js.items():
                S = S + basis.element(j, -m, window).scale(c)
        # the negative part of K must be exactly that of sum u^{-m} J s
        neg_diff = (K - S).restrict_u(None, -1)
        if neg_diff:
            raise SolverError(f"order {k}: negative u-part is not spanned by the splitting:\n{neg_diff.dump()}")
        zk = (S - K).restrict_u(0, None).with_window((0, top))
        if any(w.head is ONE for (w, _), _c in zk.items()):
            raise SolverError(f"order {k}: correction has unit-head terms")
        pieces.append(zk)
        powers.append([zk])
        for m, js in Jk.items():
            for j, c in js.items():
                J.setdefault(m, {})
                J[m][j] = J[m][j] + c if j in J[m] else c
        # uniqueness: homogeneous u^m s_j t^e with m >= 0, |e| = k
        target = wt.word(EPS, n - 1)
        amb = [
            (j, m, e) for e in monomials(n, k) for j in range(n) for m in range(0, U + 1)
            if wt.word(EPS, j) - 2 * m + wt.monomial(e) == target
        ]
        uniqueness.append({"order": k, "ambiguity": len(amb)})
        if amb:
            raise SolverError(f"order {k}: weight stratum admits {len(amb)} free parameters")
        if verify:
            got = decompose_central((zk + K).with_window(window))
            expect = {(j, -m): c for m, js in Jk.items() for j, c in js.items()}
            if got.coords != expect or got.witness:
                raise SolverError(f"order {k}: decomposition disagrees with the read-off J-terms")
    r = -wt.word(EPS, n - 1) / 2
    return SolverState(n, N, U, L, fam, pieces, J, r, uniqueness)


# ---------------------------------------------------------------------------
# flat coordinates and potential

def flat_coordinates(state: SolverState) -> list[TSeries]:
    """tau_i(t) = coefficient of s_{n-1-i} in J_{-1}."""
    n = state.n
    return [state.J_coord(1, n - 1 - i) for i in range(n)]


def invert_coordinates(coords: list[TSeries]) -> list[TSeries]:
    """t_i as series in tau, given tau_i = -t_i + (order >= 2)."""
    n, cap = coords[0].n, coords[0].cap
    for i, c in enumerate(coords):
        lin = c.degree_part(1)
        if lin != TSeries.var(n, cap, i, -1) or c.constant():
            raise ArithmeticError(f"flat coordinate {i} does not start with -t_{i}")
    tau = [TSeries.var(n, cap, i) for i in range(n)]
    # t = -tau + h(t) with h_i = tau_i(t) + t_i of order >= 2
    h = [c + TSeries.var(n, cap, i) for i, c in enumerate(coords)]
    t = [-x for x in tau]
    for _ in range(cap):
        t = [-tau[i] + h[i].substitute(t) for i in range(n)]
    return t


@dataclass
class PotentialSeries:
    n: int
    order: int
    coords: list[TSeries]                 # tau_k(t)
    inverse: list[TSeries]                # t_k(tau)
    derivs: list[TSeries]                 # dF/dtau_l(tau)
    F: TSeries                            # cap order + 1

    def correlator(self, indices: Iterable[int]) -> Fraction:
        idx = list(indices)
        if len(idx) < 2:
            raise ValueError("correlators take at least two insertions")
        if len(idx) > self.order:
            raise ValueError(f"{len(idx)}-point correlator needs order >= {len(idx)}, have {self.order}")
        for i in idx:
            if not 0 <= i <= self.n - 1:
                raise ValueError(f"direction {i} outside 0..{self.n - 1}")
        if len(idx) == 2:
            # metric: one more derivative along the unit direction tau_0
            idx = [0] + idx
        e = [0] * self.n
        for i in idx:
            e[i] += 1
        mult = 1
        for x in e:
            mult *= factorial(x)
        return self.F.coeff(tuple(e)) * mult

    def symmetry_residual(self) -> list[tuple[int, int, TSeries]]:
        """Nonzero d_m(dF/dtau_l) - d_l(dF/dtau_m), on reliable degrees."""
        out = []
        for l in range(self.n):
            for m in range(l + 1, self.n):
                d = (self.derivs[l].derivative(m) - self.derivs[m].derivative(l)).degree_below(self.order - 1)
                if d:
                    out.append((l, m, d))
        return out


def potential_derivatives(state: SolverState) -> PotentialSeries:
    n, N = state.n, state.order
    coords = flat_coordinates(state)
    inv = invert_coordinates(coords)
    derivs = [state.J_coord(2, l).substitute(inv) for l in range(n)]
    F = TSeries.zero(n, N + 1)
    for l, p in enumerate(derivs):
        F = F + p.with_cap(N + 1).mul_var(l)
    # F_d = (1/d) sum_l tau_l P_l^{(d-1)}
    terms = {e: c / sum(e) for e, c in F.items()}
    F = TSeries(n, N + 1, terms)
    return PotentialSeries(n, N, coords, inv, derivs, F)


def correlator(state_or_pot, indices: Iterable[int]) -> Fraction:
    pot = state_or_pot if isinstance(state_or_pot, PotentialSeries) else potential_derivatives(state_or_pot)
    return pot.correlator(indices)


def correlator_tables(pot: PotentialSeries) -> dict:
    n = pot.n
    two = {f"{i},{j}": pot.correlator([i, j]) for i in range(n) for j in range(i, n)}
    three = {
        f"{i},{j},{k}": pot.correlator([i, j, k])
        for i in range(n) for j in range(i, n) for k in range(j, n)
    } if pot.order >= 3 else {}
    four = None
    if n >= 2 and pot.order >= 4:
        four = pot.correlator([1, 1, n - 1, n - 1])
    return {"two_point": two, "three_point": three, "four_point_11nn": four}


# ---------------------------------------------------------------------------
# Frobenius-manifold checks

def check_dimension_axiom(pot: PotentialSeries) -> Report:
    """E(F) = (3 - (n-1)/(n+1)) F with E = sum_j (1 - j/(n+1)) tau_j d/dtau_j."""
    n = pot.n
    d_F = 3 - Fraction(n - 1, n + 1)
    resid = pot.F.euler(euler_coefficients(n)) - pot.F.scale(d_F)
    rng = {"n": n, "degree_max": pot.order}
    if resid:
        return Report("dimension_axiom", rng, "fail", {"residual": str(resid)})
    return Report("dimension_axiom", rng, "pass", None, {"charge": scalar_str(d_F)})


def _third(F: TSeries, a: int, b: int, c: int) -> TSeries:
    return F.derivative(a).derivative(b).derivative(c)


def wdvv_residuals(F: TSeries, n: int, max_degree: int) -> list[tuple[tuple[int, int, int, int], TSeries]]:
    """Nonzero WDVV residuals (metric delta_{e+f=n-1}) up to ``max_degree``."""
    cap = max_degree + 1
    third = {}
    for a in range(n):
        for b in range(a, n):
            for c in range(b, n):
                v = _third(F, a, b, c).with_cap(cap)
                for p in {(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)}:
                    third[p] = v
    out = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    res = TSeries.zero(n, cap)
                    for e in range(n):
                        f = n - 1 - e
                        res = res + third[(a, b, e)] * third[(f, c, d)] - third[(a, c, e)] * third[(f, b, d)]
                    if res:
                        out.append(((a, b, c, d), res))
    return out


def check_wdvv(pot: PotentialSeries, F: TSeries | None = None, name: str = "wdvv") -> Report:
    F = pot.F if F is None else F
    max_degree = pot.order - 3
    rng = {"n": pot.n, "residual_degree_max": max_degree}
    if max_degree < 0:
        return Report(name, rng, "pass", None, {"note": "no reliable degree"})
    res = wdvv_residuals(F, pot.n, max_degree)
    if res:
        (a, b, c, d), r = res[0]
        return Report(name, rng, "fail", {"indices": [a, b, c, d], "residual": str(r), "count": len(res)})
    return Report(name, rng, "pass")


def scrambled_potential(pot: PotentialSeries) -> TSeries:
    """Negative control: flip the sign of every F-coefficient whose monomial
    contains tau_1 (for n >= 3 this breaks associativity at degree one)."""
    n = pot.n
    terms = {e: (-c if n > 1 and e[1] else c) for e, c in pot.F.items()}
    return TSeries(n, pot.F.cap, terms)


def fjr_reconstruction(pot: PotentialSeries) -> Report:
    """Quartic part of F from metric, 3-point values, <1,1,n-1,n-1> = 1,
    the dimension selection rule and degree-one WDVV; compared with the
    solver's F on every uniquely determined coefficient.
    """
    n = pot.n
    rng = {"n": n}
    if n < 2 or pot.order < 4:
        return Report("fjr_reconstruction", rng, "pass", None, {"note": "vacuous"})
    d_F = 3 - Fraction(n - 1, n + 1)
    ec = euler_coefficients(n)
    cubic = TSeries(n, 5, {e: c for e, c in pot.F.items() if sum(e) == 3})
    # cubic from the 3-point function delta_{a+b+c=n-1}
    expected_cubic = {}
    for e in monomials(n, 3):
        idx = [i for i, x in enumerate(e) for _ in range(x)]
        if sum(idx) == n - 1:
            mult = 1
            for x in e:
                mult *= factorial(x)
            expected_cubic[e] = Fraction(1, mult)
    if dict(cubic.items()) != expected_cubic:
        return Report("fjr_reconstruction", rng, "fail", {"cubic": str(cubic)})
    unknowns = [e for e in monomials(n, 4) if sum(ec[j] * x for j, x in enumerate(e)) == d_F]
    # each unknown q_e; third derivatives of the quartic are linear in tau
    eqs = Echelon()
    rhs: dict[int, Fraction] = {}
    eq_id = 0

    def add_eq(vec: dict, value: Fraction):
        nonlocal eq_id
        if vec:
            eqs.add(vec, eq_id)
            rhs[eq_id] = value
            eq_id += 1

    # normalisation <tau_1, tau_1, tau_{n-1}, tau_{n-1}> = 1
    e11 = [0] * n
    e11[1] += 2
    e11[n - 1] += 2
    e11 = tuple(e11)
    mult = 1
    for x in e11:
        mult *= factorial(x)
    add_eq({e11: Fraction(mult)}, Fraction(1))

    def cubic3(a, b, c) -> Fraction:
        return Fraction(1) if a + b + c == n - 1 else Fraction(0)

    def quartic3(a, b, c, g) -> dict:
        """coefficient vector (over unknowns) of tau_g in d_a d_b d_c Q."""
        e = [0] * n
        for i in (a, b, c, g):
            e[i] += 1
        e = tuple(e)
        if e not in unknowns:
            return {}
        mult = 1
        for x in e:
            mult *= factorial(x)
        # d_a d_b d_c tau^e = (prod e!)/(e_g) ... coefficient of tau_g
        return {e: Fraction(mult)}

    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    for g in range(n):
                        vec: dict = {}
                        for e in range(n):
                            f = n - 1 - e
                            for coef, q in (
                                (cubic3(a, b, e), quartic3(f, c, d, g)),
                                (cubic3(f, c, d), quartic3(a, b, e, g)),
                                (-cubic3(a, c, e), quartic3(f, b, d, g)),
                                (-cubic3(f, b, d), quartic3(a, c, e, g)),
                            ):
                                if coef:
                                    for key, v in q.items():
                                        s = vec.get(key, 0) + coef * v
                                        if s:
                                            vec[key] = s
                                        else:
                                            vec.pop(key, None)
                        add_eq(vec, Fraction(0))
    determined = {}
    for e in unknowns:
        res, combo = eqs.reduce({e: Fraction(1)})
        if not res:
            determined[e] = sum((c * rhs[lab] for lab, c in combo.items()), Fraction(0))
    mismatches = {
        str(e): [scalar_str(v), scalar_str(pot.F.coeff(e))]
        for e, v in determined.items() if pot.F.coeff(e) != v
    }
    extra = {str(e): scalar_str(c) for e, c in pot.F.items() if sum(e) == 4 and e not in unknowns}
    data = {"unknowns": len(unknowns), "determined": len(determined)}
    if mismatches or extra:
        return Report("fjr_reconstruction", rng, "fail", {"mismatch": mismatches, "off_selection": extra}, data)
    return Report("fjr_reconstruction", rng, "pass", None, data)


# ---------------------------------------------------------------------------
# primitive-form axioms

def family_hh_lift(j: int, fam: AnFamily, max_tail: int) -> UChain:
    """The b_t-closed odd chain with eps|eps^{j'} coefficients delta_{j j'} (j' < n).

    Built from the recursion on the 1|eps^p coefficients of b_t:
    y_{p+n} = -sum_i i t_i y_{p+i-1}.
    """
    n, cap = fam.n, fam.cap
    y: dict[int, TSeries] = {k: TSeries.zero(n, cap) for k in range(n)}
    y[j] = TSeries.one(n, cap)
    ts = [TSeries.var(n, cap, i) for i in range(n)]
    for p in range(0, max_tail - n + 1):
        acc = TSeries.zero(n, cap)
        for i in range(1, n):
            if p + i - 1 in y and y[p + i - 1]:
                acc = acc + (ts[i] * y[p + i - 1]).scale(i)
        y[p + n] = -acc
    return UChain(n, cap, max_tail, (0, 0), {(BarWord(EPS, k), 0): c for k, c in y.items() if c})


def _det(mat: list[list[Fraction]]) -> Fraction:
    """Exact determinant by Gaussian elimination."""
    a = [list(map(Fraction, row)) for row in mat]
    size = len(a)
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, size):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def _by_degree(state: SolverState, op, loss: int) -> dict[int, UChain]:
    """Degree-k part of op(zeta), exact through u^{U-k-loss}."""
    out = {}
    parts = [op(p) for p in state.pieces]
    for k in range(state.order):
        hi = state.u_cap - k - loss
        acc = None
        for q in range(k + 1):
            y = parts[q].map_coefficients(lambda c: c.degree_part(k))
            y = y.restrict_u(None, hi)
            y = y.with_window((min(y.u_min, -state.order - 2), hi))
            acc = y if acc is None else acc + y
        out[k] = acc
    return out


def check_primitive_axioms(state: SolverState) -> dict[str, Report]:
    n, N = state.n, state.order
    fam = state.family
    reports: dict[str, Report] = {}

    # P0: restriction to the central fibre
    z0 = state.zeta.at_origin()
    omega = state.pieces[0]
    ok0 = z0.same_as(omega.with_window(z0.u_window))
    reports["P0"] = Report("P0_restriction", {"n": n}, "pass" if ok0 else "fail")

    # closedness of zeta for the family differential, order by order
    closed = _by_degree(state, lambda x: cyclic_d(x, fam), 0)
    bad = [k for k, c in closed.items() if c]
    reports["closed"] = Report(
        "zeta_closed", {"t_degree_max": N - 1}, "fail" if bad else "pass",
        {"t_degree": bad[0], "residual": closed[bad[0]].dump()} if bad else None,
    )

    # P1: primitivity -- u nabla_j zeta mod u = -b_j(zeta_{u^0}) in family HH
    zeta_u0 = state.zeta.restrict_u(0, 0).with_window((0, 0))
    phis = ks_cochains(fam)
    max_tail = zeta_u0.max_tail()
    mat0: list[list[Fraction]] = []
    p1_fail = None
    for j in range(n):
        y = cap_b11(phis[j], zeta_u0, fam).scale(-1)
        if hoch_b(y.with_bar_cap(y.bar_cap + n + 2), fam):
            p1_fail = {"direction": j, "reason": "not Hochschild-closed"}
            break
        coords = [y.coeff(BarWord(EPS, k)) for k in range(n)]
        recon = UChain.zero(n, N, max_tail, (0, 0))
        for k, c in enumerate(coords):
            recon = recon + family_hh_lift(k, fam, max_tail).scale(c)
        if dict(y.items()) != dict(recon.items()):
            p1_fail = {"direction": j, "reason": "coordinates do not reconstruct the class"}
            break
        mat0.append([c.constant() for c in coords])
    if p1_fail is None:
        det = _det(mat0)
        status = "pass" if det != 0 else "fail"
        reports["P1"] = Report(
            "P1_primitivity", {"n": n}, status, None if det else {"det_at_origin": "0"},
            {"matrix_at_origin": [[scalar_str(c) for c in row] for row in mat0], "det_at_origin": scalar_str(det)},
        )
    else:
        reports["P1"] = Report("P1_primitivity", {"n": n}, "fail", p1_fail)

    # P2/P3 in the flat frame: T(u nabla_j zeta) = u d_j (omega + sum u^{-m} J_{-m})
    def frame(derivs: tuple[int, ...]) -> dict[tuple[int, int], TSeries]:
        coords: dict[tuple[int, int], TSeries] = {}
        shift = len(derivs)
        for m, js in state.J.items():
            for j, c in js.items():
                for d in derivs:
                    c = c.derivative(d)
                if c:
                    coords[(j, shift - m)] = c
        return coords

    def negative_terms(pairing: dict[int, TSeries], max_deg: int) -> dict[int, TSeries]:
        return {p: c.degree_below(max_deg + 1) for p, c in pairing.items()
                if p < 0 and c.degree_below(max_deg + 1)}

    p2_bad = None
    for a in range(n):
        for b in range(n):
            neg = negative_terms(hres_coords(frame((a,)), frame((b,)), n), N - 2)
            if neg:
                p2_bad = {"directions": [a, b], "terms": {str(p): str(c) for p, c in neg.items()}}
                break
        if p2_bad:
            break
    reports["P2"] = Report("P2_orthogonality", {"t_degree_max": N - 2}, "fail" if p2_bad else "pass", p2_bad)

    p3_bad = None
    for a in range(n):
        for b in range(a, n):
            left = frame((a, b))
            for c in range(n):
                neg = negative_terms(hres_coords(left, frame((c,)), n), N - 3)
                if neg:
                    p3_bad = {"directions": [a, b, c], "terms": {str(p): str(v) for p, v in neg.items()}}
                    break
            if p3_bad:
                break
        if p3_bad:
            break
    reports["P3"] = Report("P3_holonomicity", {"t_degree_max": N - 3}, "fail" if p3_bad else "pass", p3_bad)

    # P4: (nabla_{u d/du} + nabla_E) zeta = r zeta, exactly at chain level
    hom = _by_degree(state, lambda x: homogeneity_operator(x, fam), 1)
    p4_bad = None
    for k, y in hom.items():
        target = state.pieces[k].scale(state.r).restrict_u(None, y.u_max)
        diff = y - target.with_window(y.u_window)
        if diff:
            p4_bad = {"t_degree": k, "residual": diff.dump()}
            break
    reports["P4"] = Report(
        "P4_homogeneity", {"t_degree_max": N - 1}, "fail" if p4_bad else "pass", p4_bad,
        {"r": scalar_str(state.r)},
    )
    return reports
