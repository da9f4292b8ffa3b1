"""Command-line front end.

    catgw invariants     --n N               HH, pairing and coproduct tables, inv_03 / inv_11
    catgw primitive-form --n N [--order K]   the primitive form and its J-terms
    catgw potential      --n N [--order K]   flat coordinates, dF/dtau_l, correlators
    catgw verify         --n N [--order K]   every identity check plus the acceptance criteria

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 truncation overflow.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from .chains import EPS, BarWord, TruncationError, default_bar_cap
from .coefficients import TSeries, scalar_str
from .connections import Report
from .costello import inv_03_table, inv_11_table, lambda_expansion
from .pairings import coproduct, hochschild_homology, mukai_table
from .solver import (
    SolverError, check_dimension_axiom, check_primitive_axioms, check_wdvv, correlator_tables,
)
from .verify import CRITERIA, module_checks, potential, solved

SCHEMA_VERSION = 1
COMMANDS = ("invariants", "primitive-form", "potential", "verify")
EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_TRUNCATION = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int
    order: int = 4
    u_cap: int | None = None
    bar_cap: int | None = None
    format: str = "text"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.n < 1:
            raise ValueError(f"--n must be >= 1, got {self.n}")
        if self.order < 1:
            raise ValueError(f"--order must be >= 1, got {self.order}")
        if self.u_cap is not None and self.u_cap < self.order:
            raise ValueError(f"--u-cap must be at least --order ({self.order}), got {self.u_cap}")
        if self.bar_cap is not None and self.bar_cap < 1:
            raise ValueError(f"--bar-cap must be positive, got {self.bar_cap}")
        if self.format not in ("text", "json"):
            raise ValueError(f"--format must be text or json, got {self.format!r}")

    @property
    def effective_u_cap(self) -> int:
        return self.order + 2 if self.u_cap is None else self.u_cap

    @property
    def effective_bar_cap(self) -> int:
        if self.bar_cap is not None:
            return self.bar_cap
        return default_bar_cap(self.n, self.order, self.effective_u_cap)


# ---------------------------------------------------------------------------
# JSON helpers

def _json(x: Any) -> Any:
    """Recursively convert to JSON-safe data with exact rational strings."""
    from fractions import Fraction

    if isinstance(x, Fraction):
        return scalar_str(x)
    if isinstance(x, TSeries):
        return x.to_json()
    if isinstance(x, Report):
        return _json(x.to_json())
    if isinstance(x, dict):
        return {str(k): _json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json(v) for v in x]
    return x


def _series_dict(d: dict[int, TSeries], prefix: str) -> dict[str, Any]:
    return {f"{prefix}{k}": v.to_json() for k, v in sorted(d.items()) if v}


# ---------------------------------------------------------------------------
# commands

def _invariants(cfg: RunConfig) -> tuple[int, dict]:
    n = cfg.n
    hh = hochschild_homology(n)
    report = {
        "hochschild": hh.to_json(),
        "mukai_table": mukai_table(n),
        "coproduct": {
            str(k): [[str(a), str(b)] for a, b in coproduct(BarWord(EPS, k))] for k in range(n)
        },
        "costello": {"inv_03": inv_03_table(n), "inv_11": inv_11_table(n)},
        "lambda_expansion": [lambda_expansion(k, n).to_json() for k in range(n)],
    }
    return EXIT_OK, report


def _zeta_terms(state) -> list:
    out = []
    for (w, m), c in sorted(state.zeta.items(), key=lambda kv: (kv[0][1], kv[0][0].tail, kv[0][0].head)):
        out.append([str(w), m, c.to_json()])
    return out


def _axioms(cfg: RunConfig) -> dict[str, Report]:
    state = solved(cfg.n, cfg.order, cfg.effective_u_cap, cfg.effective_bar_cap)
    pot = potential(cfg.n, cfg.order, cfg.effective_u_cap, cfg.effective_bar_cap)
    reps = check_primitive_axioms(state)
    return {
        "P0": reps["P0"], "closed": reps["closed"], "P1": reps["P1"], "P2": reps["P2"],
        "P3": reps["P3"], "P4": reps["P4"],
        "WDVV": check_wdvv(pot), "dimension": check_dimension_axiom(pot),
    }


def _primitive_form(cfg: RunConfig) -> tuple[int, dict]:
    state = solved(cfg.n, cfg.order, cfg.effective_u_cap, cfg.effective_bar_cap)
    axioms = _axioms(cfg)
    report = {
        "solver": state.to_json(),
        "zeta": _zeta_terms(state),
        "uniqueness": state.uniqueness,
        "axioms": axioms,
    }
    ok = all(r.passed for r in axioms.values())
    return (EXIT_OK if ok else EXIT_CHECK), report


def _potential(cfg: RunConfig) -> tuple[int, dict]:
    pot = potential(cfg.n, cfg.order, cfg.effective_u_cap, cfg.effective_bar_cap)
    report = {
        "flat_coords": _series_dict(dict(enumerate(pot.coords)), "tau_"),
        "inverse_coords": _series_dict(dict(enumerate(pot.inverse)), "t_"),
        "potential_derivs": _series_dict(dict(enumerate(pot.derivs)), "dF/dtau_"),
        "F": pot.F.to_json(),
        "correlators": correlator_tables(pot),
    }
    return EXIT_OK, report


def _verify(cfg: RunConfig) -> tuple[int, dict]:
    checks = module_checks(cfg.n, cfg.order, cfg.effective_u_cap, cfg.bar_cap)
    acceptance = {}
    for c in CRITERIA:
        rep = c.check(cfg.n, cfg.order) if cfg.n in c.levels or cfg.n > max(c.levels) else None
        acceptance[str(c.number)] = (
            {"title": c.title, "status": "skipped", "reason": f"n={cfg.n} outside the criterion's range"}
            if rep is None else {"title": c.title, **rep.to_json()}
        )
    axioms = _axioms(cfg)
    ok = (all(r.passed for r in checks) and all(r.passed for r in axioms.values())
          and all(a["status"] != "fail" for a in acceptance.values()))
    report = {"checks": checks, "axioms": axioms, "acceptance": acceptance, "passed": ok}
    return (EXIT_OK if ok else EXIT_CHECK), report


_HANDLERS = {
    "invariants": _invariants,
    "primitive-form": _primitive_form,
    "potential": _potential,
    "verify": _verify,
}


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one configuration; returns (exit status, JSON-safe report)."""
    header = {
        "schema_version": SCHEMA_VERSION, "command": cfg.command, "n": cfg.n, "order": cfg.order,
        "u_cap": cfg.effective_u_cap, "bar_cap": cfg.effective_bar_cap,
    }
    try:
        status, body = _HANDLERS[cfg.command](cfg)
    except TruncationError as exc:
        return EXIT_TRUNCATION, _json({**header, "error": "truncation", "message": str(exc)})
    except SolverError as exc:
        return EXIT_CHECK, _json({**header, "error": "solver", "message": str(exc)})
    return status, _json({**header, **body})


# ---------------------------------------------------------------------------
# rendering

def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def _fmt_series(s: Any) -> str:
    if not s:
        return "0"
    parts = []
    for exps, c in s:
        mono = "*".join(
            f"t{j}" if e == 1 else f"t{j}^{e}" for j, e in enumerate(exps) if e
        )
        if not mono:
            parts.append(c)
        elif c in ("1", "-1"):
            parts.append(("-" if c == "-1" else "") + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def _text_reports(title: str, reps: Any, lines: list[str]) -> None:
    lines.append(f"{title}:")
    items = reps.items() if isinstance(reps, dict) else ((r["identity"], r) for r in reps)
    for name, r in items:
        status = r.get("status", "?")
        extra = f"  {r['counterexample']}" if status == "fail" else ""
        lines.append(f"  {status.upper():7s} {name}{extra}")


def render_text(report: dict) -> str:
    lines = [f"{report['command']}  n={report['n']}  order={report['order']}  "
             f"u_cap={report['u_cap']}  bar_cap={report['bar_cap']}"]
    if "error" in report:
        lines.append(f"error ({report['error']}): {report['message']}")
        return "\n".join(lines)
    cmd = report["command"]
    if cmd == "invariants":
        hh = report["hochschild"]
        lines.append(f"HH dimension {hh['dimension']} (odd {hh['odd']}, even {hh['even']}), basis {', '.join(hh['basis'])}")
        lines.append("Mukai pairing:")
        lines += ["  " + " ".join(str(v) for v in row) for row in report["mukai_table"]]
        lines.append("coproduct:")
        for k, pairs in report["coproduct"].items():
            lines.append(f"  eps|eps^{k} -> " + " + ".join(f"{a} (x) {b}" for a, b in pairs))
        lines.append("inv_03:")
        lines += [f"  ({k}) = {v}" for k, v in report["costello"]["inv_03"].items()]
        lines.append("inv_11:")
        lines += [f"  ({k}) = {v}" for k, v in report["costello"]["inv_11"].items()]
    elif cmd == "primitive-form":
        lines.append(f"r = {report['solver']['r']}")
        lines.append("J-terms:")
        for m, js in report["solver"]["J"].items():
            for s, ser in js.items():
                lines.append(f"  J_{m}[{s}] = {_fmt_series(ser)}")
        lines.append("zeta:")
        for w, m, ser in report["zeta"]:
            lines.append(f"  {w} u^{m} : {_fmt_series(ser)}")
        _text_reports("axioms", report["axioms"], lines)
    elif cmd == "potential":
        lines.append("flat coordinates:")
        lines += [f"  {k} = {_fmt_series(v)}" for k, v in report["flat_coords"].items()]
        lines.append("potential derivatives (in tau, written t):")
        lines += [f"  {k} = {_fmt_series(v)}" for k, v in report["potential_derivs"].items()]
        lines.append(f"F (in tau, written t) = {_fmt_series(report['F'])}")
        c = report["correlators"]
        lines.append("two-point: " + ", ".join(f"<{k}>={v}" for k, v in c["two_point"].items()))
        lines.append("three-point: " + ", ".join(f"<{k}>={v}" for k, v in c["three_point"].items()))
        lines.append(f"four-point <1,1,n-1,n-1> = {c['four_point_11nn']}")
    elif cmd == "verify":
        _text_reports("checks", report["checks"], lines)
        _text_reports("axioms", report["axioms"], lines)
        lines.append("acceptance:")
        for k, a in report["acceptance"].items():
            lines.append(f"  {a['status'].upper():7s} criterion {k}: {a['title']}")
        lines.append("ALL PASSED" if report["passed"] else "FAILURES PRESENT")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# entry point

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit with status 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="catgw", description="Exact genus-zero invariants of the A_n matrix-factorization category.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, required=True, help="level n (the potential is x^{n+1}/(n+1))")
    p.add_argument("--order", type=int, default=4, help="t-order N (default 4)")
    p.add_argument("--u-cap", type=int, default=None, help="largest retained u-power (default order+2)")
    p.add_argument("--bar-cap", type=int, default=None, help="largest tail length (default (n+1)(N+u_cap+1)+n)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.n, args.order, args.u_cap, args.bar_cap, args.format)
        status, report = run(cfg)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"catgw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render_json(report) if cfg.format == "json" else render_text(report))
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
