"""Sparse exact Gaussian elimination.

Vectors are dicts ``key -> coefficient``; keys must be totally ordered.
Coefficients are :class:`~fractions.Fraction` for the basis rows; right-hand
sides may carry any coefficient type supporting ``+``, unary ``-`` and
``scale(Fraction)`` (e.g. :class:`TSeries`), so one elimination serves every
t-monomial at once.

Each row's pivot is its smallest key, and every other key in the row is
larger.  Reducing a vector in increasing key order therefore terminates and
is deterministic.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping

Vec = dict


def _scale(c: Any, f: Fraction) -> Any:
    if isinstance(c, (int, Fraction)):
        return c * f
    return c.scale(f)


def axpy(target: dict, row: Mapping, factor: Any) -> None:
    """target += factor * row (row has Fraction entries)."""
    for k, v in row.items():
        add = _scale(factor, v)
        if k in target:
            s = target[k] + add
            if s:
                target[k] = s
            else:
                del target[k]
        elif add:
            target[k] = add


@dataclass
class Echelon:
    """Incrementally built echelon basis with generator bookkeeping.

    ``rows[p]`` is a vector whose pivot (smallest key) is ``p`` with
    coefficient 1; ``combos[p]`` records it as a combination of the
    labelled generators that were added.
    """

    rows: dict[Any, dict] = field(default_factory=dict)
    combos: dict[Any, dict] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, vec: Mapping, label: Hashable | None = None) -> bool:
        """Insert a generator; returns False if it was dependent."""
        v = {k: Fraction(c) for k, c in vec.items() if c}
        combo: dict = {} if label is None else {label: Fraction(1)}
        v, combo = self._reduce_fraction(v, combo)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        self.rows[p] = {k: c * inv for k, c in v.items()}
        self.combos[p] = {k: c * inv for k, c in combo.items()}
        return True

    def _reduce_fraction(self, v: dict, combo: dict) -> tuple[dict, dict]:
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if not c or k not in self.rows:
                continue
            row = self.rows[k]
            for kk in row:
                if kk not in seen and kk not in v:
                    heapq.heappush(heap, kk)
            axpy(v, row, -c)
            axpy(combo, self.combos[k], -c)
        return v, combo

    def reduce(self, vec: Mapping) -> tuple[dict, dict]:
        """Reduce ``vec`` (arbitrary coefficient type) against the rows.

        Returns ``(residual, combination)`` with
        ``vec = residual + sum(combination[label] * generator[label])``.
        """
        v = {k: c for k, c in vec.items() if c}
        combo: dict = {}
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if not c or k not in self.rows:
                continue
            row = self.rows[k]
            for kk in row:
                if kk not in seen and kk not in v:
                    heapq.heappush(heap, kk)
            axpy(v, row, -c)
            for lab, f in self.combos[k].items():
                add = _scale(c, f)
                if lab in combo:
                    s = combo[lab] + add
                    if s:
                        combo[lab] = s
                    else:
                        del combo[lab]
                elif add:
                    combo[lab] = add
        return v, combo


def rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def kernel_dimension(columns: Iterable[Mapping]) -> int:
    """Dimension of the kernel of the linear map sending e_i to columns[i]."""
    cols = list(columns)
    return len(cols) - rank(cols)
