"""Exact rational simplex for ``max c.x  s.t.  A x = b, x >= 0``.

Two-phase tableau method with Bland's rule, so it terminates on degenerate
problems.  Sizes here are tiny (a few hundred columns at most), so clarity
wins over speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPResult", "solve_lp"]


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: tuple[Fraction, ...] = ()
    value: Fraction | None = None


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.cost: list[Fraction] = []
        self.reduced: list[Fraction] = []
        self.value = Fraction(0)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def set_objective(self, cost: Sequence[Fraction]) -> None:
        self.cost = list(cost)
        self.reduced = list(cost)
        self.value = Fraction(0)
        for i, bi in enumerate(self.basis):
            cb = self.cost[bi]
            if cb:
                row = self.rows[i]
                for j in range(self.ncols):
                    self.reduced[j] -= cb * row[j]
                self.value += cb * self.rhs[i]

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        p = row[c]
        if p != 1:
            self.rows[r] = row = [x / p for x in row]
            self.rhs[r] /= p
        for i, other in enumerate(self.rows):
            if i != r and other[c]:
                f = other[c]
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        f = self.reduced[c]
        if f:
            self.reduced = [a - f * b for a, b in zip(self.reduced, row)]
            self.value += f * self.rhs[r]
        self.basis[r] = c

    def run(self, allowed: Sequence[bool]) -> str:
        while True:
            enter = next((j for j in range(self.ncols) if allowed[j] and self.reduced[j] > 0), None)
            if enter is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                if row[enter] > 0:
                    ratio = self.rhs[i] / row[enter]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter)


def solve_lp(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    m = len(A)
    n = len(c)
    if any(len(r) != n for r in A) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")
    rows, rhs = [], []
    for r, bi in zip(A, b):
        r = [Fraction(x) for x in r]
        bi = Fraction(bi)
        if bi < 0:
            r, bi = [-x for x in r], -bi
        rows.append(r)
        rhs.append(bi)

    # phase 1: one artificial per row, minimise their sum
    for i, r in enumerate(rows):
        r.extend(Fraction(int(i == k)) for k in range(m))
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])
    tab.set_objective([Fraction(0)] * n + [Fraction(-1)] * m)
    tab.run([True] * (n + m))
    if tab.value < 0:
        return LPResult("infeasible")

    # push artificials out of the basis; rows where that is impossible are redundant
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n:
            j = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if j is None:
                del tab.rows[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, j)
        i += 1
    tab.rows = [r[:n] for r in tab.rows]

    if not tab.rows:
        # A is zero (or all rows were redundant): every x >= 0 is feasible
        cost = [Fraction(x) for x in c]
        if any(x > 0 for x in cost):
            return LPResult("unbounded")
        return LPResult("optimal", tuple([Fraction(0)] * n), Fraction(0))

    tab.set_objective([Fraction(x) for x in c])
    status = tab.run([True] * n)
    if status != "optimal":
        return LPResult(status)
    x = [Fraction(0)] * n
    for i, bi in enumerate(tab.basis):
        x[bi] = tab.rhs[i]
    return LPResult("optimal", tuple(x), tab.value)
