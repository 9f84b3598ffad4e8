"""Exact rational feasibility for systems  A x = b,  x >= 0.

Everything here is :class:`fractions.Fraction` arithmetic; there is no
tolerance anywhere.  The solver either returns a non-negative rational
solution or a Farkas certificate of infeasibility:

    a vector y with  yᵀA <= 0  componentwise and  yᵀb > 0.

Evaluating the certificate against the system is a finite exact computation,
so every infeasibility verdict can be re-checked independently of the
pivoting path that produced it.

Method: forward Gaussian elimination with combination tracking (this catches
rank-deficient inconsistencies and yields certificates directly), followed
by a phase-1 simplex with Bland's least-index rule on the reduced system.
Bland's rule guarantees termination; all orderings are fixed, so the output
is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalConsistencyError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class FarkasCertificate:
    """A separating functional for an infeasible system  A x = b, x >= 0."""

    coefficients: tuple[Fraction, ...]

    def verify(self, rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> bool:
        """Exactly evaluate  yᵀA <= 0  and  yᵀb > 0  against a system."""
        y = self.coefficients
        if len(y) != len(rows):
            return False
        ncols = len(rows[0]) if rows else 0
        for j in range(ncols):
            if sum((y[i] * rows[i][j] for i in range(len(rows))), ZERO) > 0:
                return False
        return sum((y[i] * rhs[i] for i in range(len(rows))), ZERO) > 0


@dataclass(frozen=True)
class FeasibilityOutcome:
    feasible: bool
    solution: tuple[Fraction, ...] | None
    certificate: FarkasCertificate | None


def _combine(target: dict[int, Fraction], source: dict[int, Fraction], factor: Fraction) -> None:
    for k, v in source.items():
        new = target.get(k, ZERO) - factor * v
        if new == 0:
            target.pop(k, None)
        else:
            target[k] = new


def solve_nonnegative(rows: Sequence[Sequence], rhs: Sequence) -> FeasibilityOutcome:
    """Find x >= 0 with A x = b, or a Farkas certificate that none exists."""
    a = [[Fraction(v) for v in row] for row in rows]
    b = [Fraction(v) for v in rhs]
    if len(a) != len(b):
        raise ValueError("one right-hand side per row required")
    m = len(a)
    n = len(a[0]) if m else 0
    for row in a:
        if len(row) != n:
            raise ValueError("ragged coefficient matrix")

    # -- presolve: forward elimination with combination tracking ------------
    pivots: list[tuple[list[Fraction], Fraction, dict[int, Fraction], int]] = []
    for i in range(m):
        cur = list(a[i])
        cur_rhs = b[i]
        combo: dict[int, Fraction] = {i: ONE}
        for prow, prhs, pcombo, pcol in pivots:
            f = cur[pcol]
            if f:
                for j in range(n):
                    if prow[j]:
                        cur[j] -= f * prow[j]
                cur_rhs -= f * prhs
                _combine(combo, pcombo, f)
        lead = next((j for j in range(n) if cur[j] != 0), None)
        if lead is None:
            if cur_rhs != 0:
                return FeasibilityOutcome(False, None, _certificate(combo, cur_rhs, a, b, m))
            continue
        inv = ONE / cur[lead]
        cur = [v * inv for v in cur]
        cur_rhs *= inv
        combo = {k: v * inv for k, v in combo.items()}
        pivots.append((cur, cur_rhs, combo, lead))

    if not pivots:
        solution = tuple(ZERO for _ in range(n))
        return FeasibilityOutcome(True, solution, None)

    # -- phase-1 simplex on the reduced system ------------------------------
    k = len(pivots)
    tableau: list[list[Fraction]] = []
    combos: list[dict[int, Fraction]] = []
    for prow, prhs, pcombo, _ in pivots:
        if prhs < 0:
            prow = [-v for v in prow]
            prhs = -prhs
            pcombo = {key: -v for key, v in pcombo.items()}
        # columns: n structural, k artificial, then rhs
        row = list(prow) + [ZERO] * k + [prhs]
        tableau.append(row)
        combos.append(pcombo)
    for i in range(k):
        tableau[i][n + i] = ONE
    basis = [n + i for i in range(k)]
    rhs_col = n + k

    def artificial_rows() -> list[int]:
        return [i for i in range(k) if basis[i] >= n]

    while True:
        art = artificial_rows()
        if not art:
            break
        entering = None
        for j in range(n):
            if sum((tableau[i][j] for i in art), ZERO) > 0:
                entering = j
                break
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(k):
            coef = tableau[i][entering]
            if coef > 0:
                ratio = tableau[i][rhs_col] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            raise InternalConsistencyError("phase-1 objective is bounded; no leaving row found")
        _pivot(tableau, leaving, entering)
        basis[leaving] = entering

    objective = sum((tableau[i][rhs_col] for i in artificial_rows()), ZERO)
    if objective > 0:
        combo: dict[int, Fraction] = {}
        for i in artificial_rows():
            # dual weights live in the artificial columns: row block M of M[A|I|b]
            for col in range(k):
                w = tableau[i][n + col]
                if w:
                    _combine(combo, combos[col], -w)
        total_rhs = sum((combo.get(i, ZERO) * b[i] for i in combo), ZERO)
        return FeasibilityOutcome(False, None, _certificate(combo, total_rhs, a, b, m))

    solution = [ZERO] * n
    for i in range(k):
        if basis[i] < n:
            solution[basis[i]] = tableau[i][rhs_col]
    for i in range(m):
        total = sum((a[i][j] * solution[j] for j in range(n) if solution[j]), ZERO)
        if total != b[i]:
            raise InternalConsistencyError("simplex returned a vector that misses a constraint")
    if any(v < 0 for v in solution):
        raise InternalConsistencyError("simplex returned a negative component")
    return FeasibilityOutcome(True, tuple(solution), None)


def _pivot(tableau: list[list[Fraction]], row: int, col: int) -> None:
    inv = ONE / tableau[row][col]
    tableau[row] = [v * inv for v in tableau[row]]
    prow = tableau[row]
    for i, other in enumerate(tableau):
        if i == row:
            continue
        f = other[col]
        if f:
            tableau[i] = [x - f * p for x, p in zip(other, prow)]


def _certificate(combo: dict[int, Fraction], value: Fraction, a, b, m: int) -> FarkasCertificate:
    if value == 0:
        raise InternalConsistencyError("degenerate certificate")
    sign = ONE if value > 0 else -ONE
    dense = [ZERO] * m
    for idx, v in combo.items():
        dense[idx] = sign * v
    cert = FarkasCertificate(tuple(dense))
    if not cert.verify(a, b):
        raise InternalConsistencyError("constructed certificate failed self-verification")
    return cert
