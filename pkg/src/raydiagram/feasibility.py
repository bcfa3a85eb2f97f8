"""Exact linear feasibility over the rationals via Fourier-Motzkin elimination.

Systems are lists of constraints ``sum(coeffs[v] * x[v]) >= const`` with
integer data (callers clear denominators first).  The solver decides
feasibility exactly and, when feasible, returns one rational witness by
back-substitution through the elimination stack.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

Constraint = Tuple[Tuple[int, ...], int]  # (coefficients, constant): coeffs . x >= const


class FeasibilityError(RuntimeError):
    """Raised when the elimination exceeds the safety cap."""


_ROW_CAP = 200_000


def _normalize(coeffs: Sequence[int], const: int) -> Constraint:
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
    g = gcd(g, abs(const))  # include const: division below stays exact
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        const //= g
    return tuple(coeffs), const


def _dedupe(rows: List[Constraint]) -> List[Constraint]:
    best: Dict[Tuple[int, ...], int] = {}
    for coeffs, const in rows:
        prev = best.get(coeffs)
        if prev is None or const > prev:
            best[coeffs] = const
    return [(c, b) for c, b in best.items()]


def fm_feasible(
    constraints: Sequence[Constraint], nvars: int
) -> Optional[List[Fraction]]:
    """Return a witness for the system, or None when it is infeasible."""
    rows = []
    for coeffs, const in constraints:
        coeffs = tuple(coeffs)
        if len(coeffs) != nvars:
            raise ValueError("constraint arity mismatch")
        if any(coeffs):
            rows.append(_normalize(coeffs, const))
        elif const > 0:
            return None  # 0 >= positive
    rows = _dedupe(rows)

    order: List[int] = []
    stack: List[Tuple[int, List[Constraint]]] = []
    remaining = list(range(nvars))
    while remaining:
        # greedy: eliminate the variable with the fewest lower*upper pairings
        def cost(v: int) -> int:
            pos = sum(1 for c, _ in rows if c[v] > 0)
            neg = sum(1 for c, _ in rows if c[v] < 0)
            return pos * neg - pos - neg

        var = min(remaining, key=cost)
        remaining.remove(var)
        order.append(var)
        stack.append((var, rows))

        lowers = [(c, b) for c, b in rows if c[var] > 0]
        uppers = [(c, b) for c, b in rows if c[var] < 0]
        keep = [(c, b) for c, b in rows if c[var] == 0]
        new_rows = keep
        for lc, lb in lowers:
            for uc, ub in uppers:
                lp, un = lc[var], -uc[var]
                coeffs = tuple(un * lc[k] + lp * uc[k] for k in range(nvars))
                const = un * lb + lp * ub
                if any(coeffs):
                    new_rows.append(_normalize(coeffs, const))
                elif const > 0:
                    return None
        rows = _dedupe(new_rows)
        if len(rows) > _ROW_CAP:
            raise FeasibilityError("Fourier-Motzkin row cap exceeded")

    for coeffs, const in rows:
        if const > 0:
            return None

    # back-substitute a witness
    witness: List[Optional[Fraction]] = [None] * nvars
    for var, system in reversed(stack):
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for coeffs, const in system:
            cv = coeffs[var]
            if cv == 0:
                continue
            rest = Fraction(const)
            for k in range(nvars):
                if k != var and coeffs[k]:
                    rest -= coeffs[k] * witness[k]
            bound = rest / cv
            if cv > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is not None and hi is not None:
            value = (lo + hi) / 2
        elif lo is not None:
            value = lo
        elif hi is not None:
            value = hi
        else:
            value = Fraction(0)
        witness[var] = value
    return [w if w is not None else Fraction(0) for w in witness]
