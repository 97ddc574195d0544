"""Exact feasibility of mixed strict / non-strict linear inequality systems.

Fourier-Motzkin elimination over ``Fraction`` with strictness tracking, then
back-substitution to produce a rational witness.  Only meant for the small
dimensions used here; no floating point anywhere.
"""
from __future__ import annotations

from fractions import Fraction

# A normalized constraint: coeffs . x  <  rhs   (strict)   or   <=  rhs.
Row = tuple[tuple[Fraction, ...], Fraction, bool]

RELATIONS = ("<", "<=", ">", ">=", "=")


def _rows(constraints, dim: int) -> list[Row]:
    rows = []
    for coeffs, rel, rhs in constraints:
        if len(coeffs) != dim:
            raise ValueError(f"constraint has {len(coeffs)} coefficients, expected {dim}")
        a = tuple(Fraction(c) for c in coeffs)
        b = Fraction(rhs)
        neg = tuple(-c for c in a)
        if rel == "<":
            rows.append((a, b, True))
        elif rel == "<=":
            rows.append((a, b, False))
        elif rel == ">":
            rows.append((neg, -b, True))
        elif rel == ">=":
            rows.append((neg, -b, False))
        elif rel == "=":
            rows.append((a, b, False))
            rows.append((neg, -b, False))
        else:
            raise ValueError(f"unknown relation {rel!r}")
    return rows


def _normalize(rows: list[Row]) -> list[Row] | None:
    """Scale, drop constants and keep the tightest row per direction; None if infeasible."""
    best: dict[tuple[Fraction, ...], tuple[Fraction, bool]] = {}
    for a, b, strict in rows:
        lead = next((c for c in a if c != 0), None)
        if lead is None:
            if b < 0 or (strict and b == 0):
                return None
            continue
        scale = abs(lead)
        a = tuple(c / scale for c in a)
        b = b / scale
        old = best.get(a)
        if old is None or b < old[0] or (b == old[0] and strict and not old[1]):
            best[a] = (b, strict)
    return [(a, b, s) for a, (b, s) in best.items()]


def _eliminate(rows: list[Row], k: int) -> list[Row]:
    upper, lower, rest = [], [], []
    for row in rows:
        c = row[0][k]
        (upper if c > 0 else lower if c < 0 else rest).append(row)
    out = list(rest)
    for au, bu, su in upper:
        cu = au[k]
        for al, bl, sl in lower:
            cl = -al[k]
            a = tuple(x / cu + y / cl for x, y in zip(au, al))
            out.append((a, bu / cu + bl / cl, su or sl))
    return out


def _pick(lo, lo_strict, hi, hi_strict):
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(0) if hi > 0 or (hi == 0 and not hi_strict) else hi - 1
    if hi is None:
        return Fraction(0) if lo < 0 or (lo == 0 and not lo_strict) else lo + 1
    if lo == hi:
        if lo_strict or hi_strict:
            return None
        return lo
    if lo > hi:
        return None
    return (lo + hi) / 2


def feasible_point(constraints, dim: int) -> tuple[Fraction, ...] | None:
    """A rational point satisfying every constraint, or None if there is none.

    ``constraints`` is an iterable of ``(coeffs, relation, rhs)`` with relation
    one of ``<, <=, >, >=, =``.
    """
    rows = _normalize(_rows(constraints, dim))
    if rows is None:
        return None
    stages = []
    remaining = set(range(dim))
    while remaining:
        # eliminate the variable producing the fewest new rows
        def cost(k):
            up = sum(1 for a, _, _ in rows if a[k] > 0)
            lo = sum(1 for a, _, _ in rows if a[k] < 0)
            return (up * lo - up - lo, k)

        k = min(remaining, key=cost)
        stages.append((k, rows))
        rows = _normalize(_eliminate(rows, k))
        if rows is None:
            return None
        remaining.discard(k)
    point: list[Fraction | None] = [None] * dim
    for k, stage_rows in reversed(stages):
        lo = hi = None
        lo_strict = hi_strict = False
        for a, b, strict in stage_rows:
            c = a[k]
            if c == 0:
                continue
            bound = (b - sum(a[j] * point[j] for j in range(dim) if j != k and a[j] != 0)) / c
            if c > 0:
                if hi is None or bound < hi or (bound == hi and strict):
                    hi, hi_strict = bound, strict
            elif lo is None or bound > lo or (bound == lo and strict):
                lo, lo_strict = bound, strict
        value = _pick(lo, lo_strict, hi, hi_strict)
        if value is None:
            raise AssertionError("back-substitution failed on a system judged feasible")
        point[k] = value
    return tuple(point)


def feasible_interior(constraints, dim: int) -> tuple[Fraction, ...] | None:
    """Witness for a system of strict inequalities (``<`` / ``>``) or None."""
    constraints = list(constraints)
    if any(rel not in ("<", ">") for _, rel, _ in constraints):
        raise ValueError("feasible_interior takes strict inequalities only")
    return feasible_point(constraints, dim)


def satisfies(point, constraints) -> bool:
    for coeffs, rel, rhs in constraints:
        v = sum(Fraction(c) * x for c, x in zip(coeffs, point))
        rhs = Fraction(rhs)
        ok = {
            "<": v < rhs,
            "<=": v <= rhs,
            ">": v > rhs,
            ">=": v >= rhs,
            "=": v == rhs,
        }[rel]
        if not ok:
            return False
    return True
