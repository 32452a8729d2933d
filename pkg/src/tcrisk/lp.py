"""Exact convex-hull membership by a phase-one simplex over Fractions.

The only question ever asked is whether a target vector ``q`` is a convex
combination of finitely many points.  The answer comes with a certificate:
either the convex weights, or a separating direction ``y`` with
``y.q > max_i y.g_i`` read off the optimal phase-one duals (Farkas).
Bland's rule keeps the pivoting finite; problem sizes here are tiny.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

Vector = Sequence[Fraction]


def dot(a: Vector, b: Vector) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), ZERO)


def _phase_one(A: list[list[Fraction]], b: list[Fraction]):
    """Minimise the sum of artificials for ``A lam = b, lam >= 0`` (b >= 0).

    Returns ``(lam, None)`` when feasible, else ``(None, y)`` with
    ``A^T y <= 0`` and ``b.y > 0``.
    """
    m, k = len(A), len(A[0]) if A else 0
    width = k + m
    # tableau rows: [structural | artificial | rhs]
    T = [A[r][:] + [ONE if j == r else ZERO for j in range(m)] + [b[r]] for r in range(m)]
    basis = [k + r for r in range(m)]
    cost = [ZERO] * k + [ONE] * m

    while True:
        # reduced costs d_j = c_j - c_B . T[:, j]
        d = []
        for j in range(width):
            d.append(cost[j] - sum((cost[basis[r]] * T[r][j] for r in range(m)), ZERO))
        entering = next((j for j in range(width) if d[j] < 0), None)
        if entering is None:
            break
        leave, best = None, None
        for r in range(m):
            a = T[r][entering]
            if a > 0:
                ratio = T[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    leave, best = r, ratio
        if leave is None:  # cannot happen: phase one is bounded below by 0
            raise RuntimeError("phase-one simplex reported unbounded")
        piv = T[leave][entering]
        T[leave] = [v / piv for v in T[leave]]
        for r in range(m):
            if r != leave and T[r][entering] != 0:
                f = T[r][entering]
                T[r] = [v - f * w for v, w in zip(T[r], T[leave])]
        basis[leave] = entering

    value = sum((cost[basis[r]] * T[r][-1] for r in range(m)), ZERO)
    if value == 0:
        lam = [ZERO] * k
        for r in range(m):
            if basis[r] < k:
                lam[basis[r]] = T[r][-1]
        return lam, None
    # y^T = c_B^T B^{-1}; B^{-1} sits in the artificial columns
    y = [sum((cost[basis[r]] * T[r][k + i] for r in range(m)), ZERO) for i in range(m)]
    return None, y


def convex_weights(points: Sequence[Vector], q: Vector):
    """Decide ``q in conv(points)``.

    Returns ``(weights, None)`` if inside, otherwise ``(None, separator)`` where
    ``dot(separator, q) > max(dot(separator, g) for g in points)``.
    The separator is exact but not normalised.
    """
    if not points:
        raise ValueError("empty point set")
    dim = len(q)
    k = len(points)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(dim):
        row = [Fraction(g[i]) for g in points]
        val = Fraction(q[i])
        if val < 0:
            row, val = [-v for v in row], -val
        rows.append(row)
        rhs.append(val)
    rows.append([ONE] * k)
    rhs.append(ONE)
    lam, y = _phase_one(rows, rhs)
    if lam is not None:
        return lam, None
    # undo the sign flips applied to keep b >= 0
    sep = []
    for i in range(dim):
        sign = -1 if Fraction(q[i]) < 0 else 1
        sep.append(sign * y[i])
    # with t = y[dim]: A^T y <= 0 gives sep.g + t <= 0 for every point,
    # and b.y > 0 gives sep.q + t > 0
    return None, sep


def in_hull(points: Sequence[Vector], q: Vector) -> bool:
    return convex_weights(points, q)[0] is not None


def hull_vertices(points: Sequence[Vector]) -> list[int]:
    """Indices of the points that are not convex combinations of the others.

    Exact duplicates keep their first occurrence.  Order is preserved.
    """
    keep: list[int] = []
    seen = set()
    for i, p in enumerate(points):
        key = tuple(p)
        if key not in seen:
            seen.add(key)
            keep.append(i)
    # removing a redundant point leaves the hull unchanged, so one pass suffices
    for i in list(keep):
        if len(keep) > 1 and in_hull([points[j] for j in keep if j != i], points[i]):
            keep.remove(i)
    return keep
