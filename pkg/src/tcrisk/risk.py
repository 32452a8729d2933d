"""Coherent risk measures given by finitely many test measures.

``rho(X) = max over P in conv(gens) of E_P[-X]``.  A linear objective peaks
at a vertex, so evaluating over the generators is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import lp
from .errors import InvalidObject, SpaceMismatch
from .measure import (
    ZERO,
    Measure,
    Partition,
    Position,
    Space,
    expectation,
    fmt_vec,
    non_polar,
)


@dataclass(frozen=True)
class RiskMeasure:
    space: Space
    gens: tuple[Measure, ...]

    def __post_init__(self):
        gens = tuple(self.gens)
        object.__setattr__(self, "gens", gens)
        if not gens:
            raise InvalidObject("a risk measure needs at least one test measure")
        for g in gens:
            if g.space != self.space:
                raise SpaceMismatch("generator lives on a different space")

    @classmethod
    def from_vectors(cls, space: Space, vectors: Iterable[Sequence]) -> "RiskMeasure":
        return cls(space, tuple(Measure(space, v) for v in vectors))

    def non_polar(self) -> frozenset[int]:
        return non_polar(self.gens)

    def __len__(self) -> int:
        return len(self.gens)


@dataclass(frozen=True)
class MembershipCertificate:
    """Verdict on ``q in conv(gens)`` with an exactly checkable witness.

    Inside: ``weights`` are convex coefficients reproducing ``q``.
    Outside: ``separator`` is a position ``y`` with ``E_q[y] - max_g E_g[y] = gap > 0``.
    """

    inside: bool
    weights: tuple[Fraction, ...] | None = None
    separator: Position | None = None
    gap: Fraction | None = None

    @property
    def verdict(self) -> str:
        return "inside" if self.inside else "outside"

    def verify(self, rm: RiskMeasure, q: Measure) -> bool:
        if self.inside:
            w = self.weights
            if w is None or len(w) != len(rm.gens) or any(v < 0 for v in w) or sum(w) != 1:
                return False
            combo = [sum((wi * g.p[i] for wi, g in zip(w, rm.gens)), ZERO) for i in range(rm.space.n)]
            return tuple(combo) == q.p
        y = self.separator
        if y is None:
            return False
        return expectation(y, q) > max(expectation(y, g) for g in rm.gens)

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict}
        if self.inside:
            out["weights"] = [str(w) for w in self.weights]
        else:
            out["separator"] = [str(v) for v in self.separator.x]
            out["gap"] = str(self.gap)
        return out


def _check(rm: RiskMeasure, obj) -> None:
    if obj.space != rm.space:
        raise SpaceMismatch("operand and risk measure live on different spaces")


def rho(rm: RiskMeasure, x: Position) -> Fraction:
    _check(rm, x)
    return max(-expectation(x, g) for g in rm.gens)


def conditional_rho(rm: RiskMeasure, x: Position, pi: Partition) -> Position:
    """Blockwise conditional risk.

    On a block some generator charges: the worst conditional expected loss over
    those generators.  On a polar block: the p0-conditional expected loss
    (0 if p0 does not charge it either).
    """
    _check(rm, x)
    values = []
    p0 = rm.space.p0
    for b in pi.blocks:
        best = None
        for g in rm.gens:
            m = sum((g.p[i] for i in b), ZERO)
            if m:
                v = -sum((x.x[i] * g.p[i] for i in b), ZERO) / m
                if best is None or v > best:
                    best = v
        if best is None:
            m0 = sum((p0[i] for i in b), ZERO)
            if m0:
                best = -sum((x.x[i] * p0[i] for i in b), ZERO) / m0
            else:
                best = max(-x.x[i] for i in b)
        values.append(best)
    return Position(rm.space, pi.spread(values))


def _canonical_separator(rm: RiskMeasure, q: Measure, raw: Sequence[Fraction]) -> Position:
    """Prefer an indicator (or complement) of a single outcome; else rescale raw to [0, 1]."""
    n = rm.space.n

    def separates(y):
        return lp.dot(y, q.p) > max(lp.dot(y, g.p) for g in rm.gens)

    for i in range(n):
        e = [Fraction(int(j == i)) for j in range(n)]
        if separates(e):
            return Position(rm.space, e)
    for i in range(n):
        e = [Fraction(int(j != i)) for j in range(n)]
        if separates(e):
            return Position(rm.space, e)
    # measures sum to 1, so shifting and positive scaling keep the separation
    lo, hi = min(raw), max(raw)
    y = [(v - lo) / (hi - lo) for v in raw] if hi > lo else list(raw)
    return Position(rm.space, y)


def membership(rm: RiskMeasure, q: Measure) -> MembershipCertificate:
    _check(rm, q)
    weights, raw = lp.convex_weights([g.p for g in rm.gens], q.p)
    if weights is not None:
        return MembershipCertificate(True, weights=tuple(weights))
    y = _canonical_separator(rm, q, raw)
    gap = expectation(y, q) - max(expectation(y, g) for g in rm.gens)
    if gap <= 0:
        raise ArithmeticError("separator failed exact re-check")
    return MembershipCertificate(False, separator=y, gap=gap)


def contains(rm: RiskMeasure, q: Measure) -> bool:
    return lp.in_hull([g.p for g in rm.gens], q.p)


def reduce_to_vertices(rm: RiskMeasure) -> RiskMeasure:
    keep = lp.hull_vertices([g.p for g in rm.gens])
    return RiskMeasure(rm.space, tuple(rm.gens[i] for i in keep))


def is_strictly_monotone(rm: RiskMeasure) -> bool:
    """True iff every vertex charges every outcome with positive reference mass.

    A vertex that misses such an outcome is exposed by some position, and
    lowering the payoff on the missed outcome a little leaves the risk unchanged.
    """
    live = [i for i, r in enumerate(rm.space.p0) if r > 0]
    return all(g.p[i] > 0 for g in reduce_to_vertices(rm).gens for i in live)


def monotonicity_counterexample(rm: RiskMeasure):
    """Return ``(x, y)`` with ``x >= y``, ``x != y`` on a p0-charged outcome and equal risk.

    ``None`` when the measure is strictly monotone.
    """
    vrm = reduce_to_vertices(rm)
    live = [i for i, r in enumerate(rm.space.p0) if r > 0]
    for k, v in enumerate(vrm.gens):
        missed = [i for i in live if v.p[i] == 0]
        if not missed:
            continue
        i = missed[0]
        others = [g for j, g in enumerate(vrm.gens) if j != k]
        if others:
            _, sep = lp.convex_weights([g.p for g in others], v.p)
            gap = lp.dot(sep, v.p) - max(lp.dot(sep, g.p) for g in others)
            x = -Position(rm.space, sep)
        else:
            gap = Fraction(1)
            x = Position.constant(rm.space, 0)
        delta = gap / 2
        y = x - Position.indicator(rm.space, [i]) * delta
        return x, y
    return None


def describe(rm: RiskMeasure) -> str:
    return "{" + "; ".join(fmt_vec(g.p) for g in rm.gens) + "}"
