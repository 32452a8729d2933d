"""Time-consistent dynamic versions of the four universal classes.

Each class comes with an explicit rule for the conditional risk at a
partition.  Wherever a block is invisible to the test measures, the rule falls
back to the reference conditional expectation; blocks the reference measure
does not charge get the worst case over the block, so the last level is -X
everywhere.

The entropic measure ``gamma * log E[exp(-X / gamma)]`` is included as a
contrast: convex, time-consistent for every filtration, yet not coherent.  It
is the only floating-point code in the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classify import Classification, classify
from .errors import NotUniversalError, PreconditionError
from .measure import ZERO, Filtration, Measure, Partition, Position
from .risk import RiskMeasure, reduce_to_vertices, rho


def _reference_value(x: Position, block: Sequence[int]) -> Fraction:
    p0 = x.space.p0
    m = sum((p0[i] for i in block), ZERO)
    if m == 0:
        return max(-x.x[i] for i in block)
    return -sum((x.x[i] * p0[i] for i in block), ZERO) / m


@dataclass
class DynamicRiskMeasure:
    base: RiskMeasure
    filtration: Filtration
    cls: Classification

    def _block_value(self, x: Position, block: tuple[int, ...]) -> Fraction:
        c = self.cls
        if c.tag == "OneAtomic":
            # B_t: the block whose intersection with {omega1} has reference mass
            if c.omega1 in block:
                return -x.x[c.omega1]
            return _reference_value(x, block)
        if c.tag == "TwoAtomic":
            has1, has2 = c.omega1 in block, c.omega2 in block
            if has1 and has2:
                return rho(self.base, x)
            if has1:
                return -x.x[c.omega1]
            if has2:
                return -x.x[c.omega2]
            return _reference_value(x, block)
        if c.tag == "Linear":
            p1 = c.p1.p
            m = sum((p1[i] for i in block), ZERO)
            if m == 0:
                return _reference_value(x, block)
            return -sum((x.x[i] * p1[i] for i in block), ZERO) / m
        if c.tag == "Extremal":
            live = [i for i in block if i in self._live]
            if not live:
                return _reference_value(x, block)
            return max(-x.x[i] for i in live)
        raise NotUniversalError(c.witness)

    def __post_init__(self):
        self._live = self.base.non_polar()

    def evaluate(self, x: Position, level: int) -> Position:
        if not 0 <= level < len(self.filtration):
            raise IndexError(f"level {level} out of range 0..{len(self.filtration) - 1}")
        pi = self.filtration[level]
        return Position(x.space, pi.spread([self._block_value(x, b) for b in pi.blocks]))

    def table(self, x: Position) -> list[Position]:
        return [self.evaluate(x, t) for t in range(len(self.filtration))]


def extend(rm: RiskMeasure, f: Filtration) -> DynamicRiskMeasure:
    rm = reduce_to_vertices(rm)
    c = classify(rm)
    if not c.universal:
        raise NotUniversalError(c.witness)
    return DynamicRiskMeasure(rm, f, c)


def semigroup_residual(d: DynamicRiskMeasure, x: Position, s: int, t: int) -> Fraction:
    """Largest blockwise gap in ``rho_s(-rho_t(X)) = rho_s(X)``."""
    if s > t:
        raise PreconditionError(f"need s <= t, got s={s}, t={t}")
    inner = d.evaluate(x, t)
    lhs = d.evaluate(-inner, s)
    rhs = d.evaluate(x, s)
    return max(abs(a - b) for a, b in zip(lhs.x, rhs.x))


# -- entropic contrast ----------------------------------------------------


def _entropic_block(values: Sequence[float], weights: Sequence[float], gamma: float) -> float:
    pairs = [(-v / gamma, w) for v, w in zip(values, weights) if w > 0]
    if not pairs:
        return 0.0
    total = math.fsum(w for _, w in pairs)
    top = max(e for e, _ in pairs)
    s = math.fsum(w * math.exp(e - top) for e, w in pairs) / total
    return gamma * (top + math.log(s))


def entropic_rho(x: Position | Sequence[float], gamma: float, p0: Measure) -> float:
    """``gamma * log sum_i p0_i exp(-x_i / gamma)`` evaluated stably."""
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    xs = [float(v) for v in x]
    return _entropic_block(xs, [float(w) for w in p0.p], gamma)


def conditional_entropic(x: Sequence[float], gamma: float, p0: Measure, pi: Partition) -> list[float]:
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    xs = [float(v) for v in x]
    w = [float(v) for v in p0.p]
    vals = [_entropic_block([xs[i] for i in b], [w[i] for i in b], gamma) for b in pi.blocks]
    return list(pi.spread(vals))


@dataclass
class EntropicReport:
    gamma: float
    levels: list[list[float]]
    residual: float
    homogeneity_gap: float

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "levels_approx": self.levels,
            "semigroup_residual_approx": self.residual,
            "homogeneity_gap_approx": self.homogeneity_gap,
        }


def entropic_consistency_demo(f: Filtration, gamma: float, p0: Measure, x: Position) -> EntropicReport:
    """Semigroup residual over all level pairs plus ``|rho(2x) - 2 rho(x)|``."""
    xs = [float(v) for v in x]
    levels = [conditional_entropic(xs, gamma, p0, pi) for pi in f.levels]
    residual = 0.0
    for s in range(len(f)):
        for t in range(s, len(f)):
            lhs = conditional_entropic([-v for v in levels[t]], gamma, p0, f[s])
            residual = max(residual, max(abs(a - b) for a, b in zip(lhs, levels[s])))
    gap = abs(entropic_rho([2 * v for v in xs], gamma, p0) - 2 * entropic_rho(xs, gamma, p0))
    return EntropicReport(gamma, levels, residual, gap)
