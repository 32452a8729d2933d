"""Strategies and independent oracles shared by the test modules.

The oracles here are deliberately written from the definitions, not by
calling into the package's own implementation of the same quantity.
"""
import itertools
from fractions import Fraction as F

from hypothesis import strategies as st

from tcrisk import Measure, Partition, Position, RiskMeasure, Space


def fr(*vals):
    return tuple(F(v) for v in vals)


@st.composite
def spaces(draw, min_n=2, max_n=5, nulls=True):
    n = draw(st.integers(min_n, max_n))
    w = draw(st.lists(st.integers(0 if nulls else 1, 4), min_size=n, max_size=n))
    if not any(w):
        w[0] = 1
    return Space.from_weights(w)


@st.composite
def measures(draw, space, zeros=True):
    live = [i for i, r in enumerate(space.p0) if r > 0]
    w = [0] * space.n
    for i in live:
        w[i] = draw(st.integers(0 if zeros else 1, 6))
    if not sum(w):
        w[live[0]] = 1
    return Measure(space, tuple(F(v, sum(w)) for v in w))


@st.composite
def positions(draw, space, lo=-6, hi=6):
    return Position(space, tuple(F(draw(st.integers(lo * 4, hi * 4)), 4) for _ in range(space.n)))


@st.composite
def partitions(draw, n):
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    groups = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    return Partition(groups.values(), n)


@st.composite
def risk_measures(draw, space, max_gens=4):
    k = draw(st.integers(1, max_gens))
    return RiskMeasure(space, tuple(draw(measures(space)) for _ in range(k)))


def grid_rho(rm, x, steps=12):
    """Max of E[-x] over a grid of convex weights (includes every vertex)."""
    k = len(rm.gens)
    best = None
    for combo in itertools.product(range(steps + 1), repeat=k):
        if sum(combo) != steps:
            continue
        val = -sum(F(c, steps) * g.p[i] * x.x[i] for c, g in zip(combo, rm.gens) for i in range(rm.space.n))
        best = val if best is None or val > best else best
    return best


def density_paste(p, p_prime, pi):
    """``Z * E0[Z'|pi] / E0[Z|pi]`` with densities w.r.t. the reference measure."""
    p0 = p.space.p0
    z = [p.p[i] / p0[i] if p0[i] else F(0) for i in range(p.space.n)]
    zp = [p_prime.p[i] / p0[i] if p0[i] else F(0) for i in range(p.space.n)]
    out = [F(0)] * p.space.n
    for b in pi.blocks:
        m0 = sum(p0[i] for i in b)
        if m0 == 0:
            continue
        ez = sum(z[i] * p0[i] for i in b) / m0
        ezp = sum(zp[i] * p0[i] for i in b) / m0
        for i in b:
            out[i] = z[i] * ezp / ez * p0[i] if ezp else F(0)
    return tuple(out)
