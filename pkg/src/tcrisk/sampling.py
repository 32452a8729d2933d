"""Random exact-rational objects for property checks and demos.

Every function takes a ``random.Random`` so results are reproducible from a seed.
"""
from __future__ import annotations

import itertools
import os
import random
from fractions import Fraction

from .measure import Filtration, Measure, Partition, Position, Space
from .risk import RiskMeasure

DEFAULT_SEED = 20240601


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    """Seed for randomized suites; ``TCRISK_SEED`` overrides the default."""
    return int(os.environ.get("TCRISK_SEED", default))


def random_space(rng: random.Random, n: int, null_prob: float = 0.0) -> Space:
    w = [0 if rng.random() < null_prob else rng.randint(1, 4) for _ in range(n)]
    if not any(w):
        w[rng.randrange(n)] = 1
    return Space.from_weights(w)


def random_measure(space: Space, rng: random.Random, zero_prob: float = 0.0, scale: int = 6) -> Measure:
    live = [i for i, r in enumerate(space.p0) if r > 0]
    while True:
        w = [0] * space.n
        for i in live:
            w[i] = 0 if rng.random() < zero_prob else rng.randint(1, scale)
        total = sum(w)
        if total:
            return Measure(space, tuple(Fraction(v, total) for v in w))


def random_risk_measure(space: Space, rng: random.Random, max_gens: int = 4, zero_prob: float = 0.25) -> RiskMeasure:
    k = rng.randint(1, max_gens)
    return RiskMeasure(space, tuple(random_measure(space, rng, zero_prob) for _ in range(k)))


def random_position(space: Space, rng: random.Random, lo: int = -9, hi: int = 9, den: int = 4) -> Position:
    return Position(space, tuple(Fraction(rng.randint(lo * den, hi * den), den) for _ in range(space.n)))


def random_filtration(n: int, rng: random.Random) -> Filtration:
    """Split one random block at a time; keep each intermediate level with probability 1/2."""
    blocks = [list(range(n))]
    levels = [Partition.trivial(n)]
    while any(len(b) > 1 for b in blocks):
        big = [k for k, b in enumerate(blocks) if len(b) > 1]
        k = rng.choice(big)
        b = blocks.pop(k)
        rng.shuffle(b)
        cut = rng.randint(1, len(b) - 1)
        blocks += [sorted(b[:cut]), sorted(b[cut:])]
        if rng.random() < 0.5 or all(len(c) == 1 for c in blocks):
            p = Partition(blocks, n)
            if p != levels[-1]:
                levels.append(p)
    if not levels[-1].is_discrete:
        levels.append(Partition.discrete(n))
    return Filtration(tuple(levels))


def rectangular_risk_measure(space: Space, f: Filtration, rng: random.Random, max_gens: int = 4) -> RiskMeasure:
    """A test set that is a product of per-node conditional choices along ``f``.

    Such sets are stable under pasting at every level of ``f`` by construction.
    Branching is capped so the number of generators stays at most ``max_gens``.
    """
    p0 = space.p0
    # nodes: (level, block) with children at the next level
    choices: list[list[dict]] = []
    budget = max_gens
    for t in range(len(f) - 1):
        for blk in f[t].blocks:
            kids = [c for c in f[t + 1].blocks if set(c) <= set(blk)]
            opts = []
            n_opts = 2 if budget >= 2 and rng.random() < 0.6 else 1
            if n_opts == 2:
                budget //= 2
            for _ in range(n_opts):
                w = {}
                for c in kids:
                    live = any(p0[i] > 0 for i in c)
                    w[c] = rng.randint(0 if len(kids) > 1 else 1, 4) if live else 0
                if not any(w.values()):
                    # dead blocks get an arbitrary transition; they carry no mass
                    c = next((c for c in kids if any(p0[i] > 0 for i in c)), kids[0])
                    w[c] = 1
                tot = sum(w.values())
                opts.append({(t + 1, c): Fraction(v, tot) for c, v in w.items()})
            choices.append(opts)
    gens = []
    for combo in itertools.product(*choices):
        trans = {}
        for node in combo:
            trans.update(node)
        # multiply transition probabilities down the tree; leaves are singletons
        p = [Fraction(0)] * space.n
        for i in range(space.n):
            v = Fraction(1)
            for t in range(1, len(f)):
                v *= trans[t, f[t].blocks[f[t].block_of(i)]]
            p[i] = v
        gens.append(Measure(space, tuple(p)))
    return RiskMeasure(space, tuple(gens))


def class_fixtures(space: Space, rng: random.Random) -> dict[str, RiskMeasure]:
    """One risk measure of each universal class on ``space``."""
    live = [i for i, r in enumerate(space.p0) if r > 0]
    n = space.n
    out = {}
    out["OneAtomic"] = RiskMeasure(space, (Measure.point_mass(space, rng.choice(live)),))
    if len(live) >= 2:
        i, j = sorted(rng.sample(live, 2))
        a = Fraction(rng.randint(1, 3), 8)
        b = a + Fraction(rng.randint(1, 3), 8)

        def two(p):
            v = [Fraction(0)] * n
            v[i], v[j] = p, 1 - p
            return Measure(space, tuple(v))

        out["TwoAtomic"] = RiskMeasure(space, (two(a), two(b)))
        out["Extremal"] = RiskMeasure(space, tuple(Measure.point_mass(space, k) for k in live))
        out["Linear"] = RiskMeasure(space, (random_measure(space, rng),))
    return out
