"""Pasting of test measures and the rectangle test for time consistency.

A risk measure is consistent at a partition ``pi`` exactly when its set of
test measures equals the "rectangle" built from it: every block marginal it
allows, combined with every per-block conditional it allows.  The set always
sits inside its rectangle, so it is enough to check that the rectangle's
extreme points (products of marginal and conditional vertices) belong to it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import lp
from .errors import IllDefinedPaste, PolarBlock, SpaceMismatch
from .measure import ZERO, Filtration, Measure, Partition, Position
from .risk import MembershipCertificate, RiskMeasure, conditional_rho, membership


def paste(p: Measure, p_prime: Measure, pi: Partition) -> Measure:
    """Block marginals of ``p_prime`` with the within-block conditionals of ``p``.

    This is the density form ``Z * E[Z'|pi] / E[Z|pi]`` written out on a
    finite space.  Raises :class:`IllDefinedPaste` when ``p_prime`` charges a
    block that ``p`` does not.
    """
    if p.space != p_prime.space:
        raise SpaceMismatch("paste operands live on different spaces")
    q = [ZERO] * p.space.n
    for b in pi.blocks:
        target = p_prime.mass(b)
        if target == 0:
            continue
        source = p.mass(b)
        if source == 0:
            raise IllDefinedPaste(b)
        ratio = target / source
        for i in b:
            q[i] = p.p[i] * ratio
    return Measure(p.space, tuple(q))


def conditional_polytope(rm: RiskMeasure, block: Sequence[int]) -> list[tuple[Fraction, ...]]:
    """Vertices of the set of conditionals on ``block``, in block order.

    Conditioning a mixture gives a mixture of the conditioned generators (with
    weights proportional to their block mass), and generators that miss the
    block drop out, so the conditioned positive-mass generators span the set.
    """
    block = tuple(block)
    conds = [g.conditional(block) for g in rm.gens if g.mass(block) > 0]
    if not conds:
        raise PolarBlock(block)
    return [conds[i] for i in lp.hull_vertices(conds)]


def marginal_polytope(rm: RiskMeasure, pi: Partition) -> list[tuple[Fraction, ...]]:
    margs = [tuple(g.mass(b) for b in pi.blocks) for g in rm.gens]
    return [margs[i] for i in lp.hull_vertices(margs)]


def rectangle_vertices(rm: RiskMeasure, pi: Partition) -> list[Measure]:
    """All pastes of a marginal vertex with one conditional vertex per charged block.

    These include every extreme point of the rectangle.  Duplicates are
    dropped; order follows marginals first, then conditionals lexicographically.
    """
    margs = marginal_polytope(rm, pi)
    conds: dict[int, list[tuple[Fraction, ...]]] = {}
    out: list[Measure] = []
    seen = set()
    for m in margs:
        charged = [k for k, v in enumerate(m) if v > 0]
        for k in charged:
            if k not in conds:
                conds[k] = conditional_polytope(rm, pi.blocks[k])
        for choice in itertools.product(*(conds[k] for k in charged)):
            q = [ZERO] * rm.space.n
            for k, c in zip(charged, choice):
                for i, ci in zip(pi.blocks[k], c):
                    q[i] = m[k] * ci
            key = tuple(q)
            if key not in seen:
                seen.add(key)
                out.append(Measure(rm.space, key))
    return out


@dataclass
class RectangleReport:
    partition: Partition
    marginal_vertices: list[tuple[Fraction, ...]]
    conditional_vertices: dict[tuple[int, ...], list[tuple[Fraction, ...]]]
    vertices: list[Measure]
    failures: list[tuple[Measure, MembershipCertificate]] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        space = self.vertices[0].space if self.vertices else None
        name = (lambda b: [space.outcomes[i] for i in b]) if space else list
        return {
            "partition": [name(b) for b in self.partition.blocks],
            "consistent": self.consistent,
            "marginal_vertices": [[str(v) for v in m] for m in self.marginal_vertices],
            "rectangle_vertices": [[str(v) for v in q.p] for q in self.vertices],
            "failures": [
                {"vertex": [str(v) for v in q.p], "certificate": cert.to_dict()}
                for q, cert in self.failures
            ],
        }


def is_step_consistent(rm: RiskMeasure, pi: Partition) -> RectangleReport:
    """Check every rectangle vertex for membership.

    Failures are listed most-violated first (largest separation gap under the
    canonical separator), ties in enumeration order.
    """
    verts = rectangle_vertices(rm, pi)
    conds = {}
    for b in pi.blocks:
        if any(g.mass(b) > 0 for g in rm.gens):
            conds[b] = conditional_polytope(rm, b)
    failures = []
    for q in verts:
        cert = membership(rm, q)
        if not cert.inside:
            failures.append((q, cert))
    failures.sort(key=lambda f: -f[1].gap)
    return RectangleReport(pi, marginal_polytope(rm, pi), conds, verts, failures)


def is_filtration_consistent(rm: RiskMeasure, f: Filtration) -> list[RectangleReport]:
    return [is_step_consistent(rm, pi) for pi in f.levels]


def filtration_consistent(rm: RiskMeasure, f: Filtration) -> bool:
    return all(r.consistent for r in is_filtration_consistent(rm, f))


def recursion_residual(rm: RiskMeasure, x: Position, f: Filtration) -> Fraction:
    """Largest gap in ``rho_s(-rho_t(X)) = rho_s(X)`` over adjacent levels ``s < t``."""
    worst = ZERO
    rhos = [conditional_rho(rm, x, pi) for pi in f.levels]
    for s in range(len(f.levels) - 1):
        lhs = conditional_rho(rm, -rhos[s + 1], f.levels[s])
        worst = max([worst] + [abs(a - b) for a, b in zip(lhs.x, rhos[s].x)])
    return worst
