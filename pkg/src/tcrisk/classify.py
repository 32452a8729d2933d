"""Which coherent risk measures are time-consistent for every filtration.

On a finite space the atoms are the outcomes, so the taxonomy of non-polar
atoms can be read off directly:

* one non-polar outcome: evaluation at that outcome (``OneAtomic``);
* all of the simplex over the non-polar outcomes: worst case (``Extremal``);
* a single test measure: an expectation (``Linear``);
* two non-polar outcomes with a proper interval of weights (``TwoAtomic``).

Anything else fails for some simple filtration ``trivial -> sigma(A) -> full``,
and :func:`find_witness` produces the failing rectangle vertex together with,
when possible, the explicit six-measure pasting chain that pushes the
probability of ``A`` past its extreme value.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import IllDefinedPaste, InvalidObject, NoWitnessFound, PreconditionError
from .measure import ZERO, Measure, Partition, is_polar
from .pasting import is_step_consistent, paste
from .risk import MembershipCertificate, RiskMeasure, membership, reduce_to_vertices


class LemmaCase(enum.Enum):
    POLAR = "i"
    EXTREME = "ii"
    FIXED = "iii"
    NONE = "none"


@dataclass
class LemmaChain:
    """Six measures ``z1..z6``; z4, z5 are pastes on sigma(a), z6 a paste on sigma(b)."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    side: str  # "min" pushes P(a) below its minimum, "max" above its maximum
    z: tuple[Measure, ...]
    roles: tuple[str, ...]
    certificate: MembershipCertificate | None = None

    @property
    def z1(self):
        return self.z[0]

    @property
    def z6(self):
        return self.z[5]

    def to_dict(self) -> dict:
        space = self.z[0].space
        return {
            "a": [space.outcomes[i] for i in self.a],
            "b": [space.outcomes[i] for i in self.b],
            "side": self.side,
            "chain": [
                {"name": f"z{k + 1}", "role": role, "measure": [str(v) for v in m.p]}
                for k, (m, role) in enumerate(zip(self.z, self.roles))
            ],
            "z6_certificate": self.certificate.to_dict() if self.certificate else None,
        }


@dataclass
class Witness:
    a: tuple[int, ...]
    b: tuple[int, ...]
    failing_partition: Partition
    failing_vertex: Measure
    certificate: MembershipCertificate
    chain: LemmaChain | None = None

    def to_dict(self) -> dict:
        space = self.failing_vertex.space
        return {
            "a": [space.outcomes[i] for i in self.a],
            "b": [space.outcomes[i] for i in self.b],
            "failing_partition": [[space.outcomes[i] for i in blk] for blk in self.failing_partition.blocks],
            "failing_vertex": [str(v) for v in self.failing_vertex.p],
            "certificate": self.certificate.to_dict(),
            "chain": self.chain.to_dict() if self.chain else None,
        }

    def __str__(self) -> str:
        space = self.failing_vertex.space
        return (
            f"a={space.describe(self.a)}, b={space.describe(self.b)}, "
            f"vertex {self.failing_vertex} outside, separator {self.certificate.separator}"
        )


@dataclass
class Classification:
    tag: str
    omega1: int | None = None
    omega2: int | None = None
    alpha: Fraction | None = None
    beta: Fraction | None = None
    p1: Measure | None = None
    witness: Witness | None = None
    space: object = field(default=None, repr=False, compare=False)

    @property
    def universal(self) -> bool:
        return self.tag != "NotUniversal"

    def __str__(self) -> str:
        name = (lambda i: self.space.outcomes[i]) if self.space is not None else str
        if self.tag == "OneAtomic":
            return f"OneAtomic({name(self.omega1)})"
        if self.tag == "TwoAtomic":
            return f"TwoAtomic({name(self.omega1)}, {name(self.omega2)}, {self.alpha}, {self.beta})"
        if self.tag == "Linear":
            return f"Linear{self.p1}"
        return self.tag

    def to_dict(self) -> dict:
        out: dict = {"tag": self.tag, "display": str(self)}
        name = self.space.outcomes.__getitem__
        if self.omega1 is not None:
            out["omega1"] = name(self.omega1)
        if self.omega2 is not None:
            out["omega2"] = name(self.omega2)
        if self.alpha is not None:
            out["alpha"], out["beta"] = str(self.alpha), str(self.beta)
        if self.p1 is not None:
            out["p1"] = [str(v) for v in self.p1.p]
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


def atom_range(rm: RiskMeasure, i: int) -> tuple[Fraction, Fraction]:
    vals = [g.p[i] for g in rm.gens]
    return min(vals), max(vals)


def _set_range(rm: RiskMeasure, a: Iterable[int]) -> tuple[Fraction, Fraction]:
    a = tuple(a)
    vals = [g.mass(a) for g in rm.gens]
    return min(vals), max(vals)


def _ratio_constant(rm: RiskMeasure, num: Sequence[int], den: Sequence[int]) -> bool:
    """Is ``g(num)/g(den)`` the same for every generator? (cross-multiplied)"""
    pairs = [(g.mass(num), g.mass(den)) for g in rm.gens]
    n0, d0 = pairs[0]
    return all(n * d0 == n0 * d for n, d in pairs[1:])


def _disjoint(a, b) -> None:
    if set(a) & set(b):
        raise InvalidObject(f"sets {sorted(a)} and {sorted(b)} are not disjoint")


def lemma_case(rm: RiskMeasure, a: Iterable[int], b: Iterable[int]) -> LemmaCase:
    """Which alternative holds for the disjoint pair ``(a, b)``.

    ``LemmaCase.NONE`` means no alternative holds, so the risk measure cannot
    be consistent for both ``sigma(a)`` and ``sigma(b)`` simple filtrations.
    Case ``EXTREME`` requires all three of ``a``, ``b`` and the remainder to
    reach both 0 and 1.
    """
    a, b = tuple(sorted(set(a))), tuple(sorted(set(b)))
    _disjoint(a, b)
    n = rm.space.n
    rest = tuple(i for i in range(n) if i not in a and i not in b)
    if any(is_polar(s, rm.gens) for s in (a, b, rest)):
        return LemmaCase.POLAR
    if all(_set_range(rm, s) == (0, 1) for s in (a, b, rest)):
        return LemmaCase.EXTREME
    a_c = tuple(i for i in range(n) if i not in a)
    b_c = tuple(i for i in range(n) if i not in b)
    if (
        _set_range(rm, a)[0] == _set_range(rm, a)[1]
        and _set_range(rm, b)[0] == _set_range(rm, b)[1]
        and _ratio_constant(rm, b, a_c)
        and _ratio_constant(rm, a, b_c)
    ):
        return LemmaCase.FIXED
    return LemmaCase.NONE


def disjoint_identity_check(p: Measure, a: Iterable[int], b: Iterable[int]) -> bool:
    """Check ``P(a) = P(a|b^c)(1 - P(b|a^c)) / (1 - P(a|b^c) P(b|a^c))`` exactly."""
    a, b = tuple(set(a)), tuple(set(b))
    _disjoint(a, b)
    n = p.space.n
    a_c = [i for i in range(n) if i not in a]
    b_c = [i for i in range(n) if i not in b]
    pac, pbc = p.mass(a_c), p.mass(b_c)
    if pac == 0 or pbc == 0:
        raise PreconditionError("conditional probabilities undefined (complement has zero mass)")
    a_given = p.mass(a) / pbc
    b_given = p.mass(b) / pac
    den = 1 - a_given * b_given
    if den == 0:
        raise PreconditionError("identity denominator vanishes")
    return p.mass(a) == a_given * (1 - b_given) / den


def classify(rm: RiskMeasure) -> Classification:
    rm = reduce_to_vertices(rm)
    live = sorted(rm.non_polar())
    space = rm.space
    if len(live) == 1:
        return Classification("OneAtomic", omega1=live[0], space=space)
    if len(rm.gens) == 1:
        return Classification("Linear", p1=rm.gens[0], space=space)
    if all(atom_range(rm, i)[1] == 1 for i in live):
        return Classification("Extremal", space=space)
    if len(live) == 2:
        alpha, beta = atom_range(rm, live[0])
        return Classification("TwoAtomic", omega1=live[0], omega2=live[1], alpha=alpha, beta=beta, space=space)
    return Classification("NotUniversal", witness=find_witness(rm), space=space)


def _candidate_pairs(rm: RiskMeasure) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Disjoint non-polar pairs: singletons first, then larger unions by total size."""
    live = sorted(rm.non_polar())
    n = rm.space.n
    for i, j in itertools.combinations(live, 2):
        yield (i,), (j,)
    subsets = [
        tuple(s)
        for size in range(1, n)
        for s in itertools.combinations(range(n), size)
        if not is_polar(s, rm.gens)
    ]
    for total in range(3, n + 1):
        for a in subsets:
            for b in subsets:
                if len(a) + len(b) == total and a < b and not set(a) & set(b):
                    yield a, b


def find_witness(rm: RiskMeasure) -> Witness:
    """Find a simple filtration whose rectangle has a vertex outside the test set."""
    rm = reduce_to_vertices(rm)
    n = rm.space.n
    for a, b in _candidate_pairs(rm):
        if lemma_case(rm, a, b) is not LemmaCase.NONE:
            continue
        for s in (a, b):
            report = is_step_consistent(rm, Partition.split(s, n))
            if report.failures:
                vertex, cert = report.failures[0]
                return Witness(a, b, report.partition, vertex, cert, chain_for(rm, a, b))
    raise NoWitnessFound("no failing simple filtration; classification is inconsistent")


def chain_for(rm: RiskMeasure, a, b) -> LemmaChain | None:
    """First chain that works: (a, b) then (b, a), minimum side before maximum side."""
    for x, y in ((a, b), (b, a)):
        for build in (lemma_chain, max_side_chain):
            try:
                return build(rm, x, y)
            except PreconditionError:
                continue
    return None


def _chain_candidates(rm: RiskMeasure) -> list[tuple[str, Measure]]:
    """Generators, then midpoints of generator pairs (all members of the hull)."""
    cands = [(f"g{k + 1}", g) for k, g in enumerate(rm.gens)]
    for (i, g), (j, h) in itertools.combinations(enumerate(rm.gens), 2):
        cands.append((f"mid(g{i + 1},g{j + 1})", g.mix(h, Fraction(1, 2))))
    return cands


def _build_chain(rm: RiskMeasure, a, b, side: str) -> LemmaChain:
    a, b = tuple(sorted(set(a))), tuple(sorted(set(b)))
    _disjoint(a, b)
    n = rm.space.n
    a_c = tuple(i for i in range(n) if i not in a)
    if is_polar(a, rm.gens) or is_polar(b, rm.gens):
        raise PreconditionError("a and b must be non-polar")
    masses = [g.mass(a) for g in rm.gens]
    if side == "min":
        if min(masses) == 0:
            raise PreconditionError("min P(a) is 0; nothing to push below")
        k1 = masses.index(min(masses))
    else:
        if max(masses) == 1:
            raise PreconditionError("max P(a) is 1; nothing to push above")
        k1 = masses.index(max(masses))
    z1 = rm.gens[k1]
    pi_a = Partition.split(a, n)
    pi_b = Partition.split(b, n)

    # candidates must be pasteable onto z1's marginal on sigma(a)
    usable = [(name, c) for name, c in _chain_candidates(rm) if c.mass(a) > 0 and c.mass(a_c) > 0]
    ratio = {name: c.mass(b) / c.mass(a_c) for name, c in usable}
    if len(set(ratio.values())) < 2:
        raise PreconditionError("P(b | a^c) does not vary over the test set")
    for (n_lo, lo), (n_hi, hi) in itertools.permutations(usable, 2):
        if not ratio[n_lo] < ratio[n_hi]:
            continue
        # pushing P(a) down needs the second paste to raise P(b); up needs it lowered
        src4, src5 = (lo, hi) if side == "min" else (hi, lo)
        try:
            z4 = paste(src4, z1, pi_a)
            z5 = paste(src5, z1, pi_a)
            z6 = paste(z4, z5, pi_b)
        except IllDefinedPaste:
            continue
        beyond = z6.mass(a) < z1.mass(a) if side == "min" else z6.mass(a) > z1.mass(a)
        if not beyond:
            continue
        ext = "minimiser" if side == "min" else "maximiser"
        roles = (
            f"g{k1 + 1}: {ext} of P(a)",
            f"{n_lo}: low P(b|a^c)",
            f"{n_hi}: high P(b|a^c)",
            f"paste on sigma(a): marginal of z1, conditionals of z{2 if side == 'min' else 3}",
            f"paste on sigma(a): marginal of z1, conditionals of z{3 if side == 'min' else 2}",
            "paste on sigma(b): marginal of z5, conditionals of z4",
        )
        cert = membership(rm, z6)
        if cert.inside:  # impossible: z6(a) lies outside the range of P(a)
            raise ArithmeticError("chain endpoint unexpectedly inside the test set")
        return LemmaChain(a, b, side, (z1, lo, hi, z4, z5, z6), roles, cert)
    raise PreconditionError("no pair of test measures yields a well-defined chain")


def lemma_chain(rm: RiskMeasure, a, b) -> LemmaChain:
    """Push P(a) strictly below its minimum over the test set by three pastes."""
    return _build_chain(reduce_to_vertices(rm), a, b, "min")


def max_side_chain(rm: RiskMeasure, a, b) -> LemmaChain:
    """Mirror of :func:`lemma_chain`: push P(a) strictly above its maximum."""
    return _build_chain(reduce_to_vertices(rm), a, b, "max")
