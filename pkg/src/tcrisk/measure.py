"""Finite probability spaces with exact rational arithmetic.

Outcomes double as the atoms of the power-set sigma-algebra, so every
sub-sigma-algebra is represented by a :class:`Partition` of outcome indices.
All arithmetic is done with :class:`fractions.Fraction`; floats are rejected
at the boundary so that no verdict ever depends on a tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidObject, SpaceMismatch

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce ``value`` to a Fraction; accepts Fraction, int and strings like ``"3/5"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__} {value!r}")


def fmt(q: Fraction) -> str:
    return str(q)


def fmt_vec(v: Iterable[Fraction]) -> str:
    return ",".join(str(q) for q in v)


def _labels(n: int) -> tuple[str, ...]:
    return tuple(f"w{i + 1}" for i in range(n))


@dataclass(frozen=True)
class Space:
    """Outcome labels plus the reference probabilities ``p0``."""

    outcomes: tuple[str, ...]
    p0: tuple[Fraction, ...]

    def __post_init__(self):
        outcomes = tuple(str(o) for o in self.outcomes)
        p0 = tuple(as_fraction(v) for v in self.p0)
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "p0", p0)
        if len(outcomes) == 0:
            raise InvalidObject("a space needs at least one outcome")
        if len(outcomes) != len(p0):
            raise InvalidObject(f"{len(outcomes)} outcome labels but {len(p0)} reference probabilities")
        if len(set(outcomes)) != len(outcomes):
            raise InvalidObject("outcome labels must be unique")
        if any(v < 0 for v in p0):
            raise InvalidObject("reference probabilities must be nonnegative")
        if sum(p0) != 1:
            raise InvalidObject(f"reference probabilities sum to {sum(p0)}, not 1")

    @classmethod
    def uniform(cls, n: int, outcomes: Sequence[str] | None = None) -> "Space":
        return cls(tuple(outcomes) if outcomes else _labels(n), (Fraction(1, n),) * n)

    @classmethod
    def from_weights(cls, weights: Sequence, outcomes: Sequence[str] | None = None) -> "Space":
        """Normalise nonnegative rational weights into a reference measure."""
        w = [as_fraction(v) for v in weights]
        total = sum(w)
        return cls(tuple(outcomes) if outcomes else _labels(len(w)), tuple(v / total for v in w))

    @property
    def n(self) -> int:
        return len(self.outcomes)

    def index(self, label: str) -> int:
        try:
            return self.outcomes.index(label)
        except ValueError:
            raise KeyError(f"unknown outcome {label!r}") from None

    def reference(self) -> "Measure":
        return Measure(self, self.p0)

    def null_outcomes(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.p0) if v == 0)

    def describe(self, a: Iterable[int]) -> str:
        return "{" + ",".join(self.outcomes[i] for i in sorted(a)) + "}"


def _check_same(*objs) -> Space:
    space = objs[0].space
    for o in objs[1:]:
        if o.space is not space and o.space != space:
            raise SpaceMismatch("operands live on different spaces")
    return space


@dataclass(frozen=True)
class Measure:
    """A probability vector absolutely continuous with respect to ``space.p0``."""

    space: Space
    p: tuple[Fraction, ...]

    def __post_init__(self):
        p = tuple(as_fraction(v) for v in self.p)
        object.__setattr__(self, "p", p)
        if len(p) != self.space.n:
            raise InvalidObject(f"measure has {len(p)} entries, space has {self.space.n} outcomes")
        if any(v < 0 for v in p):
            raise InvalidObject(f"negative probability in ({fmt_vec(p)})")
        if sum(p) != 1:
            raise InvalidObject(f"probabilities ({fmt_vec(p)}) sum to {sum(p)}, not 1")
        for i, (v, r) in enumerate(zip(p, self.space.p0)):
            if v > 0 and r == 0:
                raise InvalidObject(
                    f"measure charges {self.space.outcomes[i]!r}, which has zero reference probability"
                )

    @classmethod
    def point_mass(cls, space: Space, i: int) -> "Measure":
        return cls(space, tuple(ONE if j == i else ZERO for j in range(space.n)))

    def __getitem__(self, i: int) -> Fraction:
        return self.p[i]

    def __iter__(self):
        return iter(self.p)

    def __len__(self) -> int:
        return len(self.p)

    def mass(self, a: Iterable[int]) -> Fraction:
        return sum((self.p[i] for i in a), ZERO)

    def support(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.p) if v > 0)

    def conditional(self, block: Sequence[int]) -> tuple[Fraction, ...]:
        """Conditional probabilities on ``block``, listed in block order."""
        m = self.mass(block)
        if m == 0:
            raise ZeroDivisionError(f"block {tuple(block)} has zero mass")
        return tuple(self.p[i] / m for i in block)

    def density(self) -> tuple[Fraction, ...]:
        """Radon-Nikodym derivative against p0 (0 on p0-null outcomes)."""
        return tuple(v / r if r else ZERO for v, r in zip(self.p, self.space.p0))

    def mix(self, other: "Measure", w: Fraction) -> "Measure":
        """Return ``(1 - w) * self + w * other``."""
        _check_same(self, other)
        w = as_fraction(w)
        return Measure(self.space, tuple((1 - w) * a + w * b for a, b in zip(self.p, other.p)))

    def __str__(self) -> str:
        return f"({fmt_vec(self.p)})"


@dataclass(frozen=True)
class Position:
    """A bounded random variable; a vector of payoffs, one per outcome."""

    space: Space
    x: tuple[Fraction, ...]

    def __post_init__(self):
        x = tuple(as_fraction(v) for v in self.x)
        object.__setattr__(self, "x", x)
        if len(x) != self.space.n:
            raise InvalidObject(f"position has {len(x)} entries, space has {self.space.n} outcomes")

    @classmethod
    def constant(cls, space: Space, c) -> "Position":
        return cls(space, (as_fraction(c),) * space.n)

    @classmethod
    def indicator(cls, space: Space, a: Iterable[int]) -> "Position":
        a = set(a)
        return cls(space, tuple(ONE if i in a else ZERO for i in range(space.n)))

    def __getitem__(self, i: int) -> Fraction:
        return self.x[i]

    def __iter__(self):
        return iter(self.x)

    def __len__(self) -> int:
        return len(self.x)

    def _other(self, other) -> tuple[Fraction, ...]:
        if isinstance(other, Position):
            _check_same(self, other)
            return other.x
        c = as_fraction(other)
        return (c,) * len(self.x)

    def __add__(self, other) -> "Position":
        return Position(self.space, tuple(a + b for a, b in zip(self.x, self._other(other))))

    __radd__ = __add__

    def __sub__(self, other) -> "Position":
        return Position(self.space, tuple(a - b for a, b in zip(self.x, self._other(other))))

    def __rsub__(self, other) -> "Position":
        return Position(self.space, tuple(b - a for a, b in zip(self.x, self._other(other))))

    def __neg__(self) -> "Position":
        return Position(self.space, tuple(-a for a in self.x))

    def __mul__(self, c) -> "Position":
        c = as_fraction(c)
        return Position(self.space, tuple(c * a for a in self.x))

    __rmul__ = __mul__

    def dominates(self, other: "Position") -> bool:
        """Pointwise ``self >= other``."""
        return all(a >= b for a, b in zip(self.x, self._other(other)))

    def __str__(self) -> str:
        return f"({fmt_vec(self.x)})"


@dataclass(frozen=True)
class Partition:
    """A partition of ``range(n)``; blocks are sorted tuples ordered by least element."""

    blocks: tuple[tuple[int, ...], ...]
    n: int
    _owner: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, blocks: Iterable[Iterable[int]], n: int | None = None):
        canon = sorted((tuple(sorted(set(b))) for b in blocks), key=lambda b: b[0] if b else -1)
        if any(len(b) == 0 for b in canon):
            raise InvalidObject("partition blocks must be nonempty")
        seen = [i for b in canon for i in b]
        if n is None:
            n = len(seen)
        if len(seen) != len(set(seen)):
            raise InvalidObject("partition blocks overlap")
        if sorted(seen) != list(range(n)):
            raise InvalidObject(f"partition blocks do not cover outcomes 0..{n - 1}")
        owner = [0] * n
        for k, b in enumerate(canon):
            for i in b:
                owner[i] = k
        object.__setattr__(self, "blocks", tuple(canon))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_owner", tuple(owner))

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls([range(n)], n)

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls([[i] for i in range(n)], n)

    @classmethod
    def split(cls, a: Iterable[int], n: int) -> "Partition":
        """The partition generated by a single set, ``{a, a^c}`` minus empty blocks."""
        a = set(a)
        rest = [i for i in range(n) if i not in a]
        return cls([b for b in (sorted(a), rest) if b], n)

    def block_of(self, i: int) -> int:
        return self._owner[i]

    def refines(self, coarser: "Partition") -> bool:
        return all(len({coarser.block_of(i) for i in b}) == 1 for b in self.blocks)

    @property
    def is_trivial(self) -> bool:
        return len(self.blocks) == 1

    @property
    def is_discrete(self) -> bool:
        return len(self.blocks) == self.n

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def spread(self, values: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Expand one value per block into one value per outcome."""
        return tuple(values[self._owner[i]] for i in range(self.n))


@dataclass(frozen=True)
class Filtration:
    """Increasing sequence of partitions from trivial to discrete."""

    levels: tuple[Partition, ...]

    def __post_init__(self):
        levels = tuple(self.levels)
        object.__setattr__(self, "levels", levels)
        if not levels:
            raise InvalidObject("a filtration needs at least one level")
        n = levels[0].n
        if any(p.n != n for p in levels):
            raise InvalidObject("filtration levels partition different outcome sets")
        if not levels[0].is_trivial:
            raise InvalidObject("first filtration level must be the trivial partition")
        if not levels[-1].is_discrete:
            raise InvalidObject("last filtration level must be the discrete partition")
        for t in range(1, len(levels)):
            if not levels[t].refines(levels[t - 1]):
                raise InvalidObject(f"level {t} does not refine level {t - 1}")

    @classmethod
    def simple(cls, a: Iterable[int], n: int) -> "Filtration":
        """Trivial, then sigma(a), then full information."""
        return cls((Partition.trivial(n), Partition.split(a, n), Partition.discrete(n)))

    @property
    def n(self) -> int:
        return self.levels[0].n

    def __len__(self) -> int:
        return len(self.levels)

    def __getitem__(self, t: int) -> Partition:
        return self.levels[t]


def expectation(x: Position, p: Measure) -> Fraction:
    _check_same(x, p)
    return sum((a * b for a, b in zip(x.x, p.p)), ZERO)


def conditional_expectation(x: Position, p: Measure, pi: Partition) -> Position:
    """Blockwise p-average of x; blocks with zero p-mass get the value 0."""
    _check_same(x, p)
    values = []
    for b in pi.blocks:
        m = sum((p.p[i] for i in b), ZERO)
        values.append(sum((x.x[i] * p.p[i] for i in b), ZERO) / m if m else ZERO)
    return Position(x.space, pi.spread(values))


def non_polar(gens: Sequence[Measure]) -> frozenset[int]:
    """Outcomes charged by at least one generator."""
    out: set[int] = set()
    for g in gens:
        out |= g.support()
    return frozenset(out)


def is_polar(a: Iterable[int], gens: Sequence[Measure]) -> bool:
    a = tuple(a)
    if gens:
        _check_same(*gens)
    return all(g.mass(a) == 0 for g in gens)


def p_esssup(x: Position, gens: Sequence[Measure]) -> Fraction:
    """Largest value of x on an outcome some generator charges."""
    _check_same(x, *gens)
    live = non_polar(gens)
    if not live:
        raise InvalidObject("every outcome is polar; generators are inconsistent")
    return max(x.x[i] for i in live)


def conditional_esssup(x: Position, pi: Partition, p0ref: Measure) -> Position:
    """Blockwise max of x over outcomes with positive p0ref mass.

    A block that p0ref does not charge at all takes the plain max over the block.
    """
    _check_same(x, p0ref)
    values = []
    for b in pi.blocks:
        live = [x.x[i] for i in b if p0ref.p[i] > 0]
        values.append(max(live) if live else max(x.x[i] for i in b))
    return Position(x.space, pi.spread(values))
