import math
import random
from fractions import Fraction as F

import mpmath
import pytest

from helpers import fr
from tcrisk import (
    Filtration,
    Measure,
    NotUniversalError,
    Partition,
    Position,
    PreconditionError,
    RiskMeasure,
    Space,
    entropic_consistency_demo,
    entropic_rho,
    extend,
    rho,
    semigroup_residual,
)
from tcrisk.sampling import class_fixtures, random_filtration, random_position, random_space

F1 = Filtration.simple([0], 3)


def test_linear_extension_example(u3):
    d = extend(RiskMeasure.from_vectors(u3, [fr("1/2", "1/4", "1/4")]), F1)
    assert d.evaluate(Position(u3, fr(0, 1, 2)), 1).x == fr(0, "-3/2", "-3/2")


def test_extremal_extension_example(u3):
    d = extend(RiskMeasure(u3, tuple(Measure.point_mass(u3, i) for i in range(3))), F1)
    x = Position(u3, fr(0, 1, 2))
    assert d.evaluate(x, 1).x == fr(0, -1, -1)
    assert d.evaluate(x, 0).x == fr(0, 0, 0)
    assert semigroup_residual(d, x, 0, 1) == 0


def test_one_atomic_extension_example(u3):
    d = extend(RiskMeasure(u3, (Measure.point_mass(u3, 0),)), Filtration.simple([1], 3))
    x = Position(u3, fr(5, 1, 3))
    assert [v.x[0] for v in d.table(x)] == [-5, -5, -5]
    # the block without the atom falls back to the reference measure
    assert d.evaluate(x, 1).x == fr(-5, -1, -5)


def test_two_atomic_extension_branches():
    sp = Space.uniform(3)
    rm = RiskMeasure.from_vectors(sp, [fr("1/3", "2/3", 0), fr("2/3", "1/3", 0)])
    x = Position(sp, fr(3, -3, 9))
    joint = extend(rm, Filtration.simple([2], 3))
    want = max(-a * 3 - (1 - a) * (-3) for a in (F(1, 3), F(2, 3)))
    assert joint.evaluate(x, 1).x == (want, want, -9)
    apart = extend(rm, Filtration.simple([0], 3))
    assert apart.evaluate(x, 1).x == fr(-3, 3, 3)


def test_extend_refuses_non_universal(worked):
    with pytest.raises(NotUniversalError) as exc:
        extend(worked, F1)
    assert exc.value.witness.a == (0,)


def test_semigroup_residual_level_order(u3):
    d = extend(RiskMeasure(u3, (Measure.point_mass(u3, 0),)), F1)
    with pytest.raises(PreconditionError):
        semigroup_residual(d, Position.constant(u3, 0), 2, 1)


@pytest.mark.parametrize("seed", range(6))
def test_extensions_are_monotone_and_cash_invariant(seed):
    rng = random.Random(seed)
    sp = random_space(rng, rng.randint(2, 5), 0.2)
    f = random_filtration(sp.n, rng)
    for rm in class_fixtures(sp, rng).values():
        d = extend(rm, f)
        for _ in range(20):
            x = random_position(sp, rng)
            bump = Position(sp, tuple(F(rng.randint(0, 8), 4) for _ in range(sp.n)))
            c = F(rng.randint(-8, 8), 3)
            for t in range(len(f)):
                base = d.evaluate(x, t).x
                assert all(a <= b for a, b in zip(d.evaluate(x + bump, t).x, base))
                assert d.evaluate(x + c, t).x == tuple(v - c for v in base)


def test_extension_level_zero_is_rho_on_fixtures():
    rng = random.Random(1)
    sp = random_space(rng, 4, 0.0)
    f = random_filtration(4, rng)
    for rm in class_fixtures(sp, rng).values():
        d = extend(rm, f)
        x = random_position(sp, rng)
        assert d.evaluate(x, 0).x == (rho(rm, x),) * sp.n


# -- entropic contrast ------------------------------------------------------


def test_entropic_examples(u3):
    assert entropic_rho(Position.constant(u3, F(7, 2)), 1.0, u3.reference()) == pytest.approx(-3.5, abs=1e-12)
    x = Position(u3, fr(1, 4, 2))
    assert entropic_rho(x, 1e6, u3.reference()) == pytest.approx(-7 / 3, abs=1e-5)
    two = Space.uniform(2)
    val = entropic_rho([0.0, math.log(4)], 1.0, two.reference())
    assert val == pytest.approx(math.log(5 / 8), rel=1e-12)


def test_entropic_matches_high_precision_oracle():
    mpmath.mp.dps = 40
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(2, 5)
        sp = random_space(rng, n)
        x = [rng.uniform(-30, 30) for _ in range(n)]
        g = rng.choice([0.1, 0.5, 1.0, 3.0])
        ref = g * mpmath.log(mpmath.fsum(mpmath.mpf(p.numerator) / p.denominator * mpmath.exp(-mpmath.mpf(v) / g)
                                         for v, p in zip(x, sp.p0)))
        assert entropic_rho(x, g, sp.reference()) == pytest.approx(float(ref), rel=1e-12, abs=1e-12)


def test_entropic_rejects_bad_gamma(u3):
    with pytest.raises(ValueError):
        entropic_rho([0, 0, 0], 0.0, u3.reference())


def test_entropic_constant_has_no_gaps(u3):
    rep = entropic_consistency_demo(F1, 1.0, u3.reference(), Position.constant(u3, 2))
    assert rep.residual <= 1e-12 and rep.homogeneity_gap <= 1e-12
