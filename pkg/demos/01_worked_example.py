"""
A risk measure that fails a simple filtration
=============================================

Two test measures on three equally likely outcomes.  We evaluate the risk,
check consistency on the filtration that first reveals whether ``w1``
happened, and look at the rectangle vertex that breaks it.
"""
from fractions import Fraction as F

from tcrisk import (
    Filtration,
    Position,
    RiskMeasure,
    Space,
    conditional_rho,
    is_filtration_consistent,
    recursion_residual,
    rho,
)

space = Space.uniform(3)
rm = RiskMeasure.from_vectors(space, [(F(3, 5), F(1, 5), F(1, 5)), (F(1, 5), F(3, 5), F(1, 5))])

# static risk of losing one unit unless w1 happens
x = Position(space, (1, 0, 0))
print("rho(x) =", rho(rm, x))

# conditional risk once we know whether w1 happened
f = Filtration.simple([0], 3)
y = Position(space, (0, 1, 2))
print("rho_1(y) =", conditional_rho(rm, y, f[1]))

# the rectangle test, level by level
for t, rep in enumerate(is_filtration_consistent(rm, f)):
    print(f"level {t}: {'ok' if rep.consistent else 'FAILS'}")
    for q, cert in rep.failures:
        print(f"   vertex {q} is outside; separator {cert.separator} gap {cert.gap}")

# the same failure seen from the recursion: rho_0(-rho_1(z)) != rho_0(z)
z = Position(space, (0, 0, -1))
print("recursion residual for z:", recursion_residual(rm, z, f))
