"""
Entropic risk: consistent but not coherent
==========================================

``gamma * log E[exp(-X / gamma)]`` satisfies the recursion for every
filtration, yet doubling a position does not double its risk.  Floating
point, so the residuals are tiny rather than zero.
"""
import random

from tcrisk import Filtration, Partition, Position, Space, entropic_consistency_demo
from tcrisk.sampling import random_filtration, random_position

space = Space.uniform(3)
f = Filtration((Partition.trivial(3), Partition([[0], [1, 2]]), Partition.discrete(3)))

x = Position(space, (0, 2, 0))
rep = entropic_consistency_demo(f, 1.0, space.reference(), x)
print(f"x = {x}: residual {rep.residual:.2e}, |rho(2x) - 2 rho(x)| = {rep.homogeneity_gap:.6f}")

rng = random.Random(0)
worst = 0.0
for _ in range(200):
    sp = Space.uniform(5)
    rep = entropic_consistency_demo(random_filtration(5, rng), rng.choice([0.5, 1.0, 3.0]),
                                    sp.reference(), random_position(sp, rng))
    worst = max(worst, rep.residual)
print(f"largest recursion residual over 200 random cases: {worst:.2e}")
