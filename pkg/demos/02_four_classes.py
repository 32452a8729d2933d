"""
The four classes that are consistent for every filtration
=========================================================

Classify a few test sets, then check each universal one against every
simple filtration on its space.
"""
from fractions import Fraction as F
from itertools import combinations

from tcrisk import Measure, Partition, RiskMeasure, Space, classify, is_step_consistent

s3 = Space.uniform(3)
s2 = Space.uniform(2)
cases = {
    "point mass": RiskMeasure(s3, (Measure.point_mass(s3, 0),)),
    "interval on two outcomes": RiskMeasure.from_vectors(s2, [(F(2, 3), F(1, 3)), (F(1, 3), F(2, 3))]),
    "whole simplex": RiskMeasure(s3, tuple(Measure.point_mass(s3, i) for i in range(3))),
    "single measure": RiskMeasure.from_vectors(s3, [(F(1, 2), F(1, 4), F(1, 4))]),
    "two interior measures": RiskMeasure.from_vectors(s3, [(F(3, 5), F(1, 5), F(1, 5)), (F(1, 5), F(3, 5), F(1, 5))]),
}

for name, rm in cases.items():
    c = classify(rm)
    print(f"{name:26s} -> {c}")
    if not c.universal:
        print("    witness:", c.witness)
        continue
    n = rm.space.n
    subsets = [a for k in range(1, n) for a in combinations(range(n), k)]
    ok = all(is_step_consistent(rm, Partition.split(a, n)).consistent for a in subsets)
    print(f"    consistent on all {len(subsets)} simple filtrations: {ok}")
