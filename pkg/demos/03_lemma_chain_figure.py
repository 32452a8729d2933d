"""
Three pastes that leave the test set
====================================

Pasting twice on sigma(w1) and once on sigma(w2) pushes the probability of
``w1`` below anything the test set allows.  The chain is drawn in the
barycentric triangle and written to ``lemma_chain.svg`` and ``.csv``.
"""
import sys
from fractions import Fraction as F
from pathlib import Path

from tcrisk import RiskMeasure, Space, lemma_chain, max_side_chain, membership
from tcrisk.simplex import project, render_svg, to_csv

space = Space.uniform(3)
rm = RiskMeasure.from_vectors(space, [(F(3, 5), F(1, 5), F(1, 5)), (F(1, 5), F(3, 5), F(1, 5))])

chain = lemma_chain(rm, [0], [1])
for k, (z, role) in enumerate(zip(chain.z, chain.roles), start=1):
    print(f"z{k} = {z}   {role}")
print("P(w1) under z6:", chain.z6.p[0], "vs the smallest allowed", min(g.p[0] for g in rm.gens))
print("z6 membership:", membership(rm, chain.z6).verdict)

# mirror image: push P(w1) above its maximum
up = max_side_chain(rm, [0], [1])
print("max side z6 =", up.z6, " P(w1) =", up.z6.p[0])

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("lemma_chain")
scene = project(rm, [0], [1], chain)
out.with_suffix(".svg").write_bytes(render_svg(scene))
out.with_suffix(".csv").write_text(to_csv(scene))
print("wrote", out.with_suffix(".svg"), "and", out.with_suffix(".csv"))
