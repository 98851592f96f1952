"""At q = -1 everything is (1 + t)-torsion except the top degree.  Then specialize both variables."""

import random
from fractions import Fraction

from twistcoh.homology import betti_at_point, cohomology_modules
from twistcoh.oracle import predicted_betti
from twistcoh.salvetti import build_complex, reduce_complex_mod_phi

for n in range(1, 8):
    mods = cohomology_modules(reduce_complex_mod_phi(build_complex("B", n), 2))
    print(f"n={n}: " + "  ".join(f"H^{d.degree}:{[str(f) for f in d.invariant_factors]}" for d in mods if d.degree))

rng = random.Random(1)
n = 4
cx = build_complex("B", n)
print(f"\nBetti numbers of the n = {n} complex at a few points (computed / predicted):")
for _ in range(8):
    q0 = rng.choice([Fraction(-1), Fraction(1), Fraction(2), Fraction(1, 3)])
    t0 = rng.choice([-q0 ** (1 - n), Fraction(-1), Fraction(1), Fraction(5, 2)])
    print(f"  q={str(q0):>4} t={str(t0):>5}: {betti_at_point(cx, q0, t0)} / {predicted_betti(n, q0, t0)}")
