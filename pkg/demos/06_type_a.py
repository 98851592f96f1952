"""Type-A complexes over Q[q^+-1]: every torsion prime is a cyclotomic polynomial, in a predictable degree."""

from twistcoh.homology import cohomology_modules, cyclotomic_candidates
from twistcoh.oracle import compare_type_a, predicted_type_a
from twistcoh.salvetti import type_a_over_q

for a in range(1, 8):
    mods = cohomology_modules(type_a_over_q(a), cyclotomic_candidates(a + 1))
    found = {d.degree: sorted(str(p) for p in d.primary_table) for d in mods if d.primary_table}
    print(f"a={a}: predicted {predicted_type_a(a)}")
    print(f"     computed  {found}  -> {compare_type_a(a, mods).status}")
