"""Compute cohomology over K_m[t^+-1] by Smith normal form and compare with the closed form."""

import time

from twistcoh.homology import cohomology_modules
from twistcoh.oracle import compare, main_theorem_table, predicted_mod_phi
from twistcoh.salvetti import build_complex, reduce_complex_mod_phi

n = 6
print(f"closed form over R for n = {n}:")
table = main_theorem_table(n)
for k in range(n + 1):
    print(f"  H^{k} = " + (" + ".join(map(str, table.degree(k))) or "0"))

cx = build_complex("B", n)
print("\nreduced mod Phi_m and computed:")
for m in range(1, n + 1):
    start = time.perf_counter()
    mods = cohomology_modules(reduce_complex_mod_phi(cx, m))
    report = compare(mods, predicted_mod_phi(n, m))
    tops = {d.degree: d.to_json()["primary"] for d in mods if d.primary_table}
    print(f"  m={m}: {report.status} in {time.perf_counter() - start:.2f}s  {tops}")
