"""Groebner bases over Q decide the two ideal statements in Q[q^+-1, t^+-1]."""

import time

from twistcoh.groebner import lemma_ideali1_factors, verify_lemma_ideali1, verify_lemma_ideali2

print("factors for n = 4:", [[str(g) for g in f] for f in lemma_ideali1_factors(4)])
for n in range(1, 9):
    start = time.perf_counter()
    reports = [verify_lemma_ideali1(n)] + [verify_lemma_ideali2(n, k) for k in range(2, n + 1) if n % k == 0]
    line = ", ".join(f"{r.name.split('(')[1][:-1]} {r.params} {r.status}" for r in reports)
    print(f"n={n} ({time.perf_counter() - start:.2f}s): {line}")
