"""Count signed permutations by length and by uses of the last generator.

The brute-force generating function is compared with the closed product,
and the minimal coset representatives show where the factorization comes from.
"""

from twistcoh.arith import BivariatePoly, q_factorial, qt_double_factorial
from twistcoh.coxeter import enumerate_weighted_poincare, minimal_coset_reps, type_b_bfs

for n in range(1, 6):
    w = enumerate_weighted_poincare(n)
    print(f"n={n}: |W| = {len(type_b_bfs(n))}, series equals the closed product: {w == qt_double_factorial(n)}")

n = 3
reps, gen = minimal_coset_reps(n)
print(f"\n{len(reps)} minimal coset representatives for n = {n}:")
for word, length, special in reps:
    print(f"  {'s' + '.s'.join(map(str, word)) if word else 'e':<22} length {length}, last generator used {special}x")
print("coset series times [n]_q! reproduces the full series:",
      gen * BivariatePoly.from_univariate(q_factorial(n), "q") == enumerate_weighted_poincare(n))
