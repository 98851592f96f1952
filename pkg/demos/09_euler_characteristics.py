"""Alternating counts of finite parabolic subsets for affine and two-dimensional diagrams."""

import itertools
import random

from twistcoh.coxeter import (
    INF,
    affine_a_graph,
    affine_b_graph,
    affine_c_graph,
    euler_characteristic_kfin,
    random_two_dimensional_graph,
)

for n in range(2, 9):
    row = [euler_characteristic_kfin(affine_a_graph(n)), euler_characteristic_kfin(affine_c_graph(n))]
    if n >= 3:
        row.append(euler_characteristic_kfin(affine_b_graph(n)))
    print(f"rank {n + 1} affine diagrams: {row}  (expected {(-1) ** n})")

rng = random.Random(3)
for _ in range(5):
    g = random_two_dimensional_graph(rng.randint(3, 6), rng)
    m = sum(1 for i, j in itertools.combinations(g.vertices, 2) if g.label(i, j) != INF)
    print(f"rank {g.rank}, {m} finite pairs: chi = {euler_characteristic_kfin(g)}, 1 - n + m = {1 - g.rank + m}")
