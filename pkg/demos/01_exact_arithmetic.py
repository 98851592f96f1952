"""A short tour of the exact rings: cyclotomic fields, q-analogues and reductions."""

from twistcoh.arith import (
    cyclo_inverse,
    cyclotomic,
    cyclotomic_field,
    parse_bivariate,
    q_binomial,
    qt_double_factorial,
    qt_primed_binomial,
    reduce_mod_cyclotomic,
    specialize,
)

print("cyclotomic polynomials")
for m in (1, 2, 3, 4, 6, 12):
    print(f"  Phi_{m} = {cyclotomic(m)}")

print("\nGaussian binomial [4 choose 2]_q =", q_binomial(4, 2))
print("[4]!! in (q, t) =", qt_double_factorial(2))
print("primed binomial (3, 1) =", qt_primed_binomial(3, 1))

k3 = cyclotomic_field(3)
z = k3.gen()
print("\nin K_3, 1/(1 + z) =", cyclo_inverse(1 + z).to_string())

p = parse_bivariate("1 + q*t + q^-1*t^2")
for m in (2, 3, 4):
    print(f"{p}  mod Phi_{m}  ->  {reduce_mod_cyclotomic(p, m)}")
print(f"{p}  at q = -1  ->  {specialize(p, q=-1)}")
