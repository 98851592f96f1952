"""Two matrix representations of the braid group and the diagonal change of basis relating them."""

from twistcoh.shapiro import (
    check_braid_relations,
    check_conjugation_equivalence,
    check_pure_braid_abelian,
    induced_representation,
    tym_representation,
)


def show(mat):
    for row in mat:
        print("   [" + ", ".join(f"{str(x) if x else '0':>8}" for x in row) + "]")


print("u-representation, second generator, n = 2:")
show(tym_representation(2)[1])
print("induced representation, first generator, n = 2:")
show(induced_representation(2)[0])

for n in range(1, 7):
    print(f"n={n}: braid relations {check_braid_relations(tym_representation(n))}"
          f"/{check_braid_relations(induced_representation(n))},"
          f" conjugate after u -> -q^-2 t: {check_conjugation_equivalence(n)}")
print("pure braid images commute (n = 4):", check_pure_braid_abelian(tym_representation(4)))
