"""Build the cochain complex for type B, check d o d = 0 and peel off the filtration layers."""

from twistcoh.salvetti import build_complex, filtration_quotient

cx = build_complex("B", 3)
for k in cx.degrees:
    print(f"C^{k}: {cx.basis(k)}")
print("\ncoboundary from degree 1 to degree 2:")
for target, row in zip(cx.basis(2), cx.matrix(1)):
    print(f"  {target}: " + ", ".join(str(x) if x else "0" for x in row))
print("\nd o d = 0:", cx.d_squared_is_zero())

n = 6
big = build_complex("B", n)
print(f"\nfiltration layers of the n = {n} complex against the type-A complexes:")
for s in range(n + 1):
    quotient, report = filtration_quotient(n, s, big)
    size = sum(len(b) for b in quotient.bases)
    print(f"  s={s}: {size:3d} strings, matches type A of rank {max(n - s - 1, 0)}: {report.matches}")
