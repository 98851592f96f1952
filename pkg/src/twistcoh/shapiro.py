"""Braid-group representations attached to the inclusion of Artin groups A_n < B_n,
and the cohomology tables obtained from the closed forms by transfer.

Matrices are lists of rows.  The u-matrices have entries in Q[u^+-1]
(``LaurentPoly`` in the variable u), the induced ones in Q[q^+-1, t^+-1]
(``BivariatePoly``); the substitution between the two is an explicit ring map.
"""

from __future__ import annotations

from .arith import QQ, BivariatePoly, LaurentPoly
from .oracle import CohomologyTable, main_theorem_table, ratio_theorem_table

__all__ = [
    "tym_representation",
    "induced_representation",
    "mat_mul",
    "monomial_inverse",
    "monomial_det",
    "check_braid_relations",
    "substitute_u",
    "check_conjugation_equivalence",
    "pure_braid_images",
    "check_pure_braid_abelian",
    "affine_cohomology_table",
    "tym_cohomology_table",
]

MAPPING_DERIVED = "mapping-derived"


def _u_ring():
    return LaurentPoly.zero(QQ, "u"), LaurentPoly.one(QQ, "u"), LaurentPoly.monomial(QQ, 1, 1, "u")


def tym_representation(n: int) -> list[list[list[LaurentPoly]]]:
    """Images of sigma_1..sigma_n: identity except the block [[0, 1], [u, 0]] at rows i, i+1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    zero, one, u = _u_ring()
    mats = []
    for i in range(n):
        m = [[one if r == c else zero for c in range(n + 1)] for r in range(n + 1)]
        m[i][i] = zero
        m[i + 1][i + 1] = zero
        m[i][i + 1] = one
        m[i + 1][i] = u
        mats.append(m)
    return mats


def induced_representation(n: int) -> list[list[list[BivariatePoly]]]:
    """Images of sigma_1..sigma_n on the module induced from A_n to B_n.

    sigma_i (i < n): -q on the diagonal except the block [[0, -q], [q^-1 t, 0]];
    sigma_n: -q on the diagonal except the block [[0, 1], [-t, 0]].
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    zero = BivariatePoly()
    mq = BivariatePoly.monomial(-1, 1, 0)
    mats = []
    for i in range(n):
        m = [[mq if r == c else zero for c in range(n + 1)] for r in range(n + 1)]
        m[i][i] = zero
        m[i + 1][i + 1] = zero
        if i < n - 1:
            m[i][i + 1] = mq
            m[i + 1][i] = BivariatePoly.monomial(1, -1, 1)
        else:
            m[i][i + 1] = BivariatePoly.constant(1)
            m[i + 1][i] = BivariatePoly.monomial(-1, 0, 1)
        mats.append(m)
    return mats


def _zero_like(mat):
    x = mat[0][0]
    return x - x


def mat_mul(a, b):
    zero = _zero_like(a)
    size = len(b[0])
    out = []
    for row in a:
        acc = [zero] * size
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def _product(mats):
    out = mats[0]
    for m in mats[1:]:
        out = mat_mul(out, m)
    return out


def _monomial_pattern(mat):
    perm = []
    for row in mat:
        nz = [j for j, x in enumerate(row) if x]
        if len(nz) != 1 or not row[nz[0]].is_unit():
            raise ValueError("not a monomial matrix with unit entries")
        perm.append(nz[0])
    if sorted(perm) != list(range(len(mat))):
        raise ValueError("not a monomial matrix")
    return perm


def monomial_inverse(mat):
    """Inverse of a matrix with exactly one unit entry per row and column."""
    perm = _monomial_pattern(mat)
    zero = _zero_like(mat)
    size = len(mat)
    out = [[zero] * size for _ in range(size)]
    for r, c in enumerate(perm):
        out[c][r] = mat[r][c] ** -1
    return out


def monomial_det(mat):
    perm = _monomial_pattern(mat)
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    det = mat[0][perm[0]]
    for r in range(1, len(perm)):
        det = det * mat[r][perm[r]]
    return det if sign > 0 else -det


def check_braid_relations(mats) -> bool:
    """Type-A braid relations among consecutive generators, exactly."""
    k = len(mats)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = mats[i], mats[j]
            if j == i + 1:
                if _product([a, b, a]) != _product([b, a, b]):
                    return False
            elif mat_mul(a, b) != mat_mul(b, a):
                return False
    return True


def substitute_u(p: LaurentPoly, image: BivariatePoly) -> BivariatePoly:
    """The ring map Q[u^+-1] -> Q[q^+-1, t^+-1] sending u to a monomial ``image``."""
    if not image.is_unit():
        raise ValueError("u must map to a unit")
    out = BivariatePoly()
    for k, c in p.terms():
        out = out + (image ** k) * c
    return out


def check_conjugation_equivalence(n: int, substitution: BivariatePoly | None = None) -> bool:
    """U (induced sigma_i) U^-1 == (-q) (u-matrix of sigma_i, u -> -q^-2 t) for every i.

    U = Diag(1, ..., 1, -q^-1).
    """
    if substitution is None:
        substitution = BivariatePoly.monomial(-1, -2, 1)
    zero = BivariatePoly()
    one = BivariatePoly.constant(1)
    U = [[one if r == c else zero for c in range(n + 1)] for r in range(n + 1)]
    U[n][n] = BivariatePoly.monomial(-1, -1, 0)
    Uinv = monomial_inverse(U)
    mq = BivariatePoly.monomial(-1, 1, 0)
    for ind, tym in zip(induced_representation(n), tym_representation(n)):
        lhs = _product([U, ind, Uinv])
        rhs = [[mq * substitute_u(x, substitution) if x else zero for x in row] for row in tym]
        if lhs != rhs:
            return False
    return True


def pure_braid_images(mats) -> dict[tuple[int, int], list]:
    """A_ij = (s_{j-1} ... s_{i+1}) s_i^2 (s_{j-1} ... s_{i+1})^-1 for 1 <= i < j <= k+1."""
    k = len(mats)
    inv = [monomial_inverse(m) for m in mats]
    out = {}
    for i in range(1, k + 1):
        for j in range(i + 1, k + 2):
            conj = list(range(j - 1, i, -1))  # generator indices j-1, ..., i+1
            left = [mats[g - 1] for g in conj]
            right = [inv[g - 1] for g in reversed(conj)]
            out[(i, j)] = _product(left + [mats[i - 1], mats[i - 1]] + right)
    return out


def check_pure_braid_abelian(mats) -> bool:
    images = list(pure_braid_images(mats).values())
    for a in range(len(images)):
        for b in range(a + 1, len(images)):
            if mat_mul(images[a], images[b]) != mat_mul(images[b], images[a]):
                return False
    return True


def affine_cohomology_table(n: int, coefficients: str = "Q", source: CohomologyTable | None = None) -> CohomologyTable:
    """H^k of the affine Artin group of type A~_{n-1} as H^{k+1} of the B_n table.

    ``coefficients`` is ``"Q"`` (from the q = -1 table) or ``"Q[q]"`` (from the
    closed form over R, read as Q[q^+-1]-modules).  A computed source table
    may be supplied instead of the closed form.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if source is None:
        if coefficients == "Q":
            source = ratio_theorem_table(n)
        elif coefficients in ("Q[q]", "Q[q^+-1]"):
            source = main_theorem_table(n)
        else:
            raise ValueError(f"unknown coefficients {coefficients!r}")
    mods = {k - 1: list(v) for k, v in source.modules.items() if 1 <= k <= n and v}
    return CohomologyTable(n, coefficients, mods, group=f"A~_{n - 1}", provenance=MAPPING_DERIVED)


def tym_cohomology_table(n: int) -> CohomologyTable:
    """H^*(Br_{n+1}, V) for the (n+1)-dimensional u-representation V: the q = -1 table of B_n."""
    src = ratio_theorem_table(n)
    return CohomologyTable(
        n, "V", {k: list(v) for k, v in src.modules.items()},
        group=f"Br_{n + 1}", provenance=MAPPING_DERIVED,
    )
