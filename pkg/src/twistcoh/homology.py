"""Cohomology of cochain complexes over a one-variable Laurent PID, and Betti numbers at points."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import QQ, CyclotomicField, LaurentPoly, cyclotomic, cyclotomic_field
from .salvetti import CochainComplex, specialize_complex
from .smith import SmithResult, check_reconstruction, smith_normal_form

__all__ = [
    "ModuleDecomposition",
    "candidate_primes_mod_phi",
    "cyclotomic_candidates",
    "cohomology_modules",
    "rational_rank",
    "betti_at_point",
    "prime_label",
]


@dataclass
class ModuleDecomposition:
    """Computed H^degree: free rank, torsion invariant factors and their primary lengths."""

    degree: int
    free_rank: int
    invariant_factors: list
    primary_table: dict = field(default_factory=dict)
    unexplained_degree: int = 0

    def torsion_degree(self) -> int:
        return sum(f.span() for f in self.invariant_factors)

    def is_consistent(self) -> bool:
        explained = sum(p.span() * k for p, k in self.primary_table.items())
        chain = all(
            self.invariant_factors[i].divides(self.invariant_factors[i + 1])
            for i in range(len(self.invariant_factors) - 1)
        )
        return chain and explained + self.unexplained_degree == self.torsion_degree()

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "free_rank": self.free_rank,
            "invariant_factors": [f.to_string() for f in self.invariant_factors],
            "primary": sorted([prime_label(p), k] for p, k in self.primary_table.items()),
            "unexplained_degree": self.unexplained_degree,
        }


def prime_label(p: LaurentPoly) -> str:
    """Render a prime t + z^j over K_m as ``"t+z^j"`` (``"t+1"`` for j = 0)."""
    fld = p.field
    if isinstance(fld, CyclotomicField) and p.span() == 1 and p.low == 0 and p.coeffs[1] == fld.one:
        for j in range(fld.m):
            if fld.zeta_power(j) == p.coeffs[0]:
                return f"{p.var}+z^{j}" if j else f"{p.var}+1"
    return p.to_string()


def candidate_primes_mod_phi(m: int, var: str = "t") -> list[LaurentPoly]:
    """The primes t + z^j, 0 <= j < m, over K_m."""
    fld = cyclotomic_field(m)
    t = LaurentPoly.monomial(fld, 1, 1, var)
    return [t + fld.zeta_power(j) for j in range(m)]


def cyclotomic_candidates(max_m: int, var: str = "q") -> list[LaurentPoly]:
    """Phi_m over Q for 2 <= m <= max_m, as Laurent polynomials in ``var``."""
    out = []
    for m in range(2, max_m + 1):
        p = cyclotomic(m)
        out.append(LaurentPoly(QQ, p.coeffs, p.low, var))
    return out


def _primary(f: LaurentPoly, primes: list) -> tuple[dict, int]:
    table: dict = {}
    for p in primes:
        while f.span() >= p.span() and p.divides(f):
            f = f.exact_div(p)
            table[p] = table.get(p, 0) + 1
    return table, f.span()


def _ring_of(cx: CochainComplex):
    return cx.zero.field, cx.zero.var


def cohomology_modules(
    cx: CochainComplex,
    candidate_primes: list | None = None,
    verify: bool = True,
) -> list[ModuleDecomposition]:
    """H^k for every degree of ``cx`` (entries must be LaurentPoly over one field).

    When ``candidate_primes`` is None and the complex came from
    ``reduce_complex_mod_phi``, the primes t + z^j over K_m are used.
    ``verify`` re-multiplies every Smith transform.
    """
    if not isinstance(cx.zero, LaurentPoly):
        raise TypeError(f"cohomology over ring {cx.ring!r} is not supported; reduce to a PID first")
    fld, var = _ring_of(cx)
    if candidate_primes is None:
        m = cx.meta.get("mod_phi")
        candidate_primes = candidate_primes_mod_phi(m, var) if m else []
    for p in candidate_primes:
        if p.field is not fld or p.var != var:
            raise TypeError("candidate primes live in a different ring")

    snf: dict[int, SmithResult | None] = {}
    for k in cx.degrees:
        mat = cx.matrix(k)
        if not mat or not mat[0] or not any(x for row in mat for x in row):
            snf[k] = None
            continue
        res = smith_normal_form(mat, fld, var, transforms=verify)
        if verify and not check_reconstruction(mat, res):  # pragma: no cover
            raise ArithmeticError(f"Smith transform reconstruction failed in degree {k}")
        snf[k] = res

    def rank(k):
        res = snf.get(k)
        return res.rank if res is not None else 0

    out = []
    for k in cx.degrees:
        prev = snf.get(k - 1)
        factors = prev.invariant_factors if prev is not None else []
        table: dict = {}
        unexplained = 0
        for f in factors:
            part, rest = _primary(f, candidate_primes)
            for p, c in part.items():
                table[p] = table.get(p, 0) + c
            unexplained += rest
        free = len(cx.basis(k)) - rank(k) - rank(k - 1)
        out.append(ModuleDecomposition(k, free, list(factors), table, unexplained))
    return out


def rational_rank(mat: list) -> int:
    """Rank over Q by exact Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in mat if any(row)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for r in range(rank + 1, len(rows)):
            x = rows[r][c]
            if x:
                f = x / p[c]
                rows[r] = [a - f * b for a, b in zip(rows[r], p)]
        rank += 1
    return rank


def betti_at_point(cx: CochainComplex, q0, t0) -> list[int]:
    """dim_Q H^k of the complex with q = q0 and t = t0 substituted (both nonzero)."""
    if cx.ring != "R":
        raise TypeError("betti_at_point expects a complex over R")
    q0, t0 = Fraction(q0), Fraction(t0)
    if q0 == 0 or t0 == 0:
        raise ValueError("specialization values must be nonzero")
    sp = specialize_complex(cx, q0, t0)
    ranks = {k: rational_rank(sp.matrix(k)) for k in sp.degrees}
    return [len(sp.basis(k)) - ranks[k] - ranks.get(k - 1, 0) for k in sp.degrees]
