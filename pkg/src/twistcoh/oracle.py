"""Closed-form cohomology tables and their images after reduction.

Notation: for m >= 2, {m}_i = R/(Phi_m(q), q^i t + 1) with i read mod m, and
{1}_i = R/(q^i t + 1).

Reduction rule used by :func:`predicted_mod_phi`.  Let C be a complex of
free R-modules.  Multiplication by Phi_m gives a short exact sequence
0 -> C -> C -> C/Phi_m -> 0 and hence, degree by degree,

    0 -> H^i(C)/Phi_m -> H^i(C/Phi_m) -> Phi_m-torsion of H^{i+1}(C) -> 0.

A summand {m}_k of H^i is killed by Phi_m, so it shows up in both
H^i(C/Phi_m) and H^{i-1}(C/Phi_m), each time as K_m[t]/(z^k t + 1), whose
monic generator is t + z^{-k}.  For m' != m, Phi_m is a unit on {m'}_k and
such summands contribute nothing.  The summand {1}_{n-1} has no Phi_m-torsion
and contributes K_m[t]/(t + z^{1-n}) to degree n only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .arith import QQ, LaurentPoly, euler_phi
from .homology import ModuleDecomposition, candidate_primes_mod_phi, cyclotomic_candidates, prime_label

__all__ = [
    "ElementaryModule",
    "CohomologyTable",
    "ReducedPrediction",
    "CompareReport",
    "main_theorem_table",
    "ratio_theorem_table",
    "predicted_mod_phi",
    "predicted_type_a",
    "elementary_iso",
    "compare",
    "compare_ratio_table",
    "compare_type_a",
    "perturb_prediction",
    "predicted_betti",
    "prediction_q_dimensions",
]


@dataclass(frozen=True, order=True)
class ElementaryModule:
    """{m}_i; the index is stored mod m when m >= 2."""

    m: int
    i: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError("m must be a positive integer")
        if self.m >= 2:
            object.__setattr__(self, "i", self.i % self.m)

    def __str__(self):
        return f"{{{self.m}}}_{self.i}"


@dataclass
class CohomologyTable:
    """Degree -> list of summands (ElementaryModule, or torsion generators over Q[t])."""

    n: int
    coefficients: str
    modules: dict = field(default_factory=dict)
    group: str = "B_n"
    provenance: str = "closed-form"

    def degree(self, i: int) -> list:
        return self.modules.get(i, [])

    def q_dimensions(self) -> dict[int, int]:
        """Degree -> Q-dimension, for tables whose entries are torsion generators over Q[t]."""
        out = {}
        for k, v in sorted(self.modules.items()):
            if any(isinstance(x, ElementaryModule) for x in v):
                raise ValueError("elementary modules over R are infinite-dimensional over Q")
            out[k] = sum(x.span() for x in v)
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "group": self.group,
            "coefficients": self.coefficients,
            "provenance": self.provenance,
            "degrees": {str(k): [str(x) for x in v] for k, v in sorted(self.modules.items())},
        }


@dataclass
class ReducedPrediction:
    """Degree -> {prime over K_m: length}."""

    n: int
    m: int
    table: dict = field(default_factory=dict)
    free_rank: int = 0

    def degree(self, i: int) -> dict:
        return self.table.get(i, {})

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "degrees": {
                str(k): sorted([prime_label(p), c] for p, c in v.items())
                for k, v in sorted(self.table.items())
            },
        }


def main_theorem_table(n: int) -> CohomologyTable:
    """H^*(Artin group of type B_n; R_{q,t}) as a sum of elementary modules."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mods: dict[int, list] = {}

    def add(i, mod):
        mods.setdefault(i, []).append(mod)

    divisors = [d for d in range(1, n + 1) if n % d == 0]
    for d in divisors:
        for k in range(d - 1):
            add(n, ElementaryModule(d, k))
    add(n, ElementaryModule(1, n - 1))
    for j in range(1, n):
        i = n - 2 * j
        if i < 0:
            break
        for d in divisors:
            if d * (j + 1) <= n:
                for k in range(d - 1):
                    add(i, ElementaryModule(d, k))
    for j in range(0, n):
        i = n - 2 * j - 1
        if i < 0:
            break
        for d in range(2, n + 1):
            if n % d and d * (j + 1) <= n:
                add(i, ElementaryModule(d, n - 1))
    for v in mods.values():
        v.sort()
    return CohomologyTable(n, "R", {k: v for k, v in mods.items() if v})


def ratio_theorem_table(n: int) -> CohomologyTable:
    """H^*(Artin group of type B_n; Q[t^+-1]) with q = -1: torsion generators per degree."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t = LaurentPoly.monomial(QQ, 1, 1)
    one = LaurentPoly.one(QQ)
    mods = {k: [(t + one).normalize()] for k in range(1, n)}
    mods[n] = [(t + one).normalize() if n % 2 else (one - t * t).normalize()]
    return CohomologyTable(n, "Q[t]", mods)


def predicted_mod_phi(n: int, m: int) -> ReducedPrediction:
    """Per-degree primes t + z^j (and lengths) of H^*(C_n / Phi_m) over K_m[t^+-1]."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    primes = candidate_primes_mod_phi(m)
    table: dict[int, dict] = {}

    def add(i, j):
        if i < 0:
            return
        p = primes[j % m]
        row = table.setdefault(i, {})
        row[p] = row.get(p, 0) + 1

    for i, mods in main_theorem_table(n).modules.items():
        for mod in mods:
            if mod.m == 1:
                # only {1}_{n-1} occurs, in degree n
                add(i, -mod.i)
            elif mod.m == m:
                add(i, -mod.i)
                add(i - 1, -mod.i)
    return ReducedPrediction(n, m, table)


def predicted_type_a(a: int) -> dict[int, list[int]]:
    """Degree r -> sorted list of m >= 2 with Phi_m-torsion in H^r(CA_a over Q[q^+-1])."""
    if a < 1:
        raise ValueError("a must be >= 1")
    out: dict[int, list[int]] = {}
    for m in range(2, a + 2):
        if a % m == 0:
            out.setdefault(a + 1 - 2 * a // m, []).append(m)
        if (a + 1) % m == 0:
            out.setdefault(a + 2 - 2 * (a + 1) // m, []).append(m)
    return {r: sorted(v) for r, v in sorted(out.items())}


def elementary_iso(x: ElementaryModule, y: ElementaryModule, view: str) -> bool:
    """Isomorphism of elementary modules viewed over R, Q[q^+-1] or Q[t^+-1]."""
    if view == "R":
        return (x.m, x.i) == (y.m, y.i)
    if view in ("Q[q]", "Q[q^+-1]"):
        return x.m == y.m
    if view in ("Q[t]", "Q[t^+-1]"):
        return euler_phi(x.m) == euler_phi(y.m) and x.m // gcd(x.m, x.i) == y.m // gcd(y.m, y.i)
    raise ValueError(f"unknown view {view!r}")


@dataclass
class CompareReport:
    passed: bool
    n: int
    m: int | None
    mismatch: dict | None = None

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def message(self) -> str:
        if self.passed:
            return "PASS"
        mm = self.mismatch
        return (
            f"FAIL degree {mm['degree']} prime {mm['prime']}: "
            f"expected {mm['expected']}, found {mm['found']}"
        )

    def to_json(self) -> dict:
        return {"status": self.status, "n": self.n, "m": self.m, "mismatch": self.mismatch}


def compare(computed: list[ModuleDecomposition], predicted: ReducedPrediction) -> CompareReport:
    """PASS iff every degree has the predicted primary table and nothing unexplained."""
    degrees = [d.degree for d in computed]
    if degrees != list(range(predicted.n + 1)):
        raise ValueError(f"computed degrees {degrees} do not fit n={predicted.n}")
    for dec in computed:
        k = dec.degree
        if dec.unexplained_degree:
            return CompareReport(False, predicted.n, predicted.m, {
                "degree": k, "prime": "unexplained", "expected": 0, "found": dec.unexplained_degree,
            })
        exp = predicted.degree(k)
        found = dec.primary_table
        for p in sorted(set(exp) | set(found), key=prime_label):
            e, f = exp.get(p, 0), found.get(p, 0)
            if e != f:
                return CompareReport(False, predicted.n, predicted.m, {
                    "degree": k, "prime": prime_label(p), "expected": e, "found": f,
                })
    return CompareReport(True, predicted.n, predicted.m)


def _to_rational(p: LaurentPoly) -> LaurentPoly:
    coeffs = []
    for c in p.coeffs:
        if hasattr(c, "is_rational"):
            if not c.is_rational():
                raise ValueError("coefficient is not rational")
            c = c.coeffs[0]
        coeffs.append(Fraction(c))
    return LaurentPoly(QQ, coeffs, p.low, p.var)


def compare_ratio_table(computed: list[ModuleDecomposition], table: CohomologyTable) -> CompareReport:
    """Invariant factors of H^k(C_n / Phi_2) against the q = -1 table, degree by degree."""
    for dec in computed:
        k = dec.degree
        found = [_to_rational(f).to_string() for f in dec.invariant_factors]
        exp = [f.to_string() for f in table.degree(k)]
        if found != exp or dec.free_rank:
            return CompareReport(False, table.n, 2, {
                "degree": k, "prime": "invariant factors", "expected": exp,
                "found": found if not dec.free_rank else f"free rank {dec.free_rank}",
            })
    return CompareReport(True, table.n, 2)


def compare_type_a(a: int, computed: list[ModuleDecomposition]) -> CompareReport:
    """Type-A check: each degree's torsion is exactly the product of the predicted Phi_m."""
    pred = predicted_type_a(a)
    cands = cyclotomic_candidates(a + 1)
    for dec in computed:
        exp = {cands[m - 2]: 1 for m in pred.get(dec.degree, [])}
        found = dict(dec.primary_table)
        if dec.unexplained_degree or found != exp or dec.free_rank:
            return CompareReport(False, a, None, {
                "degree": dec.degree,
                "prime": "Phi",
                "expected": sorted(pred.get(dec.degree, [])),
                "found": sorted(
                    [cands.index(p) + 2 for p in found]
                    + (["unexplained"] if dec.unexplained_degree else [])
                    + ([f"free {dec.free_rank}"] if dec.free_rank else []), key=str
                ),
            })
    return CompareReport(True, a, None)


def perturb_prediction(pred: ReducedPrediction, rng: random.Random) -> ReducedPrediction:
    """Negative control: drop one prime occurrence (or add one if there is none)."""
    table = {k: dict(v) for k, v in pred.table.items()}
    slots = [(k, p) for k, v in sorted(table.items()) for p in sorted(v, key=prime_label)]
    if slots:
        k, p = rng.choice(slots)
        table[k][p] -= 1
        if not table[k][p]:
            del table[k][p]
    else:
        p = candidate_primes_mod_phi(pred.m)[0]
        table[pred.n] = {p: 1}
    return ReducedPrediction(pred.n, pred.m, table, pred.free_rank)


def _local_count(pred: ReducedPrediction, degree: int, t0: Fraction) -> int:
    """Cyclic summands of predicted H^degree over Q[t] that vanish at t0 (m in {1, 2})."""
    count = 0
    for p, length in pred.degree(degree).items():
        const = p.coeffs[0].coeffs[0]
        if const == -t0:
            if length > 1:  # pragma: no cover - never predicted for m <= 2
                raise ValueError("point count needs a semisimple prediction")
            count += length
    return count


def predicted_betti(n: int, q0, t0) -> list[int]:
    """Betti numbers of C_n with q = q0, t = t0, predicted from the closed forms.

    First q is specialized: at q0 = -1 or 1 the module is given by
    predicted_mod_phi(n, 2) or (n, 1); at any other rational q0 only
    {1}_{n-1} survives, as Q[t]/(q0^{n-1} t + 1) in degree n.  Then over the
    PID Q[t^+-1], b_k = #summands of H^k at t0 + #summands of H^{k+1} at t0.
    """
    q0, t0 = Fraction(q0), Fraction(t0)
    if q0 == 0 or t0 == 0:
        raise ValueError("specialization values must be nonzero")
    local = [0] * (n + 2)
    if q0 in (1, -1):
        pred = predicted_mod_phi(n, 1 if q0 == 1 else 2)
        for k in range(n + 1):
            local[k] = _local_count(pred, k, t0)
    else:
        local[n] = 1 if q0 ** (n - 1) * t0 + 1 == 0 else 0
    return [local[k] + local[k + 1] for k in range(n + 1)]


def prediction_q_dimensions(n: int) -> dict[int, int]:
    """Degree -> sum over m = 1..n of the Q-dimension of predicted_mod_phi(n, m)."""
    out: dict[int, int] = {}
    for m in range(1, n + 1):
        for k, row in predicted_mod_phi(n, m).table.items():
            out[k] = out.get(k, 0) + euler_phi(m) * sum(row.values())
    return {k: v for k, v in sorted(out.items()) if v}
