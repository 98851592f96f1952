"""The algebraic Salvetti complexes C*_n (type B) and CA*_n (type A) over R = Q[q^+-1, t^+-1].

Generators are subsets S of {1..n}, written as 0/1 strings of length n
(position i is '1' iff i is in S).  The coboundary sends S to

    sum over j not in S of  (-1)^(#{g in S : g < j}) * W_{S+j}(q,t) / W_S(q,t) * (S + j)

The coefficients are used with the literal signs of the closed forms (``[m]_q`` and ``1 + t q^i``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .arith import (
    QQ,
    BivariatePoly,
    LaurentPoly,
    q_binomial,
    qt_primed_binomial,
    reduce_mod_cyclotomic,
    specialize,
    cyclotomic_field,
)
from .coxeter import parabolic_poincare_qt

MAX_N = 12

__all__ = [
    "CochainComplex",
    "Chain",
    "gamma_basis",
    "coboundary_coefficient",
    "coboundary_ratio",
    "build_complex",
    "filtration_quotient",
    "FiltrationReport",
    "dps_generator",
    "reduce_complex_mod_phi",
    "specialize_complex",
    "type_a_over_q",
    "generator_positions",
    "generator_cocycle_checks",
]


def gamma_basis(n: int, k: int) -> list[str]:
    """Degree-k strings of length n, ordered lexicographically by their subsets.

    {1} comes before {2}, so for n = 2 the degree-1 basis is ["10", "01"].
    """
    out = []
    for pos in itertools.combinations(range(n), k):
        s = ["0"] * n
        for p in pos:
            s[p] = "1"
        out.append("".join(s))
    return out


def _as_set(gamma: str) -> set[int]:
    return {i + 1 for i, ch in enumerate(gamma) if ch == "1"}


def coboundary_coefficient(n: int, gamma: str, j: int, family: str = "B") -> BivariatePoly:
    """Signed coefficient of (S + j) in delta(S), from the closed forms."""
    family = family.upper()
    if len(gamma) != n or set(gamma) - {"0", "1"}:
        raise ValueError(f"gamma must be a 0/1 string of length {n}")
    if not 1 <= j <= n:
        raise ValueError(f"j must lie in 1..{n}")
    if gamma[j - 1] == "1":
        raise ValueError(f"j={j} already belongs to S={gamma}")
    sigma = gamma[: j - 1].count("1")
    lo = j
    while lo > 1 and gamma[lo - 2] == "1":
        lo -= 1
    hi = j
    while hi < n and gamma[hi] == "1":
        hi += 1
    m = hi - lo + 1
    i = hi - j
    if family == "B" and hi == n:
        coeff = qt_primed_binomial(m, i)
    else:
        coeff = BivariatePoly.from_univariate(q_binomial(m + 1, i + 1), "q")
    return -coeff if sigma % 2 else coeff


def coboundary_ratio(n: int, gamma: str, j: int, family: str = "B") -> BivariatePoly:
    """The same coefficient computed as a ratio of parabolic Poincare polynomials."""
    g = _as_set(gamma)
    sigma = sum(1 for x in g if x < j)
    num = parabolic_poincare_qt(n, g | {j}, family)
    den = parabolic_poincare_qt(n, g, family)
    ratio = num.exact_div(den)
    return -ratio if sigma % 2 else ratio


@dataclass
class CochainComplex:
    """Graded free complex; ``matrices[k]`` maps degree k to degree k+1.

    ``matrices[k][r][c]`` is the coefficient of ``bases[k+1][r]`` in the
    coboundary of ``bases[k][c]``.  ``ring`` is a tag such as ``"R"``,
    ``"K3[t]"``, ``"Q[t]"`` or ``"Q[q]"``; ``zero`` is that ring's zero.
    """

    family: str
    n: int
    ring: str
    bases: list[list[str]]
    matrices: list[list[list]]
    zero: object
    shift: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def degrees(self) -> range:
        return range(self.shift, self.shift + len(self.bases))

    def basis(self, k: int) -> list[str]:
        i = k - self.shift
        if 0 <= i < len(self.bases):
            return self.bases[i]
        return []

    def matrix(self, k: int) -> list[list]:
        """Coboundary from degree k to degree k+1 (possibly with zero rows/cols)."""
        i = k - self.shift
        if 0 <= i < len(self.matrices):
            return self.matrices[i]
        rows, cols = len(self.basis(k + 1)), len(self.basis(k))
        return [[self.zero] * cols for _ in range(rows)]

    def map_entries(self, fn: Callable, ring: str, zero) -> "CochainComplex":
        mats = [[[fn(x) if x else zero for x in row] for row in mat] for mat in self.matrices]
        return CochainComplex(
            self.family, self.n, ring, [list(b) for b in self.bases], mats, zero,
            self.shift, dict(self.meta),
        )

    def d_squared_is_zero(self) -> bool:
        return not self.d_squared_failures()

    def d_squared_failures(self) -> list[tuple[int, int, int]]:
        """Positions (k, row, col) where M_{k+1} M_k is nonzero."""
        bad = []
        for k in range(len(self.matrices) - 1):
            a, b = self.matrices[k + 1], self.matrices[k]
            cols_b = len(b[0]) if b else 0
            # sparse product
            b_cols = [[(r, b[r][c]) for r in range(len(b)) if b[r][c]] for c in range(cols_b)]
            a_rows = [[(c, x) for c, x in enumerate(row) if x] for row in a]
            for r, arow in enumerate(a_rows):
                amap = dict(arow)
                for c in range(cols_b):
                    acc = None
                    for mid, y in b_cols[c]:
                        x = amap.get(mid)
                        if x is not None:
                            acc = x * y if acc is None else acc + x * y
                    if acc is not None and acc:
                        bad.append((k + self.shift, r, c))
        return bad

    def apply(self, k: int, chain: dict) -> dict:
        """Coboundary of a degree-k chain given as {string: coefficient}."""
        basis = self.basis(k)
        index = {s: i for i, s in enumerate(basis)}
        target = self.basis(k + 1)
        mat = self.matrix(k)
        out: dict = {}
        for s, coeff in chain.items():
            c = index[s]
            for r in range(len(target)):
                x = mat[r][c]
                if x:
                    v = out.get(target[r])
                    out[target[r]] = x * coeff if v is None else v + x * coeff
        return {s: v for s, v in out.items() if v}

    def to_json(self, fmt: Callable = str) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "ring": self.ring,
            "shift": self.shift,
            "bases": {str(k): self.basis(k) for k in self.degrees},
            "matrices": {
                str(k): [[fmt(x) if x else "0" for x in row] for row in self.matrix(k)]
                for k in self.degrees
                if k - self.shift < len(self.matrices)
            },
        }


def build_complex(family: str, n: int, check: bool = True) -> CochainComplex:
    """C*_n (family 'B') or CA*_n (family 'A') over R.

    n = 0 gives the one-dimensional complex R in degree 0.
    """
    family = family.upper()
    if family not in ("A", "B"):
        raise ValueError("family must be 'A' or 'B'")
    if not 0 <= n <= MAX_N:
        raise ValueError(f"n must lie in 0..{MAX_N}")
    zero = BivariatePoly()
    bases = [gamma_basis(n, k) for k in range(n + 1)]
    mats = []
    for k in range(n):
        rows = {s: r for r, s in enumerate(bases[k + 1])}
        mat = [[zero] * len(bases[k]) for _ in bases[k + 1]]
        for c, g in enumerate(bases[k]):
            for j in range(1, n + 1):
                if g[j - 1] == "0":
                    target = g[: j - 1] + "1" + g[j:]
                    mat[rows[target]][c] = coboundary_coefficient(n, g, j, family)
        mats.append(mat)
    cx = CochainComplex(family, n, "R", bases, mats, zero)
    if check and not cx.d_squared_is_zero():  # pragma: no cover
        raise ArithmeticError(f"d o d != 0 for family {family}, n={n}")
    return cx


@dataclass
class FiltrationReport:
    n: int
    s: int
    matches: bool
    mismatches: list = field(default_factory=list)
    note: str = ""


def filtration_quotient(n: int, s: int, complex_: CochainComplex | None = None):
    """The quotient F^s/F^{s+1} of C*_n and its comparison with CA*_{n-s-1}[s].

    Returns ``(quotient complex, FiltrationReport)``.  The basis bijection is
    S' -> S' + '0' + '1'*s.
    """
    if not 0 <= s <= n:
        raise ValueError(f"s must lie in 0..{n}")
    cx = complex_ if complex_ is not None else build_complex("B", n)
    tail = "1" * s if s == n else "0" + "1" * s

    def keep(g: str) -> bool:
        return g.endswith(tail) if s < n else g == tail

    sub_bases = []
    sub_index = []
    for k in range(n + 1):
        idx = [i for i, g in enumerate(cx.bases[k]) if keep(g)]
        sub_index.append(idx)
        sub_bases.append([cx.bases[k][i] for i in idx])
    lo = s
    hi = n if s == n else n - 1
    bases = sub_bases[lo : hi + 1]
    mats = []
    for k in range(lo, hi):
        full = cx.matrices[k]
        mats.append([[full[r][c] for c in sub_index[k]] for r in sub_index[k + 1]])
    quotient = CochainComplex("B", n, cx.ring, bases, mats, cx.zero, shift=lo, meta={"s": s})
    if s == n:
        return quotient, FiltrationReport(n, s, len(bases) == 1 and len(bases[0]) == 1,
                                          note="F^n C_n is R.1^n")
    ref = build_complex("A", n - s - 1)
    mismatches = []
    for k in ref.degrees:
        mapped = [g + tail for g in ref.basis(k)]
        if mapped != quotient.basis(k + s):
            mismatches.append(("basis", k))
    for k in range(len(ref.matrices)):
        a, b = ref.matrices[k], quotient.matrix(k + s)
        for r, row in enumerate(a):
            for c, x in enumerate(row):
                if x != b[r][c]:
                    mismatches.append((k + s, r, c))
    return quotient, FiltrationReport(n, s, not mismatches, mismatches)


# ---------------------------------------------------------------------------
# chains and the generator strings


class Chain:
    """Integer combination of 0/1 strings; ``*`` is juxtaposition."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[str, int] | None = None):
        self.terms = {s: c for s, c in (terms or {}).items() if c}

    @classmethod
    def string(cls, s: str, coeff: int = 1) -> "Chain":
        return cls({s: coeff})

    def __add__(self, other: "Chain") -> "Chain":
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, 0) + c
        return Chain(out)

    def __neg__(self):
        return Chain({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Chain({s: c * other for s, c in self.terms.items()})
        out: dict[str, int] = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                out[s1 + s2] = out.get(s1 + s2, 0) + c1 * c2
        return Chain(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Chain":
        out = Chain.string("")
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Chain) and self.terms == other.terms

    def __repr__(self):
        return "Chain(" + " ".join(f"{c:+d}*{s}" for s, c in sorted(self.terms.items())) + ")"

    @property
    def length(self) -> int:
        lengths = {len(s) for s in self.terms}
        if len(lengths) > 1:
            raise ValueError("chain mixes strings of different lengths")
        return lengths.pop() if lengths else 0

    @property
    def degree(self) -> int:
        degs = {s.count("1") for s in self.terms}
        if len(degs) > 1:
            raise ValueError("chain mixes strings of different degrees")
        return degs.pop() if degs else 0


def dps_generator(kind: str, h: int, i: int | None = None) -> Chain:
    """The strings w_h, z_h, b_h, c_h, z_h(i), v_h(i) as chains."""
    if not isinstance(h, int) or h < 2:
        raise ValueError("h must be an integer >= 2")
    w = Chain.string("0" + "1" * (h - 2) + "0")
    z = Chain.string("1" * (h - 1) + "0") + Chain.string("0" + "1" * (h - 1), (-1) ** h)
    b = Chain.string("0" + "1" * (h - 2))
    c = Chain.string("1" * (h - 1))
    if kind in ("w", "z", "b", "c"):
        if i is not None:
            raise ValueError(f"generator {kind} takes no index i")
        return {"w": w, "z": z, "b": b, "c": c}[kind]
    if kind not in ("zi", "vi"):
        raise ValueError(f"unknown generator kind {kind!r}")
    if not isinstance(i, int) or i < 1:
        raise ValueError("index i must be an integer >= 1")
    out = Chain()
    if kind == "zi":
        for j in range(i):
            out = out + (w**j * z * w ** (i - j - 1)) * ((-1) ** (h * j))
        return out
    for j in range(i - 1):
        out = out + (w**j * z * w ** (i - j - 2) * b) * ((-1) ** (h * j))
    return out + (w ** (i - 1) * c) * ((-1) ** (h * (i - 1)))


def generator_positions(n: int, m: int) -> list[dict]:
    """E_1 positions and generator chains for {m}[t]-modules listed in the proof.

    Each record has keys ``s`` (filtration index), ``chain`` (a Chain of
    strings of length n) and ``label``.
    """
    if m < 2:
        raise ValueError("generators are listed for m >= 2")
    out = []
    if n % m:
        c = (-n) % m
        i = (n + c) // m
        for lam in range(1, i):
            s = lam * m - c - 1
            ch = dps_generator("zi", m, i - lam) * Chain.string("0" + "1" * s)
            out.append({"s": s, "chain": ch, "label": f"z_{m}({i - lam})01^{s}"})
            s2 = lam * m - c
            ch2 = dps_generator("vi", m, i - lam) * Chain.string("0" + "1" * s2)
            out.append({"s": s2, "chain": ch2, "label": f"v_{m}({i - lam})01^{s2}"})
    else:
        i = n // m
        for lam in range(1, i):
            s = lam * m - 1
            ch = dps_generator("zi", m, i - lam) * Chain.string("0" + "1" * s)
            out.append({"s": s, "chain": ch, "label": f"z_{m}({i - lam})01^{s}"})
        for lam in range(0, i):
            s = lam * m
            ch = dps_generator("vi", m, i - lam) * Chain.string("0" + "1" * s)
            out.append({"s": s, "chain": ch, "label": f"v_{m}({i - lam})01^{s}"})
    for rec in out:
        if rec["chain"].length != n:  # pragma: no cover
            raise AssertionError(f"generator {rec['label']} has the wrong length")
    return out


def generator_cocycle_checks(n: int, m: int, complex_: CochainComplex | None = None) -> list[dict]:
    """Is each listed generator a cocycle of F^s/F^{s+1} reduced mod Phi_m?

    Outcomes are recorded, not asserted.
    """
    cx = complex_ if complex_ is not None else build_complex("B", n)
    red = reduce_complex_mod_phi(cx, m)
    field = cyclotomic_field(m)
    results = []
    for rec in generator_positions(n, m):
        s, chain = rec["s"], rec["chain"]
        k = chain.degree
        tail = "0" + "1" * s
        coeffs = {g: LaurentPoly.constant(field, c) for g, c in chain.terms.items()}
        image = red.apply(k, coeffs)
        leftover = {g: v for g, v in image.items() if g.endswith(tail)}
        results.append({
            "n": n, "m": m, "s": s, "degree": k, "label": rec["label"],
            "cocycle": not leftover,
            "r": k - s,
        })
    return results


# ---------------------------------------------------------------------------
# changes of coefficient ring


def reduce_complex_mod_phi(cx: CochainComplex, m: int) -> CochainComplex:
    """Entrywise q -> z reduction into K_m[t^+-1]."""
    if m < 1:
        raise ValueError("m must be >= 1")
    field = cyclotomic_field(m)
    zero = LaurentPoly.zero(field, "t")
    out = cx.map_entries(lambda p: reduce_mod_cyclotomic(p, m), f"K{m}[t]", zero)
    out.meta["mod_phi"] = m
    return out


def specialize_complex(cx: CochainComplex, q=None, t=None) -> CochainComplex:
    """Entrywise substitution of rational values for q and/or t."""
    if q is not None and t is not None:
        return cx.map_entries(lambda p: specialize(p, q, t), "Q", 0)
    var = "t" if q is not None else "q"
    zero = LaurentPoly.zero(QQ, var)
    return cx.map_entries(lambda p: specialize(p, q, t), f"Q[{var}]", zero)


def _to_q_poly(p: BivariatePoly) -> LaurentPoly:
    if p.involves("t"):
        raise ValueError("entry depends on t")
    return LaurentPoly.from_dict(QQ, {a: c for (a, _), c in p.terms.items()}, "q")


def type_a_over_q(a: int) -> CochainComplex:
    """CA*_a with entries viewed in Q[q^+-1] (they are t-free)."""
    cx = build_complex("A", a)
    return cx.map_entries(_to_q_poly, "Q[q]", LaurentPoly.zero(QQ, "q"))
