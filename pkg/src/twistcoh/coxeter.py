"""Coxeter graphs, finite-type recognition and type-B combinatorics.

Vertices of a graph are ``1..n``.  An absent edge means label 2; labels are
integers >= 3 or ``INF``.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import (
    BivariatePoly,
    q_factorial,
    qt_double_factorial,
)

INF = math.inf

__all__ = [
    "INF",
    "CoxeterGraph",
    "GraphParseError",
    "EnumerationBoundError",
    "WeightedLengthRecord",
    "parse_graph",
    "component_types",
    "is_finite_type",
    "root_orbit_is_finite",
    "parabolic_poincare_qt",
    "gamma_components",
    "type_b_bfs",
    "enumerate_weighted_poincare",
    "minimal_coset_reps",
    "word_to_element",
    "euler_characteristic_kfin",
    "path_graph",
    "type_b_graph",
    "type_d_graph",
    "exceptional_graph",
    "dihedral_graph",
    "affine_a_graph",
    "affine_b_graph",
    "affine_c_graph",
    "random_two_dimensional_graph",
]


class GraphParseError(ValueError):
    """Malformed graph text; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class EnumerationBoundError(ValueError):
    pass


@dataclass(frozen=True)
class CoxeterGraph:
    rank: int
    edges: dict = field(default_factory=dict)  # frozenset({i, j}) -> label

    def __post_init__(self):
        for pair, label in self.edges.items():
            i, j = sorted(pair)
            if not (1 <= i < j <= self.rank):
                raise ValueError(f"edge {i}-{j} outside vertex range 1..{self.rank}")
            if label != INF and (not isinstance(label, int) or label < 3):
                raise ValueError(f"edge label must be >= 3 or inf, got {label!r}")

    def label(self, i: int, j: int):
        if i == j:
            return 1
        return self.edges.get(frozenset((i, j)), 2)

    @property
    def vertices(self) -> range:
        return range(1, self.rank + 1)

    def neighbours(self, i: int) -> list[int]:
        return [j for j in self.vertices if j != i and self.label(i, j) != 2]

    def induced(self, subset: Iterable[int]) -> "CoxeterGraph":
        """Subgraph on ``subset``, relabelled to 1..k in increasing order."""
        verts = sorted(subset)
        index = {v: k + 1 for k, v in enumerate(verts)}
        edges = {}
        for pair, label in self.edges.items():
            i, j = tuple(pair)
            if i in index and j in index:
                edges[frozenset((index[i], index[j]))] = label
        return CoxeterGraph(len(verts), edges)

    def to_text(self) -> str:
        lines = [f"rank {self.rank}"]
        for pair in sorted(self.edges, key=lambda p: sorted(p)):
            i, j = sorted(pair)
            lab = self.edges[pair]
            lines.append(f"{i} {j} {'inf' if lab == INF else lab}")
        return "\n".join(lines) + "\n"

    def __hash__(self):
        return hash((self.rank, frozenset(self.edges.items())))


def parse_graph(text: str) -> CoxeterGraph:
    """Parse the ``rank n`` / ``i j L`` text format ('#' starts a comment)."""
    rank = None
    edges: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if rank is None:
            if len(parts) != 2 or parts[0] != "rank":
                raise GraphParseError("expected 'rank n' header", lineno)
            try:
                rank = int(parts[1])
            except ValueError:
                raise GraphParseError(f"bad rank {parts[1]!r}", lineno) from None
            if rank < 0:
                raise GraphParseError("rank must be nonnegative", lineno)
            continue
        if len(parts) != 3:
            raise GraphParseError("expected 'i j L'", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError("vertex ids must be integers", lineno) from None
        if not (1 <= i < j <= rank):
            raise GraphParseError(f"need 1 <= i < j <= {rank}, got {i} {j}", lineno)
        if parts[2] == "inf":
            label = INF
        else:
            try:
                label = int(parts[2])
            except ValueError:
                raise GraphParseError(f"bad label {parts[2]!r}", lineno) from None
            if label < 3:
                raise GraphParseError("labels must be >= 3 or 'inf'", lineno)
        key = frozenset((i, j))
        if key in edges:
            raise GraphParseError(f"duplicate edge {i} {j}", lineno)
        edges[key] = label
    if rank is None:
        raise GraphParseError("missing 'rank n' header", 1)
    return CoxeterGraph(rank, edges)


# ---------------------------------------------------------------------------
# finite-type recognition against the classification list


def _components(g: CoxeterGraph, verts: Sequence[int]) -> list[list[int]]:
    vs = set(verts)
    seen: set = set()
    comps = []
    for v in sorted(vs):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.neighbours(x):
                if y in vs and y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _classify_connected(g: CoxeterGraph, comp: list[int]) -> str | None:
    k = len(comp)
    if k == 1:
        return "A1"
    pairs = [
        (i, j, g.label(i, j))
        for i, j in itertools.combinations(comp, 2)
        if g.label(i, j) != 2
    ]
    if any(lab == INF for _, _, lab in pairs):
        return None
    if k == 2:
        lab = pairs[0][2]
        return {3: "A2", 4: "B2", 6: "G2"}.get(lab, f"I2({lab})")
    if len(pairs) != k - 1:  # connected with a cycle
        return None
    degree = {v: 0 for v in comp}
    for i, j, _ in pairs:
        degree[i] += 1
        degree[j] += 1
    heavy = [(i, j, lab) for i, j, lab in pairs if lab > 3]
    if len(heavy) > 1:
        return None
    branch = [v for v in comp if degree[v] >= 3]
    if not heavy:
        if not branch:
            return f"A{k}"
        if len(branch) > 1 or degree[branch[0]] > 3:
            return None
        arms = sorted(_arm_lengths(g, comp, branch[0]))
        if arms[0] == 1 and arms[1] == 1:
            return f"D{k}"
        if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
            return f"E{k}"
        return None
    if branch:
        return None
    (i, j, lab), = heavy
    ends = [v for v in comp if degree[v] == 1]
    at_end = i in ends or j in ends
    if lab == 4:
        if at_end:
            return f"B{k}"
        if k == 4:
            return "F4"
        return None
    if lab == 5 and at_end and k in (3, 4):
        return f"H{k}"
    return None


def _arm_lengths(g: CoxeterGraph, comp: list[int], centre: int) -> list[int]:
    out = []
    cs = set(comp)
    for start in g.neighbours(centre):
        if start not in cs:
            continue
        length, prev, cur = 1, centre, start
        while True:
            nxt = [y for y in g.neighbours(cur) if y in cs and y != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        out.append(length)
    return out


def component_types(g: CoxeterGraph, subset: Iterable[int] | None = None) -> list[str | None]:
    """Classification name per connected component (None for non-finite)."""
    verts = list(g.vertices) if subset is None else sorted(subset)
    return [_classify_connected(g, c) for c in _components(g, verts)]


def is_finite_type(g: CoxeterGraph, subset: Iterable[int] | None = None) -> bool:
    """True iff every component (of the induced subgraph) is a finite Coxeter type."""
    return all(name is not None for name in component_types(g, subset))


# exact arithmetic in Q(sqrt2, sqrt3, sqrt5): maps mask -> Fraction where bit k
# of the mask selects the k-th prime of (2, 3, 5) under the square root.
_PRIMES = (2, 3, 5)


def _qf_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            c = ca * cb
            both = ma & mb
            for k, p in enumerate(_PRIMES):
                if both >> k & 1:
                    c *= p
            key = ma ^ mb
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _two_cos(label) -> dict:
    """2 cos(pi/label) in Q(sqrt2, sqrt3, sqrt5)."""
    if label == INF:
        return {0: Fraction(2)}
    table = {
        2: {},
        3: {0: Fraction(1)},
        4: {1: Fraction(1)},
        5: {0: Fraction(1, 2), 4: Fraction(1, 2)},
        6: {2: Fraction(1)},
    }
    if label not in table:
        raise ValueError("root-orbit check supports labels 2..6 and inf")
    return table[label]


def root_orbit_is_finite(g: CoxeterGraph, cap: int = 2000) -> bool:
    """Enumerate the W-orbit of the simple roots in the reflection representation.

    W is finite iff its root system is finite; the search stops (reporting
    infinite) once ``cap`` roots have been found.
    """
    n = g.rank
    # bilinear form: 2B(a_i, a_j) = -2cos(pi/m_ij), 2B(a_i, a_i) = 2
    two_b = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                two_b[i][j] = {0: Fraction(2)}
            else:
                two_b[i][j] = {k: -v for k, v in _two_cos(g.label(i + 1, j + 1)).items()}

    def key(vec):
        return tuple(tuple(sorted(c.items())) for c in vec)

    def reflect(i, vec):
        coef: dict = {}
        for j in range(n):
            if vec[j]:
                for k, v in _qf_mul(two_b[i][j], vec[j]).items():
                    coef[k] = coef.get(k, 0) + v
        coef = {k: v for k, v in coef.items() if v}
        if not coef:
            return vec
        out = list(vec)
        new = dict(out[i])
        for k, v in coef.items():
            new[k] = new.get(k, 0) - v
        out[i] = {k: v for k, v in new.items() if v}
        return out

    simple = []
    for i in range(n):
        vec = [{} for _ in range(n)]
        vec[i] = {0: Fraction(1)}
        simple.append(vec)
    seen = {key(v) for v in simple}
    queue = deque(simple)
    while queue:
        vec = queue.popleft()
        for i in range(n):
            w = reflect(i, vec)
            kw = key(w)
            if kw not in seen:
                seen.add(kw)
                if len(seen) > cap:
                    return False
                queue.append(w)
    return True


# ---------------------------------------------------------------------------
# parabolic Poincare polynomials for the path diagrams A_n / B_n


def gamma_components(gamma: Iterable[int]) -> list[list[int]]:
    """Maximal runs of consecutive integers in gamma (components on the path graph)."""
    out: list[list[int]] = []
    for v in sorted(set(gamma)):
        if out and out[-1][-1] == v - 1:
            out[-1].append(v)
        else:
            out.append([v])
    return out


def parabolic_poincare_qt(n: int, gamma: Iterable[int], family: str = "B") -> BivariatePoly:
    """W_S(q,t) for S inside the A_n or B_n diagram, node n the special one."""
    family = family.upper()
    if family not in ("A", "B"):
        raise ValueError("family must be 'A' or 'B'")
    gamma = list(gamma)
    if any(not 1 <= v <= n for v in gamma):
        raise ValueError(f"S must be a subset of 1..{n}")
    out = BivariatePoly.constant(1)
    for comp in gamma_components(gamma):
        m = len(comp)
        if family == "B" and comp[-1] == n:
            out = out * qt_double_factorial(m)
        else:
            out = out * BivariatePoly.from_univariate(q_factorial(m + 1), "q")
    return out


# ---------------------------------------------------------------------------
# brute force over the hyperoctahedral group W(B_n)
#
# Elements are signed permutations in one-line notation (tuples).  Right
# multiplication by s_i (i < n) swaps positions i, i+1; s_n negates position n.


@dataclass(frozen=True)
class WeightedLengthRecord:
    element: tuple
    length: int
    special_count: int


def _apply(w: tuple, i: int, n: int) -> tuple:
    if i < n:
        lst = list(w)
        lst[i - 1], lst[i] = lst[i], lst[i - 1]
        return tuple(lst)
    lst = list(w)
    lst[n - 1] = -lst[n - 1]
    return tuple(lst)


def word_to_element(word: Sequence[int], n: int) -> tuple:
    """Evaluate a word s_{i1} s_{i2} ... as a signed permutation."""
    w = tuple(range(1, n + 1))
    for i in word:
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} outside 1..{n}")
        w = _apply(w, i, n)
    return w


def _check_bound(n: int, bound: int):
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > bound:
        raise EnumerationBoundError(f"n={n} exceeds the enumeration bound {bound}")


def type_b_bfs(n: int, bound: int = 7) -> dict[tuple, WeightedLengthRecord]:
    """Breadth-first search of the Cayley graph of W(B_n) from the identity.

    ``length`` is the BFS distance and ``special_count`` counts uses of s_n
    along the BFS tree path.
    """
    _check_bound(n, bound)
    e = tuple(range(1, n + 1))
    records = {e: WeightedLengthRecord(e, 0, 0)}
    queue = deque([e])
    while queue:
        w = queue.popleft()
        rec = records[w]
        for i in range(1, n + 1):
            v = _apply(w, i, n)
            if v not in records:
                records[v] = WeightedLengthRecord(
                    v, rec.length + 1, rec.special_count + (i == n)
                )
                queue.append(v)
    return records


def random_geodesic_special_count(
    records: dict[tuple, WeightedLengthRecord], w: tuple, rng: random.Random
) -> int:
    """Count s_n along a random shortest path from w back to the identity."""
    n = len(w)
    count = 0
    while records[w].length:
        down = [
            i for i in range(1, n + 1) if records[_apply(w, i, n)].length < records[w].length
        ]
        i = rng.choice(down)
        count += i == n
        w = _apply(w, i, n)
    return count


def enumerate_weighted_poincare(n: int, bound: int = 7) -> BivariatePoly:
    """Sum of q^(l(w) - n(w)) t^n(w) over W(B_n), by brute force."""
    terms: dict = {}
    for rec in type_b_bfs(n, bound).values():
        key = (rec.length - rec.special_count, rec.special_count)
        terms[key] = terms.get(key, 0) + 1
    return BivariatePoly(terms)


def minimal_coset_reps(n: int, bound: int = 7):
    """Words p_{i_r} ... p_{i_1} (i_1 < ... < i_r), p_i = s_i s_{i+1} ... s_n.

    Returns ``(reps, generating_function)`` where reps is a list of
    ``(word, length, special_count)`` using the closed-form length
    sum_j (n + 1 - i_j) and special count r.
    """
    _check_bound(n, bound)
    reps = []
    terms: dict = {}
    for r in range(n + 1):
        for idx in itertools.combinations(range(1, n + 1), r):
            word: list[int] = []
            for i in reversed(idx):  # p_{i_r} first
                word.extend(range(i, n + 1))
            length = sum(n + 1 - i for i in idx)
            reps.append((tuple(word), length, r))
            key = (length - r, r)
            terms[key] = terms.get(key, 0) + 1
    return reps, BivariatePoly(terms)


# ---------------------------------------------------------------------------
# Euler characteristic of the finite-parabolic complex


def euler_characteristic_kfin(g: CoxeterGraph) -> int:
    """Alternating count sum_{J subset S, W_J finite} (-1)^|J|, with J = empty included."""
    total = 0
    verts = list(g.vertices)
    for r in range(len(verts) + 1):
        for J in itertools.combinations(verts, r):
            if is_finite_type(g, J):
                total += (-1) ** r
    return total


# ---------------------------------------------------------------------------
# diagram factories


def _graph(rank: int, edges: Iterable[tuple[int, int, object]]) -> CoxeterGraph:
    return CoxeterGraph(rank, {frozenset((i, j)): lab for i, j, lab in edges})


def path_graph(n: int) -> CoxeterGraph:
    """A_n."""
    return _graph(n, [(i, i + 1, 3) for i in range(1, n)])


def type_b_graph(n: int) -> CoxeterGraph:
    """B_n with the label-4 edge between nodes n-1 and n."""
    edges = [(i, i + 1, 3) for i in range(1, n - 1)]
    if n >= 2:
        edges.append((n - 1, n, 4))
    return _graph(n, edges)


def type_d_graph(n: int) -> CoxeterGraph:
    if n < 4:
        raise ValueError("D_n needs n >= 4")
    edges = [(i, i + 1, 3) for i in range(1, n - 1)] + [(n - 2, n, 3)]
    return _graph(n, edges)


def exceptional_graph(name: str) -> CoxeterGraph:
    """E6, E7, E8, F4, H3, H4."""
    if name in ("E6", "E7", "E8"):
        k = int(name[1])
        # chain 1-2-...-(k-1) with node k hanging off node 3
        edges = [(i, i + 1, 3) for i in range(1, k - 1)] + [(3, k, 3)]
        return _graph(k, edges)
    if name == "F4":
        return _graph(4, [(1, 2, 3), (2, 3, 4), (3, 4, 3)])
    if name in ("H3", "H4"):
        k = int(name[1])
        return _graph(k, [(1, 2, 5)] + [(i, i + 1, 3) for i in range(2, k)])
    raise ValueError(f"unknown exceptional type {name!r}")


def dihedral_graph(m) -> CoxeterGraph:
    return _graph(2, [(1, 2, m)]) if m != 2 else CoxeterGraph(2, {})


def affine_a_graph(n: int) -> CoxeterGraph:
    """Affine A~_n: an (n+1)-cycle (n >= 2), or the inf-edge for n = 1."""
    if n == 1:
        return dihedral_graph(INF)
    edges = [(i, i + 1, 3) for i in range(1, n + 1)] + [(1, n + 1, 3)]
    return _graph(n + 1, edges)


def affine_c_graph(n: int) -> CoxeterGraph:
    """Affine C~_n: path on n+1 nodes with both end edges labelled 4 (n >= 2)."""
    if n == 1:
        return dihedral_graph(INF)
    edges = [(i, i + 1, 3) for i in range(2, n)]
    edges += [(1, 2, 4), (n, n + 1, 4)]
    return _graph(n + 1, edges)


def affine_b_graph(n: int) -> CoxeterGraph:
    """Affine B~_n (n >= 3): fork {1, 2} - 3 - ... - n, label 4 on n - (n+1)."""
    if n == 2:
        return affine_c_graph(2)
    if n < 2:
        raise ValueError("B~_n needs n >= 2")
    edges = [(1, 3, 3), (2, 3, 3)] + [(i, i + 1, 3) for i in range(3, n)]
    edges.append((n, n + 1, 4))
    return _graph(n + 1, edges)


def random_two_dimensional_graph(
    n: int, rng: random.Random, labels: Sequence = (2, 3, 4, 5, 6, INF), max_tries: int = 10000
) -> CoxeterGraph:
    """Random rank-n graph in which every 3-subset generates an infinite group."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for _ in range(max_tries):
        edges = {}
        for i, j in pairs:
            lab = rng.choice(labels)
            if lab != 2:
                edges[frozenset((i, j))] = lab
        g = CoxeterGraph(n, edges)
        if all(not is_finite_type(g, J) for J in itertools.combinations(g.vertices, 3)):
            return g
    raise RuntimeError("could not sample a two-dimensional graph")
