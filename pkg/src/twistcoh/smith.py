"""Smith normal form over a one-variable Laurent polynomial ring F[x^+-1].

F is ``QQ`` or a cyclotomic field.  The ring is Euclidean with size
``span = top exponent - bottom exponent`` and its units are the monomials,
so the usual pivot-and-reduce scheme works directly on Laurent entries.

Matrices are handled as sparse rows internally; transforms are kept as
sparse rows (row operations) and sparse columns (column operations).
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import LaurentPoly, xgcd

__all__ = ["SmithResult", "smith_normal_form", "matmul", "identity", "check_reconstruction"]


@dataclass
class SmithResult:
    """``P * M * Q == D`` with D diagonal, ``diagonal[i] | diagonal[i+1]``.

    ``diagonal`` holds the unit-normalized nonzero diagonal entries (units
    appear as 1).  ``P`` and ``Q`` are dense lists of lists, or None when
    transforms were not requested.
    """

    diagonal: list
    rank: int
    shape: tuple[int, int]
    P: list | None = None
    Q: list | None = None

    @property
    def invariant_factors(self) -> list:
        """The nonunit part of the diagonal."""
        return [d for d in self.diagonal if not d.is_unit()]


def _add_scaled(target: dict, source: dict, f) -> None:
    """target += f * source (sparse vectors)."""
    for k, x in source.items():
        v = target.get(k)
        v = f * x if v is None else v + f * x
        if v:
            target[k] = v
        else:
            target.pop(k, None)


def smith_normal_form(M: list, field=None, var: str = "t", transforms: bool = True) -> SmithResult:
    """Smith normal form of a matrix of LaurentPoly entries.

    Pivot choice: nonzero entry of minimal span, ties broken by the
    lexicographically smallest position.  Entries in the pivot's row and
    column are reduced by Euclidean division; a nonzero remainder becomes
    the new pivot (its span is strictly smaller).  The divisibility chain is
    enforced afterwards on the diagonal by 2x2 unimodular gcd/lcm moves.
    """
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    if field is None:
        for row in M:
            for x in row:
                field, var = x.field, x.var
                break
            if field is not None:
                break
    if field is None:
        # all-empty or all-zero matrix without a ring hint
        raise ValueError("cannot infer the coefficient ring of an empty matrix")
    one = LaurentPoly.one(field, var)

    rows = [{c: x for c, x in enumerate(row) if x} for row in M]
    for row in rows:
        for x in row.values():
            if x.field is not field or x.var != var:
                raise TypeError("matrix entries live in different rings")
    P = [{i: one} for i in range(nrows)] if transforms else None
    Qc = [{j: one} for j in range(ncols)] if transforms else None

    def row_add(dst, src, f):
        _add_scaled(rows[dst], rows[src], f)
        if transforms:
            _add_scaled(P[dst], P[src], f)

    def col_add(dst, src, f, live_rows):
        # column dst += f * column src; column src is supported on live_rows
        for r in live_rows:
            x = rows[r].get(src)
            if x is not None:
                v = rows[r].get(dst)
                v = f * x if v is None else v + f * x
                if v:
                    rows[r][dst] = v
                else:
                    rows[r].pop(dst, None)
        if transforms:
            _add_scaled(Qc[dst], Qc[src], f)

    active_rows = set(r for r in range(nrows) if rows[r])
    pivots = []  # (row, col, entry)

    while active_rows:
        best = None
        for r in sorted(active_rows):
            for c, x in rows[r].items():
                key = (x.span(), r, c)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, pr, pc = best
        while True:
            piv = rows[pr][pc]
            moved = False
            for r in sorted(active_rows):
                if r == pr:
                    continue
                x = rows[r].get(pc)
                if x is None:
                    continue
                quo, rem = divmod(x, piv)
                if quo:
                    row_add(r, pr, -quo)
                if rem:
                    pr = r
                    moved = True
                    break
            if moved:
                continue
            # column pc is now supported on row pr only
            for c in sorted(rows[pr]):
                if c == pc:
                    continue
                x = rows[pr].get(c)
                if x is None:
                    continue
                quo, rem = divmod(x, piv)
                if quo:
                    col_add(c, pc, -quo, (pr,))
                if rem:
                    pc = c
                    moved = True
                    break
            if not moved:
                break
        pivots.append((pr, pc, rows[pr][pc]))
        active_rows.discard(pr)
        for r in list(active_rows):
            if not rows[r]:
                active_rows.discard(r)

    rank = len(pivots)
    diag = [p[2] for p in pivots]
    # gcd/lcm sweep on the diagonal
    # P/Q rows and columns are tracked by pivot index
    prow = [P[p[0]] for p in pivots] if transforms else None
    qcol = [Qc[p[1]] for p in pivots] if transforms else None
    for i in range(rank):
        for j in range(i + 1, rank):
            a, b = diag[i], diag[j]
            if a.divides(b):
                continue
            g, s, u = xgcd(a, b)
            bg, ag = b.exact_div(g), a.exact_div(g)
            if transforms:
                pi, pj = prow[i], prow[j]
                new_i = {}
                _add_scaled(new_i, pi, s)
                _add_scaled(new_i, pj, u)
                new_j = {}
                _add_scaled(new_j, pi, -bg)
                _add_scaled(new_j, pj, ag)
                prow[i], prow[j] = new_i, new_j
                qi, qj = qcol[i], qcol[j]
                new_qi = {}
                _add_scaled(new_qi, qi, one)
                _add_scaled(new_qi, qj, one)
                new_qj = {}
                _add_scaled(new_qj, qi, -(u * bg))
                _add_scaled(new_qj, qj, s * ag)
                qcol[i], qcol[j] = new_qi, new_qj
            diag[i], diag[j] = g, ag * b
    normalized = []
    for i, d in enumerate(diag):
        norm, unit = d.monic_part()
        normalized.append(norm)
        if transforms:
            inv = unit ** -1
            prow[i] = {k: v * inv for k, v in prow[i].items()}

    result = SmithResult(normalized, rank, (nrows, ncols))
    if transforms:
        used_r = {p[0] for p in pivots}
        used_c = {p[1] for p in pivots}
        row_order = prow + [P[r] for r in range(nrows) if r not in used_r]
        col_order = qcol + [Qc[c] for c in range(ncols) if c not in used_c]
        zero = LaurentPoly.zero(field, var)
        result.P = [[vec.get(k, zero) for k in range(nrows)] for vec in row_order]
        result.Q = [[col_order[j].get(i, zero) for j in range(ncols)] for i in range(ncols)]
    return result


def identity(size: int, field, var: str = "t") -> list:
    one, zero = LaurentPoly.one(field, var), LaurentPoly.zero(field, var)
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def matmul(A: list, B: list, zero) -> list:
    """Product of dense matrices, skipping zero entries."""
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if inner else 0
    b_rows = [[(j, x) for j, x in enumerate(row) if x] for row in B]
    out = []
    for row in A:
        acc = [zero] * cols
        for k, x in enumerate(row):
            if x:
                for j, y in b_rows[k]:
                    acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def _det_is_unit(mat: list, field, var: str) -> bool:
    """Square matrix invertible over F[x^+-1]: its Smith diagonal is all units."""
    if not mat:
        return True
    res = smith_normal_form(mat, field, var, transforms=False)
    return res.rank == len(mat) and not res.invariant_factors


def check_reconstruction(M: list, res: SmithResult, check_unimodular: bool = False) -> bool:
    """Verify P*M*Q is the diagonal matrix (up to the unit-normalization of the entries)."""
    if res.P is None or res.Q is None:
        raise ValueError("result carries no transforms")
    nrows, ncols = res.shape
    if nrows == 0 or ncols == 0:
        return res.rank == 0
    field = var = None
    for row in res.P:
        for x in row:
            field, var = x.field, x.var
            break
        break
    zero = LaurentPoly.zero(field, var)
    D = matmul(matmul(res.P, M, zero), res.Q, zero)
    for i in range(nrows):
        for j in range(ncols):
            x = D[i][j]
            if i == j and i < res.rank:
                if x != res.diagonal[i]:
                    return False
            elif x:
                return False
    for i in range(res.rank - 1):
        if not res.diagonal[i].divides(res.diagonal[i + 1]):
            return False
    if check_unimodular:
        return _det_is_unit(res.P, field, var) and _det_is_unit(res.Q, field, var)
    return True
