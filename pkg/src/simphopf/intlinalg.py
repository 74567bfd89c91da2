"""Exact integer linear algebra on sparse matrices.

Matrices are stored row-wise as ``{col: value}`` dicts with no zero entries.
Entries are Python ints, so there is no overflow and no rounding anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class IntegerMatrix:
    nrows: int
    ncols: int
    rows: list = field(default_factory=list)

    def __post_init__(self):
        if not self.rows:
            self.rows = [dict() for _ in range(self.nrows)]
        if len(self.rows) != self.nrows:
            raise ValueError("row count does not match nrows")

    @classmethod
    def from_dense(cls, dense):
        dense = [list(r) for r in dense]
        ncols = len(dense[0]) if dense else 0
        rows = [{j: int(v) for j, v in enumerate(r) if v} for r in dense]
        return cls(len(dense), ncols, rows or [])

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def __setitem__(self, key, value):
        i, j = key
        if value:
            self.rows[i][j] = value
        else:
            self.rows[i].pop(j, None)

    def __getitem__(self, key):
        i, j = key
        return self.rows[i].get(j, 0)

    def matvec(self, x):
        return [sum(v * x[j] for j, v in r.items()) for r in self.rows]

    def transpose(self):
        t = IntegerMatrix(self.ncols, self.nrows)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                t.rows[j][i] = v
        return t


def _xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _add_row(rows, colsets, dst, src, factor):
    """rows[dst] += factor * rows[src], keeping the column index in sync."""
    if not factor:
        return
    rd = rows[dst]
    for j, v in rows[src].items():
        nv = rd.get(j, 0) + factor * v
        if nv:
            if j not in rd:
                colsets[j].add(dst)
            rd[j] = nv
        else:
            del rd[j]
            colsets[j].discard(dst)


def _column_sets(rows, ncols):
    colsets = [set() for _ in range(ncols)]
    for i, r in enumerate(rows):
        for j in r:
            colsets[j].add(i)
    return colsets


def _eliminate_units(rows, ncols, rhs=None):
    """Pivot on +-1 entries until none remain.

    Returns ``(pivots, colsets)`` where ``pivots`` is a list of
    ``(row, col)``.  Every pivot column is cleared from every other row
    (Gauss-Jordan), so each pivot row expresses its pivot variable in terms
    of non-pivot columns only.  Row operations are unimodular, hence the
    invariant factors of the matrix are preserved.
    """
    colsets = _column_sets(rows, ncols)
    pivots = []
    used_rows = set()
    # Candidate rows are visited shortest-first with deterministic tie-breaks.
    while True:
        best = None
        for i, r in enumerate(rows):
            if i in used_rows or not r:
                continue
            for j in sorted(r):
                if abs(r[j]) == 1:
                    cost = (len(r) - 1) * (len(colsets[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                    break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, i, j = best
        piv = rows[i][j]
        for k in sorted(colsets[j] - {i}):
            factor = -rows[k][j] * piv  # piv is its own inverse
            _add_row(rows, colsets, k, i, factor)
            if rhs is not None:
                rhs[k] += factor * rhs[i]
        used_rows.add(i)
        pivots.append((i, j))
    return pivots, colsets


def _dense_snf_diagonal(mat):
    """Invariant factors of a small dense integer matrix (nonzero ones only)."""
    a = [row[:] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # Pick the smallest nonzero entry in the trailing block as pivot.
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    for i in range(t, m):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        done = False
            if done:
                # Divisibility condition: pivot must divide the whole block.
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                for j in range(t, n):
                    a[t][j] += a[bad][j]
                continue
            # A smaller remainder appeared; move it to the pivot slot.
            best = None
            for i in range(t, m):
                if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best][t])):
                    best = i
            a[t], a[best] = a[best], a[t]
            bestc = None
            for j in range(t, n):
                if a[t][j] and (bestc is None or abs(a[t][j]) < abs(a[t][bestc])):
                    bestc = j
            for row in a:
                row[t], row[bestc] = row[bestc], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _residual_block(rows, used_rows):
    live_rows = [i for i, r in enumerate(rows) if i not in used_rows and r]
    live_cols = sorted({j for i in live_rows for j in rows[i]})
    return live_rows, live_cols


def smith_invariants(matrix: IntegerMatrix):
    """Nonzero invariant factors of ``matrix`` in ascending order.

    Unit pivots are peeled off sparsely; whatever is left (typically empty for
    simplicial boundary matrices) goes through a dense Smith normal form.
    """
    rows = [dict(r) for r in matrix.rows]
    pivots, _ = _eliminate_units(rows, matrix.ncols)
    used = {i for i, _ in pivots}
    # Pivot rows may still carry entries in non-pivot columns; clearing them
    # by column operations does not touch any other row, so they contribute
    # exactly one invariant factor 1 each.
    live_rows, live_cols = _residual_block(rows, used)
    block = [[rows[i].get(j, 0) for j in live_cols] for i in live_rows]
    rest = _dense_snf_diagonal(block) if block else []
    return sorted([1] * len(pivots) + rest)


def rank(matrix: IntegerMatrix) -> int:
    return len(smith_invariants(matrix))


def hermite_normal_form(dense):
    """Row-style Hermite normal form of a dense integer matrix.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ A == H``; ``H`` is in
    row echelon form with positive pivots and entries above each pivot
    reduced into ``[0, pivot)``.
    """
    a = [list(map(int, r)) for r in dense]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r >= m:
            break
        # gcd-combine rows r.. in column c into row r
        for i in range(r + 1, m):
            if a[i][c] == 0:
                continue
            g, x, y = _xgcd(a[r][c], a[i][c])
            p, q = a[r][c] // g, a[i][c] // g
            ar, ai = a[r], a[i]
            a[r] = [x * s + y * t for s, t in zip(ar, ai)]
            a[i] = [-q * s + p * t for s, t in zip(ar, ai)]
            ur, ui = u[r], u[i]
            u[r] = [x * s + y * t for s, t in zip(ur, ui)]
            u[i] = [-q * s + p * t for s, t in zip(ur, ui)]
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-v for v in a[r]]
            u[r] = [-v for v in u[r]]
        piv = a[r][c]
        for i in range(r):
            q = a[i][c] // piv
            if q:
                a[i] = [s - q * t for s, t in zip(a[i], a[r])]
                u[i] = [s - q * t for s, t in zip(u[i], u[r])]
        r += 1
    return a, u


def _solve_dense(block, rhs):
    """Integer solution of a small dense system via HNF of the transpose.

    With ``H = U @ A^T`` in row HNF, ``A @ U^T = H^T`` is lower echelon; the
    system ``H^T y = b`` is solved by forward substitution and ``x = U^T y``.
    Returns None when no integer solution exists.
    """
    m = len(block)
    n = len(block[0]) if m else 0
    at = [[block[i][j] for i in range(m)] for j in range(n)]
    h, u = hermite_normal_form(at)
    # h is n x m; rows of h are columns of the lower echelon form
    y = [0] * n
    resid = list(rhs)
    row_of_pivot = []
    for k in range(n):
        piv_col = next((c for c, v in enumerate(h[k]) if v), None)
        if piv_col is None:
            break
        row_of_pivot.append((k, piv_col))
    for k, pc in row_of_pivot:
        if resid[pc] % h[k][pc]:
            return None
        y[k] = resid[pc] // h[k][pc]
        for i in range(m):
            resid[i] -= h[k][i] * y[k]
    if any(resid):
        return None
    return [sum(u[k][j] * y[k] for k in range(n)) for j in range(n)]


def solve_integer(matrix: IntegerMatrix, rhs):
    """Return an integer vector ``x`` with ``matrix @ x == rhs`` or None.

    Deterministic: pivots follow a fixed order and free variables are set to
    zero.  Sparse unit elimination handles the bulk, the residual (if any) is
    solved with a Hermite normal form.
    """
    rows = [dict(r) for r in matrix.rows]
    b = list(rhs)
    pivots, _ = _eliminate_units(rows, matrix.ncols, b)
    used = {i for i, _ in pivots}
    live_rows, live_cols = _residual_block(rows, used)
    x = [0] * matrix.ncols
    # rows with no entries must have zero right-hand side
    for i, r in enumerate(rows):
        if i not in used and not r and b[i]:
            return None
    if live_rows:
        block = [[rows[i].get(j, 0) for j in live_cols] for i in live_rows]
        sol = _solve_dense(block, [b[i] for i in live_rows])
        if sol is None:
            return None
        for j, v in zip(live_cols, sol):
            x[j] = v
    for i, j in pivots:
        r = rows[i]
        piv = r[j]
        acc = b[i] - sum(v * x[c] for c, v in r.items() if c != j)
        x[j] = acc * piv
    return x
