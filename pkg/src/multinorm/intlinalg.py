"""Exact integer linear algebra.

Two representations are used:

* dense matrices: list of row lists of Python ints (arbitrary precision);
* sparse matrices: a list of columns, each column a dict ``{row: value}``
  with no explicit zeros.

The two workhorses are :class:`ColumnReduction`, a sparse unimodular
column elimination that yields integer kernels (with a certified left
inverse of the kernel basis) and exact linear solves, and
:func:`smith_normal_form`, a dense Smith normal form with unimodular
transforms on both sides.  Kernels produced here are saturated sublattices
by construction, which downstream code relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InternalError

Vector = Sequence[int]
DenseMatrix = Sequence[Sequence[int]]
SparseCol = dict


def dense_to_cols(rows: DenseMatrix) -> list[SparseCol]:
    """Columns-of-dicts view of a dense row-major matrix."""
    if not rows:
        return []
    ncols = len(rows[0])
    cols = [dict() for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                cols[j][i] = v
    return cols


def cols_to_dense(cols: Sequence[SparseCol], nrows: int) -> list[list[int]]:
    out = [[0] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            out[i][j] = v
    return out


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: DenseMatrix, b: DenseMatrix) -> list[list[int]]:
    """Dense product, skipping zero entries (inputs are often sparse)."""
    nb = len(b[0]) if b else 0
    out = [[0] * nb for _ in range(len(a))]
    for i, arow in enumerate(a):
        orow = out[i]
        for k, v in enumerate(arow):
            if v:
                brow = b[k]
                for j, w in enumerate(brow):
                    if w:
                        orow[j] += v * w
    return out


def mat_vec(a: DenseMatrix, x: Vector) -> list[int]:
    return [sum(v * x[j] for j, v in enumerate(row) if v) for row in a]


def mat_eq(a: DenseMatrix, b: DenseMatrix) -> bool:
    return [list(r) for r in a] == [list(r) for r in b]


def transpose(a: DenseMatrix) -> list[list[int]]:
    return [list(col) for col in zip(*a)] if a else []


class ColumnReduction:
    """Unimodular column elimination of an integer matrix.

    Given ``A`` as sparse columns, performs column operations ``A @ T``
    (T unimodular, tracked together with ``T^{-1}``) so that every
    processed row contains at most one pivot among the surviving columns.
    Columns reduced to zero span the integer kernel of ``A``; because the
    transform is unimodular that span is the full (saturated) kernel
    lattice.
    """

    def __init__(self, nrows: int, cols: Sequence[SparseCol], track_inverse: bool = True):
        self.nrows = nrows
        self.ncols = len(cols)
        self.cols = [dict(c) for c in cols]
        self.transform = [{j: 1} for j in range(self.ncols)]
        self.inv_rows = [{j: 1} for j in range(self.ncols)] if track_inverse else None
        # row -> set of active column indices with a nonzero entry there
        self._row_index: dict[int, set[int]] = {}
        for j, col in enumerate(self.cols):
            for i in col:
                self._row_index.setdefault(i, set()).add(j)
        self._active = set(range(self.ncols))
        self.pivots: list[tuple[int, int, int]] = []  # (row, col, value)
        self._pivot_by_row: dict[int, int] = {}
        self._reduce()

    # -- elementary ops (kept consistent across cols / transform / inverse)

    def _axpy(self, dst: int, src: int, q: int) -> None:
        """col[dst] -= q * col[src]; mirrored on the transforms."""
        if not q:
            return
        col_d, col_s = self.cols[dst], self.cols[src]
        index = self._row_index
        for i, v in col_s.items():
            w = col_d.get(i, 0) - q * v
            if w:
                if i not in col_d:
                    index.setdefault(i, set()).add(dst)
                col_d[i] = w
            elif i in col_d:
                del col_d[i]
                index[i].discard(dst)
        t_d, t_s = self.transform[dst], self.transform[src]
        for k, v in t_s.items():
            w = t_d.get(k, 0) - q * v
            if w:
                t_d[k] = w
            elif k in t_d:
                del t_d[k]
        if self.inv_rows is not None:
            # (T E)^{-1} = E^{-1} T^{-1}: row[src] += q * row[dst]
            r_s, r_d = self.inv_rows[src], self.inv_rows[dst]
            for k, v in r_d.items():
                w = r_s.get(k, 0) + q * v
                if w:
                    r_s[k] = w
                elif k in r_s:
                    del r_s[k]

    def _negate(self, j: int) -> None:
        self.cols[j] = {i: -v for i, v in self.cols[j].items()}
        self.transform[j] = {k: -v for k, v in self.transform[j].items()}
        if self.inv_rows is not None:
            self.inv_rows[j] = {k: -v for k, v in self.inv_rows[j].items()}

    # -- main loop

    def _reduce(self) -> None:
        for row in range(self.nrows):
            if not self._active:
                break
            cands = self._row_index.get(row)
            if not cands:
                continue
            cands = cands & self._active
            if not cands:
                continue
            while len(cands) > 1:
                # prefer unit pivots, then sparse columns; deterministic
                piv = min(cands, key=lambda j: (abs(self.cols[j][row]) != 1,
                                                abs(self.cols[j][row]),
                                                len(self.cols[j]), j))
                pval = self.cols[piv][row]
                for j in sorted(cands):
                    if j == piv:
                        continue
                    q = self.cols[j][row] // pval
                    self._axpy(j, piv, q)
                cands = self._row_index.get(row, set()) & self._active
            if cands:
                (piv,) = cands
                if self.cols[piv][row] < 0:
                    self._negate(piv)
                self._active.discard(piv)
                self.pivots.append((row, piv, self.cols[piv][row]))
                self._pivot_by_row[row] = piv

    # -- results

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def kernel_indices(self) -> list[int]:
        idx = sorted(self._active)
        for j in idx:
            if self.cols[j]:
                raise InternalError("active column not reduced to zero")
        return idx

    def kernel_columns(self) -> list[SparseCol]:
        """Basis of ker(A) as columns of the transform (saturated lattice)."""
        return [dict(self.transform[j]) for j in self.kernel_indices()]

    def kernel_left_inverse(self) -> list[SparseCol]:
        """Rows L with L @ K = identity for K = kernel_columns()."""
        if self.inv_rows is None:
            raise InternalError("inverse tracking was disabled")
        return [dict(self.inv_rows[j]) for j in self.kernel_indices()]

    def solve(self, target) -> list[int] | None:
        """Integer solution x of A x = target, or None.

        ``target`` is a dense vector or a sparse dict over rows.
        """
        b = dict(target) if isinstance(target, dict) else {
            i: v for i, v in enumerate(target) if v}
        y = [0] * self.ncols
        for row, piv, pval in self.pivots:
            v = b.get(row, 0)
            if not v:
                continue
            q, r = divmod(v, pval)
            if r:
                return None
            y[piv] = q
            for i, w in self.cols[piv].items():
                nv = b.get(i, 0) - q * w
                if nv:
                    b[i] = nv
                elif i in b:
                    del b[i]
        if b:
            return None
        x = [0] * self.ncols
        for j, c in enumerate(y):
            if c:
                for k, v in self.transform[j].items():
                    x[k] += c * v
        return x


def kernel_basis(rows: DenseMatrix) -> list[list[int]]:
    """Dense convenience wrapper: columns spanning ker(rows)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    red = ColumnReduction(nrows, dense_to_cols(rows), track_inverse=False)
    cols = red.kernel_columns()
    return [[c.get(i, 0) for c in cols] for i in range(ncols)]


def solve_int(rows: DenseMatrix, b: Vector) -> list[int] | None:
    nrows = len(rows)
    red = ColumnReduction(nrows, dense_to_cols(rows), track_inverse=False)
    return red.solve(list(b))


@dataclass
class SNF:
    """S @ A @ T = diag(d); all four transforms unimodular."""

    diag: list[int]
    left: list[list[int]]
    left_inv: list[list[int]]
    right: list[list[int]]
    right_inv: list[list[int]]


def smith_normal_form(rows: DenseMatrix) -> SNF:
    """Smith normal form with transforms, for modest dense matrices.

    Invariant factors come out nonnegative with d1 | d2 | ... ; zero
    factors trail.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    S = identity_matrix(nr)
    Si = identity_matrix(nr)
    T = identity_matrix(nc)
    Ti = identity_matrix(nc)

    def row_op(i, j, q):  # row i -= q * row j ; S likewise; Si col j += q * col i
        if not q:
            return
        mi, mj = m[i], m[j]
        for k in range(nc):
            if mj[k]:
                mi[k] -= q * mj[k]
        si, sj = S[i], S[j]
        for k in range(nr):
            if sj[k]:
                si[k] -= q * sj[k]
        for k in range(nr):
            if Si[k][i]:
                Si[k][j] += q * Si[k][i]

    def col_op(i, j, q):  # col i -= q * col j
        if not q:
            return
        for r in range(nr):
            if m[r][j]:
                m[r][i] -= q * m[r][j]
        for r in range(nc):
            if T[r][j]:
                T[r][i] -= q * T[r][j]
        ti, tj = Ti[i], Ti[j]
        for k in range(nc):
            if ti[k]:
                tj[k] += q * ti[k]

    def row_swap(i, j):
        m[i], m[j] = m[j], m[i]
        S[i], S[j] = S[j], S[i]
        for row in Si:
            row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in T:
            row[i], row[j] = row[j], row[i]
        Ti[i], Ti[j] = Ti[j], Ti[i]

    def row_neg(i):
        m[i] = [-v for v in m[i]]
        S[i] = [-v for v in S[i]]
        for row in Si:
            row[i] = -row[i]

    def clear(s):
        """Diagonalize at (s, s): empty the cross row/col beyond s."""
        while True:
            # move the smallest nonzero of the cross onto the diagonal
            best = None
            for i in range(s, nr):
                v = m[i][s]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, s)
            for j in range(s + 1, nc):
                v = m[s][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), s, j)
            if best is None:
                return
            _, bi, bj = best
            if bi != s:
                row_swap(s, bi)
            elif bj != s:
                col_swap(s, bj)
            if m[s][s] < 0:
                row_neg(s)
            done = True
            for i in range(s + 1, nr):
                if m[i][s]:
                    row_op(i, s, m[i][s] // m[s][s])
                    if m[i][s]:
                        done = False
            for j in range(s + 1, nc):
                if m[s][j]:
                    col_op(j, s, m[s][j] // m[s][s])
                    if m[s][j]:
                        done = False
            if done:
                return

    n = min(nr, nc)
    for s in range(n):
        # bring some nonzero of the trailing block into the cross at s
        found = False
        for i in range(s, nr):
            row = m[i]
            for j in range(s, nc):
                if row[j]:
                    if i != s:
                        row_swap(s, i)
                    if j != s and not m[s][s]:
                        col_swap(s, j)
                    found = True
                    break
            if found:
                break
        if not found:
            break
        clear(s)

    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            a, b = m[i][i], m[i + 1][i + 1]
            if not a and not b:
                continue
            if not a:  # push zero factors to the end
                row_swap(i, i + 1)
                col_swap(i, i + 1)
                changed = True
                continue
            if b % a == 0:
                continue
            row_op(i, i + 1, -1)  # row i += row i+1, then re-diagonalize
            clear(i)
            if m[i + 1][i + 1] < 0:
                row_neg(i + 1)
            changed = True
    diag = [m[i][i] for i in range(n)]
    if any(d < 0 for d in diag):
        raise InternalError("negative invariant factor")
    return SNF(diag=diag, left=S, left_inv=Si, right=T, right_inv=Ti)


def invariant_factors(rows: DenseMatrix) -> tuple[int, ...]:
    """Nontrivial invariant factors (>= 2) of an integer matrix."""
    d = smith_normal_form(rows).diag
    return tuple(v for v in d if v not in (0, 1))


def nonzero_diag(rows: DenseMatrix) -> list[int]:
    return [v for v in smith_normal_form(rows).diag if v]


def sparse_matvec(cols: Sequence[SparseCol], x: Vector, nrows: int) -> list[int]:
    out = [0] * nrows
    for j, c in enumerate(x):
        if c:
            for i, v in cols[j].items():
                out[i] += c * v
    return out


def dot_sparse(row: SparseCol, col_vec: Vector) -> int:
    return sum(v * col_vec[k] for k, v in row.items())
