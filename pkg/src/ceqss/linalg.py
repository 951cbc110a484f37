"""Dense matrix algebra over prime fields.

Matrices are stored as read-only ``int64`` numpy arrays with canonical entries.
Gaussian elimination runs on plain Python lists: the matrices in this package
are tiny (a handful of rows), where per-call numpy overhead dominates.

Coordinate sets such as the ``P`` in ``M^(P)`` are 1-based, matching
``[n] = {1, ..., n}``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .errors import DomainError, FieldMismatchError
from .gf import FieldSpec, inverse_table


class FqMatrix:
    """An immutable ``rows x cols`` matrix over ``field``."""

    __slots__ = ("_data", "field")

    def __init__(self, data, field: FieldSpec, cols: int | None = None):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0 and cols is not None:
            arr = arr.reshape(0, cols)
        elif arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise DomainError(f"matrix data must be two-dimensional, got shape {arr.shape}")
        if cols is not None and arr.shape[1] != cols:
            raise DomainError(f"expected {cols} columns, got {arr.shape[1]}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise DomainError(f"matrix entries must lie in [0, {field.q - 1}]")
        arr.setflags(write=False)
        self._data = arr
        self.field = field

    @classmethod
    def from_array(cls, arr, field: FieldSpec, cols: int | None = None) -> FqMatrix:
        """Build from arbitrary integers, reducing them modulo q."""
        a = np.array(arr, dtype=np.int64)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, cols if cols is not None else 0)
        return cls(np.mod(a, field.q), field, cols=cols)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec) -> FqMatrix:
        return cls(np.zeros((rows, cols), dtype=np.int64), field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> FqMatrix:
        return cls(np.eye(n, dtype=np.int64), field)

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    @property
    def T(self) -> FqMatrix:
        return FqMatrix(self._data.T, self.field)

    def tolist(self) -> list[list[int]]:
        return self._data.tolist()

    def row(self, i: int) -> np.ndarray:
        return self._data[i]

    def __matmul__(self, other):
        if isinstance(other, FqMatrix):
            if other.field != self.field:
                raise FieldMismatchError("matrix fields differ")
            return FqMatrix(self._data @ other._data % self.field.q, self.field)
        return np.asarray(self._data @ np.asarray(other, dtype=np.int64) % self.field.q)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FqMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self._data, other._data))
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.shape, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"FqMatrix({self.tolist()}, {self.field!r})"


def _check_same_field(*mats: FqMatrix) -> FieldSpec:
    field = mats[0].field
    for m in mats[1:]:
        if m.field != field:
            raise FieldMismatchError(f"cannot combine {field!r} and {m.field!r}")
    return field


def vstack(mats: Sequence[FqMatrix], cols: int | None = None) -> FqMatrix:
    """Stack matrices vertically; ``cols`` fixes the width when every block is empty."""
    if not mats:
        raise DomainError("vstack needs at least one matrix")
    field = _check_same_field(*mats)
    width = mats[0].cols if cols is None else cols
    for m in mats:
        if m.cols != width:
            raise DomainError(f"column mismatch in vstack: {m.cols} != {width}")
    total = sum(m.rows for m in mats)
    if total == 0 or width == 0:
        return FqMatrix.zeros(total, width, field)
    return FqMatrix(np.vstack([m.data for m in mats]), field)


def hstack(mats: Sequence[FqMatrix]) -> FqMatrix:
    field = _check_same_field(*mats)
    return FqMatrix(np.hstack([m.data for m in mats]), field)


def _rref_lists(a: list[list[int]], ncols: int, q: int, stop_col: int | None = None):
    """In-place reduced row echelon form; returns ``(a, pivot_columns)``.

    Only columns ``< stop_col`` are used as pivots (for augmented systems).
    """
    inv = inverse_table(q)
    nrows = len(a)
    limit = ncols if stop_col is None else stop_col
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        pr = a[r]
        f = inv[pr[c]]
        if f != 1:
            pr = a[r] = [(x * f) % q for x in pr]
        for i in range(nrows):
            if i != r:
                ri = a[i]
                g = ri[c]
                if g:
                    a[i] = [(x - g * y) % q for x, y in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(M: FqMatrix) -> tuple[FqMatrix, int, tuple[int, ...]]:
    """Reduced row-echelon form.

    Returns ``(R, rank, pivots)`` where ``R`` has the same shape as ``M`` and
    ``pivots`` are the 1-based pivot columns in increasing order.
    """
    a, piv = _rref_lists(M.tolist(), M.cols, M.field.q)
    R = FqMatrix(np.array(a, dtype=np.int64).reshape(M.rows, M.cols), M.field)
    return R, len(piv), tuple(c + 1 for c in piv)


def rank(M: FqMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    _, piv = _rref_lists(M.tolist(), M.cols, M.field.q)
    return len(piv)


def rank_rows(rows: list[list[int]], ncols: int, q: int) -> int:
    """Rank of a list-of-rows matrix; the fast path used by the subset sweeps."""
    if not rows or ncols == 0:
        return 0
    _, piv = _rref_lists([list(r) for r in rows], ncols, q)
    return len(piv)


def row_basis(M: FqMatrix) -> FqMatrix:
    """The nonzero rows of ``rref(M)``: a canonical basis of the row space."""
    R, r, _ = rref(M)
    return FqMatrix(R.data[:r], M.field, cols=M.cols)


def _check_indices(P: Iterable[int], n: int) -> list[int]:
    idx = sorted(set(int(i) for i in P))
    for i in idx:
        if not 1 <= i <= n:
            raise DomainError(f"coordinate {i} outside [1, {n}]")
    return idx


def column_submatrix(M: FqMatrix, P: Iterable[int]) -> FqMatrix:
    """``M^(P)``: the columns of ``M`` indexed by the 1-based set ``P``, in ascending order."""
    idx = _check_indices(P, M.cols)
    return FqMatrix(M.data[:, [i - 1 for i in idx]].reshape(M.rows, len(idx)), M.field)


def null_space(M: FqMatrix) -> FqMatrix:
    """Canonical basis (in RREF) of ``{x : M x^T = 0}``."""
    q = M.field.q
    n = M.cols
    if M.rows == 0:
        return FqMatrix.identity(n, M.field)
    a, piv = _rref_lists(M.tolist(), n, q)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, pc in enumerate(piv):
            v[pc] = (-a[r][f]) % q
        basis.append(v)
    if not basis:
        return FqMatrix.zeros(0, n, M.field)
    return row_basis(FqMatrix(basis, M.field))


def complement_basis(G0: FqMatrix, G1: FqMatrix) -> FqMatrix:
    """Rows of ``G0`` completing a basis of ``rowspace(G1)`` to one of ``rowspace(G0)``.

    Greedy: ``G0``'s rows are scanned in order and kept whenever they raise the
    rank of the accumulated stack. Stacking the result over ``G1`` spans
    ``rowspace(G0)``.
    """
    field = _check_same_field(G0, G1)
    if G0.cols != G1.cols:
        raise DomainError("complement_basis: column counts differ")
    q = field.q
    n = G0.cols
    r0 = rank(G0)
    basis, piv = _rref_lists(G1.tolist(), n, q)
    basis = basis[: len(piv)]
    if rank_rows(basis + G0.tolist(), n, q) != r0:
        raise DomainError("rowspace(G1) is not contained in rowspace(G0)")
    chosen = []
    current = len(basis)
    for row in G0.tolist():
        if current == r0:
            break
        trial = basis + [row]
        if rank_rows(trial, n, q) > current:
            basis = trial
            chosen.append(row)
            current += 1
    return FqMatrix(chosen, field, cols=n) if chosen else FqMatrix.zeros(0, n, field)


def solve_affine(A: FqMatrix, b) -> tuple[np.ndarray, FqMatrix] | None:
    """Solve ``A x^T = b``.

    Returns ``(x, K)`` with ``x`` one particular solution and the rows of ``K``
    a basis of the kernel of ``A``, or ``None`` when the system is inconsistent.
    """
    q = A.field.q
    bvec = np.mod(np.asarray(b, dtype=np.int64).reshape(-1), q)
    if bvec.size != A.rows:
        raise DomainError(f"right-hand side has length {bvec.size}, expected {A.rows}")
    n = A.cols
    aug = [row + [int(v)] for row, v in zip(A.tolist(), bvec.tolist())]
    a, piv = _rref_lists(aug, n + 1, q, stop_col=n)
    for r in range(len(piv), len(a)):
        if a[r][n]:
            return None
    x = np.zeros(n, dtype=np.int64)
    for r, pc in enumerate(piv):
        x[pc] = a[r][n]
    return x, null_space(A)
