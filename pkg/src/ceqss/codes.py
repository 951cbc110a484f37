"""Linear codes over F_q and the distance quantities the threshold formulas consume.

Two exact routes compute minimum distances:

* ``"enumerate"`` walks every codeword (cost ``q^k``), guarded by a budget;
* ``"support"`` scans coordinate supports ``W`` in increasing size and stops at
  the first one on which the shortened codes differ (cost ``2^n`` rank
  computations). A codeword of ``C0 \\ C1`` supported inside ``W`` exists
  exactly when ``(C0)_W`` strictly contains ``(C1)_W``.

``"auto"`` picks whichever is cheaper.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator

import numpy as np

from .errors import DomainError, FieldMismatchError, ResourceError
from .gf import FieldSpec
from .linalg import (
    FqMatrix,
    _check_indices,
    column_submatrix,
    complement_basis,
    null_space,
    rank,
    rank_rows,
    row_basis,
    solve_affine,
    vstack,
)

#: Default cap on ``q^k`` for codeword enumeration.
ENUMERATION_BUDGET = 2**24

_CHUNK = 1 << 16


class LinearCode:
    """An ``[n, k]_q`` code given by a full-row-rank ``k x n`` generator matrix.

    Equality is row-space equality, never matrix equality.
    """

    __slots__ = ("gen", "_canon")

    def __init__(self, gen: FqMatrix):
        if rank(gen) != gen.rows:
            raise DomainError(f"generator matrix is not full row rank ({rank(gen)} < {gen.rows})")
        self.gen = gen
        self._canon: FqMatrix | None = None

    @classmethod
    def span(cls, rows, field: FieldSpec, n: int | None = None) -> LinearCode:
        """The code spanned by ``rows`` (any rank), with a canonical RREF generator."""
        M = rows if isinstance(rows, FqMatrix) else FqMatrix.from_array(rows, field, cols=n)
        return cls(row_basis(M))

    @classmethod
    def zero(cls, n: int, field: FieldSpec) -> LinearCode:
        return cls(FqMatrix.zeros(0, n, field))

    @classmethod
    def full(cls, n: int, field: FieldSpec) -> LinearCode:
        return cls(FqMatrix.identity(n, field))

    @property
    def n(self) -> int:
        return self.gen.cols

    @property
    def k(self) -> int:
        return self.gen.rows

    @property
    def field(self) -> FieldSpec:
        return self.gen.field

    @property
    def q(self) -> int:
        return self.gen.field.q

    def canonical(self) -> FqMatrix:
        if self._canon is None:
            self._canon = row_basis(self.gen)
        return self._canon

    def __contains__(self, vector) -> bool:
        v = np.mod(np.asarray(vector, dtype=np.int64).reshape(-1), self.q)
        if v.size != self.n:
            return False
        if self.k == 0:
            return not v.any()
        return solve_affine(self.gen.T, v) is not None

    def is_subcode_of(self, other: LinearCode) -> bool:
        _check_compatible(self, other)
        if self.k == 0:
            return True
        rows = other.gen.tolist() + self.gen.tolist()
        return rank_rows(rows, self.n, self.q) == other.k

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            self.field == other.field
            and self.n == other.n
            and self.k == other.k
            and self.canonical() == other.canonical()
        )

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}]_{self.q}, gen={self.gen.tolist()})"

    def codewords(self, budget: int | None = None) -> Iterator[np.ndarray]:
        """Yield all codewords in chunks of rows, in coefficient order."""
        yield from _enumerate_span(self.gen, 0, self.q**self.k, budget)


def _check_compatible(C: LinearCode, D: LinearCode) -> None:
    if C.field != D.field:
        raise FieldMismatchError(f"codes over {C.field!r} and {D.field!r}")
    if C.n != D.n:
        raise DomainError(f"code lengths differ: {C.n} != {D.n}")


def _enumerate_span(gen: FqMatrix, start: int, stop: int, budget: int | None) -> Iterator[np.ndarray]:
    """Codewords ``c(i) = digits(i) @ gen`` for ``start <= i < stop``.

    ``digits(i)`` is the base-q expansion of ``i``, least significant digit
    paired with the *last* generator row.
    """
    q, k = gen.field.q, gen.rows
    limit = ENUMERATION_BUDGET if budget is None else budget
    if q**k > limit:
        raise ResourceError(f"enumerating q^k = {q}^{k} codewords exceeds the budget {limit}")
    if k == 0:
        if start == 0 and stop > 0:
            yield np.zeros((1, gen.cols), dtype=np.int64)
        return
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    G = gen.data
    for lo in range(start, stop, _CHUNK):
        idx = np.arange(lo, min(stop, lo + _CHUNK), dtype=np.int64)
        coeffs = (idx[:, None] // powers[None, :]) % q
        yield coeffs @ G % q


class NestedPair:
    """A pair ``C1 ⊆ C0`` together with a complement generator ``G_{C0/C1}``.

    ``quotient_gen`` stacked over ``C1.gen`` is a basis of ``C0``. When it is
    not supplied it is chosen greedily from ``C0.gen``'s rows.
    """

    __slots__ = ("C0", "C1", "quotient_gen")

    def __init__(self, C0: LinearCode, C1: LinearCode, quotient_gen: FqMatrix | None = None):
        _check_compatible(C0, C1)
        if not C1.is_subcode_of(C0):
            raise DomainError("C1 is not a subcode of C0")
        if quotient_gen is None:
            quotient_gen = complement_basis(C0.gen, C1.gen)
        stacked = vstack([quotient_gen, C1.gen], cols=C0.n)
        if quotient_gen.rows != C0.k - C1.k or rank(stacked) != C0.k:
            raise DomainError("quotient generator does not complete C1 to C0")
        if C0.k and rank_rows(C0.gen.tolist() + stacked.tolist(), C0.n, C0.q) != C0.k:
            raise DomainError("quotient generator leaves C0")
        self.C0 = C0
        self.C1 = C1
        self.quotient_gen = quotient_gen

    @property
    def strict(self) -> bool:
        return self.C1.k < self.C0.k

    @property
    def n(self) -> int:
        return self.C0.n

    def stacked_gen(self) -> FqMatrix:
        """``[G_{C0/C1}; G_{C1}]``."""
        return vstack([self.quotient_gen, self.C1.gen], cols=self.n)


def infinity(n: int) -> int:
    """Sentinel distance for empty difference sets and zero codes."""
    return n + 1


def dual(C: LinearCode) -> LinearCode:
    if C.k == 0:
        return LinearCode.full(C.n, C.field)
    return LinearCode(null_space(C.gen))


def puncture(C: LinearCode, A: Iterable[int]) -> LinearCode:
    """``C^A``: codewords restricted to the 1-based coordinates ``A``."""
    return LinearCode(row_basis(column_submatrix(C.gen, A)))


def shorten(C: LinearCode, A: Iterable[int]) -> LinearCode:
    """``C_A``: codewords vanishing off ``A``, restricted to ``A``."""
    idx = _check_indices(A, C.n)
    outside = [i for i in range(1, C.n + 1) if i not in idx]
    if C.k == 0:
        return LinearCode.zero(len(idx), C.field)
    # coefficient vectors x with x G^(outside) = 0
    if outside:
        kernel = null_space(column_submatrix(C.gen, outside).T)
    else:
        kernel = FqMatrix.identity(C.k, C.field)
    if kernel.rows == 0:
        return LinearCode.zero(len(idx), C.field)
    sub = kernel @ C.gen
    return LinearCode(row_basis(column_submatrix(sub, idx)))


def sum_code(C: LinearCode, D: LinearCode) -> LinearCode:
    _check_compatible(C, D)
    return LinearCode(row_basis(vstack([C.gen, D.gen], cols=C.n)))


def shortened_dim(C: LinearCode, W: Iterable[int]) -> int:
    """``dim C_W = k - rank G^(complement of W)``."""
    idx = set(W)
    outside = [i for i in range(1, C.n + 1) if i not in idx]
    if not outside:
        return C.k
    return C.k - rank(column_submatrix(C.gen, outside))


def _choose(method: str, q: int, k: int, n: int, budget: int | None) -> str:
    limit = ENUMERATION_BUDGET if budget is None else budget
    if method == "auto":
        if q**k <= min(limit, 4096) or q**k <= 64 * 2**n:
            return "enumerate"
        if 2**n <= limit:
            return "support"
        return "enumerate"
    if method not in ("enumerate", "support"):
        raise DomainError(f"unknown weight method {method!r}")
    if method == "support" and 2**n > limit:
        raise ResourceError(f"scanning 2^{n} supports exceeds the budget {limit}")
    return method


def weight(C: LinearCode, method: str = "auto", budget: int | None = None) -> int:
    """Minimum Hamming weight of a nonzero codeword; ``n + 1`` for the zero code."""
    if C.k == 0:
        return infinity(C.n)
    return nested_weight(NestedPair(C, LinearCode.zero(C.n, C.field)), method, budget)


def nested_weight(pair: NestedPair, method: str = "auto", budget: int | None = None) -> int:
    """``wt(C0 \\ C1)``; ``n + 1`` when ``C0 == C1``."""
    C0, C1 = pair.C0, pair.C1
    n = C0.n
    if not pair.strict:
        return infinity(n)
    how = _choose(method, C0.q, C0.k, n, budget)
    if how == "enumerate":
        # Coefficients of the stacked basis [H; G1]: indices >= q^k1 have a
        # nonzero H-part, i.e. exactly the codewords outside C1.
        best = infinity(n)
        gen = pair.stacked_gen()
        for chunk in _enumerate_span(gen, C0.q**C1.k, C0.q**C0.k, budget):
            w = int(np.count_nonzero(chunk, axis=1).min())
            best = min(best, w)
            if best == 1:
                break
        return best
    return _support_weight(C0, C1)


def _support_weight(C0: LinearCode, C1: LinearCode) -> int:
    n, q = C0.n, C0.q
    g0 = C0.gen.data
    g1 = C1.gen.data
    coords = range(n)
    for w in range(1, n + 1):
        for W in itertools.combinations(coords, w):
            outside = [i for i in coords if i not in W]
            r0 = rank_rows(g0[:, outside].tolist(), len(outside), q) if outside else 0
            r1 = rank_rows(g1[:, outside].tolist(), len(outside), q) if outside and C1.k else 0
            if C0.k - r0 > C1.k - r1:
                return w
    return infinity(n)
