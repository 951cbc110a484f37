"""Vandermonde stacks for the generalized Reed-Solomon instantiation.

Row ``r`` (0-indexed) of the stack evaluates ``x^r`` at the points. Consecutive
blocks of rows generate ``A1/A2``, ``A2``, ``B2`` and ``E``; every contiguous
top block generates an MDS code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .gf import FieldSpec
from .linalg import FqMatrix


def default_points(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


@dataclass(frozen=True)
class GrsSpec:
    """Evaluation points, total row count ``b0`` and the block partition.

    ``partition`` is ``(a1 - a2, a2, b2, e)``.
    """

    field: FieldSpec
    points: tuple[int, ...]
    b0: int
    partition: tuple[int, int, int, int]

    def __post_init__(self) -> None:
        q = self.field.q
        pts = tuple(int(x) for x in self.points)
        object.__setattr__(self, "points", pts)
        n = len(pts)
        if any(not 0 < x < q for x in pts):
            raise DomainError("evaluation points must be nonzero residues mod q")
        if len(set(pts)) != n:
            raise DomainError("evaluation points must be distinct")
        if q < n + 1:
            raise DomainError(f"need q >= n + 1, got q={q}, n={n}")
        if len(self.partition) != 4 or any(p < 0 for p in self.partition):
            raise DomainError(f"invalid partition {self.partition}")
        if sum(self.partition) != self.b0:
            raise DomainError(f"partition {self.partition} does not sum to b0={self.b0}")
        if not 0 <= self.b0 <= n:
            raise DomainError(f"b0={self.b0} must lie in [0, n={n}]")

    @property
    def n(self) -> int:
        return len(self.points)


def vandermonde(spec: GrsSpec) -> FqMatrix:
    """The ``b0 x n`` matrix with rows ``(x_1^r, ..., x_n^r)``."""
    q = spec.field.q
    rows = [[pow(x, r, q) for x in spec.points] for r in range(spec.b0)]
    return FqMatrix(np.array(rows, dtype=np.int64).reshape(spec.b0, spec.n), spec.field)


def grs_stack(spec: GrsSpec) -> tuple[FqMatrix, FqMatrix, FqMatrix, FqMatrix]:
    """Split the stack into ``(G_{A1/A2}, G_{A2}, G_{B2}, G_E)``."""
    V = vandermonde(spec).data
    bounds = np.cumsum((0,) + spec.partition)
    return tuple(
        FqMatrix(V[lo:hi], spec.field, cols=spec.n) for lo, hi in zip(bounds[:-1], bounds[1:])
    )
