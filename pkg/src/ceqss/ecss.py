"""Extended CSS codes and the recovery threshold under prior access to extension qudits.

``ECSS(F0, F1, G_E)`` is the CSS code on ``n + e`` coordinates with generators

    G_C0 = [[G_F0, 0], [G_E, I_e]],    G_C1 = [[G_F1, 0], [G_E, I_e]].

Coordinates ``1..n`` are the original qudits and ``n+1..n+e`` the extension
qudits; extension coordinate ``n + i`` corresponds to row ``i`` of ``G_E``.
"""

from __future__ import annotations

import itertools
import warnings
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .codes import LinearCode, NestedPair, dual, nested_weight, sum_code
from .css import CssCode, is_authorized
from .errors import ConditionError, DomainError
from .gf import FieldSpec
from .linalg import FqMatrix, hstack, rank, rank_rows, vstack


@dataclass(frozen=True)
class ExtendedCssSpec:
    F0: LinearCode
    F1: LinearCode
    GE: FqMatrix
    big: CssCode

    @property
    def n(self) -> int:
        return self.F0.n

    @property
    def e(self) -> int:
        return self.GE.rows


@dataclass(frozen=True)
class ExtensionSplit:
    """Rows of ``G_E`` the combiner already holds (``U``) and those it lacks (``V``).

    ``accessible`` lists the 0-based ``G_E`` rows forming ``G_U``.
    """

    u: int
    GU: FqMatrix
    GV: FqMatrix
    accessible: tuple[int, ...]


def _block_gen(G: FqMatrix, GE: FqMatrix) -> FqMatrix:
    field = G.field
    e = GE.rows
    top = hstack([G, FqMatrix.zeros(G.rows, e, field)])
    bottom = hstack([GE, FqMatrix.identity(e, field)])
    return vstack([top, bottom], cols=G.cols + e)


def ecss_new(F0: LinearCode, F1: LinearCode, GE: FqMatrix, method: str = "auto") -> ExtendedCssSpec:
    """Validate N1/N2 and build the big CSS code.

    ``GE`` may be rank deficient; ``e`` counts its rows.
    """
    if F0.field != F1.field or GE.field != F0.field:
        raise DomainError("F0, F1 and G_E must share one field")
    if F0.n != F1.n or GE.cols != F0.n:
        raise DomainError("F0, F1 and G_E must have the same length")
    if not (F1.is_subcode_of(F0) and F1.k < F0.k):
        raise ConditionError("N1", "F1 must be a proper subcode of F0")
    if GE.rows and rank(vstack([F0.gen, GE])) != F0.k + rank(GE):
        raise ConditionError("N2", "F0 and the row space of G_E intersect nontrivially")
    C0 = LinearCode(_block_gen(F0.gen, GE))
    C1 = LinearCode(_block_gen(F1.gen, GE))
    quotient = NestedPair(F0, F1).quotient_gen
    q_ext = hstack([quotient, FqMatrix.zeros(quotient.rows, GE.rows, F0.field)])
    big = CssCode(NestedPair(C0, C1, q_ext), method)
    return ExtendedCssSpec(F0, F1, GE, big)


def split(spec: ExtendedCssSpec, u: int, accessible: Sequence[int] | None = None) -> ExtensionSplit:
    """Partition the rows of ``G_E``; by default the first ``u`` rows are accessible."""
    e = spec.e
    rows = tuple(range(u)) if accessible is None else tuple(sorted(set(accessible)))
    if len(rows) != u or not 0 <= u <= e or any(not 0 <= r < e for r in rows):
        raise DomainError(f"invalid split u={u}, rows={rows} for e={e}")
    rest = [r for r in range(e) if r not in rows]
    data = spec.GE.data
    n = spec.n
    GU = FqMatrix(data[list(rows)].reshape(u, n), spec.GE.field)
    GV = FqMatrix(data[rest].reshape(e - u, n), spec.GE.field)
    return ExtensionSplit(u, GU, GV, rows)


def _clamp(value: int, n: int) -> int:
    if value < 0 or value > n:
        warnings.warn(f"threshold {value} outside [0, {n}] clamped", RuntimeWarning, stacklevel=3)
    return min(max(value, 0), n)


def tau(spec: ExtendedCssSpec, sp: ExtensionSplit, method: str = "auto") -> int:
    """Closed-form threshold of original qudits given prior access to ``U``.

    ``n - min{wt((F0+V) \\ (F1+V)), wt((F1+U)^⊥ \\ (F0+U)^⊥)} + 1``.
    """
    field = spec.F0.field
    V = LinearCode.span(sp.GV, field)
    U = LinearCode.span(sp.GU, field)
    recover = nested_weight(NestedPair(sum_code(spec.F0, V), sum_code(spec.F1, V)), method)
    disentangle = nested_weight(
        NestedPair(dual(sum_code(spec.F1, U)), dual(sum_code(spec.F0, U))), method
    )
    n = spec.n
    return _clamp(n - min(recover, disentangle) + 1, n)


def tau_full(spec: ExtendedCssSpec, method: str = "auto") -> int:
    return tau(spec, split(spec, spec.e), method)


def tau_none(spec: ExtendedCssSpec, method: str = "auto") -> int:
    return tau(spec, split(spec, 0), method)


def omega_member(spec: ExtendedCssSpec, sp: ExtensionSplit, J: Sequence[int]) -> bool:
    """Is ``J ∪ {accessible extension coordinates}`` authorized in the big code?"""
    ext = [spec.n + 1 + r for r in sp.accessible]
    return is_authorized(spec.big, list(J) + ext)


def tau_oracle(spec: ExtendedCssSpec, sp: ExtensionSplit) -> int:
    """Smallest ``tau`` such that every ``J`` with ``|J| = tau`` lies in Omega_u (exhaustive)."""
    n = spec.n
    for t in range(n + 1):
        if all(omega_member(spec, sp, J) for J in itertools.combinations(range(1, n + 1), t)):
            return t
    return n + 1


def random_spec(rng: np.random.Generator, q: int, n: int, e: int, method: str = "auto") -> ExtendedCssSpec:
    """A random extended code satisfying N1/N2 with ``e`` (possibly dependent) extension rows."""
    field = FieldSpec(q)
    while True:
        f0 = int(rng.integers(1, n + 1))
        f1 = int(rng.integers(0, f0))
        e_rank = int(rng.integers(0, min(e, n - f0) + 1)) if e else 0
        B = rng.integers(0, q, size=(f0 + e_rank, n))
        if rank_rows(B.tolist(), n, q) < f0 + e_rank:
            continue
        mix1 = rng.integers(0, q, size=(f1, f0))
        G1 = mix1 @ B[:f0] % q
        if rank_rows(G1.tolist(), n, q) < f1:
            continue
        F0 = LinearCode(FqMatrix(B[:f0], field))
        F1 = LinearCode(FqMatrix(G1.reshape(f1, n), field))
        if e_rank:
            GE = FqMatrix.from_array(rng.integers(0, q, size=(e, e_rank)) @ B[f0:], field)
        else:
            GE = FqMatrix.zeros(e, n, field)
        return ecss_new(F0, F1, GE, method)
