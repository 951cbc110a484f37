"""Dense qudit simulation of coset-state encodings and entropy-based access checks.

Register positions are 0-based and qudit 0 is the most significant digit of
the amplitude index. In a reference-entangled encoding the first ``m``
qudits hold the reference system ``R`` and the share qudits follow, so share
coordinate ``j`` (1-based) sits at register position ``m + j - 1``.

Entropies are measured in base ``q``, so one maximally mixed qudit has
entropy 1.
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .codes import _enumerate_span
from .css import CssCode
from .errors import DomainError, ResourceError
from .gf import FieldSpec
from .linalg import FqMatrix, column_submatrix, rank, row_basis, vstack

DEFAULT_MAX_DIM = 2**24
TRACE_LIMIT = 2**12
ENTROPY_TOL = 1e-6
EIGEN_CUTOFF = 1e-12


def max_dim() -> int:
    """Dense-state size guard, overridable through ``CEQSS_MAX_DIM``."""
    raw = os.environ.get("CEQSS_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"CEQSS_MAX_DIM must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError("CEQSS_MAX_DIM must be positive")
    return value


def _guard(q: int, num: int, limit: int, what: str) -> None:
    if q**num > limit:
        raise ResourceError(f"{what}: dimension {q}^{num} exceeds the limit {limit}")


class DenseState:
    """A normalized pure state of ``num_qudits`` qudits of dimension ``q``."""

    def __init__(self, q: int, num_qudits: int, amplitudes: np.ndarray):
        _guard(q, num_qudits, max_dim(), "dense state")
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != q**num_qudits:
            raise DomainError(f"expected {q**num_qudits} amplitudes, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > 1e-12:
            raise DomainError(f"state is not normalized (norm^2 = {norm})")
        amps.setflags(write=False)
        self.q = q
        self.num_qudits = num_qudits
        self.amplitudes = amps

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((self.q,) * self.num_qudits)

    def support(self) -> dict[tuple[int, ...], complex]:
        """Nonzero amplitudes keyed by basis digits."""
        idx = np.flatnonzero(np.abs(self.amplitudes) > 1e-15)
        digits = np.array(np.unravel_index(idx, (self.q,) * self.num_qudits)).T
        return {tuple(int(x) for x in d): complex(self.amplitudes[i]) for d, i in zip(digits, idx)}

    def __repr__(self) -> str:
        return f"DenseState(q={self.q}, num_qudits={self.num_qudits})"


class DensityMatrix:
    """Reduced state on ``num_qudits`` qudits; validated Hermitian, unit trace, PSD."""

    def __init__(self, q: int, num_qudits: int, entries: np.ndarray, tol: float = 1e-12):
        rho = np.asarray(entries, dtype=np.complex128)
        dim = q**num_qudits
        if rho.shape != (dim, dim):
            raise DomainError(f"expected a {dim}x{dim} matrix, got {rho.shape}")
        if not np.allclose(rho, rho.conj().T, atol=tol, rtol=0):
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > tol * max(1, dim):
            raise DomainError("density matrix does not have unit trace")
        self.q = q
        self.num_qudits = num_qudits
        self.entries = rho
        self._eig = None
        if self.eigenvalues().min() < -1e-10:
            raise DomainError("density matrix has negative eigenvalues")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        if self._eig is None:
            self._eig = np.linalg.eigvalsh(self.entries)
        return self._eig


@dataclass(frozen=True)
class CosetState:
    """Uniform superposition over ``offset + rowspace(gen)`` in ``F_q^n``."""

    offset: np.ndarray
    gen: FqMatrix

    def __post_init__(self) -> None:
        off = np.mod(np.asarray(self.offset, dtype=np.int64).reshape(-1), self.gen.field.q)
        if off.size != self.gen.cols:
            raise DomainError("offset length does not match the generator width")
        object.__setattr__(self, "offset", off)

    @property
    def field(self) -> FieldSpec:
        return self.gen.field

    @property
    def n(self) -> int:
        return self.gen.cols

    @classmethod
    def subspace(cls, gen: FqMatrix) -> CosetState:
        return cls(np.zeros(gen.cols, dtype=np.int64), gen)


@dataclass(frozen=True)
class CosetEncoder:
    """The linear map ``s -> |s H + span(noise)>`` sending ``m`` secret qudits to ``n`` share qudits."""

    secret_gen: FqMatrix
    noise_gen: FqMatrix

    @property
    def m(self) -> int:
        return self.secret_gen.rows

    @property
    def n(self) -> int:
        return self.secret_gen.cols

    @classmethod
    def from_css(cls, css: CssCode) -> CosetEncoder:
        return cls(css.pair.quotient_gen, css.pair.C1.gen)

    def encode(self, s: Sequence[int]) -> CosetState:
        off = np.asarray(s, dtype=np.int64) @ self.secret_gen.data if self.m else np.zeros(self.n, np.int64)
        return CosetState(off, self.noise_gen)

    def reference_state(self) -> CosetState:
        """``sum_s |s>_R |s H + span(noise)>`` as one coset state on ``m + n`` coordinates."""
        field = self.secret_gen.field
        m = self.m
        top = FqMatrix(np.hstack([np.eye(m, dtype=np.int64), self.secret_gen.data]), field, cols=m + self.n)
        pad = np.zeros((self.noise_gen.rows, m), dtype=np.int64)
        bottom = FqMatrix(np.hstack([pad, self.noise_gen.data]), field, cols=m + self.n)
        return CosetState.subspace(vstack([top, bottom], cols=m + self.n))


def expand(cs: CosetState) -> DenseState:
    """Amplitude vector of a coset state."""
    q, n = cs.field.q, cs.n
    _guard(q, n, max_dim(), "dense state")
    basis = row_basis(cs.gen) if cs.gen.rows else cs.gen
    amps = np.zeros(q**n, dtype=np.complex128)
    place = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    count = q**basis.rows
    value = 1.0 / np.sqrt(count)
    for chunk in _enumerate_span(basis, 0, count, max_dim()):
        words = (chunk + cs.offset) % q
        amps[words @ place] = value
    return DenseState(q, n, amps)


def entangle_reference(encoder: CosetEncoder, m: int | None = None) -> DenseState:
    """``q^{-m/2} sum_s |s>_R Enc(|s>)`` with the reference on the first ``m`` qudits."""
    if m is not None and m != encoder.m:
        raise DomainError(f"encoder takes {encoder.m} secret qudits, not {m}")
    return expand(encoder.reference_state())


def _positions(keep: Iterable[int], total: int) -> list[int]:
    pos = sorted(set(int(p) for p in keep))
    if pos and (pos[0] < 0 or pos[-1] >= total):
        raise DomainError(f"register positions must lie in [0, {total})")
    return pos


def _bipartition(state: DenseState, keep: list[int]) -> np.ndarray:
    """The ``q^|keep| x q^rest`` matrix of amplitudes."""
    rest = [p for p in range(state.num_qudits) if p not in set(keep)]
    psi = np.transpose(state.tensor(), keep + rest)
    return psi.reshape(state.q ** len(keep), state.q ** len(rest))


def partial_trace(state: DenseState, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the register positions ``keep`` (order preserved)."""
    pos = _positions(keep, state.num_qudits)
    _guard(state.q, len(pos), TRACE_LIMIT, "partial trace")
    M = _bipartition(state, pos)
    return DensityMatrix(state.q, len(pos), M @ M.conj().T)


def _spectrum_entropy(eigs: np.ndarray, q: int) -> float:
    lam = eigs[eigs > EIGEN_CUTOFF]
    return float(max(0.0, -np.sum(lam * np.log(lam)) / np.log(q)))


def entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy in base ``q``."""
    return _spectrum_entropy(rho.eigenvalues(), rho.q)


def subsystem_entropy(state: DenseState, keep: Iterable[int]) -> float:
    """Entropy of a marginal of a pure state, diagonalizing whichever side is smaller."""
    pos = _positions(keep, state.num_qudits)
    small = min(len(pos), state.num_qudits - len(pos))
    _guard(state.q, small, TRACE_LIMIT, "marginal")
    if not pos or len(pos) == state.num_qudits:
        return 0.0
    M = _bipartition(state, pos)
    gram = M @ M.conj().T if M.shape[0] <= M.shape[1] else M.conj().T @ M
    return _spectrum_entropy(np.linalg.eigvalsh(gram), state.q)


@dataclass(frozen=True)
class EntropyVerdict:
    status: str
    s_ref: float
    s_shares: float
    s_joint: float

    @property
    def authorized_residual(self) -> float:
        return abs(self.s_joint - self.s_shares + self.s_ref)

    @property
    def unauthorized_residual(self) -> float:
        return abs(self.s_joint - self.s_shares - self.s_ref)

    @property
    def residual(self) -> float:
        """Distance to the condition that fired (or the nearer one)."""
        return min(self.authorized_residual, self.unauthorized_residual)


def share_positions(X: Iterable[int], m: int) -> list[int]:
    """Register positions of 1-based share coordinates."""
    return [m + int(j) - 1 for j in X]


def classify_by_entropy(state: DenseState, X: Iterable[int], m: int, tol: float = ENTROPY_TOL) -> EntropyVerdict:
    """Classify share coordinates ``X`` via ``S(RW) = S(W) -/+ S(R)``."""
    w = share_positions(X, m)
    if any(p < m or p >= state.num_qudits for p in w):
        raise DomainError("share coordinates out of range")
    ref = list(range(m))
    s_ref = subsystem_entropy(state, ref)
    s_w = subsystem_entropy(state, w)
    s_rw = subsystem_entropy(state, ref + w)
    v = EntropyVerdict("intermediate", s_ref, s_w, s_rw)
    auth = v.authorized_residual < tol
    unauth = v.unauthorized_residual < tol
    if auth and unauth:
        raise RuntimeError("both entropy conditions hold; the reference carries no entropy")
    if auth:
        return EntropyVerdict("authorized", s_ref, s_w, s_rw)
    if unauth:
        return EntropyVerdict("unauthorized", s_ref, s_w, s_rw)
    return v


def significant_set_check(state: DenseState, L: Iterable[int], m: int, tol: float = ENTROPY_TOL) -> bool:
    """Does ``W_L`` carry at least the secret's ``m`` qudits of entropy?"""
    return subsystem_entropy(state, share_positions(L, m)) >= m - tol


def coset_entropy(cs: CosetState, A: Iterable[int]) -> float:
    """Entropy of the ``A``-marginal (1-based coordinates) of a coset state.

    Every marginal has a flat spectrum, and its rank is
    ``q^(rank G^(A) + rank G^(~A) - rank G)``.
    """
    idx = sorted(set(int(a) for a in A))
    rest = [i for i in range(1, cs.n + 1) if i not in set(idx)]
    if not idx or not rest or cs.gen.rows == 0:
        return 0.0
    total = rank(cs.gen)
    return float(rank(column_submatrix(cs.gen, idx)) + rank(column_submatrix(cs.gen, rest)) - total)
