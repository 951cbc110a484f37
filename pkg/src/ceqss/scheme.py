"""Communication-efficient QSS by concatenating an extended CSS code with a CSS code.

Codes ``B2 ⊊ B1 ⊊ B0``, ``A2 ⊆ A1`` and ``E`` are stacked into one ordered
basis of ``B0``::

    G_B0 = [G_{A1/A2}; G_A2; G_B2; G_E]      (a1 - a2, a2, b2, e rows)

A secret block ``S`` (``a1 x v1``) is placed in the staircase message matrix::

    M = [[S,   0 ],        rows 0 .. a1-a2-1
         [S,   D1],        rows a1-a2 .. a1-1     (D1 relabels R12)
         [R11, R2],        rows a1 .. a1+b2-1
         [R12, R2]]        rows a1+b2 .. b0-1

and party ``j`` receives row ``j`` of ``G_B0^T M``: ``v1`` layer-1 symbols
followed by ``v2`` layer-2 symbols.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .codes import LinearCode, NestedPair, dual, nested_weight, sum_code
from .css import CssCode
from .ecss import ExtendedCssSpec, ecss_new
from .errors import ConditionError, DomainError, IntegrityError
from .gf import FieldSpec
from .grs import GrsSpec, default_points, grs_stack
from .linalg import FqMatrix, column_submatrix, complement_basis, solve_affine, vstack

CODE_NAMES = ("B0", "B1", "B2", "A1", "A2", "E")


@dataclass(frozen=True)
class Dims:
    b0: int
    b1: int
    b2: int
    a1: int
    a2: int
    e: int


@dataclass(frozen=True)
class ConditionResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ShareLayout:
    """Where each party's symbols sit in the flattened share vector.

    Coordinates are 1-based and party-major: party ``j`` owns
    ``(j-1)(v1+v2)+1 .. j(v1+v2)``, layer 1 first.
    """

    n: int
    v1: int
    v2: int
    t: int
    d: int

    @property
    def width(self) -> int:
        return self.v1 + self.v2

    def layer1(self, j: int) -> tuple[int, ...]:
        base = (j - 1) * self.width
        return tuple(range(base + 1, base + self.v1 + 1))

    def layer2(self, j: int) -> tuple[int, ...]:
        base = (j - 1) * self.width + self.v1
        return tuple(range(base + 1, base + self.v2 + 1))

    def groups(self) -> list[tuple[int, ...]]:
        return [self.layer1(j) + self.layer2(j) for j in range(1, self.n + 1)]

    def plan(self, A: Iterable[int]) -> dict[int, int]:
        """Download counts ``h_{j,A}``: layer 1 from ``d`` parties, or both layers from ``t``."""
        parties = sorted(set(A))
        if len(parties) >= self.d:
            used, h = parties[: self.d], self.v1
        elif len(parties) >= self.t:
            used, h = parties[: self.t], self.v1 + self.v2
        else:
            raise DomainError(f"{len(parties)} parties is below the threshold t={self.t}")
        return {j: (h if j in used else 0) for j in parties}

    def cost(self, A: Iterable[int]) -> int:
        return sum(self.plan(A).values())

    def to_dict(self) -> dict:
        return {
            "parties": [
                {"party": j, "layer1": list(self.layer1(j)), "layer2": list(self.layer2(j))}
                for j in range(1, self.n + 1)
            ]
        }


@dataclass(frozen=True)
class CeQssScheme:
    field: FieldSpec
    codes: Mapping[str, LinearCode]
    gen_stack: FqMatrix
    dims: Dims
    v1: int
    v2: int
    n: int
    t: int
    d: int
    z: int
    m: int
    w: int
    cc_t: int
    cc_d: int
    weights: Mapping[str, int] = field(default_factory=dict, compare=False)

    @property
    def layout(self) -> ShareLayout:
        return ShareLayout(self.n, self.v1, self.v2, self.t, self.d)

    @property
    def storage(self) -> int:
        return self.n * self.w

    def block(self, name: str) -> FqMatrix:
        """Rows of the stacked generator: ``"A1/A2"``, ``"A2"``, ``"B2"``, ``"E"``, or sums of them."""
        dm = self.dims
        spans = {
            "A1/A2": (0, dm.a1 - dm.a2),
            "A2": (dm.a1 - dm.a2, dm.a1),
            "B2": (dm.a1, dm.a1 + dm.b2),
            "E": (dm.a1 + dm.b2, dm.b0),
            "A1": (0, dm.a1),
            "B1": (dm.a1, dm.b0),
            "A2+B1": (dm.a1 - dm.a2, dm.b0),
            "A1+B2": (0, dm.a1 + dm.b2),
            "B0": (0, dm.b0),
        }
        lo, hi = spans[name]
        return FqMatrix(self.gen_stack.data[lo:hi], self.field, cols=self.n)


@dataclass
class MessageMatrix:
    S: np.ndarray
    R11: np.ndarray
    R12: np.ndarray
    R2: np.ndarray

    @staticmethod
    def d1_from_r12(R12: np.ndarray, a2: int, v2: int) -> np.ndarray:
        """Column-major relabeling of ``R12``'s entries into ``a2 x v2``."""
        return np.asarray(R12).flatten(order="F").reshape((a2, v2), order="F")

    @staticmethod
    def r12_from_d1(D1: np.ndarray, e: int, v1: int) -> np.ndarray:
        return np.asarray(D1).flatten(order="F").reshape((e, v1), order="F")

    def D1(self, dims: Dims, v2: int) -> np.ndarray:
        return self.d1_from_r12(self.R12, dims.a2, v2)

    def assemble(self, dims: Dims, v1: int, v2: int) -> np.ndarray:
        M = np.zeros((dims.b0, v1 + v2), dtype=np.int64)
        a1, a2, b2 = dims.a1, dims.a2, dims.b2
        M[:a1, :v1] = self.S
        M[a1 : a1 + b2, :v1] = self.R11
        M[a1 + b2 :, :v1] = self.R12
        M[a1 - a2 : a1, v1:] = self.D1(dims, v2)
        M[a1:, v1:] = self.R2
        return M


def _block_shapes(scheme: CeQssScheme) -> dict[str, tuple[int, int]]:
    dm = scheme.dims
    return {
        "S": (dm.a1, scheme.v1),
        "R11": (dm.b2, scheme.v1),
        "R12": (dm.e, scheme.v1),
        "R2": (dm.b1, scheme.v2),
    }


# ---------------------------------------------------------------------------
# validation


def validate_codes(codes: Mapping[str, LinearCode]) -> Dims:
    """Check M1-M3 and return the dimensions."""
    missing = [c for c in CODE_NAMES if c not in codes]
    if missing:
        raise DomainError(f"missing codes: {missing}")
    B0, B1, B2, A1, A2, E = (codes[c] for c in CODE_NAMES)
    fields = {c.field for c in codes.values()}
    lengths = {c.n for c in codes.values()}
    if len(fields) != 1 or len(lengths) != 1:
        raise DomainError("all codes must share one field and one length")
    if not (B2.is_subcode_of(B1) and B2.k < B1.k and B1.is_subcode_of(B0) and B1.k < B0.k):
        raise ConditionError("M1", "need B2 ⊊ B1 ⊊ B0")
    if not (A2.is_subcode_of(A1) and A1.is_subcode_of(B0) and A1.k < B0.k):
        raise ConditionError("M2", "need A2 ⊆ A1 ⊊ B0")
    if A2.k == 0:
        raise ConditionError("M2", "need dim A2 > 0")
    if sum_code(B1, A1) != B0 or B1.k + A1.k != B0.k:
        raise ConditionError("M2", "need B0 = B1 + A1 with B1 ∩ A1 = {0}")
    if not E.is_subcode_of(B1) or sum_code(B2, E) != B1 or B2.k + E.k != B1.k:
        raise ConditionError("M3", "need B1 = B2 + E with B2 ∩ E = {0}")
    return Dims(B0.k, B1.k, B2.k, A1.k, A2.k, E.k)


def condition_weights(codes: Mapping[str, LinearCode], method: str = "auto") -> dict[str, int]:
    """The five nested-pair distances the thresholds depend on."""
    B0, B1, B2, A1, A2 = (codes[c] for c in ("B0", "B1", "B2", "A1", "A2"))
    A1B2 = sum_code(A1, B2)
    return {
        "a2_plus_b1_minus_b1": nested_weight(NestedPair(sum_code(A2, B1), B1), method),
        "a1_plus_b2_minus_b2": nested_weight(NestedPair(A1B2, B2), method),
        "b1_dual_minus_b0_dual": nested_weight(NestedPair(dual(B1), dual(B0)), method),
        "b0_minus_b1": nested_weight(NestedPair(B0, B1), method),
        "b2_dual_minus_a1_plus_b2_dual": nested_weight(NestedPair(dual(B2), dual(A1B2)), method),
    }


def _min_named(weights: Mapping[str, int], names: tuple[str, ...]) -> tuple[int, str]:
    name = min(names, key=lambda k: weights[k])
    return weights[name], name


_T_NAMES = ("a2_plus_b1_minus_b1", "a1_plus_b2_minus_b2", "b1_dual_minus_b0_dual")
_D_NAMES = ("b0_minus_b1", "b2_dual_minus_a1_plus_b2_dual")


def check_conditions(
    codes: Mapping[str, LinearCode], t: int, d: int, z: int, method: str = "auto"
) -> tuple[list[ConditionResult], Dims | None, dict[str, int]]:
    """Evaluate every construction condition without raising.

    Returns ``(results, dims, weights)``; ``dims`` is ``None`` when M1-M3 fail.
    """
    results: list[ConditionResult] = []
    try:
        dims = validate_codes(codes)
    except ConditionError as exc:
        return [ConditionResult(exc.condition, False, str(exc))], None, {}
    results.extend(ConditionResult(c, True) for c in ("M1", "M2", "M3"))
    n = codes["B0"].n
    ordered = 0 <= z < t < d <= n
    results.append(
        ConditionResult("thresholds", ordered, "" if ordered else f"need 0 <= z < t < d <= n, got z={z} t={t} d={d} n={n}")
    )
    weights = condition_weights(codes, method)
    wt_t, name_t = _min_named(weights, _T_NAMES)
    wt_d, name_d = _min_named(weights, _D_NAMES)
    need_t = n - wt_t + 1
    need_d = n - wt_d + 1
    results.append(ConditionResult("Eq15a", t >= need_t, f"t={t} needs >= {need_t} (binding weight {name_t}={wt_t})"))
    results.append(ConditionResult("Eq15b", d >= need_d, f"d={d} needs >= {need_d} (binding weight {name_d}={wt_d})"))
    results.append(ConditionResult("Eq15c", z <= wt_t - 1, f"z={z} needs <= {wt_t - 1} (binding weight {name_t}={wt_t})"))
    ratio_ok = d * dims.a2 < t * (dims.a2 + dims.b1 - dims.b2)
    results.append(
        ConditionResult("Eq15d", ratio_ok, f"d/t={d}/{t} must be < {dims.a2 + dims.b1 - dims.b2}/{dims.a2}")
    )
    return results, dims, weights


def build(
    field: FieldSpec,
    codes: Mapping[str, LinearCode],
    t: int,
    d: int,
    z: int,
    method: str = "auto",
) -> CeQssScheme:
    """Validate M1-M3 and the threshold conditions, then derive blocks, costs and layout."""
    if any(c.field != field for c in codes.values()):
        raise DomainError("codes are not over the given field")
    results, dims, weights = check_conditions(codes, t, d, z, method)
    failed = [r for r in results if not r.ok]
    if failed:
        raise ConditionError(failed[0].name, failed[0].detail, [r.name for r in failed])
    A1, A2, B2, E = (codes[c] for c in ("A1", "A2", "B2", "E"))
    n = codes["B0"].n
    quotient = complement_basis(A1.gen, A2.gen)
    stack = vstack([quotient, A2.gen, B2.gen, E.gen], cols=n)
    g = math.gcd(dims.a2, dims.e)
    v1, v2 = dims.a2 // g, dims.e // g
    return CeQssScheme(
        field=field,
        codes=dict(codes),
        gen_stack=stack,
        dims=dims,
        v1=v1,
        v2=v2,
        n=n,
        t=t,
        d=d,
        z=z,
        m=dims.a1 * dims.a2 // g,
        w=(dims.a2 + dims.e) // g,
        cc_t=t * (dims.a2 + dims.e) // g,
        cc_d=d * dims.a2 // g,
        weights=weights,
    )


def grs_codes(
    q: int, t: int, d: int, z: int, n: int | None = None, points: Iterable[int] | None = None
) -> tuple[FieldSpec, dict[str, LinearCode]]:
    """The Vandermonde-stack codes with ``b0=d, b1=z, b2=z-d+t, e=d-t, a1=d-z, a2=t-z``."""
    try:
        field = FieldSpec(q)
    except DomainError as exc:
        raise ConditionError("field", str(exc)) from None
    n = t + z if n is None else n
    if not (0 < z < t < d <= n and d <= t + z):
        raise ConditionError("thresholds", f"need 0 < z < t < d <= min(n, t+z), got z={z} t={t} d={d} n={n}")
    pts = default_points(n) if points is None else tuple(points)
    if len(pts) != n:
        raise DomainError(f"expected {n} evaluation points, got {len(pts)}")
    a1, a2, b2, e = d - z, t - z, z - d + t, d - t
    try:
        spec = GrsSpec(field, pts, d, (a1 - a2, a2, b2, e))
    except DomainError as exc:
        raise ConditionError("field", str(exc)) from None
    top, GA2, GB2, GE = grs_stack(spec)
    codes = {
        "B0": LinearCode(vstack([top, GA2, GB2, GE], cols=n)),
        "B1": LinearCode(vstack([GB2, GE], cols=n)),
        "B2": LinearCode(GB2),
        "A1": LinearCode(vstack([top, GA2], cols=n)),
        "A2": LinearCode(GA2),
        "E": LinearCode(GE),
    }
    return field, codes


def optimal_grs(q: int, t: int, d: int, z: int, points: Iterable[int] | None = None, method: str = "auto") -> CeQssScheme:
    """The cost-optimal ``((t, n=t+z, d; z))_q`` scheme from GRS codes."""
    field, codes = grs_codes(q, t, d, z, None, points)
    return build(field, codes, t, d, z, method)


# ---------------------------------------------------------------------------
# encoding and recovery


def _as_block(x, shape: tuple[int, int], q: int, name: str) -> np.ndarray:
    arr = np.asarray(x if x is not None else np.zeros(shape), dtype=np.int64)
    if arr.size == 0 and shape[0] * shape[1] == 0:
        return np.zeros(shape, dtype=np.int64)
    if arr.ndim == 1 and shape[1] == 1:
        arr = arr.reshape(-1, 1)
    if arr.shape != shape:
        raise DomainError(f"{name} has shape {arr.shape}, expected {shape}")
    return np.mod(arr, q)


def message_matrix(scheme: CeQssScheme, S, R11=None, R12=None, R2=None) -> MessageMatrix:
    q = scheme.field.q
    shapes = _block_shapes(scheme)
    blocks = {
        name: _as_block(x, shapes[name], q, name)
        for name, x in (("S", S), ("R11", R11), ("R12", R12), ("R2", R2))
    }
    return MessageMatrix(**blocks)


def encode_classical(scheme: CeQssScheme, S, R11=None, R12=None, R2=None) -> np.ndarray:
    """One basis term of the encoding: the ``n x (v1+v2)`` share table ``G_B0^T M``."""
    M = message_matrix(scheme, S, R11, R12, R2).assemble(scheme.dims, scheme.v1, scheme.v2)
    return scheme.gen_stack.data.T @ M % scheme.field.q


def random_encode(scheme: CeQssScheme, S, rng: np.random.Generator) -> np.ndarray:
    q = scheme.field.q
    draws = {
        name: rng.integers(0, q, size=shape)
        for name, shape in _block_shapes(scheme).items()
        if name != "S"
    }
    return encode_classical(scheme, S, **draws)


def _unique_prefix(A: FqMatrix, rhs: np.ndarray, prefix: int) -> np.ndarray:
    """Solve ``A x = rhs`` column by column and return the first ``prefix`` unknowns.

    Raises when the system is inconsistent or those unknowns are not determined.
    """
    out = np.zeros((prefix, rhs.shape[1]), dtype=np.int64)
    for c in range(rhs.shape[1]):
        sol = solve_affine(A, rhs[:, c])
        if sol is None:
            raise IntegrityError("observed symbols match no valid encoding")
        x, kernel = sol
        if kernel.rows and kernel.data[:, :prefix].any():
            raise RuntimeError("recovery is not unique; the threshold conditions must have been violated")
        out[:, c] = x[:prefix]
    return out


def _parties(scheme: CeQssScheme, P: Iterable[int], minimum: int, label: str) -> list[int]:
    parties = sorted(set(int(j) for j in P))
    if any(not 1 <= j <= scheme.n for j in parties):
        raise DomainError(f"parties must lie in [1, {scheme.n}]")
    if len(parties) < minimum:
        raise DomainError(f"need at least {label}={minimum} parties, got {len(parties)}")
    return parties


def recover_from_d(scheme: CeQssScheme, D: Iterable[int], layer1) -> np.ndarray:
    """Recover ``S`` from the layer-1 symbols of ``|D| >= d`` parties (rows in ascending party order)."""
    parties = _parties(scheme, D, scheme.d, "d")
    obs = np.mod(np.asarray(layer1, dtype=np.int64).reshape(len(parties), scheme.v1), scheme.field.q)
    A = column_submatrix(scheme.gen_stack, parties).T
    return _unique_prefix(A, obs, scheme.dims.a1)


def recover_from_t(scheme: CeQssScheme, J: Iterable[int], shares) -> np.ndarray:
    """Two-stage recovery from both layers of ``|J| >= t`` parties.

    Layer 2 is decoded for ``D1`` (hence ``R12``); the ``G_E`` term is then
    cancelled from layer 1, leaving a codeword of ``A1 + B2`` carrying ``S``.
    """
    parties = _parties(scheme, J, scheme.t, "t")
    q = scheme.field.q
    dm = scheme.dims
    obs = np.mod(np.asarray(shares, dtype=np.int64).reshape(len(parties), scheme.v1 + scheme.v2), q)
    layer1, layer2 = obs[:, : scheme.v1], obs[:, scheme.v1 :]
    A2B1 = column_submatrix(scheme.block("A2+B1"), parties).T
    D1 = _unique_prefix(A2B1, layer2, dm.a2)
    R12 = MessageMatrix.r12_from_d1(D1, dm.e, scheme.v1)
    GE = column_submatrix(scheme.block("E"), parties).data
    residual = (layer1 - GE.T @ R12) % q
    A1B2 = column_submatrix(scheme.block("A1+B2"), parties).T
    return _unique_prefix(A1B2, residual, dm.a1)


# ---------------------------------------------------------------------------
# bounds and derived codes


@dataclass(frozen=True)
class BoundCheck:
    value: int
    bound: Fraction

    @property
    def satisfied(self) -> bool:
        return self.value >= self.bound

    @property
    def tight(self) -> bool:
        return self.value == self.bound

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "bound": str(self.bound),
            "satisfied": self.satisfied,
            "tight": self.tight,
        }


@dataclass(frozen=True)
class BoundsReport:
    storage: BoundCheck
    cc_t: BoundCheck
    cc_d: BoundCheck
    efficient: bool

    def to_dict(self) -> dict:
        return {
            "storage": self.storage.to_dict(),
            "cc_t": self.cc_t.to_dict(),
            "cc_d": self.cc_d.to_dict(),
            "communication_efficient": self.efficient,
        }


def comm_bound(size: int, m: int, z: int) -> Fraction:
    """Lower bound ``|A| m / (|A| - z)`` on the download from an authorized set."""
    return Fraction(size * m, size - z)


def bounds_report(scheme: CeQssScheme) -> BoundsReport:
    s = scheme
    return BoundsReport(
        storage=BoundCheck(s.storage, Fraction(s.n * s.m, s.t - s.z)),
        cc_t=BoundCheck(s.cc_t, comm_bound(s.t, s.m, s.z)),
        cc_d=BoundCheck(s.cc_d, comm_bound(s.d, s.m, s.z)),
        efficient=s.cc_d < s.cc_t,
    )


def layer1_ecss(scheme: CeQssScheme, method: str = "auto") -> ExtendedCssSpec:
    """``ECSS(A1 + B2, B2, G_E)``, the code whose original qudits form layer 1."""
    c = scheme.codes
    return ecss_new(sum_code(c["A1"], c["B2"]), c["B2"], scheme.block("E"), method)


def concatenated_css(scheme: CeQssScheme, method: str = "auto") -> tuple[CssCode, list[tuple[int, ...]]]:
    """The whole encoding as one CSS code on ``n (v1 + v2)`` coordinates.

    Returns the code and the coordinate groups held by each party. The
    quotient generator's rows correspond to the entries of ``S`` in
    column-major order.
    """
    shapes = _block_shapes(scheme)
    q = scheme.field.q

    def unit_rows(name: str) -> list[np.ndarray]:
        rows = []
        r, c = shapes[name]
        for col in range(c):
            for row in range(r):
                blocks = {k: np.zeros(v, dtype=np.int64) for k, v in shapes.items()}
                blocks[name][row, col] = 1
                rows.append(encode_classical(scheme, **blocks).reshape(-1))
        return rows

    width = scheme.n * (scheme.v1 + scheme.v2)
    secret = unit_rows("S")
    noise = [r for name in ("R11", "R12", "R2") for r in unit_rows(name)]
    field = scheme.field
    C1 = LinearCode.span(np.array(noise, dtype=np.int64).reshape(len(noise), width) % q, field, n=width)
    C0 = LinearCode.span(np.array(secret + noise, dtype=np.int64).reshape(-1, width) % q, field, n=width)
    quotient = FqMatrix(np.array(secret, dtype=np.int64).reshape(len(secret), width), field)
    return CssCode(NestedPair(C0, C1, quotient), method), scheme.layout.groups()
