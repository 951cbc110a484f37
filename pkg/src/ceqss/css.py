"""CSS codes viewed as quantum secret sharing schemes.

A coordinate set ``J`` is authorized exactly when it carries the full secret
(``rank G0^(J) - rank G1^(J) = k0 - k1``) and its complement carries none of it
(``rank G0^(~J) = rank G1^(~J)``). The encoded state is pure, so ``Y`` is
unauthorized exactly when its complement is authorized.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .codes import LinearCode, NestedPair, dual, nested_weight
from .errors import DomainError, ResourceError
from .linalg import rank_rows

#: Largest party count :func:`classify_subsets` will sweep by default.
MAX_PARTIES = 20


class CssCode:
    """``CSS(C0, C1)``, an ``[[n, k0 - k1, delta]]_q`` code."""

    def __init__(self, pair: NestedPair, method: str = "auto"):
        if not pair.strict:
            raise DomainError("CSS code needs C1 strictly inside C0")
        self.pair = pair
        self._method = method
        self._delta: int | None = None
        self._g0 = pair.stacked_gen().data
        self._g1 = pair.C1.gen.data

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def k(self) -> int:
        return self.pair.C0.k - self.pair.C1.k

    @property
    def q(self) -> int:
        return self.pair.C0.q

    @property
    def delta(self) -> int:
        if self._delta is None:
            C0, C1 = self.pair.C0, self.pair.C1
            x = nested_weight(self.pair, self._method)
            z = nested_weight(NestedPair(dual(C1), dual(C0)), self._method)
            self._delta = min(x, z)
        return self._delta

    def __repr__(self) -> str:
        return f"CssCode([[{self.n},{self.k}]]_{self.q})"

    def rank_gap(self, J: Iterable[int]) -> int:
        """``rank G0^(J) - rank G1^(J)`` for a 1-based coordinate set."""
        cols = [j - 1 for j in J]
        if not cols:
            return 0
        q = self.q
        r0 = rank_rows(self._g0[:, cols].tolist(), len(cols), q)
        r1 = rank_rows(self._g1[:, cols].tolist(), len(cols), q) if self._g1.shape[0] else 0
        return r0 - r1


def css_new(C0: LinearCode, C1: LinearCode, method: str = "auto") -> CssCode:
    return CssCode(NestedPair(C0, C1), method)


def _normalize(J: Iterable[int], n: int) -> tuple[int, ...]:
    s = tuple(sorted(set(int(j) for j in J)))
    if s and (s[0] < 1 or s[-1] > n):
        raise DomainError(f"party set {s} not inside [1, {n}]")
    return s


def is_authorized(css: CssCode, J: Iterable[int]) -> bool:
    """Rank test for a 1-based coordinate set ``J``."""
    s = _normalize(J, css.n)
    if css.rank_gap(s) != css.k:
        return False
    rest = [i for i in range(1, css.n + 1) if i not in set(s)]
    return css.rank_gap(rest) == 0


@dataclass
class AccessReport:
    """Classification of every subset of ``[n]`` (parties are 1-based)."""

    n: int
    gamma: list[tuple[int, ...]] = field(default_factory=list)
    adversary: list[tuple[int, ...]] = field(default_factory=list)
    intermediate: list[tuple[int, ...]] = field(default_factory=list)
    t_min: int = 0
    z_max: int = 0

    def status(self, J: Iterable[int]) -> str:
        s = tuple(sorted(J))
        if s in set(self.gamma):
            return "authorized"
        if s in set(self.adversary):
            return "unauthorized"
        return "intermediate"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "t_min": self.t_min,
            "z_max": self.z_max,
            "authorized": [list(s) for s in self.gamma],
            "unauthorized": [list(s) for s in self.adversary],
            "intermediate": [list(s) for s in self.intermediate],
        }


def _expand(P: Sequence[int], groups: Sequence[Sequence[int]] | None) -> list[int]:
    if groups is None:
        return list(P)
    return [c for p in P for c in groups[p - 1]]


def classify_subsets(
    css: CssCode,
    groups: Sequence[Sequence[int]] | None = None,
    max_parties: int = MAX_PARTIES,
) -> AccessReport:
    """Classify all subsets of parties.

    ``groups[j-1]`` lists the code coordinates held by party ``j``; by default
    each party holds one coordinate.
    """
    n = css.n if groups is None else len(groups)
    if n > max_parties:
        raise ResourceError(f"2^{n} subsets exceeds the sweep limit of 2^{max_parties}")
    everyone = frozenset(range(1, n + 1))
    auth: dict[frozenset, bool] = {}
    for size in range(n + 1):
        for P in itertools.combinations(range(1, n + 1), size):
            auth[frozenset(P)] = is_authorized(css, _expand(P, groups))
    report = AccessReport(n=n)
    for P, ok in auth.items():
        key = tuple(sorted(P))
        if ok:
            report.gamma.append(key)
        elif auth[everyone - P]:
            report.adversary.append(key)
        else:
            report.intermediate.append(key)
    report.gamma.sort(key=lambda s: (len(s), s))
    report.adversary.sort(key=lambda s: (len(s), s))
    report.intermediate.sort(key=lambda s: (len(s), s))

    def all_of_size(size: int, label: list) -> bool:
        members = set(label)
        return all(P in members for P in itertools.combinations(range(1, n + 1), size))

    t_min = n
    while t_min > 0 and all_of_size(t_min - 1, report.gamma):
        t_min -= 1
    z_max = -1
    while z_max < n and all_of_size(z_max + 1, report.adversary):
        z_max += 1
    report.t_min = t_min
    report.z_max = z_max
    return report


def qss_thresholds(css: CssCode) -> tuple[int, int]:
    """Guaranteed ``(t, z) = (n - delta + 1, delta - 1)``."""
    return css.n - css.delta + 1, css.delta - 1


def css_costs(css: CssCode) -> dict[str, int]:
    """Secret size, per-party share size and ``CC_n(t)`` of the one-qudit-per-party scheme."""
    t, _ = qss_thresholds(css)
    return {"m": css.k, "w": 1, "cc_t": t}
