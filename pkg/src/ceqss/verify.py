"""Verification suites run against a built scheme.

Each suite returns a JSON-ready dict with a ``passed`` flag and, on failure,
the first counterexample found.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .css import MAX_PARTIES, classify_subsets, is_authorized
from .ecss import split, tau, tau_oracle
from .errors import ResourceError
from .qsim import TRACE_LIMIT, CosetEncoder, classify_by_entropy, entangle_reference, max_dim
from .scheme import (
    CeQssScheme,
    bounds_report,
    concatenated_css,
    layer1_ecss,
    random_encode,
    recover_from_d,
    recover_from_t,
)

#: Cap on the number of party sets the recovery suite visits per size.
MAX_RECOVERY_SETS = 200


def _subsets(n: int, size: int, rng: np.random.Generator, cap: int) -> list[tuple[int, ...]]:
    if math.comb(n, size) <= cap:
        return list(itertools.combinations(range(1, n + 1), size))
    picks = {tuple(sorted(rng.choice(np.arange(1, n + 1), size, replace=False).tolist())) for _ in range(cap)}
    return sorted(picks)


def recovery_check(scheme: CeQssScheme, seed: int = 0, trials: int = 4) -> dict:
    """Encode random secrets and decode from ``t``-sets (both layers) and ``d``-sets (layer 1)."""
    rng = np.random.default_rng(seed)
    q = scheme.field.q
    checked = 0
    for _ in range(trials):
        S = rng.integers(0, q, size=(scheme.dims.a1, scheme.v1))
        shares = random_encode(scheme, S, rng)
        for J in _subsets(scheme.n, scheme.t, rng, MAX_RECOVERY_SETS):
            got = recover_from_t(scheme, J, shares[[j - 1 for j in J]])
            checked += 1
            if not np.array_equal(got, S):
                return {"passed": False, "checked": checked, "counterexample": {"path": "t", "parties": list(J)}}
        for D in _subsets(scheme.n, scheme.d, rng, MAX_RECOVERY_SETS):
            got = recover_from_d(scheme, D, shares[[j - 1 for j in D], : scheme.v1])
            checked += 1
            if not np.array_equal(got, S):
                return {"passed": False, "checked": checked, "counterexample": {"path": "d", "parties": list(D)}}
    layout = scheme.layout
    costs_ok = (
        layout.cost(range(1, scheme.t + 1)) == scheme.cc_t
        and layout.cost(range(1, scheme.d + 1)) == scheme.cc_d
    )
    return {"passed": costs_ok, "checked": checked, "plan_costs_match": costs_ok}


def access_check(scheme: CeQssScheme, max_parties: int = MAX_PARTIES) -> dict:
    """Classify every party subset of the concatenated code by the rank test."""
    if scheme.n > max_parties:
        raise ResourceError(f"{scheme.n} parties exceeds the access sweep limit of {max_parties}")
    css, groups = concatenated_css(scheme)
    report = classify_subsets(css, groups, max_parties)
    gamma = set(report.gamma)
    adversary = set(report.adversary)
    bad = None
    for size in range(scheme.n + 1):
        for P in itertools.combinations(range(1, scheme.n + 1), size):
            if size >= scheme.t and P not in gamma:
                bad = {"parties": list(P), "expected": "authorized"}
            elif size <= scheme.z and P not in adversary:
                bad = {"parties": list(P), "expected": "unauthorized"}
            if bad:
                break
        if bad:
            break
    out = {"passed": bad is None, "report": report.to_dict()}
    if bad:
        out["counterexample"] = bad
    return out


def simulate_check(scheme: CeQssScheme) -> dict:
    """Compare entropy and rank classification of every party subset on the dense encoding."""
    css, groups = concatenated_css(scheme)
    encoder = CosetEncoder.from_css(css)
    total = encoder.m + encoder.n
    q = scheme.field.q
    if q**total > max_dim():
        raise ResourceError(f"dense encoding needs {q}^{total} amplitudes, above the limit {max_dim()}")
    if q ** (total // 2) > TRACE_LIMIT:
        raise ResourceError("marginals of this encoding exceed the partial-trace limit")
    state = entangle_reference(encoder)
    m = encoder.m
    worst = 0.0
    rows = []
    for size in range(scheme.n + 1):
        for P in itertools.combinations(range(1, scheme.n + 1), size):
            X = [c for p in P for c in groups[p - 1]]
            verdict = classify_by_entropy(state, X, m)
            if is_authorized(css, X):
                rank_status = "authorized"
            elif is_authorized(css, [c for c in range(1, css.n + 1) if c not in set(X)]):
                rank_status = "unauthorized"
            else:
                rank_status = "intermediate"
            worst = max(worst, verdict.residual if verdict.status != "intermediate" else 0.0)
            rows.append({"parties": list(P), "entropy": verdict.status, "rank": rank_status})
            if verdict.status != rank_status:
                return {
                    "passed": False,
                    "qudits": total,
                    "counterexample": rows[-1],
                }
    return {"passed": True, "qudits": total, "subsets": len(rows), "max_residual": worst}


def tau_check(scheme: CeQssScheme, method: str = "auto") -> dict:
    """Closed-form thresholds of the layer-1 extended code against the exhaustive oracle."""
    if scheme.n > MAX_PARTIES:
        raise ResourceError(f"{scheme.n} coordinates exceeds the oracle sweep limit of {MAX_PARTIES}")
    spec = layer1_ecss(scheme)
    rows = []
    passed = True
    for u in range(spec.e + 1):
        sp = split(spec, u)
        closed = tau(spec, sp, method)
        oracle = tau_oracle(spec, sp)
        rows.append({"u": u, "tau": closed, "oracle": oracle})
        passed &= closed == oracle
    tau_none, tau_full = rows[0]["tau"], rows[-1]["tau"]
    within = tau_none <= scheme.d and tau_full <= scheme.t
    out = {
        "passed": passed and within,
        "rows": rows,
        "tau_none": tau_none,
        "tau_full": tau_full,
        "within_thresholds": within,
    }
    if not passed:
        out["counterexample"] = next(r for r in rows if r["tau"] != r["oracle"])
    return out


def bounds_check(scheme: CeQssScheme) -> dict:
    rep = bounds_report(scheme).to_dict()
    ok = all(rep[k]["satisfied"] for k in ("storage", "cc_t", "cc_d")) and rep["communication_efficient"]
    return {"passed": ok, **rep}
