"""Random instance generators and hypothesis strategies shared by the tests."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from ceqss.codes import LinearCode
from ceqss.gf import FieldSpec
from ceqss.linalg import FqMatrix, rank_rows

PRIMES = (2, 3, 5)


def random_full_rank(rng: np.random.Generator, q: int, k: int, n: int) -> np.ndarray:
    while True:
        M = rng.integers(0, q, size=(k, n))
        if rank_rows(M.tolist(), n, q) == k:
            return M


def random_code(rng: np.random.Generator, field: FieldSpec, n: int, k: int | None = None) -> LinearCode:
    k = int(rng.integers(0, n + 1)) if k is None else k
    return LinearCode(FqMatrix(random_full_rank(rng, field.q, k, n).reshape(k, n), field))


def random_nested(rng: np.random.Generator, field: FieldSpec, n: int, strict: bool = True):
    """``(C0, C1)`` with ``C1`` spanned by random combinations of ``C0``'s rows."""
    k0 = int(rng.integers(1 if strict else 0, n + 1))
    k1 = int(rng.integers(0, k0 if strict else k0 + 1))
    G0 = random_full_rank(rng, field.q, k0, n)
    while True:
        mix = rng.integers(0, field.q, size=(k1, k0))
        G1 = (mix @ G0 % field.q).reshape(k1, n)
        if rank_rows(G1.tolist(), n, field.q) == k1:
            break
    return LinearCode(FqMatrix(G0, field)), LinearCode(FqMatrix(G1, field))


@st.composite
def matrices(draw, max_rows: int = 5, max_cols: int = 6, primes=PRIMES):
    q = draw(st.sampled_from(primes))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    data = draw(st.lists(st.integers(0, q - 1), min_size=r * c, max_size=r * c))
    return FqMatrix(np.array(data, dtype=np.int64).reshape(r, c), FieldSpec(q))


@st.composite
def codes(draw, max_n: int = 6, primes=PRIMES):
    M = draw(matrices(max_rows=max_n, max_cols=max_n, primes=primes))
    return LinearCode.span(M, M.field)


@st.composite
def nested_pairs(draw, max_n: int = 6, primes=PRIMES, strict: bool = True):
    seed = draw(st.integers(0, 2**32 - 1))
    q = draw(st.sampled_from(primes))
    n = draw(st.integers(1, max_n))
    return random_nested(np.random.default_rng(seed), FieldSpec(q), n, strict)
