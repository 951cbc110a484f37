"""Prime-field arithmetic.

Elements of F_q are plain integers in ``[0, q-1]`` everywhere inside the
package; :class:`Fe` is a thin checked wrapper for callers who want the field
carried along with the value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DomainError, FieldMismatchError


def is_prime(q: int) -> bool:
    """Trial-division primality test."""
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime ``>= n``."""
    p = max(n, 2)
    while not is_prime(p):
        p += 1
    return p


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        quot, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - quot * x1
        y0, y1 = y1, y0 - quot * y1
    return a, x0, y0


def inv_mod(a: int, q: int) -> int:
    """Inverse of ``a`` modulo the prime ``q`` by the extended Euclidean algorithm."""
    a %= q
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse in F_{q}")
    _, x, _ = _egcd(a, q)
    return x % q


@lru_cache(maxsize=None)
def inverse_table(q: int) -> tuple[int, ...]:
    """``table[a]`` is the inverse of ``a`` (entry 0 is a placeholder 0)."""
    return (0,) + tuple(inv_mod(a, q) for a in range(1, q))


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_q."""

    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or isinstance(self.q, bool):
            raise DomainError(f"field modulus must be an integer, got {self.q!r}")
        if not is_prime(self.q):
            raise DomainError(f"field modulus must be prime, got {self.q}")

    def __call__(self, value: int) -> Fe:
        return Fe(int(value) % self.q, self)

    def __repr__(self) -> str:
        return f"F{self.q}"

    def elements(self) -> list[Fe]:
        return [Fe(v, self) for v in range(self.q)]

    def inv(self, a: int) -> int:
        return inv_mod(a, self.q)


@dataclass(frozen=True)
class Fe:
    """A canonical residue ``value`` in ``field``."""

    value: int
    field: FieldSpec = field(repr=False)

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.q:
            raise DomainError(f"{self.value} is not a canonical residue mod {self.field.q}")

    def _coerce(self, other: Fe | int) -> int:
        if isinstance(other, Fe):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field!r} and {other.field!r}")
            return other.value
        return int(other) % self.field.q

    def __add__(self, other: Fe | int) -> Fe:
        return Fe((self.value + self._coerce(other)) % self.field.q, self.field)

    __radd__ = __add__

    def __sub__(self, other: Fe | int) -> Fe:
        return Fe((self.value - self._coerce(other)) % self.field.q, self.field)

    def __rsub__(self, other: Fe | int) -> Fe:
        return Fe((self._coerce(other) - self.value) % self.field.q, self.field)

    def __mul__(self, other: Fe | int) -> Fe:
        return Fe((self.value * self._coerce(other)) % self.field.q, self.field)

    __rmul__ = __mul__

    def __neg__(self) -> Fe:
        return Fe((-self.value) % self.field.q, self.field)

    def inverse(self) -> Fe:
        return Fe(inv_mod(self.value, self.field.q), self.field)

    def __truediv__(self, other: Fe | int) -> Fe:
        return self * Fe(inv_mod(self._coerce(other), self.field.q), self.field)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value


_OPS = {
    "add": lambda x, y: x + y,
    "sub": lambda x, y: x - y,
    "mul": lambda x, y: x * y,
}


def arith(a: Fe, b: Fe, op: str) -> Fe:
    """Apply ``op`` (``"add"``, ``"sub"`` or ``"mul"``) to two elements of the same field."""
    if a.field != b.field:
        raise FieldMismatchError(f"cannot combine {a.field!r} and {b.field!r}")
    try:
        fn = _OPS[op]
    except KeyError:
        raise DomainError(f"unknown operation {op!r}") from None
    return Fe(fn(a.value, b.value) % a.field.q, a.field)


def inv(a: Fe) -> Fe:
    return a.inverse()
