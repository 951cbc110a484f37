"""A three-party staircase secret sharing example over F_5.

Party ``x`` in ``{1, 2, 3}`` holds two symbols::

    layer 1:  s + x r1 + x^2 r2
    layer 2:  r2 + x r3

Any two parties recover ``s`` by downloading both layers (4 symbols); all three
recover it from layer 1 alone (3 symbols). A single party learns nothing.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .gf import inv_mod

Q = 5
POINTS = (1, 2, 3)

#: ``CC(2)``: two parties send both layers.
COST_TWO = 4
#: ``CC(3)``: three parties send layer 1 only.
COST_THREE = 3

#: ``(s, r1, r2, r3) -> ((layer1 per party), (layer2 per party))``.
GOLDEN = {
    (0, 0, 0, 0): ((0, 0, 0), (0, 0, 0)),
    (1, 0, 0, 0): ((1, 1, 1), (0, 0, 0)),
    (0, 1, 1, 1): ((2, 1, 2), (2, 3, 4)),
    (3, 1, 4, 2): ((3, 1, 2), (1, 3, 0)),
    (4, 2, 3, 1): ((4, 0, 2), (4, 0, 1)),
}


@dataclass(frozen=True)
class StaircaseShares:
    layer1: tuple[int, int, int]
    layer2: tuple[int, int, int]

    def party(self, j: int) -> tuple[int, int]:
        return self.layer1[j - 1], self.layer2[j - 1]

    def to_dict(self) -> dict:
        return {"layer1": list(self.layer1), "layer2": list(self.layer2)}


@dataclass
class Recovery:
    secret: int
    cost: int
    steps: list[tuple[str, list[str]]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "secret": self.secret,
            "cost": self.cost,
            "steps": [{"title": t, "lines": lines} for t, lines in self.steps],
        }


def _div(a: int, b: int) -> int:
    return a * inv_mod(b % Q, Q) % Q


def demo_encode(s: int, r1: int, r2: int, r3: int) -> StaircaseShares:
    layer1 = tuple((s + x * r1 + x * x * r2) % Q for x in POINTS)
    layer2 = tuple((r2 + x * r3) % Q for x in POINTS)
    return StaircaseShares(layer1, layer2)


def demo_recover_two(shares: tuple[tuple[int, int], tuple[int, int]], which: tuple[int, int]) -> Recovery:
    """Recover ``s`` from two parties' ``(layer1, layer2)`` pairs.

    Layer 2 is decoded for ``r2``, ``r2``'s contribution is removed from layer
    1, and the remaining line ``s + x r1`` is solved at ``x = 0``.
    """
    (i, j) = which
    if i == j or not {i, j} <= set(POINTS):
        raise ValueError(f"need two distinct parties from {POINTS}, got {which}")
    (a1, a2), (b1, b2) = shares
    xi, xj = POINTS[i - 1], POINTS[j - 1]
    steps = [("received", [f"party {i}: layer1={a1} layer2={a2}", f"party {j}: layer1={b1} layer2={b2}"])]

    r3 = _div(a2 - b2, xi - xj)
    r2 = (a2 - xi * r3) % Q
    steps.append(("decode layer 2", [f"r3 = {r3}", f"r2 = {r2}"]))

    yi = (a1 - xi * xi * r2) % Q
    yj = (b1 - xj * xj * r2) % Q
    steps.append(("cancel r2 from layer 1", [f"party {i}: s + {xi} r1 = {yi}", f"party {j}: s + {xj} r1 = {yj}"]))

    r1 = _div(yi - yj, xi - xj)
    s = (yi - xi * r1) % Q
    steps.append(("solve for s", [f"r1 = {r1}", f"s = {s}"]))
    return Recovery(s, COST_TWO, steps)


def demo_recover_three(layer1: tuple[int, int, int]) -> Recovery:
    """Recover ``s`` from the three layer-1 symbols by interpolating at zero."""
    coeffs = []
    for k, xk in enumerate(POINTS):
        num, den = 1, 1
        for m, xm in enumerate(POINTS):
            if m != k:
                num = num * (-xm) % Q
                den = den * (xk - xm) % Q
        coeffs.append(_div(num, den))
    s = sum(c * y for c, y in zip(coeffs, layer1)) % Q
    lines = [f"party {j}: layer1={y} weight={c}" for j, (y, c) in enumerate(zip(layer1, coeffs), start=1)]
    return Recovery(s, COST_THREE, [("interpolate layer 1 at x = 0", lines + [f"s = {s}"])])


def demo_secrecy_check() -> bool:
    """Each party's share pair is uniform over F_5^2 for every secret."""
    for j in POINTS:
        for s in range(Q):
            counts = Counter(
                demo_encode(s, *r).party(j) for r in itertools.product(range(Q), repeat=3)
            )
            if len(counts) != Q * Q or set(counts.values()) != {Q}:
                return False
    return True


def exhaustive_check() -> dict[str, bool]:
    """Recovery over every tuple and pair, plus secrecy and the golden table."""
    two = three = True
    for s, r1, r2, r3 in itertools.product(range(Q), repeat=4):
        sh = demo_encode(s, r1, r2, r3)
        for pair in itertools.combinations(POINTS, 2):
            got = demo_recover_two((sh.party(pair[0]), sh.party(pair[1])), pair).secret
            two &= got == s
        three &= demo_recover_three(sh.layer1).secret == s
    golden = all(
        (demo_encode(*k).layer1, demo_encode(*k).layer2) == v for k, v in GOLDEN.items()
    )
    return {
        "recover_two": two,
        "recover_three": three,
        "secrecy": demo_secrecy_check(),
        "golden": golden,
        "costs": COST_THREE < COST_TWO,
    }


def render(s: int, r1: int, r2: int, r3: int) -> str:
    """Share table and both recovery walkthroughs as plain text."""
    sh = demo_encode(s, r1, r2, r3)
    out = [f"secret s={s}, randomness r1={r1} r2={r2} r3={r3} over F_{Q}", ""]
    out.append("party  layer1  layer2")
    for j in POINTS:
        l1, l2 = sh.party(j)
        out.append(f"{j:>5}  {l1:>6}  {l2:>6}")
    rec2 = demo_recover_two((sh.party(1), sh.party(2)), (1, 2))
    out += ["", f"parties 1,2 (cost {rec2.cost})"]
    for title, lines in rec2.steps:
        out.append(f"  {title}:")
        out += [f"    {line}" for line in lines]
    rec3 = demo_recover_three(sh.layer1)
    out += ["", f"parties 1,2,3 (cost {rec3.cost})"]
    for title, lines in rec3.steps:
        out.append(f"  {title}:")
        out += [f"    {line}" for line in lines]
    return "\n".join(out) + "\n"
