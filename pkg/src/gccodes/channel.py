"""Seedable deletion/insertion channels with explicit edit plans."""

from __future__ import annotations

import random
from dataclasses import dataclass

KINDS = ("deletions", "insertions")
SCOPES = ("whole", "systematic")


@dataclass(frozen=True)
class EditPlan:
    kind: str  # "deletions" | "insertions"
    positions: tuple[int, ...]  # 1-indexed, strictly increasing
    bits: tuple[str, ...] = ()  # inserted bit per position (insertions only)
    scope: str = "whole"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.scope not in SCOPES:
            raise ValueError(f"scope must be one of {SCOPES}")
        if any(a >= b for a, b in zip(self.positions, self.positions[1:])):
            raise ValueError("positions must be strictly increasing")
        if self.kind == "insertions" and len(self.bits) != len(self.positions):
            raise ValueError("insertions need one bit per position")


def apply_edits(x: str, plan: EditPlan) -> str:
    """Delete the listed positions, or insert the given bits before them."""
    n = len(x)
    if plan.kind == "deletions":
        if plan.positions and not (1 <= plan.positions[0] and plan.positions[-1] <= n):
            raise ValueError(f"deletion positions out of bounds for length {n}")
        out = []
        prev = 0
        for p in plan.positions:
            out.append(x[prev : p - 1])
            prev = p
        out.append(x[prev:])
        return "".join(out)
    if plan.positions and not (1 <= plan.positions[0] and plan.positions[-1] <= n + 1):
        raise ValueError(f"insertion positions out of bounds for length {n}")
    out = []
    prev = 0
    for p, b in zip(plan.positions, plan.bits):
        out.append(x[prev : p - 1])
        out.append(b)
        prev = p - 1
    out.append(x[prev:])
    return "".join(out)


def sample_plan(
    length: int,
    d: int,
    kind: str = "deletions",
    scope: str = "whole",
    seed: int = 0,
    systematic_len: int | None = None,
) -> EditPlan:
    """d distinct edit positions, uniform without replacement; insertions
    also draw fair-coin bit values. `systematic_len` bounds the positions
    when scope is "systematic". Deterministic in the seed."""
    rng = random.Random(seed)
    return _sample_plan(rng, length, d, kind, scope, systematic_len)


def _sample_plan(
    rng: random.Random,
    length: int,
    d: int,
    kind: str,
    scope: str,
    systematic_len: int | None,
) -> EditPlan:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}")
    if scope == "systematic":
        if systematic_len is None:
            raise ValueError("systematic scope needs systematic_len")
        limit = systematic_len
    else:
        limit = length
    if kind == "insertions":
        limit += 1  # slot after the last in-scope bit
    if d > limit:
        raise ValueError(f"cannot place {d} distinct edits in {limit} positions")
    positions = tuple(sorted(rng.sample(range(1, limit + 1), d)))
    bits = ()
    if kind == "insertions":
        bits = tuple("1" if rng.getrandbits(1) else "0" for _ in positions)
    return EditPlan(kind, positions, bits, scope)
