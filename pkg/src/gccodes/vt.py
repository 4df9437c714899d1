"""Varshamov-Tenengolts syndrome and single-deletion correction.

The syndrome of an n-bit string is sum(i * x_i) mod (n+1) over 1-indexed
positions. A string that lost one bit is repaired with Levenshtein's
weight rule; every syndrome-consistent reinsertion yields the same string,
which is what makes the correction zero-error.
"""

from __future__ import annotations

from dataclasses import dataclass


class NoConsistentInsertion(ValueError):
    """No single-bit reinsertion into y matches the syndrome."""


@dataclass(frozen=True)
class VtSyndrome:
    a: int  # sum(i * x_i) mod (n + 1)
    n: int  # length of the original string


def vt_syndrome(x: str) -> VtSyndrome:
    n = len(x)
    if n < 1:
        raise ValueError("need at least one bit")
    a = sum(i for i, b in enumerate(x, start=1) if b == "1") % (n + 1)
    return VtSyndrome(a, n)


def vt_correct(y: str, syndrome: VtSyndrome) -> str:
    """Reinsert the single deleted bit into y.

    Let s = (a - syndrome(y)) mod (n+1) and w = weight(y). If s <= w a zero
    was deleted with s ones to its right; otherwise a one was deleted with
    s - w - 1 zeros to its left.
    """
    n = syndrome.n
    if len(y) != n - 1:
        raise ValueError(f"expected {n - 1} bits, got {len(y)}")
    got = sum(i for i, b in enumerate(y, start=1) if b == "1") % (n + 1)
    s = (syndrome.a - got) % (n + 1)
    w = y.count("1")

    if s <= w:
        # insert '0' so that exactly s ones lie to its right
        if s == 0:
            idx = len(y)
        else:
            ones = 0
            idx = -1
            for i in range(len(y) - 1, -1, -1):
                if y[i] == "1":
                    ones += 1
                    if ones == s:
                        idx = i
                        break
            if idx < 0:
                raise NoConsistentInsertion(f"syndrome {syndrome} unreachable from {y!r}")
        x = y[:idx] + "0" + y[idx:]
    else:
        # insert '1' after exactly s - w - 1 zeros
        zeros_needed = s - w - 1
        if zeros_needed == 0:
            idx = 0
        else:
            zeros = 0
            idx = -1
            for i, b in enumerate(y):
                if b == "0":
                    zeros += 1
                    if zeros == zeros_needed:
                        idx = i + 1
                        break
            if idx < 0:
                raise NoConsistentInsertion(f"syndrome {syndrome} unreachable from {y!r}")
        x = y[:idx] + "1" + y[idx:]

    if vt_syndrome(x).a != syndrome.a:
        raise NoConsistentInsertion(f"syndrome {syndrome} unreachable from {y!r}")
    return x
