"""Systematic (k' + c, k') erasure code over GF(2^ell).

Parity r (1-based) of a message (S_0, ..., S_{k'-1}) is
sum_j S_j * alpha^(j*(r-1)), so the parity columns form a transposed
Vandermonde matrix on the distinct nodes 1, alpha, ..., alpha^(k'-1).
Erasures are only ever solved in systematic positions with the leading
parities, for which every square subsystem is invertible.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .gf import GF2m, field


class SystematicCode:
    def __init__(self, gf: GF2m, k_prime: int, c: int):
        if k_prime < 1 or c < 1:
            raise ValueError("need k_prime >= 1 and c >= 1")
        if k_prime > gf.q - 1:
            raise ValueError(f"k_prime={k_prime} exceeds {gf.q - 1} distinct nodes")
        if k_prime + c > gf.q:
            raise ValueError(f"k_prime + c = {k_prime + c} exceeds field size {gf.q}")
        self.gf = gf
        self.k_prime = k_prime
        self.c = c
        order = gf.q - 1
        # logcol[r-1][j] = log of the column entry alpha^(j*(r-1))
        self.logcol = [[(j * r) % order for j in range(k_prime)] for r in range(c)]
        self._inverses: dict[tuple[int, ...], list[list[int]]] = {}

    def parity(self, symbols: Sequence[int], r: int) -> int:
        """Value of parity r in [1, c] for a full symbol sequence."""
        if len(symbols) != self.k_prime:
            raise ValueError(f"expected {self.k_prime} symbols, got {len(symbols)}")
        if not 1 <= r <= self.c:
            raise ValueError(f"parity index {r} out of range [1, {self.c}]")
        exp, log = self.gf.exp, self.gf.log
        logs = self.logcol[r - 1]
        acc = 0
        for j, s in enumerate(symbols):
            if s:
                acc ^= exp[log[s] + logs[j]]
        return acc

    def encode(self, message: Sequence[int]) -> tuple[int, ...]:
        """All c parities of the message (returned alongside, not replacing it)."""
        return tuple(self.parity(message, r) for r in range(1, self.c + 1))

    def check_parity(self, symbols: Sequence[int], r: int, expected: int) -> tuple[bool, int]:
        """Recompute parity r and compare; returns (matches, computed value)."""
        got = self.parity(symbols, r)
        return got == expected, got

    def erasure_inverse(self, positions: tuple[int, ...]) -> list[list[int]]:
        """Inverse of the e x e system formed by parities 1..e at the given
        erased systematic positions. Cached; positions must be sorted."""
        inv = self._inverses.get(positions)
        if inv is None:
            e = len(positions)
            rows = [[self.gf.exp[self.logcol[r][p]] for p in positions] for r in range(e)]
            inv = invert_matrix(rows, self.gf)
            self._inverses[positions] = inv
        return inv

    def decode_erasures(self, symbols: Sequence[int | None], parities: Sequence[int]) -> list[int]:
        """Fill in erased (None) positions using the first e parity values.

        Exactly e parities must be supplied, e = number of erasures.
        """
        if len(symbols) != self.k_prime:
            raise ValueError(f"expected {self.k_prime} symbols, got {len(symbols)}")
        erased = tuple(j for j, s in enumerate(symbols) if s is None)
        e = len(erased)
        if e == 0:
            return list(symbols)  # type: ignore[arg-type]
        if len(parities) != e:
            raise ValueError(f"{e} erasures need exactly the first {e} parities")
        if e > self.c:
            raise ValueError(f"{e} erasures exceed {self.c} parities")
        exp, log = self.gf.exp, self.gf.log
        rhs = []
        for r in range(e):
            logs = self.logcol[r]
            acc = parities[r]
            for j, s in enumerate(symbols):
                if s:
                    acc ^= exp[log[s] + logs[j]]
            rhs.append(acc)
        inv = self.erasure_inverse(erased)
        out = list(symbols)
        for t in range(e):
            acc = 0
            row = inv[t]
            for r in range(e):
                b = rhs[r]
                a = row[r]
                if a and b:
                    acc ^= exp[log[a] + log[b]]
            out[erased[t]] = acc
        return out  # type: ignore[return-value]


def invert_matrix(rows: list[list[int]], gf: GF2m) -> list[list[int]]:
    """Gauss-Jordan inversion over the field; arithmetic is exact so the
    only failure mode is a genuinely singular system."""
    n = len(rows)
    a = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise ValueError("singular system; Vandermonde invariant violated")
        a[col], a[pivot] = a[pivot], a[col]
        pinv = gf.inv(a[col][col])
        a[col] = [gf.mul(pinv, v) for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                arow, crow = a[r], a[col]
                for j in range(2 * n):
                    if crow[j]:
                        arow[j] ^= gf.mul(f, crow[j])
    return [row[n:] for row in a]


@lru_cache(maxsize=None)
def cached_code(m: int, k_prime: int, c: int) -> SystematicCode:
    """Shared code instance (and erasure-inverse cache) per parameter triple."""
    return SystematicCode(field(m), k_prime, c)
