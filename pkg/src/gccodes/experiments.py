"""Monte Carlo failure-rate estimation, the analytic failure bound, chunk
length / parity count sweeps, and the exhaustive preimage census behind the
decoder's collision bound."""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .channel import _sample_plan, apply_edits
from .codec import GcParams, NoCandidate, Success, gc_decode, gc_encode

import random

CSV_FIELDS = (
    "k",
    "ell",
    "c",
    "delta",
    "scope",
    "trials",
    "failures",
    "pf_hat",
    "bound",
    "redundancy",
    "rate",
    "seed",
    "wall_time_ms",
)


@dataclass(frozen=True)
class PfEstimate:
    params: GcParams
    kind: str
    scope: str
    trials: int
    failures: int
    wrong_successes: int  # must stay 0: the decoder never decodes wrongly
    no_candidates: int  # counted inside failures, tracked separately
    seed: int
    wall_time_ms: float = 0.0

    @property
    def pf_hat(self) -> float:
        return self.failures / self.trials


def _trial_seed(seed: int, t: int) -> int:
    return (seed << 32) + t


def _run_trials(
    params: GcParams, kind: str, scope: str, seed: int, lo: int, hi: int, edits: int
) -> tuple[int, int, int]:
    """Trials [lo, hi): returns (failures, wrong_successes, no_candidates).
    Each trial depends only on (seed, index), so any partition over workers
    sums to the same totals."""
    k = params.k
    n = params.n
    failures = wrong = nocand = 0
    for t in range(lo, hi):
        rng = random.Random(_trial_seed(seed, t))
        message = format(rng.getrandbits(k), f"0{k}b")
        codeword = gc_encode(message, params)
        plan = _sample_plan(rng, n, edits, kind, scope, k)
        received = apply_edits(codeword, plan)
        outcome = gc_decode(received, params, kind)
        if isinstance(outcome, Success):
            if outcome.message != message:
                wrong += 1
        elif isinstance(outcome, NoCandidate):
            nocand += 1
            failures += 1
        else:
            failures += 1
    return failures, wrong, nocand


def estimate_pf(
    params: GcParams,
    kind: str = "deletions",
    scope: str = "whole",
    trials: int = 10000,
    seed: int = 0,
    workers: int = 1,
    edits: int | None = None,
) -> PfEstimate:
    """Encode a fresh uniform message per trial, apply d = delta random
    edits (overridable via `edits`), decode, and count Failure plus
    NoCandidate outcomes as failures. Results are identical for any
    worker count."""
    if trials < 1:
        raise ValueError("need at least one trial")
    d = params.delta if edits is None else edits
    if not 0 <= d <= params.delta:
        raise ValueError("edit count must be in [0, delta]")
    start = time.perf_counter()
    if workers <= 1:
        failures, wrong, nocand = _run_trials(params, kind, scope, seed, 0, trials, d)
    else:
        step = -(-trials // workers)
        spans = [(lo, min(lo + step, trials)) for lo in range(0, trials, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    _run_trials,
                    *zip(*[(params, kind, scope, seed, lo, hi, d) for lo, hi in spans]),
                )
            )
        failures = sum(p[0] for p in parts)
        wrong = sum(p[1] for p in parts)
        nocand = sum(p[2] for p in parts)
    wall_ms = (time.perf_counter() - start) * 1000.0
    return PfEstimate(params, kind, scope, trials, failures, wrong, nocand, seed, wall_ms)


def theoretical_bound(params: GcParams) -> float:
    """Analytic failure-probability bound: the case count times the 2^(delta^2)
    input-collision cap, divided by q^(c - delta). Only meaningful below 1
    (requires c > 2*delta for a vanishing value)."""
    t = math.comb(params.k_prime + params.delta - 1, params.delta)
    gamma_cap = 2 ** (params.delta * params.delta)
    return t * gamma_cap / (2.0 ** (params.ell * (params.c - params.delta)))


def sweep(
    k: int,
    delta: int,
    ell_values: tuple[int, ...],
    c_values: tuple[int, ...],
    trials: int,
    seed: int = 0,
    kind: str = "deletions",
    scope: str = "whole",
    workers: int = 1,
) -> list[PfEstimate]:
    """One estimate per (ell, c) grid point. All points share the per-trial
    seeds, hence the same message stream, for variance reduction."""
    out = []
    for ell in sorted(ell_values):
        for c in sorted(c_values):
            params = GcParams(k=k, ell=ell, c=c, delta=delta)
            out.append(estimate_pf(params, kind, scope, trials, seed, workers))
    return out


def estimate_row(est: PfEstimate) -> dict:
    p = est.params
    return {
        "k": p.k,
        "ell": p.ell,
        "c": p.c,
        "delta": p.delta,
        "scope": est.scope,
        "trials": est.trials,
        "failures": est.failures,
        "pf_hat": est.pf_hat,
        "bound": theoretical_bound(p),
        "redundancy": p.n - p.k,
        "rate": p.k / p.n,
        "seed": est.seed,
        "wall_time_ms": round(est.wall_time_ms, 3),
    }


def gamma_census(
    k: int = 16, ell: int = 4, deletion_position: int = 3, case_index: int = 4
) -> int:
    """Exhaustively decode every k-bit message in a fixed single-deletion
    case using the first parity only, group the outputs by (first parity,
    decoded q-ary string), and return the largest group. For a wrong case
    the bound is 2; the correct case inverts the deletion, so every group
    has size 1."""
    if k > 20:
        raise ValueError("census is exhaustive over 2^k messages; keep k <= 20")
    if k % ell:
        raise ValueError("census assumes ell divides k")
    kp = k // ell
    if not 1 <= deletion_position <= k:
        raise ValueError("deletion position out of range")
    if not 1 <= case_index <= kp:
        raise ValueError("case index out of range")
    case = case_index - 1
    pos = deletion_position - 1
    groups: dict[tuple[int, tuple[int, ...]], int] = {}
    for val in range(1 << k):
        u = format(val, f"0{k}b")
        p1 = 0
        for i in range(kp):
            p1 ^= int(u[i * ell : (i + 1) * ell], 2)
        y = u[:pos] + u[pos + 1 :]
        decoded = []
        cursor = 0
        acc = 0
        for i in range(kp):
            clen = ell - 1 if i == case else ell
            if i != case:
                s = int(y[cursor : cursor + clen], 2)
                decoded.append(s)
                acc ^= s
            else:
                decoded.append(-1)  # placeholder for the erasure
            cursor += clen
        decoded[case] = p1 ^ acc  # erasure decoding from the all-ones parity
        key = (p1, tuple(decoded))
        groups[key] = groups.get(key, 0) + 1
    return max(groups.values())
