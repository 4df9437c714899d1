import random

import pytest

from gccodes import (
    EditPlan,
    ModelViolation,
    SegmentPair,
    SyncConfig,
    apply_edits,
    anchor_split,
    run_sync,
)
from gccodes.sync import _segment_ell, run_sync_trials, sync_row


def rand_bits(n, seed):
    return format(random.Random(seed).getrandbits(n), f"0{n}b")


def test_identical_files_cost_one_hash():
    fa = rand_bits(1000, 1)
    stats = run_sync(fa, fa, SyncConfig(mode="gc"))
    assert stats.success
    assert stats.rounds == 1
    assert stats.bits_a_to_b == 32
    assert stats.bits_b_to_a == 0
    assert stats.fallback_bits == 0


def test_single_deletion_costs_vt_syndrome():
    fa = rand_bits(1000, 2)
    fb = apply_edits(fa, EditPlan("deletions", (500,)))
    stats = run_sync(fa, fb, SyncConfig(mode="gc"))
    assert stats.success
    assert stats.rounds == 1
    assert stats.bits_a_to_b == 10 + 32  # ceil(log2(1001)) syndrome bits + hash


def test_model_violation():
    with pytest.raises(ModelViolation):
        run_sync("0000", "111", SyncConfig(mode="vt"))


def test_config_validation():
    with pytest.raises(ValueError):
        SyncConfig(mode="gc", delta_cap=1)
    with pytest.raises(ValueError):
        SyncConfig(mode="nope")
    cfg = SyncConfig()
    assert (cfg.c_init(2), cfg.c_max(2)) == (3, 7)


class TestAnchorSplit:
    def test_deletions_left_of_center_give_clean_right_child(self):
        fa = rand_bits(400, 3)
        fb = apply_edits(fa, EditPlan("deletions", (40, 140)))
        pair = SegmentPair(0, 400, 0, 398)
        split = anchor_split(fa, fb, pair, SyncConfig(mode="gc"))
        assert split is not None
        left, right = split
        assert left.d == 2 and right.d == 0
        # children exclude the matched anchor and partition the rest
        assert left.a_lo == 0 and right.a_hi == 400
        assert right.a_lo - left.a_hi == 25

    def test_all_zero_segment_matches_everywhere(self):
        fa = "0" * 300
        fb = fa[:298]
        assert anchor_split(fa, fb, SegmentPair(0, 300, 0, 298), SyncConfig(mode="gc")) is None

    def test_anchor_longer_than_segment(self):
        fa = rand_bits(20, 4)
        fb = apply_edits(fa, EditPlan("deletions", (3, 9)))
        assert anchor_split(fa, fb, SegmentPair(0, 20, 0, 18), SyncConfig(mode="gc")) is None


def test_segment_ell_bounds():
    assert _segment_ell(1000, 7) == 10
    assert _segment_ell(30, 7) == 5
    assert _segment_ell(2, 7) == 3  # bumped until one block plus parities fit
    assert _segment_ell(10**6, 7) is None  # too many blocks to guess over


def test_gc_retry_requests_one_parity_at_a_time():
    # 30-bit file with deletions at (4, 30): three parities leave two
    # surviving guesses, the fourth settles it
    fa = "111010001110011010100011000001"
    fb = apply_edits(fa, EditPlan("deletions", (4, 30)))
    stats = run_sync(fa, fb, SyncConfig(mode="gc"))
    assert stats.success
    assert stats.rounds == 2
    kinds = [(kind, bits) for _, _, kind, bits in stats.ledger]
    assert ("gc_parities", 3 * 5 + 32) in kinds
    assert ("gc_parity", 5) in kinds


def test_ledger_audits_totals():
    fa = rand_bits(5000, 6)
    fb = apply_edits(fa, EditPlan("deletions", tuple(sorted(random.Random(7).sample(range(1, 5001), 8)))))
    for mode in ("vt", "gc"):
        stats = run_sync(fa, fb, SyncConfig(mode=mode))
        assert stats.success
        a2b = sum(b for _, d, _, b in stats.ledger if d == "a2b")
        b2a = sum(b for _, d, _, b in stats.ledger if d == "b2a")
        assert (a2b, b2a) == (stats.bits_a_to_b, stats.bits_b_to_a)
        raw = sum(b for _, _, kind, b in stats.ledger if kind == "raw")
        assert raw == stats.fallback_bits
        assert max(r for r, _, _, _ in stats.ledger) == stats.rounds


def test_rounds_stay_bounded():
    # every message closes, splits, retries toward c_max, or falls back to
    # raw, so rounds are bounded by the split depth plus small constants
    fa = rand_bits(20000, 8)
    fb = apply_edits(
        fa, EditPlan("deletions", tuple(sorted(random.Random(9).sample(range(1, 20001), 12))))
    )
    for mode in ("vt", "gc"):
        stats = run_sync(fa, fb, SyncConfig(mode=mode))
        assert stats.success
        assert stats.rounds <= 20


def test_random_small_files_synchronize_exactly():
    rng = random.Random(10)
    for mode in ("vt", "gc"):
        for trial in range(12):
            n = rng.randrange(500, 3000)
            d = rng.randrange(0, 9)
            fa = format(rng.getrandbits(n), f"0{n}b")
            positions = tuple(sorted(rng.sample(range(1, n + 1), d)))
            fb = apply_edits(fa, EditPlan("deletions", positions))
            stats = run_sync(fa, fb, SyncConfig(mode=mode))
            assert stats.success, (mode, trial, n, d)


def test_trials_harness_shares_instances_between_modes():
    vt = run_sync_trials(4000, 5, trials=4, mode="vt", seed=11)
    gc = run_sync_trials(4000, 5, trials=4, mode="gc", seed=11)
    assert all(s.success for s in vt + gc)
    row = sync_row("vt", 4000, 5, vt, 11)
    assert row["success_rate"] == 1.0
    assert row["trials"] == 4
    again = run_sync_trials(4000, 5, trials=4, mode="vt", seed=11)
    assert [s.bits_a_to_b for s in again] == [s.bits_a_to_b for s in vt]
