"""Acceptance gate: ten timed criteria, each one test with one pass/fail
line.  Every criterion delegates to the same suite the `reproduce` CLI
subcommand runs, filtered to its records, and additionally enforces the
stated runtime budget."""

import time

import pytest

from maxpair.reproduce import run_suite


def _run(ids):
    t0 = time.perf_counter()
    rep = run_suite(filters=ids)
    elapsed = time.perf_counter() - t0
    assert rep.records, f"no records matched {ids}"
    return rep, elapsed


def _report(num, title, rep, elapsed, budget, per_record=None):
    failed = [r.id for r in rep.records if r.status not in ("pass", "skip")]
    verdict = "PASS" if not failed and elapsed < budget else "FAIL"
    print(f"CRITERION {num:>2} [{verdict}] {title}: "
          f"{len(rep.records)} checks, {elapsed:.1f}s (budget {budget:.0f}s)")
    assert not failed, f"failing records: {failed}"
    assert elapsed < budget, f"{elapsed:.1f}s exceeds {budget}s budget"
    if per_record is not None:
        slow = [(r.id, r.seconds) for r in rep.records if r.seconds >= per_record]
        assert not slow, f"records over the per-check budget: {slow}"


def test_criterion_01_rank1_sanity():
    rep, dt = _run(["1a", "1b", "1c", "1d", "1e", "1f"])
    _report(1, "prime-order cyclic groups are 1-maximal; C4/C9 are not",
            rep, dt, 1.0)


def test_criterion_02_two_maximal_instances():
    rep, dt = _run(["2a", "2b", "2c", "2d"])
    _report(2, "the four 2-maximal instances", rep, dt, 4.0, per_record=1.0)


def test_criterion_03_rank2_pair_positives():
    rep, dt = _run(["3a", "3b", "3c", "3d", "3e", "3f", "3g"])
    _report(3, "rank-2 pairs over (3,2), (5,2), (7,3)", rep, dt, 35.0,
            per_record=5.0)


def test_criterion_04_rank2_pair_negatives():
    rep, dt = _run(["4a", "4b"])
    _report(4, "inversion on C9xC3 and C9 fails condition (c)", rep, dt, 1.0)


def test_criterion_05_three_maximal_list():
    rep, dt = _run(["5a", "5b", "5c", "5d", "5e", "5f", "5g", "5h", "5i",
                    "5j", "5k", "5l", "5m"])
    _report(5, "the complete 3-maximal list plus the t=2 extension",
            rep, dt, 30.0)


def test_criterion_06_rank3_pairs():
    rep, dt = _run(["6a", "6b", "6c", "6d"])
    _report(6, "rank-3 pairs and the order-5^5 structure table",
            rep, dt, 300.0)


def test_criterion_07_round_trip():
    rep, dt = _run(["roundtrip"])
    _report(7, "build (t=1) then strip recovers each pair", rep, dt, 60.0)


def test_criterion_08_structural_suite():
    rep, dt = _run(["structural"])
    _report(8, "structural assertions A1-A12 on every pair", rep, dt, 300.0)


def test_criterion_09_oracle_equivalence():
    rep, dt = _run(["oracle"])
    _report(9, "lattice and rank agree with independent oracles (<=200)",
            rep, dt, 60.0)


def test_criterion_10_quotient_product_closure():
    rep, dt = _run(["10a", "10b", "10c"])
    _report(10, "quotient and product pairs re-pass with predicted ranks",
            rep, dt, 10.0)


def test_skips_are_declared():
    rep, _ = _run(["skip"])
    assert len(rep.records) == 5
    assert all(r.status == "skip" for r in rep.records)
