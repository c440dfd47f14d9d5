"""Reward formulas, binarization/consensus, and task sampling."""

import math
import random

import pytest

from unfun.game import (
    ConsensusClass,
    GroundTruthEntry,
    InsufficientRatingsError,
    Label,
    ModifiedCandidate,
    NoTaskError,
    RewardConfig,
    SatiricalEntry,
    SeriousnessRating,
    TaskKind,
    TaskPool,
    aggregate_consensus,
    binarize,
    mean_rating,
    reward_rating,
    reward_unfun,
    sample_task,
)

CFG = RewardConfig()


class TestMeanRating:
    def test_single(self):
        assert mean_rating([1.0]) == 1.0

    def test_pair(self):
        assert mean_rating([0.2, 0.8]) == pytest.approx(0.5)

    def test_triple(self):
        assert mean_rating([0.9, 0.7, 0.5]) == pytest.approx(0.7)

    def test_accepts_rating_records(self):
        recs = [SeriousnessRating(0.4, "p1", "h1"), SeriousnessRating(0.6, "p2", "h1")]
        assert mean_rating(recs) == pytest.approx(0.5)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            mean_rating([])


class TestRewardUnfun:
    def test_maximum(self):
        assert reward_unfun(1.0, 1.0, CFG) == pytest.approx(1000.0)

    def test_zero_factor_zeroes_reward(self):
        for s in [0.0, 0.25, 0.5, 1.0]:
            assert reward_unfun(0.0, s, CFG) == 0.0
            assert reward_unfun(s, 0.0, CFG) == 0.0

    def test_worked_example(self):
        assert reward_unfun(0.75, 2 / 3, CFG) == pytest.approx(1000 * math.sqrt(0.5), abs=1e-9)

    def test_monotone_and_bounded(self):
        grid = [i / 10 for i in range(11)]
        for r in grid:
            values = [reward_unfun(r, s, CFG) for s in grid]
            assert values == sorted(values)
            assert all(0.0 <= v <= 1000.0 for v in values)
        for s in grid:
            values = [reward_unfun(r, s, CFG) for r in grid]
            assert values == sorted(values)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            reward_unfun(1.2, 0.5, CFG)
        with pytest.raises(ValueError):
            reward_unfun(0.5, -0.1, CFG)


class TestRewardRating:
    def test_clamp_boundary_maximum(self):
        assert reward_rating(0.99, Label.SERIOUS, CFG) == pytest.approx(200.0)
        assert reward_rating(1.0, Label.SERIOUS, CFG) == pytest.approx(200.0)

    def test_clamp_boundary_minimum(self):
        assert reward_rating(0.01, Label.SERIOUS, CFG) == pytest.approx(0.0)
        assert reward_rating(0.0, Label.SERIOUS, CFG) == pytest.approx(0.0)

    def test_half_belief(self):
        expected = 200 * (math.log(0.5) - math.log(0.01)) / (math.log(0.99) - math.log(0.01))
        assert expected == pytest.approx(170.3, abs=0.05)
        assert reward_rating(0.5, Label.SERIOUS, CFG) == pytest.approx(expected)
        assert reward_rating(0.5, Label.SATIRICAL, CFG) == pytest.approx(expected)

    def test_truth_symmetry(self):
        for p in [0.0, 0.2, 0.37, 0.5, 0.64, 0.99]:
            assert reward_rating(p, Label.SERIOUS, CFG) == pytest.approx(
                reward_rating(1 - p, Label.SATIRICAL, CFG))

    def test_propriety_on_grid(self):
        # For each true belief q, reporting near q maximizes expected reward.
        reports = [i / 100 for i in range(101)]
        for q10 in range(1, 10):
            q = q10 / 10
            def expected(p):
                return q * reward_rating(p, Label.SERIOUS, CFG) + (1 - q) * reward_rating(p, Label.SATIRICAL, CFG)
            best = max(reports, key=expected)
            assert abs(best - q) <= 0.01 + 1e-12

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            reward_rating(1.0001, Label.SERIOUS, CFG)


class TestBinarize:
    def test_serious(self):
        assert binarize(0.9) is Label.SERIOUS

    def test_satirical(self):
        assert binarize(0.1) is Label.SATIRICAL

    def test_tie_goes_satirical(self):
        assert binarize(0.5) is Label.SATIRICAL


class TestAggregateConsensus:
    def test_consensus_serious(self):
        assert aggregate_consensus([0.9, 0.8]) is ConsensusClass.CONSENSUS_SERIOUS

    def test_no_consensus(self):
        assert aggregate_consensus([0.9, 0.2]) is ConsensusClass.NO_CONSENSUS

    def test_consensus_satirical(self):
        assert aggregate_consensus([0.1, 0.2, 0.3]) is ConsensusClass.CONSENSUS_SATIRICAL

    def test_order_invariant(self):
        rng = random.Random(3)
        for _ in range(100):
            vals = [rng.random() for _ in range(rng.randint(2, 6))]
            shuffled = vals[:]
            rng.shuffle(shuffled)
            assert aggregate_consensus(vals) is aggregate_consensus(shuffled)

    def test_classes_partition(self):
        rng = random.Random(4)
        for _ in range(200):
            vals = [rng.random() for _ in range(rng.randint(2, 5))]
            assert aggregate_consensus(vals) in ConsensusClass

    def test_insufficient(self):
        with pytest.raises(InsufficientRatingsError):
            aggregate_consensus([0.9])


def _pool(n_modified=3, counts=(0, 1, 2), author="author", raters=()):
    satirical = [SatiricalEntry(f"s{i}", f"satirical {i}", "NP VP NP") for i in range(4)]
    modified = [
        ModifiedCandidate(f"m{i}", f"modified {i}", frozenset({author}), counts[i], frozenset(raters))
        for i in range(n_modified)
    ]
    truth = [
        GroundTruthEntry("g0", "truth serious", Label.SERIOUS),
        GroundTruthEntry("g1", "truth satirical", Label.SATIRICAL),
    ]
    return TaskPool(satirical=satirical, modified=modified, ground_truth=truth)


class TestSampleTask:
    def test_alpha_fraction(self):
        rng = random.Random(777)
        pool = _pool()
        n = 3000
        task1 = sum(
            sample_task(pool, "rater", rng, CFG).kind is TaskKind.TASK1
            for _ in range(n)
        )
        assert abs(task1 / n - 1 / 3) < 0.03

    def test_fewest_ratings_selected(self):
        rng = random.Random(1)
        pool = _pool(counts=(2, 0, 2))
        for _ in range(50):
            task = sample_task(pool, "rater", rng, CFG)
            if task.kind is TaskKind.TASK2:
                assert task.modified_id == "m1"

    def test_own_submission_excluded(self):
        rng = random.Random(2)
        pool = _pool(n_modified=1, counts=(0,), author="rater")
        for _ in range(50):
            assert sample_task(pool, "rater", rng, CFG).kind is TaskKind.TASK1

    def test_already_rated_excluded(self):
        rng = random.Random(6)
        pool = _pool(n_modified=1, counts=(0,), raters=("rater",))
        for _ in range(50):
            assert sample_task(pool, "rater", rng, CFG).kind is TaskKind.TASK1

    def test_task2_payload(self):
        rng = random.Random(8)
        pool = _pool()
        seen_orders = set()
        for _ in range(200):
            task = sample_task(pool, "rater", rng, CFG)
            if task.kind is not TaskKind.TASK2:
                continue
            assert len(task.items) == 2
            ids = {i for i, _ in task.items}
            assert task.modified_id in ids and task.ground_truth_id in ids
            seen_orders.add(task.items[0][0] == task.modified_id)
        assert seen_orders == {True, False}

    def test_ground_truth_mix(self):
        rng = random.Random(9)
        pool = _pool()
        labels = [
            t.ground_truth_label
            for t in (sample_task(pool, "rater", rng, CFG) for _ in range(600))
            if t.kind is TaskKind.TASK2
        ]
        frac_serious = sum(l is Label.SERIOUS for l in labels) / len(labels)
        assert 0.4 < frac_serious < 0.6

    def test_pattern_priority_boosts(self):
        rng = random.Random(11)
        satirical = [SatiricalEntry("s0", "plain", "NP VP"),
                     SatiricalEntry("s1", "boosted", "NP VP NP PP NP")]
        pool = TaskPool(satirical=satirical)
        picks = [
            sample_task(pool, "p", rng, CFG, pattern_priority={"NP VP NP PP NP": 9.0}).headline_id
            for _ in range(500)
        ]
        frac_boosted = picks.count("s1") / len(picks)
        assert frac_boosted > 0.8

    def test_empty_corpus(self):
        with pytest.raises(NoTaskError):
            sample_task(TaskPool(satirical=[]), "p", random.Random(0), CFG)


class TestRewardConfigValidation:
    def test_bad_alpha(self):
        with pytest.raises(ValueError):
            RewardConfig(alpha=0.0)

    def test_bad_epsilon(self):
        with pytest.raises(ValueError):
            RewardConfig(epsilon=0.6)
