"""Reward mathematics, rating aggregation, and two-task sampling.

Rewards follow the game's two formulas: the edit reward is the geometric
mean of mean seriousness rating and similarity (scaled to [0, 1000]), and
the rating reward is a log scoring rule, clamped at epsilon and affinely
mapped to [0, 200] so it stays a proper scoring rule with a bounded range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from random import Random
from typing import Iterable, Mapping, Optional, Sequence


class Label(str, Enum):
    SERIOUS = "SERIOUS"
    SATIRICAL = "SATIRICAL"


class ConsensusClass(str, Enum):
    CONSENSUS_SERIOUS = "CONSENSUS_SERIOUS"
    NO_CONSENSUS = "NO_CONSENSUS"
    CONSENSUS_SATIRICAL = "CONSENSUS_SATIRICAL"


class TaskKind(str, Enum):
    TASK1 = "TASK1"
    TASK2 = "TASK2"


class NoTaskError(RuntimeError):
    """No task can be generated from the current pools."""


class InsufficientRatingsError(ValueError):
    """Consensus aggregation needs at least two ratings."""


@dataclass(frozen=True)
class SeriousnessRating:
    value: float
    rater_id: str = ""
    target_id: str = ""

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"rating value {self.value} outside [0, 1]")


@dataclass(frozen=True)
class RewardConfig:
    alpha: float = 1.0 / 3.0        # probability of generating an edit task
    epsilon: float = 0.01           # belief clamp for the log scoring rule
    unfun_scale: float = 1000.0
    rating_scale: float = 200.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha {self.alpha} outside (0, 1)")
        if not 0.0 < self.epsilon < 0.5:
            raise ValueError(f"epsilon {self.epsilon} outside (0, 0.5)")


def _values(ratings: Iterable) -> list[float]:
    return [r.value if isinstance(r, SeriousnessRating) else float(r) for r in ratings]


def mean_rating(ratings: Sequence) -> float:
    """Arithmetic mean of seriousness ratings; rejects an empty list."""
    values = _values(ratings)
    if not values:
        raise ValueError("mean_rating requires at least one rating")
    return sum(values) / len(values)


def reward_unfun(r: float, s: float, cfg: RewardConfig = RewardConfig()) -> float:
    """Scaled geometric mean of mean rating r and similarity s.

    Zero whenever either factor is zero: a serious-sounding rewrite that
    shares nothing with the original earns nothing, and so does an untouched
    one that kept its humor.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"mean rating {r} outside [0, 1]")
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"similarity {s} outside [0, 1]")
    return cfg.unfun_scale * math.sqrt(r * s)


def reward_rating(p: float, truth: Label, cfg: RewardConfig = RewardConfig()) -> float:
    """Log scoring rule on the ground-truth item, clamped and mapped to [0, scale].

    The raw rule (log p if serious, log(1-p) if satirical) is unbounded
    below; clamping the effective belief to [eps, 1-eps] and applying a
    positive affine map keeps propriety while bounding the payout.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"belief {p} outside [0, 1]")
    q = p if truth is Label.SERIOUS else 1.0 - p
    q = min(max(q, cfg.epsilon), 1.0 - cfg.epsilon)
    lo, hi = math.log(cfg.epsilon), math.log(1.0 - cfg.epsilon)
    return cfg.rating_scale * (math.log(q) - lo) / (hi - lo)


def binarize(value: float) -> Label:
    """SERIOUS above 0.5; 0.5 itself counts as SATIRICAL."""
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"rating value {value} outside [0, 1]")
    return Label.SERIOUS if value > 0.5 else Label.SATIRICAL


def aggregate_consensus(ratings: Sequence) -> ConsensusClass:
    """Majority class of binarized ratings; needs n >= 2."""
    values = _values(ratings)
    n = len(values)
    if n < 2:
        raise InsufficientRatingsError(f"need at least 2 ratings, got {n}")
    serious = sum(1 for v in values if binarize(v) is Label.SERIOUS)
    if 2 * serious > n:
        return ConsensusClass.CONSENSUS_SERIOUS
    if 2 * serious == n:
        return ConsensusClass.NO_CONSENSUS
    return ConsensusClass.CONSENSUS_SATIRICAL


# ---------------------------------------------------------------------------
# Task sampling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SatiricalEntry:
    headline_id: str
    text: str
    pattern: Optional[str] = None


@dataclass(frozen=True)
class ModifiedCandidate:
    headline_id: str
    text: str
    author_ids: frozenset[str]
    rating_count: int
    rater_ids: frozenset[str]  # raters who rated it or hold an open assignment


@dataclass(frozen=True)
class GroundTruthEntry:
    headline_id: str
    text: str
    truth: Label
    rater_ids: frozenset[str] = frozenset()


@dataclass(frozen=True)
class TaskAssignment:
    kind: TaskKind
    headline_id: Optional[str] = None          # task 1
    headline_text: Optional[str] = None
    items: tuple[tuple[str, str], ...] = ()    # task 2, server-given order
    modified_id: Optional[str] = None          # task 2 bookkeeping, never serialized
    ground_truth_id: Optional[str] = None
    ground_truth_label: Optional[Label] = None


@dataclass(frozen=True)
class TaskPool:
    satirical: Sequence[SatiricalEntry]
    modified: Sequence[ModifiedCandidate] = ()
    ground_truth: Sequence[GroundTruthEntry] = ()


def sample_task(
    pool: TaskPool,
    player_id: str,
    rng: Random,
    cfg: RewardConfig = RewardConfig(),
    pattern_priority: Optional[Mapping[str, float]] = None,
) -> TaskAssignment:
    """Draw an edit task with probability alpha, otherwise a rating task.

    Rating tasks pick a modified headline among those with the fewest
    ratings, never one the player wrote or already rated, and pair it with
    a ground-truth headline drawn 50/50 serious/satirical; the two are
    presented in random order.  Falls back to an edit task when no rating
    task is possible.
    """
    if not pool.satirical:
        raise NoTaskError("satirical corpus is empty")

    ratable = [
        c for c in pool.modified
        if player_id not in c.author_ids and player_id not in c.rater_ids
    ]
    truths = [g for g in pool.ground_truth if player_id not in g.rater_ids]
    task2_possible = bool(ratable) and bool(truths)

    if rng.random() < cfg.alpha or not task2_possible:
        weights = None
        if pattern_priority:
            weights = [pattern_priority.get(e.pattern or "", 1.0) for e in pool.satirical]
        entry = rng.choices(list(pool.satirical), weights=weights, k=1)[0]
        return TaskAssignment(kind=TaskKind.TASK1, headline_id=entry.headline_id,
                              headline_text=entry.text)

    fewest = min(c.rating_count for c in ratable)
    target = rng.choice([c for c in ratable if c.rating_count == fewest])

    serious_pool = [g for g in truths if g.truth is Label.SERIOUS]
    satirical_pool = [g for g in truths if g.truth is Label.SATIRICAL]
    if serious_pool and satirical_pool:
        chosen_pool = serious_pool if rng.random() < 0.5 else satirical_pool
    else:
        chosen_pool = serious_pool or satirical_pool
    truth_entry = rng.choice(chosen_pool)

    items = [(target.headline_id, target.text),
             (truth_entry.headline_id, truth_entry.text)]
    if rng.random() < 0.5:
        items.reverse()
    return TaskAssignment(
        kind=TaskKind.TASK2,
        items=tuple(items),
        modified_id=target.headline_id,
        ground_truth_id=truth_entry.headline_id,
        ground_truth_label=truth_entry.truth,
    )
