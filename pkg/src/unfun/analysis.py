"""Quantitative analyses over collected headline pairs.

Covers the distance histograms, edit-operation mix, distance-vs-rating
tradeoff with bootstrap intervals, chunk-type lift, modified-position
distributions, the rating confusion table, opposition statistics, and the
false-analogy template instantiation.  Everything is pure over immutable
snapshots and deterministic given a seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .chunking import ChunkSequence, SingleSubstitution, classify_single_substitution
from .game import ConsensusClass, aggregate_consensus, mean_rating
from .store import Headline, Origin, Pair, headline_chunks, pair_chunk_distance, pair_edit_distance

DEFAULT_SEED = 20260811
DEFAULT_RESAMPLES = 1000

# Editable seed taxonomy; annotation files may introduce further labels.
STATURE_SUBTYPES = (
    "sublime/mundane",
    "powerful/powerless",
    "dignified/undignified",
    "competent/incompetent",
    "famous/obscure",
    "wise/foolish",
    "noble/petty",
    "heroic/cowardly",
    "refined/crude",
    "grand/trivial",
)
OPPOSITION_TAXONOMY = (
    "high/low stature",
    "life/death",
    "non-obscene/obscene",
    "religion/no religion",
    "human/animal",
    "other",
) + STATURE_SUBTYPES


class AbstractClass(str, Enum):
    POSSIBLE_IMPOSSIBLE = "POSSIBLE_IMPOSSIBLE"
    NORMAL_ABNORMAL = "NORMAL_ABNORMAL"
    ACTUAL_NONACTUAL = "ACTUAL_NONACTUAL"


class ExplicitSide(str, Enum):
    GOOD = "GOOD"
    BAD = "BAD"


@dataclass(frozen=True)
class PairAnnotation:
    pair_id: str
    oppositions: tuple[str, ...]
    abstract_class: AbstractClass
    mechanism: str = "FALSE_ANALOGY"
    explicit_side: ExplicitSide = ExplicitSide.BAD

    def __post_init__(self):
        if not self.oppositions:
            raise ValueError("annotation needs at least one opposition label")

    @classmethod
    def from_dict(cls, pair_id: str, payload: dict) -> "PairAnnotation":
        return cls(
            pair_id=pair_id,
            oppositions=tuple(payload["oppositions"]),
            abstract_class=AbstractClass(payload["abstract_class"]),
            mechanism=payload.get("mechanism", "FALSE_ANALOGY"),
            explicit_side=ExplicitSide(payload.get("explicit_side", "BAD")),
        )


@dataclass(frozen=True)
class FalseAnalogyFrame:
    """Entities x/x' share property P; only H(x') can be meant seriously."""

    x: str
    x_prime: str
    property_p: str
    headline_template_h: str


@dataclass(frozen=True)
class DistributionReport:
    labels: tuple[str, ...]
    fractions: tuple[float, ...]
    sample_size: int
    intervals: Optional[tuple[tuple[float, float], ...]] = None

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.labels, self.fractions))


@dataclass(frozen=True)
class LiftRow:
    label: str
    modified_fraction: float
    prior_fraction: float
    lift: Optional[float]  # None marks an undefined (zero-prior) lift


@dataclass(frozen=True)
class LiftTable:
    rows: tuple[LiftRow, ...]
    n_modified: int
    n_prior_chunks: int


@dataclass(frozen=True)
class CurvePoint:
    distance: int
    n: int
    mean: float
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class ConfusionTable:
    counts: dict  # (ConsensusClass, Origin) -> int

    ROW_ORDER = (ConsensusClass.CONSENSUS_SERIOUS, ConsensusClass.NO_CONSENSUS,
                 ConsensusClass.CONSENSUS_SATIRICAL)
    COL_ORDER = (Origin.SERIOUS, Origin.SATIRICAL, Origin.MODIFIED)

    def column_sum(self, origin: Origin) -> int:
        return sum(self.counts.get((row, origin), 0) for row in self.ROW_ORDER)


@dataclass(frozen=True)
class OppositionStats:
    opposition_fractions: dict
    abstract_fractions: dict
    sample_size: int


@dataclass(frozen=True)
class PairMetrics:
    pair: Pair
    token_distance: int
    chunk_distance: int
    original_chunks: ChunkSequence
    modified_chunks: ChunkSequence
    single_sub: Optional[SingleSubstitution]

    @property
    def mean_rating(self) -> Optional[float]:
        return mean_rating(self.pair.ratings) if self.pair.ratings else None


def compute_metrics(pairs: Sequence[Pair]) -> list[PairMetrics]:
    out = []
    for pair in pairs:
        original_chunks = headline_chunks(pair.original)
        modified_chunks = headline_chunks(pair.modified)
        out.append(PairMetrics(
            pair=pair,
            token_distance=pair_edit_distance(pair),
            chunk_distance=pair_chunk_distance(pair),
            original_chunks=original_chunks,
            modified_chunks=modified_chunks,
            single_sub=classify_single_substitution(original_chunks, modified_chunks),
        ))
    return out


# ---------------------------------------------------------------------------
# Distance distributions
# ---------------------------------------------------------------------------

def edit_distance_histogram(metrics: Sequence[PairMetrics]) -> DistributionReport:
    """Fraction of pairs at each token distance."""
    if not metrics:
        raise ValueError("edit_distance_histogram requires at least one pair")
    counts: dict[int, int] = {}
    for m in metrics:
        counts[m.token_distance] = counts.get(m.token_distance, 0) + 1
    total = len(metrics)
    distances = sorted(counts)
    return DistributionReport(
        labels=tuple(str(d) for d in distances),
        fractions=tuple(counts[d] / total for d in distances),
        sample_size=total,
    )


def chunk_distance_histogram(metrics: Sequence[PairMetrics]) -> DistributionReport:
    if not metrics:
        raise ValueError("chunk_distance_histogram requires at least one pair")
    counts: dict[int, int] = {}
    for m in metrics:
        counts[m.chunk_distance] = counts.get(m.chunk_distance, 0) + 1
    total = len(metrics)
    distances = sorted(counts)
    return DistributionReport(
        labels=tuple(str(d) for d in distances),
        fractions=tuple(counts[d] / total for d in distances),
        sample_size=total,
    )


_OP_LABELS = ("SUBSTITUTE", "DELETE", "INSERT")


def edit_op_distribution(
    metrics: Sequence[PairMetrics],
    only_distance: Optional[int] = None,
    micro: bool = False,
) -> DistributionReport:
    """Edit-operation mix over the canonical scripts.

    Macro (default): per-pair op proportions averaged across pairs.
    Micro: ops pooled over all pairs first.  Pairs at distance 0 carry no
    edit ops and are skipped.
    """
    from .alignment import OpKind, edit_script, tokenize

    selected = [m for m in metrics if m.token_distance > 0]
    if only_distance is not None:
        selected = [m for m in selected if m.token_distance == only_distance]
    if not selected:
        raise ValueError("edit_op_distribution requires at least one pair with edits")

    per_pair: list[dict[str, int]] = []
    for m in selected:
        script = edit_script(tokenize(m.pair.original.text), tokenize(m.pair.modified.text))
        counts = {label: 0 for label in _OP_LABELS}
        for op in script.ops:
            if op.kind is not OpKind.MATCH:
                counts[op.kind.value] += 1
        per_pair.append(counts)

    if micro:
        pooled = {label: sum(c[label] for c in per_pair) for label in _OP_LABELS}
        total = sum(pooled.values())
        fractions = tuple(pooled[label] / total for label in _OP_LABELS)
    else:
        shares = []
        for counts in per_pair:
            total = sum(counts.values())
            shares.append(tuple(counts[label] / total for label in _OP_LABELS))
        fractions = tuple(
            sum(s[i] for s in shares) / len(shares) for i in range(len(_OP_LABELS))
        )
    return DistributionReport(labels=_OP_LABELS, fractions=fractions, sample_size=len(selected))


# ---------------------------------------------------------------------------
# Distance vs rating tradeoff
# ---------------------------------------------------------------------------

def bootstrap_mean_ci(
    values: Sequence[float], resamples: int, rng: np.random.Generator, alpha: float = 0.05
) -> tuple[float, float]:
    """Percentile bootstrap interval for the mean."""
    arr = np.asarray(values, dtype=float)
    idx = rng.integers(0, len(arr), size=(resamples, len(arr)))
    means = arr[idx].mean(axis=1)
    lo, hi = np.percentile(means, [100 * alpha / 2, 100 * (1 - alpha / 2)])
    return float(lo), float(hi)


def distance_vs_rating_curve(
    metrics: Sequence[PairMetrics],
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = DEFAULT_SEED,
    min_ratings: int = 2,
) -> list[CurvePoint]:
    """Mean seriousness rating per distance with bootstrap 95% intervals."""
    buckets: dict[int, list[float]] = {}
    for m in metrics:
        if len(m.pair.ratings) >= min_ratings:
            buckets.setdefault(m.token_distance, []).append(m.mean_rating)
    rng = np.random.default_rng(seed)
    points = []
    for distance in sorted(buckets):
        values = buckets[distance]
        lo, hi = bootstrap_mean_ci(values, resamples, rng)
        points.append(CurvePoint(
            distance=distance, n=len(values),
            mean=float(np.mean(values)), ci_low=lo, ci_high=hi,
        ))
    return points


# ---------------------------------------------------------------------------
# Chunk-level analyses
# ---------------------------------------------------------------------------

def chunk_type_lift(
    single_subs: Sequence[SingleSubstitution],
    prior_corpus: Sequence[ChunkSequence],
) -> LiftTable:
    """Modified-chunk type distribution against the corpus prior."""
    if not single_subs:
        raise ValueError("chunk_type_lift requires at least one single-substitution pair")
    if not prior_corpus:
        raise ValueError("chunk_type_lift requires a non-empty prior corpus")
    modified_counts: dict[str, int] = {}
    for sub in single_subs:
        label = sub.chunk_before.label
        modified_counts[label] = modified_counts.get(label, 0) + 1
    prior_counts: dict[str, int] = {}
    n_prior = 0
    for cs in prior_corpus:
        for c in cs.chunks:
            prior_counts[c.label] = prior_counts.get(c.label, 0) + 1
            n_prior += 1
    labels = sorted(set(modified_counts) | set(prior_counts),
                    key=lambda l: (-modified_counts.get(l, 0), l))
    rows = []
    for label in labels:
        modified_fraction = modified_counts.get(label, 0) / len(single_subs)
        prior_fraction = prior_counts.get(label, 0) / n_prior
        if prior_fraction > 0:
            lift = modified_fraction / prior_fraction
        elif modified_fraction > 0:
            lift = None
        else:
            lift = 0.0
        rows.append(LiftRow(label, modified_fraction, prior_fraction, lift))
    return LiftTable(rows=tuple(rows), n_modified=len(single_subs), n_prior_chunks=n_prior)


def modified_position_distribution(
    metrics: Sequence[PairMetrics],
    lengths: Sequence[int] = (3, 4, 5, 6),
) -> dict[str, DistributionReport]:
    """Distribution of the 1-based modified chunk position, per headline length."""
    singles = [m for m in metrics if m.single_sub is not None]
    if not singles:
        raise ValueError("modified_position_distribution requires single-substitution pairs")
    groups: dict[str, list[int]] = {}
    for m in singles:
        length = len(m.original_chunks)
        key = str(length) if length in lengths else "other"
        groups.setdefault(key, []).append(m.single_sub.position)
    reports = {}
    for key, positions in sorted(groups.items()):
        counts: dict[int, int] = {}
        for p in positions:
            counts[p] = counts.get(p, 0) + 1
        report_positions = sorted(counts)
        reports[key] = DistributionReport(
            labels=tuple(str(p) for p in report_positions),
            fractions=tuple(counts[p] / len(positions) for p in report_positions),
            sample_size=len(positions),
        )
    return reports


# ---------------------------------------------------------------------------
# Ratings
# ---------------------------------------------------------------------------

def confusion_table(rated: Sequence[tuple[Headline, Sequence[float]]]) -> ConfusionTable:
    """Consensus class x origin counts for headlines with >= 2 ratings."""
    counts: dict[tuple[ConsensusClass, Origin], int] = {}
    for headline, values in rated:
        if len(values) < 2:
            raise ValueError(f"headline {headline.id} has fewer than 2 ratings")
        cls = aggregate_consensus(list(values))
        key = (cls, headline.origin)
        counts[key] = counts.get(key, 0) + 1
    return ConfusionTable(counts=counts)


def opposition_stats(annotations: Sequence[PairAnnotation]) -> OppositionStats:
    """Fractions of annotated pairs carrying each opposition / abstract class.

    Opposition labels are multi-valued, so those fractions need not sum to 1;
    abstract classes are single-valued and do.
    """
    if not annotations:
        raise ValueError("opposition_stats requires at least one annotation")
    n = len(annotations)
    opp: dict[str, int] = {}
    abstract: dict[str, int] = {}
    for a in annotations:
        for label in set(a.oppositions):
            opp[label] = opp.get(label, 0) + 1
        abstract[a.abstract_class.value] = abstract.get(a.abstract_class.value, 0) + 1
    return OppositionStats(
        opposition_fractions={k: v / n for k, v in sorted(opp.items())},
        abstract_fractions={k: v / n for k, v in sorted(abstract.items())},
        sample_size=n,
    )


# ---------------------------------------------------------------------------
# False-analogy template
# ---------------------------------------------------------------------------

ENTITY_SLOT = "{E}"


class TemplateError(ValueError):
    """The headline template must contain exactly one entity slot."""


def instantiate_false_analogy(frame: FalseAnalogyFrame) -> tuple[str, str]:
    """Fill the single entity slot: x' yields the serious headline, x the satirical."""
    occurrences = frame.headline_template_h.count(ENTITY_SLOT)
    if occurrences != 1:
        raise TemplateError(
            f"template must contain exactly one {ENTITY_SLOT} slot, found {occurrences}"
        )
    serious = frame.headline_template_h.replace(ENTITY_SLOT, frame.x_prime)
    satirical = frame.headline_template_h.replace(ENTITY_SLOT, frame.x)
    return serious, satirical
