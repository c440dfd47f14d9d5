"""Persistent storage for headlines, submissions, ratings, and annotations.

A single sqlite file (or ":memory:") holds everything; all mutations go
through one lock-guarded writer connection.  Headline ids are content
hashes, so re-importing the same corpus is a no-op and modified headlines
are keyed by (parent, text).
"""

from __future__ import annotations

import hashlib
import json
import sqlite3
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import chunking
from .alignment import edit_distance, similarity, tokenize
from .game import (
    GroundTruthEntry,
    Label,
    ModifiedCandidate,
    SatiricalEntry,
    TaskPool,
    aggregate_consensus,
    ConsensusClass,
    mean_rating,
    reward_unfun,
    RewardConfig,
)


class Origin(str, Enum):
    SATIRICAL = "SATIRICAL"
    SERIOUS = "SERIOUS"
    MODIFIED = "MODIFIED"


class UnknownHeadlineError(LookupError):
    """A submission or rating referenced a headline that is not stored."""


@dataclass(frozen=True)
class Headline:
    id: str
    text: str
    origin: Origin
    parent_id: Optional[str] = None
    gold_chunks: Optional[tuple[dict, ...]] = None


@dataclass(frozen=True)
class Submission:
    player_id: str
    original_id: str
    modified_text: str
    created_at: Optional[str] = None
    id: str = ""


@dataclass(frozen=True)
class RatingRecord:
    player_id: str
    target_id: str
    value: float
    created_at: Optional[str] = None
    id: str = ""


@dataclass(frozen=True)
class Pair:
    original: Headline
    modified: Headline
    ratings: tuple[float, ...]
    annotation: Optional[dict] = None
    cached_edit_distance: Optional[int] = None
    cached_chunk_distance: Optional[int] = None


@dataclass
class ImportReport:
    inserted: int = 0
    errors: list[tuple[int, str]] = field(default_factory=list)


@dataclass(frozen=True)
class PlayerProfile:
    player_id: str
    unfun_reward: float
    rating_reward: float
    submissions: int
    ratings: int


_ANNOTATION_KEYS = ("oppositions", "abstract_class", "mechanism", "explicit_side")


def headline_chunks(headline: Headline) -> chunking.ChunkSequence:
    """Gold chunk annotations when present, the rule-based chunker otherwise."""
    if headline.gold_chunks:
        return chunking.chunk_sequence_from_gold(headline.gold_chunks)
    return chunking.chunk_text(headline.text)


def pair_edit_distance(pair: Pair) -> int:
    if pair.cached_edit_distance is not None:
        return pair.cached_edit_distance
    return edit_distance(tokenize(pair.original.text), tokenize(pair.modified.text))


def pair_chunk_distance(pair: Pair) -> int:
    if pair.cached_chunk_distance is not None:
        return pair.cached_chunk_distance
    return chunking.chunk_edit_distance(headline_chunks(pair.original),
                                        headline_chunks(pair.modified))

_SCHEMA = """
CREATE TABLE IF NOT EXISTS headlines (
    id TEXT PRIMARY KEY,
    text TEXT NOT NULL,
    origin TEXT NOT NULL,
    parent_id TEXT,
    gold_chunks TEXT,
    cached_edit_distance INTEGER,
    cached_chunk_distance INTEGER,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS submissions (
    id TEXT PRIMARY KEY,
    player_id TEXT NOT NULL,
    original_id TEXT NOT NULL,
    modified_id TEXT NOT NULL,
    modified_text TEXT NOT NULL,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS ratings (
    seq INTEGER PRIMARY KEY AUTOINCREMENT,
    id TEXT UNIQUE NOT NULL,
    player_id TEXT NOT NULL,
    target_id TEXT NOT NULL,
    value REAL NOT NULL,
    created_at TEXT NOT NULL,
    UNIQUE (player_id, target_id)
);
CREATE TABLE IF NOT EXISTS annotations (
    pair_id TEXT PRIMARY KEY,
    payload TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS assignments (
    seq INTEGER PRIMARY KEY AUTOINCREMENT,
    player_id TEXT NOT NULL,
    modified_id TEXT NOT NULL,
    ground_truth_id TEXT NOT NULL,
    ground_truth_label TEXT NOT NULL,
    open INTEGER NOT NULL DEFAULT 1,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS reward_bank (
    player_id TEXT PRIMARY KEY,
    rating_reward REAL NOT NULL DEFAULT 0
);
CREATE INDEX IF NOT EXISTS idx_headlines_origin ON headlines(origin);
CREATE INDEX IF NOT EXISTS idx_ratings_target ON ratings(target_id);
CREATE INDEX IF NOT EXISTS idx_submissions_modified ON submissions(modified_id);
"""


def _utcnow() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def normalize_text(text: str) -> str:
    return " ".join(text.split())


def _hash(*parts: str) -> str:
    digest = hashlib.sha256("\n".join(parts).encode("utf-8")).hexdigest()
    return digest[:16]


def headline_id(text: str) -> str:
    return _hash(normalize_text(text))


def modified_headline_id(parent_id: str, text: str) -> str:
    return _hash(parent_id, normalize_text(text))


class CorpusStore:
    def __init__(self, path: str | Path = ":memory:"):
        self.path = str(path)
        self._lock = threading.RLock()
        self._conn = sqlite3.connect(self.path, check_same_thread=False)
        self._conn.row_factory = sqlite3.Row
        with self._lock, self._conn:
            self._conn.executescript(_SCHEMA)

    def close(self) -> None:
        self._conn.close()

    # -- headlines ---------------------------------------------------------

    def _row_to_headline(self, row: sqlite3.Row) -> Headline:
        gold = tuple(json.loads(row["gold_chunks"])) if row["gold_chunks"] else None
        return Headline(
            id=row["id"], text=row["text"], origin=Origin(row["origin"]),
            parent_id=row["parent_id"], gold_chunks=gold,
        )

    def get_headline(self, hid: str) -> Optional[Headline]:
        row = self._conn.execute("SELECT * FROM headlines WHERE id = ?", (hid,)).fetchone()
        return self._row_to_headline(row) if row else None

    def headlines_by_origin(self, origin: Origin) -> list[Headline]:
        rows = self._conn.execute(
            "SELECT * FROM headlines WHERE origin = ? ORDER BY id", (origin.value,)
        ).fetchall()
        return [self._row_to_headline(r) for r in rows]

    def _insert_headline(self, text: str, origin: Origin, parent_id: Optional[str] = None,
                         gold_chunks: Optional[Sequence[dict]] = None,
                         cached_edit_distance: Optional[int] = None,
                         cached_chunk_distance: Optional[int] = None) -> tuple[Headline, bool]:
        norm = normalize_text(text)
        if not norm:
            raise ValueError("headline text is empty")
        hid = modified_headline_id(parent_id, norm) if origin is Origin.MODIFIED else headline_id(norm)
        with self._lock, self._conn:
            existing = self.get_headline(hid)
            if existing:
                return existing, False
            self._conn.execute(
                "INSERT INTO headlines (id, text, origin, parent_id, gold_chunks,"
                " cached_edit_distance, cached_chunk_distance, created_at)"
                " VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
                (hid, norm, origin.value, parent_id,
                 json.dumps(list(gold_chunks), ensure_ascii=False) if gold_chunks else None,
                 cached_edit_distance, cached_chunk_distance, _utcnow()),
            )
        return Headline(hid, norm, origin, parent_id,
                        tuple(gold_chunks) if gold_chunks else None), True

    def add_headline(self, text: str, origin: Origin,
                     gold_chunks: Optional[Sequence[dict]] = None) -> Headline:
        if origin is Origin.MODIFIED:
            raise ValueError("modified headlines enter via record_submission")
        headline, _ = self._insert_headline(text, origin, gold_chunks=gold_chunks)
        return headline

    # -- corpus import -----------------------------------------------------

    def import_corpus(self, path: str | Path, origin: Origin) -> ImportReport:
        """Load a JSONL corpus; malformed lines are reported, not fatal."""
        if origin not in (Origin.SATIRICAL, Origin.SERIOUS):
            raise ValueError("corpus origin must be SATIRICAL or SERIOUS")
        report = ImportReport()
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    text = record["text"]
                    if not isinstance(text, str) or not text.strip():
                        raise ValueError("missing or empty 'text'")
                    gold = record.get("gold_chunks")
                    if gold is not None:
                        self._validate_gold(text, gold)
                    _, inserted = self._insert_headline(text, origin, gold_chunks=gold)
                    if inserted:
                        report.inserted += 1
                except (KeyError, ValueError, TypeError) as exc:
                    report.errors.append((lineno, str(exc)))
        return report

    @staticmethod
    def _validate_gold(text: str, gold) -> None:
        cs = chunking.chunk_sequence_from_gold(gold)
        flat = "".join("".join(c.tokens) for c in cs.chunks)
        if flat.replace(" ", "") != "".join(normalize_text(text).split()):
            raise ValueError("gold chunks do not cover the headline text")

    # -- submissions & ratings ----------------------------------------------

    def record_submission(self, submission: Submission) -> Headline:
        """Store a modified headline; idempotent per (player, parent, text)."""
        parent = self.get_headline(submission.original_id)
        if parent is None:
            raise UnknownHeadlineError(submission.original_id)
        if parent.origin is not Origin.SATIRICAL:
            raise ValueError("submissions must modify a satirical headline")
        norm = normalize_text(submission.modified_text)
        if not norm:
            raise ValueError("modified text is empty")
        sid = _hash(submission.player_id, parent.id, norm)
        created = submission.created_at or _utcnow()
        with self._lock, self._conn:
            headline, _ = self._insert_headline(norm, Origin.MODIFIED, parent_id=parent.id)
            self._conn.execute(
                "INSERT OR IGNORE INTO submissions"
                " (id, player_id, original_id, modified_id, modified_text, created_at)"
                " VALUES (?, ?, ?, ?, ?, ?)",
                (sid, submission.player_id, parent.id, headline.id, norm, created),
            )
        return headline

    def get_submission(self, player_id: str, original_id: str, modified_text: str) -> Optional[Submission]:
        sid = _hash(player_id, original_id, normalize_text(modified_text))
        row = self._conn.execute("SELECT * FROM submissions WHERE id = ?", (sid,)).fetchone()
        if not row:
            return None
        return Submission(row["player_id"], row["original_id"], row["modified_text"],
                          row["created_at"], row["id"])

    def record_rating(self, rating: RatingRecord) -> str:
        """Returns 'accepted' or 'duplicate'; validates target and range."""
        if not 0.0 <= rating.value <= 1.0:
            raise ValueError(f"rating value {rating.value} outside [0, 1]")
        if self.get_headline(rating.target_id) is None:
            raise UnknownHeadlineError(rating.target_id)
        rid = rating.id or _hash(rating.player_id, rating.target_id)
        created = rating.created_at or _utcnow()
        with self._lock, self._conn:
            try:
                self._conn.execute(
                    "INSERT INTO ratings (id, player_id, target_id, value, created_at)"
                    " VALUES (?, ?, ?, ?, ?)",
                    (rid, rating.player_id, rating.target_id, rating.value, created),
                )
            except sqlite3.IntegrityError:
                return "duplicate"
        return "accepted"

    def ratings_for(self, target_id: str) -> list[float]:
        rows = self._conn.execute(
            "SELECT value FROM ratings WHERE target_id = ? ORDER BY seq", (target_id,)
        ).fetchall()
        return [r["value"] for r in rows]

    # -- annotations ---------------------------------------------------------

    def set_annotation(self, pair_id: str, payload: dict) -> None:
        if self.get_headline(pair_id) is None:
            raise UnknownHeadlineError(pair_id)
        clean = {k: payload[k] for k in _ANNOTATION_KEYS if k in payload}
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT OR REPLACE INTO annotations (pair_id, payload) VALUES (?, ?)",
                (pair_id, json.dumps(clean, ensure_ascii=False)),
            )

    def get_annotation(self, pair_id: str) -> Optional[dict]:
        row = self._conn.execute(
            "SELECT payload FROM annotations WHERE pair_id = ?", (pair_id,)
        ).fetchone()
        return json.loads(row["payload"]) if row else None

    def import_annotations(self, path: str | Path) -> ImportReport:
        """Sidecar JSONL: one {pair_id, oppositions, ...} object per line."""
        report = ImportReport()
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    self.set_annotation(record["pair_id"], record)
                    report.inserted += 1
                except (KeyError, ValueError, TypeError, UnknownHeadlineError) as exc:
                    report.errors.append((lineno, str(exc)))
        return report

    # -- pair views ----------------------------------------------------------

    def _pair_for_modified(self, row: sqlite3.Row) -> Pair:
        original = self.get_headline(row["parent_id"])
        return Pair(
            original=original,
            modified=self._row_to_headline(row),
            ratings=tuple(self.ratings_for(row["id"])),
            annotation=self.get_annotation(row["id"]),
            cached_edit_distance=row["cached_edit_distance"],
            cached_chunk_distance=row["cached_chunk_distance"],
        )

    def all_pairs(self) -> list[Pair]:
        """Every (original, modified) pair, ordered by (original id, modified id)."""
        rows = self._conn.execute(
            "SELECT * FROM headlines WHERE origin = ? ORDER BY parent_id, id",
            (Origin.MODIFIED.value,),
        ).fetchall()
        return [self._pair_for_modified(r) for r in rows]

    def successful_pairs(self) -> list[Pair]:
        """Pairs whose modified headline reached consensus-serious with >= 2 ratings."""
        out = []
        for pair in self.all_pairs():
            if len(pair.ratings) >= 2 and (
                aggregate_consensus(pair.ratings) is ConsensusClass.CONSENSUS_SERIOUS
            ):
                out.append(pair)
        return out

    def rated_headlines(self, min_ratings: int = 2) -> list[tuple[Headline, list[float]]]:
        rows = self._conn.execute("SELECT * FROM headlines ORDER BY id").fetchall()
        out = []
        for row in rows:
            values = self.ratings_for(row["id"])
            if len(values) >= min_ratings:
                out.append((self._row_to_headline(row), values))
        return out

    # -- export / import of pairs ---------------------------------------------

    def _chunk_sequence(self, headline: Headline) -> chunking.ChunkSequence:
        return headline_chunks(headline)

    def export_pairs_text(self) -> str:
        lines = []
        for pair in self.all_pairs():
            record = {
                "original": pair.original.text,
                "modified": pair.modified.text,
                "ratings": list(pair.ratings),
                "edit_distance": pair_edit_distance(pair),
                "chunk_edit_distance": pair_chunk_distance(pair),
            }
            if pair.annotation:
                record["annotations"] = {
                    k: pair.annotation[k] for k in _ANNOTATION_KEYS if k in pair.annotation
                }
            lines.append(json.dumps(record, ensure_ascii=False))
        return "".join(line + "\n" for line in lines)

    def export_pairs(self, path: str | Path) -> int:
        text = self.export_pairs_text()
        Path(path).write_text(text, encoding="utf-8")
        return text.count("\n")

    def import_pairs(self, path: str | Path, field_map: Optional[dict] = None) -> ImportReport:
        """Re-import a pair export; a field_map renames source fields per origin shim."""
        fm = {"original": "original", "modified": "modified", "ratings": "ratings",
              "edit_distance": "edit_distance", "chunk_edit_distance": "chunk_edit_distance",
              "annotations": "annotations"}
        if field_map:
            fm.update(field_map)
        report = ImportReport()
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    original_text = record[fm["original"]]
                    modified_text = record[fm["modified"]]
                    ratings = record.get(fm["ratings"], []) or []
                    original, _ = self._insert_headline(original_text, Origin.SATIRICAL)
                    modified, _ = self._insert_headline(
                        modified_text, Origin.MODIFIED, parent_id=original.id,
                        cached_edit_distance=record.get(fm["edit_distance"]),
                        cached_chunk_distance=record.get(fm["chunk_edit_distance"]),
                    )
                    sid = _hash("import", original.id, modified.id)
                    with self._lock, self._conn:
                        self._conn.execute(
                            "INSERT OR IGNORE INTO submissions"
                            " (id, player_id, original_id, modified_id, modified_text, created_at)"
                            " VALUES (?, ?, ?, ?, ?, ?)",
                            (sid, "import", original.id, modified.id, modified.text, _utcnow()),
                        )
                    for idx, value in enumerate(ratings):
                        self.record_rating(RatingRecord(f"import-{idx}", modified.id, float(value)))
                    annotation = record.get(fm["annotations"])
                    if annotation:
                        self.set_annotation(modified.id, annotation)
                    report.inserted += 1
                except (KeyError, ValueError, TypeError) as exc:
                    report.errors.append((lineno, str(exc)))
        return report

    # -- task sampling support -------------------------------------------------

    def task_pool(self) -> TaskPool:
        satirical = [
            SatiricalEntry(h.id, h.text, self._chunk_sequence(h).pattern)
            for h in self.headlines_by_origin(Origin.SATIRICAL)
        ]
        modified = []
        for row in self._conn.execute(
            "SELECT * FROM headlines WHERE origin = ? ORDER BY id", (Origin.MODIFIED.value,)
        ).fetchall():
            hid = row["id"]
            authors = {
                r["player_id"] for r in self._conn.execute(
                    "SELECT player_id FROM submissions WHERE modified_id = ?", (hid,)
                ).fetchall()
            }
            raters = {
                r["player_id"] for r in self._conn.execute(
                    "SELECT player_id FROM ratings WHERE target_id = ?", (hid,)
                ).fetchall()
            }
            raters |= {
                r["player_id"] for r in self._conn.execute(
                    "SELECT player_id FROM assignments WHERE modified_id = ? AND open = 1", (hid,)
                ).fetchall()
            }
            count = self._conn.execute(
                "SELECT COUNT(*) AS c FROM ratings WHERE target_id = ?", (hid,)
            ).fetchone()["c"]
            modified.append(ModifiedCandidate(hid, row["text"], frozenset(authors),
                                              count, frozenset(raters)))
        truth = []
        for origin, label in ((Origin.SERIOUS, Label.SERIOUS), (Origin.SATIRICAL, Label.SATIRICAL)):
            for h in self.headlines_by_origin(origin):
                raters = {
                    r["player_id"] for r in self._conn.execute(
                        "SELECT player_id FROM ratings WHERE target_id = ?", (h.id,)
                    ).fetchall()
                }
                raters |= {
                    r["player_id"] for r in self._conn.execute(
                        "SELECT player_id FROM assignments WHERE ground_truth_id = ? AND open = 1",
                        (h.id,)
                    ).fetchall()
                }
                truth.append(GroundTruthEntry(h.id, h.text, label, frozenset(raters)))
        return TaskPool(satirical=satirical, modified=modified, ground_truth=truth)

    def open_assignment(self, player_id: str, modified_id: str,
                        ground_truth_id: str, label: Label) -> None:
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO assignments (player_id, modified_id, ground_truth_id,"
                " ground_truth_label, open, created_at) VALUES (?, ?, ?, ?, 1, ?)",
                (player_id, modified_id, ground_truth_id, label.value, _utcnow()),
            )

    def find_open_assignment(self, player_id: str, item_ids: Iterable[str]):
        ids = set(item_ids)
        rows = self._conn.execute(
            "SELECT * FROM assignments WHERE player_id = ? AND open = 1 ORDER BY seq",
            (player_id,),
        ).fetchall()
        for row in rows:
            if {row["modified_id"], row["ground_truth_id"]} == ids:
                return row
        return None

    def close_assignment(self, seq: int) -> None:
        with self._lock, self._conn:
            self._conn.execute("UPDATE assignments SET open = 0 WHERE seq = ?", (seq,))

    # -- rewards / profiles ------------------------------------------------------

    def bank_rating_reward(self, player_id: str, amount: float) -> None:
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO reward_bank (player_id, rating_reward) VALUES (?, ?)"
                " ON CONFLICT(player_id) DO UPDATE SET rating_reward = rating_reward + ?",
                (player_id, amount, amount),
            )

    def unfun_reward_for(self, player_id: str, cfg: RewardConfig = RewardConfig()) -> float:
        """Current edit-task reward: recomputed from today's ratings on each read."""
        total = 0.0
        rows = self._conn.execute(
            "SELECT original_id, modified_id FROM submissions WHERE player_id = ?",
            (player_id,),
        ).fetchall()
        for row in rows:
            values = self.ratings_for(row["modified_id"])
            if not values:
                continue
            original = self.get_headline(row["original_id"])
            modified = self.get_headline(row["modified_id"])
            sim = similarity(tokenize(original.text), tokenize(modified.text))
            total += reward_unfun(mean_rating(values), sim, cfg)
        return total

    def player_profile(self, player_id: str, cfg: RewardConfig = RewardConfig()) -> PlayerProfile:
        row = self._conn.execute(
            "SELECT rating_reward FROM reward_bank WHERE player_id = ?", (player_id,)
        ).fetchone()
        n_subs = self._conn.execute(
            "SELECT COUNT(*) AS c FROM submissions WHERE player_id = ?", (player_id,)
        ).fetchone()["c"]
        n_ratings = self._conn.execute(
            "SELECT COUNT(*) AS c FROM ratings WHERE player_id = ?", (player_id,)
        ).fetchone()["c"]
        return PlayerProfile(
            player_id=player_id,
            unfun_reward=self.unfun_reward_for(player_id, cfg),
            rating_reward=row["rating_reward"] if row else 0.0,
            submissions=n_subs,
            ratings=n_ratings,
        )

    def leaderboard(self, limit: int = 10, cfg: RewardConfig = RewardConfig()) -> list[PlayerProfile]:
        players = {
            r["player_id"] for r in self._conn.execute("SELECT player_id FROM submissions")
        } | {
            r["player_id"] for r in self._conn.execute("SELECT player_id FROM reward_bank")
        }
        profiles = [self.player_profile(p, cfg) for p in sorted(players)]
        profiles.sort(key=lambda p: (-(p.unfun_reward + p.rating_reward), p.player_id))
        return profiles[:limit]
