"""Corpus store: import/dedup, submissions, ratings, pair export round-trip."""

import json
import math

import pytest

from unfun.game import RewardConfig
from unfun.store import (
    CorpusStore,
    Origin,
    RatingRecord,
    Submission,
    UnknownHeadlineError,
    headline_id,
    normalize_text,
)

SATIRICAL = "God diagnosed with bipolar disorder"
SERIOUS_VERSION = "Bob Dylan diagnosed with bipolar disorder"


@pytest.fixture
def store():
    s = CorpusStore(":memory:")
    yield s
    s.close()


def _write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(record if isinstance(record, str) else json.dumps(record))
            fh.write("\n")


class TestImportCorpus:
    def test_three_valid_lines(self, store, tmp_path):
        p = tmp_path / "c.jsonl"
        _write_jsonl(p, [{"text": f"headline {i}"} for i in range(3)])
        report = store.import_corpus(p, Origin.SATIRICAL)
        assert report.inserted == 3 and not report.errors

    def test_duplicate_line_deduped(self, store, tmp_path):
        p = tmp_path / "c.jsonl"
        _write_jsonl(p, [{"text": "same headline"}, {"text": "same  headline "}, {"text": "other"}])
        report = store.import_corpus(p, Origin.SATIRICAL)
        assert report.inserted == 2

    def test_malformed_line_reported(self, store, tmp_path):
        p = tmp_path / "c.jsonl"
        _write_jsonl(p, [{"text": "ok one"}, "{not json", {"text": "ok two"}])
        report = store.import_corpus(p, Origin.SATIRICAL)
        assert report.inserted == 2
        assert len(report.errors) == 1 and report.errors[0][0] == 2

    def test_reimport_is_noop(self, store, tmp_path):
        p = tmp_path / "c.jsonl"
        _write_jsonl(p, [{"text": "alpha"}, {"text": "beta"}])
        assert store.import_corpus(p, Origin.SERIOUS).inserted == 2
        assert store.import_corpus(p, Origin.SERIOUS).inserted == 0

    def test_unreadable_file_fatal(self, store, tmp_path):
        with pytest.raises(OSError):
            store.import_corpus(tmp_path / "missing.jsonl", Origin.SATIRICAL)

    def test_gold_chunks_stored(self, store, tmp_path):
        p = tmp_path / "c.jsonl"
        _write_jsonl(p, [{
            "text": SATIRICAL,
            "gold_chunks": [
                {"label": "NP", "tokens": ["God"]},
                {"label": "VP", "tokens": ["diagnosed"]},
                {"label": "PP", "tokens": ["with"]},
                {"label": "NP", "tokens": ["bipolar", "disorder"]},
            ],
        }])
        assert store.import_corpus(p, Origin.SATIRICAL).inserted == 1
        h = store.get_headline(headline_id(SATIRICAL))
        assert h.gold_chunks and h.gold_chunks[0]["label"] == "NP"

    def test_gold_chunks_must_cover_text(self, store, tmp_path):
        p = tmp_path / "c.jsonl"
        _write_jsonl(p, [{
            "text": SATIRICAL,
            "gold_chunks": [{"label": "NP", "tokens": ["God"]}],
        }])
        report = store.import_corpus(p, Origin.SATIRICAL)
        assert report.inserted == 0 and len(report.errors) == 1

    def test_content_hash_stability(self, store):
        a = store.add_headline("Some  Headline ", Origin.SATIRICAL)
        b = store.add_headline("Some Headline", Origin.SATIRICAL)
        assert a.id == b.id == headline_id("Some Headline")
        assert normalize_text("Some  Headline ") == "Some Headline"


class TestSubmissions:
    def test_creates_modified_with_parent(self, store):
        parent = store.add_headline(SATIRICAL, Origin.SATIRICAL)
        modified = store.record_submission(Submission("p1", parent.id, SERIOUS_VERSION))
        assert modified.origin is Origin.MODIFIED
        assert modified.parent_id == parent.id
        assert store.get_headline(modified.id).text == SERIOUS_VERSION

    def test_idempotent_resubmission(self, store):
        parent = store.add_headline(SATIRICAL, Origin.SATIRICAL)
        first = store.record_submission(Submission("p1", parent.id, SERIOUS_VERSION))
        again = store.record_submission(Submission("p1", parent.id, SERIOUS_VERSION))
        assert first.id == again.id
        rows = store._conn.execute("SELECT COUNT(*) AS c FROM submissions").fetchone()
        assert rows["c"] == 1

    def test_empty_text_rejected(self, store):
        parent = store.add_headline(SATIRICAL, Origin.SATIRICAL)
        with pytest.raises(ValueError):
            store.record_submission(Submission("p1", parent.id, "   "))

    def test_unknown_parent_rejected(self, store):
        with pytest.raises(UnknownHeadlineError):
            store.record_submission(Submission("p1", "nope", "text"))

    def test_parent_must_be_satirical(self, store):
        serious = store.add_headline("Markets close higher", Origin.SERIOUS)
        with pytest.raises(ValueError):
            store.record_submission(Submission("p1", serious.id, "Markets close lower"))


class TestRatings:
    def test_accept_then_duplicate(self, store):
        h = store.add_headline(SATIRICAL, Origin.SATIRICAL)
        assert store.record_rating(RatingRecord("p1", h.id, 0.8)) == "accepted"
        assert store.record_rating(RatingRecord("p1", h.id, 0.3)) == "duplicate"
        assert store.ratings_for(h.id) == [0.8]

    def test_out_of_range_rejected(self, store):
        h = store.add_headline(SATIRICAL, Origin.SATIRICAL)
        with pytest.raises(ValueError):
            store.record_rating(RatingRecord("p1", h.id, 1.5))

    def test_unknown_target_rejected(self, store):
        with pytest.raises(UnknownHeadlineError):
            store.record_rating(RatingRecord("p1", "nope", 0.5))


def _seed_pair(store, ratings=(0.9, 0.8)):
    parent = store.add_headline(SATIRICAL, Origin.SATIRICAL)
    modified = store.record_submission(Submission("author", parent.id, SERIOUS_VERSION))
    for i, v in enumerate(ratings):
        store.record_rating(RatingRecord(f"rater{i}", modified.id, v))
    return parent, modified


class TestSuccessfulPairs:
    def test_consensus_serious_included(self, store):
        _, modified = _seed_pair(store, (0.9, 0.8))
        pairs = store.successful_pairs()
        assert len(pairs) == 1 and pairs[0].modified.id == modified.id

    def test_single_rating_excluded(self, store):
        _seed_pair(store, (0.9,))
        assert store.successful_pairs() == []

    def test_consensus_satirical_excluded(self, store):
        _seed_pair(store, (0.1, 0.2))
        assert store.successful_pairs() == []


class TestExportImport:
    def test_empty_store_exports_nothing(self, store, tmp_path):
        assert store.export_pairs(tmp_path / "out.jsonl") == 0

    def test_one_pair_record_schema(self, store, tmp_path):
        _seed_pair(store)
        store.set_annotation(store.all_pairs()[0].modified.id, {
            "oppositions": ["high/low stature", "religion/no religion"],
            "abstract_class": "POSSIBLE_IMPOSSIBLE",
            "mechanism": "FALSE_ANALOGY",
            "explicit_side": "BAD",
        })
        out = tmp_path / "out.jsonl"
        assert store.export_pairs(out) == 1
        record = json.loads(out.read_text(encoding="utf-8"))
        assert record["original"] == SATIRICAL
        assert record["modified"] == SERIOUS_VERSION
        assert record["ratings"] == [0.9, 0.8]
        assert record["edit_distance"] == 2
        assert record["chunk_edit_distance"] == 1
        assert record["annotations"]["abstract_class"] == "POSSIBLE_IMPOSSIBLE"

    def test_roundtrip_byte_identical(self, store, tmp_path):
        _seed_pair(store)
        parent2 = store.add_headline("Nation demands new hobby", Origin.SATIRICAL)
        store.record_submission(Submission("author", parent2.id, "Nation gets new hobby"))
        store.set_annotation(store.all_pairs()[0].modified.id,
                             {"oppositions": ["life/death"], "abstract_class": "NORMAL_ABNORMAL"})
        first = tmp_path / "first.jsonl"
        second = tmp_path / "second.jsonl"
        store.export_pairs(first)
        reimported = CorpusStore(":memory:")
        report = reimported.import_pairs(first)
        assert report.inserted == 2 and not report.errors
        reimported.export_pairs(second)
        assert first.read_bytes() == second.read_bytes()

    def test_field_map_shim(self, store, tmp_path):
        src = tmp_path / "theirs.jsonl"
        _write_jsonl(src, [{"h": SATIRICAL, "hprime": SERIOUS_VERSION, "scores": [0.9, 0.6]}])
        report = store.import_pairs(src, field_map={
            "original": "h", "modified": "hprime", "ratings": "scores",
        })
        assert report.inserted == 1
        pair = store.all_pairs()[0]
        assert pair.original.text == SATIRICAL
        assert pair.ratings == (0.9, 0.6)

    def test_referential_integrity(self, store):
        _seed_pair(store)
        for pair in store.all_pairs():
            assert store.get_headline(pair.modified.parent_id) is not None
        rows = store._conn.execute("SELECT target_id FROM ratings").fetchall()
        for row in rows:
            assert store.get_headline(row["target_id"]) is not None


class TestRewards:
    def test_unfun_reward_example(self, store):
        parent = store.add_headline(SATIRICAL, Origin.SATIRICAL)
        modified = store.record_submission(Submission("author", parent.id, SERIOUS_VERSION))
        store.record_rating(RatingRecord("r1", modified.id, 0.8))
        store.record_rating(RatingRecord("r2", modified.id, 0.7))
        reward = store.unfun_reward_for("author")
        assert reward == pytest.approx(1000 * math.sqrt(0.75 * (2 / 3)), abs=1e-6)

    def test_leaderboard_ordering(self, store):
        parent = store.add_headline(SATIRICAL, Origin.SATIRICAL)
        modified = store.record_submission(Submission("alice", parent.id, SERIOUS_VERSION))
        store.record_rating(RatingRecord("r1", modified.id, 0.8))
        store.record_rating(RatingRecord("r2", modified.id, 0.7))
        store.bank_rating_reward("bob", 200.0)
        board = store.leaderboard(cfg=RewardConfig())
        assert [p.player_id for p in board] == ["alice", "bob"]
        assert board[0].unfun_reward == pytest.approx(707.1, abs=0.05)
        assert board[1].rating_reward == pytest.approx(200.0)
