"""Operator command line: ingest corpora, run the service, emit reports."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import analysis
from .config import load_config
from .store import CorpusStore, Origin, headline_chunks

REPORT_NAMES = ("edit-dist", "ops", "tradeoff", "lift", "positions", "confusion", "oppositions")


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _report_rows(name: str, store: CorpusStore, seed: int, resamples: int):
    """Compute one report; returns (csv_header, csv_rows, json_payload)."""
    if name == "edit-dist":
        metrics = analysis.compute_metrics(store.all_pairs())
        report = analysis.edit_distance_histogram(metrics)
        rows = [[label, fraction] for label, fraction in zip(report.labels, report.fractions)]
        return (["distance", "fraction"], rows,
                {"sample_size": report.sample_size, "fractions": report.as_dict()})

    if name == "ops":
        metrics = analysis.compute_metrics(store.successful_pairs())
        macro = analysis.edit_op_distribution(metrics)
        micro = analysis.edit_op_distribution(metrics, micro=True)
        rows = [
            [label, macro.as_dict()[label], micro.as_dict()[label]]
            for label in macro.labels
        ]
        return (["op", "macro_fraction", "micro_fraction"], rows,
                {"sample_size": macro.sample_size,
                 "macro": macro.as_dict(), "micro": micro.as_dict()})

    if name == "tradeoff":
        metrics = analysis.compute_metrics(store.all_pairs())
        curve = analysis.distance_vs_rating_curve(metrics, resamples=resamples, seed=seed)
        if not curve:
            raise ValueError("no pairs with at least 2 ratings")
        rows = [[p.distance, p.n, p.mean, p.ci_low, p.ci_high] for p in curve]
        return (["distance", "n", "mean_rating", "ci_low", "ci_high"], rows,
                {"seed": seed, "resamples": resamples,
                 "points": [p.__dict__ for p in curve]})

    if name == "lift":
        metrics = analysis.compute_metrics(store.successful_pairs())
        subs = [m.single_sub for m in metrics if m.single_sub is not None]
        prior = [headline_chunks(h) for h in store.headlines_by_origin(Origin.SATIRICAL)]
        table = analysis.chunk_type_lift(subs, prior)
        rows = [
            [r.label, r.modified_fraction, r.prior_fraction,
             "" if r.lift is None else r.lift]
            for r in table.rows
        ]
        return (["label", "modified_fraction", "prior_fraction", "lift"], rows,
                {"n_modified": table.n_modified, "n_prior_chunks": table.n_prior_chunks,
                 "rows": [r.__dict__ for r in table.rows]})

    if name == "positions":
        metrics = analysis.compute_metrics(store.successful_pairs())
        reports = analysis.modified_position_distribution(metrics)
        rows = []
        payload = {}
        for length, report in reports.items():
            payload[length] = {"sample_size": report.sample_size,
                               "fractions": report.as_dict()}
            for position, fraction in zip(report.labels, report.fractions):
                rows.append([length, position, fraction, report.sample_size])
        return (["chunk_count", "position", "fraction", "n"], rows, payload)

    if name == "confusion":
        rated = store.rated_headlines(min_ratings=2)
        if not rated:
            raise ValueError("no headlines with at least 2 ratings")
        table = analysis.confusion_table(rated)
        rows = []
        payload = {}
        for cls in analysis.ConfusionTable.ROW_ORDER:
            row = [cls.value]
            for origin in analysis.ConfusionTable.COL_ORDER:
                count = table.counts.get((cls, origin), 0)
                row.append(count)
                payload.setdefault(cls.value, {})[origin.value] = count
            rows.append(row)
        return (["aggregate_rating", "serious", "satirical", "modified"], rows, payload)

    if name == "oppositions":
        annotations = []
        for pair in store.all_pairs():
            if pair.annotation:
                annotations.append(analysis.PairAnnotation.from_dict(pair.modified.id,
                                                                     pair.annotation))
        stats = analysis.opposition_stats(annotations)
        rows = [["opposition", label, fraction]
                for label, fraction in stats.opposition_fractions.items()]
        rows += [["abstract", label, fraction]
                 for label, fraction in stats.abstract_fractions.items()]
        return (["kind", "label", "fraction"], rows,
                {"sample_size": stats.sample_size,
                 "oppositions": stats.opposition_fractions,
                 "abstract": stats.abstract_fractions})

    raise ValueError(f"unknown report {name!r}")


def cmd_ingest(args) -> int:
    store = CorpusStore(args.db)
    try:
        report = store.import_corpus(args.path, Origin(args.origin.upper()))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for lineno, message in report.errors:
        print(f"line {lineno}: {message}", file=sys.stderr)
    print(f"inserted: {report.inserted}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    try:
        config = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"bad config: {exc}", file=sys.stderr)
        return 1
    store = CorpusStore(config.db_path)
    for path, origin in ((config.satirical_corpus, Origin.SATIRICAL),
                         (config.serious_corpus, Origin.SERIOUS)):
        if path:
            report = store.import_corpus(path, origin)
            print(f"loaded {origin.value.lower()} corpus: {report.inserted} new")
    app = create_app(store, config)
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"server failed: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_analyze(args) -> int:
    store = CorpusStore(args.db)
    if args.annotations:
        report = store.import_annotations(args.annotations)
        for lineno, message in report.errors:
            print(f"annotations line {lineno}: {message}", file=sys.stderr)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = REPORT_NAMES if args.report == "all" else (args.report,)
    combined = {}
    for name in names:
        try:
            header, rows, payload = _report_rows(name, store, args.seed, args.resamples)
        except ValueError as exc:
            print(f"error: {name}: {exc}", file=sys.stderr)
            return 1
        _write_csv(out_dir / f"{name}.csv", header, rows)
        combined[name] = payload
        print(f"wrote {out_dir / (name + '.csv')}")
    json_path = out_dir / "reports.json"
    json_path.write_text(json.dumps(combined, indent=2, sort_keys=True) + "\n",
                         encoding="utf-8")
    print(f"wrote {json_path}")
    return 0


def cmd_export(args) -> int:
    store = CorpusStore(args.db)
    count = store.export_pairs(args.out)
    print(f"exported: {count}")
    return 0


def cmd_import_pairs(args) -> int:
    store = CorpusStore(args.db)
    field_map = json.loads(Path(args.map).read_text(encoding="utf-8")) if args.map else None
    try:
        report = store.import_pairs(args.path, field_map)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for lineno, message in report.errors:
        print(f"line {lineno}: {message}", file=sys.stderr)
    print(f"imported: {report.inserted}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unfun", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="import a JSONL headline corpus")
    p.add_argument("--db", default="unfun.db")
    p.add_argument("--path", required=True)
    p.add_argument("--origin", required=True, choices=["satirical", "serious"])
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("serve", help="run the game service")
    p.add_argument("--config", default=None, help="JSON config file")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("analyze", help="write analysis reports (CSV + JSON)")
    p.add_argument("--db", default="unfun.db")
    p.add_argument("--report", required=True, choices=REPORT_NAMES + ("all",))
    p.add_argument("--out", required=True)
    p.add_argument("--annotations", default=None, help="annotation sidecar JSONL")
    p.add_argument("--seed", type=int, default=analysis.DEFAULT_SEED)
    p.add_argument("--resamples", type=int, default=analysis.DEFAULT_RESAMPLES)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("export", help="export collected pairs as JSONL")
    p.add_argument("--db", default="unfun.db")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("import-pairs", help="import a pair-export JSONL (optionally field-mapped)")
    p.add_argument("--db", default="unfun.db")
    p.add_argument("--path", required=True)
    p.add_argument("--map", default=None, help="JSON file mapping our field names to theirs")
    p.set_defaults(func=cmd_import_pairs)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
