"""Regenerate the shared client/server diff fixtures.

The frontend re-implements the canonical edit script for live preview; this
writes 25 pairs with the server's exact op sequences so both sides can assert
agreement.  Run from the repo root:

    python3 scripts/make_diff_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from unfun.alignment import edit_script, tokenize

PAIRS = [
    ("God diagnosed with bipolar disorder", "Bob Dylan diagnosed with bipolar disorder"),
    ("Bob Dylan diagnosed with bipolar disorder", "God diagnosed with bipolar disorder"),
    ("Nation demands new hobby", "Nation demands new policy"),
    ("Nation demands new hobby", "Nation demands new hobby"),
    ("Mayor opens new bridge over old river", "Mayor opens new bridge over old canal"),
    ("Area man wins lottery again", "Area man wins lottery"),
    ("World ends tomorrow", "World likely ends tomorrow"),
    ("Scientists discover ancient beer in cave", "Scientists discover beer in cave"),
    ("Fed: we're broke", "Fed: we're fine"),
    ("Don't panic about the ferrets", "Do panic about the ferrets"),
    ("Cat declares independence", "Cat declares independence from household"),
    ("Sun reportedly tired of rising", "Sun tired of rising early"),
    ("Stocks rally after earnings report", "Stocks fall after earnings report"),
    ("GOD SPEAKS", "god speaks"),
    ("A B C D E", "E D C B A"),
    ("one two three", "four five six"),
    ("", "brand new headline"),
    ("old headline gone", ""),
    ("high-fructose corn harvest", "grape harvest"),
    ("2018 Bordeaux vintage benefits from outstanding grape harvest",
     "2018 Pepsi vintage benefits from outstanding high-fructose corn harvest"),
    ("Schlitz returns, drums up nostalgic drinkers", "Schlitz returns, drums up sales"),
    ("Baltimore looking for safer city to host Super Bowl parade",
     "Baltimore looking for larger city to host Super Bowl parade"),
    ("Obama elected president", "Obama re-elected president again"),
    ("It's a $85 million, 'fair' deal", "It's a $95 million, 'fair' deal"),
    ("Local man remembers where he parked", "Local man forgets where he parked"),
]


def main() -> None:
    records = []
    for a_text, b_text in PAIRS:
        a, b = tokenize(a_text), tokenize(b_text)
        script = edit_script(a, b)
        records.append({
            "a": a_text,
            "b": b_text,
            "a_tokens": list(a.tokens),
            "b_tokens": list(b.tokens),
            "distance": script.distance,
            "ops": [
                {
                    "kind": op.kind.value,
                    "position_a": op.position_a,
                    "position_b": op.position_b,
                    "token_a": op.token_a,
                    "token_b": op.token_b,
                }
                for op in script.ops
            ],
        })
    out = Path(__file__).resolve().parent.parent / "frontend" / "fixtures" / "diff-fixtures.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(records, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(records)} pairs)")


if __name__ == "__main__":
    main()
