"""Headline tokenization: whitespace split plus punctuation/clitic separation.

Rules (pinned by tests, since headline tokenization is otherwise
underdetermined):

* punctuation marks become standalone tokens ("Fed:" -> "Fed", ":")
* clitics split off Penn-style ("we're" -> "we", "'re"; "don't" -> "do", "n't")
* intra-word hyphens are kept ("high-fructose" stays one token)
* original casing is preserved; comparisons elsewhere case-fold
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_TOKEN_RE = re.compile(
    r"n't(?!\w)"                       # negation clitic
    r"|'(?:re|ve|ll|d|m|s)(?!\w)"      # other clitics, incl. possessive 's
    r"|\d+(?:[.,]\d+)*"                # numbers with internal separators
    r"|(?:(?!n't)\w)+(?:-(?:(?!n't)\w)+)*"  # words with internal hyphens
    r"|[^\w\s]",                       # any remaining symbol stands alone
    re.IGNORECASE,
)

_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class TokenSequence:
    """Tokenized headline; tokens cover every non-space character of the source."""

    tokens: tuple[str, ...]
    source_text: str = ""

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    @property
    def folded(self) -> tuple[str, ...]:
        return tuple(t.casefold() for t in self.tokens)

    def text(self) -> str:
        return " ".join(self.tokens)


def normalize_whitespace(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()


def tokenize(text: str) -> TokenSequence:
    """Split text into tokens; empty or all-space input yields an empty sequence."""
    tokens = tuple(_TOKEN_RE.findall(text))
    return TokenSequence(tokens=tokens, source_text=text)


def sequence_from_tokens(tokens) -> TokenSequence:
    """Wrap pre-split tokens (e.g. gold annotations) without re-tokenizing."""
    toks = tuple(tokens)
    return TokenSequence(tokens=toks, source_text=" ".join(toks))
