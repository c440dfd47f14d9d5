"""Shallow parsing of headlines into labeled phrases and chunk-level distance.

The tagger is a deterministic lexicon + suffix cascade (no trained model);
corpora may carry gold chunk annotations that bypass it entirely.  The
chunker groups tag runs into NP/VP/PP/ADJP/ADVP chunks, with O absorbing
whatever is left, so every token lands in exactly one chunk.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .alignment import OpKind, align_keys, distance_keys
from .alignment.tokenizer import TokenSequence, tokenize

TAG_INVENTORY = frozenset({
    "NN", "NNS", "NNP", "NNPS", "PRP", "PRP$", "EX", "WP", "WDT", "WRB",
    "DT", "PDT", "CD", "POS",
    "JJ", "JJR", "JJS",
    "RB", "RBR", "RBS",
    "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "MD", "TO",
    "IN", "CC", "UH", "SYM", "PUNCT",
})

CHUNK_LABELS = ("NP", "VP", "PP", "ADJP", "ADVP", "O")

_LEXICON = {
    # determiners / pronouns
    "the": "DT", "a": "DT", "an": "DT", "this": "DT", "that": "DT",
    "these": "DT", "those": "DT", "each": "DT", "every": "DT", "some": "DT",
    "any": "DT", "no": "DT", "all": "PDT", "both": "PDT", "another": "DT",
    "i": "PRP", "you": "PRP", "he": "PRP", "she": "PRP", "it": "PRP",
    "we": "PRP", "they": "PRP", "me": "PRP", "him": "PRP", "her": "PRP",
    "us": "PRP", "them": "PRP", "himself": "PRP", "herself": "PRP",
    "itself": "PRP", "everyone": "PRP", "everything": "PRP", "nothing": "PRP",
    "someone": "PRP", "something": "PRP", "anyone": "PRP", "nobody": "PRP",
    "my": "PRP$", "your": "PRP$", "his": "PRP$", "its": "PRP$",
    "our": "PRP$", "their": "PRP$",
    "who": "WP", "what": "WP", "which": "WDT", "whose": "WP",
    "when": "WRB", "where": "WRB", "why": "WRB", "how": "WRB",
    "there": "EX",
    # prepositions
    "in": "IN", "on": "IN", "at": "IN", "by": "IN", "for": "IN",
    "with": "IN", "from": "IN", "of": "IN", "into": "IN", "onto": "IN",
    "over": "IN", "under": "IN", "after": "IN", "before": "IN",
    "during": "IN", "against": "IN", "about": "IN", "between": "IN",
    "among": "IN", "without": "IN", "within": "IN", "through": "IN",
    "across": "IN", "behind": "IN", "beyond": "IN", "near": "IN",
    "off": "IN", "amid": "IN", "despite": "IN", "per": "IN", "via": "IN",
    "up": "IN", "down": "IN", "out": "IN",
    "until": "IN", "till": "IN", "since": "IN", "toward": "IN",
    "towards": "IN", "upon": "IN", "along": "IN", "around": "IN",
    "beneath": "IN", "beside": "IN", "except": "IN", "inside": "IN",
    "outside": "IN", "past": "IN", "as": "IN", "like": "IN", "unlike": "IN",
    "to": "TO",
    # conjunctions, modals, clitics
    "and": "CC", "or": "CC", "but": "CC", "nor": "CC", "plus": "CC",
    "will": "MD", "would": "MD", "can": "MD", "could": "MD", "may": "MD",
    "might": "MD", "must": "MD", "shall": "MD", "should": "MD",
    "wo": "MD", "ca": "MD", "'ll": "MD", "'d": "MD",
    "n't": "RB", "not": "RB",
    "'re": "VBP", "'ve": "VBP", "'m": "VBP", "'s": "POS",
    # copulas / auxiliaries / frequent headline verbs
    "be": "VB", "am": "VBP", "is": "VBZ", "are": "VBP", "was": "VBD",
    "were": "VBD", "been": "VBN", "being": "VBG",
    "have": "VBP", "has": "VBZ", "had": "VBD", "do": "VBP", "does": "VBZ",
    "did": "VBD", "done": "VBN",
    "say": "VBP", "says": "VBZ", "said": "VBD",
    "get": "VBP", "gets": "VBZ", "got": "VBD", "gotten": "VBN",
    "make": "VBP", "makes": "VBZ", "made": "VBD",
    "go": "VBP", "goes": "VBZ", "went": "VBD", "gone": "VBN",
    "take": "VBP", "takes": "VBZ", "took": "VBD", "taken": "VBN",
    "find": "VBP", "finds": "VBZ", "found": "VBD",
    "give": "VBP", "gives": "VBZ", "gave": "VBD", "given": "VBN",
    "win": "VBP", "wins": "VBZ", "won": "VBD",
    "see": "VBP", "sees": "VBZ", "saw": "VBD", "seen": "VBN",
    "put": "VB", "puts": "VBZ", "set": "VB", "sets": "VBZ",
    "lose": "VBP", "loses": "VBZ", "lost": "VBD",
    "hold": "VBP", "holds": "VBZ", "held": "VBD",
    "keep": "VBP", "keeps": "VBZ", "kept": "VBD",
    "leave": "VBP", "leaves": "VBZ", "left": "VBD",
    "meet": "VBP", "meets": "VBZ", "met": "VBD",
    "break": "VBP", "breaks": "VBZ", "broke": "VBD", "broken": "VBN",
    "sell": "VBP", "sells": "VBZ", "sold": "VBD",
    "buy": "VBP", "buys": "VBZ", "bought": "VBD",
    "tell": "VBP", "tells": "VBZ", "told": "VBD",
    "begin": "VBP", "begins": "VBZ", "began": "VBD", "begun": "VBN",
    "think": "VBP", "thinks": "VBZ", "thought": "VBD",
    "know": "VBP", "knows": "VBZ", "knew": "VBD", "known": "VBN",
    "come": "VBP", "comes": "VBZ", "came": "VBD",
    "rise": "VBP", "rises": "VBZ", "rose": "VBD", "risen": "VBN",
    "fall": "VBP", "falls": "VBZ", "fell": "VBD", "fallen": "VBN",
    "grow": "VBP", "grows": "VBZ", "grew": "VBD", "grown": "VBN",
    "run": "VBP", "runs": "VBZ", "ran": "VBD",
    "speak": "VBP", "speaks": "VBZ", "spoke": "VBD", "spoken": "VBN",
    "discover": "VBP", "discovers": "VBZ",
    "announce": "VBP", "announces": "VBZ",
    "declare": "VBP", "declares": "VBZ",
    "demand": "VBP", "demands": "VBZ",
    "unveil": "VBP", "unveils": "VBZ",
    "urge": "VBP", "urges": "VBZ",
    "warn": "VBP", "warns": "VBZ",
    "deny": "VBP", "denies": "VBZ",
    "die": "VBP", "dies": "VBZ",
    "vow": "VBP", "vows": "VBZ",
    "seek": "VBP", "seeks": "VBZ", "sought": "VBD",
    "face": "VBP", "faces": "VBZ",
    "plan": "VBP", "plans": "VBZ",
    "return": "VBP", "returns": "VBZ",
    "call": "VBP", "calls": "VBZ",
    "report": "VBP", "reports": "VBZ",
    "claim": "VBP", "claims": "VBZ",
    "reveal": "VBP", "reveals": "VBZ",
    "release": "VBP", "releases": "VBZ",
    "launch": "VBP", "launches": "VBZ",
    "open": "VBP", "opens": "VBZ",
    "close": "VBP", "closes": "VBZ",
    "end": "VBP", "ends": "VBZ",
    "ban": "VBP", "bans": "VBZ",
    "approve": "VBP", "approves": "VBZ",
    "reject": "VBP", "rejects": "VBZ",
    "elect": "VBP", "elects": "VBZ",
    "benefit": "VBP", "benefits": "VBZ",
    "delay": "VBP", "delays": "VBZ",
    # adjectives / adverbs common in headlines
    "new": "JJ", "old": "JJ", "big": "JJ", "small": "JJ", "good": "JJ",
    "bad": "JJ", "high": "JJ", "low": "JJ", "local": "JJ", "national": "JJ",
    "dead": "JJ", "free": "JJ", "own": "JJ", "safe": "JJ", "safer": "JJR",
    "more": "JJR", "most": "JJS", "less": "JJR", "least": "JJS",
    "last": "JJ", "next": "JJ", "first": "JJ", "second": "JJ", "third": "JJ",
    "now": "RB", "still": "RB", "again": "RB", "soon": "RB", "just": "RB",
    "never": "RB", "always": "RB", "often": "RB", "already": "RB",
    "here": "RB", "away": "RB", "back": "RB", "too": "RB", "very": "RB",
    "also": "RB", "yet": "RB", "even": "RB", "only": "RB", "tomorrow": "NN",
    "today": "NN", "yesterday": "NN",
}

_WORD_RE = re.compile(r"\w", re.UNICODE)
_NUM_RE = re.compile(r"^\d+(?:[.,]\d+)*$")

_NOUN_TAGS = frozenset({"NN", "NNS", "NNP", "NNPS", "PRP", "EX", "WP", "CD"})
_NOUN_MOD_TAGS = frozenset({"DT", "PDT", "PRP$", "JJ", "JJR", "JJS", "POS", "WDT"})
_VERB_TAGS = frozenset({"VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "MD"})
_ADV_TAGS = frozenset({"RB", "RBR", "RBS", "WRB"})
_ADJ_TAGS = frozenset({"JJ", "JJR", "JJS"})


@dataclass(frozen=True)
class PosTaggedToken:
    token: str
    tag: str


@dataclass(frozen=True)
class Chunk:
    label: str
    tokens: tuple[str, ...]

    def key(self) -> tuple:
        # joined text, so token-boundary differences inside a span don't count
        return (self.label, " ".join(self.tokens).casefold())

    def text(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class ChunkSequence:
    chunks: tuple[Chunk, ...]

    @property
    def pattern(self) -> str:
        return " ".join(c.label for c in self.chunks)

    def __len__(self) -> int:
        return len(self.chunks)

    def keys(self) -> list[tuple]:
        return [c.key() for c in self.chunks]

    def tokens(self) -> tuple[str, ...]:
        return tuple(t for c in self.chunks for t in c.tokens)


@dataclass(frozen=True)
class SingleSubstitution:
    position: int  # 1-based chunk index in the original headline
    chunk_before: Chunk
    chunk_after: Chunk


def _suffix_tag(lower: str, prev_tag: Optional[str]) -> str:
    if len(lower) > 4 and lower.endswith("ing"):
        return "VBG"
    if len(lower) > 3 and lower.endswith("ed"):
        return "VBN"
    if len(lower) > 3 and lower.endswith("ly"):
        return "RB"
    if len(lower) > 4 and lower.endswith("est"):
        return "JJS"
    if lower.endswith(("ous", "ful", "ive", "able", "ible", "ish", "less")):
        return "JJ"
    if lower.endswith("s") and not lower.endswith(("ss", "us", "is")):
        # plural noun vs 3rd-person verb: after a noun, read it as the verb
        if prev_tag in _NOUN_TAGS:
            return "VBZ"
        return "NNS"
    return "NN"


def pos_tag(tokens: TokenSequence | Sequence[str]) -> list[PosTaggedToken]:
    """One deterministic tag per token (lexicon, then shape, then suffixes)."""
    toks = list(tokens.tokens if isinstance(tokens, TokenSequence) else tokens)
    tagged: list[PosTaggedToken] = []
    prev_tag: Optional[str] = None
    for tok in toks:
        lower = tok.lower()
        if not _WORD_RE.search(tok):
            tag = "PUNCT"
        elif _NUM_RE.match(tok):
            tag = "CD"
        elif lower in _LEXICON:
            tag = _LEXICON[lower]
        elif tok[:1].isupper():
            tag = "NNP"
        else:
            tag = _suffix_tag(lower, prev_tag)
        tagged.append(PosTaggedToken(token=tok, tag=tag))
        prev_tag = tag
    return tagged


def _is_verbal(tag: str) -> bool:
    return tag in _VERB_TAGS


def chunk(tagged: Sequence[PosTaggedToken]) -> ChunkSequence:
    """Group tagged tokens into phrases; the output spans partition the input."""
    tags = [t.tag for t in tagged]
    words = [t.token for t in tagged]
    n = len(tags)
    chunks: list[Chunk] = []

    def np_compatible(j: int) -> bool:
        if tags[j] in _NOUN_TAGS or tags[j] in _NOUN_MOD_TAGS:
            return True
        # participle acting as a noun modifier ("missing ferrets")
        return tags[j] == "VBG" and j + 1 < n and (
            tags[j + 1] in _NOUN_TAGS or tags[j + 1] in _NOUN_MOD_TAGS
        )

    i = 0
    while i < n:
        t = tags[i]
        if np_compatible(i):
            j = i
            has_noun = False
            while j < n and np_compatible(j):
                has_noun = has_noun or tags[j] in _NOUN_TAGS
                j += 1
            if has_noun:
                label = "NP"
            elif any(tags[k] in _ADJ_TAGS for k in range(i, j)):
                label = "ADJP"
            else:
                label = "O"
            chunks.append(Chunk(label, tuple(words[i:j])))
            i = j
        elif _is_verbal(t) or (t == "TO" and i + 1 < n and tags[i + 1] == "VB"):
            j = i + 1
            while j < n:
                if _is_verbal(tags[j]):
                    j += 1
                elif words[j].lower() in ("n't", "not"):
                    j += 1  # negation stays with the verb
                elif tags[j] in _ADV_TAGS and j + 1 < n and _is_verbal(tags[j + 1]):
                    j += 1  # adverb sandwiched inside the verb cluster
                elif tags[j] == "TO" and j + 1 < n and tags[j + 1] == "VB":
                    j += 1  # infinitival "to"
                else:
                    break
            chunks.append(Chunk("VP", tuple(words[i:j])))
            i = j
        elif t in ("IN", "TO"):
            j = i
            while j < n and tags[j] in ("IN", "TO"):
                j += 1
            chunks.append(Chunk("PP", tuple(words[i:j])))
            i = j
        elif t in _ADV_TAGS:
            j = i
            while j < n and tags[j] in _ADV_TAGS:
                j += 1
            chunks.append(Chunk("ADVP", tuple(words[i:j])))
            i = j
        else:
            j = i
            while j < n and not (
                tags[j] in _NOUN_TAGS or tags[j] in _NOUN_MOD_TAGS
                or _is_verbal(tags[j]) or tags[j] in ("IN", "TO") or tags[j] in _ADV_TAGS
            ):
                j += 1
            chunks.append(Chunk("O", tuple(words[i:j])))
            i = j
    return ChunkSequence(chunks=tuple(chunks))


def chunk_text(text: str) -> ChunkSequence:
    """Tokenize, tag, and chunk a raw headline."""
    return chunk(pos_tag(tokenize(text)))


def chunk_sequence_from_gold(spans: Iterable[dict | tuple]) -> ChunkSequence:
    """Build a ChunkSequence from gold annotations: {label, tokens} per span."""
    chunks = []
    for span in spans:
        if isinstance(span, dict):
            label, toks = span["label"], span["tokens"]
        else:
            label, toks = span
        if label not in CHUNK_LABELS:
            raise ValueError(f"unknown chunk label {label!r}")
        toks = tuple(toks)
        if not toks:
            raise ValueError("empty chunk span")
        chunks.append(Chunk(label, toks))
    return ChunkSequence(chunks=tuple(chunks))


def chunk_pattern(cs: ChunkSequence) -> str:
    return cs.pattern


def pattern_frequencies(corpus: Sequence[ChunkSequence]) -> dict[str, float]:
    """Fraction of headlines per chunk pattern; fractions sum to 1."""
    if not corpus:
        raise ValueError("pattern_frequencies requires a non-empty corpus")
    counts: dict[str, int] = {}
    for cs in corpus:
        counts[cs.pattern] = counts.get(cs.pattern, 0) + 1
    total = len(corpus)
    return {pattern: c / total for pattern, c in sorted(counts.items())}


def chunk_edit_distance(a: ChunkSequence, b: ChunkSequence) -> int:
    """Levenshtein over chunks; equality is same label + case-folded content."""
    return distance_keys(a.keys(), b.keys())


def classify_single_substitution(a: ChunkSequence, b: ChunkSequence) -> Optional[SingleSubstitution]:
    """The pair's single modified chunk, if the whole edit is one substitution."""
    ops = align_keys(a.keys(), b.keys())
    edits = [(kind, ia, ib) for kind, ia, ib in ops if kind is not OpKind.MATCH]
    if len(edits) != 1 or edits[0][0] is not OpKind.SUBSTITUTE:
        return None
    _, ia, ib = edits[0]
    return SingleSubstitution(
        position=ia + 1,
        chunk_before=a.chunks[ia],
        chunk_after=b.chunks[ib],
    )
