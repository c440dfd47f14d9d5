"""Token-level edit distance with canonical operation traceback.

Token equality is case-insensitive.  When several optimal scripts exist the
traceback prefers MATCH, then SUBSTITUTE, then DELETE, then INSERT, resolved
right-to-left over the DP table, so identical inputs always produce the same
script.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Sequence

import numpy as np

from . import kernels
from .tokenizer import TokenSequence, sequence_from_tokens


class OpKind(str, Enum):
    MATCH = "MATCH"
    SUBSTITUTE = "SUBSTITUTE"
    DELETE = "DELETE"
    INSERT = "INSERT"


@dataclass(frozen=True)
class EditOp:
    """One alignment step.

    ``position_a``/``position_b`` index the consumed token in each sequence;
    for DELETE, position_b is the gap index in b (and vice versa for INSERT).
    ``token_a``/``token_b`` carry the affected tokens so a script can be
    applied without re-consulting the second sequence.
    """

    kind: OpKind
    position_a: int
    position_b: int
    token_a: str | None = None
    token_b: str | None = None


@dataclass(frozen=True)
class EditScript:
    ops: tuple[EditOp, ...]
    distance: int


@dataclass(frozen=True)
class AlignmentResult:
    distance: int
    similarity: float
    script: EditScript


class AlignmentError(ValueError):
    """Raised when an edit script does not fit the sequence it is applied to."""


def encode_pair(a_keys: Sequence[Hashable], b_keys: Sequence[Hashable]) -> tuple[np.ndarray, np.ndarray]:
    """Map two key sequences onto a shared int32 id space for the kernels."""
    ids: dict[Hashable, int] = {}
    def enc(keys):
        out = np.empty(len(keys), dtype=np.int32)
        for i, k in enumerate(keys):
            out[i] = ids.setdefault(k, len(ids))
        return out
    return enc(a_keys), enc(b_keys)


def align_keys(a_keys: Sequence[Hashable], b_keys: Sequence[Hashable]) -> list[tuple[OpKind, int, int]]:
    """Canonical optimal alignment over arbitrary hashable keys.

    Returns (kind, index_a, index_b) triples in left-to-right order; the
    index convention matches EditOp.
    """
    a_ids, b_ids = encode_pair(a_keys, b_keys)
    dp = kernels.dp_table(a_ids, b_ids)
    i, j = len(a_ids), len(b_ids)
    rev: list[tuple[OpKind, int, int]] = []
    while i > 0 or j > 0:
        here = dp[i, j]
        if i > 0 and j > 0 and a_ids[i - 1] == b_ids[j - 1] and here == dp[i - 1, j - 1]:
            rev.append((OpKind.MATCH, i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i > 0 and j > 0 and here == dp[i - 1, j - 1] + 1:
            rev.append((OpKind.SUBSTITUTE, i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i > 0 and here == dp[i - 1, j] + 1:
            rev.append((OpKind.DELETE, i - 1, j))
            i -= 1
        else:
            rev.append((OpKind.INSERT, i, j - 1))
            j -= 1
    rev.reverse()
    return rev


def distance_keys(a_keys: Sequence[Hashable], b_keys: Sequence[Hashable]) -> int:
    a_ids, b_ids = encode_pair(a_keys, b_keys)
    return kernels.distance(a_ids, b_ids)


def edit_distance(a: TokenSequence, b: TokenSequence) -> int:
    """Minimal unit-cost insert/delete/substitute count, case-insensitive."""
    return distance_keys(a.folded, b.folded)


def edit_script(a: TokenSequence, b: TokenSequence) -> EditScript:
    ops = []
    for kind, ia, ib in align_keys(a.folded, b.folded):
        token_a = a.tokens[ia] if kind in (OpKind.MATCH, OpKind.SUBSTITUTE, OpKind.DELETE) else None
        token_b = b.tokens[ib] if kind in (OpKind.MATCH, OpKind.SUBSTITUTE, OpKind.INSERT) else None
        ops.append(EditOp(kind, ia, ib, token_a, token_b))
    dist = sum(1 for op in ops if op.kind is not OpKind.MATCH)
    return EditScript(ops=tuple(ops), distance=dist)


def similarity(a: TokenSequence, b: TokenSequence) -> float:
    """1 - d(a,b) / max(|a|,|b|); 1.0 for two empty sequences (limit convention)."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - edit_distance(a, b) / longest


def align(a: TokenSequence, b: TokenSequence) -> AlignmentResult:
    script = edit_script(a, b)
    longest = max(len(a), len(b))
    sim = 1.0 if longest == 0 else 1.0 - script.distance / longest
    return AlignmentResult(distance=script.distance, similarity=sim, script=script)


def apply_script(a: TokenSequence, script: EditScript) -> TokenSequence:
    """Replay a script produced against ``a``; raises AlignmentError on mismatch."""
    out: list[str] = []
    i = 0
    for op in script.ops:
        if op.kind in (OpKind.MATCH, OpKind.SUBSTITUTE, OpKind.DELETE):
            if op.position_a != i or i >= len(a.tokens):
                raise AlignmentError(f"op {op.kind.value} at {op.position_a} does not fit position {i}")
            if op.token_a is not None and op.token_a.casefold() != a.tokens[i].casefold():
                raise AlignmentError(f"op {op.kind.value} expected {op.token_a!r}, found {a.tokens[i]!r}")
        if op.kind is OpKind.MATCH:
            out.append(op.token_b if op.token_b is not None else a.tokens[i])
            i += 1
        elif op.kind is OpKind.SUBSTITUTE:
            out.append(op.token_b or "")
            i += 1
        elif op.kind is OpKind.DELETE:
            i += 1
        else:
            out.append(op.token_b or "")
    if i != len(a.tokens):
        raise AlignmentError(f"script consumed {i} of {len(a.tokens)} tokens")
    return sequence_from_tokens(out)
