"""Tokenization and token-level sequence alignment."""

from .edit import (
    AlignmentError,
    AlignmentResult,
    EditOp,
    EditScript,
    OpKind,
    align,
    align_keys,
    apply_script,
    distance_keys,
    edit_distance,
    edit_script,
    similarity,
)
from .kernels import backend
from .tokenizer import TokenSequence, normalize_whitespace, sequence_from_tokens, tokenize

__all__ = [
    "AlignmentError",
    "AlignmentResult",
    "EditOp",
    "EditScript",
    "OpKind",
    "TokenSequence",
    "align",
    "align_keys",
    "apply_script",
    "backend",
    "distance_keys",
    "edit_distance",
    "edit_script",
    "normalize_whitespace",
    "sequence_from_tokens",
    "similarity",
    "tokenize",
]
