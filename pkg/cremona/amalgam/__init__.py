# cremona/amalgam/__init__.py
from cremona.amalgam.words import (
    A, J, Letter, RewriteComplexity, Word, complexity, eval_word, format_word, invert_word, prefix_degrees,
    prefix_systems, word_from_dicts, word_to_dicts,
)
from cremona.amalgam.moves import Derivation, Move, Trace, trace_from_jsonl, verify_trace
from cremona.amalgam.lemma import lemma1_conjugate
from cremona.amalgam.rewriter import (
    analyze, case_a_step, case_b_left, case_b_right, normalize_neighbors, preprocess,
)
from cremona.amalgam.graph import RewriteOutcome, reduce_identity, rewrite_identity

__all__ = [
    "A", "J", "Letter", "RewriteComplexity", "Word", "complexity", "eval_word", "format_word", "invert_word",
    "prefix_degrees", "prefix_systems", "word_from_dicts", "word_to_dicts",
    "Derivation", "Move", "Trace", "trace_from_jsonl", "verify_trace",
    "lemma1_conjugate",
    "analyze", "case_a_step", "case_b_left", "case_b_right", "normalize_neighbors", "preprocess",
    "RewriteOutcome", "reduce_identity", "rewrite_identity",
]
