# fuzz/config.py
import os

from cremona.config import (
    FUZZ_COEFF_BOUND, FUZZ_DATABASE_PATH, FUZZ_MAX_LENGTH, FUZZ_SEED, FUZZ_TRIALS,
)

# --- Word generation ---
# "decomposed": g followed by the inverse of a decomposition of eval(g) (exercises the case steps)
# "formal": g followed by its formal inverse (cancels by merges alone)
WORD_MODES = ("decomposed", "formal")
DEFAULT_WORD_MODE = os.getenv("CREMONA_FUZZ_MODE", "decomposed")
# Letter kinds drawn for random generator words
LETTER_KINDS = ("linear", "quadratic", "named")
# Attempts at drawing a non-degenerate matrix or configuration before giving up
MAX_DRAWS = 50

__all__ = [
    "FUZZ_COEFF_BOUND", "FUZZ_DATABASE_PATH", "FUZZ_MAX_LENGTH", "FUZZ_SEED",
    "FUZZ_TRIALS", "WORD_MODES", "DEFAULT_WORD_MODE", "LETTER_KINDS", "MAX_DRAWS", "TABLE_DEFINITIONS",
]

# --- Database Schema ---
TABLE_DEFINITIONS = {
    "runs": """
        CREATE TABLE IF NOT EXISTS runs (
            run_id TEXT PRIMARY KEY,
            started_at TEXT NOT NULL,
            field TEXT NOT NULL,
            seed INTEGER NOT NULL,
            trials INTEGER NOT NULL,
            max_length INTEGER NOT NULL,
            mode TEXT NOT NULL
        );
    """,
    "trials": """
        CREATE TABLE IF NOT EXISTS trials (
            run_id TEXT NOT NULL,
            trial INTEGER NOT NULL,
            word_length INTEGER NOT NULL,
            max_degree INTEGER,
            status TEXT NOT NULL,
            error TEXT,
            elementary_moves INTEGER,
            case_a INTEGER DEFAULT 0,
            case_b_right INTEGER DEFAULT 0,
            case_b_left INTEGER DEFAULT 0,
            verified INTEGER,
            word TEXT,
            PRIMARY KEY (run_id, trial),
            FOREIGN KEY (run_id) REFERENCES runs (run_id)
        );
    """,
    "idx_trials_status": "CREATE INDEX IF NOT EXISTS idx_trials_status ON trials (status);",
}
