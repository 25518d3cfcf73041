# cremona/config.py

import os
from dotenv import load_dotenv

load_dotenv() # Load environment variables from .env file

CREMONA_DIR = os.path.dirname(os.path.abspath(__file__))
# Project root is one level up from the package directory
PROJECT_ROOT = os.path.dirname(CREMONA_DIR)

# --- Logging ---
LOG_LEVEL = os.getenv("CREMONA_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = '%(asctime)s - %(levelname)s [%(filename)s:%(lineno)d] %(message)s'

# --- Arithmetic ---
# "q" for the rationals, "fp:P" for the prime field with P elements (P >= 5)
DEFAULT_FIELD = os.getenv("CREMONA_FIELD", "q").lower()
MIN_PRIME = 5

# --- Base points ---
# Depth limit for towers of infinitely near points (the homaloidal certificate stops earlier in practice)
MAX_TOWER_DEPTH = int(os.getenv("CREMONA_MAX_TOWER_DEPTH", "32"))
# First columns tried for the coordinate change that makes the elimination variable monic
ELIMINATION_DIRECTIONS = [
    (1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1), (1, 2, 3), (1, -1, 2), (1, 3, -2), (1, 5, 7),
]

# --- Rewriting ---
# Move budget is BUDGET_FACTOR * (sum of letter degrees of the input word)^2
BUDGET_FACTOR = int(os.getenv("CREMONA_BUDGET_FACTOR", "10"))
# Re-evaluate the whole word after every replayed move (slow but independent of local checks)
VERIFY_FULL_EVAL = os.getenv("CREMONA_VERIFY_FULL_EVAL", "true").lower() in ("1", "true", "yes")
# Upper bound on passes through the reduction graph (each case step is two passes)
GRAPH_RECURSION_LIMIT = int(os.getenv("CREMONA_GRAPH_RECURSION_LIMIT", "10000"))

# --- Fuzzing ---
FUZZ_SEED = int(os.getenv("CREMONA_FUZZ_SEED", "20240"))
FUZZ_TRIALS = int(os.getenv("CREMONA_FUZZ_TRIALS", "20"))
FUZZ_MAX_LENGTH = int(os.getenv("CREMONA_FUZZ_MAX_LENGTH", "6"))
FUZZ_COEFF_BOUND = int(os.getenv("CREMONA_FUZZ_COEFF_BOUND", "3"))
FUZZ_DATABASE_PATH = os.getenv("CREMONA_FUZZ_DB", os.path.join(PROJECT_ROOT, "fuzz_results.db"))
