# fuzz/main_processor.py
"""
Randomized self-check of the rewriter: draw identity words, reduce them, replay the certificate,
and store one row per trial in the results database.
"""
import logging
import random
import uuid
from collections import Counter
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from cremona.amalgam import format_word, prefix_degrees, rewrite_identity, verify_trace
from cremona.errors import CremonaError
from cremona.scalar import field_from_spec, field_spec
from fuzz.config import (
    DEFAULT_WORD_MODE, FUZZ_DATABASE_PATH, FUZZ_MAX_LENGTH, FUZZ_SEED, FUZZ_TRIALS, WORD_MODES,
)
from fuzz.db_manager import RUN_COLUMNS, TRIAL_COLUMNS, create_connection, create_tables, insert_records
from fuzz.generators import identity_word

logger = logging.getLogger(__name__)


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent stream per trial so a single failing trial can be replayed alone."""
    return random.Random(f"{seed}:{trial}")


def run_trial(trial: int, seed: int, field, max_length: int, mode: str,
              budget: Optional[int] = None) -> Dict[str, Any]:
    rng = trial_rng(seed, trial)
    length = rng.randint(1, max(max_length, 1))
    record: Dict[str, Any] = {"trial": trial, "word_length": 0, "status": "ok", "error": None,
                              "elementary_moves": None, "case_a": 0, "case_b_right": 0, "case_b_left": 0,
                              "verified": None, "word": None}
    try:
        word = identity_word(rng, field, length, mode)
        record["word_length"] = len(word)
        record["word"] = format_word(word)
        degrees = prefix_degrees(word, field)
        record["max_degree"] = max(degrees) if degrees else 1
        outcome = rewrite_identity(word, field, budget)
    except CremonaError as e:
        record["status"] = "error"
        record["error"] = f"{type(e).__name__}: {e.message}"
        logger.warning(f"Trial {trial}: {record['error']}")
        return record
    trace = outcome.trace
    ok, index, reason = verify_trace(trace)
    record["elementary_moves"] = trace.elementary_count()
    record["verified"] = int(ok)
    for case in ("case_a", "case_b_right", "case_b_left"):
        record[case] = outcome.stats.get(case, 0)
    if trace.final:
        record["status"] = "not_empty"
        record["error"] = f"final word has {len(trace.final)} letter(s)"
    elif not ok:
        record["status"] = "unverified"
        record["error"] = f"move {index}: {reason}"
    if record["status"] != "ok":
        logger.warning(f"Trial {trial}: {record['status']} ({record['error']})")
    return record


def summarize(records: List[Dict[str, Any]]) -> Dict[str, Any]:
    statuses = Counter(r["status"] for r in records)
    errors = Counter(r["error"].split(":")[0] for r in records if r["status"] == "error")
    moves = [r["elementary_moves"] for r in records if r["elementary_moves"] is not None]
    return {
        "trials": len(records),
        "ok": statuses.get("ok", 0),
        "statuses": dict(statuses),
        "errors": dict(errors),
        "cases": {case: sum(r[case] for r in records) for case in ("case_a", "case_b_right", "case_b_left")},
        "max_moves": max(moves) if moves else 0,
        "failing_trials": [r["trial"] for r in records if r["status"] != "ok"],
    }


def run_fuzz(trials: int = FUZZ_TRIALS, seed: int = FUZZ_SEED, field=None, max_length: int = FUZZ_MAX_LENGTH,
             mode: str = DEFAULT_WORD_MODE, budget: Optional[int] = None,
             db_path: Optional[str] = None) -> Dict[str, Any]:
    """Run ``trials`` trials; writes them to ``db_path`` when given and returns the summary."""
    if mode not in WORD_MODES:
        raise ValueError(f"Unknown fuzz mode '{mode}' (expected one of {WORD_MODES})")
    field = field if field is not None else field_from_spec()
    run_id = uuid.uuid4().hex
    logger.info(f"Fuzz run {run_id}: {trials} trial(s), seed {seed}, field {field_spec(field)}, mode {mode}")
    records = [run_trial(t, seed, field, max_length, mode, budget) for t in range(trials)]
    summary = summarize(records)
    summary.update({"run_id": run_id, "seed": seed, "field": field_spec(field), "mode": mode})

    if db_path:
        conn = create_connection(db_path)
        try:
            if conn and create_tables(conn):
                run_row = {"run_id": run_id, "started_at": datetime.now(timezone.utc).isoformat(),
                           "field": field_spec(field), "seed": seed, "trials": trials,
                           "max_length": max_length, "mode": mode}
                insert_records(conn, "runs", [run_row], RUN_COLUMNS)
                insert_records(conn, "trials", [dict(r, run_id=run_id) for r in records], TRIAL_COLUMNS)
                summary["database"] = db_path
        finally:
            if conn:
                conn.close()
                logger.info("Database connection closed.")
    return summary


def main():
    logging.info("=" * 10 + " Starting rewriter fuzz run " + "=" * 10)
    logging.info("--- Phase 1: Random identity words ---")
    summary = run_fuzz(db_path=FUZZ_DATABASE_PATH)
    logging.info("--- Phase 2: Summary ---")
    logging.info(f"{summary['ok']}/{summary['trials']} trial(s) reduced and verified; cases {summary['cases']}")
    if summary["failing_trials"]:
        logging.error("=" * 10 + f" Fuzz run finished with failures: {summary['failing_trials']} " + "=" * 10)
    else:
        logging.info("=" * 10 + " Fuzz run finished successfully " + "=" * 10)
    return summary


if __name__ == "__main__":
    from cremona.config import LOG_FORMAT, LOG_LEVEL
    logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
    main()
