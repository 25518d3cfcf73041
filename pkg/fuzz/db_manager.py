# fuzz/db_manager.py
import logging
import sqlite3
from typing import Any, Dict, List, Sequence

from fuzz.config import TABLE_DEFINITIONS

logger = logging.getLogger(__name__)

RUN_COLUMNS = ["run_id", "started_at", "field", "seed", "trials", "max_length", "mode"]
TRIAL_COLUMNS = ["run_id", "trial", "word_length", "max_degree", "status", "error", "elementary_moves",
                 "case_a", "case_b_right", "case_b_left", "verified", "word"]


def create_connection(db_file: str):
    """Open the results database; returns None when it cannot be opened."""
    conn = None
    try:
        conn = sqlite3.connect(db_file)
        conn.execute("PRAGMA foreign_keys = ON;")
        logger.info(f"SQLite DB connection successful to {db_file} (version {sqlite3.sqlite_version}).")
    except sqlite3.Error as e:
        logger.error(f"Error connecting to database {db_file}: {e}")
        if conn:
            conn.close()
        conn = None
    return conn


def create_tables(conn) -> bool:
    if not conn:
        logger.error("Database connection is not valid. Cannot create tables.")
        return False
    try:
        cursor = conn.cursor()
        for table_name, definition in TABLE_DEFINITIONS.items():
            if not definition.strip().upper().startswith("CREATE"):
                logger.warning(f"Skipping definition for '{table_name}': not a CREATE statement")
                continue
            logger.debug(f"Executing schema for: {table_name}")
            cursor.execute(definition)
        conn.commit()
        logger.info("Tables/Indices checked/created successfully.")
        return True
    except sqlite3.Error as e:
        logger.error(f"Error creating tables/indices: {e}")
        conn.rollback()
        return False


def insert_records(conn, table_name: str, data_list: Sequence[Dict[str, Any]], columns: List[str]) -> int:
    """
    INSERT OR IGNORE every dict of ``data_list`` (missing keys become NULL).
    Returns the number of affected rows, or -1 on a database error.
    """
    if not conn:
        logger.error(f"Database connection is not valid. Cannot insert records into {table_name}.")
        return -1
    if not data_list:
        logger.info(f"No data provided for table {table_name}, skipping insertion.")
        return 0
    placeholders = ", ".join("?" * len(columns))
    sql = f"INSERT OR IGNORE INTO {table_name}({', '.join(columns)}) VALUES({placeholders})"
    data_tuples = [tuple(record.get(col) for col in columns) for record in data_list if isinstance(record, dict)]
    if len(data_tuples) != len(data_list):
        logger.warning(f"Skipped {len(data_list) - len(data_tuples)} non-dictionary record(s) for {table_name}")
    try:
        cursor = conn.cursor()
        cursor.executemany(sql, data_tuples)
        conn.commit()
        logger.info(f"Inserted {cursor.rowcount} of {len(data_tuples)} record(s) into {table_name}.")
        return cursor.rowcount
    except sqlite3.Error as e:
        logger.error(f"Database error during bulk insert into {table_name}: {e}")
        logger.error(f"  SQL attempted: {sql}")
        conn.rollback()
        return -1


def failing_trials(conn, run_id: str) -> List[Dict[str, Any]]:
    """Trials of one run whose status is not 'ok'."""
    cursor = conn.execute(
        "SELECT trial, status, error, word FROM trials WHERE run_id = ? AND status != 'ok' ORDER BY trial",
        (run_id,))
    return [dict(zip(("trial", "status", "error", "word"), row)) for row in cursor.fetchall()]
