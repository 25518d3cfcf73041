# tests/test_fuzz.py
import random

import pytest

from cremona.amalgam import eval_word
from cremona.jonq import jonq_degree
from cremona.projlinear import in_A_cap_J
from fuzz.db_manager import (
    RUN_COLUMNS, TRIAL_COLUMNS, create_connection, create_tables, failing_trials, insert_records,
)
from fuzz.generators import identity_word, random_jonq, random_linear
from fuzz.main_processor import run_fuzz, run_trial


def test_random_linear_fixing_p1(qq):
    rng = random.Random(5)
    for _ in range(10):
        assert in_A_cap_J(random_linear(rng, qq, fix_p1=True))


def test_random_jonq_degree(qq):
    rng = random.Random(8)
    for _ in range(10):
        g = random_jonq(rng, qq, max_degree=3)
        assert g.fiber.max_degree() <= 3
        assert 1 <= jonq_degree(g) <= 5


def test_identity_words(qq):
    rng = random.Random(2)
    for mode in ("formal", "decomposed"):
        word = identity_word(rng, qq, 3, mode)
        assert eval_word(word, qq).is_identity()


def test_trials_are_reproducible(qq):
    assert run_trial(4, 99, qq, 3, "formal")["word"] == run_trial(4, 99, qq, 3, "formal")["word"]


def test_db_manager(tmp_path):
    conn = create_connection(str(tmp_path / "fuzz.db"))
    assert create_tables(conn)
    run = {"run_id": "r1", "started_at": "now", "field": "q", "seed": 1, "trials": 2, "max_length": 3,
           "mode": "formal"}
    assert insert_records(conn, "runs", [run], RUN_COLUMNS) == 1
    assert insert_records(conn, "runs", [run], RUN_COLUMNS) == 0
    trials = [
        {"run_id": "r1", "trial": 0, "word_length": 2, "status": "ok"},
        {"run_id": "r1", "trial": 1, "word_length": 4, "status": "error", "error": "BudgetExceeded: x"},
    ]
    assert insert_records(conn, "trials", trials, TRIAL_COLUMNS) == 2
    assert insert_records(conn, "trials", [], TRIAL_COLUMNS) == 0
    assert [t["trial"] for t in failing_trials(conn, "r1")] == [1]
    conn.close()


def test_run_fuzz_stores_every_trial(qq, tmp_path):
    db_path = str(tmp_path / "runs.db")
    summary = run_fuzz(trials=3, seed=17, field=qq, max_length=3, mode="formal", db_path=db_path)
    assert summary["ok"] == 3
    assert summary["failing_trials"] == []
    conn = create_connection(db_path)
    count = conn.execute("SELECT COUNT(*) FROM trials WHERE run_id = ?", (summary["run_id"],)).fetchone()[0]
    conn.close()
    assert count == 3


@pytest.mark.slow
def test_decomposed_words_all_verify(qq):
    summary = run_fuzz(trials=25, seed=7, field=qq, max_length=3, mode="decomposed")
    assert summary["failing_trials"] == [], summary["statuses"]
    assert summary["ok"] == summary["trials"] == 25
