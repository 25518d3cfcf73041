# tests/test_cli.py
import json

import pytest

from cremona.cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compose(capsys):
    code, out, _ = run(capsys, "compose", "sigma * sigma")
    assert code == EXIT_OK
    assert out.splitlines() == ["[X : Y : Z]", "degree 1"]


def test_compose_json(capsys):
    code, out, _ = run(capsys, "compose", "sigma * tau", "--json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["status"] == "ok"
    assert data["degree"] == 2


def test_degree_over_prime_field(capsys):
    code, out, _ = run(capsys, "degree", "nu1 * rho2", "--field", "fp:101")
    assert code == EXIT_OK
    assert out.strip() == "2"


def test_basepoints_of_nu1(capsys):
    code, out, _ = run(capsys, "basepoints", "nu1", "--json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert sorted(p["depth"] for p in data["points"]) == [0, 0, 1]
    assert all(p["multiplicity"] == 1 for p in data["points"])


def test_jmember(capsys):
    assert run(capsys, "jmember", "sigma")[1].splitlines()[0] == "in J"
    code, out, _ = run(capsys, "jmember", "tau", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["member"] is False


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "sigma * rho1 * sigma", "--json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["word"]
    assert all(s["degree_after"] < s["degree_before"] for s in data["steps"])


def test_rewrite_then_verify(capsys, tmp_path):
    trace_file = tmp_path / "trace.jsonl"
    code, out, _ = run(capsys, "rewrite", "sigma * tau * sigma * tau", "--trace", str(trace_file), "--json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["final"] == []
    assert trace_file.exists()

    code, out, _ = run(capsys, "verify", str(trace_file))
    assert code == EXIT_OK
    assert out.strip() == "OK"


def test_verify_rejects_tampered_trace(capsys, tmp_path):
    trace_file = tmp_path / "trace.jsonl"
    run(capsys, "rewrite", "sigma * tau * sigma * tau", "--trace", str(trace_file))
    lines = trace_file.read_text().splitlines()
    record = json.loads(lines[1])
    record["position"] += 50
    lines[1] = json.dumps(record)
    trace_file.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", "--trace", str(trace_file), "--json")
    data = json.loads(out)
    assert code == EXIT_DOMAIN
    assert data["verdict"] == "REJECTED"
    assert data["first_failing_move"] == 0


def test_fuzz_formal_words(capsys):
    code, out, _ = run(capsys, "fuzz", "--trials", "2", "--mode", "formal", "--seed", "3", "--json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["ok"] == 2


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "decompose", "[X^2 : Y^2 : Z^2]")
    assert code == EXIT_DOMAIN
    assert err.startswith("NotHomaloidal")
    code, _, err = run(capsys, "rewrite", "sigma * tau", "--json")
    assert code == EXIT_DOMAIN
    assert json.loads(err.strip().splitlines()[-1])["error"] == "NotIdentityInput"


@pytest.mark.parametrize("argv", [
    ["compose", "sigma *"],
    ["compose", "frobnicate"],
    ["compose", "sigma", "--field", "fp:4"],
    ["verify"],
    ["unknown-command"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE
