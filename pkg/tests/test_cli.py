import json
import subprocess
import sys
from pathlib import Path

import pytest

from okc.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_lazard(capsys):
    code, data = run_json(capsys, "lazard", "--max-degree", "3")
    assert code == 0
    assert data["data"]["ranks"] == [1, 1, 2, 3]
    code, data = run_json(capsys, "lazard", "--max-degree", "1")
    assert data["data"]["ranks"] == [1, 1]
    code, _, err = run(capsys, "lazard", "--max-degree", "0")
    assert code == 2 and "max-degree" in err


def test_lazard_cap_and_warning(capsys, monkeypatch):
    code, _, _ = run(capsys, "lazard", "--max-degree", "9")
    assert code == 2
    monkeypatch.setenv("OKC_MAX_TRUNC", "2")
    code, _, _ = run(capsys, "lazard", "--max-degree", "3")
    assert code == 2
    monkeypatch.setenv("OKC_MAX_TRUNC", "oops")
    code, _, _ = run(capsys, "lazard", "--max-degree", "3")
    assert code == 2


def test_fgl(capsys):
    code, data = run_json(capsys, "fgl", "nseries", "--law", "mult", "-n", "3", "--trunc", "4")
    assert code == 0 and data["data"]["series"] == "3*u - 3*beta*u^2 + beta^2*u^3"
    code, data = run_json(capsys, "fgl", "multisum", "--law", "add", "2", "3")
    assert data["data"]["series"] == "2*u1 + 3*u2"
    code, data = run_json(capsys, "fgl", "decompose", "--law", "mult", "1", "1")
    assert data["data"]["G"] == {"1": "1", "2": "1", "1,2": "-beta"}


def test_fgl_usage_errors(capsys):
    assert run(capsys, "fgl", "nseries", "--law", "mult")[0] == 2
    assert run(capsys, "fgl", "multisum")[0] == 2
    assert run(capsys, "fgl", "multisum", "--trunc", "0", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["fgl", "multisum", "--law", "add", "x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["fgl", "nseries", "--law", "nope"])
    assert exc.value.code == 2


def test_divclass_fixture(capsys):
    code, data = run_json(capsys, "divclass", "verify", "--config", str(FIXTURES / "two_h.json"))
    assert code == 0
    assert data["data"]["expected"] == "2*beta*x - beta*x^2"


def test_divclass_bad_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "divclass", "verify", "--config", str(bad))[0] == 2
    empty = tmp_path / "empty.json"
    empty.write_text('{"dims": [2], "components": []}')
    assert run(capsys, "divclass", "verify", "--config", str(empty))[0] == 2
    assert run(capsys, "divclass", "verify", "--config", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "divclass", "verify", "--trials", "0")[0] == 2


def test_divclass_random_is_deterministic(capsys):
    code, first, _ = run(capsys, "divclass", "verify", "--trials", "15", "--seed", "3", "--json")
    assert code == 0
    _, again, _ = run(capsys, "divclass", "verify", "--trials", "15", "--seed", "3", "--json")
    _, parallel, _ = run(capsys, "divclass", "verify", "--trials", "15", "--seed", "3", "--json", "--jobs", "2")
    assert first == again == parallel
    data = json.loads(first)["data"]
    assert data["summary"] == "15/15 verified"
    assert data["generator_version"] == 1


def test_compare(capsys):
    code, data = run_json(capsys, "compare", "fundclass", "--dims", "2", "--degrees", "2")
    assert code == 0
    assert data["data"]["theta_plus"] == "2*h"
    assert data["data"]["theta_times"] == "2*beta*x - beta*x^2"
    code, data = run_json(capsys, "compare", "fundclass", "--dims", "3", "--degrees", "2", "3")
    assert data["data"]["theta_plus"] == "6*h^2"
    code, data = run_json(capsys, "compare", "fundclass", "--dims", "1", "2", "--degrees", "2,3")
    assert data["data"]["theta_plus"] == "2*h1 + 3*h2"
    assert run(capsys, "compare", "fundclass", "--dims", "1", "--degrees", "1", "1")[0] == 2
    assert run(capsys, "compare", "fundclass", "--dims", "2", "--degrees", "a")[0] == 2


def test_failed_identity_exits_one(capsys, monkeypatch):
    import okc.cli as cli
    from okc.report import Check, Report

    def broken(_):
        return Report("broken", [Check("1 = 2", "1", "2", False)])

    monkeypatch.setattr(cli, "verify_fundamental_triangle", broken)
    code, out, _ = run(capsys, "compare", "fundclass", "--dims", "2", "--degrees", "2")
    assert code == 1 and "[FAIL]" in out


def test_text_output_is_stable(capsys):
    _, a, _ = run(capsys, "fgl", "decompose", "1", "1")
    _, b, _ = run(capsys, "fgl", "decompose", "1", "1")
    assert a == b
    assert "decompose for the multiplicative law" in a


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "okc", "fgl", "nseries", "-n", "2", "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["data"]["series"] == "2*u - beta*u^2"
