import json
import shutil

from affstr import build_fan
from affstr.cli import main
from affstr.fan import Fan
from affstr.folding import FoldedFan
from affstr.strings import StringTable
from affstr.verify import fixture_dir


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fan_cutoff0_json(capsys, a2):
    code, out, _ = run(capsys, "fan", "--cutoff", "0", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 5
    assert {"root": [0, 1], "grade": 0, "mult": 1} in data
    assert Fan.from_json(a2, 0, data).vectors == build_fan(a2, 0).vectors


def test_fan_cutoff2_matches_table(capsys):
    code, out, _ = run(capsys, "fan", "--cutoff", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data) == 23


def test_fan_check_flag(capsys):
    code, out, _ = run(capsys, "fan", "--cutoff", "4", "--check")
    assert code == 0


def test_invalid_algebra_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code, out, err = run(capsys, "fan", "--algebra", str(bad), "--cutoff", "1")
    assert code == 2
    assert "error" in err


def test_inconsistent_mu_level(capsys):
    code, _, err = run(capsys, "strings", "--level", "1", "--mu", "2,0", "--cutoff", "4")
    assert code == 2 and "zeroth label" in err


def test_strings_level1(capsys, a2):
    code, out, _ = run(
        capsys, "strings", "--level", "1", "--mu", "0,0", "--cutoff", "20",
        "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    table = StringTable.from_json(a2, data)
    assert table.coefficients[0][:5] == (1, 2, 5, 10, 20)
    assert table.coefficients[0][20] == 24842


def test_strings_level2_and_4(capsys):
    code, out, _ = run(
        capsys, "strings", "--level", "2", "--mu", "0,0", "--cutoff", "10",
        "--format", "json",
    )
    data = json.loads(out)
    assert code == 0
    assert len(data["strings"]) == 2
    assert data["strings"][0]["coeffs"][-1] == 3736
    code, out, _ = run(
        capsys, "strings", "--level", "4", "--mu", "1,1", "--cutoff", "9",
        "--format", "json", "--verify",
    )
    data = json.loads(out)
    assert code == 0
    assert len(data["strings"]) == 5
    assert data["strings"][0]["coeffs"][0] == 2


def test_strings_csv(capsys):
    code, out, _ = run(
        capsys, "strings", "--level", "2", "--mu", "0,0", "--cutoff", "3",
        "--format", "csv",
    )
    lines = out.strip().splitlines()
    assert lines[0] == "string,xi,n,coefficient"
    assert len(lines) == 1 + 2 * 4


def test_folded_fan_json_round_trip(capsys):
    code, out, _ = run(
        capsys, "folded-fan", "--level", "2", "--mu", "0,0", "--cutoff", "6",
        "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert len(data) == 2
    first = FoldedFan.from_json(data[0])
    assert first.eta(0, 0) == -1


def test_mult_command(capsys):
    code, out, _ = run(
        capsys, "mult", "--level", "1", "--mu", "0,0", "--cutoff", "6",
        "--weight", "0,0", "--grade", "-3", "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["multiplicity"] == 10


def test_character_command(capsys):
    code, out, _ = run(
        capsys, "character", "--level", "1", "--mu", "0,0", "--cutoff", "3",
        "--depth", "1", "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert {"labels": [0, 0], "grade": 0, "mult": 1} in data
    total_at_minus1 = sum(e["mult"] for e in data if e["grade"] == -1)
    assert total_at_minus1 == 8


def test_output_determinism(capsys):
    _, one, _ = run(capsys, "strings", "--level", "2", "--mu", "1,0",
                    "--cutoff", "8", "--format", "json")
    _, two, _ = run(capsys, "strings", "--level", "2", "--mu", "1,0",
                    "--cutoff", "8", "--format", "json")
    assert one == two


def test_out_file(tmp_path, capsys):
    target = tmp_path / "fan.json"
    code, out, _ = run(capsys, "fan", "--cutoff", "1", "--format", "json",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert len(json.loads(target.read_text())) == 11


def test_verify_default_fixtures(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "FAIL" not in out
    assert "checks passed" in out


def test_verify_empty_fixture_dir(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "--fixtures", str(tmp_path))
    assert code == 0
    assert "warning" in out


def test_verify_missing_fixture_dir(tmp_path, capsys):
    code, _, err = run(capsys, "verify", "--fixtures", str(tmp_path / "nope"))
    assert code == 2


def test_verify_locates_injected_fault(tmp_path, capsys, monkeypatch):
    for path in fixture_dir().glob("*.json"):
        shutil.copy(path, tmp_path / path.name)
    target = tmp_path / "level2_a2.json"
    data = json.loads(target.read_text())
    data["classes"][0]["sigma"][0][4] += 1
    target.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--fixtures", str(tmp_path))
    assert code == 3
    assert any(
        line.startswith("FAIL") and "class I" in line for line in out.splitlines()
    )
    # the environment variable points the harness at the same directory
    monkeypatch.setenv("AFFSTR_FIXTURES", str(tmp_path))
    code, out, _ = run(capsys, "verify")
    assert code == 3
