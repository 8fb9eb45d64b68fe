import csv
import json

import pytest

from multient import cli
from multient.catalog import ghz
from multient.errors import InputError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "--list")
    assert code == 0 and "ame43" in out and "l_a2b2" in out


def test_measure_named(capsys):
    code, out, _ = run(capsys, "measure", "--named", "ghz", "--n", "4")
    doc = json.loads(out)
    assert code == 0 and doc["format"] == "multient v1"
    assert doc["gme_ame"] == pytest.approx(8 / 27, abs=1e-12)
    assert "k_uniform(1)" in doc["flags"]


def test_measure_polygon(capsys):
    code, out, _ = run(capsys, "measure", "--named", "ghz", "--n", "4", "--measures", "polygon")
    assert code == 0 and json.loads(out)["polygon"] == pytest.approx(1, abs=1e-6)


def test_emit_and_reload_round_trip(tmp_path, capsys):
    path = tmp_path / "s.json"
    assert run(capsys, "catalog", "--emit", "l_a4", "--params", "a=0.3+0.2j", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "measure", "--state", str(path))
    via_file = json.loads(out)["gme_ame"]
    code2, out2, _ = run(capsys, "measure", "--named", "l_a4", "--params", "a=0.3+0.2j")
    assert code == code2 == 0 and via_file == json.loads(out2)["gme_ame"]


def test_state_file_comment_lines(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text("# multient v1\n" + json.dumps(cli.state_to_json(ghz(3))))
    code, out, _ = run(capsys, "measure", "--state", str(path))
    assert code == 0 and json.loads(out)["gme_ame"] == pytest.approx(1)


@pytest.mark.parametrize("doc,msg", [
    ({"n": 2, "d": 2, "amplitudes": [[1, 0]] * 3}, "expected 4"),
    ({"n": 2, "d": 2, "amplitudes": [[1, 0], [0, 0], [0, 0], ["nan", 0]]}, "NaN"),
    ({"n": 2, "d": 2}, "amplitudes"),
    ({"n": 2, "d": 2, "amplitudes": [[0, 0]] * 4}, "zero vector"),
])
def test_bad_state_files(tmp_path, capsys, doc, msg):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "measure", "--state", str(path))
    assert code == 2 and msg.lower() in err.lower()


def test_input_errors(capsys):
    assert run(capsys, "measure", "--named", "nope")[0] == 2
    assert run(capsys, "measure")[0] == 2
    assert run(capsys, "weyl", "--samples", "0")[0] == 2
    assert run(capsys, "measure", "--named", "ame43", "--measures", "polygon")[0] == 2
    assert run(capsys, "perm", "--d", "3", "--measures", "polygon")[0] == 2
    assert run(capsys, "measure", "--named", "w", "--params", "n")[0] == 2
    with pytest.raises(SystemExit):
        cli.main(["perm", "--d", "5"])


def test_weyl_csv(tmp_path, capsys):
    path = tmp_path / "w.csv"
    assert run(capsys, "weyl", "--samples", "5", "--seed", "3", "--csv", str(path))[0] == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "# multient v1"
    rows = list(csv.DictReader(lines[1:]))
    assert len(rows) == 5
    for r in rows:
        assert abs(float(r["gme_ame_numeric"]) - float(r["gme_ame_closed"])) < 1e-10
        assert 0 <= float(r["polygon"]) <= 1 + 1e-9


def test_weyl_edge(capsys):
    code, out, _ = run(capsys, "weyl", "--mode", "edge", "--edge", "local_cnot",
                       "--samples", "3", "--no-polygon")
    rows = list(csv.DictReader(out.splitlines()[1:]))
    assert code == 0 and float(rows[-1]["gme_ame_closed"]) == pytest.approx(2 / 3)


def test_weyl_seed_determinism_across_threads(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "--threads", "1", "weyl", "--samples", "4", "--seed", "7", "--csv", str(a))
    run(capsys, "weyl", "--threads", "3", "--samples", "4", "--seed", "7", "--csv", str(b))
    assert a.read_text() == b.read_text()


def test_perm_outputs(tmp_path, capsys):
    rec, cls, rep = tmp_path / "r.csv", tmp_path / "c.csv", tmp_path / "rep.json"
    code, _, _ = run(capsys, "perm", "--d", "2", "--measures", "gme_ame,scott",
                     "--csv", str(rec), "--classes", str(cls), "--report", str(rep))
    assert code == 0
    rows = list(csv.DictReader(rec.read_text().splitlines()[1:]))
    assert len(rows) == 48 and rows[0]["index"] == "0" and rows[0]["images"] == "0;1;2;3"
    classes = list(csv.DictReader(cls.read_text().splitlines()[1:]))
    g = {(r["value_num"], r["value_den"]): int(r["count"]) for r in classes if r["measure"] == "gme_ame"}
    assert g == {("0", "1"): 8, ("2", "3"): 16}
    audit = json.loads(rep.read_text())["qubit_audit"]
    assert audit["gme_ame_max_without_pair_prefactor"] == "9/32"


def test_perm_enphase_thread_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "perm", "--d", "2", "--enphase", "binary", "--threads", "1", "--csv", str(a))
    run(capsys, "perm", "--d", "2", "--enphase", "binary", "--threads", "4", "--csv", str(b))
    assert a.read_text() == b.read_text()
    assert len(a.read_text().splitlines()) == 2 + 384


def test_perm_table_to_stdout(capsys):
    code, out, _ = run(capsys, "perm", "--d", "2", "--measures", "polygon")
    assert code == 0 and "polygon: 2 classes over 24 states" in out


def test_env_threads(monkeypatch):
    monkeypatch.setenv("ENT_THREADS", "2")
    assert cli.default_threads() == 2
    monkeypatch.setenv("ENT_THREADS", "x")
    with pytest.raises(InputError):
        cli.default_threads()


def test_parse_params():
    assert cli.parse_params("a=0.5,b=1+2j") == {"a": 0.5, "b": 1 + 2j}
    assert cli.parse_params(None) == {}
