import json

import pytest

from flatwall.cli import main


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def wall_file(tmp_path, capsys):
    p = tmp_path / "w.json"
    assert run(capsys, "gen-wall", "--r", "3", "--subdivide", "2", "--seed", "4", "--out", str(p))[0] == 0
    return p


@pytest.fixture
def host_file(tmp_path, capsys):
    p = tmp_path / "h.json"
    code, _, _ = run(capsys, "gen-wall", "--r", "3", "--host", "6", "--anchor", "1", "1", "--seed", "2",
                     "--out", str(p))
    assert code == 0
    return p


def society(tmp_path, edges, boundary):
    p = tmp_path / "s.json"
    vs = sorted({v for e in edges for v in e} | set(boundary))
    p.write_text(json.dumps({"graph": {"vertices": vs, "edges": edges}, "boundary": boundary}))
    return p


def test_rural_and_not(tmp_path, capsys):
    p = society(tmp_path, [[1, 2], [2, 3], [3, 4], [4, 1]], [1, 2, 3, 4])
    code, out, _ = run(capsys, "check-rural", str(p), "--json")
    assert code == 0 and json.loads(out)["rural"]
    p = society(tmp_path, [[1, 3], [2, 4]], [1, 2, 3, 4])
    code, out, _ = run(capsys, "check-rural", str(p), "--json")
    rep = json.loads(out)
    assert code == 1 and not rep["rural"] and rep["cross"] == {"path1": [1, 3], "path2": [2, 4]}


def test_tighten_reports_a_clean_fixpoint(tmp_path, capsys):
    p = society(tmp_path, [[1, 2], [2, 3], [3, 1], [1, 5], [5, 3]], [1, 2, 3])
    code, out, _ = run(capsys, "tighten", str(p), "--json")
    assert code == 0 and json.loads(out)["violations"] == []


def test_flatness_search_and_verify(wall_file, tmp_path, capsys):
    code, out, _ = run(capsys, "check-flat", str(wall_file), "--json")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "found"
    cert = tmp_path / "c.json"
    cert.write_text(json.dumps(rep["certificate"]))
    code, out, _ = run(capsys, "check-flat", str(wall_file), "--cert", str(cert), "--json")
    assert code == 0 and json.loads(out)["verified"]
    doc = rep["certificate"]
    doc["omega"] = doc["omega"][1:]
    cert.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "check-flat", str(wall_file), "--cert", str(cert), "--json")
    assert code == 1 and json.loads(out)["failures"]


def test_engine_and_subwall_on_a_host(host_file, capsys):
    code, out, _ = run(capsys, "lemma51", str(host_file), "--json")
    assert code == 0 and json.loads(out)["failures"] == []
    code, out, _ = run(capsys, "subwall-flat", str(host_file), "--anchor", "0", "0", "--json")
    assert code == 0 and json.loads(out)["verified"]


def test_counterwall_commands(capsys):
    code, out, _ = run(capsys, "check-k6", "--R", "2", "--json")
    assert code == 0 and json.loads(out)["status"] == "absent"
    code, out, _ = run(capsys, "check-k6", "--R", "3", "--budget", "5", "--json")
    assert code == 2 and json.loads(out)["status"] == "unknown"
    code, out, _ = run(capsys, "exhibit-cross", "--case", "B", "--json")
    assert code == 0 and json.loads(out)["failures"] == []
    code, out, _ = run(capsys, "gen-counterwall", "--R", "3", "--anchor", "0", "0", "--r", "3")
    assert code == 0 and json.loads(out)["wall"]["sub"] == {"anchor": [0, 0], "r": 3}


def test_dot_output(wall_file, capsys):
    code, out, _ = run(capsys, "export-dot", str(wall_file))
    assert code == 0 and out.startswith("graph")
    code, out, _ = run(capsys, "export-dot", "--counterwall", "6", "--cross", "A")
    assert code == 0 and "color" in out


def test_usage_and_input_errors(tmp_path, capsys):
    assert run(capsys)[0] == 64
    with pytest.raises(SystemExit) as exc:
        main(["check-rural"])
    assert exc.value.code == 64
    bad = tmp_path / "bad.json"
    bad.write_text('{"graph": {"vertices": [1],\n "edges": [}')
    code, _, err = run(capsys, "check-rural", str(bad))
    assert code == 64 and "bad.json:2:" in err
    missing = tmp_path / "nograph.json"
    missing.write_text("{}")
    code, _, err = run(capsys, "check-rural", str(missing))
    assert code == 64 and "'graph'" in err
    code, _, err = run(capsys, "check-rural", str(tmp_path / "absent.json"))
    assert code == 64


def test_same_seed_same_bytes(capsys):
    args = ("gen-wall", "--r", "4", "--host", "7", "--anchor", "1", "2", "--seed", "9", "--subdivide", "3")
    first = run(capsys, *args)
    assert first == run(capsys, *args)
    other = run(capsys, *args[:-4], "--seed", "10", "--subdivide", "3")
    assert other[1] != first[1]
