import json

import pytest

from hdx import io
from hdx.cli import main
from hdx.family import family_report
from hdx.fixtures import cycle_datum, cyclic_action, fixture_cycle_z, fixture_torus_z2
from hdx.hodge import CochainComplex, spectrum_report
from hdx.simplicial import build_complex
from zoo import cycle


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def cycle_files(tmp_path):
    G, act = fixture_cycle_z(2)
    return write(tmp_path / "g.json", G.to_json()), write(tmp_path / "a.json", act.to_json())


def test_round_sig():
    assert io.round_sig(0.1 + 0.2) == 0.3
    assert io.round_sig(None) is None
    assert io.round_sig(-0.0) == 0.0


def test_complex_json_roundtrip():
    K = build_complex([(0, 1, 2), (2, 3)], vertex_count=5)
    assert io.complex_from_json(io.complex_to_json(K)) == K


def test_spectrum_report_roundtrip():
    r = spectrum_report(CochainComplex.from_simplicial(cycle(6)), 0)
    data = io.spectrum_report_to_json(r)
    again = io.spectrum_report_from_json(json.loads(io.dumps(data)))
    assert io.spectrum_report_to_json(again) == data
    assert again.betti_exact == 1


def test_family_json_fixed_point():
    rep = family_report(cycle_datum(), [cyclic_action(m) for m in (1, 2, 3)], 1, 0.1)
    text = io.dumps(io.family_to_json(rep))
    back = io.family_from_json(json.loads(text))
    assert io.dumps(io.family_to_json(back)) == text
    assert back.verdict == rep.verdict
    assert [m.label for m in back.members] == [m.label for m in rep.members]


def test_family_csv():
    rep = family_report(cycle_datum(), [cyclic_action(m) for m in (1, 2)], 1, 0.1)
    lines = io.family_csv(rep).splitlines()
    assert lines[0].split(",") == io.FAMILY_CSV_COLUMNS
    assert len(lines) == 1 + 2 * 2
    assert lines[1].startswith("Z/1,1,3,0,3.0,")


def test_write_atomic(tmp_path):
    p = tmp_path / "sub" / "x.txt"
    io.write_atomic(p, "a")
    io.write_atomic(p, "b")
    assert p.read_text() == "b"
    assert [q.name for q in p.parent.iterdir()] == ["x.txt"]


def test_cli_complex_commands(tmp_path, capsys):
    f = write(tmp_path / "c.json", {"facets": [[0, 1], [1, 2], [0, 2]]})
    out = tmp_path / "s.json"
    assert main(["complex", "spectrum", "--facets", f, "--degree", "0", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["eigenvalues"] == pytest.approx([0.0, 3.0, 3.0], abs=1e-12) and rep["betti_exact"] == 1
    assert main(["complex", "betti", "--facets", f]) == 0
    assert json.loads(capsys.readouterr().out) == {"betti": [1, 1]}
    assert main(["complex", "info", "--facets", f]) == 0
    info = json.loads(capsys.readouterr().out)
    assert info["counts"] == [3, 3] and info["problems"] == []
    assert main(["complex", "matrix", "--facets", f, "--degree", "0"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "row,col,value"


def test_cli_deterministic(tmp_path, cycle_files):
    g, a = cycle_files
    a2 = write(tmp_path / "a2.json", cyclic_action(5).to_json())
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        csv = tmp_path / f"r{k}.csv"
        assert main(["family", "report", "--gamma", g, "--actions", a, a2, "--n", "1",
                     "--threshold", "0.1", "--out", str(out), "--csv", str(csv)]) == 0
        outs.append((out.read_bytes(), csv.read_bytes()))
    assert outs[0] == outs[1]
    rep = json.loads(outs[0][0])
    assert rep["verdict"]["expander_at_scale"] is True
    assert [m["label"] for m in rep["members"]] == ["Z/2", "Z/5"]


def test_cli_shapiro_and_symbol(tmp_path, capsys):
    G, act = fixture_torus_z2(2, 1)
    g = write(tmp_path / "g.json", G.to_json())
    a = write(tmp_path / "a.json", act.to_json())
    for l in (0, 1):
        assert main(["shapiro", "verify", "--gamma", g, "--action", a, "--degree", str(l)]) == 0
        assert "EXACT MATCH" in capsys.readouterr().out
    for l in (0, 1, 2):
        assert main(["symbol", "check", "--gamma", g, "--action", a, "--degree", str(l)]) == 0
    assert main(["shapiro", "verify", "--gamma", g, "--action", a, "--degree", "2"]) == 1


def test_cli_quotient_and_fixture(tmp_path):
    g, a = tmp_path / "g.json", tmp_path / "a.json"
    assert main(["fixture", "cycle", "--m", "4", "--gamma", str(g), "--action", str(a)]) == 0
    out = tmp_path / "q.json"
    assert main(["quotient", "build", "--gamma", str(g), "--action", str(a), "--out", str(out)]) == 0
    K = io.complex_from_json(json.loads(out.read_text()))
    assert K.counts() == [12, 12]
    assert main(["fixture", "torus", "--m1", "1", "--m2", "2", "--gamma", str(g), "--action", str(a)]) == 0
    assert json.loads(a.read_text())["N"] == 2


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["bogus"]) == 2
    assert main(["complex", "spectrum", "--facets", "x.json"]) == 2
    assert main(["complex", "betti", "--facets", str(tmp_path / "missing.json")]) == 1
    assert main(["fixture", "cycle", "--m", "0", "--gamma", str(tmp_path / "g"),
                 "--action", str(tmp_path / "a")]) == 1
    bad = write(tmp_path / "bad.json", {"facets": [[0, 0]]})
    assert main(["complex", "info", "--facets", bad]) == 1
    perm = write(tmp_path / "p.json", {"N": 2, "perms": [[0, 0]]})
    G, _ = fixture_cycle_z(1)
    g = write(tmp_path / "g.json", G.to_json())
    assert main(["shapiro", "verify", "--gamma", g, "--action", perm, "--degree", "0"]) == 1
    capsys.readouterr()


def test_zero_tol_env(tmp_path, monkeypatch, capsys):
    f = write(tmp_path / "c.json", {"facets": [[0, 1], [1, 2], [0, 2]]})
    monkeypatch.setenv("HDX_ZERO_TOL", "1e-6")
    assert main(["complex", "spectrum", "--facets", f, "--degree", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["zero_tol"] == 1e-6
    # a tolerance that swallows real eigenvalues contradicts the exact Betti number
    monkeypatch.setenv("HDX_ZERO_TOL", "10")
    assert main(["complex", "spectrum", "--facets", f, "--degree", "0"]) == 1
