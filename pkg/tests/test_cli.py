import json

import pytest

from eigenclose.cli import main

PT = """
[potential]
name = poschl-teller
dimension = 1
coupling = 1

[params]
r = 2
s = 2

[oracle]
enabled = on
half_width = 20
points = 1200

[theta]
points = 72
"""


def write(tmp_path, text, name="run.ini"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


@pytest.fixture
def pt_ini(tmp_path):
    return write(tmp_path, PT)


def test_bound_poschl_teller(pt_ini, tmp_path, capsys):
    assert main(["bound", "--config", pt_ini, "--out", str(tmp_path / "o")]) == 0
    out = capsys.readouterr().out
    row = next(line for line in out.splitlines() if line.startswith("RESULT4"))
    assert float(row.split()[-1]) == pytest.approx(4.0)
    certs = json.loads((tmp_path / "o" / "certificates.json").read_text())
    assert any(c["theorem_id"] == "RESULT4" and c["admissible"] for c in certs)


def test_bound_sup_norms(tmp_path, capsys):
    ini = write(tmp_path, PT.replace("r = 2\ns = 2", "r = inf\ns = inf"))
    assert main(["bound", "--config", ini, "--out", str(tmp_path / "o")]) == 0
    rows = capsys.readouterr().out.split("inadmissible:")[0].splitlines()[1:]
    assert [r.split()[0] for r in rows] == ["RELAM1"]


def test_bound_missing_theta(tmp_path, capsys):
    ini = write(tmp_path, PT.replace("dimension = 1", "dimension = 3")
                .replace("name = poschl-teller", "name = complex-gaussian")
                .replace("r = 2\ns = 2", "r = 4\ns = 4"))
    main(["bound", "--config", ini, "--out", str(tmp_path / "o")])
    out = capsys.readouterr().out
    line = next(line for line in out.split("inadmissible:")[1].splitlines()
                if line.strip().startswith("RES1:"))
    assert "theta" in line


def test_region_deterministic(pt_ini, tmp_path, capsys, monkeypatch):
    outs = []
    for workers in ("1", "1", "2"):
        monkeypatch.setenv("EIGENCLOSE_WORKERS", workers)
        d = tmp_path / f"r{len(outs)}"
        assert main(["region", "--config", pt_ini, "--out", str(d)]) == 0
        outs.append({f: (d / f).read_bytes() for f in ("region.json", "region.csv", "region.svg")})
    assert outs[0] == outs[1] == outs[2]
    assert "4" in capsys.readouterr().out


@pytest.mark.slow
def test_validate_poschl_teller(pt_ini, tmp_path, capsys):
    out = tmp_path / "v"
    assert main(["validate", "--config", pt_ini, "--out", str(out)]) == 0
    rows = json.loads((out / "verdicts.json").read_text())
    # one row per (eigenvalue, active constraint)
    assert {complex(v["re"], v["im"]) for v in rows} == {complex(rows[0]["re"], rows[0]["im"])}
    assert abs(complex(rows[0]["re"], rows[0]["im"]) + 1) < 1e-4
    assert all(v["inside"] and v["bs_norm"] >= 0.95 for v in rows)
    assert "RESULT4" in {v["certificate"] for v in rows}
    assert (out / "spectrum.tsv").exists()


@pytest.mark.slow
def test_validate_corrupted_constant(pt_ini, tmp_path):
    code = main(["validate", "--config", pt_ini, "--out", str(tmp_path / "c"),
                 "--corrupt-constant", "1e-3"])
    assert code == 1


def test_validate_zero_potential(tmp_path):
    ini = write(tmp_path, PT.replace("poschl-teller", "zero").replace("points = 1200", "points = 200"))
    assert main(["validate", "--config", ini, "--out", str(tmp_path / "z")]) == 0
    assert json.loads((tmp_path / "z" / "verdicts.json").read_text()) == []


def test_validate_needs_oracle(pt_ini, tmp_path):
    assert main(["validate", "--config", pt_ini, "--oracle", "off", "--out", str(tmp_path)]) == 2


def test_size_guard(tmp_path, capsys):
    ini = write(tmp_path, PT.replace("dimension = 1", "dimension = 3")
                .replace("poschl-teller", "complex-gaussian").replace("points = 1200", "points = 40"))
    assert main(["validate", "--config", ini, "--out", str(tmp_path / "s")]) == 2
    assert "points = 27" in capsys.readouterr().err


@pytest.mark.parametrize("text", ["[potential]\nname = nope\n", "[params]\np = 0.5\n", "garbage"])
def test_malformed_config(tmp_path, text):
    assert main(["bound", "--config", write(tmp_path, text), "--out", str(tmp_path)]) == 2


def test_missing_config(tmp_path):
    assert main(["bound", "--config", str(tmp_path / "absent.ini")]) == 2


def test_selfcheck(capsys):
    assert main(["selfcheck"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out


def test_selfcheck_perturbed(capsys):
    assert main(["selfcheck", "--perturb-legendre", "1e-3"]) == 1
    assert "FAIL" in capsys.readouterr().out
