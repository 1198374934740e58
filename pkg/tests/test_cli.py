import json

import pytest

from hcpres.cli import main
from hcpres.generators import flower_snark, modified_flower_snark, read_added_edge
from hcpres.graph import read_graph


@pytest.fixture
def mflower_file(tmp_path):
    out = tmp_path / "mf3.txt"
    assert main(["generate", "flower", "--k", "3", "--modified", "--out", str(out)]) == 0
    return out


def test_generate_flower(tmp_path):
    out = tmp_path / "f.txt"
    assert main(["generate", "flower", "--k", "1", "--out", str(out)]) == 0
    assert read_graph(out) == flower_snark(1)


def test_generate_modified_writes_sidecar(mflower_file):
    assert read_graph(mflower_file) == modified_flower_snark(3).graph
    assert read_added_edge(mflower_file.read_text()) == (1, 2)


def test_generate_bad_k(tmp_path, capsys):
    assert main(["generate", "flower", "--k", "2", "--out", str(tmp_path / "x")]) == 2
    assert "odd" in capsys.readouterr().err


def test_solve_json(mflower_file, capsys):
    assert main(["solve", str(mflower_file), "--scheme", "resistance", "--json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["status"] == "Found" and len(d["cycle"]) == 20
    assert {"tour_weight", "nodes_expanded", "elapsed_ms"} <= set(d)


def test_solve_text_and_non_hamiltonian(tmp_path, capsys):
    f = tmp_path / "f.txt"
    main(["generate", "flower", "--k", "1", "--out", str(f)])
    capsys.readouterr()
    assert main(["solve", str(f), "--scheme", "unit"]) == 1
    assert capsys.readouterr().out.startswith("NonHamiltonian")


def test_solve_heuristic_and_budget(mflower_file, capsys):
    main(["solve", str(mflower_file), "--heuristic", "--max-nodes", "5", "--json"])
    assert json.loads(capsys.readouterr().out)["status"] == "BudgetExhausted"
    main(["solve", str(mflower_file), "--scheme", "random", "--seed", "3", "--optimal", "--max-time", "5"])
    assert capsys.readouterr().out.startswith("Found")


def test_export_formats(mflower_file, tmp_path):
    sparse = tmp_path / "s.txt"
    full = tmp_path / "f.tsp"
    assert main(["export", str(mflower_file), "--scheme", "resistance", "--format", "sparse", "--out", str(sparse)]) == 0
    assert sparse.read_text().splitlines()[0] == "20 31"
    assert main(["export", str(mflower_file), "--scheme", "conductivity", "--format", "full", "--out", str(full)]) == 0
    text = full.read_text()
    assert "NAME: mf3" in text and text.endswith("EOF\n")


def test_verify(tmp_path, capsys):
    f = tmp_path / "c.txt"
    main(["generate", "cycle", "--n", "5", "--out", str(f)])
    assert main(["verify", str(f), "--cycle", "0 1 2 3 4"]) == 0
    assert main(["verify", str(f), "--cycle", "0,2,4,1,3"]) == 1
    tour = tmp_path / "tour"
    tour.write_text("4\n3\n2\n1\n0\n")
    assert main(["verify", str(f), "--tour", str(tour)]) == 0


def test_resistance_dump(tmp_path, capsys):
    f = tmp_path / "k.txt"
    main(["generate", "complete", "--n", "4", "--out", str(f)])
    out = tmp_path / "omega.csv"
    assert main(["resistance", str(f), "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "kirchhoff_index 3"
    assert out.read_text().splitlines()[0] == "0,0.5,0.5,0.5"


def test_bench(tmp_path, capsys):
    cfg = {
        "instances": [{"label": "mf", "generator": "modified_flower", "k": 1}],
        "schemes": ["unit", "resistance"],
        "budget": {"max_nodes": 10000},
        "workers": 1,
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert main(["bench", "--config", str(path), "--out", str(tmp_path / "rep")]) == 0
    assert (tmp_path / "rep" / "report.md").exists()
    assert len((tmp_path / "rep" / "report.csv").read_text().splitlines()) == 3
    assert "| mf | 12 |" in capsys.readouterr().out
