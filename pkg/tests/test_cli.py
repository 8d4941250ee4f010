import json
import subprocess
import sys

import pytest

from hibilat.cli import EXIT_ERROR, EXIT_OK, EXIT_VIOLATION, main
from hibilat.formats import example_fixture_path

EXAMPLE = str(example_fixture_path())


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_example(capsys):
    code, out, _ = run(capsys, "build", EXAMPLE)
    assert code == EXIT_OK
    assert out.startswith("|L|=10 |J|=5 codim=5")


@pytest.mark.parametrize("chains, line", [
    ("3,2", "|L|=6 |J|=4 codim=2"),
    ("5", "|L|=5 |J|=5 codim=0"),
    ("2,2,2", "|L|=8 |J|=4 codim=4"),
])
def test_build_chains(capsys, chains, line):
    code, out, _ = run(capsys, "build", "--chains", chains)
    assert code == EXIT_OK
    assert out.startswith(line)


def test_build_json(capsys):
    code, out, _ = run(capsys, "build", "--json", "--from-lattice", EXAMPLE)
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["size"] == 10 and data["codim"] == 5 and data["paper_ji_count"] == 5


def test_singular_point_exits_2(capsys):
    code, out, _ = run(capsys, "smoothness", EXAMPLE, "--point", "3")
    assert code == EXIT_VIOLATION
    assert "singular (rank 4 < codim 5)" in out


def test_smooth_point_exits_0(capsys):
    code, out, _ = run(capsys, "smoothness", "--chains", "2,2", "--point", "a1")
    assert code == EXIT_OK
    assert out.startswith("smooth")


def test_chain_point(capsys):
    code, out, _ = run(capsys, "smoothness", "--chains", "4", "--point", "a2")
    assert code == EXIT_OK
    assert "smooth (codim 0)" in out


def test_full_smoothness_report(capsys):
    code, out, _ = run(capsys, "smoothness", "--json", EXAMPLE)
    data = json.loads(out)
    assert code == EXIT_VIOLATION
    assert "3" in data["singular"]
    assert len(data["points"]) == 10
    code, out, _ = run(capsys, "smoothness", "--json", "--chains", "3,3")
    assert code == EXIT_OK and json.loads(out)["all_smooth"]


def test_unknown_point(capsys):
    code, out, _ = run(capsys, "smoothness", "--json", EXAMPLE, "--point", "zz")
    assert code == EXIT_ERROR
    assert set(json.loads(out)) == {"error", "message"}


def test_classify_decompose_prune(capsys):
    code, out, _ = run(capsys, "classify", "--json", EXAMPLE)
    rep = json.loads(out)
    assert code == EXIT_OK and rep["tree"] and rep["honest"] and not rep["square"]
    code, out, _ = run(capsys, "decompose", "--json", "--chains", "3,2")
    assert code == EXIT_OK and sorted(json.loads(out)["factors"]) == [2, 3]
    code, out, _ = run(capsys, "decompose", "--json", EXAMPLE)
    assert code == EXIT_ERROR and json.loads(out)["error"] == "NotSquare"
    code, out, _ = run(capsys, "prune", "--json", EXAMPLE, "--beta", "3")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["pruned_size"] + len(data["complement"]) == 10


def test_prune_non_maximal(capsys):
    code, out, _ = run(capsys, "prune", "--json", EXAMPLE, "--beta", "2")
    assert code == EXIT_ERROR
    assert json.loads(out)["error"] == "NotMaximalJoinIrreducible"


def test_polytope(capsys):
    code, out, _ = run(capsys, "polytope", "--json", "--chains", "2,2")
    data = json.loads(out)
    assert code == EXIT_OK and data["all_unimodular"] and len(data["edges"]) == 4
    code, out, _ = run(capsys, "polytope", "--json", EXAMPLE)
    assert code == EXIT_VIOLATION and not json.loads(out)["all_unimodular"]


def test_diamonds(capsys):
    code, out, _ = run(capsys, "diamonds", "--json", "--chains", "3,2")
    data = json.loads(out)
    assert code == EXIT_OK
    assert len(data["diamonds"]) == len(data["relations"]) == 3


def test_export_files(tmp_path, capsys):
    code, out, _ = run(capsys, "export", EXAMPLE, "--dot", "--relations", "--polytope",
                       "--lattice-json", "--out", str(tmp_path))
    assert code == EXIT_OK
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["edges.txt", "jposet.dot", "lattice.dot", "lattice.json",
                     "relations.txt", "vertices.txt"]
    first = (tmp_path / "lattice.dot").read_bytes()
    run(capsys, "export", EXAMPLE, "--dot", "--out", str(tmp_path))
    assert (tmp_path / "lattice.dot").read_bytes() == first


def test_export_stdout(capsys):
    code, out, _ = run(capsys, "export", "--chains", "2,2", "--relations")
    assert code == EXIT_OK and out.count("\n") == 1


def test_export_needs_a_format(capsys):
    code, _, err = run(capsys, "export", EXAMPLE)
    assert code == EXIT_ERROR and "export needs" in err


def test_usage_errors(capsys):
    for argv in (["frob"], ["build"], ["build", "--chains", "x,2"], ["build", "--chains", "0"],
                 ["verify", "--theorem", "b"],
                 ["verify", "--theorem", "b", "--chains", "2", "--chain-products", "4"]):
        code, out, err = run(capsys, *argv, "--json")
        assert code == EXIT_ERROR, argv
        assert json.loads(out)["error"] == "UsageError"


def test_missing_file_text_mode(capsys):
    code, out, err = run(capsys, "build", "/nonexistent.json")
    assert code == EXIT_ERROR
    assert out == "" and err.startswith("error:")


def test_bad_json_reports_line(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"elements": [\n1,,2]}')
    code, out, _ = run(capsys, "build", "--json", str(f))
    assert code == EXIT_ERROR
    assert "bad.json:2:" in json.loads(out)["message"]


def test_size_cap_flag(capsys):
    code, out, _ = run(capsys, "build", "--json", "--chains", "10,10", "--max-size", "50")
    assert code == EXIT_ERROR
    assert json.loads(out)["error"] == "SizeLimitExceeded"


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "b", "--chain-products", "32")
    assert code == EXIT_OK and out.rstrip().endswith("PASS")
    code, out, _ = run(capsys, "verify", "--lemmas", "--random-trees", "10", "--seed", "7",
                       "--max-size", "300")
    assert code == EXIT_OK
    code, out, _ = run(capsys, "verify", "--json", "--theorem", "tree-honest", "--all-posets", "3",
                       "--labeled")
    data = json.loads(out)
    assert code == EXIT_OK and data["lattices"] == 1 + 1 + 3 + 19
    code, out, _ = run(capsys, "verify", "--json", "--theorem", "c", EXAMPLE)
    data = json.loads(out)
    assert code == EXIT_OK and data["counts"]["theorem-c"]["skip"] == 1


def test_campaign_out_file(tmp_path, capsys):
    f = tmp_path / "rep.json"
    code, out, _ = run(capsys, "campaign", "--json", "--all-posets", "3",
                       "--checks", "theorem-a,structure", "--out", str(f))
    assert code == EXIT_OK
    assert json.loads(f.read_text()) == json.loads(out)
    code, out, _ = run(capsys, "campaign", "--json", "--all-posets", "2", "--checks", "bogus")
    assert code == EXIT_ERROR


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hibilat", "build", "--chains", "3,2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("|L|=6 |J|=4 codim=2")
