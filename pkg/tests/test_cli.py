import json

import pytest

from app.cli import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFY_FAILED, main

SPEC = """chain S3deg3 = [ (0 1 2), (0 1) ] > [ (0 1 2) ] > [ ]
group G1 = example(G, 1)
"""


@pytest.fixture
def spec_file(tmp_path):
    path = tmp_path / "groups.spec"
    path.write_text(SPEC, encoding="utf-8")
    return str(path)


def test_rank(spec_file, capsys):
    assert main(["rank", spec_file, "S3deg3"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["rho_k"] == ["0", "1", "2"]
    assert main(["rank", spec_file, "G1", "--alpha", "1"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["verdicts"]["summary"] == "L-1-CLI, not 1-CLI"


def test_tree_prints_dot(spec_file, capsys):
    assert main(["tree", spec_file, "S3deg3", "--k", "1", "--dot"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("digraph")


def test_truncate_to_stdout(spec_file, capsys):
    assert main(["truncate", spec_file, "G1", "--depth", "4", "--breadth", "2"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("chain G1_d4_b2 degree")


def test_examples(capsys):
    assert main(["examples", "--alpha", "w+1", "--kind", "H"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["examples"][0]["expr"] == "powinf(restricted(seq(G, w)))"


def test_verify_exit_codes(capsys):
    assert main(["verify", "--seed", "1", "--trials", "2", "--check", "rho0-zero"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["ok"]
    code = main(["verify", "--seed", "1", "--trials", "20", "--check", "product-law", "--mutant", "product-sum"])
    assert code == EXIT_VERIFY_FAILED
    assert json.loads(capsys.readouterr().out)["failed"] == ["product-law"]


def test_input_errors(spec_file, tmp_path, capsys):
    assert main(["rank", str(tmp_path / "missing.spec"), "S3deg3"]) == EXIT_INPUT_ERROR
    assert main(["rank", spec_file, "nope"]) == EXIT_INPUT_ERROR
    assert main(["tree", spec_file, "S3deg3", "--k", "3"]) == EXIT_INPUT_ERROR
    assert main(["examples", "--alpha", "w+"]) == EXIT_INPUT_ERROR
    assert main(["verify", "--trials", "-1"]) == EXIT_INPUT_ERROR
    assert "error:" in capsys.readouterr().err
