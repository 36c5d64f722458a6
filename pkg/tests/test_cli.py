import json

import pytest

from conftest import asset_path, golden_text
from futamix.cli import main


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_run_pow(capsys):
    assert cli(capsys, "run", "assets/pow.fcl", "--input", "(3 2)")[:2] == (0, "9\n")


def test_run_arity(capsys):
    code, _, err = cli(capsys, "run", "assets/pow.fcl", "--input", "(3)")
    assert code == 2 and "input" in err


def test_run_w(capsys):
    assert cli(capsys, "run", asset_path("pow.w"), "--input", "(2 10)")[:2] == (0, "1024\n")


def test_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.fcl"
    bad.write_text("(program (read x) a ((a () (goto")
    assert cli(capsys, "run", str(bad), "--input", "(1)")[0] == 2


def test_validation_error(tmp_path, capsys):
    bad = tmp_path / "bad.fcl"
    bad.write_text("(program (read x) a ((a () (goto b))))")
    code, _, err = cli(capsys, "run", str(bad), "--input", "(1)")
    assert code == 2 and "UnboundLabel" in err


def test_missing_file(capsys):
    assert cli(capsys, "run", "no/such.fcl")[0] == 2


def test_budget_exceeded(capsys):
    code = cli(capsys, "run", "assets/pow.fcl", "--input", "(3 2)", "--budget-steps", "3")[0]
    assert code == 3


def test_runtime_error(tmp_path, capsys):
    p = tmp_path / "car.fcl"
    p.write_text("(program (read x) a ((a () (return (op car (var x))))))")
    assert cli(capsys, "run", str(p), "--input", "(5)")[0] == 4


def test_bad_arguments(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_bta(capsys):
    code, out, _ = cli(capsys, "bta", "assets/pow.fcl", "--static", "e")
    assert code == 0 and out == "((b D) (e S) (result D))\n"


def test_bta_unknown_static(capsys):
    assert cli(capsys, "bta", "assets/pow.fcl", "--static", "q=1")[0] == 2


def test_mix_square(capsys):
    code, out, _ = cli(capsys, "mix", "assets/pow.fcl", "--static", "e=2")
    assert code == 0 and out == golden_text("pow_square.fcl")


def test_mix_with_division_file(tmp_path, capsys):
    div = tmp_path / "pow.div"
    div.write_text("((b D) (e S) (result S))")
    code = cli(capsys, "mix", "assets/pow.fcl", "--division", str(div), "--static", "e=2")[0]
    assert code == 2
    div.write_text("((b S) (e D) (result D))")
    out = tmp_path / "r.fcl"
    assert cli(capsys, "mix", "assets/pow.fcl", "--division", str(div), "--static", "b=3",
               "-o", str(out))[0] == 0
    assert "(read e)" in out.read_text()


def test_mix_budget(capsys):
    code = cli(capsys, "mix", "assets/pow.fcl", "--static", "e=-1", "--budget-steps", "1000")[0]
    assert code == 3


def test_mix_missing_static(capsys, tmp_path):
    div = tmp_path / "pow.div"
    div.write_text("((b D) (e S) (result D))")
    assert cli(capsys, "mix", "assets/pow.fcl", "--division", str(div))[0] == 2


def test_project1(tmp_path, capsys):
    code = cli(capsys, "project", "1", "-o", str(tmp_path))[0]
    assert code == 0
    assert (tmp_path / "p1_pow.fcl").read_text() == golden_text("p1_pow.fcl")


def test_project1_other_guest(tmp_path, capsys):
    assert cli(capsys, "project", "1", asset_path("identity.w"), "-o", str(tmp_path))[0] == 0
    assert (tmp_path / "p1_identity.fcl").exists()


def test_diagram(capsys, tmp_path):
    code, out, _ = cli(capsys, "diagram", "mix", "program=pow_T", "static=e=2")
    assert code == 0 and "square" in out and "dashed" in out
    assert cli(capsys, "diagram", "tower")[0] == 2
    assert cli(capsys, "diagram", "mix", "nonsense")[0] == 2


def test_version(capsys):
    assert main(["--version"]) == 0
    assert "futamix" in capsys.readouterr().out
