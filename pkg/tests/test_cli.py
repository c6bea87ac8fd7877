import json

import pytest

from hochex import cli, io
from hochex.zoo import corner_ideal_extension, zoo_parse

import derived
import expected


def _json(capsys, argv):
    code = cli.main(argv + ["--output", "json"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if code == 0 else None)


def test_hh_zoo(capsys):
    assert derived.l_cli_hh() == expected.FROZEN["cli_hh_q"]
    code, rep = _json(capsys, ["hh", "--zoo", "matrix:2", "--max-degree", "2"])
    assert code == 0 and rep["betti"][0] == 1


def test_certify_agrees(capsys):
    _, fast = _json(capsys, ["hh", "--zoo", "jet:1,1", "--max-degree", "3"])
    _, exact = _json(capsys, ["hh", "--zoo", "jet:1,1", "--max-degree", "3", "--certify"])
    assert fast["betti"] == exact["betti"]


def test_algebra_file(capsys, tmp_path):
    f = tmp_path / "a.json"
    f.write_text(json.dumps(io.algebra_to_json(zoo_parse("dual"))))
    code, rep = _json(capsys, ["hh", "--algebra", str(f), "--max-degree", "3"])
    assert code == 0 and rep["betti"][:2] == [2, 1]


def test_excision_file(capsys, tmp_path):
    f = tmp_path / "ext.json"
    f.write_text(json.dumps(io.extension_to_json(corner_ideal_extension(1))))
    code, rep = _json(capsys, ["excision", "--extension", str(f), "--max-degree", "3"])
    assert code == 0 and rep["les"]["exact"] and rep["cofibre"]["ok"]


def test_excision_matches_frozen():
    assert derived.l_cli_excision() == expected.FROZEN["cli_excision_corner"]


def test_hunital_nilpotent(capsys):
    code, rep = _json(capsys, ["hunital", "--zoo", "nilpotent-jet:2,1", "--max-degree", "3"])
    assert code == 0
    assert rep["certificate"]["mode"] == "failed" and rep["certificate"]["failure_degree"] == 1


def test_text_outputs(capsys):
    for argv in (["hc", "--zoo", "q"], ["hp", "--zoo", "q", "--k-max", "2"], ["sbi", "--zoo", "q"],
                 ["hkr", "--zoo", "jet:1,1", "--max-degree", "2"], ["zoo"], ["zoo", "--zoo", "corner:1"],
                 ["excision", "--zoo", "corner:1", "--max-degree", "2"]):
        assert cli.main(argv) == 0, argv
        assert capsys.readouterr().out.strip()


def test_out_file(tmp_path, capsys):
    f = tmp_path / "r.json"
    assert cli.main(["hh", "--zoo", "q", "--output", "json", "--out", str(f)]) == 0
    assert json.loads(f.read_text())["command"] == "hh"
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("argv", [
    ["hh", "--zoo", "nonsense"],
    ["hh", "--algebra", "/nonexistent.json"],
    ["hh"],
    ["hh", "--zoo", "q", "--max-degree", "0"],
    ["hkr", "--zoo", "matrix:2"],
    ["excision", "--zoo", "matrix:2"],
])
def test_input_errors_exit_2(argv, capsys):
    assert cli.main(argv) == cli.EXIT_INPUT
    assert "hochex:" in capsys.readouterr().err


def test_malformed_file_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"dim": 1, "table": [[0, 0, 0, 0.5]]}')
    assert cli.main(["hh", "--algebra", str(f)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_size_limit_exit_3(capsys):
    assert cli.main(["hh", "--zoo", "matrix:3", "--max-degree", "6"]) == cli.EXIT_SIZE
    assert cli.main(["hh", "--zoo", "matrix:2", "--size-cap", "10"]) == cli.EXIT_SIZE


def test_jobspec_validation():
    with pytest.raises(ValueError):
        cli.JobSpec("bogus")
