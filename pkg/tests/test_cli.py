import json
import subprocess
import sys

import pytest

from ineqfact.cli import main, run


def test_count_example():
    doc, code = run(["count", "--mode", "inequivalent", "--class", "3", "--signature", "2:2", "--genus", "0"])
    assert code == 0 and doc["count"] == 3


def test_formula_paths():
    assert run(["count", "--formula", "hurwitz", "--class", "2,1"])[0]["count"] == 8
    assert run(["count", "--formula", "springer", "--class", "4", "--signature", "2:3"])[0]["count"] == 12
    assert run(["count", "--formula", "constellation", "--class", "3", "--r", "-1"])[0]["count"] == 2
    assert run(["count", "--formula", "two-part", "--class", "2,1"])[0]["count"] == 8


def test_other_modes():
    assert run(["count", "--mode", "monotone", "--class", "2,1"])[0]["count"] == 4
    assert run(["count", "--mode", "all", "--class", "3", "--r", "2"])[0]["count"] == 5
    assert run(["count", "--mode", "ordinary", "--class", "4", "--signature", "2:1", "--signature", "3:1"])[0][
        "count"] == 8


def test_series_example():
    doc, code = run(["series", "--family", "icgs", "--m", "1", "--order", "3"])
    assert code == 0
    assert {"alpha": [3], "beta": {"2": 2}, "coefficient": 3, "count": 3} in doc["rows"]


def test_series_spec_values():
    doc, _ = run(["series", "--family", "icgs", "--m", "1", "--order", "4", "--spec", "q2=1", "--spec", "q4=0"])
    assert doc["meta"]["qvars"] == [3]


def test_map_and_enumerate():
    doc, code = run(["map", "--n", "3", "--factor", "1,2", "--factor", "2,3", "--dot"])
    assert code == 0 and doc["vertex_count"] == 8 and "dot" in doc
    doc, _ = run(["enumerate", "--class", "3", "--kind", "transpositions", "--genus", "0", "--depth", "2"])
    assert doc["count"] == 3


@pytest.mark.parametrize("argv,code", [
    (["count", "--class", "9", "--signature", "2:8"], 2),
    (["count", "--bogus"], 2),
    ([], 2),
    (["series", "--family", "icgs", "--m", "1", "--order", "9"], 2),
    (["series", "--family", "icgs", "--m", "4"], 2),
    (["count", "--mode", "inequivalent", "--class", "3"], 2),
    (["verify", "--suite", "kcycle", "--m", "1", "--k", "3", "--order", "4"], 1),
    (["verify", "--suite", "jm", "--max-n", "4"], 0),
    (["verify", "--suite", "connections", "--max-n", "3"], 0),
])
def test_exit_codes_and_json(argv, code, capsys):
    assert main(argv) == code
    out = capsys.readouterr().out
    json.loads(out)


def test_determinism(capsys):
    argv = ["verify", "--suite", "bijection", "--max-n", "3", "--degree", "3"]
    main(argv)
    a = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == a


def test_out_file(tmp_path, capsys):
    path = tmp_path / "o.json"
    main(["count", "--class", "3", "--signature", "2:2", "--out", str(path)])
    assert json.loads(path.read_text())["count"] == 3


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ineqfact", "count", "--formula", "eidswick-longyear", "--class", "6"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["count"] == 273
