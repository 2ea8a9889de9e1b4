import json
import runpy
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run_script(name, argv, capsys):
    old = sys.argv
    sys.argv = [name, *argv]
    try:
        runpy.run_path(str(SCRIPTS / name), run_name="__main__")
    finally:
        sys.argv = old
    return capsys.readouterr().out


def test_homology_table(capsys, tmp_path):
    out = run_script("homology_table.py", ["--nmin", "7", "--nmax", "8", "--json", str(tmp_path / "t.json")], capsys)
    assert "H4=Z^2" in out and "[S_N] = [1]" in out
    rows = json.loads((tmp_path / "t.json").read_text())
    assert [r["N"] for r in rows] == [7, 8]


@pytest.mark.parametrize("family", ["bpst", "linear"])
def test_reducibility_scan_rows(capsys, family):
    out = run_script("reducibility_scan.py", ["--family", family, "--steps", "3"], capsys)
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows and all(set(r) == {"params", "sigma2", "in_nu_p"} for r in rows)
    if family == "linear":
        assert rows[0]["in_nu_p"] and not rows[-1]["in_nu_p"]


def test_nu_report(capsys):
    out = run_script("nu_report.py", ["--n", "7", "--grid", "5"], capsys)
    assert '"nu_dot_S": -1' in out
