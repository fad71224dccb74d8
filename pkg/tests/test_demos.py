import runpy
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).resolve().parents[1] / "demos").glob("*.py"))


@pytest.mark.parametrize("path", DEMOS, ids=[p.stem for p in DEMOS])
def test_demo_runs(path, capsys):
    runpy.run_path(str(path), run_name="__main__")
    assert capsys.readouterr().out


def test_reference_demo_rows(capsys):
    runpy.run_path(str(DEMOS[0].with_name("reference_designs.py")), run_name="__main__")
    out = capsys.readouterr().out
    assert "0.83, 0.98, 0.50, 1.00, 501, 501, 19.3, -0.8, -11.8, -11.0" in out
    assert "0.24, 0.77, 0.15, 121, 94, 3.0, -1.0, -2.3, -1.3" in out
