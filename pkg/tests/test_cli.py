"""Command line interface: subcommands, outputs, and exit codes."""

import json
import subprocess
import sys

import pytest

from morphocell import __version__
from morphocell.cli import main

RUN = [sys.executable, "-m", "morphocell.cli"]


# --- argparse plumbing ------------------------------------------------------


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_no_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


# --- figure -----------------------------------------------------------------


def test_figure_list(capsys):
    assert main(["figure", "--list"]) == 0
    out = capsys.readouterr().out
    for rid in ("fig4", "fig12a", "fig12b", "fig12c", "eq1", "fig6", "fig7", "fig8"):
        assert rid in out


def test_figure_requires_id(capsys):
    assert main(["figure"]) == 3
    assert "missing recipe id" in capsys.readouterr().err


def test_figure_writes_svg(tmp_path, capsys):
    assert main(["figure", "fig6", "--out", str(tmp_path)]) == 0
    printed = capsys.readouterr().out.strip()
    assert printed.endswith("fig6_n6.svg")
    assert (tmp_path / "fig6_n6.svg").read_text().startswith("<?xml")


def test_figure_set_overrides(tmp_path, capsys):
    code = main(
        [
            "figure",
            "fig4",
            "--set",
            "t=2",
            "--set",
            "resolution=9",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 0
    assert [p.name for p in tmp_path.iterdir()] == ["fig4_t2.obj"]


def test_figure_bad_assignment(tmp_path, capsys):
    assert main(["figure", "fig4", "--set", "t2", "--out", str(tmp_path)]) == 3
    assert "error:" in capsys.readouterr().err


def test_figure_unknown_recipe(tmp_path, capsys):
    assert main(["figure", "fig99", "--out", str(tmp_path)]) == 3


def test_figure_format_mismatch(tmp_path, capsys):
    code = main(["figure", "fig4", "--format", "svg", "--out", str(tmp_path)])
    assert code == 3


def test_figure_json_format(tmp_path, capsys):
    code = main(
        [
            "figure",
            "eq1",
            "--set",
            "resolution=17",
            "--format",
            "json",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == 0
    body = json.loads((tmp_path / "eq1_H10_b0.1.json").read_text())
    assert body["type"] == "mesh"


# --- mesh -------------------------------------------------------------------


def test_mesh_heightfield_obj(tmp_path, capsys):
    out = tmp_path / "saddle.obj"
    code = main(
        ["mesh", "--expr", "x^2-y^2", "--res", "9", "--out", str(out)]
    )
    assert code == 0
    assert capsys.readouterr().out.strip() == str(out)
    assert out.read_text().startswith("v ")


def test_mesh_json_output(tmp_path):
    out = tmp_path / "surface.json"
    code = main(
        ["mesh", "--expr", "x*y", "--res", "5", "--t", "2", "--out", str(out)]
    )
    assert code == 0
    body = json.loads(out.read_text())
    assert body["type"] == "mesh"
    assert body["t"] == 2.0


def test_mesh_implicit_sphere(tmp_path):
    out = tmp_path / "sphere.obj"
    code = main(
        [
            "mesh",
            "--expr",
            "x^2+y^2+z^2",
            "--kind",
            "implicit",
            "--res",
            "17",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    assert out.read_text().count("\nf ") > 100


def test_mesh_custom_bounds(tmp_path):
    out = tmp_path / "strip.json"
    code = main(
        [
            "mesh",
            "--expr",
            "x",
            "--res",
            "3",
            "--bounds",
            "0:1,5:6",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    body = json.loads(out.read_text())
    ys = {v[1] for v in body["vertices"]}
    assert ys == {5.0, 5.5, 6.0}


def test_mesh_bound_parameters(tmp_path):
    out = tmp_path / "scaled.obj"
    code = main(
        [
            "mesh",
            "--expr",
            "a*x^2",
            "--param",
            "a=3",
            "--res",
            "5",
            "--out",
            str(out),
        ]
    )
    assert code == 0


def test_mesh_parse_error_exits_3(tmp_path, capsys):
    code = main(["mesh", "--expr", "x +", "--out", str(tmp_path / "x.obj")])
    assert code == 3
    assert "error:" in capsys.readouterr().err


def test_mesh_unbound_param_exits_3(tmp_path, capsys):
    code = main(["mesh", "--expr", "a*x", "--out", str(tmp_path / "x.obj")])
    assert code == 3


def test_mesh_bad_bounds_exits_3(tmp_path):
    code = main(
        ["mesh", "--expr", "x", "--bounds", "junk", "--out", str(tmp_path / "x.obj")]
    )
    assert code == 3


def test_mesh_resolution_range_exits_3(tmp_path):
    code = main(
        ["mesh", "--expr", "x", "--res", "1", "--out", str(tmp_path / "x.obj")]
    )
    assert code == 3


def test_mesh_time_error_exits_4(tmp_path, capsys):
    code = main(
        ["mesh", "--expr", "x*t", "--t", "0", "--out", str(tmp_path / "x.obj")]
    )
    assert code == 4


def test_mesh_empty_isosurface_exits_4(tmp_path):
    code = main(
        [
            "mesh",
            "--expr",
            "x^2+y^2+z^2",
            "--kind",
            "implicit",
            "--iso",
            "-1",
            "--res",
            "9",
            "--out",
            str(tmp_path / "x.obj"),
        ]
    )
    assert code == 4


def test_mesh_unwritable_output_exits_1(tmp_path, capsys):
    target = tmp_path / "no" / "such" / "dir" / "x.obj"
    code = main(["mesh", "--expr", "x", "--res", "5", "--out", str(target)])
    assert code == 1


# --- spiral -----------------------------------------------------------------


def test_spiral_svg(tmp_path):
    out = tmp_path / "spiral.svg"
    assert main(["spiral", "--samples", "65", "--out", str(out)]) == 0
    assert "<svg" in out.read_text()


def test_spiral_json_metadata(tmp_path):
    out = tmp_path / "spiral.json"
    code = main(
        [
            "spiral",
            "--b",
            "0.2",
            "--t",
            "0.5",
            "--samples",
            "9",
            "--theta",
            "0:6.283185307179586",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    body = json.loads(out.read_text())
    assert body["type"] == "polyline"
    assert body["b"] == 0.2 and body["t"] == 0.5
    assert len(body["points"]) == 9


def test_spiral_nonpositive_time_exits_4(tmp_path):
    assert main(["spiral", "--t", "0", "--out", str(tmp_path / "s.svg")]) == 4


def test_spiral_bad_theta_exits_3(tmp_path):
    code = main(["spiral", "--theta", "1:1", "--out", str(tmp_path / "s.svg")])
    assert code == 3


def test_spiral_overflow_exits_4(tmp_path):
    code = main(
        [
            "spiral",
            "--b",
            "2",
            "--theta",
            "0:1000",
            "--samples",
            "9",
            "--out",
            str(tmp_path / "s.svg"),
        ]
    )
    assert code == 4


# --- check ------------------------------------------------------------------


def test_check_reports_normal_form(capsys):
    assert main(["check", "--expr", "a*x + (y*2)"]) == 0
    out = capsys.readouterr().out
    assert "ok: a*x + y*2" in out
    assert "parameters: a" in out
    assert "uses t: no" in out


def test_check_reports_time_use(capsys):
    assert main(["check", "--expr", "abs(x*y)^(1/t)"]) == 0
    assert "uses t: yes" in capsys.readouterr().out


def test_check_parse_error(capsys):
    assert main(["check", "--expr", "min(x)"]) == 3
    assert "error:" in capsys.readouterr().err


# --- installed module entry -------------------------------------------------


def test_module_entrypoint_version():
    proc = subprocess.run(
        RUN + ["--version"], capture_output=True, text=True, check=True
    )
    assert proc.stdout.strip() == __version__


def test_module_entrypoint_exit_codes(tmp_path):
    proc = subprocess.run(
        RUN + ["mesh", "--expr", "ln(", "--out", str(tmp_path / "x.obj")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 3
    assert "error:" in proc.stderr


def test_module_entrypoint_logging(tmp_path):
    out = tmp_path / "logdemo.obj"
    proc = subprocess.run(
        RUN + ["mesh", "--expr", "x*y", "--res", "5", "--out", str(out)],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "MORPHOCELL_LOG": "info"},
    )
    assert proc.returncode == 0
    assert "wrote" in proc.stderr
