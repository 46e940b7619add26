"""End-to-end CLI behavior: exit codes, report schema, determinism."""

import json

import pytest

from vclab import PointSet, load_point_set, save_point_set
from vclab.cli import main
from vclab.serialize import concept_from_json


@pytest.fixture()
def points_file(tmp_path):
    def write(name, pts, dim=None):
        path = tmp_path / name
        ps = PointSet.of(pts, dim=dim) if dim else PointSet.of(pts)
        save_point_set(str(path), ps)
        return str(path)

    return write


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return rc, report, captured.err


# ---------------------------------------------------------------------------
# carve
# ---------------------------------------------------------------------------


def test_carve_feasible_witness_revalidates(capsys, points_file):
    path = points_file("w.json", [(-1, 1), (1, -1), (2, 1)])
    rc, rep, _ = run(capsys, ["carve", "--class", "d0", "--points", path, "--mask", "101"])
    assert rc == 0
    assert rep["schema_version"] == 1
    assert rep["result"]["feasible"] is True
    concept = concept_from_json(rep["result"]["witness"]["concept"])
    pts = [(-1, 1), (1, -1), (2, 1)]
    assert [concept.contains(p) for p in pts] == [True, False, True]


def test_carve_infeasible_exit_3(capsys, points_file):
    path = points_file("line.json", [(0,), (1,), (2,)])
    rc, rep, _ = run(
        capsys, ["carve", "--class", "cubes", "--points", path, "--mask", "[0,2]"]
    )
    assert rc == 3
    assert rep["result"]["feasible"] is False
    assert rep["result"]["witness"] is None


def test_carve_bad_mask_width_exit_1(capsys, points_file):
    path = points_file("line2.json", [(0,), (1,), (2,)])
    rc, rep, err = run(
        capsys, ["carve", "--class", "boxes", "--points", path, "--mask", "1100"]
    )
    assert rc == 1
    assert rep is None
    assert "usage error" in err


def test_carve_missing_file_exit_2(capsys, tmp_path):
    rc, _, err = run(
        capsys,
        ["carve", "--class", "boxes", "--dim", "1", "--points", str(tmp_path / "no.json"), "--mask", "1"],
    )
    assert rc == 2


def test_carve_float_file_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 1, "points": [[0.5]]}')
    rc, _, err = run(
        capsys, ["carve", "--class", "boxes", "--points", str(path), "--mask", "1"]
    )
    assert rc == 2
    assert "input error" in err or "i/o error" in err


def test_dim_mismatch_exit_1(capsys, points_file):
    path = points_file("two.json", [(0, 0)])
    rc, _, err = run(
        capsys,
        ["carve", "--class", "boxes", "--dim", "3", "--points", path, "--mask", "1"],
    )
    assert rc == 1


def test_unknown_command_exit_1(capsys):
    rc, _, _ = run(capsys, ["frobnicate"])
    assert rc == 1


def test_no_command_prints_help_exit_1(capsys):
    rc, _, err = run(capsys, [])
    assert rc == 1
    assert "COMMAND" in err


# ---------------------------------------------------------------------------
# shatter / vcdim / coeff
# ---------------------------------------------------------------------------


def test_shatter_witness_set(capsys, points_file):
    path = points_file("w2.json", [(-1, 1), (1, -1), (2, 1)])
    rc, rep, _ = run(capsys, ["shatter", "--class", "d0", "--points", path])
    assert rc == 0
    assert rep["result"]["shattered"] is True
    assert len(rep["result"]["certificate"]["witnesses"]) == 8


def test_shatter_negative_exit_3(capsys, points_file):
    path = points_file("line3.json", [(0,), (1,), (2,)])
    rc, rep, _ = run(capsys, ["shatter", "--class", "boxes", "--points", path])
    assert rc == 3
    assert rep["result"]["shattered"] is False
    assert rep["result"]["failing_mask"] == "101"


def test_vcdim_single_point_any_class(capsys, points_file):
    path = points_file("one.json", [(3, 4)])
    for klass in ("boxes", "cubes", "degenerate", "d0"):
        rc, rep, _ = run(capsys, ["vcdim", "--class", klass, "--points", path])
        assert rc == 0
        assert rep["result"]["size"] == 1


def test_coeff_counts_and_masks(capsys, points_file):
    path = points_file("line4.json", [(0,), (1,), (2,)])
    rc, rep, _ = run(capsys, ["coeff", "--class", "boxes", "--points", path, "--masks"])
    assert rc == 0
    assert rep["result"]["realized"] == 7
    assert rep["result"]["total_masks"] == 8
    assert "101" not in rep["result"]["feasible_masks"]


def test_cap_exceeded_exit_4(capsys, points_file):
    path = points_file("line5.json", [(0,), (1,), (2,)])
    rc, _, err = run(
        capsys, ["shatter", "--class", "boxes", "--points", path, "--cap", "2"]
    )
    assert rc == 4
    assert "cap" in err.lower()


# ---------------------------------------------------------------------------
# witness
# ---------------------------------------------------------------------------


def test_witness_cubes_d3(capsys, tmp_path):
    out = tmp_path / "w3.json"
    rc, rep, _ = run(
        capsys,
        ["witness", "--kind", "cubes", "--dim", "3", "--points-out", str(out)],
    )
    assert rc == 0
    assert rep["result"]["size"] == 5
    assert rep["result"]["verified"] is True
    assert len(load_point_set(str(out))) == 5


def test_witness_d0_d6_size(capsys):
    rc, rep, _ = run(capsys, ["witness", "--kind", "d0", "--dim", "6", "--no-verify"])
    assert rc == 0
    assert rep["result"]["size"] == 9
    assert "certificate" not in rep["result"]


def test_witness_d0_generates_at_d16_without_verification(capsys):
    rc, rep, _ = run(capsys, ["witness", "--kind", "d0", "--dim", "16", "--no-verify"])
    assert rc == 0
    assert rep["result"]["size"] == 24


def test_witness_d1_single_point(capsys):
    rc, rep, _ = run(capsys, ["witness", "--kind", "d0", "--dim", "1"])
    assert rc == 0
    assert rep["result"]["size"] == 1


# ---------------------------------------------------------------------------
# searches
# ---------------------------------------------------------------------------


def test_ordinal_vc_boxes_d2(capsys):
    rc, rep, _ = run(capsys, ["ordinal-vc", "--class", "boxes", "--dim", "2"])
    assert rc == 0
    assert rep["result"]["vc_exact"] == 4


def test_ordinal_vc_cuts_d2(capsys):
    rc, rep, _ = run(capsys, ["ordinal-vc", "--class", "cuts", "--dim", "2"])
    assert rc == 0
    assert rep["result"]["vc_exact"] == 2


def test_ordinal_vc_rejects_anchored_token(capsys):
    rc, _, err = run(capsys, ["ordinal-vc", "--class", "anchored", "--dim", "2"])
    assert rc == 1


def test_ordinal_vc_budget_exit_5_with_partial(capsys):
    rc, rep, err = run(
        capsys, ["ordinal-vc", "--class", "boxes", "--dim", "2", "--budget", "40"]
    )
    assert rc == 5
    assert rep["result"]["budget_exceeded"] is True
    assert rep["result"]["partial"]["vc_exact"] is None
    assert "budget" in err.lower()


def test_resolve_d2(capsys):
    rc, rep, _ = run(capsys, ["resolve-d2"])
    assert rc == 0
    assert rep["result"]["definitive"] is True
    assert rep["result"]["value"] == 3


def test_search_cubes_deterministic_and_jobs_independent(capsys):
    argv = ["search-cubes", "--dim", "2", "--n", "4", "--trials", "150", "--seed", "9"]
    rc1, rep1, _ = run(capsys, argv)
    rc2, rep2, _ = run(capsys, argv + ["--jobs", "2"])
    assert rc1 == rc2 == 0
    assert rep1["result"] == rep2["result"]
    assert rep1["seed"] == 9
    assert rep1["result"]["note"]


def test_out_mirrors_stdout(capsys, tmp_path, points_file):
    path = points_file("line6.json", [(0,), (1,)])
    out = tmp_path / "report.json"
    rc, rep, _ = run(
        capsys,
        ["coeff", "--class", "boxes", "--points", path, "--out", str(out)],
    )
    assert rc == 0
    assert json.loads(out.read_text()) == rep


# ---------------------------------------------------------------------------
# verify-paper
# ---------------------------------------------------------------------------


def test_verify_paper_fast_passes(capsys):
    rc, rep, err = run(capsys, ["verify-paper", "--level", "fast"])
    assert rc == 0
    assert rep["result"]["all_passed"] is True
    names = [item["name"] for item in rep["result"]["items"]]
    assert len(names) == 4
    assert "PASS" in err
    assert "wall_time" not in json.dumps(rep["result"])


def test_verify_paper_level_validated(capsys):
    rc, _, _ = run(capsys, ["verify-paper", "--level", "turbo"])
    assert rc == 1
