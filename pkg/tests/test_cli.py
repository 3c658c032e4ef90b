import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from cogdeck.cli import format_report, run
from cogdeck.development import all_identity_projection
from cogdeck.fileformat import Workspace, serialize

import suites
from cached import CORPUS, dev


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def report_of(tmp_path, *argv):
    path = tmp_path / "r.json"
    code, out, err = call(*argv, "--report", str(path))
    data = json.loads(path.read_text()) if path.exists() else None
    return code, data, out, err


def test_validate_triangle(tmp_path):
    code, rep, out, _ = report_of(tmp_path, "validate", str(CORPUS / "triangle_233.cogfile"))
    assert code == 0
    assert (rep["groups"], rep["scwols"], rep["cogs"]) == (4, 1, 1)
    assert out.startswith("command validate\nexit_code 0\n")


def test_pi1_orders(tmp_path):
    for name, order in [("233", 24), ("234", 48), ("235", 120)]:
        code, rep, _, _ = report_of(tmp_path, "pi1", str(CORPUS / f"triangle_{name}.cogfile"))
        assert code == 0 and rep["order"] == order and rep["developable"] is True
    code, rep, _, _ = report_of(tmp_path, "pi1", str(CORPUS / "triangle_233.cogfile"))
    assert (rep["local_generators"], rep["edge_generators"], rep["tree_killed"], rep["relators"]) == (16, 12, 6, 80)


def test_pi1_incomplete_exits_3(tmp_path):
    code, rep, out, _ = report_of(tmp_path, "pi1", str(CORPUS / "triangle_237.cogfile"), "--limit", "10000")
    assert code == 3
    assert rep["order"] == "Incomplete" and rep["limit"] == 10000
    assert "order Incomplete" in out


def test_emit_table(tmp_path):
    path = tmp_path / "t.csv"
    code, _, _ = call("pi1", str(CORPUS / "triangle_233.cogfile"), "--emit-table", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0].startswith("coset,")
    assert len(lines) == 1 + 24
    header = lines[0].split(",")
    assert all(len(line.split(",")) == len(header) for line in lines)


def test_develop_233(tmp_path):
    graph = tmp_path / "g.txt"
    code, rep, _, _ = report_of(tmp_path, "develop", str(CORPUS / "triangle_233.cogfile"), "--base", "V12", "--emit-graph", str(graph))
    assert code == 0
    assert (rep["vertices"], rep["edges"], rep["composable_pairs"], rep["euler_characteristic"]) == (74, 216, 144, 2)
    assert rep["simply_connected"] is True and rep["kernel_order"] == 1
    lines = graph.read_text().splitlines()
    assert len(lines) == 216
    assert all(len(line.split()) == 3 for line in lines)


def test_develop_cycle_is_undecided():
    code, out, err = call("develop", str(CORPUS / "cycle.cogfile"), "--limit", "500")
    assert code == 3 and out == "" and "Undecided" in err


def test_star_237(tmp_path):
    code, rep, _, _ = report_of(tmp_path, "star", str(CORPUS / "triangle_237.cogfile"), "--vertex", "V12")
    assert code == 0
    assert rep["incoming_edges"] == 8 and rep["grouping"] == "2+2+4"


def test_cover_check(tmp_path):
    code, rep, _, _ = report_of(tmp_path, "cover-check", str(CORPUS / "double_cover.cogfile"))
    assert code == 0 and rep["covering"] is True


def test_cover_check_failure(tmp_path):
    """The projection with all edge elements 1 is a morphism but not a covering."""
    ws = Workspace()
    ws.include_cog_morphism(all_identity_projection(dev("tri233")), "projection")
    bad = tmp_path / "projection.cogfile"
    bad.write_text(serialize(ws))
    code, rep, out, _ = report_of(tmp_path, "cover-check", str(bad))
    assert code == 1
    assert rep["covering"] is False and rep["reason"].startswith("CosetMapNotInjective")


def test_cover_from_subgroup_and_deck(tmp_path):
    out = tmp_path / "cover.cogfile"
    code, rep, _, _ = report_of(
        tmp_path, "cover-from-subgroup", str(CORPUS / "triangle_233.cogfile"), "--base", "V12", "--gen", "[0,e112,1,~e112,0]", "--out", str(out)
    )
    assert code == 0
    assert rep["subgroup_order"] == 2 and rep["index"] == 12
    code, rep, _, _ = report_of(tmp_path, "deck", str(out), "--morphism", "covering", "--base", "0")
    assert code == 0 and rep["deck"]["verdict"] is True


def test_deck_double_cover(tmp_path):
    code, rep, out, _ = report_of(tmp_path, "deck", str(CORPUS / "double_cover.cogfile"), "--base", "v0")
    assert code == 0
    assert list(rep["groups"]) == ["G", "U", "N", "K", "C", "CU"]
    assert list(rep["deck"]) == ["bruteforce_classes", "quotient_order", "epsilon_kernel_matches", "verdict"]
    assert rep["deck"]["bruteforce_classes"] == rep["deck"]["quotient_order"] == 2
    assert "verdict true" in out


def test_deck_small_bound_by_cardinality(tmp_path):
    code, rep, _, _ = report_of(tmp_path, "deck", str(CORPUS / "double_cover.cogfile"), "--base", "v0", "--bound", "3")
    assert code == 0
    assert rep["checks"]["surjectivity_mode"] == "by cardinality"
    assert rep["deck"]["bruteforce_classes"] is None


def test_homotopy(tmp_path):
    code, rep, _, _ = report_of(tmp_path, "homotopy", str(CORPUS / "double_cover.cogfile"), "--phi", "antipodal", "--eta", "antipodal")
    assert code == 0 and rep["homotopic"] is True


def test_errors_exit_2(tmp_path):
    assert call("frobnicate", "x")[0] == 2
    assert "UnknownCommand" in call("frobnicate", "x")[2]
    assert call("validate", str(tmp_path / "missing.cogfile"))[0] == 2
    bad = tmp_path / "bad.cogfile"
    bad.write_text("group G order 2\n0 1\n")
    code, out, err = call("validate", str(bad))
    assert code == 2 and "line 1" in err and out == ""
    assert call("pi1", str(CORPUS / "triangle_233.cogfile"), "--base", "nowhere")[0] == 2
    assert call("deck", str(CORPUS / "triangle_233.cogfile"))[0] == 2
    assert call()[0] == 2
    assert call("pi1")[0] == 2


def test_format_report():
    text = format_report({"a": True, "b": None, "c": {"d": [1, 2]}})
    assert text == "a true\nb none\nc:\n  d 1 2"


@pytest.mark.parametrize("label,argv,code,files", suites.cli_invocations(CORPUS, Path("/TMP")), ids=lambda x: x if isinstance(x, str) else "")
def test_every_invocation_is_repeatable(tmp_path, label, argv, code, files):
    argv = [a.replace("/TMP", str(tmp_path)) for a in argv]
    seen = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        c, out, err = call(*argv, "--report", str(path))
        extra = [(tmp_path / f).read_bytes() for f in files]
        seen.append((c, out, path.read_bytes(), extra))
    assert seen[0][0] == code
    assert seen[0] == seen[1]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "cogdeck", "star", str(CORPUS / "triangle_237.cogfile"), "--vertex", "V12"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "incoming_edges 8" in r.stdout
