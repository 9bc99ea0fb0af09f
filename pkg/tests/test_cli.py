import io
import json
import shutil
import subprocess
from pathlib import Path

import pytest

from lcmlat.cli import main
from lcmlat.complexes import SimplicialComplex
from lcmlat.coordinatization import Labeling
from lcmlat.deformation import Deformation
from lcmlat.ideals import MonomialIdeal
from lcmlat.lattice import FiniteAtomicLattice

from conftest import GOLD_SQFREE, GOLD_ECCV

DATA = Path(__file__).parent / "data"
PATH = str(DATA / "path.lattice.json")
GOLDEN = str(DATA / "golden.lattice.json")
B3 = str(DATA / "boolean3.lattice.json")
M3 = str(DATA / "minimal3.lattice.json")


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_only(capsys):
    assert run(capsys, "ln", "enumerate", "-n", "4", "--count-only") == (0, "545\n", "")
    assert run(capsys, "ln", "enumerate", "-n", "3", "--count-only", "--jobs", "2")[1] == "8\n"


def test_enumerate_stream_is_deterministic_across_jobs(capsys):
    _, one, _ = run(capsys, "ln", "enumerate", "-n", "4", "--jobs", "1")
    _, two, _ = run(capsys, "ln", "enumerate", "-n", "4", "--jobs", "2")
    assert one == two
    lines = one.splitlines()
    assert len(lines) == 545
    for line in lines[:20]:
        FiniteAtomicLattice.from_json_obj(json.loads(line))


def test_enumerate_refuses_n6(capsys):
    code, out, err = run(capsys, "ln", "enumerate", "-n", "6", "--count-only")
    assert code == 2 and out == ""
    assert err.startswith("error[OutOfSupportedRange]") and "66,960,965,307" in err


def test_coordinatize_goldens(capsys, tmp_path):
    assert run(capsys, "coordinatize", "--scheme", "eccv", GOLDEN)[1] == GOLD_ECCV + "\n"
    L = FiniteAtomicLattice.from_json_obj(json.loads(Path(GOLDEN).read_text()))
    lab = Labeling.from_sets(
        L, "abcdef", {(1,): {"e": 1}, (4,): {"f": 1}, (1, 2): {"b": 1}, (2, 3): {"c": 1}, (3, 4): {"d": 1}, (1, 2, 3): {"a": 1}}
    )
    f = tmp_path / "lab.json"
    f.write_text(json.dumps(lab.to_json_obj()))
    assert run(capsys, "coordinatize", "--scheme", "labeling", str(f))[1] == GOLD_SQFREE + "\n"
    code, out, _ = run(capsys, "coordinatize", "--scheme", "deficit", "-e", GOLD_SQFREE)
    assert (code, out) == (0, GOLD_SQFREE + "\n")
    code, out, _ = run(capsys, "coordinatize", "--scheme", "min-squarefree", GOLDEN, "--format", "json")
    obj = json.loads(out)
    assert Labeling.from_json_obj(obj["labeling"]).lattice == L
    assert MonomialIdeal.from_json_obj(obj["ideal"]).text() == obj["text"]


def test_betti_via_both(capsys):
    code, out, _ = run(capsys, "betti", "--via", "both", PATH)
    assert code == 0 and json.loads(out)["total"] == [1, 4, 3]
    code, out, _ = run(capsys, "betti", "--field", "f2", PATH, "--format", "text")
    assert out.startswith("field F2; total [1, 4, 3]")


def test_lcm_and_roundtrip(capsys, monkeypatch):
    code, out, _ = run(capsys, "lcm", "-", stdin=GOLD_SQFREE, monkeypatch=monkeypatch)
    obj = json.loads(out)
    assert FiniteAtomicLattice.from_json_obj(obj) == FiniteAtomicLattice.from_json_obj(
        json.loads(Path(GOLDEN).read_text())
    )
    assert obj["multidegrees"][-1] == [1, 1, 1, 1, 1, 1]
    assert run(capsys, "roundtrip", "-e", GOLD_ECCV, "--format", "text")[:2] == (0, "ok\n")
    ideal_json = json.dumps(MonomialIdeal.from_json_obj({"vars": ["x", "y"], "gens": [[2, 0], [0, 3]]}).to_json_obj())
    code, out, _ = run(capsys, "roundtrip", "-", stdin=ideal_json, monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["roundtrip"]


def test_lattice_subcommands(capsys, monkeypatch):
    code, out, _ = run(capsys, "lattice", "validate", PATH)
    assert code == 0 and json.loads(out) == {"valid": True, "n": 4, "elements": 9}
    bad = '{"n": 3, "sets": [[1], [2], [3], [1, 2, 3]]}'
    code, out, _ = run(capsys, "lattice", "validate", "-", stdin=bad, monkeypatch=monkeypatch)
    assert code == 1 and json.loads(out)["code"] == "MissingRequiredSet"
    code, out, _ = run(capsys, "lattice", "info", GOLDEN)
    info = json.loads(out)
    assert len(info["meet_irreducibles"]) == 6 and len(info["maximal_chains"]) == 6
    assert info["graded"] is False
    code, out, _ = run(capsys, "lattice", "hasse", PATH)
    assert out.startswith("digraph") and out.count("->") == 13


def test_scarf_commands(capsys):
    code, out, _ = run(capsys, "scarf", PATH)
    X = SimplicialComplex.from_json_obj(json.loads(out))
    assert X.f_vector() == [1, 4, 3]
    assert run(capsys, "scarf-resolved", PATH)[0] == 0
    assert run(capsys, "scarf-resolved", M3, "--format", "text")[:2] == (1, "no\n")


def test_generic_coordinatize(capsys):
    code, out, _ = run(capsys, "generic-coordinatize", B3)
    assert code == 0 and out == "c*d^2*e*f^2, a*b^2*e^2*f, a^2*b*c^2*d\n"
    code, out, err = run(capsys, "generic-coordinatize", PATH)
    assert code == 2 and err.startswith("error[NotGradedRankN]")


def test_ln_navigation(capsys, tmp_path):
    code, out, _ = run(capsys, "ln", "covers", M3)
    obj = json.loads(out)
    assert len(obj["upper"]) == 3 and obj["lower"] == []
    assert run(capsys, "ln", "rank", GOLDEN)[1] == "4\n"
    mis = json.loads(run(capsys, "ln", "mi", "-n", "4")[1])
    assert len(mis) == 16
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text('{"n": 3, "sets": [[], [1], [2], [3], [1, 2], [1, 2, 3]]}')
    b.write_text('{"n": 3, "sets": [[], [1], [2], [3], [2, 3], [1, 2, 3]]}')
    meet = json.loads(run(capsys, "ln", "meet", str(a), str(b))[1])
    join = json.loads(run(capsys, "ln", "join", str(a), str(b))[1])
    assert meet["sets"] == [[], [1], [2], [3], [1, 2, 3]]
    assert join["sets"] == [[], [1], [2], [3], [1, 2], [2, 3], [1, 2, 3]]


def test_deform_and_universal_family(capsys):
    code, out, _ = run(capsys, "deform", "--from", M3, "--to", B3)
    obj = json.loads(out)
    d = Deformation.from_json_obj(obj["deformation"])
    assert d.deformed() == MonomialIdeal.from_json_obj(obj["to"])
    code, out, err = run(capsys, "deform", "--from", B3, "--to", M3)
    assert code == 2 and "NotComparable" in err
    code, out, _ = run(capsys, "universal-family", M3, "--to", B3, "--to", M3)
    obj = json.loads(out)
    assert len(obj["deformations"]) == 2 and obj["ideals"][1] == obj["base"]


def test_verify_and_support_check(capsys, tmp_path):
    for mode in ("betti", "cover"):
        code, out, _ = run(capsys, "verify", "scarf-filter", PATH, "--mode", mode)
        assert code == 0 and json.loads(out)["counterexamples"] == []
    cx = tmp_path / "path.complex.json"
    cx.write_text(json.dumps({"vertices": [1, 2, 3, 4], "facets": [[1, 2], [2, 3], [3, 4]]}))
    code, out, _ = run(capsys, "support-check", PATH, str(cx))
    obj = json.loads(out)
    assert code == 0 and obj["supports"] and obj["minimal"]
    hollow = tmp_path / "hollow.json"
    hollow.write_text(json.dumps({"vertices": [1, 2, 3], "facets": [[1, 2], [2, 3], [1, 3]]}))
    code, out, _ = run(capsys, "support-check", M3, str(hollow), "--format", "text")
    assert code == 1 and out.startswith("supports: no")


def test_errors(capsys, tmp_path, monkeypatch):
    code, _, err = run(capsys, "lcm", "-e", "x^2*y, 3*x")
    assert code == 2 and err == "error[ParseError]: coefficient 3 not allowed (at position 7)\n"
    code, _, err = run(capsys, "betti", str(tmp_path / "missing.json"))
    assert code == 2 and err.startswith("error[IOError]")
    code, _, err = run(capsys, "betti", "-", stdin="{not json", monkeypatch=monkeypatch)
    assert code == 2 and err.startswith("error[ParseError]")
    code, _, err = run(capsys, "betti", PATH, "--field", "f4")
    assert code == 2 and err.startswith("error[ParseError]")
    code, _, err = run(capsys, "scarf", PATH, "--format", "dot")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


@pytest.mark.skipif(shutil.which("lcmlat") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["lcmlat", "betti", "--via", "both", PATH], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["total"] == [1, 4, 3]
