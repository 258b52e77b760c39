import json
import subprocess
import sys

import pytest

from quotcheck.cli import main
from quotcheck.commands import example_text, load_example, run_command
from quotcheck.problem import ProblemError, parse_problem, serialize_problem
from quotcheck.linalg import Matrix
from quotcheck.rep import RepMorphism, Representation
from quotcheck.structure import check_hereditary_like, quotient_morphism_class


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_parse_errors():
    with pytest.raises(ProblemError, match=r"missing \[quiver\]"):
        parse_problem("")
    bad = example_text("a3").replace('standard = "proj-inj"', 'members = ["S1", "S9"]')
    with pytest.raises(ProblemError, match="S9") as exc:
        parse_problem(bad)
    assert exc.value.line is not None
    with pytest.raises(ProblemError, match="unknown key 'colour'"):
        parse_problem(example_text("a3").replace("[universe]", "[universe]\ncolour = 1"))
    with pytest.raises(ProblemError, match="syntax error"):
        parse_problem("[quiver\n")
    with pytest.raises(ProblemError):
        parse_problem(example_text("a3").replace("characteristic = 5", "characteristic = 6"))


@pytest.mark.parametrize("name", ["a3", "gentle3", "kronecker"])
def test_round_trip(name):
    p = parse_problem(example_text(name))
    q = parse_problem(serialize_problem(p))
    assert p == q and p.fingerprint == q.fingerprint
    assert [m.key for m in p.universe] == [m.key for m in q.universe]


def test_a3_problem_is_the_fixture():
    p = parse_problem(example_text("a3"))
    assert p.complete and len(p.universe) == 6
    assert sorted(m.name for m in p.w.members) == ["M12", "M23", "P1", "S1", "S3"]
    assert isinstance(check_hereditary_like(p.w, p.universe, p.complete).ok, bool)


def test_run_command_examples():
    r = run_command(load_example("a3"), "check-abelian")
    assert [v.value for v in r.verdicts][-1] == "abelian" and r.exit_code == 0
    r = run_command(load_example("gentle3"), "check-cluster-tilting")
    assert {v.name: v.value for v in r.verdicts}["cluster-tilting-E_e"] is True
    assert all(v.scope for v in r.verdicts)


def test_cli_exit_codes(tmp_path, capsys):
    a3 = write(tmp_path, "a3.problem", example_text("a3"))
    assert main(["run", str(a3), "--command", "check-abelian"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["command"] == "check-abelian" and "timings" not in out
    bad = write(tmp_path, "bad.problem", example_text("a3").replace('standard = "proj-inj"', 'members = ["S1"]'))
    assert main(["run", str(bad), "--command", "check-hereditary"]) == 2
    capsys.readouterr()
    assert main(["reproduce", "nope"]) == 1
    err = capsys.readouterr().err
    assert "a3, gentle3, kronecker" in err
    assert main(["validate", str(tmp_path / "missing.problem")]) == 1
    assert main(["run", str(a3), "--command", "hom"]) == 1
    assert "hom needs source and target in [task]" in capsys.readouterr().err
    text = example_text("a3").replace("[task]", '[task]\nsource = "S2"\ntarget = "M12"')
    hom = write(tmp_path, "hom.problem", text)
    assert main(["run", str(hom), "--command", "hom", "--timings"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert "timings" in out and out["sections"]["hom"]["dimension"] == 1


def test_reports_are_byte_identical(tmp_path):
    a3 = write(tmp_path, "a3.problem", example_text("a3"))
    outs = []
    for i in range(2):
        o = tmp_path / f"r{i}.json"
        assert main(["run", str(a3), "--command", "compute-epic-sets", "--out", str(o)]) == 0
        outs.append(o.read_bytes())
    assert outs[0] == outs[1]


def test_negative_verdict_is_replayable():
    p = load_example("kronecker")
    r = run_command(p, "check-abelian")
    assert r.exit_code == 2
    rep = json.loads(r.to_json(False))
    (ab,) = [v for v in rep["verdicts"] if v["name"] == "abelian"]
    ce = ab["details"]["counterexample"]
    mods = {m["name"]: m for m in rep["sections"]["universe"]}

    def rebuild(d):
        return Representation(p.alg, d["dims"], d["maps"])

    src, tgt = rebuild(mods[ce["source"]]), rebuild(mods[ce["target"]])
    f = RepMorphism(src, tgt, {v: Matrix.from_rows(p.field, m, cols=src.dims[v])
                               for v, m in ce["morphism"].items()})
    cert = check_hereditary_like(p.w, p.universe, p.complete)
    mc = quotient_morphism_class(f, cert)
    assert mc["epi"] and mc["mono"] and not mc["iso"]


def test_module_entry_point(tmp_path):
    a3 = write(tmp_path, "a3.problem", example_text("a3"))
    res = subprocess.run([sys.executable, "-m", "quotcheck", "validate", str(a3)],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    rep = json.loads(res.stdout)
    assert rep["sections"]["algebra"]["string_algebra"] == "gentle"

