"""End-to-end runs of the command line entry point, in process."""

import json

import pytest

from dulac.cli import main
from dulac.bifurcation import ParamFamily
from dulac.corpus import hopf_family, linearizable_3d_field
from dulac.fieldfile import dump_document, family_to_dict, save_field


@pytest.fixture
def saddle_path(tmp_path):
    # x' = x + xy, y' = -y - xy; normal form keeps the resonant pair
    data = {"dim": 2, "order": 6, "eigenvalues": ["1", "-1"],
            "terms": [{"coeff": "1", "exps": [1, 1], "comp": 1},
                      {"coeff": "-1", "exps": [1, 1], "comp": 2}]}
    path = tmp_path / "saddle.json"
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def normal_form_path(tmp_path):
    data = {"dim": 2, "order": 6, "eigenvalues": ["1", "-1"],
            "terms": [{"coeff": "1", "exps": [2, 1], "comp": 1}]}
    path = tmp_path / "nf.json"
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def hopf_path(tmp_path):
    path = tmp_path / "hopf.json"
    path.write_text(dump_document(family_to_dict(hopf_family())))
    return str(path)


@pytest.fixture
def singular_family_path(tmp_path):
    family = ParamFamily(2, 1, 2, a_entries=((1, 0), (0, -1)))
    path = tmp_path / "const.json"
    path.write_text(dump_document(family_to_dict(family)))
    return str(path)


def test_normalize_text(saddle_path, capsys):
    assert main(["normalize", "--input", saddle_path, "--order", "6"]) == 0
    out = capsys.readouterr().out
    assert "dulac 0.1.0 normalization report" in out
    assert "dx1/dt = x1 + -1*x1^2*x2 + -1*x1^3*x2^2" in out
    assert "dx2/dt = -1*x2 + x1*x2^2 + x1^2*x2^3" in out
    assert "transformation y = Psi(x) (normal form = push-forward of the input):" in out
    assert "degree 2: resonant dimension 0, removed terms 2" in out


def test_normalize_json(saddle_path, capsys):
    assert main(["normalize", "--input", saddle_path, "--order", "6", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["command"] == "normalize"
    assert data["style"] == "distinguished"
    assert data["eigenvalues"] == ["1", "-1"]
    assert data["normal_form"]["terms"][0] == {"coeff": "-1", "exps": [2, 1], "comp": 1}
    assert data["transformation"]["convention"].startswith("y = Psi(x)")
    assert data["per_degree"][0] == {
        "degree": 2, "resonant_dimension": 0, "removed_terms": 2}


def test_normalize_out_file(saddle_path, tmp_path, capsys):
    target = tmp_path / "report.json"
    assert main(["normalize", "--input", saddle_path, "--order", "6",
                 "--json", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["command"] == "normalize"


def test_resonances(tmp_path, capsys):
    path = tmp_path / "lin3d.json"
    save_field(linearizable_3d_field(6), str(path))
    assert main(["resonances", "--input", str(path), "--max-degree", "5"]) == 0
    out = capsys.readouterr().out
    assert "degrees 2..5: 6 resonant monomial(s)" in out
    assert "(4,1,0) -> comp 1" in out
    assert "(0,3,2) -> comp 3" in out


def test_diagnose_text_and_strict(normal_form_path, capsys):
    # resonant term breaks Condition A and no criterion applies
    assert main(["diagnose", "--input", normal_form_path, "--order", "6"]) == 0
    out = capsys.readouterr().out
    assert "no convergence criterion verified" in out
    assert main(["diagnose", "--input", normal_form_path, "--order", "6",
                 "--strict"]) == 1


def test_diagnose_json(normal_form_path, capsys):
    assert main(["diagnose", "--input", normal_form_path, "--order", "6",
                 "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["applicable"] == []
    assert data["condition_a"]["satisfied"] is False
    names = [c["name"] for c in data["criteria"]]
    assert names[0] == "poincare-domain"


def test_diagnose_strict_passes_when_applicable(tmp_path, capsys):
    data = {"dim": 2, "order": 6, "eigenvalues": ["1", "2"], "terms": []}
    path = tmp_path / "poincare.json"
    path.write_text(json.dumps(data))
    assert main(["diagnose", "--input", str(path), "--order", "6",
                 "--strict"]) == 0
    assert "poincare-domain" in capsys.readouterr().out


def test_centralizer_markers(normal_form_path, capsys):
    assert main(["centralizer", "--input", normal_form_path, "--degree", "3"]) == 0
    out = capsys.readouterr().out
    assert "dimension: 3" in out
    assert "[confirmed] (x1, -1*x2)" in out
    assert "[boundary-unconfirmed] (x1^2*x2, 0)" in out
    assert "raise the bound to settle them" in out


def test_centralizer_rejects_non_normal_form(saddle_path, capsys):
    assert main(["centralizer", "--input", saddle_path, "--degree", "3"]) == 2
    err = capsys.readouterr().err
    assert "dulac: error [not-in-normal-form]:" in err


def test_kernel_intersection_empty(capsys):
    assert main(["kernel-intersection", "--spec-a", "1,-3,9",
                 "--spec-b", "1,-2,4", "--max-degree", "6"]) == 0
    out = capsys.readouterr().out
    assert ("empty through degree 6: only linear fields commute with both "
            "linear parts to this order") in out


def test_kernel_intersection_nonempty(capsys):
    assert main(["kernel-intersection", "--spec-a", "1,-1",
                 "--spec-b", "2,-2", "--max-degree", "4"]) == 0
    out = capsys.readouterr().out
    assert "2 joint resonant monomial(s) through degree 4:" in out
    assert "(2,1) -> comp 1" in out


def test_kernel_intersection_json(capsys):
    assert main(["kernel-intersection", "--spec-a", "1,-3,9",
                 "--spec-b", "1,-2,4", "--max-degree", "6", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["empty"] is True
    assert data["relations"] == []


def test_bifurcation_standard(hopf_path, capsys):
    assert main(["bifurcation", "--family", hopf_path]) == 0
    out = capsys.readouterr().out
    assert "layout: eigenvalue-first" in out
    assert "det D = 2*i" in out
    assert "verdict: nonsingular" in out


def test_bifurcation_strict_singular(singular_family_path, capsys):
    assert main(["bifurcation", "--family", singular_family_path]) == 0
    assert "verdict: singular" in capsys.readouterr().out
    assert main(["bifurcation", "--family", singular_family_path,
                 "--strict"]) == 1


def test_bifurcation_oscillator_layout(tmp_path, capsys):
    from dulac.corpus import oscillator_family

    path = tmp_path / "osc.json"
    path.write_text(dump_document(family_to_dict(oscillator_family())))
    assert main(["bifurcation", "--family", str(path),
                 "--layout", "oscillator"]) == 0
    out = capsys.readouterr().out
    assert "layout: oscillator" in out
    assert "det D = -2" in out


def test_suspend_then_normalize(hopf_path, tmp_path, capsys):
    target = tmp_path / "suspended.json"
    assert main(["suspend", "--family", hopf_path, "--out", str(target)]) == 0
    doc = json.loads(target.read_text())
    assert doc["dim"] == 3
    assert doc["vars"] == ["x1", "x2", "eta1"]
    assert doc["eigenvalues"] == ["1*i", "-1*i", "0"]
    capsys.readouterr()
    # the suspension is already a normal form: identity transformation
    assert main(["normalize", "--input", str(target), "--order", "3"]) == 0
    out = capsys.readouterr().out
    assert "y1 = x1" in out and "y3 = x3" in out


def test_corpus_run(capsys):
    assert main(["corpus", "run"]) == 0
    out = capsys.readouterr().out
    assert "7 passed, 0 failed" in out
    for entry_id in ("horn", "linearizable-3d", "so2", "holomorphic",
                     "saddle-centralizer", "oscillator-d", "hopf-transversality"):
        assert f"PASS  {entry_id}" in out


def test_corpus_filter(capsys):
    assert main(["corpus", "run", "--filter", "horn"]) == 0
    out = capsys.readouterr().out
    assert "1 passed, 0 failed" in out
    assert "coefficient table: 1, 1, 2, 6, 24, 120" in out


def test_corpus_no_match(capsys):
    assert main(["corpus", "run", "--filter", "zzz"]) == 2
    assert "no corpus entry matches 'zzz'" in capsys.readouterr().err


def test_error_exit_codes(tmp_path, hopf_path, capsys):
    assert main(["normalize", "--input", str(tmp_path / "nope.json"),
                 "--order", "4"]) == 2
    assert "dulac: error [input-format]:" in capsys.readouterr().err

    # family document fed to a field command
    assert main(["normalize", "--input", hopf_path, "--order", "3"]) == 2
    assert "expected a vector field document, found a family" in capsys.readouterr().err


def test_omega_budget_env(normal_form_path, monkeypatch, capsys):
    monkeypatch.setenv("DULAC_OMEGA_BUDGET", "abc")
    assert main(["diagnose", "--input", normal_form_path, "--order", "6"]) == 2
    err = capsys.readouterr().err
    assert "DULAC_OMEGA_BUDGET: expected an integer, found 'abc'" in err


def test_internal_error_exit_code(normal_form_path, monkeypatch, capsys):
    import dulac.cli as cli

    def boom(*args, **kwargs):
        raise RuntimeError("crash")

    monkeypatch.setattr(cli, "normalize", boom)
    assert main(["normalize", "--input", normal_form_path, "--order", "6"]) == 3
    assert "dulac: internal error:" in capsys.readouterr().err


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == "dulac 0.1.0"
