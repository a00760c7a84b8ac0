"""Command-line behavior: output shapes, exit codes, config plumbing."""
import json

import pytest

from orliczforms.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------- norm

def test_norm_lp_known_value(capsys):
    code, out, _ = run(capsys, "norm", "--form", "poly:x1", "--kind", "lp",
                       "--p", "2")
    assert code == 0
    label, value = out.strip().rsplit("=", 1)
    assert label.strip() == "lp[p=2] poly:x1"
    assert float(value) == pytest.approx(3.0 ** -0.5, rel=1e-6)


def test_norm_luxemburg_zero(capsys):
    code, out, _ = run(capsys, "norm", "--form", "zero", "--kind", "luxemburg")
    assert code == 0
    assert float(out.strip().rsplit("=", 1)[1]) == 0.0


def test_norm_bmo_of_constant_form_vanishes(capsys):
    code, out, _ = run(capsys, "norm", "--form", "const:dx1", "--kind", "bmo",
                       "--ball-count", "8")
    assert code == 0
    head, _, tail = out.partition("argmax_ball=")
    assert tail  # oscillation kinds report the attaining ball
    assert float(head.strip().rsplit("=", 1)[1]) < 1e-8


def test_norm_lipschitz_runs(capsys):
    code, out, _ = run(capsys, "norm", "--form", "corpus:poly-0form",
                       "--kind", "lipschitz", "--ball-count", "8",
                       "--resolution", "9")
    assert code == 0
    assert float(out.partition("argmax_ball=")[0].strip().rsplit("=", 1)[1]) > 0


def test_norm_rejects_bad_phi(capsys):
    code, _, err = run(capsys, "norm", "--form", "poly:x1",
                       "--kind", "luxemburg", "--phi", "power:zero")
    assert code == 2
    assert err.strip()


def test_norm_rejects_bad_form(capsys):
    code, _, err = run(capsys, "norm", "--form", "corpus:missing",
                       "--kind", "lp", "--p", "2")
    assert code == 2


# ---------------------------------------------------------------- verify

TINY = {"grid_resolution": 11, "ball_resolution": 7, "ball_count": 4,
        "stability_check": False, "verifiers": ["thm_bmo_le_lip"]}


def write_config(tmp_path, extra=None):
    cfg = dict(TINY, **(extra or {}))
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return str(path)


def test_verify_emits_json(tmp_path, capsys):
    code, out, err = run(capsys, "verify", "--config", write_config(tmp_path))
    assert code == 0, err
    payload = json.loads(out)
    names = [r["inequality"] for r in payload["reports"]]
    assert names == ["thm_bmo_le_lip"]
    assert payload["reports"][0]["status"] == "ok"


def test_verify_emits_csv(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "--config", write_config(tmp_path),
                       "--output", "csv")
    assert code == 0
    assert out.splitlines()[0] == "inequality,entry,lhs,rhs,ratio,flags"


def test_verify_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--config", write_config(tmp_path),
                       "--out", str(target))
    assert code == 0
    assert json.loads(target.read_text())["reports"]


def test_verify_reads_config_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ORLICZFORMS_CONFIG", write_config(tmp_path))
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert json.loads(out)["reports"]


def test_verify_no_stability_overrides_config(tmp_path, capsys):
    path = write_config(tmp_path, {"stability_check": True})
    code, out, _ = run(capsys, "verify", "--config", path, "--no-stability")
    assert code == 0
    assert json.loads(out)["reports"][0]["stability"] is None


def test_verify_rejects_bad_config_with_diagnostics(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"grid_res": 21, "sigma": 0.5}))
    code, _, err = run(capsys, "verify", "--config", str(path))
    assert code == 2
    assert "grid_res" in err and "sigma" in err  # all violations listed


def test_verify_missing_config_file(tmp_path, capsys):
    code, _, err = run(capsys, "verify", "--config",
                       str(tmp_path / "absent.json"))
    assert code == 2
    assert err.strip()


# ---------------------------------------------------------------- others

def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.startswith(("PASS", "FAIL"))]
    assert lines and all(ln.startswith("PASS") for ln in lines)
    assert "-- dims = 3" in out


def test_corpus_list_text(capsys):
    code, out, _ = run(capsys, "corpus", "list", "--no-admission")
    assert code == 0
    assert "poly-closed-1form" in out


def test_corpus_list_json(capsys):
    code, out, _ = run(capsys, "corpus", "list", "--no-admission",
                       "--output", "json", "--dims", "3")
    assert code == 0
    entries = json.loads(out)
    assert any(e["id"] == "poly-closed-2form" for e in entries)
