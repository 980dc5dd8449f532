import json
import os
import subprocess
import sys

import pytest

from g2twistor import cli
from g2twistor.geomcalc import parse_form, parse_tensor, proportional_mod
from g2twistor.symcore import parse_scalar
from g2twistor.twistor.boundary import g2_contact_pair
from g2twistor.twistor.model import TWISTOR, objects


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_durations(report):
    for s in report["suites"]:
        for c in s["checks"]:
            c.pop("duration_ms")
    return report


def test_octonion_suite(capsys):
    code, out, _ = run(capsys, "run", "--suite", "octonion")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == "g2twistor/1"
    ids = [c["check_id"] for c in rep["suites"][0]["checks"]]
    assert "octonion.composition_identity" in ids and "octonion.classify_e2_e3" in ids
    assert rep["summary"]["fail"] == 0


def test_report_is_deterministic(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    _, a, _ = run(capsys, "run", "--suite", "orbit", "--out", str(out_file))
    _, b, _ = run(capsys, "run", "--suite", "orbit")
    assert strip_durations(json.loads(a)) == strip_durations(json.loads(b))
    assert json.loads(out_file.read_text()) == json.loads(a)


def test_liecontact_k3(capsys):
    code, out, _ = run(capsys, "run", "--suite", "liecontact", "--k", "3")
    checks = json.loads(out)["suites"][0]["checks"]
    passes = [c for c in checks if c["check_id"].split(".")[-1].startswith("Xt") and c["status"] == "pass"]
    closure = next(c for c in checks if c["check_id"].endswith(".closure"))
    assert code == 0 and len(passes) == 7 and closure["witness"]["dim"] == 7


def test_failing_check_gives_exit_1(monkeypatch, capsys):
    def broken(cfg):
        yield "broken.check", lambda: (False, None)

    monkeypatch.setitem(cli.SUITES, "broken", broken)
    code, out, _ = run(capsys, "run", "--suite", "broken")
    rep = json.loads(out)
    assert code == 1 and rep["suites"][0]["checks"][0]["witness"]


def test_raising_check_fails(monkeypatch, capsys):
    def broken(cfg):
        yield "broken.raises", lambda: 1 / 0

    monkeypatch.setitem(cli.SUITES, "broken", broken)
    code, out, _ = run(capsys, "run", "--suite", "broken")
    c = json.loads(out)["suites"][0]["checks"][0]
    assert code == 1 and c["status"] == "fail" and c["witness"]["error"] == "ZeroDivisionError"


@pytest.mark.parametrize("argv", [
    ("run", "--suite", "nonsense"),
    ("run", "--suite", "coframe", "--k", "1"),
    ("run", "--suite", "coframe", "--k", "x"),
    ("classify", "0,1,0,0,0,0,0", "0,1,0,0,0,0,0"),
    ("classify", "1,0,0,0,0,0,0", "0,0,0,0,0,0,1"),
    ("classify", "1,0", "0,1"),
    ("export", "nothing"),
])
def test_config_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_fixture_error(tmp_path):
    # fresh process: in-process caches would hide the missing directory
    env = dict(os.environ, G2TWISTOR_FIXTURES=str(tmp_path))
    proc = subprocess.run([sys.executable, "-m", "g2twistor.cli", "run", "--suite", "contact", "--k", "2"],
                          env=env, capture_output=True, text=True)
    assert proc.returncode == 3 and "fixture" in proc.stderr


def test_points_validation(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([{"x": 1, "y": 0, "p": 0, "q": -1, "z": 0, "v": 1, "w": 1}]))
    assert run(capsys, "run", "--suite", "contact", "--points", str(bad))[0] == 2
    good = tmp_path / "good.json"
    good.write_text(json.dumps([{"x": 1, "y": 0, "p": 0, "q": "4/9", "z": 0, "v": 1, "w": "1/2"}]))
    code, out, _ = run(capsys, "run", "--suite", "contact", "--k", "2", "--points", str(good))
    checks = json.loads(out)["suites"][0]["checks"]
    assert code == 0 and checks[-1]["witness"]["values"] == {"0": "-3"}


def test_timeout_reports_skipped(capsys):
    code, out, _ = run(capsys, "run", "--suite", "octonion", "--suite", "connection", "--timeout", "0.01")
    rep = json.loads(out)
    assert [s["suite"] for s in rep["suites"]] == ["octonion", "connection"]
    last = rep["suites"][1]["checks"]
    assert last[0]["status"] == "skipped" and "timeout" in last[0]["reason"]
    assert code == 0


def test_classify(capsys):
    assert run(capsys, "classify", "1,0,0,0,0,0,0", "0,1,0,0,0,0,0")[1].strip() == "Special"
    assert run(capsys, "classify", "0,2,0,0,0,0,0", "0,1,3,0,0,0,0")[1].strip() == "Generic 1,0,0,0,0,0,0"


def test_export_lambda(capsys):
    code, out, _ = run(capsys, "export", "lambda", "--k", "2")
    lam = parse_form(out.strip(), TWISTOR)
    assert code == 0
    assert lam == parse_form("dz - (w + q)*dp + v*dy + (w*q - v*p + q^2/2)*dx", TWISTOR)


def test_export_lambda0(capsys):
    assert run(capsys, "export", "lambda0")[1].strip() == "dx0 - 3*x2*dx3 + x1*dx4"
    lam = g2_contact_pair().lam
    assert parse_form(cli.export("lambda0"), lam.chart) == lam


def test_export_upsilon_matches_printed(capsys):
    code, out, _ = run(capsys, "export", "upsilon", "--k", "2")
    ups = parse_tensor(out.strip(), TWISTOR)
    lam = parse_form(cli.export("lambda", 2), TWISTOR)
    res = proportional_mod(objects("liecontact", 2)("upsilon_flat"), ups, lam, "z")
    # Upsilon is defined up to a conformal factor; the coframe normalization differs by 3^7 w^8
    assert res.__class__.__name__ == "Yes"
    assert res.f == parse_scalar("2187*w^8", TWISTOR)


def test_export_latex(capsys):
    code, out, _ = run(capsys, "export", "lambda", "--k", "3", "--format", "latex")
    assert code == 0 and "\\tfrac{1}{3}" in out and "*" not in out
