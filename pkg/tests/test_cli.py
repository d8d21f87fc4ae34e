import csv
import io
import json
from importlib import resources

import jsonschema
import pytest
from mpmath import mp, mpf

from vclab import cli


def schema(name):
    text = resources.files("vclab").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def run(capsys, *argv):
    code = cli.dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, name, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    payload = json.loads(out)
    jsonschema.validate(payload, schema(name))
    return payload


def csv_rows(text):
    lines = text.splitlines()
    assert lines[0].startswith("# precision_digits=")
    return list(csv.reader(lines[1:]))


def test_bracket_and_jones(capsys):
    code, out, _ = run(capsys, "bracket", "--knot", "trefoil")
    assert code == 0 and out.strip()
    code, out, _ = run(capsys, "jones", "--pd", "X+[1,5,2,4] X+[3,1,4,6] X+[5,3,6,2]", "--which", "V")
    assert code == 0 and out.strip()
    code, fig8_j2, _ = run(capsys, "jones", "--knot", "fig8")
    assert code == 0 and fig8_j2.strip()


def test_bad_pd_is_usage_error(capsys):
    code, _, err = run(capsys, "bracket", "--pd", "X+[1,2,3]")
    assert code == 2
    assert json.loads(err)["error"] == "PDError"


def test_cjones_rows(capsys):
    code, out, _ = run(capsys, "cjones", "--knot", "fig8", "--theta", "0", "6.283185307179586")
    assert code == 0
    rows = csv_rows(out)
    assert rows[0] == ["N", "re", "im", "log_abs", "arg"]
    assert len(rows) - 1 == 99
    assert rows[1][0] == "2" and rows[-1][0] == "100"


def test_cjones_json(capsys):
    payload = run_json(capsys, "table", "cjones", "--knot", "trefoil", "--theta", "0.5", "0",
                       "--nmax", "20", "--format", "json")
    assert len(payload["rows"]) == 19


def test_charvar(capsys):
    payload = run_json(capsys, "charvar", "charvar", "--knot", "fig8", "--word", "xYXy")
    assert payload["knot"] == "fig8" and "trace" in payload


def test_hfunc(capsys):
    payload = run_json(capsys, "hfunc", "hfunc", "--u", "0", "0")
    assert abs(mpf(payload["H"]["im"]) - mpf("2.0298832128193072500424")) < 1e-20
    assert mpf(payload["ell_check"]) < 1e-40


def test_surgery(capsys):
    payload = run_json(capsys, "surgery", "surgery", "--p", "1", "--q", "1")
    assert abs(mpf(payload["cs_over_2pi2"]) - mpf(1) / 84) < 1e-40
    assert payload["e_u_poly"].startswith("-m**8") and mpf(payload["e_u_poly_residual"]) < 1e-30
    payload = run_json(capsys, "surgery", "surgery", "--p", "0", "--q", "3", "--seed", "0.5", "0")
    assert payload["cs"] is None


def test_bundle(capsys):
    payload = run_json(capsys, "bundle", "bundle", "--knot", "torus", "--a", "2", "--b", "3", "--u", "0.1", "0")
    assert payload["element"]["psl_shift"] == "-7/2"
    diff = mpf(payload["difference_over_pi2"]["re"])
    assert abs(diff - mp.nint(diff)) < 1e-30
    run_json(capsys, "bundle", "bundle", "--knot", "fig8", "--u", "0.1", "0.05")
    code, _, _ = run(capsys, "bundle", "--knot", "torus", "--u", "0", "0")
    assert code == 2


def test_plotdata_vol_grid(capsys):
    code, out, _ = run(capsys, "plotdata", "--what", "vol", "--from", "-0.96", "--to", "0.96", "--steps", "97")
    assert code == 0
    rows = csv_rows(out)[1:]
    assert len(rows) == 97
    values = [mpf(v) for _, v in rows]
    assert abs(values[48] - mpf("2.0298832128193")) < 1e-12
    # the volume vanishes like sqrt(arccosh(3/2) - |u|), so 0.96 is still visibly positive
    assert abs(values[0] - values[-1]) < 1e-30
    assert 0.1 < values[0] < 0.2


def test_plotdata_vol_at_cusp_edge(capsys):
    edge = "0.96242365011920689499551782684873684627036866877132"
    code, out, _ = run(capsys, "plotdata", "--what", "vol", "--from", "-" + edge, "--to", edge, "--steps", "9")
    assert code == 0
    values = [mpf(v) for _, v in csv_rows(out)[1:]]
    assert abs(values[0]) < 1e-20 and abs(values[-1]) < 1e-20


def test_plotdata_json(capsys):
    payload = run_json(capsys, "table", "plotdata", "--what", "imH", "--from", "-0.5", "--to", "0.5",
                       "--steps", "11", "--format", "json")
    assert payload["columns"] == ["u", "value"] and len(payload["rows"]) == 11


def test_plotdata_cs_beyond_edge(capsys):
    code, out, _ = run(capsys, "plotdata", "--what", "cs", "--from", "1", "--to", "3", "--steps", "21")
    assert code == 0
    assert len(csv_rows(out)) == 22


def test_fit(capsys):
    payload = run_json(capsys, "fit", "fit", "--knot", "fig8", "--theta", "0", "6.283185307179586", "--nmax", "120")
    assert 0.3 < mpf(payload["Lambda"][0]) < 0.35


def test_fit_window_error(capsys):
    code, _, err = run(capsys, "fit", "--knot", "fig8", "--theta", "0", "1", "--nmax", "40", "--window", "30", "33")
    assert code == 1
    assert json.loads(err)["error"] == "FitError"


def test_verify_pass_and_fail(capsys):
    payload = run_json(capsys, "verify", "verify", "--conjecture", "limit", "--theta", "0.3", "0", "--nmax", "300")
    assert payload["verdict"] == "pass"
    code, out, _ = run(capsys, "verify", "--conjecture", "limit", "--theta", "0.3", "0",
                       "--nmax", "20", "--tol", "1e-30")
    assert code == 1
    assert json.loads(out)["verdict"] == "fail"


def test_verify_vc_rejects_theta(capsys):
    code, _, _ = run(capsys, "verify", "--conjecture", "vc", "--theta", "0", "1")
    assert code == 2


def test_verify_all_subset(capsys):
    payload = run_json(capsys, "verify_all", "verify-all", "--only", "2", "5", "--format", "json")
    assert payload["passed"] is True
    assert [c["number"] for c in payload["checkpoints"]] == [2, 5]
    code, _, _ = run(capsys, "verify-all", "--only", "42")
    assert code == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "nosuch")[0] == 2
    assert run(capsys, "cjones", "--knot", "fig8", "--theta", "0", "1", "--nmax", "3")[0] == 2
    assert run(capsys, "cjones", "--knot", "hopf", "--theta", "0", "1")[0] == 2
    assert run(capsys, "plotdata", "--what", "vol", "--from", "x", "--to", "1", "--steps", "5")[0] == 2
    assert run(capsys, "--precision", "5", "hfunc", "--u", "0", "0")[0] == 2


def test_precision_sources(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("VCLAB_PRECISION", "30")
    assert run_json(capsys, "hfunc", "hfunc", "--u", "0", "0")["precision_digits"] == 30
    config = tmp_path / "vclab.cfg"
    config.write_text("# test config\nprecision_digits = 40\nformat = json\n")
    assert run_json(capsys, "hfunc", "--config", str(config), "hfunc", "--u", "0", "0")["precision_digits"] == 40
    payload = run_json(capsys, "table", "--config", str(config), "cjones", "--knot", "fig8",
                       "--theta", "0", "1", "--nmax", "10")
    assert payload["precision_digits"] == 40
    assert run_json(capsys, "hfunc", "--config", str(config), "--precision", "60",
                    "hfunc", "--u", "0", "0")["precision_digits"] == 60
    config.write_text("colour = blue\n")
    assert run(capsys, "--config", str(config), "hfunc", "--u", "0", "0")[0] == 2


def test_csv_precision_header(capsys):
    _, out, _ = run(capsys, "--precision", "25", "cjones", "--knot", "fig8", "--theta", "0", "1", "--nmax", "10")
    assert out.splitlines()[0] == "# precision_digits=25"


def test_deterministic_output(capsys):
    argv = ["surgery", "--p", "2", "--q", "1"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    argv = ["cjones", "--knot", "trefoil", "--theta", "-0.8", "0.8", "--nmax", "30"]
    assert run(capsys, *argv) == run(capsys, *argv)
