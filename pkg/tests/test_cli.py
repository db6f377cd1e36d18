import json
import math

import numpy as np
import pytest

from hyperqsp.algebra import Signal, eval_protocol
from hyperqsp.cli import load_protocol, main, parse_angle
from hyperqsp.modes import composite_mode_map


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv(path):
    lines = open(path).read().splitlines()
    meta = json.loads(lines[0][2:])
    header = lines[1].split(",")
    rows = [[float(v) if v else math.nan for v in line.split(",")] for line in lines[2:]]
    return meta, header, np.array(rows)


@pytest.fixture
def constant6(tmp_path, capsys):
    path = tmp_path / "c6.json"
    assert run(["gen", "constant", "--n", 6, "--phi", "pi/3", "--out", path], capsys)[0] == 0
    return path


def test_parse_angle():
    assert parse_angle("pi/3") == pytest.approx(math.pi / 3)
    assert parse_angle("-2pi/3") == pytest.approx(-2 * math.pi / 3)
    assert parse_angle("0.5*pi") == pytest.approx(math.pi / 2)
    assert parse_angle("pi") == pytest.approx(math.pi)
    assert parse_angle("0.25") == 0.25


def test_gen_examples(constant6, tmp_path, capsys):
    doc = json.loads(constant6.read_text())
    assert doc["schema_version"] == 1 and doc["n_boosts"] == 6
    assert len(set(doc["phases"])) == 1 and doc["phases"][0] == pytest.approx(math.pi / 3)
    code, out, _ = run(["gen", "trivial", "--n", 3], capsys)
    assert code == 0 and json.loads(out)["phases"] == [0.0, 0.0, 0.0]
    code, out, _ = run(["gen", "monotone", "--level", 1], capsys)
    assert len(json.loads(out)["phases"]) == 10
    assert run(["gen", "trivial", "--n", 0], capsys)[0] == 2
    assert run(["gen", "constant", "--n", 3], capsys)[0] == 2


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        run(["gen", "constant", "--n", 8, "--phi", "pi/3", "--out", p], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_eval_figure_data(constant6, tmp_path, capsys):
    out, fig = tmp_path / "s.csv", tmp_path / "s.png"
    code, _, _ = run(["eval", constant6, "--grid", "1:4:300", "--bounds", "all", "--out", out, "--figure", fig],
                     capsys)
    assert code == 0
    assert fig.exists() and fig.stat().st_size > 0
    meta, header, rows = read_csv(out)
    assert meta["checks_passed"] and header[:4] == ["x", "re_p", "im_p", "abs_p2"]
    assert len(rows) == 300 and np.all(np.diff(rows[:, 0]) > 0)
    assert not np.any(np.isnan(rows[:, :4]))
    _, pl = load_protocol(constant6)
    for row in rows[::37]:
        p = complex(eval_protocol(pl, Signal.at(row[0])).a11)
        assert abs(p.real - row[1]) <= 1e-12 * max(1, abs(p)) and abs(p.imag - row[2]) <= 1e-12 * max(1, abs(p))


def test_eval_examples(tmp_path, capsys):
    path = tmp_path / "t3.json"
    run(["gen", "trivial", "--n", 3, "--out", path], capsys)
    code, out, _ = run(["eval", path, "--x", 2], capsys)
    assert code == 0
    row = out.splitlines()[2].split(",")
    assert float(row[3]) == pytest.approx(676, rel=1e-14)
    code, _, err = run(["eval", path, "--grid", "0.5:2:10"], capsys)
    assert code == 2 and "error" in err
    assert run(["eval", path, "--grid", "1:2:10", "--bounds", "secant"], capsys)[0] == 2
    assert run(["eval", tmp_path / "missing.json", "--x", 2], capsys)[0] == 2


def test_eval_extended_precision_agrees(constant6, capsys):
    _, a, _ = run(["eval", constant6, "--grid", "1:3:7"], capsys)
    _, b, _ = run(["eval", constant6, "--grid", "1:3:7", "--precision", "extended"], capsys)
    ra = np.array([[float(v) for v in r.split(",")] for r in a.splitlines()[2:]])
    rb = np.array([[float(v) for v in r.split(",")] for r in b.splitlines()[2:]])
    assert np.allclose(ra, rb, rtol=1e-12, atol=1e-12)


def test_eval_is_deterministic(constant6, capsys):
    outs = [run(["eval", constant6, "--grid", "1:4:50", "--bounds", "all"], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_eval_rejects_tampered_file(tmp_path, capsys):
    # corrupt the stored phase so the file no longer matches its parameters
    path = tmp_path / "c.json"
    run(["gen", "constant", "--n", 6, "--phi", "pi/3", "--out", path], capsys)
    doc = json.loads(path.read_text())
    doc["phases"][0] = 0.1
    path.write_text(json.dumps(doc))
    assert run(["eval", path, "--x", 2], capsys)[0] == 2


def test_synth_examples(tmp_path, capsys):
    path = tmp_path / "t5.json"
    code, out, _ = run(["synth", "--coeffs", "0,0,0,0,0,1", "--out", path], capsys)
    assert code == 0
    assert json.loads(out)["max_deviation"] <= 1e-6
    assert json.loads(path.read_text())["n_boosts"] == 5
    code, out, _ = run(["synth", "--coeffs", "0,1", "--picture", "su2"], capsys)
    assert code == 0 and json.loads(out)["phases"] == [pytest.approx(0.0)]
    code, _, err = run(["synth", "--coeffs", "0,2"], capsys)
    assert code == 3 and "x=" in err
    assert run(["synth", "--coeffs", "0,0,1", "--parity", "odd"], capsys)[0] == 2


def test_modes_examples(tmp_path, capsys):
    path = tmp_path / "z.json"
    run(["gen", "explicit", "--phases", "0", "--out", path], capsys)
    code, out, _ = run(["modes", path, "--beta", repr(math.log(2))], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["u"] == pytest.approx([1.25, 0]) and rep["v"] == pytest.approx([0.75, 0])
    rep = json.loads(run(["modes", path, "--beta", 0], capsys)[1])
    assert rep["u"] == [1.0, 0.0] and rep["v"] == [0.0, 0.0]
    code, out, _ = run(["modes", "--low-gain", "--beta", "1e-3", "--theta", 0.3, "--stages", 5], capsys)
    lg = json.loads(out)["low_gain"]
    assert code == 0 and lg["defect"] <= 10 * math.sinh(1e-3) ** 2
    assert run(["modes", path, "--beta", 99], capsys)[0] == 2
    assert run(["modes", "--beta", 1], capsys)[0] == 2


def test_modes_controlled(tmp_path, capsys):
    path = tmp_path / "t3.json"
    run(["gen", "trivial", "--n", 3, "--out", path], capsys)
    rep = json.loads(run(["modes", path, "--beta", 0.1, "--controlled", repr(math.acosh(2))], capsys)[1])
    assert rep["controlled"]["branch1"]["u"][0] == pytest.approx(26)
    u, _ = composite_mode_map([0, 0, 0], 0.1).as_complex()
    assert rep["u"][0] == pytest.approx(u.real, rel=1e-15)


def test_fit_table(tmp_path, capsys):
    out, fig = tmp_path / "fit.csv", tmp_path / "fit.png"
    assert run(["fit", "--target", "exp", "--degree", 16, "--out", out, "--figure", fig], capsys)[0] == 0
    meta, header, rows = read_csv(out)
    assert header == ["degree", "l2_residual", "sup_residual"]
    assert meta["monotone_l2"] and np.all(np.diff(rows[:, 1]) < 0)
    assert fig.exists()
    assert run(["fit", "--target", "exp", "--degree", 4, "--x-max", 1e6], capsys)[0] == 2
