import json

import numpy as np
import pytest

from entfid import io
from entfid.cli import main
from entfid.states import PureState, bell_state


def _write(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def fixtures(tmp_path):
    s = 1 / np.sqrt(2)
    return {
        "bell": _write(tmp_path / "bell.json", {"re": [s, 0, 0, s], "im": [0, 0, 0, 0]}),
        "zero": _write(tmp_path / "zero.json", {"re": [1, 0, 0, 0], "im": [0, 0, 0, 0]}),
        "mixed": _write(tmp_path / "mixed.json", {"rho_re": (np.eye(4) / 4).tolist()}),
        "bad": _write(tmp_path / "bad.json", {"rho_re": np.diag([0.5, 0.6, 0, 0]).tolist()}),
    }


def _report(capsys):
    return dict(line.split(",") for line in capsys.readouterr().out.strip().splitlines())


def test_fmt_and_quantize():
    assert io.fmt(2 / 3) == "0.666666666667"
    assert io.fmt(-0.0) == "0"
    assert io.fmt(np.int64(5)) == "5"
    assert io.fmt(1.0) == "1"
    assert io.quantize([1 / 3])[0] == float("0.333333333333")


def test_state_json_round_trip(tmp_path):
    psi = PureState([0.6, 0.8j, 0, 0])
    io.write_state(tmp_path / "s.json", psi)
    np.testing.assert_array_equal(io.read_state(tmp_path / "s.json").amplitudes, psi.amplitudes)
    io.write_state(tmp_path / "r.json", np.eye(4) / 4)
    np.testing.assert_array_equal(io.read_state(tmp_path / "r.json").matrix, np.eye(4) / 4)


def test_measure(fixtures, capsys):
    assert main(["measure", fixtures["bell"]]) == 0
    rep = _report(capsys)
    assert rep["concurrence"] == rep["eof"] == rep["negativity"] == "1"
    assert main(["measure", fixtures["zero"]]) == 0
    assert all(float(v) == 0 for k, v in _report(capsys).items() if k != "purity")
    assert main(["measure", fixtures["mixed"]]) == 0
    rep = _report(capsys)
    assert float(rep["concurrence"]) == 0 and float(rep["negativity"]) == 0


def test_measure_errors(fixtures, tmp_path, capsys):
    assert main(["measure", fixtures["bad"]]) == 1
    assert "trace" in capsys.readouterr().err
    assert main(["measure", str(tmp_path / "missing.json")]) == 1
    (tmp_path / "junk.json").write_text("{not json")
    assert main(["measure", str(tmp_path / "junk.json")]) == 1
    assert "invalid JSON" in capsys.readouterr().err


def test_sweep_identity_and_phi_plus(tmp_path):
    out = tmp_path / "id.csv"
    assert main(["sweep", "--state", "random:3,1", "--channel", "identity", "--steps", "6", "--out", str(out)]) == 0
    cols = io.read_csv_columns(out)
    assert list(cols) == ["p", "f_e", "f_ef", "f_c", "f_n"]
    assert all(v == "1" for k in ("f_e", "f_ef", "f_c", "f_n") for v in cols[k])
    assert (tmp_path / "id.manifest.json").exists()

    out = tmp_path / "ad.csv"
    assert main(["sweep", "--state", "bell:Φ+", "--channel", "amplitude-damping", "--steps", "11", "--out", str(out)]) == 0
    cols = io.read_csv_columns(out)
    p = np.array(cols["p"], dtype=float)
    np.testing.assert_allclose(np.array(cols["f_e"], dtype=float), ((1 + np.sqrt(1 - p)) / 2) ** 2, atol=1e-8)


def test_sweep_errors(tmp_path, capsys):
    with pytest.raises(SystemExit):
        main(["sweep", "--state", "bell:phi+", "--channel", "depolarizing", "--out", str(tmp_path / "x.csv")])
    assert main(["sweep", "--state", "bell:phi+", "--channel", "bit-flip", "--steps", "1", "--out", str(tmp_path / "x.csv")]) == 1
    assert "at least 2" in capsys.readouterr().err
    assert main(["sweep", "--state", "bell:phi+", "--channel", "bit-flip", "--out", str(tmp_path / "no" / "x.csv")]) == 1


def test_tau_command(tmp_path, capsys):
    path = tmp_path / "t.csv"
    path.write_text("a,b,c,d\n1,4,1,x\n2,5,3,1\n3,6,2,2\n4,7,4,3\n")
    assert main(["tau", "--input", str(path), "--x", "a", "--y", "b"]) == 0
    assert capsys.readouterr().out.strip() == "1"
    assert main(["tau", "--input", str(path), "--x", "a", "--y", "c"]) == 0
    assert capsys.readouterr().out.strip() == "0.666666666667"
    assert main(["tau", "--input", str(path), "--x", "a", "--y", "zz"]) == 1
    missing = capsys.readouterr().err
    assert main(["tau", "--input", str(path), "--x", "a", "--y", "d"]) == 1
    nonnum = capsys.readouterr().err
    short = tmp_path / "s.csv"
    short.write_text("a,b\n1,2\n")
    assert main(["tau", "--input", str(short), "--x", "a", "--y", "b"]) == 1
    few = capsys.readouterr().err
    assert "missing column" in missing and "non-numeric" in nonnum and "at least 2" in few


def test_tau_round_trips_ensemble(tmp_path, capsys):
    ens = tmp_path / "ens"
    assert main(["ensemble", "--channel", "amplitude-damping", "--states", "5", "--steps", "30",
                 "--seed", "77", "--out", str(ens)]) == 0
    capsys.readouterr()
    tau = io.read_csv_columns(ens / "tau.csv")
    for i in range(5):
        sw = tmp_path / f"s{i}.csv"
        assert main(["sweep", "--state", f"random:77,{i}", "--channel", "amplitude-damping",
                     "--steps", "30", "--out", str(sw)]) == 0
        capsys.readouterr()
        for col, (x, y) in {"tau_e_c": ("f_e", "f_c"), "tau_e_n": ("f_e", "f_n"), "tau_c_n": ("f_c", "f_n")}.items():
            assert main(["tau", "--input", str(sw), "--x", x, "--y", y]) == 0
            assert capsys.readouterr().out.strip() == tau[col][i]


def test_ensemble_outputs(tmp_path, capsys):
    out = tmp_path / "e"
    assert main(["ensemble", "--channel", "identity", "--states", "12", "--steps", "5", "--out", str(out)]) == 0
    names = {p.name for p in out.iterdir()}
    assert {"tau.csv", "histogram.csv", "manifest.json", "tau_e_c.svg", "tau_e_n.svg", "tau_c_n.svg", "histogram.svg"} <= names
    tau = io.read_csv_columns(out / "tau.csv")
    assert list(tau) == ["state_index", "tau_e_c", "tau_e_n", "tau_c_n", "initial_concurrence"]
    assert all(v == "0" for k in ("tau_e_c", "tau_e_n", "tau_c_n") for v in tau[k])
    hist = io.read_csv_columns(out / "histogram.csv")
    assert list(hist) == ["bin_left", "bin_right", "count"]
    assert sum(int(c) for c in hist["count"]) == 12
    man = json.loads((out / "manifest.json").read_text())
    for key in ("channel", "num_p", "p_mode", "num_states", "master_seed", "tie_tol"):
        assert key in man["config"]
    assert "<svg" in (out / "tau_e_c.svg").read_text()


def test_reproduce_bundle(tmp_path, capsys, monkeypatch):
    from entfid import cli

    monkeypatch.setattr(cli, "DESK_SCALE", {"num_states": 8, "num_p": 6})
    out = tmp_path / "r"
    assert main(["reproduce", "--scale", "desk", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert printed.startswith("channel,pair,mean_abs_tau")
    svgs = list(out.glob("*/tau_*.svg"))
    assert len(svgs) == 9
    assert (out / "histogram.svg").exists() and (out / "summary.csv").exists()
    summary = io.read_csv_columns(out / "summary.csv")
    assert sorted(set(summary["channel"])) == ["amplitude-damping", "bit-flip", "phase-flip"]
    man = json.loads((out / "manifest.json").read_text())
    assert man["config"]["runs"]["bit-flip"]["num_states"] == 8


def test_svg_deterministic(tmp_path, capsys):
    args = ["ensemble", "--channel", "bit-flip", "--states", "6", "--steps", "8"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    for name in ("tau_e_c.svg", "histogram.svg", "tau.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_bell_kinds_via_cli(tmp_path):
    for kind in ("phi+", "psi-"):
        assert main(["sweep", "--state", f"bell:{kind}", "--channel", "bit-flip", "--steps", "3",
                     "--out", str(tmp_path / f"{kind}.csv")]) == 0
    assert bell_state("psi-").amplitudes[2] < 0
