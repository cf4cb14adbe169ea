import json
import subprocess
import sys

import pytest

from boundedtype.cli import (
    FunctionSpec,
    SpecError,
    dumps,
    parse_complex,
    parse_spec,
    run_command,
    serialize_spec,
)


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


@pytest.fixture
def zsq(tmp_path):
    return _write(tmp_path, "f_zsq.spec", {"kind": "rational", "label": "z^2", "num": [0, 0, 1],
                                           "points": [[0, 1], [0, 2]]})


def _run(argv):
    code = run_command(argv)
    return code


def test_roots_example(tmp_path, zsq):
    out = tmp_path / "r.json"
    assert _run(["roots", "--spec", zsq, "--w", "-1i", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["results"]["count"] == 1 and rep["pass"] is True
    assert set(rep) >= {"command", "version", "inputs", "checks", "pass", "seed", "wall_ms"}


def test_verify_all_example(tmp_path, zsq):
    out = tmp_path / "v.json"
    assert _run(["verify-all", "--spec", zsq, "--seed", "7", "--tol", "1e-8", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert all(c["status"] == "pass" for c in rep["checks"])


def test_not_symmetric_exit_2(tmp_path, capsys):
    spec = _write(tmp_path, "ns.spec", {"kind": "rational", "num": [[0, 1], 1]})
    assert _run(["factor", "--spec", spec]) == 2
    assert "fails N_sym symmetry" in capsys.readouterr().err


def test_validation_diagnostics(tmp_path, capsys):
    bad = _write(tmp_path, "bad.spec", '{"kind": "rational",\n "num": [0, 1,]}')
    assert _run(["factor", "--spec", bad]) == 2
    assert "line 2" in capsys.readouterr().err
    bad = _write(tmp_path, "bad2.spec", {"kind": "rational", "num": [0, "x"]})
    assert _run(["factor", "--spec", bad]) == 2
    assert "spec.num[1]" in capsys.readouterr().err
    bad = _write(tmp_path, "bad3.spec", {"kind": "polygon"})
    assert _run(["factor", "--spec", bad]) == 2
    assert _run(["factor", "--spec", str(tmp_path / "missing.spec")]) == 2
    assert _run(["roots"]) == 2
    ok = _write(tmp_path, "ok.spec", {"kind": "rational", "num": [0, 0, 1]})
    assert _run(["roots", "--spec", ok, "--w", "1+1i"]) == 2
    assert _run(["roots", "--spec", ok, "--tol", "-1"]) == 2


def test_failing_check_exit_3(tmp_path):
    # an S0 symbol whose outer factor exceeds modulus 1 is rejected at build
    # time (exit 2); a failing check comes from an impossible tolerance instead
    spec = _write(tmp_path, "b.spec", {"kind": "herglotz", "density": {"name": "box", "lo": -1, "hi": 1, "height": 0.5}})
    out = tmp_path / "s.json"
    assert _run(["stieltjes", "--spec", spec, "--eps", "0.3", "--out", str(out)]) == 3
    rep = json.loads(out.read_text())
    assert rep["pass"] is False and rep["checks"][0]["residual"] > 5e-3


def test_inconclusive_exit_4(tmp_path, monkeypatch):
    from boundedtype import cli

    # a two-step schedule can never show three equal counts
    monkeypatch.setattr(cli, "DEFAULT_SCHEDULE", (2, 3))
    spec = _write(tmp_path, "z3.spec", {"kind": "rational", "num": [0, 0, 0, 1]})
    out = tmp_path / "i.json"
    assert _run(["index", "--spec", spec, "--out", str(out)]) == 4
    rep = json.loads(out.read_text())
    assert rep["checks"][0]["status"] == "inconclusive" and rep["pass"] is False


def test_numeric_error_exit_5(tmp_path):
    spec = _write(tmp_path, "z.spec", {"kind": "rational", "num": [0, 1]})
    assert _run(["roots", "--spec", spec, "--w", "-1e-9i"]) == 5


def test_gram_csv(tmp_path, zsq):
    csv = tmp_path / "g.csv"
    assert _run(["gram", "--spec", zsq, "--csv", str(csv), "--out", str(tmp_path / "g.json")]) == 0
    raw = csv.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines == ["re,im", "0,0", "0,-1", "0,1", "0,0"]
    rep = json.loads((tmp_path / "g.json").read_text())
    assert rep["results"]["inertia"] == [1, 1, 0]


def test_stieltjes_csv(tmp_path):
    spec = _write(tmp_path, "b.spec", {"kind": "herglotz", "density": {"name": "box", "lo": -1, "hi": 1, "height": 0.5}})
    csv = tmp_path / "s.csv"
    assert _run(["stieltjes", "--spec", spec, "--csv", str(csv), "--points", "5", "--out", str(tmp_path / "s.json")]) == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == "x,value" and len(lines) == 6
    assert all(abs(float(l.split(",")[1]) - 0.5) < 5e-3 for l in lines[1:])


def test_all_commands_run(tmp_path):
    specs = {
        "rat": {"kind": "rational", "num": [1, 1, 0, -1], "den": [1, 0, -1]},
        "bl": {"kind": "blaschke", "zeros": [[0, 1], [1, 1]]},
        "s0": {"kind": "s0-product", "zeros": [[0, 1]], "atoms": [[0, 1.0]], "alpha": 0.5,
               "outer": {"name": "box", "lo": -1, "hi": 1, "height": -0.5}},
        "hg": {"kind": "herglotz", "a": 0.5, "b": 1, "atoms": [[0, 1]],
               "density": {"name": "rational_modulus", "num": [1], "den": [1, 0, 1]}},
    }
    for key, spec in specs.items():
        path = _write(tmp_path, f"{key}.spec", spec)
        for cmd in ("factor", "gram", "verify-all"):
            assert _run([cmd, "--spec", path, "--out", str(tmp_path / "o.json")]) == 0, (key, cmd)
    rat = str(tmp_path / "rat.spec")
    for cmd in ("helson", "index", "roots"):
        assert _run([cmd, "--spec", rat, "--out", str(tmp_path / "o.json")]) == 0, cmd
    assert _run(["helson", "--spec", str(tmp_path / "bl.spec")]) == 2


def test_determinism(tmp_path, zsq):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert _run(["verify-all", "--spec", zsq, "--seed", "3", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["wall_ms"] == 0


def test_timing_flag(tmp_path, zsq):
    out = tmp_path / "t.json"
    assert _run(["roots", "--spec", zsq, "--timing", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["wall_ms"] > 0


def test_spec_roundtrip():
    texts = [
        '{"kind": "rational", "num": [0, [1, 0.5], 2], "den": [1], "label": "x", "witnesses": [[0, -1]]}',
        '{"kind": "blaschke", "zeros": [[0, 1], [1.5, 2]], "front": [0, 1]}',
        '{"kind": "herglotz", "a": 1, "atoms": [[0, 2]], "density": {"name": "box", "lo": -1, "hi": 1, "height": 0.5}}',
        '{"kind": "s0-product", "zeros": [], "alpha": 1, "outer": {"name": "constant", "c": 0.5}}',
    ]
    for t in texts:
        s1 = parse_spec(t)
        s2 = parse_spec(serialize_spec(s1))
        assert s1 == s2 and isinstance(s1, FunctionSpec)


def test_dumps_format():
    text = dumps({"b": 0.1, "a": [1, 2.5], "c": 1 + 2j, "d": float("nan")})
    assert text.index('"a"') < text.index('"b"')
    assert "0.10000000000000001" in text
    assert '"nan"' in text
    assert json.loads(text)["c"] == [1, 2]


def test_parse_complex():
    assert parse_complex("-1i") == -1j
    assert parse_complex("-2-1i") == -2 - 1j
    assert parse_complex("3") == 3
    assert parse_complex("-i") == -1j
    with pytest.raises(SpecError):
        parse_complex("1+x")


def test_console_script(tmp_path, zsq):
    proc = subprocess.run([sys.executable, "-m", "boundedtype.cli", "roots", "--spec", zsq, "--w", "-2-1i"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["count"] == 1
