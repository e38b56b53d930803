import io
import json
import subprocess
import sys

import pytest

from toricsheaves.cli import (
    EXIT_INTEGRALITY,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_UNSTABLE,
    EXIT_USAGE,
    main,
    parse_output,
    render,
)
from toricsheaves.closedforms import fa_rank2
from toricsheaves.qseries import LaurentSeries, SeriesError
from toricsheaves.wallcross import WallCrossingError


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def rows(text):
    return [tuple(int(x) for x in ln.split()) for ln in text.splitlines() if not ln.startswith("#")]


def test_compute_p2_rank2():
    code, text = run("compute", "--fan", "P2", "--rank", "2", "--c1", "1", "--order", "4")
    assert code == EXIT_OK
    assert rows(text) == [(1, 1), (2, 9), (3, 48), (4, 203)]


def test_compute_rank1_order0():
    code, text = run("compute", "--fan", "P2", "--rank", "1", "--order", "0")
    assert code == EXIT_OK and rows(text) == [(0, 1)]


def test_compute_hirzebruch_methods_agree():
    base = ["compute", "--fan", "Fa:1", "--c1", "1,1", "--alpha", "2", "--beta", "1", "--order", "6"]
    _, engine = run(*base)
    _, closed = run(*base, "--method", "closed")
    assert engine == closed
    assert parse_output(closed, "plain") == fa_rank2(1, 2, 1, 1, 1, 6)


def test_compute_canonical_H_matches_alpha_beta():
    # H = 2 D1 + D2 = D3 + D4 on F_1 in canonical coordinates
    _, a = run("compute", "--fan", "Fa:1", "--c1", "0,1", "--H", "1,1", "--order", "5")
    _, b = run("compute", "--fan", "Fa:1", "--c1", "0,1", "--alpha", "2", "--beta", "1", "--order", "5")
    assert a == b


def test_rank3_and_fan_file(tmp_path):
    code, text = run("compute", "--rank", "3", "--c1", "0", "--order", "4")
    assert code == EXIT_OK and rows(text) == [(3, -1), (4, -9)]
    path = tmp_path / "p2.json"
    path.write_text(json.dumps({"rays": [[1, 0], [0, 1], [-1, -1]]}))
    assert run("compute", "--fan", str(path), "--c1", "1", "--order", "3")[1] == \
        run("compute", "--c1", "1", "--order", "3")[1]


@pytest.mark.parametrize("fmt", ["json", "plain"])
def test_round_trip(fmt):
    code, text = run("compute", "--fan", "P1xP1", "--c1", "1,0", "--H", "1,1", "--order", "6", "--format", fmt)
    assert code == EXIT_OK
    assert parse_output(text, fmt) == fa_rank2(0, 1, 1, 1, 0, 6)


def test_json_layout():
    _, text = run("compute", "--c1", "1", "--order", "2", "--format", "json")
    assert json.loads(text) == {"scale": 1, "order": 2,
                                "terms": [{"exp": 1, "coeff": "1"}, {"exp": 2, "coeff": "9"}]}


def test_csv_layout():
    _, text = run("compute", "--c1", "1", "--order", "2", "--format", "csv")
    assert text.strip().splitlines() == ["exp,coeff", "1,1", "2,9"]


def test_render_fractional():
    s = LaurentSeries.from_terms({0: 1, 1: -2}, 1) * LaurentSeries(2, {1: 1}, 3)
    doc = json.loads(render(s, "json"))
    assert doc["terms"][0] == {"exp": "1/2", "coeff": "1"}
    assert parse_output(render(s, "json"), "json") == s


@pytest.mark.parametrize("fmt", ["plain", "json", "csv"])
def test_deterministic(fmt):
    argv = ["wallcross", "--lambda0", "1/2", "--c1", "1,0", "--order", "6", "--format", fmt]
    assert run(*argv) == run(*argv)


def test_wallcross_routes():
    outs = {r: run("wallcross", "--lambda0", "1/2", "--c1", "0,0", "--order", "7", "--route", r)[1]
            for r in ("numeric", "closed", "single")}
    assert len(set(outs.values())) == 1
    assert rows(outs["closed"]) == [(4, 4), (5, 32), (6, 176), (7, 768)]


@pytest.mark.parametrize("suite", ["hurwitz", "triple", "engine", "eleven", "wallcross"])
def test_crosscheck_suites(suite):
    code, text = run("crosscheck", "--suite", suite, "--order", "5")
    assert code == EXIT_OK
    assert text.strip().splitlines()[-1] == "PASS"
    assert "FAIL" not in text


def test_fan_info():
    code, text = run("fan-info", "--fan", "Fa:2", "--format", "json")
    info = json.loads(text)
    assert code == EXIT_OK
    assert info["self_intersections"] == [0, -2, 0, 2]
    assert info["euler_characteristic"] == 4


@pytest.mark.parametrize("argv", [
    ["compute", "--fan", "Fa:1", "--alpha", "1", "--beta", "1"],
    ["compute", "--fan", "nonsense"],
    ["compute", "--fan", "Fa:1", "--c1", "1"],
    ["compute", "--rank", "3", "--fan", "P1xP1", "--H", "1,1"],
    ["compute", "--order", "-1"],
    ["compute", "--bogus"],
    ["wallcross", "--lambda0", "1/2", "--fan", "P2"],
    ["wallcross", "--lambda0", "x"],
    ["wallcross", "--lambda0", "1/2", "--fan", "Fa:1"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc_info:
        code = main(argv, out=io.StringIO())
        raise SystemExit(code)
    assert exc_info.value.code == EXIT_USAGE


def test_internal_errors_map_to_exit_codes(monkeypatch):
    import toricsheaves.cli as cli

    def boom(exc):
        def f(*a, **k):
            raise exc
        return f

    monkeypatch.setattr(cli, "numeric_wallcross", boom(WallCrossingError("limit did not stabilize")))
    assert run("wallcross", "--lambda0", "1/2")[0] == EXIT_UNSTABLE
    monkeypatch.setattr(cli, "p2_rank2", boom(SeriesError("integrality violated")))
    assert run("compute", "--method", "closed", "--c1", "1")[0] == EXIT_INTEGRALITY
    monkeypatch.setitem(cli.SUITES, "triple", lambda args, out: False)
    assert run("crosscheck", "--suite", "triple")[0] == EXIT_MISMATCH


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toricsheaves", "compute", "--rank", "1", "--order", "2"],
                          capture_output=True, text=True, check=True)
    assert rows(proc.stdout) == [(0, 1), (1, 3), (2, 9)]
