import json
from fractions import Fraction as Q

import pytest

from metaracah.cli import main
from metaracah.racahpoly import RacahParams, closed_form_S
from metaracah import FParams, Params


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_passes_on_defaults(capsys):
    code, out = run(capsys, "verify", "--N", "3", "--suite", "algebra")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert payload["skipped_sweeps"] == 0
    suites = [r["suite"] for r in payload["reports"]]
    assert "algebra:relations" in suites


def test_verify_is_byte_deterministic(capsys):
    argv = ("verify", "--N", "3", "--suite", "racah", "--sweeps", "1", "--seed", "11")
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second


def test_verify_exit_codes(capsys):
    # integer alpha degenerates the representation: exit 2
    code, out = run(capsys, "verify", "--N", "3", "--alpha", "1", "--suite", "algebra")
    assert code == 2
    assert json.loads(out)["error"] == "degenerate-parameters"

    # injected fault must surface as exit 1 with a located failure
    code, out = run(capsys, "verify", "--N", "3", "--suite", "algebra",
                    "--inject-fault")
    assert code == 1
    payload = json.loads(out)
    assert payload["status"] == "fail"
    failing = [
        c for r in payload["reports"] for c in r["checks"] if c["status"] == "fail"
    ]
    assert failing and all("(" in c["detail"] for c in failing)


def test_usage_errors_exit_three(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--no-such-flag"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["table", "--which", "nonsense"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--alpha", "not-a-number"])
    assert exc.value.code == 3
    assert main(["verify", "--suite", "nosuch"]) == 3
    assert main(["matrix", "--which", "basis:q"]) == 3
    capsys.readouterr()


def test_table_trivial_edges(capsys):
    code, out = run(capsys, "table", "--which", "calU", "--N", "4",
                    "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "m,n,value"
    cells = {}
    for line in lines[1:]:
        m, n, value = line.split(",")
        cells[(int(m), int(n))] = value
    assert all(cells[(0, n)] == "1" for n in range(5))
    assert all(cells[(m, 0)] == "1" for m in range(5))


def test_table_exact_column(capsys):
    code, out = run(capsys, "table", "--which", "U", "--N", "2",
                    "--format", "csv", "--precision", "6", "--exact")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "m,n,value,exact"
    # exact column round-trips as a Fraction
    for line in lines[1:]:
        exact = line.split(",")[3]
        Q(exact)


def test_table_json_matches_closed_form(capsys):
    code, out = run(capsys, "table", "--which", "S", "--N", "3")
    assert code == 0
    payload = json.loads(out)
    p = Params(N=3, alpha=Q(1, 3), beta=Q(1, 5), zeta=Q(1, 7))
    rp = RacahParams.from_params(p, FParams(rho=Q(1, 13)))
    for m in range(4):
        for n in range(4):
            assert Q(payload["grid"][m][n]) == closed_form_S(m, n, rp)


def test_matrix_example(capsys):
    code, out = run(capsys, "matrix", "--which", "Z", "--N", "1",
                    "--alpha", "1/3")
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"] == [["-1/3", "0"], ["1", "2/3"]]


def test_matrix_basis_and_coeffs(capsys):
    code, out = run(capsys, "matrix", "--which", "basis:e", "--N", "3")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["rows"]) == 4
    assert len(payload["eigenvalues"]) == 4

    code, out = run(capsys, "matrix", "--which", "coeffs:e", "--N", "3")
    assert code == 0
    payload = json.loads(out)
    assert set(payload["bands"]) == {"Z", "X"}
    assert len(payload["bands"]["Z"]["diag"]) == 4
    assert len(payload["bands"]["Z"]["sub"]) == 3


def test_output_file_honors_env_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("METARACAH_OUT", str(tmp_path))
    code = main(["table", "--which", "S", "--N", "2", "--out", "grid.json"])
    assert code == 0
    assert capsys.readouterr().out == ""
    data = json.loads((tmp_path / "grid.json").read_text())
    assert data["which"] == "S"


def test_sweeps_are_reported(capsys):
    code, out = run(capsys, "verify", "--N", "2", "--suite", "algebra",
                    "--sweeps", "2", "--seed", "3")
    assert code == 0
    payload = json.loads(out)
    sweep_suites = [r["suite"] for r in payload["reports"]
                    if r["suite"].startswith("sweep-")]
    assert len(sweep_suites) >= 2
