import json
import subprocess
import sys

import numpy as np
import pytest

from manirep.cli import main
from manirep.numkit import Mat


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_dims(capsys):
    code, payload = run_cli(capsys, "dims", "--algebra", "SO", "--n", "19",
                            "--kappa", "0,0,0,0,0,0,0,0,1")
    assert code == 0
    assert payload == {"dim": "512"}


def test_dims_sl_anchor(capsys):
    code, payload = run_cli(capsys, "dims", "--algebra", "SL", "--n", "9",
                            "--kappa", "2,0,0,0,0,0,0,1")
    assert code == 0 and payload["dim"] == "396"


def test_irreps(capsys):
    code, payload = run_cli(capsys, "irreps", "--algebra", "SP", "--n", "5", "--bound", "100")
    assert code == 0
    assert [int(w["dim"]) for w in payload["irreps"]] == [1, 10, 44, 55]


def test_embed_base_point(capsys):
    code, payload = run_cli(capsys, "embed", "--manifold", "stiefel-real", "--n", "9", "--k", "2")
    assert code == 0
    X = Mat.from_json(payload["value"]).to_array()
    expected = np.zeros((9, 2))
    expected[0, 0] = expected[1, 1] = 1.0
    np.testing.assert_array_equal(X, expected)


def test_embed_with_element(tmp_path, capsys):
    from manirep import groups as G

    Q = G.sample(G.so(9), 1)
    path = tmp_path / "q.json"
    path.write_text(json.dumps(Mat.from_array(Q).to_json()))
    code, payload = run_cli(capsys, "embed", "--manifold", "gr-real", "--n", "9", "--k", "2",
                            "--element", str(path))
    assert code == 0
    X = Mat.from_json(payload["value"]).to_array()
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(X)), [-2.0] * 7 + [7.0] * 2, atol=1e-9)


def test_verify_single(capsys):
    code, payload = run_cli(capsys, "verify", "--manifold", "gr-real", "--n", "9", "--k", "2",
                            "--trials", "100", "--seed", "1")
    assert code == 0
    assert payload["residual"] <= 1e-9


def test_classify_enumerate(capsys):
    code, payload = run_cli(capsys, "classify", "--group", "SU", "--n", "9", "--enumerate")
    assert code == 0
    assert len(payload["admissible"]) == 1
    assert payload["admissible"][0]["dim_total"] == "80"


def test_classify_single(capsys):
    code, payload = run_cli(capsys, "classify", "--group", "SL", "--n", "9", "--field", "C",
                            "--multiplicities", "0,0,0,1")
    assert code == 0
    assert payload["admissible"] is True
    assert payload["inequality_value"] == "-1"


def test_stabilizer_file(tmp_path, capsys):
    X = np.zeros((9, 9))
    X[0, 1] = 1.0
    X[1, 0] = -1.0
    path = tmp_path / "x.json"
    path.write_text(json.dumps(Mat.from_array(X).to_json()))
    code, payload = run_cli(capsys, "stabilizer", "--action", "congruence-skew",
                            "--matrix", str(path))
    assert code == 0
    assert payload["dim"] == 66
    assert payload["off_block"] == [2, 7]


def test_cartan(capsys):
    code, payload = run_cli(capsys, "cartan", "--type", "AII", "--n", "3")
    assert code == 0
    assert payload["residual"] <= 1e-8
    assert payload["identical"] is False


def test_census(capsys):
    code, payload = run_cli(capsys, "census", "--group", "SpCompact", "--n", "10")
    assert code == 0
    assert len(payload["targets"]) == 3


def test_domain_error_is_json(capsys):
    code, payload = run_cli(capsys, "dims", "--algebra", "SL", "--n", "9", "--kappa", "1,2")
    assert code == 1
    assert payload["error"]["type"] == "InvalidDescriptor"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["dims", "--algebra", "SL"])
    assert exc.value.code == 2


def test_determinism(capsys):
    args = ["verify", "--manifold", "gr-real", "--n", "5", "--k", "1",
            "--trials", "10", "--seed", "3"]
    code1 = main(args)
    out1 = capsys.readouterr().out
    code2 = main(args)
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("MANIREP_SEED", "7")
    args = ["verify", "--manifold", "gr-real", "--n", "5", "--k", "1", "--trials", "5"]
    main(args)
    out1 = capsys.readouterr().out
    main(args + ["--seed", "7"])
    out2 = capsys.readouterr().out
    assert out1 == out2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["--out", str(target), "dims", "--algebra", "SP", "--n", "1", "--kappa", "2"])
    assert code == 0
    assert json.loads(target.read_text()) == {"dim": "3"}


def test_module_invocation():
    proc = subprocess.run(
        [sys.executable, "-m", "manirep.cli", "dims", "--algebra", "SL", "--n", "3",
         "--kappa", "1,1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"dim": "8"}


def test_verify_flag_family(capsys):
    code, payload = run_cli(capsys, "verify", "--manifold", "fl-real", "--n", "5",
                            "--ks", "1,3", "--trials", "20", "--seed", "2")
    assert code == 0
    assert payload["residual"] <= 1e-9


def test_embed_indefinite(capsys):
    code, payload = run_cli(capsys, "embed", "--manifold", "gr-indefinite", "--n", "5",
                            "--pq", "1,1", "--sizes", "2,3")
    assert code == 0
    X = Mat.from_json(payload["value"]).to_array()
    assert abs(np.trace(X)) < 1e-12
