import json

import numpy as np
import pytest

from quditsep.cli import basis_bundle, dumps, main
from quditsep.errors import DimensionMismatchError, InvalidStateError
from quditsep.matrixfile import MatrixFileError, decode_matrix, encode_matrix, read_matrix_file, write_matrix_file
from quditsep.states import epsilon_mixture
from quditsep.su_basis import build_basis


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, [json.loads(line) for line in out.out.splitlines()], out


def test_basis_bundle_to_stdout(capsys):
    code, (bundle,), _ = run(capsys, "basis", "--dim", "2")
    assert code == 0
    assert len(bundle["matrices"]) == 4
    first = bundle["matrices"][0]
    assert first["label"] == "lambda0" and first["dim_list"] == [2]
    mat, _ = decode_matrix(first)
    np.testing.assert_allclose(mat, np.eye(2) / np.sqrt(2), atol=1e-16)


def test_basis_bundle_file_and_report(tmp_path, capsys):
    out = tmp_path / "basis3.json"
    code, (report,), _ = run(capsys, "basis", "--dim", "3", "--out", str(out))
    assert code == 0
    assert report["count"] == 9 and report["passed"] and report["orthonormality_residual"] < 1e-12
    bundle = json.loads(out.read_text())
    assert bundle["orthonormality"]["passed"]
    labels = [m["label"] for m in bundle["matrices"]]
    assert labels[:4] == ["lambda0", "diag(2)", "diag(3)", "sym(1,2)"]
    mats = [decode_matrix(m)[0] for m in bundle["matrices"]]
    np.testing.assert_array_equal(np.array(mats[1:]), build_basis(3).generators)


def test_basis_errors(tmp_path, capsys):
    code, lines, out = run(capsys, "basis", "--dim", "1")
    assert code == 2 and not lines and "dimension" in out.err.lower()
    code, _, out = run(capsys, "basis", "--dim", "2", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == 2 and "missing" in out.err


def test_classify_records(capsys):
    code, (rec,), _ = run(capsys, "classify", "mixture", "--dim", "3", "--eps", "0.2")
    assert code == 0
    assert list(rec) == ["verdict", "boundary_used", "certificate_kind"]
    assert rec["verdict"] == "separable-certified" and rec["boundary_used"] == 0.25
    code, (rec,), _ = run(capsys, "classify", "cat", "--dim", "2", "--n", "3", "--eps", "0.25")
    assert code == 0 and rec["verdict"] == "entangled-certified"
    assert rec["boundary_used"] == pytest.approx(0.2, rel=1e-15)
    code, (rec,), _ = run(capsys, "classify", "cat", "--dim", "2", "--n", "3", "--eps", "0.03")
    assert code == 0 and rec["verdict"] == "separable-certified"
    assert rec["boundary_used"] == pytest.approx(1 / 33, rel=1e-15) and rec["certificate_kind"] == "quasi-floor"
    code, (rec,), _ = run(capsys, "classify", "cat", "--dim", "2", "--n", "3", "--eps", "0.05")
    assert code == 3 and rec["verdict"] == "indeterminate"


def test_classify_usage_errors(capsys):
    assert run(capsys, "classify", "mixture", "--dim", "3", "--eps", "1.5")[0] == 2
    assert run(capsys, "classify", "cat", "--dim", "3", "--eps", "0.1")[0] == 2
    assert run(capsys, "classify", "mixture", "--dim", "1", "--eps", "0.1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "bogus", "--dim", "2"])
    assert exc.value.code == 2


def test_certificate_out(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, (rec,), _ = run(capsys, "classify", "mixture", "--dim", "2", "--eps", "0.2", "--cert-out", str(path))
    assert code == 0 and rec["certificate_path"] == str(path)
    cert = json.loads(path.read_text())
    assert cert["kind"] == "product-ensemble"
    rho = np.zeros((4, 4), dtype=complex)
    for t in cert["ensemble"]:
        a = np.array([complex(*p) for p in t["a"]])
        b = np.array([complex(*p) for p in t["b"]])
        v = np.kron(a, b)
        rho += t["weight"] * np.outer(v, v.conj())
    assert np.linalg.norm(rho - epsilon_mixture(2, 0.2)) < 1e-10


@pytest.mark.parametrize("suite", ["algebra", "ensemble", "ppt"])
def test_verify_suites_pass(suite, capsys):
    code, lines, _ = run(capsys, "verify", suite, "--dim", "3")
    assert code == 0
    assert lines[-1]["passed"] and lines[-1]["checks"] == len(lines) - 1
    assert all(rec["passed"] for rec in lines[:-1])


def test_verify_haar_is_byte_identical(capsys):
    argv = ["verify", "haar", "--dim", "2", "--samples", "20000", "--seed", "7"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_dumps_round_trip():
    rec = {"b": 0.1, "a": [1, 2.0, 1e-300], "c": True, "d": None, "e": np.float64(1 / 3)}
    text = dumps(rec)
    assert list(json.loads(text)) == ["b", "a", "c", "d", "e"]
    assert json.loads(text) == {"b": 0.1, "a": [1, 2.0, 1e-300], "c": True, "d": None, "e": 1 / 3}
    assert dumps(2.0) == "2.0" and dumps(0.1) == "0.10000000000000001"


def test_basis_bundle_counts():
    assert len(basis_bundle(2)["matrices"]) == 4
    assert len(basis_bundle(4)["matrices"]) == 16


def test_matrix_file_round_trip(tmp_path, rng):
    g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    h = g + g.conj().T
    path = tmp_path / "m.json"
    write_matrix_file(path, h, [2, 3], hermitian=True)
    mat, dims = read_matrix_file(path)
    assert dims == [2, 3]
    assert np.array_equal(mat, h)


def test_matrix_file_rejections(tmp_path):
    good = encode_matrix(np.eye(2), [2], hermitian=True)
    with pytest.raises(MatrixFileError):
        decode_matrix({**good, "data": [[1.0, 0.0], [0.0, 1.0]]})
    with pytest.raises(MatrixFileError):
        decode_matrix({**good, "data": [[[1.0, 0.0]], [[0.0, 0.0]]]})
    with pytest.raises(MatrixFileError):
        decode_matrix({"data": good["data"]})
    with pytest.raises(InvalidStateError):
        decode_matrix(encode_matrix(np.array([[0, 1], [0, 0]]), [2], hermitian=True))
    with pytest.raises(DimensionMismatchError):
        encode_matrix(np.eye(4), [3])
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(MatrixFileError):
        read_matrix_file(bad)
    with pytest.raises(OSError, match="nowhere"):
        read_matrix_file(tmp_path / "nowhere.json")
