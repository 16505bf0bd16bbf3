import math

import numpy as np
import pytest

from deeplrr import (
    BadHeaderError,
    DimensionError,
    NonFiniteError,
    NonNumericError,
    MatrixIOError,
    SynthSpec,
    generate_subspaces,
    read_labels,
    read_matrix,
    write_labels,
    write_matrix,
)
from deeplrr.matrixio import MAGIC, format_value


def test_csv_parse_simple(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("1,2\n3,4\n")
    m = read_matrix(path, "csv")
    assert m.shape == (2, 2)
    assert np.array_equal(m, [[1.0, 2.0], [3.0, 4.0]])


def test_csv_identity_rendering(tmp_path):
    path = tmp_path / "eye.csv"
    write_matrix(np.eye(2), path, "csv")
    assert path.read_text() == "1,0\n0,1\n"


def test_csv_round_trip_exact_values(tmp_path):
    rng = np.random.default_rng(3)
    m = rng.standard_normal((7, 5)) * 10.0 ** rng.integers(-8, 8, (7, 5))
    path = tmp_path / "m.csv"
    write_matrix(m, path, "csv")
    # repr rendering is shortest-round-trip, so csv is value-exact too
    assert np.array_equal(read_matrix(path, "csv"), m)


@pytest.mark.parametrize("text,exc", [
    ("", DimensionError),
    ("1,2\n3\n", DimensionError),
    ("1,x\n", NonNumericError),
    ("1,nan\n", NonFiniteError),
    ("1,inf\n", NonFiniteError),
])
def test_csv_errors(tmp_path, text, exc):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(exc):
        read_matrix(path, "csv")


def test_binary_round_trip_bit_exact(tmp_path):
    path = tmp_path / "pi.dlrm"
    m = np.array([[math.pi]])
    write_matrix(m, path, "binary")
    back = read_matrix(path, "binary")
    assert back.tobytes() == m.tobytes()


def test_binary_round_trip_synthetic(tmp_path):
    X, _ = generate_subspaces(SynthSpec(seed=1))
    assert X.shape == (200, 90)
    path = tmp_path / "X.dlrm"
    write_matrix(X, path, "binary")
    back = read_matrix(path, "binary")
    assert np.max(np.abs(back - X)) == 0.0
    assert back.tobytes() == X.tobytes()


def test_binary_round_trip_random_shapes(tmp_path):
    rng = np.random.default_rng(11)
    for i in range(20):
        rows, cols = rng.integers(1, 40, 2)
        m = rng.standard_normal((rows, cols)) * 10.0 ** rng.integers(-30, 30)
        path = tmp_path / f"m{i}.dlrm"
        write_matrix(m, path, "binary")
        assert read_matrix(path, "binary").tobytes() == m.tobytes()


def test_binary_bad_magic(tmp_path):
    path = tmp_path / "bad.dlrm"
    path.write_bytes(b"NOPE" + b"\x01\x00\x00\x00\x01\x00\x00\x00" + b"\x00" * 8)
    with pytest.raises(BadHeaderError):
        read_matrix(path, "binary")


def test_binary_truncated_header(tmp_path):
    path = tmp_path / "short.dlrm"
    path.write_bytes(MAGIC + b"\x01")
    with pytest.raises(BadHeaderError):
        read_matrix(path, "binary")


def test_binary_empty_dimension(tmp_path):
    import struct
    path = tmp_path / "empty.dlrm"
    path.write_bytes(struct.pack("<4sII", MAGIC, 0, 5))
    with pytest.raises(DimensionError, match="empty dimension"):
        read_matrix(path, "binary")


def test_binary_payload_mismatch(tmp_path):
    import struct
    path = tmp_path / "trunc.dlrm"
    path.write_bytes(struct.pack("<4sII", MAGIC, 2, 2) + b"\x00" * 24)
    with pytest.raises(DimensionError):
        read_matrix(path, "binary")


def test_binary_rejects_nan(tmp_path):
    import struct
    path = tmp_path / "nan.dlrm"
    payload = struct.pack("<d", float("nan"))
    path.write_bytes(struct.pack("<4sII", MAGIC, 1, 1) + payload)
    with pytest.raises(NonFiniteError):
        read_matrix(path, "binary")


def test_write_rejects_nonfinite(tmp_path):
    with pytest.raises(NonFiniteError):
        write_matrix(np.array([[np.nan]]), tmp_path / "x.dlrm", "binary")


def test_format_inference(tmp_path):
    m = np.array([[1.5, 2.5]])
    write_matrix(m, tmp_path / "a.csv")
    write_matrix(m, tmp_path / "a.dlrm")
    assert np.array_equal(read_matrix(tmp_path / "a.csv"), m)
    assert np.array_equal(read_matrix(tmp_path / "a.dlrm"), m)
    with pytest.raises(MatrixIOError):
        read_matrix(tmp_path / "a.unknown")


def test_labels_round_trip(tmp_path):
    path = tmp_path / "labels.txt"
    labels = np.array([0, 0, 1, 2, 1])
    write_labels(labels, path)
    assert path.read_text() == "0\n0\n1\n2\n1\n"
    assert np.array_equal(read_labels(path), labels)


def test_labels_errors(tmp_path):
    path = tmp_path / "labels.txt"
    path.write_text("0\nx\n")
    with pytest.raises(NonNumericError):
        read_labels(path)
    path.write_text("0\n-1\n")
    with pytest.raises(MatrixIOError):
        read_labels(path)
    path.write_text("")
    with pytest.raises(DimensionError):
        read_labels(path)


def test_format_value_shortest():
    assert format_value(1.0) == "1"
    assert format_value(0.0) == "0"
    assert format_value(2.5) == "2.5"
    assert format_value(1e300) == "1e+300"
    assert float(format_value(0.1)) == 0.1
