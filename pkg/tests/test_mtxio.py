"""Tests for Matrix Market array-format reading and writing."""

from __future__ import annotations

import io

import numpy as np
import pytest

from symlog.errors import MatrixFormatError
from symlog.mtxio import read_matrix, write_matrix


def _random_matrix(shape, seed, scale=1.0):
    rng = np.random.default_rng(seed)
    return scale * (rng.standard_normal(shape)
                    + 1j * rng.standard_normal(shape))


def test_round_trip_is_bit_exact(tmp_path):
    a = _random_matrix((7, 5), 0)
    # Mix in extreme magnitudes; 17 significant digits must carry them all.
    a[0, 0] = 1e-300 + 1e300j
    a[1, 1] = -0.0 + 0.1j
    a[2, 2] = np.pi * 1e-17
    path = tmp_path / "a.mtx"
    write_matrix(path, a)
    np.testing.assert_array_equal(read_matrix(path), a)


def test_stream_round_trip():
    a = _random_matrix((3, 3), 1)
    buf = io.StringIO()
    write_matrix(buf, a, comment="unit test\nsecond line")
    text = buf.getvalue()
    assert text.startswith("%%MatrixMarket matrix array complex general\n")
    assert "% unit test\n% second line\n" in text
    assert "3 3" in text.splitlines()[3]
    np.testing.assert_array_equal(read_matrix(io.StringIO(text)), a)


def test_column_major_order():
    a = np.array([[1.0, 3.0], [2.0, 4.0]], dtype=complex)
    buf = io.StringIO()
    write_matrix(buf, a)
    data = [line.split()[0] for line in buf.getvalue().splitlines()[2:]]
    assert [float(x) for x in data] == [1.0, 2.0, 3.0, 4.0]


def test_reads_real_field():
    text = "\n".join([
        "%%MatrixMarket matrix array real general",
        "% a comment",
        "2 2",
        "1.5", "0.0", "-2.0", "4.0", "",
    ])
    out = read_matrix(io.StringIO(text))
    np.testing.assert_array_equal(
        out, np.array([[1.5, -2.0], [0.0, 4.0]], dtype=complex))


def test_reads_integer_field():
    text = "%%MatrixMarket matrix array integer general\n1 1\n7\n"
    np.testing.assert_array_equal(read_matrix(io.StringIO(text)),
                                  np.array([[7.0 + 0j]]))


@pytest.mark.parametrize("text", [
    "",
    "not a banner\n1 1\n0 0\n",
    "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 0 0\n",
    "%%MatrixMarket matrix array complex symmetric\n1 1\n0 0\n",
    "%%MatrixMarket matrix array pattern general\n1 1\n0 0\n",
    "%%MatrixMarket matrix array complex general\n0 2\n",
    "%%MatrixMarket matrix array complex general\n2 2\n1 0\n2 0\n3 0\n",
    "%%MatrixMarket matrix array complex general\n1 1\n1 0\n2 0\n",
    "%%MatrixMarket matrix array complex general\n1 1\nfoo bar\n",
    "%%MatrixMarket matrix array complex general\n1 1\n1.0\n",
    "%%MatrixMarket matrix array complex general\nx y\n",
    "%%MatrixMarket matrix array complex general\n",
])
def test_malformed_inputs_raise(text):
    with pytest.raises(MatrixFormatError):
        read_matrix(io.StringIO(text))


def test_write_rejects_bad_shapes():
    with pytest.raises(MatrixFormatError):
        write_matrix(io.StringIO(), np.zeros(3))
    with pytest.raises(MatrixFormatError):
        write_matrix(io.StringIO(), np.zeros((0, 2)))


def test_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        read_matrix(tmp_path / "missing.mtx")


def test_seventeen_digit_output(tmp_path):
    path = tmp_path / "pi.mtx"
    write_matrix(path, np.array([[np.pi + 0j]]))
    data_line = path.read_text().splitlines()[2]
    assert data_line.split()[0] == "3.1415926535897931e+00"
