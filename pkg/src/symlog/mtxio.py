"""Matrix Market array-format I/O for dense complex matrices.

The writer emits the ``matrix array complex general`` header and one
``real imag`` pair per line in column-major order, printing 17 significant
digits so that reading a written file reproduces the matrix bit for bit.
The reader additionally accepts the ``real`` and ``integer`` fields
(promoted to complex) and tolerates comment and blank lines anywhere.
Everything else about the file is checked strictly and raises
MatrixFormatError with the offending line number.
"""

from __future__ import annotations

import numpy as np

from .errors import MatrixFormatError

_BANNER = "%%matrixmarket"
_FIELDS = ("complex", "real", "integer")


def write_matrix(dest, a, comment: str | None = None) -> None:
    """Write a 2-D array to `dest` (path or text stream) in array format.

    Values are coerced to complex128. `comment` lines, if given, follow the
    banner as ``%``-prefixed comments.
    """
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise MatrixFormatError(f"can only write a 2-D matrix, got shape {arr.shape}")
    if arr.size == 0:
        raise MatrixFormatError("refusing to write an empty matrix")
    if hasattr(dest, "write"):
        _write_stream(dest, arr, comment)
    else:
        with open(dest, "w", encoding="ascii") as f:
            _write_stream(f, arr, comment)


def read_matrix(src) -> np.ndarray:
    """Read a Matrix Market array file from `src` (path or text stream)."""
    try:
        if hasattr(src, "read"):
            return _parse(src)
        with open(src, "r", encoding="utf-8") as f:
            return _parse(f)
    except UnicodeDecodeError as exc:
        raise MatrixFormatError(f"not a text file: {exc}") from None


def _write_stream(f, arr: np.ndarray, comment: str | None) -> None:
    f.write("%%MatrixMarket matrix array complex general\n")
    if comment:
        for line in str(comment).splitlines():
            f.write(f"% {line}\n")
    m, n = arr.shape
    f.write(f"{m} {n}\n")
    for z in arr.flatten(order="F"):
        f.write(f"{z.real:.16e} {z.imag:.16e}\n")


def _parse(f) -> np.ndarray:
    header = f.readline()
    if not header:
        raise MatrixFormatError("empty file")
    tokens = header.strip().lower().split()
    if not tokens or tokens[0] != _BANNER:
        raise MatrixFormatError("line 1: missing %%MatrixMarket banner")
    if len(tokens) != 5:
        raise MatrixFormatError("line 1: banner needs 5 tokens "
                                "(object format field symmetry)")
    _, obj, fmt, field, symm = tokens
    if obj != "matrix" or fmt != "array":
        raise MatrixFormatError(f"line 1: unsupported layout {obj!r} {fmt!r}; "
                                "only 'matrix array' is handled")
    if field not in _FIELDS:
        raise MatrixFormatError(f"line 1: unsupported field {field!r}")
    if symm != "general":
        raise MatrixFormatError(f"line 1: unsupported symmetry {symm!r}; "
                                "only 'general' is handled")

    shape = None
    values: list[complex] = []
    need = None
    per_line = 2 if field == "complex" else 1
    for lineno, raw in enumerate(f, start=2):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        parts = line.split()
        if shape is None:
            if len(parts) != 2:
                raise MatrixFormatError(f"line {lineno}: expected 'rows cols'")
            try:
                m, n = int(parts[0]), int(parts[1])
            except ValueError:
                raise MatrixFormatError(
                    f"line {lineno}: non-integer dimensions {line!r}") from None
            if m < 1 or n < 1:
                raise MatrixFormatError(f"line {lineno}: dimensions must be "
                                        f"positive, got {m} x {n}")
            shape = (m, n)
            need = m * n
            continue
        if len(values) >= need:
            raise MatrixFormatError(f"line {lineno}: more than {need} entries")
        if len(parts) != per_line:
            raise MatrixFormatError(f"line {lineno}: expected {per_line} "
                                    f"number(s), got {len(parts)}")
        try:
            re = float(parts[0])
            im = float(parts[1]) if per_line == 2 else 0.0
        except ValueError:
            raise MatrixFormatError(
                f"line {lineno}: cannot parse entry {line!r}") from None
        values.append(complex(re, im))
    if shape is None:
        raise MatrixFormatError("missing dimension line")
    if len(values) != need:
        raise MatrixFormatError(f"expected {need} entries, found {len(values)}")
    return np.array(values, dtype=np.complex128).reshape(shape, order="F")


__all__ = ["read_matrix", "write_matrix", "MatrixFormatError"]
