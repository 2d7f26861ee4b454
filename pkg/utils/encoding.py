"""
Mixed-radix tuple codes. A tuple t over {0,…,size-1} of length n is encoded as
sum(t[i] * size**i), so coordinate 1 is the least significant digit.
"""
from typing import NamedTuple, Sequence, Tuple

import numpy as np

# Past this many codes, int64 arithmetic would overflow
_INT64_LIMIT = 2 ** 62


class TupleCode(NamedTuple):
    n: int
    code: int


def radix_weights(size: int, n: int) -> np.ndarray:
    """
    Weights size**0, …, size**(n-1), as int64 when the codes fit, otherwise as
    Python integers.
    """
    if size ** n < _INT64_LIMIT:
        return size ** np.arange(n, dtype=np.int64)
    return np.array([size ** i for i in range(n)], dtype=object)


def encode(t: Sequence[int], size: int) -> int:
    code = 0
    for value in reversed(t):
        code = code * size + int(value)
    return code


def decode(code: int, n: int, size: int) -> Tuple[int, ...]:
    digits = []
    for _ in range(n):
        code, digit = divmod(code, size)
        digits.append(digit)
    return tuple(digits)


def encode_rows(rows: np.ndarray, size: int) -> np.ndarray:
    """
    Encode every row of a 2D array of universe elements.

    Args:
        rows: array of shape (m, n)
        size: the universe size

    Returns:
        an array of m codes
    """
    rows = np.asarray(rows)
    n = rows.shape[1]
    weights = radix_weights(size, n)
    if weights.dtype == object:
        return rows.astype(object) @ weights
    return rows.astype(np.int64) @ weights


def decode_all(n: int, size: int) -> np.ndarray:
    """
    The coordinate matrix of A^n: column c holds decode(c).

    Returns:
        an array of shape (n, size**n) with entries in [0, size)
    """
    codes = np.arange(size ** n, dtype=np.int64)
    if n == 0:
        return np.zeros((0, 1), dtype=np.int64)
    return np.stack([(codes // size ** i) % size for i in range(n)])


def decode_codes(codes: Sequence[int], n: int, size: int) -> np.ndarray:
    """
    Decode a batch of codes into rows.

    Returns:
        an array of shape (len(codes), n)
    """
    if size ** n < _INT64_LIMIT:
        codes = np.asarray(codes, dtype=np.int64)
        return np.stack([(codes // size ** i) % size for i in range(n)], axis=-1)
    return np.array([decode(int(c), n, size) for c in codes], dtype=np.int64).reshape(-1, n)
