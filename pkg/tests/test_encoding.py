import numpy as np
import pytest

from utils.encoding import decode, decode_all, decode_codes, encode, encode_rows, radix_weights


def test_first_coordinate_is_least_significant():
    assert encode((1, 2), 3) == 7
    assert decode(7, 2, 3) == (1, 2)


def test_decode_all_lists_columns_in_code_order():
    assert decode_all(2, 2).tolist() == [[0, 1, 0, 1], [0, 0, 1, 1]]
    assert decode_all(2, 2).dtype == np.int64


def test_batch_encoding_matches_scalar_encoding():
    rows = np.array([[0, 0, 1], [2, 1, 0], [2, 2, 2]])
    assert encode_rows(rows, 3).tolist() == [encode(row, 3) for row in rows.tolist()]
    assert decode_codes(encode_rows(rows, 3), 3, 3).tolist() == rows.tolist()


def test_large_radix_falls_back_to_python_integers():
    weights = radix_weights(16, 20)
    assert weights.dtype == object
    assert weights[-1] == 16 ** 19


@pytest.mark.parametrize('size, n', [(2, 5), (3, 3), (4, 2)])
def test_decode_all_covers_the_power(size, n):
    coords = decode_all(n, size)
    assert coords.shape == (n, size ** n)
    assert encode_rows(coords.T, size).tolist() == list(range(size ** n))


@pytest.mark.parametrize('size', [2, 3, 4, 5])
@pytest.mark.parametrize('n', [1, 2, 3, 4, 5, 6])
def test_every_code_decodes_and_encodes_back(size, n):
    coords = decode_all(n, size)
    for code in range(size ** n):
        t = decode(code, n, size)
        assert t == tuple(coords[:, code].tolist())
        assert encode(t, size) == code
    assert decode_codes(encode_rows(coords.T, size), n, size).tolist() == coords.T.tolist()
