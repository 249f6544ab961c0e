import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fgsense import geometry as geo
from fgsense.incidence import (
    BinaryMatrix,
    BMMFormatError,
    build_incidence,
    delete_covered_columns,
    format_bmm,
    parse_bmm,
    read_bmm,
    select_row_bundles,
    transpose,
    write_bmm,
)


@pytest.fixture(scope="module")
def eg216():
    g = geo.make_geometry("EG", 2, 16)
    return g, build_incidence(g, 0, 1, 1)


@pytest.mark.parametrize(
    "kind,r,q,mu1,mu2,t,shape,reg",
    [
        ("EG", 4, 2, 1, 3, 1, (30, 120), (7, 28)),
        ("PG", 3, 4, 0, 1, 2, (85, 357), (5, 21)),
        ("EG", 3, 7, 0, 1, 2, (343, 2793), (7, 57)),
        ("PG", 2, 2, 0, 1, 1, (7, 7), (3, 3)),
    ],
)
def test_regular_constructions(kind, r, q, mu1, mu2, t, shape, reg):
    H = build_incidence(geo.make_geometry(kind, r, q), mu1, mu2, t)
    assert H.shape == shape
    assert H.is_regular() == reg


def test_entries_match_containment():
    g = geo.make_geometry("EG", 3, 3)
    H = build_incidence(g, 1, 2, 1)
    planes, lines = geo.enumerate_flats(g, 2), geo.enumerate_flats(g, 1)
    for i in range(0, H.rows, 5):
        for j in range(0, H.cols, 7):
            assert H.bits[i, j] == geo.flat_contains(planes[i], lines[j])


def test_transpose_swaps_type():
    g = geo.make_geometry("PG", 2, 3)
    H = build_incidence(g, 0, 1, 1)
    T = transpose(H)
    assert (T.bits == H.bits.T).all() and T.meta.type == 2
    assert transpose(T) == H


def test_bundle_rows_sum_to_ones(eg216):
    g, H = eg216
    for b in geo.parallel_bundles(g, 1):
        assert (H.bits[list(b.members)].sum(axis=0) == 1).all()


def test_bundle_selection(eg216):
    _, H = eg216
    for cnt in (1, 4, 7, 17):
        S = select_row_bundles(H, cnt)
        assert S.shape == (16 * cnt, 256)
        assert S.is_regular() == (cnt, 16)
    assert select_row_bundles(H, 17) == H
    with pytest.raises(ValueError):
        select_row_bundles(H, 18)
    with pytest.raises(ValueError):
        select_row_bundles(transpose(H), 2)


def test_concatenated_bundles_give_full_matrix(eg216):
    g, H = eg216
    blocks = [H.bits[list(b.members)] for b in geo.parallel_bundles(g, 1)]
    assert (np.vstack(blocks) == H.bits).all()


def test_column_deletion():
    g = geo.make_geometry("EG", 2, 32)
    H = select_row_bundles(build_incidence(g, 0, 1, 1), 10)
    nxt = geo.parallel_bundles(g, 1)[10]
    for j in (0, 1, 4, 12):
        D = delete_covered_columns(H, nxt, j)
        assert D.shape == (320, 1024 - 32 * j)
        assert set(D.column_weights().tolist()) == {10}
        assert len(D.meta.deleted_columns) == 32 * j
    with pytest.raises(ValueError):
        delete_covered_columns(H, geo.parallel_bundles(g, 1)[3], 1)


def test_binary_matrix_validation():
    with pytest.raises(ValueError):
        BinaryMatrix(np.array([[1, 0], [1, 0]]))
    with pytest.raises(ValueError):
        BinaryMatrix(np.array([[2, 1]]))
    M = BinaryMatrix(np.eye(3, dtype=int))
    assert not M.bits.flags.writeable
    assert M.is_regular() == (1, 1)


def test_bmm_round_trip(tmp_path):
    H = build_incidence(geo.make_geometry("PG", 2, 2), 0, 1, 1)
    path = tmp_path / "fano.bmm"
    write_bmm(H, path)
    text = path.read_bytes().decode("ascii")
    assert text.startswith("BMM 7 7\n") and text.endswith("\n") and "\r" not in text
    assert read_bmm(path) == H


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.data())
def test_bmm_round_trip_random(m, n, data):
    bits = np.array(data.draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=m, max_size=m)))
    bits[0] = 1  # no zero columns
    M = BinaryMatrix(bits)
    assert parse_bmm(format_bmm(M)) == M


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 1),
        ("BMX 1 1\n1\n", 1),
        ("BMM 2 2\n11\n", 2),
        ("BMM 1 3\n11\n", 2),
        ("BMM 1 2\n1a\n", 2),
        ("BMM 2 2\n11\n1\n", 3),
    ],
)
def test_bmm_parse_errors(text, line):
    with pytest.raises(BMMFormatError) as err:
        parse_bmm(text)
    assert err.value.lineno == line


def test_bmm_rejects_carriage_returns(tmp_path):
    p = tmp_path / "crlf.bmm"
    p.write_bytes(b"BMM 1 1\r\n1\r\n")
    with pytest.raises(BMMFormatError):
        read_bmm(p)
