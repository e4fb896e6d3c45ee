import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from plethysm.errors import UsageError
from plethysm.linalg import (
    SparseRationalMatrix,
    is_injective,
    span_rank,
    vectors_to_matrix,
)
from plethysm.tabloids import ModuleVector

F = Fraction


def dense(rows):
    cols = len(rows[0]) if rows else 0
    columns = [{r: F(rows[r][c]) for r in range(len(rows)) if rows[r][c]} for c in range(cols)]
    return SparseRationalMatrix.from_column_dicts(len(rows), columns)


def rank_bruteforce(rows):
    # plain fraction Gaussian elimination on a dense copy
    m = [[F(x) for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        for r in range(len(m)):
            if r != row and m[r][col]:
                factor = m[r][col] / m[row][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
    return rank


def test_rank_trivial():
    assert dense([[0, 0], [0, 0]]).rank() == 0
    assert dense([[1, 0], [0, 1]]).rank() == 2
    assert SparseRationalMatrix(5, 0).rank() == 0


def test_rank_known_matrix():
    m = dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert m.rank() == 2
    assert m.rank(order="index") == 2
    assert m.rank(order="reverse", self_check=True) == 2


def test_is_injective():
    assert is_injective(dense([[1, 0], [0, 1], [3, 4]]))
    assert not is_injective(dense([[1, 1], [1, 1]]))
    assert not is_injective(dense([[1, 2, 3]]))  # wider than tall


def test_rank_random_vs_bruteforce():
    rng = random.Random(7)
    for _ in range(60):
        nrows = rng.randint(1, 8)
        ncols = rng.randint(1, 8)
        rows = [
            [rng.choice([0, 0, 1, -1, 2, F(1, 2), F(-2, 3)]) for _ in range(ncols)]
            for _ in range(nrows)
        ]
        m = dense(rows)
        expected = rank_bruteforce(rows)
        assert m.rank(self_check=True) == expected
        assert m.transpose().rank() == expected


def test_rank_invariant_under_scaling_and_permutation():
    rng = random.Random(11)
    for _ in range(50):
        nrows, ncols = rng.randint(2, 10), rng.randint(2, 10)
        rows = [[rng.choice([0, 0, 0, 1, -2, 3]) for _ in range(ncols)] for _ in range(nrows)]
        base = dense(rows).rank()
        rng.shuffle(rows)
        factors = [F(rng.choice([1, 2, 3, 5]), rng.choice([1, 2, 7])) for _ in rows]
        scaled = [[f * x for x in row] for f, row in zip(factors, rows)]
        assert dense(scaled).rank() == base


@st.composite
def sparse_matrix_strategy(draw):
    nrows = draw(st.integers(min_value=1, max_value=12))
    ncols = draw(st.integers(min_value=1, max_value=12))
    entries = draw(
        st.lists(
            st.tuples(
                st.integers(min_value=0, max_value=nrows - 1),
                st.integers(min_value=0, max_value=ncols - 1),
                st.integers(min_value=-4, max_value=4),
            ),
            max_size=30,
        )
    )
    rows = [[0] * ncols for _ in range(nrows)]
    for r, c, v in entries:
        rows[r][c] = v
    return rows


@settings(max_examples=60, deadline=None)
@given(sparse_matrix_strategy())
def test_rank_transpose_property(rows):
    m = dense(rows)
    assert m.rank() == m.transpose().rank() == rank_bruteforce(rows)


def test_coordinate_text_roundtrip():
    m = dense([[1, 0], [F(1, 2), -3]])
    text = m.to_coordinate_text()
    assert text.splitlines()[0] == "# 2 2 3"
    back = SparseRationalMatrix.from_coordinate_text(text)
    assert back.rows == m.rows and back.cols == m.cols
    assert back.columns == m.columns
    with pytest.raises(UsageError):
        SparseRationalMatrix.from_coordinate_text("0 0 1/1\n")


def test_span_rank():
    space = ("M", (2,))
    v1 = ModuleVector(space, {"a": F(1), "b": F(2)})
    v2 = ModuleVector(space, {"a": F(2), "b": F(4)})
    v3 = ModuleVector(space, {"b": F(1)})
    assert span_rank([]) == 0
    assert span_rank([v1, v2]) == 1
    assert span_rank([v1, v2, v3]) == 2
    with pytest.raises(UsageError):
        span_rank([v1, ModuleVector(("M", (1, 1)), {"a": F(1)})])


def test_vectors_to_matrix_dims():
    space = ("M", (2,))
    v1 = ModuleVector(space, {"a": F(1)})
    v2 = ModuleVector(space, {"b": F(1)})
    m = vectors_to_matrix([v1, v2])
    assert (m.rows, m.cols) == (2, 2)
