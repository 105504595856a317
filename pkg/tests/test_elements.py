import pytest
from hypothesis import given
from hypothesis import strategies as st

from signedwalk.elements import (
    MatrixElement,
    MulTable,
    PermutationElement,
    TableElement,
    same_family,
)
from signedwalk.errors import MixedVariants, NotInvertible


def test_matrix_roundtrip_and_reduction():
    g = MatrixElement.from_rows([[1, -1], [0, 1]], 5)
    assert g.entries == (1, 4, 0, 1)
    assert MatrixElement.decode(g.encode(), 5, 2) == g


def test_matrix_singular_rejected():
    with pytest.raises(NotInvertible):
        MatrixElement.from_rows([[1, 2], [2, 4]], 5)


def test_matrix_inverse_small_and_large():
    for m, p in [(2, 7), (3, 5), (4, 7), (5, 11)]:
        rows = [[(i * m + j + 1) % p for j in range(m)] for i in range(m)]
        rows = [[1 if i == j else rows[i][j] if i < j else 0 for j in range(m)] for i in range(m)]
        g = MatrixElement.from_rows(rows, p)
        assert g.mul(g.inv()).is_identity()
        assert g.inv().mul(g).is_identity()


def test_matrix_order_unipotent():
    g = MatrixElement.from_rows([[1, 1], [0, 1]], 5)
    assert g.order() == 5


def test_mixed_variants_rejected():
    a = MatrixElement.from_rows([[1, 1], [0, 1]], 5)
    b = MatrixElement.from_rows([[1, 1], [0, 1]], 7)
    with pytest.raises(MixedVariants):
        a.mul(b)
    with pytest.raises(MixedVariants):
        same_family([a, b])


@given(st.permutations(list(range(6))))
def test_permutation_roundtrip_and_inverse(images):
    g = PermutationElement(tuple(images))
    assert PermutationElement.decode(g.encode(), 6) == g
    assert g.mul(g.inv()).is_identity()
    # order computed by cycle type equals order by iteration
    k, cur = 1, g
    while not cur.is_identity():
        cur = cur.mul(g)
        k += 1
    assert g.order() == k


def test_permutation_composition_convention():
    # (f * g)(x) = f(g(x))
    f = PermutationElement((1, 0, 2))
    g = PermutationElement((0, 2, 1))
    assert f.mul(g).images == (1, 2, 0)


def test_table_identity_and_inverse():
    rows = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    t = MulTable(rows)
    assert t.identity_index == 0
    g = TableElement(t, 1)
    assert g.order() == 4
    assert g.mul(g.inv()).is_identity()
    assert TableElement.decode(g.encode(), t) == g


def test_table_rejects_non_latin():
    with pytest.raises(ValueError):
        MulTable([[0, 0], [1, 1]])
    # identity does not have to sit at index 0
    assert MulTable([[1, 0], [0, 1]]).identity_index == 1
    # latin square without a two-sided identity
    with pytest.raises(ValueError):
        MulTable([[0, 1, 2], [2, 0, 1], [1, 2, 0]])
