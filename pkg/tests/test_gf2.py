import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qsearch_tools.errors import EnumerationBudgetError
from qsearch_tools.gf2 import (
    AffineMap,
    BitMatrix,
    bits_to_int,
    check_pairs,
    eliminate,
    enumerate_hashes,
    hash_value_table,
    int_to_bits,
    inverse,
    kernel_basis,
    kernel_dim_distribution,
    member_values,
    pairwise_independence_check,
    parametrize_kernel,
    sample_hash,
    solve,
    wilson_interval,
)
from qsearch_tools.gf2 import hashing
from qsearch_tools.gf2.matrix import rank_of_int_rows
from qsearch_tools.seeding import make_rng


def bit_matrices(max_rows=6, max_cols=7):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda shape: st.lists(
            st.lists(st.integers(0, 1), min_size=shape[1], max_size=shape[1]),
            min_size=shape[0],
            max_size=shape[0],
        )
    ).map(BitMatrix.from_rows)


def test_bit_order_is_msb_first():
    assert bits_to_int([1, 0, 1, 1]) == 0b1011
    assert list(int_to_bits(6, 4)) == [0, 1, 1, 0]


def test_kernel_of_all_ones_row():
    A = BitMatrix.from_rows([[1, 1]])
    assert A.rank() == 1
    assert kernel_basis(A) == BitMatrix.from_rows([[1], [1]])


def test_elimination_reduces():
    elim = eliminate(BitMatrix.from_rows([[0, 1, 1], [1, 1, 0], [1, 0, 1]]))
    assert elim.rank == 2
    assert elim.pivots == (0, 1)
    assert elim.reduced == BitMatrix.from_rows([[1, 0, 1], [0, 1, 1], [0, 0, 0]])


@settings(max_examples=60)
@given(bit_matrices())
def test_kernel_basis_is_a_basis(A):
    K = kernel_basis(A)
    assert K.cols == A.cols - A.rank()
    assert not np.any((A @ K).bits)
    assert K.rank() == K.cols
    assert A.rank() == rank_of_int_rows(A.int_rows())


@settings(max_examples=60)
@given(bit_matrices(), st.data())
def test_solve_agrees_with_enumeration(A, data):
    y = np.array(data.draw(st.lists(st.integers(0, 1), min_size=A.rows, max_size=A.rows)), dtype=np.uint8)
    x = solve(A, y)
    reachable = any(np.array_equal(A @ int_to_bits(v, A.cols), y) for v in range(2**A.cols))
    assert (x is not None) == reachable
    if x is not None:
        assert np.array_equal(A @ x, y)


def test_inverse():
    M = BitMatrix.from_rows([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    assert M @ inverse(M) == BitMatrix.identity(3)
    with pytest.raises(ValueError, match="singular"):
        inverse(BitMatrix.from_rows([[1, 1], [1, 1]]))


def test_hex_rows_reload():
    M = BitMatrix.from_rows([[1, 0, 1, 1, 0, 0, 0, 0, 1], [0] * 8 + [1]])
    assert M.to_hex_rows() == ["b080", "0080"]
    assert BitMatrix.from_dict(M.to_dict()) == M


# ----------------------------------------------------------------------
# hashes and kernel parametrization
# ----------------------------------------------------------------------

def test_kernel_parametrization_small_example():
    h = AffineMap(BitMatrix.from_rows([[1, 1]]), [0])
    assert h.kernel_elements() == [0b00, 0b11]
    g = parametrize_kernel(h)
    assert g.d == 1
    assert g.C == BitMatrix.from_rows([[1], [1]])
    assert g.column_weights() == (2,)
    assert g.image() == [0b00, 0b11]


def test_kernel_parametrization_with_offset():
    g = parametrize_kernel(AffineMap(BitMatrix.from_rows([[1, 1]]), [1]))
    assert g.C == BitMatrix.from_rows([[1], [1]])
    assert list(g.p) == [0, 1]
    assert g.image() == [0b01, 0b10]


def test_inconsistent_hash_has_no_parametrization():
    h = AffineMap(BitMatrix.from_rows([[1, 0], [1, 0]]), [0, 1])
    assert h.kernel_elements() == []
    assert parametrize_kernel(h) is None


def test_full_rank_hash_has_single_point_kernel():
    h = AffineMap(BitMatrix.identity(3), [1, 0, 1])
    g = parametrize_kernel(h)
    assert g.d == 0
    assert g.image() == [0b101]


@settings(max_examples=80)
@given(st.integers(0, 2**32 - 1), st.integers(2, 7), st.integers(1, 6))
def test_parametrization_is_sparse_and_exact(seed, n, k):
    h = sample_hash(n, k, make_rng(seed))
    g = parametrize_kernel(h)
    kernel = h.kernel_elements()
    if g is None:
        assert kernel == []
        return
    image = g.image()
    assert sorted(image) == kernel
    assert len(set(image)) == 2**g.d
    assert all(w <= n - g.d + 1 for w in g.column_weights())
    assert g.C.select_rows(g.pivot_rows) == BitMatrix.identity(g.d)
    assert not np.any(g.p[list(g.pivot_rows)])


def test_hash_value_table_layout():
    table = hash_value_table(2, 1)
    assert table.shape == (8, 4)
    # member 0 is A = [0 0], b = 0; the last is A = [1 1], b = 1
    assert list(table[0]) == [0, 0, 0, 0]
    assert list(table[-1]) == [1, 0, 0, 1]
    assert sum(1 for _ in enumerate_hashes(2, 1)) == 8


@pytest.mark.parametrize("n, k", [(1, 1), (3, 2), (2, 2), (4, 1), (3, 3)])
def test_affine_family_is_pairwise_independent(n, k):
    assert pairwise_independence_check(n, k)


def test_member_values_match_enumerated_maps():
    n, k = 3, 2
    columns = [member_values(n, k, x) for x in range(2**n)]
    for index, h in enumerate(enumerate_hashes(n, k)):
        rows, b = divmod(index, 2**k)
        member = b * 2 ** (k * n) + rows
        assert [int(col[member]) for col in columns] == [h.evaluate_int(x) for x in range(2**n)]


def test_check_pairs_cover_small_spaces():
    assert check_pairs(2, make_rng(0)) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    pairs = check_pairs(8, make_rng(3), sampled=40)
    assert (0, 1) in pairs and (0, 255) in pairs
    assert len(pairs) == len(set(pairs)) == 45 + 40
    assert all(x1 < x2 for x1, x2 in pairs)


def test_large_family_is_counted_over_its_members(monkeypatch):
    assert pairwise_independence_check(6, 2)
    assert not pairwise_independence_check(6, 2, offset=False)
    real = hashing.member_values

    def flip_first_member(n, k, x, offset=True):
        values = real(n, k, x, offset)
        if x == 1:
            values = values.copy()
            values[0] ^= 1
        return values

    monkeypatch.setattr(hashing, "member_values", flip_first_member)
    assert not pairwise_independence_check(6, 2)


@pytest.mark.parametrize("n, k", [(2, 1), (3, 2)])
def test_linear_family_is_not(n, k):
    assert not pairwise_independence_check(n, k, offset=False)


def test_enumeration_budget():
    with pytest.raises(EnumerationBudgetError):
        pairwise_independence_check(6, 3)
    with pytest.raises(EnumerationBudgetError):
        next(enumerate_hashes(5, 4))


# ----------------------------------------------------------------------
# kernel dimension statistics
# ----------------------------------------------------------------------

def test_wilson_interval():
    low, high = wilson_interval(50, 100)
    assert low < 0.5 < high
    assert wilson_interval(0, 10)[0] == pytest.approx(0.0, abs=1e-12)
    assert wilson_interval(10, 10)[1] == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        wilson_interval(11, 10)


def test_kernel_dimension_distribution_shape():
    dist = kernel_dim_distribution(6, 3, 2000, make_rng(1))
    assert sum(dist.counts.values()) + dist.empty == 2000
    assert all(d >= 3 for d in dist.counts)
    rows = dist.rows()
    assert rows[-1][0] == "empty"
    assert dist.to_csv().splitlines()[0] == "d,count,frequency,ci_low,ci_high"


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7])
def test_large_kernels_are_rare(k):
    n = 10
    dist = kernel_dim_distribution(n, k, 20000, make_rng(100 + k))
    freq, low, high = dist.tail(n - k + 2)
    assert low <= 1 / 16
