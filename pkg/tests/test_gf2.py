import numpy as np
import pytest

from productldpc import (
    PermutationArray,
    SparseBinMatrix,
    density,
    kron,
    rank_gf2,
    syndrome,
    vec_kron,
)
from productldpc.gf2 import vstack


def dense_rank_gf2(a):
    """Independent oracle: plain Gaussian elimination on a dense copy."""
    a = np.array(a, dtype=np.uint8) % 2
    m, n = a.shape
    rank = 0
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, m):
            if a[r, col]:
                piv = r
                break
        if piv is None:
            continue
        a[[row, piv]] = a[[piv, row]]
        for r in range(m):
            if r != row and a[r, col]:
                a[r] ^= a[row]
        row += 1
        rank += 1
    return rank


def random_sparse(rng, rows, cols, p=0.3):
    return SparseBinMatrix.from_dense(rng.random((rows, cols)) < p)


class TestSparseBinMatrix:
    def test_rejects_out_of_range_index(self):
        with pytest.raises(ValueError):
            SparseBinMatrix(1, 3, [[0, 3]])

    def test_rejects_unsorted_support(self):
        with pytest.raises(ValueError):
            SparseBinMatrix(1, 4, [[2, 1]])

    def test_rejects_duplicate_support(self):
        with pytest.raises(ValueError):
            SparseBinMatrix(1, 4, [[1, 1]])

    def test_all_zero_row_is_representable(self):
        m = SparseBinMatrix(2, 4, [[], [0, 3]])
        assert m.nnz == 2
        assert np.array_equal(m.to_dense()[0], [0, 0, 0, 0])

    def test_dense_round_trip(self, rng):
        a = (rng.random((7, 11)) < 0.4).astype(np.uint8)
        assert np.array_equal(SparseBinMatrix.from_dense(a).to_dense(), a)

    def test_col_support_is_transpose(self, rng):
        m = random_sparse(rng, 6, 9)
        d = m.to_dense()
        for c, sup in enumerate(m.col_support()):
            assert np.array_equal(sup, np.nonzero(d[:, c])[0])


class TestKron:
    def test_identity_times_matrix_is_block_diagonal(self, rng):
        a = random_sparse(rng, 3, 5)
        out = kron(SparseBinMatrix.identity(2), a).to_dense()
        expected = np.zeros((6, 10), dtype=np.uint8)
        expected[:3, :5] = a.to_dense()
        expected[3:, 5:] = a.to_dense()
        assert np.array_equal(out, expected)

    def test_identity_one_is_neutral(self, rng):
        a = random_sparse(rng, 4, 6)
        assert kron(a, SparseBinMatrix.identity(1)) == a

    def test_row_vector_times_identity(self):
        a = SparseBinMatrix(1, 2, [[0, 1]])
        out = kron(a, SparseBinMatrix.identity(2))
        assert np.array_equal(out.to_dense(), [[1, 0, 1, 0], [0, 1, 0, 1]])

    def test_matches_numpy_kron(self, rng):
        for _ in range(5):
            a = random_sparse(rng, 3, 4)
            b = random_sparse(rng, 2, 5)
            assert np.array_equal(
                kron(a, b).to_dense(), np.kron(a.to_dense(), b.to_dense())
            )


class TestVecKron:
    def dense_vec_kron(self, a, bbar, w):
        """Brute-force expansion of the column-blockwise definition."""
        ad, bd = a.to_dense(), bbar.to_dense()
        x, y = ad.shape
        v = bd.shape[0]
        out = np.zeros((x * v, w * y), dtype=np.uint8)
        for i in range(y):
            block = bd[:, i * w : (i + 1) * w]
            for r in range(x):
                out[r * v : (r + 1) * v, i * w : (i + 1) * w] = ad[r, i] * block
        return out

    def test_row_of_identities_equals_kron_with_identity(self, comp5):
        n = 7
        row_of_ids = PermutationArray.identity(n, comp5.H.cols).to_matrix()
        assert vec_kron(comp5.H, row_of_ids, n) == kron(
            comp5.H, SparseBinMatrix.identity(n)
        )

    def test_identity_permutations_equal_plain_kron(self, comp5):
        pa = PermutationArray.identity(12, 12)
        assert vec_kron(comp5.H, pa.to_matrix(), 12) == kron(
            comp5.H, SparseBinMatrix.identity(12)
        )

    def test_hand_built_blocks_against_dense_expansion(self):
        a = SparseBinMatrix.from_dense([[1, 0], [1, 1]])
        p1 = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        p2 = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
        bbar = SparseBinMatrix.from_dense(np.hstack([p1, p2]))
        out = vec_kron(a, bbar, 3)
        assert np.array_equal(out.to_dense(), self.dense_vec_kron(a, bbar, 3))

    @pytest.mark.parametrize("w", [2, 3, 4])
    def test_random_against_dense_expansion(self, rng, w):
        a = random_sparse(rng, 3, 4)
        bbar = random_sparse(rng, 5, w * 4, p=0.4)
        out = vec_kron(a, bbar, w)
        assert np.array_equal(out.to_dense(), self.dense_vec_kron(a, bbar, w))

    @pytest.mark.parametrize("w", [2, 3, 4])
    def test_random_matrix_with_identity_row(self, rng, w):
        a = random_sparse(rng, 4, 6)
        row_of_ids = PermutationArray.identity(w, 6).to_matrix()
        assert vec_kron(a, row_of_ids, w) == kron(a, SparseBinMatrix.identity(w))

    def test_dimension_mismatch_reports_sizes(self, comp5):
        bad = SparseBinMatrix.identity(5)
        with pytest.raises(ValueError, match="5"):
            vec_kron(comp5.H, bad, 3)


class TestDensity:
    def test_identity(self):
        assert density(SparseBinMatrix.identity(10)) == pytest.approx(0.1)

    def test_block_replication_divides_density(self):
        from productldpc import build_mscmpc

        h = build_mscmpc(81, [9, 10]).H
        replicated = kron(SparseBinMatrix.identity(100), h)
        assert density(replicated) == pytest.approx(density(h) / 100)

    def test_interleaved_expansion_density_exact(self, comp5, rng):
        pa = PermutationArray.random(12, 12, rng)
        expanded = vec_kron(comp5.H, pa.to_matrix(), 12)
        # exact count identity, not a float comparison
        assert expanded.nnz == comp5.H.nnz * 12
        assert expanded.rows * expanded.cols == comp5.H.rows * comp5.H.cols * 144

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            density(SparseBinMatrix(0, 4, []))


class TestRank:
    def test_identity(self):
        assert rank_gf2(SparseBinMatrix.identity(17)) == 17

    def test_unreduced_spc_square_is_rank_deficient(self, spc3):
        full = vstack(
            [
                kron(SparseBinMatrix.identity(4), spc3.H),
                kron(spc3.H, SparseBinMatrix.identity(4)),
            ]
        )
        assert full.rows == 8
        assert rank_gf2(full) == 7
        assert dense_rank_gf2(full.to_dense()) == 7

    def test_matches_dense_oracle(self, rng):
        for _ in range(10):
            m = random_sparse(rng, 8, 12, p=0.35)
            assert rank_gf2(m) == dense_rank_gf2(m.to_dense())

    def test_bounded_and_permutation_invariant(self, rng):
        m = random_sparse(rng, 9, 7)
        r = rank_gf2(m)
        assert r <= min(m.rows, m.cols)
        perm = rng.permutation(m.rows)
        shuffled = SparseBinMatrix(m.rows, m.cols, [m.row_support[i] for i in perm])
        assert rank_gf2(shuffled) == r


class TestSyndrome:
    def test_zero_vector(self, comp5):
        assert not syndrome(comp5.H, np.zeros(12, dtype=np.uint8)).any()

    def test_identity_passthrough(self):
        out = syndrome(SparseBinMatrix.identity(2), np.array([1, 0]))
        assert np.array_equal(out, [1, 0])

    def test_matches_dense_product(self, rng):
        m = random_sparse(rng, 6, 10)
        x = rng.integers(0, 2, 10, dtype=np.uint8)
        assert np.array_equal(syndrome(m, x), m.to_dense() @ x % 2)

    def test_length_mismatch_rejected(self, comp5):
        with pytest.raises(ValueError):
            syndrome(comp5.H, np.zeros(11, dtype=np.uint8))


class TestPermutationArray:
    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            PermutationArray(3, [[0, 0, 2]])

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            PermutationArray(3, [[0, 1]])

    def test_to_matrix_places_ones_by_row(self):
        pa = PermutationArray(3, [[1, 2, 0], [0, 1, 2]])
        dense = pa.to_matrix().to_dense()
        p1 = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        assert np.array_equal(dense[:, :3], p1)
        assert np.array_equal(dense[:, 3:], np.eye(3, dtype=np.uint8))

    def test_random_is_valid(self, rng):
        pa = PermutationArray.random(9, 4, rng)
        assert len(pa) == 4
        for p in pa.perms:
            assert np.array_equal(np.sort(p), np.arange(9))
