"""Sparse solve and symmetric-part eigenvalue contract."""

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from mmfd.errors import SingularSystemError
from mmfd.linalg import from_triplets, max_symmetric_eig, solve_sparse


def test_solve_identity():
    a = sp.identity(3, format="csr")
    np.testing.assert_allclose(solve_sparse(a, [1.0, 2.0, 3.0]), [1.0, 2.0, 3.0])


def test_solve_tridiagonal_hand_oracle():
    # Forward elimination of tridiag(-1, 2, -1), b = (1, 0, 0) by hand gives
    # x = (0.75, 0.5, 0.25).
    a = sp.diags([[-1.0, -1.0], [2.0, 2.0, 2.0], [-1.0, -1.0]], [-1, 0, 1])
    x = solve_sparse(a, [1.0, 0.0, 0.0])
    np.testing.assert_allclose(x, [0.75, 0.5, 0.25], atol=1e-14)


def test_singular_system_raises_with_pivot():
    a = sp.csr_matrix(np.array([[0.0]]))
    with pytest.raises(SingularSystemError) as err:
        solve_sparse(a, [1.0])
    assert err.value.pivot_index == 0


def test_from_triplets_sums_duplicates_and_checks_ranges():
    a = from_triplets(2, 2, [0, 0, 1], [0, 0, 1], [1.0, 2.0, 5.0])
    np.testing.assert_allclose(a.toarray(), [[3.0, 0.0], [0.0, 5.0]])
    with pytest.raises(ValueError):
        from_triplets(2, 2, [0, 2], [0, 0], [1.0, 1.0])


@pytest.mark.parametrize("n", [50, 500, 5000])
def test_solve_residual_on_random_diagonally_dominant(n):
    rng = np.random.default_rng(n)
    nnz_per_row = 5
    rows = np.repeat(np.arange(n), nnz_per_row)
    cols = rng.integers(0, n, n * nnz_per_row)
    vals = rng.uniform(-1.0, 1.0, n * nnz_per_row)
    a = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    a = a + sp.diags(np.abs(a).sum(axis=1).A1 + 1.0)
    b = rng.uniform(-1.0, 1.0, n)
    x = solve_sparse(a, b)
    resid = np.max(np.abs(a @ x - b))
    assert resid <= 1e-10 * (1.0 + np.max(np.abs(b)))


def test_max_symmetric_eig_diagonal():
    assert max_symmetric_eig(sp.diags([-1.0, -2.0])) == pytest.approx(-1.0)


def test_max_symmetric_eig_skew_is_zero():
    c = sp.csr_matrix(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    assert abs(max_symmetric_eig(c)) <= 1e-12


def test_max_symmetric_eig_closed_form_2x2():
    # symmetric part [[-2, 1.5], [1.5, -2]] has eigenvalues -2 +- 1.5.
    c = sp.csr_matrix(np.array([[-2.0, 3.0], [0.0, -2.0]]))
    assert max_symmetric_eig(c) == pytest.approx(-0.5, abs=1e-12)


@given(seed=st.integers(min_value=0, max_value=1000))
@settings(max_examples=20, deadline=None)
def test_max_symmetric_eig_transpose_invariant(seed):
    rng = np.random.default_rng(seed)
    c = sp.csr_matrix(rng.uniform(-1, 1, (8, 8)))
    assert max_symmetric_eig(c) == pytest.approx(max_symmetric_eig(c.T), abs=1e-10)


def test_power_iteration_branch_matches_dense():
    # above the dense cutoff the shifted power iteration takes over
    rng = np.random.default_rng(5)
    n = 2500
    d = rng.uniform(-3.0, -0.5, n)
    off = rng.uniform(-0.2, 0.2, n - 1)
    c = sp.diags([off, d, off], [-1, 0, 1], format="csr")
    dense = float(np.linalg.eigvalsh(c.toarray())[-1])
    assert max_symmetric_eig(c) == pytest.approx(dense, rel=1e-6, abs=1e-8)
