import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from planarcheck import lattice
from planarcheck.lattice import (
    NotEmbeddable,
    cokernel_invariants,
    determinant,
    diagonal_embedding,
    is_negative_definite,
    kernel_basis,
    smith_decomposition,
)
from planarcheck.plumbing import ade_graph


def matrices(max_rows=4, max_cols=6, lo=-3, hi=3):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.tuples(
                st.just(c),
                st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r),
            )
        )
    )


# --- kernel ---------------------------------------------------------------


def test_kernel_three_cycle_example():
    assert [list(v) for v in kernel_basis([[1, 1, 0], [1, 0, 1]])] in ([[1, -1, -1]], [[-1, 1, 1]])


def test_kernel_all_ones_row_has_rank_five():
    basis = kernel_basis([[1] * 6])
    assert len(basis) == 5
    for k in range(5):
        e = [0] * 6
        e[k], e[k + 1] = 1, -1
        assert oracles.in_integer_span(basis, e)


def test_kernel_identity_is_empty():
    assert kernel_basis(lattice.identity(4)) == []


def test_kernel_without_rows_is_standard_basis():
    assert [list(v) for v in kernel_basis([], cols=3)] == lattice.identity(3)


@settings(max_examples=120, deadline=None)
@given(matrices(max_cols=5))
def test_kernel_basis_is_saturated_basis(data):
    cols, M = data
    basis = kernel_basis(M, cols=cols)
    for b in basis:
        assert len(b) == cols
        assert not any(lattice.matvec(M, b))
    # rank over Q
    assert len(basis) == cols - oracles.sympy_rank(M, cols)
    # saturation: the basis spans a direct summand, i.e. its Smith factors are all 1
    if basis:
        assert oracles.sympy_invariant_factors([list(r) for r in zip(*basis)], cols, len(basis)) == [0] * (
            cols - len(basis)
        )


@settings(max_examples=30, deadline=None)
@given(matrices(max_rows=3, max_cols=4, lo=-2, hi=2))
def test_kernel_box_elements_lie_in_span(data):
    cols, M = data
    basis = kernel_basis(M, cols=cols)
    for v in oracles.kernel_vectors_in_box(M, cols, -5, 5) if M else []:
        if any(v):
            assert oracles.in_integer_span(basis, v)


# --- Smith form -----------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=4, max_cols=5, lo=-6, hi=6))
def test_smith_reconstructs_and_is_unimodular(data):
    cols, M = data
    rows = len(M)
    S = smith_decomposition(M, cols=cols)
    if rows:
        assert abs(determinant(S.left)) == 1
    if cols:
        assert abs(determinant(S.right)) == 1
    if rows and cols:
        assert lattice.matmul(lattice.matmul(S.left, M), S.right) == S.diagonal()
    nz = [d for d in S.factors if d]
    assert all(d >= 0 for d in S.factors)
    assert list(S.factors[: len(nz)]) == nz  # zeros trail
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=4, max_cols=5, lo=-6, hi=6))
def test_cokernel_matches_sympy(data):
    cols, M = data
    rows = len(M)
    assert cokernel_invariants(M, rows=rows) == oracles.sympy_invariant_factors(M, rows, cols)


@pytest.mark.parametrize(
    "M, rows, expected",
    [
        ([[1, 1, 0], [1, 0, 1]], 2, []),
        ([], 1, [0]),
        ([[3]], 1, [3]),
        ([[2, 0], [0, 4]], 2, [2, 4]),
        ([[2], [0]], 2, [2, 0]),
    ],
)
def test_cokernel_examples(M, rows, expected):
    assert cokernel_invariants(M, rows=rows) == expected


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_sympy(Q):
    assert determinant(Q) == oracles.sympy_det(Q)


# --- definiteness ---------------------------------------------------------


def test_negative_definite_examples():
    assert is_negative_definite([[-2]])
    assert not is_negative_definite([[1]])
    assert not is_negative_definite([[0]])
    D4 = ade_graph("D4").gram()
    assert is_negative_definite(D4)
    assert lattice.leading_minors(D4) == [oracles.sympy_det([r[:k] for r in D4[:k]]) for k in range(1, 5)]
    assert lattice.leading_minors(D4) == [-2, 3, -4, 4]


def test_negative_definite_rejects_asymmetric():
    with pytest.raises(ValueError):
        is_negative_definite([[-2, 1], [0, -2]])


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_negative_definite_matches_eigenvalues(A):
    import numpy as np

    n = len(A)
    Q = [[A[i][j] + A[j][i] for j in range(n)] for i in range(n)]
    eig = np.linalg.eigvalsh(np.array(Q, dtype=float))
    if abs(eig).min() > 1e-9:
        assert is_negative_definite(Q) == bool((eig < 0).all())
    else:
        assert not is_negative_definite(Q)


# --- embeddings -----------------------------------------------------------


def _gram(images):
    return [[-lattice.dot(u, v) for v in images] for u in images]


@pytest.mark.parametrize("t", ["E6", "E7", "E8"])
def test_exceptional_lattices_do_not_embed(t):
    res = diagonal_embedding(ade_graph(t).gram())
    assert isinstance(res, NotEmbeddable)
    assert res.bound == 2 * int(t[1])


@pytest.mark.parametrize("t", ["A1", "A4", "D4", "D6", "D9"])
def test_embedding_witness_verifies(t):
    Q = ade_graph(t).gram()
    res = diagonal_embedding(Q)
    assert not isinstance(res, NotEmbeddable)
    assert _gram(res.images) == Q
    assert all(len(v) == res.rank for v in res.images)


def test_embedding_is_deterministic():
    Q = ade_graph("D5").gram()
    assert diagonal_embedding(Q) == diagonal_embedding(Q)


def test_embedding_preconditions():
    with pytest.raises(ValueError):
        diagonal_embedding([[1]])
    with pytest.raises(ValueError):
        diagonal_embedding([[-2]], bound=1)
    assert _gram(diagonal_embedding([[-2]], bound=5).images) == [[-2]]


def _unimodular_diagonalizable_brute(Q):
    """Does Q = -B B^T for some integer square B?  Rows have norm |q_ii| <= 4 here."""
    n = len(Q)
    per_row = []
    for i in range(n):
        need = -Q[i][i]
        per_row.append([v for v in itertools.product(range(-2, 3), repeat=n) if sum(x * x for x in v) == need])
    for rows in itertools.product(*per_row):
        if _gram(rows) == Q:
            return True
    return False


def _random_unimodular_negdef(rng, n):
    U = lattice.identity(n)
    for _ in range(rng.randint(0, 3)):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            c = rng.choice((-1, 1))
            U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    return [[-lattice.dot(u, v) for v in U] for u in U]


@pytest.mark.parametrize("seed", range(12))
def test_unimodular_embedding_agrees_with_brute_force(seed):
    import random

    rng = random.Random(seed)
    n = rng.randint(1, 4)
    Q = _random_unimodular_negdef(rng, n)
    while max(-Q[i][i] for i in range(n)) > 4:  # keep the oracle small
        Q = _random_unimodular_negdef(rng, n)
    res = diagonal_embedding(Q)
    assert (not isinstance(res, NotEmbeddable)) == _unimodular_diagonalizable_brute(Q)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-1, 1), min_size=n + 1, max_size=n + 1).filter(any), min_size=n, max_size=n)))
def test_embedding_found_for_images_of_diagonal_vectors(rows):
    Q = _gram(rows)
    if not is_negative_definite(Q):
        return
    res = diagonal_embedding(Q)
    assert not isinstance(res, NotEmbeddable)
    assert _gram(res.images) == Q
