"""Exact integer linear algebra and diagonal-lattice embedding search.

Matrices are plain lists of lists of Python ints, so every operation runs
in arbitrary precision.  Nothing in this module touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence, Tuple, Union

IntMatrix = List[List[int]]
IntVector = List[int]


def as_matrix(M: Sequence[Sequence[int]], cols: Optional[int] = None) -> IntMatrix:
    """Copy ``M`` into a fresh list-of-lists, checking that it is rectangular.

    ``cols`` fixes the column count, which is needed for matrices with zero
    rows (a 0 x c matrix carries no row from which to read c).
    """
    rows = [[int(x) for x in row] for row in M]
    if rows:
        width = len(rows[0])
        if cols is not None and cols != width:
            raise ValueError(f"expected {cols} columns, got {width}")
        for i, row in enumerate(rows):
            if len(row) != width:
                raise ValueError(f"row {i} has length {len(row)}, expected {width}")
    return rows


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: IntMatrix, cols: Optional[int] = None) -> IntMatrix:
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(M: IntMatrix, v: Sequence[int]) -> IntVector:
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def determinant(Q: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    A = as_matrix(Q)
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ M @ right == diagonal`` with ``left``/``right`` unimodular.

    ``factors`` lists the diagonal entries (length ``min(rows, cols)``);
    each divides the next and zeros come last.
    """

    factors: Tuple[int, ...]
    left: Tuple[Tuple[int, ...], ...]
    right: Tuple[Tuple[int, ...], ...]
    rows: int
    cols: int

    def diagonal(self) -> IntMatrix:
        D = [[0] * self.cols for _ in range(self.rows)]
        for i, d in enumerate(self.factors):
            D[i][i] = d
        return D


def smith_decomposition(M: Sequence[Sequence[int]], cols: Optional[int] = None) -> SmithDecomposition:
    A = as_matrix(M, cols)
    r = len(A)
    c = len(A[0]) if A else (cols or 0)
    U = identity(r)
    V = identity(c)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for X in (A, V):
            for row in X:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for X in (A, U):
            X[dst] = [a + q * b for a, b in zip(X[dst], X[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for X in (A, V):
            for row in X:
                row[dst] += q * row[src]

    for t in range(min(r, c)):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
            col_left = [i for i in range(t + 1, r) if A[i][t]]
            row_left = [j for j in range(t + 1, c) if A[t][j]]
            if col_left or row_left:
                # a remainder survived: move the smallest one to the pivot
                cand = [(abs(A[i][t]), 0, i) for i in col_left] + [(abs(A[t][j]), 1, j) for j in row_left]
                _, kind, idx = min(cand)
                if kind == 0:
                    swap_rows(t, idx)
                else:
                    swap_cols(t, idx)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]

    factors = tuple(A[i][i] for i in range(min(r, c)))
    return SmithDecomposition(
        factors=factors,
        left=tuple(tuple(row) for row in U),
        right=tuple(tuple(row) for row in V),
        rows=r,
        cols=c,
    )


def cokernel_invariants(M: Sequence[Sequence[int]], rows: Optional[int] = None) -> List[int]:
    """Invariant factors of ``Z^rows / column_span(M)``, units dropped.

    Zeros (one per free summand) come last.  For a matrix with no columns
    pass ``rows`` explicitly, since it cannot be read off the data.
    """
    A = as_matrix(M)
    r = len(A) if A else 0
    if rows is not None:
        if A and rows != r:
            raise ValueError(f"matrix has {r} rows, expected {rows}")
        r = rows
    c = len(A[0]) if A else 0
    if c == 0:
        return [0] * r
    snf = smith_decomposition(A)
    torsion = [d for d in snf.factors if d not in (0, 1)]
    rank = sum(1 for d in snf.factors if d != 0)
    return torsion + [0] * (r - rank)


# ---------------------------------------------------------------------------
# Kernels


def _column_echelon(A: IntMatrix, c: int) -> Tuple[IntMatrix, IntMatrix, int]:
    """Column-reduce ``A`` in place; return (A, V, rank) with A_in @ V == A."""
    V = identity(c)
    p = 0
    for i in range(len(A)):
        if p == c:
            break
        while True:
            nz = [j for j in range(p, c) if A[i][j]]
            if len(nz) <= 1:
                break
            k = min(nz, key=lambda j: (abs(A[i][j]), j))
            for X in (A, V):
                for row in X:
                    row[p], row[k] = row[k], row[p]
            for j in range(p + 1, c):
                if A[i][j]:
                    q = A[i][j] // A[i][p]
                    for X in (A, V):
                        for row in X:
                            row[j] -= q * row[p]
        nz = [j for j in range(p, c) if A[i][j]]
        if nz:
            k = nz[0]
            if k != p:
                for X in (A, V):
                    for row in X:
                        row[p], row[k] = row[k], row[p]
            p += 1
    return A, V, p


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> List[IntVector]:
    """LLL-reduce a list of linearly independent integer vectors (exact)."""
    B = [list(v) for v in basis]
    n = len(B)
    if n <= 1:
        return B

    def gram_schmidt():
        Bs: List[List[Fraction]] = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        norms: List[Fraction] = []
        for i in range(n):
            v = [Fraction(x) for x in B[i]]
            for j in range(i):
                mu[i][j] = sum(a * b for a, b in zip(B[i], Bs[j])) / norms[j]
                v = [a - mu[i][j] * b for a, b in zip(v, Bs[j])]
            Bs.append(v)
            norms.append(sum(x * x for x in v))
        return Bs, mu, norms

    Bs, mu, norms = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = mu[k][j]
            r = (q.numerator * 2 + q.denominator) // (2 * q.denominator)  # floor(q + 1/2)
            if r:
                B[k] = [a - r * b for a, b in zip(B[k], B[j])]
                Bs, mu, norms = gram_schmidt()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            Bs, mu, norms = gram_schmidt()
            k = max(k - 1, 1)
    return B


def sparsify(basis: Sequence[Sequence[int]]) -> List[IntVector]:
    """Greedy unimodular clean-up of a reduced basis.

    Replaces ``b_j`` by ``b_j -+ b_i`` whenever that keeps its norm from
    growing and strictly lowers the number of nonzero off-diagonal Gram
    entries.  Terminates because that count only drops.
    """
    B = [list(v) for v in basis]
    k = len(B)

    def row_nonzeros(j: int, v: IntVector) -> int:
        return sum(1 for i in range(k) if i != j and dot(v, B[i]))

    improved = True
    while improved:
        improved = False
        for j in range(k):
            norm = dot(B[j], B[j])
            for i in range(k):
                if i == j:
                    continue
                for s in (1, -1):
                    cand = [a - s * b for a, b in zip(B[j], B[i])]
                    if dot(cand, cand) <= norm and row_nonzeros(j, cand) < row_nonzeros(j, B[j]):
                        B[j] = cand
                        norm = dot(cand, cand)
                        improved = True
    return B


def _normalize_sign(v: IntVector) -> IntVector:
    for x in v:
        if x:
            return v if x > 0 else [-y for y in v]
    return v


def kernel_basis(M: Sequence[Sequence[int]], cols: Optional[int] = None) -> List[IntVector]:
    """Saturated basis of the integer kernel ``{b : M b = 0}``.

    The basis is LLL-reduced, then sparsified, and each vector has its
    first nonzero entry positive, so the output is deterministic for a
    given ``M``.
    """
    A = as_matrix(M, cols)
    c = len(A[0]) if A else (cols or 0)
    if not A:
        return [[int(i == j) for j in range(c)] for i in range(c)]
    A, V, rank = _column_echelon(A, c)
    raw = [[V[i][j] for i in range(c)] for j in range(rank, c)]
    return [_normalize_sign(v) for v in sparsify(lll_reduce(raw))]


# ---------------------------------------------------------------------------
# Definiteness


def is_symmetric(Q: Sequence[Sequence[int]]) -> bool:
    n = len(Q)
    return all(len(row) == n for row in Q) and all(
        Q[i][j] == Q[j][i] for i in range(n) for j in range(i)
    )


def leading_minors(Q: Sequence[Sequence[int]]) -> List[int]:
    return [determinant([row[:k] for row in Q[:k]]) for k in range(1, len(Q) + 1)]


def is_negative_definite(Q: Sequence[Sequence[int]]) -> bool:
    """Sylvester's criterion: the k-th leading minor has sign (-1)^k."""
    Q = as_matrix(Q)
    if not is_symmetric(Q):
        raise ValueError("matrix is not symmetric")
    # elimination pivots are ratios of consecutive minors; all must be negative
    A = [[Fraction(x) for x in row] for row in Q]
    n = len(A)
    for k in range(n):
        if A[k][k] >= 0:
            return False
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return True


# ---------------------------------------------------------------------------
# Embedding into the negative diagonal lattice  -<1>^N


@dataclass(frozen=True)
class DiagonalEmbedding:
    """Images of the basis in ``Z^rank`` with pairing ``-sum(x_i y_i)``."""

    rank: int
    images: Tuple[Tuple[int, ...], ...]

    def gram(self) -> IntMatrix:
        return [[-dot(u, v) for v in self.images] for u in self.images]


@dataclass(frozen=True)
class NotEmbeddable:
    bound: int
    reason: str = "exhaustive search found no embedding into the negative diagonal lattice"


def _search_order(Q: IntMatrix) -> List[int]:
    n = len(Q)
    if n == 0:
        return []
    deg = [sum(1 for j in range(n) if j != i and Q[i][j]) for i in range(n)]
    order = [max(range(n), key=lambda i: (deg[i], -i))]
    rest = set(range(n)) - set(order)
    while rest:
        nxt = max(rest, key=lambda i: (sum(1 for j in order if Q[i][j]), -Q[i][i], -i))
        order.append(nxt)
        rest.remove(nxt)
    return order


def _square_partitions(R: int, cap: int) -> List[List[int]]:
    """Non-increasing positive lists whose squares sum to R, parts <= cap."""
    if R == 0:
        return [[]]
    out = []
    for x in range(min(isqrt(R), cap), 0, -1):
        for tail in _square_partitions(R - x * x, x):
            out.append([x] + tail)
    return out


def diagonal_embedding(
    Q: Sequence[Sequence[int]], bound: Optional[int] = None
) -> Union[DiagonalEmbedding, NotEmbeddable]:
    """Decide whether ``Q`` embeds in the negative diagonal lattice.

    Every image ``v`` of a basis vector satisfies ``sum(v_i^2) = -q_ii``, so
    it has at most ``|q_ii|`` nonzero coordinates and an embedding needs at
    most ``sum |q_ii|`` coordinates.  The search introduces fresh
    coordinates only when forced and treats coordinates that are
    indistinguishable so far as interchangeable, which keeps it exhaustive
    while cutting the symmetric duplicates.
    """
    Q = as_matrix(Q)
    if not is_negative_definite(Q):
        raise ValueError("diagonal_embedding requires a negative definite matrix")
    n = len(Q)
    default_bound = sum(-Q[i][i] for i in range(n))
    if bound is None:
        bound = default_bound
    elif bound < default_bound:
        raise ValueError(f"bound {bound} is below the complete bound {default_bound}")

    order = _search_order(Q)
    placed: List[int] = []
    images: List[List[int]] = []  # images[k] belongs to vertex placed[k]
    ncols = 0

    def candidates(i: int):
        norm = -Q[i][i]
        targets = [-Q[i][j] for j in placed]
        # columns as tuples over placed vectors, to detect interchangeable ones
        columns = [tuple(img[c] for img in images) for c in range(ncols)]
        twin: List[Optional[int]] = []
        last_seen = {}
        for c, col in enumerate(columns):
            twin.append(last_seen.get(col))
            last_seen[col] = c
        # tails[k][c] = squared norm of images[k] on coordinates >= c
        tails = []
        for img in images:
            t = [0] * (ncols + 1)
            for c in range(ncols - 1, -1, -1):
                t[c] = t[c + 1] + img[c] * img[c]
            tails.append(t)
        vec = [0] * ncols

        def assign(c: int, R: int, res: List[int]):
            for k, r in enumerate(res):
                if r * r > R * tails[k][c]:
                    return
            if c == ncols:
                if any(res):
                    return
                for parts in _square_partitions(R, isqrt(R)):
                    if ncols + len(parts) <= bound:
                        yield vec + parts
                return
            hi = isqrt(R)
            values = [0]
            for x in range(1, hi + 1):
                values += [x, -x]
            if twin[c] is not None:
                values = [x for x in values if x <= vec[twin[c]]]
            for x in values:
                if x * x > R:
                    continue
                vec[c] = x
                nres = [r - x * img[c] for r, img in zip(res, images)] if x else res
                yield from assign(c + 1, R - x * x, nres)
            vec[c] = 0

        yield from assign(0, norm, targets)

    def search(k: int) -> bool:
        nonlocal ncols
        if k == n:
            return True
        i = order[k]
        for cand in candidates(i):
            old = ncols
            new = len(cand)
            for img in images:
                img.extend([0] * (new - old))
            images.append(list(cand))
            placed.append(i)
            ncols = new
            if search(k + 1):
                return True
            images.pop()
            placed.pop()
            ncols = old
            for img in images:
                del img[old:]
        return False

    if not search(0):
        return NotEmbeddable(bound=bound)

    by_vertex = {v: img for v, img in zip(placed, images)}
    emb = DiagonalEmbedding(rank=ncols, images=tuple(tuple(by_vertex[v]) for v in range(n)))
    if emb.gram() != Q:  # pragma: no cover - guards the search itself
        raise AssertionError("embedding search produced a wrong Gram matrix")
    return emb
