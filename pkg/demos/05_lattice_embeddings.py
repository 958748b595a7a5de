"""Exact lattice computations and diagonal embeddings.

Run: python demos/05_lattice_embeddings.py
"""
# %% Smith form with unimodular transforms
from planarcheck import ade_graph, cokernel_invariants, diagonal_embedding, etnyre_obstruction, kernel_basis, smith_decomposition
from planarcheck import lattice

M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
S = smith_decomposition(M)
print("factors:", S.factors, "check:", lattice.matmul(lattice.matmul(S.left, M), S.right) == S.diagonal())
print("cokernel:", cokernel_invariants(M, rows=3))
print("kernel of [1 1 1 1]:", kernel_basis([[1, 1, 1, 1]]))

# %% D_n lattices sit in a diagonal lattice, E_n lattices do not
for t in ["D4", "D6", "E6", "E7", "E8"]:
    res = diagonal_embedding(ade_graph(t).gram())
    print(t, res if isinstance(res, lattice.NotEmbeddable) else f"rank {res.rank}: {res.images}")

# %% A star plumbing that embeds even though its center meets a (-4) arm
Q = [[-2, 1, 1, 1], [1, -2, 0, 0], [1, 0, -2, 0], [1, 0, 0, -4]]
emb = diagonal_embedding(Q)
for v in emb.images:
    print("  ", v)
print(etnyre_obstruction(Q, boundary_is_qhs3=True).verdict)
