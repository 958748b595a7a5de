"""Homology of the Lefschetz fibration built from a planar factorization.

The total space is the page times a disk with one 2-handle per vanishing
cycle.  Second homology is the lattice of null-homologous combinations of
cycles, paired by ``B.B' = -sum(b_i b'_i)``; ``c1`` evaluates a class to
its coefficient sum.  First homology is ``H1(page)`` modulo the cycles.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from . import lattice
from .page import Factorization


@dataclass(frozen=True)
class IntersectionLattice:
    basis: Tuple[Tuple[int, ...], ...]
    gram: Tuple[Tuple[int, ...], ...]
    c1: Tuple[int, ...]
    holes: int
    cycles: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram_matrix(self) -> List[List[int]]:
        return [list(row) for row in self.gram]

    def to_json(self) -> dict:
        return {
            "basis": [list(b) for b in self.basis],
            "gram": self.gram_matrix(),
            "c1": list(self.c1),
        }


@dataclass(frozen=True)
class HomologyReport:
    h1: Tuple[int, ...]
    h2_rank: int
    euler: int
    signature: int
    chi_plus_sigma: int
    lattice: IntersectionLattice

    def to_json(self) -> dict:
        return {
            "h1": list(self.h1),
            "h2_rank": self.h2_rank,
            "euler": self.euler,
            "signature": self.signature,
            "chi_plus_sigma": self.chi_plus_sigma,
            "gram": self.lattice.gram_matrix(),
            "c1": list(self.lattice.c1),
        }


def pairing(b: Tuple[int, ...], bb: Tuple[int, ...]) -> int:
    return -lattice.dot(b, bb)


def chern_value(b) -> int:
    return sum(b)


def second_homology(f: Factorization) -> List[List[int]]:
    return lattice.kernel_basis(f.winding_matrix(), cols=len(f))


def intersection_form(f: Factorization) -> IntersectionLattice:
    basis = [tuple(b) for b in second_homology(f)]
    gram = tuple(tuple(pairing(u, v) for v in basis) for u in basis)
    return IntersectionLattice(
        basis=tuple(basis),
        gram=gram,
        c1=tuple(chern_value(b) for b in basis),
        holes=f.holes,
        cycles=len(f),
    )


def first_homology(f: Factorization) -> List[int]:
    # 2-handles only, so H1(W, P) = 0 and H1(W) = H1(P) / <cycles>
    return lattice.cokernel_invariants(f.winding_matrix(), rows=f.holes)


def homology_report(f: Factorization, verify: bool = False) -> HomologyReport:
    """Collect H1, H2, Euler characteristic and signature.

    The form is definite, so the signature is just minus the rank; pass
    ``verify=True`` to re-check definiteness explicitly.
    """
    lat = intersection_form(f)
    if verify and lat.rank and not lattice.is_negative_definite(lat.gram_matrix()):
        raise AssertionError("intersection form of a planar fibration is not negative definite")
    euler = 1 - f.holes + len(f)
    signature = -lat.rank
    return HomologyReport(
        h1=tuple(first_homology(f)),
        h2_rank=lat.rank,
        euler=euler,
        signature=signature,
        chi_plus_sigma=euler + signature,
        lattice=lat,
    )


def is_integral_homology_ball(f: Factorization) -> bool:
    return not first_homology(f) and not second_homology(f)
