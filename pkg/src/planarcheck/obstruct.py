"""Obstructions to planarity.

Four independent checks live here:

* sphere classes: the coefficient patterns ``alpha_i - sum_{j in J} alpha_j``
  that can carry a symplectic sphere in a planar filling;
* the adjunction test ruling out positive-genus classes;
* the star configuration detector (a center meeting more (-2)/(-3) arms
  than minus its square);
* the diagonal-lattice embedding test for rational homology spheres.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import lattice
from .fillhomology import intersection_form
from .page import Factorization, dominates, separated

PLANAR = "planar"
NONPLANAR = "nonplanar"
OBSTRUCTED = "obstructed"
INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    verdict: str
    reason: str = ""
    witness: dict = field(default_factory=dict)
    caveats: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "reason": self.reason, "witness": self.witness}
        if self.caveats:
            out["caveats"] = list(self.caveats)
        return out


# ---------------------------------------------------------------------------
# Sphere classes


@dataclass(frozen=True)
class SphereClass:
    plus: int
    minus: Tuple[int, ...]

    def vector(self, m: int) -> List[int]:
        b = [0] * m
        b[self.plus] = 1
        for j in self.minus:
            b[j] = -1
        return b

    @property
    def square(self) -> int:
        return -(1 + len(self.minus))


def enumerate_sphere_classes(f: Factorization) -> List[SphereClass]:
    """All ``(i, J)`` with ``alpha_i`` an exact disjoint union of the ``alpha_j``.

    Null-homology, domination and pairwise separation together say the
    supports of ``alpha_j`` (j in J) partition the support of ``alpha_i``,
    so this is an exact-cover search per leading cycle.
    """
    cycles = f.cycles
    out: List[SphereClass] = []
    for i, top in enumerate(cycles):
        cands = [j for j, c in enumerate(cycles) if j != i and dominates(top, c)]
        supports = {j: cycles[j].support() for j in cands}
        target = top.support()
        found: List[Tuple[int, ...]] = []

        def cover(uncovered: frozenset, chosen: List[int]):
            if not uncovered:
                found.append(tuple(sorted(chosen)))
                return
            h = min(uncovered)
            # branching on the lowest uncovered hole yields each cover once
            for j in cands:
                if h in supports[j] and supports[j] <= uncovered:
                    chosen.append(j)
                    cover(uncovered - supports[j], chosen)
                    chosen.pop()

        cover(target, [])
        for J in sorted(found):
            out.append(SphereClass(i, J))
    return out


# ---------------------------------------------------------------------------
# Adjunction


@dataclass(frozen=True)
class AdjunctionGenus:
    """Genus forced by adjunction: ``c1(A) - A.A = 2 - 2g``.

    ``adjunction_sum`` is ``sum(b_j + b_j^2)``; it is at least 2 for every
    nonzero null-homologous ``b``, so ``genus`` is never positive.
    """

    genus: int
    adjunction_sum: int

    @property
    def positive_genus_possible(self) -> bool:
        return self.genus > 0


@dataclass(frozen=True)
class NotRepresentable:
    reason: str


def positive_genus_witness(f: Factorization, b: Sequence[int]) -> Union[AdjunctionGenus, NotRepresentable]:
    b = [int(x) for x in b]
    if len(b) != len(f):
        raise ValueError(f"coefficient vector has length {len(b)}, expected {len(f)}")
    if not any(b):
        raise ValueError("the zero class has no genus")
    if all(x in (-1, 0) for x in b):
        # every summand b + b^2 vanishes, yet such a b cannot be null-homologous
        return NotRepresentable("cannot represent a nontrivial linear combination")
    if any(lattice.matvec(f.winding_matrix(), b)):
        raise ValueError("coefficient vector is not null-homologous")
    s = sum(x + x * x for x in b)
    return AdjunctionGenus(genus=(2 - s) // 2, adjunction_sum=s)


@dataclass(frozen=True)
class MinusOneCertificate:
    holds: bool
    argument: str
    min_square: Optional[int]
    rank: int


def no_minus_one_class(f: Factorization) -> MinusOneCertificate:
    """Certify that no class in ``H2`` has square -1.

    ``B.B = -sum b_i^2 = -1`` forces a single coefficient ``+-1``; then
    ``M b = 0`` says that cycle's winding vector is zero, which essential
    cycles exclude.  The check below confirms every column is nonzero.
    """
    lat = intersection_form(f)
    essential = all(any(c.winding) for c in f.cycles)
    squares = [lat.gram[i][i] for i in range(lat.rank)]
    if not f.cycles:
        argument = "no vanishing cycles: H2 is zero"
    else:
        argument = (
            "a square -1 class has one coefficient +-1 and the rest 0; "
            "that cycle would be null-homologous, but every cycle is essential"
        )
    return MinusOneCertificate(
        holds=essential,
        argument=argument,
        min_square=min(squares) if squares else None,
        rank=lat.rank,
    )


# ---------------------------------------------------------------------------
# Star configurations


@dataclass(frozen=True)
class WeightedIntersectionGraph:
    squares: Tuple[int, ...]
    edges: Dict[Tuple[int, int], int]

    def __post_init__(self):
        object.__setattr__(self, "squares", tuple(self.squares))
        norm = {}
        for (u, v), mult in dict(self.edges).items():
            if u == v:
                raise ValueError(f"self-edge at vertex {u}")
            if mult < 1:
                raise ValueError(f"edge ({u}, {v}) has multiplicity {mult}")
            key = (min(u, v), max(u, v))
            if key in norm and norm[key] != mult:
                raise ValueError(f"conflicting multiplicities for edge {key}")
            norm[key] = mult
        object.__setattr__(self, "edges", norm)
        if any(s >= 0 for s in self.squares):
            raise ValueError("all squares must be negative")

    def __hash__(self):
        return hash((self.squares, tuple(sorted(self.edges.items()))))

    @classmethod
    def from_gram(cls, Q: Sequence[Sequence[int]]) -> "WeightedIntersectionGraph":
        n = len(Q)
        edges = {}
        for i in range(n):
            for j in range(i + 1, n):
                if Q[i][j] < 0:
                    raise ValueError("negative off-diagonal entry; flip basis signs first")
                if Q[i][j]:
                    edges[(i, j)] = Q[i][j]
        return cls(tuple(Q[i][i] for i in range(n)), edges)

    def multiplicity(self, u: int, v: int) -> int:
        return self.edges.get((min(u, v), max(u, v)), 0)

    def neighbors(self, v: int) -> List[int]:
        return sorted(u for e in self.edges for u in e if v in e and u != v)


@dataclass(frozen=True)
class BadConfiguration:
    center: int
    arms: Tuple[int, ...]
    center_square: int

    @property
    def k(self) -> int:
        return len(self.arms)

    def to_json(self) -> dict:
        return {"center": self.center, "arms": list(self.arms), "k": self.k, "center_square": self.center_square}


def _max_independent(cands: List[int], G: WeightedIntersectionGraph) -> Tuple[int, ...]:
    best: Tuple[int, ...] = ()

    def grow(i: int, chosen: List[int]):
        nonlocal best
        if len(chosen) + len(cands) - i <= len(best):
            return
        if i == len(cands):
            best = tuple(chosen)
            return
        v = cands[i]
        if all(G.multiplicity(v, u) == 0 for u in chosen):
            chosen.append(v)
            grow(i + 1, chosen)
            chosen.pop()
        grow(i + 1, chosen)

    grow(0, [])
    return best


def detect_bad_configuration(G: WeightedIntersectionGraph) -> Optional[BadConfiguration]:
    """Find a center ``X`` and arms ``B_1..B_k`` with

    ``B_i.X = 1``, ``B_i.B_j = 0``, ``B_i.B_i in {-2, -3}`` and ``X.X > -k``.

    Centers are tried in index order; for each, a maximum independent set
    of eligible arms is computed exactly (lexicographically first among the
    maximum ones).  Other vertices and edges are ignored.
    """
    for x, sq in enumerate(G.squares):
        arms = [v for v in G.neighbors(x) if G.multiplicity(x, v) == 1 and G.squares[v] in (-2, -3)]
        if len(arms) <= -sq:
            continue
        best = _max_independent(arms, G)
        if len(best) > -sq:
            return BadConfiguration(center=x, arms=best, center_square=sq)
    return None


# ---------------------------------------------------------------------------
# Diagonal lattice obstruction


def etnyre_obstruction(Q: Sequence[Sequence[int]], boundary_is_qhs3: bool, bound: Optional[int] = None) -> Verdict:
    """Negative definiteness always; diagonal embedding for QHS^3 boundaries."""
    Q = lattice.as_matrix(Q)
    if not lattice.is_negative_definite(Q):
        return Verdict(OBSTRUCTED, "intersection form is not negative definite")
    if boundary_is_qhs3:
        emb = lattice.diagonal_embedding(Q, bound)
        if isinstance(emb, lattice.NotEmbeddable):
            return Verdict(
                OBSTRUCTED,
                "intersection form does not embed in a negative diagonal lattice",
                {"bound": emb.bound},
            )
        return Verdict(
            INCONCLUSIVE,
            "intersection form embeds in a negative diagonal lattice",
            {"rank": emb.rank, "images": [list(v) for v in emb.images]},
        )
    return Verdict(INCONCLUSIVE, "negative definite; embedding test needs a rational homology sphere boundary")
