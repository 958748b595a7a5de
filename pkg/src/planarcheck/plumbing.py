"""Plumbing and resolution graphs.

A vertex is a surface (genus, self-intersection); an edge is a transverse
double point.  The singularity-link classifier blows the graph down to its
minimal form and then asks for a tree of spheres without bad vertices.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple, Union

from . import lattice
from .obstruct import (
    INCONCLUSIVE,
    NONPLANAR,
    OBSTRUCTED,
    PLANAR,
    Verdict,
    WeightedIntersectionGraph,
    detect_bad_configuration,
)


class GraphParseError(ValueError):
    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class PlumbingGraph:
    vertices: Tuple[Tuple[int, int], ...]  # (genus, weight)
    edges: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        verts = tuple((int(g), int(w)) for g, w in self.vertices)
        n = len(verts)
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) refers to a missing vertex")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"repeated edge {key}; good resolutions have simple graphs")
            seen.add(key)
        if any(g < 0 for g, _ in verts):
            raise ValueError("genus must be non-negative")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def spheres(cls, weights: Sequence[int], edges: Sequence[Tuple[int, int]] = ()) -> "PlumbingGraph":
        return cls(tuple((0, w) for w in weights), tuple(edges))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def weights(self) -> List[int]:
        return [w for _, w in self.vertices]

    def adjacency(self) -> List[Set[int]]:
        adj: List[Set[int]] = [set() for _ in self.vertices]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def gram(self) -> List[List[int]]:
        n = len(self)
        Q = [[0] * n for _ in range(n)]
        for i, (_, w) in enumerate(self.vertices):
            Q[i][i] = w
        for u, v in self.edges:
            Q[u][v] = Q[v][u] = 1
        return Q

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self)

    def intersection_graph(self) -> WeightedIntersectionGraph:
        return WeightedIntersectionGraph(tuple(self.weights), {e: 1 for e in self.edges})

    def to_json(self) -> dict:
        return {
            "vertices": [{"genus": g, "weight": w} for g, w in self.vertices],
            "edges": [list(e) for e in self.edges],
        }


def graph_from_json(data: Any) -> PlumbingGraph:
    """Parse ``{"vertices": [{"genus": g, "weight": w}, ...], "edges": [[u, v], ...]}``."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphParseError(f"invalid JSON ({exc.msg} at line {exc.lineno} column {exc.colno})")
    if not isinstance(data, dict):
        raise GraphParseError("expected an object with 'vertices' and 'edges'")
    verts = data.get("vertices")
    if not isinstance(verts, list):
        raise GraphParseError("'vertices' must be a list", "$.vertices")
    parsed = []
    for i, v in enumerate(verts):
        where = f"$.vertices[{i}]"
        if not isinstance(v, dict):
            raise GraphParseError("vertex must be an object", where)
        g, w = v.get("genus", 0), v.get("weight")
        if not isinstance(g, int) or isinstance(g, bool) or g < 0:
            raise GraphParseError("genus must be a non-negative integer", where + ".genus")
        if not isinstance(w, int) or isinstance(w, bool):
            raise GraphParseError("weight must be an integer", where + ".weight")
        parsed.append((g, w))
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise GraphParseError("'edges' must be a list", "$.edges")
    pairs = []
    seen = set()
    for i, e in enumerate(edges):
        where = f"$.edges[{i}]"
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise GraphParseError("edge must be a pair of vertex indices", where)
        u, v = e
        if not (0 <= u < len(parsed) and 0 <= v < len(parsed)):
            raise GraphParseError("edge refers to a missing vertex", where)
        if u == v:
            raise GraphParseError("self-loop", where)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError("repeated edge", where)
        seen.add(key)
        pairs.append(key)
    return PlumbingGraph(tuple(parsed), tuple(pairs))


# ---------------------------------------------------------------------------
# Structural tests


def bad_vertices(G: PlumbingGraph) -> List[int]:
    """Vertices with ``0 < -weight < valence``."""
    if any(w > -1 for w in G.weights):
        raise ValueError("bad vertices are defined for weights <= -1")
    return [v for v, (_, w) in enumerate(G.vertices) if 0 < -w < G.degree(v)]


def is_tree_of_spheres(G: PlumbingGraph) -> bool:
    if any(g for g, _ in G.vertices):
        return False
    if not G.vertices:
        return True
    return G.is_connected() and len(G.edges) == len(G) - 1


# ---------------------------------------------------------------------------
# Blow-downs


@dataclass(frozen=True)
class BlowdownMove:
    vertex: int  # label of the removed (-1)-sphere in the input graph
    neighbors: Tuple[int, ...]


@dataclass(frozen=True)
class BlowdownResult:
    graph: PlumbingGraph
    trace: Tuple[BlowdownMove, ...]
    labels: Tuple[int, ...]  # input label of each surviving vertex


@dataclass(frozen=True)
class NonGoodBlowdown:
    vertex: int
    neighbors: Tuple[int, ...]
    trace: Tuple[BlowdownMove, ...]

    @property
    def reason(self) -> str:
        if len(self.neighbors) >= 3:
            return f"(-1)-sphere {self.vertex} meets {len(self.neighbors)} curves; blowing it down leaves a non-normal crossing"
        return f"(-1)-sphere {self.vertex} meets two curves that already intersect; blowing it down creates a tangency"


def blowdown_normalize(G: PlumbingGraph) -> Union[BlowdownResult, NonGoodBlowdown]:
    """Blow down (-1)-spheres of valence <= 2 until none remain.

    A removed vertex raises each neighbor's weight by one; with two
    neighbors they become adjacent.  Vertices are processed lowest label
    first.  A (-1)-sphere of valence >= 3, or of valence 2 whose neighbors
    already meet, cannot be blown down within good resolutions.
    """
    info: Dict[int, List[int]] = {v: [g, w] for v, (g, w) in enumerate(G.vertices)}
    adj: Dict[int, Set[int]] = {v: s for v, s in enumerate(G.adjacency())}
    trace: List[BlowdownMove] = []
    while True:
        target = next((v for v in sorted(info) if info[v][0] == 0 and info[v][1] == -1), None)
        if target is None:
            break
        nbrs = tuple(sorted(adj[target]))
        if len(nbrs) >= 3 or (len(nbrs) == 2 and nbrs[1] in adj[nbrs[0]]):
            return NonGoodBlowdown(target, nbrs, tuple(trace))
        for u in nbrs:
            info[u][1] += 1
            adj[u].discard(target)
        if len(nbrs) == 2:
            adj[nbrs[0]].add(nbrs[1])
            adj[nbrs[1]].add(nbrs[0])
        del info[target], adj[target]
        trace.append(BlowdownMove(target, nbrs))
    labels = tuple(sorted(info))
    index = {v: i for i, v in enumerate(labels)}
    edges = {(index[u], index[v]) for u in labels for v in adj[u] if index[u] < index[v]}
    graph = PlumbingGraph(tuple(tuple(info[v]) for v in labels), tuple(sorted(edges)))
    return BlowdownResult(graph, tuple(trace), labels)


# ---------------------------------------------------------------------------
# Classification of singularity links

POSITIVE_GENUS = "PositiveGenusVertex"
CYCLE = "CycleInGraph"
BAD_VERTEX = "BadVertex"
NOT_NEGATIVE_DEFINITE = "NotNegativeDefinite"
NON_GOOD_BLOWDOWN = "NonGoodBlowdown"

MINIMALITY_CAVEAT = (
    "checked on the blow-down normal form only; other good resolutions are not searched"
)


@dataclass(frozen=True)
class SingClassification:
    verdict: str  # PLANAR or NONPLANAR
    reason: Optional[str]
    graph: PlumbingGraph  # the normalized graph (the input if normalization failed)
    detail: str = ""
    bad: Tuple[int, ...] = ()
    trace: Tuple[BlowdownMove, ...] = ()
    caveats: Tuple[str, ...] = (MINIMALITY_CAVEAT,)

    @property
    def planar(self) -> bool:
        return self.verdict == PLANAR

    def to_verdict(self) -> Verdict:
        witness: Dict[str, Any] = {"normalized_graph": self.graph.to_json()}
        if self.bad:
            witness["bad_vertices"] = list(self.bad)
        if self.trace:
            witness["blowdowns"] = [{"vertex": m.vertex, "neighbors": list(m.neighbors)} for m in self.trace]
        reason = self.reason or "tree of spheres with no bad vertices"
        if self.detail:
            reason = f"{reason}: {self.detail}"
        return Verdict(self.verdict, reason, witness, list(self.caveats))


def _has_cycle(G: PlumbingGraph) -> bool:
    parent = list(range(len(G)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in G.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return True
        parent[ru] = rv
    return False


def classify_singularity_link(G: PlumbingGraph) -> SingClassification:
    if not G.is_connected():
        raise ValueError("a resolution graph is connected")
    if not lattice.is_negative_definite(G.gram()):
        return SingClassification(NONPLANAR, NOT_NEGATIVE_DEFINITE, G, "not the graph of a normal singularity")
    norm = blowdown_normalize(G)
    if isinstance(norm, NonGoodBlowdown):
        return SingClassification(NONPLANAR, NON_GOOD_BLOWDOWN, G, norm.reason, trace=norm.trace)
    H = norm.graph
    labels = norm.labels
    positive = [labels[v] for v, (g, _) in enumerate(H.vertices) if g > 0]
    if positive:
        return SingClassification(NONPLANAR, POSITIVE_GENUS, H, f"vertex {positive[0]} has positive genus", trace=norm.trace)
    if _has_cycle(H):
        return SingClassification(NONPLANAR, CYCLE, H, "smoothing a cycle of spheres gives a torus", trace=norm.trace)
    bad = bad_vertices(H)
    if bad:
        return SingClassification(
            NONPLANAR, BAD_VERTEX, H, f"vertex {labels[bad[0]]} is bad", bad=tuple(labels[v] for v in bad), trace=norm.trace
        )
    return SingClassification(PLANAR, None, H, trace=norm.trace)


# ---------------------------------------------------------------------------
# ADE graphs

_ADE = re.compile(r"^([ADE])(\d+)$")


def parse_ade(t: str) -> Tuple[str, int]:
    m = _ADE.match(t.strip().upper())
    if not m:
        raise ValueError(f"not an ADE type: {t!r}")
    kind, n = m.group(1), int(m.group(2))
    if (kind == "A" and n < 1) or (kind == "D" and n < 4) or (kind == "E" and n not in (6, 7, 8)):
        raise ValueError(f"invalid index for type {kind}: {n}")
    return kind, n


def ade_graph(t: str) -> PlumbingGraph:
    """Graph of ``A_n``, ``D_n`` or ``E_6,7,8``; every vertex a (-2)-sphere.

    ``D_n`` branches at the second vertex of a chain of ``n-1``; ``E_n``
    at the third.
    """
    kind, n = parse_ade(t)
    if kind == "A":
        return PlumbingGraph.spheres([-2] * n, [(i, i + 1) for i in range(n - 1)])
    branch = 1 if kind == "D" else 2
    edges = [(i, i + 1) for i in range(n - 2)] + [(branch, n - 1)]
    return PlumbingGraph.spheres([-2] * n, edges)


def classify_hypersurface(t: str) -> SingClassification:
    return classify_singularity_link(ade_graph(t))


# ---------------------------------------------------------------------------
# Seifert fibered spaces


def negative_continued_fraction(p: int, q: int) -> List[int]:
    """Expand ``-p/q`` (with ``p/q > 1``) as ``a0 - 1/(a1 - 1/(...))``, ``a_i <= -2``."""
    if q <= 0 or p <= q:
        raise ValueError(f"need p/q > 1 (so that r = q/p lies in (0, 1)), got {p}/{q}")
    x = Fraction(-p, q)
    out = []
    while True:
        a = x.numerator // x.denominator  # floor
        out.append(a)
        frac = x - a
        if frac == 0:
            return out
        x = -1 / frac


def evaluate_negative_continued_fraction(coeffs: Sequence[int]) -> Fraction:
    if not coeffs:
        raise ValueError("empty expansion")
    x = Fraction(coeffs[-1])
    for a in reversed(coeffs[:-1]):
        x = a - 1 / x
    return x


def parse_rational(r: Union[str, Fraction, int]) -> Fraction:
    if isinstance(r, Fraction):
        return r
    if isinstance(r, int):
        return Fraction(r)
    m = re.fullmatch(r"\s*(-?\d+)\s*/\s*(\d+)\s*", str(r))
    if not m or int(m.group(2)) == 0:
        raise ValueError(f"not a rational of the form p/q: {r!r}")
    return Fraction(int(m.group(1)), int(m.group(2)))


def seifert_arm(r: Fraction) -> List[int]:
    """Weights of the chain replacing a ``-1/r`` framed fiber."""
    r = parse_rational(r)
    if not 0 < r < 1:
        raise ValueError(f"Seifert parameter must lie in (0, 1), got {r}")
    return negative_continued_fraction(r.denominator, r.numerator)


def seifert_graph(e0: int, rs: Sequence[Union[str, Fraction]]) -> PlumbingGraph:
    """Star-shaped graph: a central ``e0`` sphere and one chain per fiber."""
    weights = [int(e0)]
    edges = []
    for r in rs:
        arm = seifert_arm(r)
        prev = 0
        for a in arm:
            weights.append(a)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return PlumbingGraph.spheres(weights, edges)


def seifert_planarity_check(e0: int, rs: Sequence[Union[str, Fraction]], is_lspace: bool) -> Verdict:
    """Run the star-configuration detector on ``M(e0; r1, r2, r3)``.

    Only ``e0 = -2``, every ``r_i >= 1/3`` and an asserted L-space give the
    statement for all tight structures; any other detector hit is reported
    as an obstruction for the plumbing filling with a caveat.
    """
    rs = [parse_rational(r) for r in rs]
    if len(rs) != 3:
        raise ValueError("small Seifert fibered spaces have exactly three exceptional fibers")
    G = seifert_graph(e0, rs)
    config = detect_bad_configuration(G.intersection_graph())
    witness: Dict[str, Any] = {"graph": G.to_json()}
    if config is None:
        return Verdict(INCONCLUSIVE, "no star configuration in the plumbing graph", witness)
    witness["configuration"] = config.to_json()
    in_range = e0 == -2 and all(r >= Fraction(1, 3) for r in rs)
    caveats = []
    if not is_lspace:
        caveats.append("L-space hypothesis not asserted")
    if not in_range:
        caveats.append("outside the range e0 = -2, r_i >= 1/3")
    if not caveats:
        return Verdict(
            NONPLANAR,
            "every tight structure is filled by a Legendrian realization of this plumbing, which contains a star configuration",
            witness,
            ["uses the classification of tight structures on these L-spaces (taken as given)"],
        )
    return Verdict(OBSTRUCTED, "the plumbing filling contains a star configuration", witness, caveats)
