"""Acceptance suite: ten end-to-end criteria, all exact.

Each criterion is a plain function returning ``(ok, detail)``; the pytest
wrappers assert on it and record a one-line summary that the terminal
summary hook prints.  ``python tests/test_acceptance.py`` runs the same
checks without pytest.
"""
from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction

import pytest

from planarcheck import (
    Factorization,
    NotEmbeddable,
    WeightedIntersectionGraph,
    ade_graph,
    badness,
    boundary_multitwist,
    classify_hypersurface,
    compile_presentation,
    detect_bad_configuration,
    diagonal_embedding,
    enumerate_sphere_classes,
    etnyre_obstruction,
    intersection_form,
    parse_presentation,
    reduce_presentation,
    seifert_planarity_check,
)
from planarcheck import lattice
from planarcheck.grouppres import abelianization, order_and_realize, satisfies_prc

import oracles

RESULTS = {}

BADNESS6 = "< a b c d | b a d, c a b, a b^-1 a c^-1 >"
BINARY_ICOSAHEDRAL = "< s t | s s s t^-1 s^-1 t^-1 s^-1, t t t t t t^-1 s^-1 t^-1 s^-1 >"
SEIFERT_UNOBSTRUCTED_GRAM = [[-2, 1, 1, 1], [1, -2, 0, 0], [1, 0, -2, 0], [1, 0, 0, -4]]
# images of (center, -2 arm, -2 arm, -4 arm) in the rank-6 diagonal lattice
REFERENCE_EMBEDDING = [
    (0, 1, -1, 0, 0, 0),
    (0, 0, 1, -1, 0, 0),
    (1, -1, 0, 0, 0, 0),
    (1, 1, 0, 0, -1, -1),
]


def _suite():
    return oracles.random_factorization_suite(500)


# ---------------------------------------------------------------------------


def criterion_1():
    """ADE table: only A_n is planar."""
    wrong = []
    for n in range(1, 13):
        if not classify_hypersurface(f"A{n}").planar:
            wrong.append(f"A{n}")
    for t in [f"D{n}" for n in range(4, 13)] + ["E6", "E7", "E8"]:
        if classify_hypersurface(t).planar:
            wrong.append(t)
    return not wrong, f"37 types classified, mismatches: {wrong or 'none'}"


def criterion_2():
    """D4 star configuration; none on A_n chains."""
    cfg = detect_bad_configuration(ade_graph("D4").intersection_graph())
    ok = cfg is not None and cfg.k == 3 and cfg.center_square == -2 and cfg.center == 1
    chains = [n for n in range(1, 13) if detect_bad_configuration(ade_graph(f"A{n}").intersection_graph()) is not None]
    ok = ok and not chains
    return ok, f"D4 witness {cfg.to_json() if cfg else None}; A_n hits: {chains or 'none'}"


def _equivalent_embeddings(ours, ref, automorphisms):
    """Equal up to vertex signs, graph automorphism and signed coordinate permutation.

    Coordinates unused by both are dropped; a signed coordinate permutation
    permutes and negates columns, so compare multisets of sign-normalized
    columns after each choice of row signs and automorphism.
    """

    def columns(rows):
        cols = [tuple(r[c] for r in rows) for c in range(len(rows[0]))]
        cols = [c for c in cols if any(c)]
        return sorted(max(c, tuple(-x for x in c)) for c in cols)

    target = columns(ref)
    for perm in automorphisms:
        for signs in itertools.product((1, -1), repeat=len(ref)):
            rows = [tuple(signs[v] * x for x in ours[perm[v]]) for v in range(len(ref))]
            if columns(rows) == target:
                return True
    return False


def criterion_3():
    """Diagonal lattice embeddings: E refused, D and the Seifert Gram embedded."""
    notes = []
    ok = True
    for t in ("E6", "E7", "E8"):
        start = time.perf_counter()
        res = diagonal_embedding(ade_graph(t).gram())
        elapsed = time.perf_counter() - start
        Q = ade_graph(t).gram()
        bound = sum(-Q[i][i] for i in range(len(Q)))
        good = isinstance(res, NotEmbeddable) and res.bound == bound
        if t == "E8":
            good = good and elapsed < 10.0
        ok &= good
        notes.append(f"{t} refused in {elapsed:.3f}s" if good else f"{t} FAILED")
    for n in range(4, 10):
        Q = ade_graph(f"D{n}").gram()
        res = diagonal_embedding(Q)
        good = not isinstance(res, NotEmbeddable) and [
            [-lattice.dot(u, v) for v in res.images] for u in res.images
        ] == Q
        ok &= good
        if not good:
            notes.append(f"D{n} FAILED")
    notes.append("D4..D9 embedded")
    res = diagonal_embedding(SEIFERT_UNOBSTRUCTED_GRAM)
    good = not isinstance(res, NotEmbeddable)
    if good:
        good = [[-lattice.dot(u, v) for v in res.images] for u in res.images] == SEIFERT_UNOBSTRUCTED_GRAM
        # the two (-2) arms (vertices 1, 2) may be exchanged
        good = good and _equivalent_embeddings(res.images, REFERENCE_EMBEDDING, [(0, 1, 2, 3), (0, 2, 1, 3)])
    ok &= good
    notes.append("M(-2;1/2,1/2,1/4) witness matches reference" if good else "M(-2;1/2,1/2,1/4) FAILED")
    return ok, "; ".join(notes)


def criterion_4():
    """Boundary multitwists: Gram [-b]; L(3,1) has c1 = [-1]."""
    lat = intersection_form(boundary_multitwist(3))
    ok = lat.rank == 1 and lat.gram_matrix() == [[-3]] and list(lat.c1) == [-1]
    bad = [b for b in range(2, 13) if intersection_form(boundary_multitwist(b)).gram_matrix() != [[-b]]]
    return ok and not bad, f"L(3,1): rank {lat.rank}, gram {lat.gram_matrix()}, c1 {list(lat.c1)}; b=2..12 mismatches: {bad or 'none'}"


def criterion_5():
    """Six twists on the annulus give the A5 lattice."""
    lat = intersection_form(Factorization.from_windings(1, [[1]] * 6))
    G = lat.gram_matrix()
    A5 = [[-2 if i == j else (1 if abs(i - j) == 1 else 0) for j in range(5)] for i in range(5)]
    det = oracles.sympy_det(G)
    inv = oracles.sympy_invariant_factors(G, 5, 5)
    ok = (
        lat.rank == 5
        and abs(det) == 6
        and det == oracles.sympy_det(A5)
        and inv == oracles.sympy_invariant_factors(A5, 5, 5) == [6]
        and all(G[i][i] == -2 for i in range(5))
    )
    return ok, f"rank {lat.rank}, det {det}, invariant factors {inv}"


def criterion_6():
    """Seifert check: flagged on {1/2, 1/3, 2/5}^3, silent on (1/2, 1/2, 1/4)."""
    rs = [Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)]
    missed = []
    for triple in itertools.product(rs, repeat=3):
        v = seifert_planarity_check(-2, triple, True)
        if v.verdict != "nonplanar" or v.witness.get("configuration") is None:
            missed.append(tuple(str(r) for r in triple))
    limit = seifert_planarity_check(-2, ["1/2", "1/2", "1/4"], True)
    ok = not missed and limit.verdict == "inconclusive"
    return ok, f"27 triples, missed: {missed or 'none'}; (1/2,1/2,1/4) -> {limit.verdict}"


def criterion_7():
    """Badness-6 presentation: components, six steps, (p)(r)(c), abelianization, Euler bound."""
    P = parse_presentation(BADNESS6)
    rep = badness(P)
    ok = (
        rep.b_minus == 2
        and list(rep.b_plus_per_generator) == [4, 2, 1, 1]
        and rep.total == 6
        and rep.b_hat == 6
    )
    trace = reduce_presentation(P)
    ok = ok and len(trace.steps) == 6
    ref = oracles.sympy_invariant_factors(P.exponent_matrix(), P.m, len(P.relators))
    drift = []
    for k, Q in enumerate(trace.presentations):
        if oracles.sympy_invariant_factors(Q.exponent_matrix(), Q.m, len(Q.relators)) != ref or abelianization(Q) != ref:
            drift.append(k)
        if Q.deficiency != P.deficiency:
            drift.append(f"deficiency@{k}")
    ok = ok and not drift and badness(trace.final).b_hat == 0
    fact, order = order_and_realize(trace.final)
    ok = ok and satisfies_prc(trace.final, order)
    bundle = compile_presentation(P)
    ok = ok and bundle.euler_bound_holds and bundle.page_euler >= 1 - P.m - 2 * rep.b_plus - rep.b_minus
    return ok, (
        f"b={rep.total} (b-={rep.b_minus}, b+ per gen {list(rep.b_plus_per_generator)}), "
        f"{len(trace.steps)} steps, abelianization {ref} preserved, "
        f"chi(page)={bundle.page_euler} >= {bundle.euler_lower_bound}"
    )


def criterion_8():
    """Integral homology balls from <x | x> and the binary icosahedral group."""
    notes = []
    ok = True
    for name, text in (("<x|x>", "< x | x >"), ("binary icosahedral", BINARY_ICOSAHEDRAL)):
        bundle = compile_presentation(text)
        f = bundle.factorization
        M = f.winding_matrix()
        h1 = oracles.sympy_invariant_factors(M, f.holes, len(f))
        h2 = len(f) - oracles.sympy_rank(M, len(f))
        good = list(bundle.homology.h1) == [] and bundle.homology.h2_rank == 0 and h1 == [] and h2 == 0
        ok &= good
        notes.append(f"{name}: H1={list(bundle.homology.h1)} H2 rank {bundle.homology.h2_rank} ({len(bundle.trace.steps)} steps)")
    return ok, "; ".join(notes)


def criterion_9():
    """Property suites against brute force."""
    mismatches = {"a": 0, "b": 0, "c": 0, "d": 0}
    checked_c = 0
    for n, ws in _suite():
        f = Factorization.from_windings(n, ws)
        m = len(ws)
        lat = intersection_form(f)
        M = oracles.winding_matrix(n, ws)
        # (a) every kernel vector in the [-3, 3] box has square <= -2
        if m:
            low = oracles.min_nonzero_kernel_norm(M, m)
            if low is not None and low < 2:
                mismatches["a"] += 1
            if (low is None) != (lat.rank == 0):
                mismatches["a"] += 1
        # (b) Gram equals the signed occurrence count
        for s, t in itertools.product(range(lat.rank), repeat=2):
            if lat.gram[s][t] != oracles.chain_intersection(lat.basis[s], lat.basis[t]):
                mismatches["b"] += 1
        # (c) sphere classes equal the brute-force pattern set
        if m <= 7:
            checked_c += 1
            got = {tuple(sc.vector(m)) for sc in enumerate_sphere_classes(f)}
            if got != oracles.brute_sphere_classes(n, ws):
                mismatches["c"] += 1
    rng = random.Random(77)
    for _ in range(200):
        squares, edges = oracles.random_weighted_graph(rng, 10)
        G = WeightedIntersectionGraph(tuple(squares), edges)
        cfg = detect_bad_configuration(G)
        brute = oracles.brute_star_configurations(squares, edges)
        if cfg is None:
            mismatches["d"] += bool(brute)
            continue
        valid = (
            all(G.multiplicity(cfg.center, b) == 1 and squares[b] in (-2, -3) for b in cfg.arms)
            and all(G.multiplicity(a, b) == 0 for a, b in itertools.combinations(cfg.arms, 2))
            and cfg.k > -squares[cfg.center]
        )
        if not valid or not brute or cfg.center != min(brute) or cfg.k != brute[cfg.center]:
            mismatches["d"] += 1
    ok = not any(mismatches.values())
    return ok, f"500 factorizations ({checked_c} with m<=7), 200 graphs; mismatches {mismatches}"


def criterion_10():
    """The diagonal-lattice test never obstructs a Gram coming from planar data."""
    violations = 0
    for n, ws in _suite():
        G = intersection_form(Factorization.from_windings(n, ws)).gram_matrix()
        if etnyre_obstruction(G, boundary_is_qhs3=True).verdict == "obstructed":
            violations += 1
    return violations == 0, f"500 Grams, {violations} violations"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _run(number):
    fn = CRITERIA[number - 1]
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {fn.__doc__.strip()} -- {detail} ({elapsed:.2f}s)"
    RESULTS[number] = line
    return ok, line


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    ok, line = _run(number)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failures = 0
    t0 = time.perf_counter()
    for k in range(1, 11):
        ok, line = _run(k)
        print(line)
        failures += not ok
    print(f"{10 - failures}/10 criteria passed in {time.perf_counter() - t0:.1f}s")
    sys.exit(1 if failures else 0)
