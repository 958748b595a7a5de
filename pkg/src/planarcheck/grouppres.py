"""Group presentations compiled into planar Lefschetz fibrations.

Pipeline: parse, rewrite the presentation by Tietze moves until every
relator is a positive word using each generator at most once and long
relators use disjoint generators, then realize each relator as the curve
enclosing its generators' holes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from . import lattice
from .fillhomology import HomologyReport, homology_report
from .page import Curve, Factorization, Page

Letter = Tuple[int, int]  # (generator index, +1 or -1)
Word = Tuple[Letter, ...]

INVERSE_REMOVAL = "InverseRemoval"
DUPLICATE_REMOVAL = "DuplicateRemoval"


class PresentationSyntaxError(ValueError):
    """Parse failure; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.pos = pos
        self.line = line
        self.column = col


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple((int(g), int(s)) for g, s in w) for w in self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("repeated generator name")
        for i, w in enumerate(self.relators):
            if not w:
                raise ValueError(f"relator {i} is empty")
            for g, s in w:
                if not 0 <= g < len(self.generators) or s not in (1, -1):
                    raise ValueError(f"relator {i} has an invalid letter ({g}, {s})")

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def deficiency(self) -> int:
        return len(self.generators) - len(self.relators)

    def word_text(self, w: Word) -> str:
        return " ".join(self.generators[g] + ("" if s > 0 else "^-1") for g, s in w)

    def to_text(self) -> str:
        return f"< {' '.join(self.generators)} | {', '.join(self.word_text(w) for w in self.relators)} >"

    def exponent_matrix(self) -> List[List[int]]:
        """Generators x relators matrix of exponent sums."""
        M = [[0] * len(self.relators) for _ in self.generators]
        for j, w in enumerate(self.relators):
            for g, s in w:
                M[g][j] += s
        return M


def abelianization(P: Presentation) -> List[int]:
    """Invariant factors of ``G / [G, G]``; zeros count free summands."""
    return lattice.cokernel_invariants(P.exponent_matrix(), rows=P.m)


# ---------------------------------------------------------------------------
# Parsing

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


def parse_presentation(text: str) -> Presentation:
    """Parse ``< g1 g2 ... | w1, w2, ... >``.

    Words are whitespace-separated letters ``gen`` or ``gen^-1``.  An empty
    relator list (``< x | >``) is allowed; an empty relator is not.
    """
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def expect(ch: str):
        nonlocal pos
        skip_ws()
        if pos >= n or text[pos] != ch:
            found = repr(text[pos]) if pos < n else "end of input"
            raise PresentationSyntaxError(f"expected {ch!r}, found {found}", text, pos)
        pos += 1

    expect("<")
    names: List[str] = []
    while True:
        skip_ws()
        if pos < n and text[pos] == "|":
            break
        if pos < n and text[pos] == ",":
            pos += 1
            continue
        m = _IDENT.match(text, pos)
        if not m:
            found = repr(text[pos]) if pos < n else "end of input"
            raise PresentationSyntaxError(f"expected a generator name or '|', found {found}", text, pos)
        if m.group() in names:
            raise PresentationSyntaxError(f"generator {m.group()!r} declared twice", text, pos)
        names.append(m.group())
        pos = m.end()
    if not names:
        raise PresentationSyntaxError("a presentation needs at least one generator", text, pos)
    expect("|")
    index = {g: i for i, g in enumerate(names)}

    relators: List[Word] = []
    word: List[Letter] = []
    word_start = pos
    while True:
        skip_ws()
        if pos >= n:
            raise PresentationSyntaxError("expected '>' to close the presentation", text, pos)
        ch = text[pos]
        if ch in ",>":
            if word:
                relators.append(tuple(word))
            elif ch == "," or relators:
                raise PresentationSyntaxError(
                    "empty relator (it presents nothing; delete it)", text, word_start
                )
            word = []
            pos += 1
            word_start = pos
            if ch == ">":
                break
            continue
        m = _IDENT.match(text, pos)
        if not m:
            raise PresentationSyntaxError(f"malformed token starting with {ch!r}", text, pos)
        name = m.group()
        if name not in index:
            raise PresentationSyntaxError(f"unknown generator {name!r}", text, pos)
        pos = m.end()
        sign = 1
        if pos < n and text[pos] == "^":
            if text.startswith("^-1", pos) and not (pos + 3 < n and text[pos + 3].isalnum()):
                sign = -1
                pos += 3
            else:
                raise PresentationSyntaxError("exponent must be ^-1", text, pos)
        word.append((index[name], sign))
    skip_ws()
    if pos != n:
        raise PresentationSyntaxError("trailing text after '>'", text, pos)
    return Presentation(tuple(names), tuple(relators))


# ---------------------------------------------------------------------------
# Badness


@dataclass(frozen=True)
class BadnessReport:
    b_minus: int
    b_plus_per_generator: Tuple[int, ...]
    b_plus: int
    total: int
    short_repeats: int

    @property
    def b_hat(self) -> int:
        """Badness plus one per short word ``x x``; zero exactly when realizable."""
        return self.total + self.short_repeats

    def to_json(self) -> dict:
        return {
            "b_minus": self.b_minus,
            "b_plus_per_generator": list(self.b_plus_per_generator),
            "b_plus": self.b_plus,
            "total": self.total,
            "short_repeats": self.short_repeats,
            "b_hat": self.b_hat,
        }


def _is_long(w: Word) -> bool:
    return len(w) >= 3


def _is_short_repeat(w: Word) -> bool:
    return len(w) == 2 and w[0] == w[1] and w[0][1] == 1


def badness(P: Presentation) -> BadnessReport:
    b_minus = sum(1 for w in P.relators for _, s in w if s < 0)
    per = [0] * P.m
    for w in P.relators:
        if _is_long(w):
            for g, s in w:
                if s > 0:
                    per[g] += 1
    b_plus = sum(max(x - 1, 0) for x in per)
    return BadnessReport(
        b_minus=b_minus,
        b_plus_per_generator=tuple(per),
        b_plus=b_plus,
        total=b_minus + b_plus,
        short_repeats=sum(1 for w in P.relators if _is_short_repeat(w)),
    )


# ---------------------------------------------------------------------------
# Reduction


@dataclass(frozen=True)
class ReductionStep:
    case: str
    relator: int
    position: int
    generator: int  # the generator whose occurrence was replaced
    new_generators: Tuple[int, ...]


@dataclass(frozen=True)
class ReductionTrace:
    steps: Tuple[ReductionStep, ...]
    presentations: Tuple[Presentation, ...]  # initial, then one per step

    @property
    def initial(self) -> Presentation:
        return self.presentations[0]

    @property
    def final(self) -> Presentation:
        return self.presentations[-1]

    def to_json(self) -> list:
        return [
            {
                "case": s.case,
                "relator": s.relator,
                "position": s.position,
                "generator": self.presentations[k + 1].generators[s.generator],
                "new_generators": [self.presentations[k + 1].generators[g] for g in s.new_generators],
            }
            for k, s in enumerate(self.steps)
        ]


def _first_offense(P: Presentation) -> Optional[Tuple[str, int, int]]:
    seen = set()
    for i, w in enumerate(P.relators):
        for j, (g, s) in enumerate(w):
            if s < 0:
                return INVERSE_REMOVAL, i, j
            if _is_long(w):
                if g in seen:
                    return DUPLICATE_REMOVAL, i, j
                seen.add(g)
            elif j == 1 and _is_short_repeat(w):
                return DUPLICATE_REMOVAL, i, j
    return None


def _fresh_names(existing: Sequence[str], count: int) -> List[str]:
    taken = set(existing)
    out = []
    k = 1
    while len(out) < count:
        name = f"_g{k}"
        if name not in taken:
            out.append(name)
            taken.add(name)
        k += 1
    return out


def reduction_step(P: Presentation) -> Optional[Tuple[ReductionStep, Presentation]]:
    """One Tietze rewrite lowering ``b_hat`` by exactly one, or None at zero.

    Inverse letter ``x^-1``: add ``y`` with relator ``x y`` and put ``y`` in
    its place.  Surplus letter ``x``: add ``y, z`` with relators ``x y`` and
    ``y z`` and put ``z`` in its place.  The leftmost offense in the first
    offending relator is rewritten.
    """
    hit = _first_offense(P)
    if hit is None:
        return None
    case, i, j = hit
    g = P.relators[i][j][0]
    m = P.m
    relators = list(P.relators)
    word = list(relators[i])
    if case == INVERSE_REMOVAL:
        gens = P.generators + tuple(_fresh_names(P.generators, 1))
        word[j] = (m, 1)
        relators[i] = tuple(word)
        relators.append(((g, 1), (m, 1)))
        new = (m,)
    else:
        gens = P.generators + tuple(_fresh_names(P.generators, 2))
        word[j] = (m + 1, 1)
        relators[i] = tuple(word)
        relators.append(((g, 1), (m, 1)))
        relators.append(((m, 1), (m + 1, 1)))
        new = (m, m + 1)
    return ReductionStep(case, i, j, g, new), Presentation(gens, tuple(relators))


def reduce_presentation(P: Presentation) -> ReductionTrace:
    steps = []
    states = [P]
    while True:
        nxt = reduction_step(states[-1])
        if nxt is None:
            break
        steps.append(nxt[0])
        states.append(nxt[1])
    return ReductionTrace(tuple(steps), tuple(states))


# ---------------------------------------------------------------------------
# Realization


def _respects(order_pos: List[int], w: Word) -> bool:
    """The word's generators appear in increasing cyclic order."""
    seq = [order_pos[g] for g, _ in w]
    descents = sum(1 for a, b in zip(seq, seq[1:] + seq[:1]) if a >= b)
    return descents <= 1


def cyclic_order(P: Presentation) -> List[int]:
    """Hole order for the generators of a badness-0 presentation.

    The declared order is kept when every long relator already respects
    it cyclically; otherwise the long relators' generator sequences are
    concatenated (they are disjoint) and the remaining generators appended.
    """
    longs = [w for w in P.relators if _is_long(w)]
    identity = list(range(P.m))
    if all(_respects(identity, w) for w in longs):
        return identity
    order: List[int] = []
    for w in longs:
        order.extend(g for g, _ in w)
    used = set(order)
    order.extend(g for g in range(P.m) if g not in used)
    return order


def order_and_realize(P: Presentation) -> Tuple[Factorization, List[int]]:
    """Realize each relator as the curve around its generators' holes.

    Returns the factorization and the generator placed at each hole.
    """
    if badness(P).b_hat:
        raise ValueError("presentation must have badness 0 before realization")
    order = cyclic_order(P)
    pos = [0] * P.m
    for h, g in enumerate(order):
        pos[g] = h
    curves = []
    for w in P.relators:
        wind = [0] * P.m
        for g, _ in w:
            wind[pos[g]] = 1
        curves.append(Curve(tuple(wind)))
    return Factorization(Page(P.m), tuple(curves)), order


def satisfies_prc(P: Presentation, order: Sequence[int]) -> bool:
    """Positive words, no repeated generator, cyclic order respected."""
    pos = [0] * P.m
    for h, g in enumerate(order):
        pos[g] = h
    for w in P.relators:
        if any(s < 0 for _, s in w):
            return False
        gens = [g for g, _ in w]
        if len(set(gens)) != len(gens):
            return False
        if not _respects(pos, w):
            return False
    return True


@dataclass(frozen=True)
class CompiledFibration:
    presentation: Presentation
    badness: BadnessReport
    trace: ReductionTrace
    order: Tuple[int, ...]
    factorization: Factorization
    homology: HomologyReport

    @property
    def page_euler(self) -> int:
        return 1 - self.factorization.holes

    @property
    def euler_lower_bound(self) -> int:
        b = self.badness
        return 1 - self.presentation.m - 2 * b.b_plus - b.b_minus

    @property
    def euler_bound_holds(self) -> bool:
        return self.page_euler >= self.euler_lower_bound

    def to_json(self) -> dict:
        final = self.trace.final
        return {
            "input": self.presentation.to_text(),
            "badness": self.badness.to_json(),
            "trace": self.trace.to_json(),
            "reduced": final.to_text(),
            "hole_order": [final.generators[g] for g in self.order],
            "fibration": self.factorization.to_json(),
            "homology": self.homology.to_json(),
            "integral_homology_ball": not self.homology.h1 and self.homology.h2_rank == 0,
            "page_euler": self.page_euler,
            "euler_lower_bound": self.euler_lower_bound,
            "euler_bound_holds": self.euler_bound_holds,
        }


def compile_presentation(P: Union[Presentation, str]) -> CompiledFibration:
    if isinstance(P, str):
        P = parse_presentation(P)
    trace = reduce_presentation(P)
    fact, order = order_and_realize(trace.final)
    return CompiledFibration(
        presentation=P,
        badness=badness(P),
        trace=trace,
        order=tuple(order),
        factorization=fact,
        homology=homology_report(fact),
    )
