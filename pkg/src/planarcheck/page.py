"""Planar pages, curve classes and vanishing-cycle factorizations.

A page is the disk with ``n`` holes.  A simple closed curve on it is
recorded only through its winding vector: entry ``h`` is 1 when the curve
encloses hole ``h`` and 0 otherwise.  All invariants computed downstream
depend on nothing else.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Any, List, Sequence, Tuple


class FactorizationParseError(ValueError):
    """Malformed factorization data.  ``path`` locates the offending item."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class Page:
    holes: int

    def __post_init__(self):
        if self.holes < 0:
            raise ValueError("a page has a non-negative number of holes")


@dataclass(frozen=True)
class Curve:
    winding: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "winding", tuple(int(x) for x in self.winding))
        if any(x not in (0, 1) for x in self.winding):
            raise ValueError(f"winding numbers must be 0 or 1, got {self.winding}")
        if not any(self.winding):
            raise ValueError("curve is not homologically essential (encloses no hole)")

    @property
    def holes(self) -> int:
        return len(self.winding)

    def support(self) -> frozenset:
        return frozenset(h for h, x in enumerate(self.winding) if x)


def _check_same_page(a: Curve, b: Curve):
    if a.holes != b.holes:
        raise ValueError(f"curves live on different pages ({a.holes} vs {b.holes} holes)")


def dominates(a: Curve, b: Curve) -> bool:
    """``a`` encloses every hole that ``b`` encloses."""
    _check_same_page(a, b)
    return all(y <= x for x, y in zip(a.winding, b.winding))


def separated(a: Curve, b: Curve) -> bool:
    """No hole is enclosed by both curves."""
    _check_same_page(a, b)
    return not any(x and y for x, y in zip(a.winding, b.winding))


@dataclass(frozen=True)
class Factorization:
    """An ordered list of vanishing cycles on a planar page.

    List position is the identity of a cycle: two cycles with the same
    winding vector are still distinct Lefschetz critical points.
    """

    page: Page
    cycles: Tuple[Curve, ...] = ()
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(self.cycles))
        for i, c in enumerate(self.cycles):
            if c.holes != self.page.holes:
                raise ValueError(
                    f"cycle {i} has {c.holes} winding entries, page has {self.page.holes} holes"
                )

    @classmethod
    def from_windings(cls, holes: int, windings: Sequence[Sequence[int]]) -> "Factorization":
        return cls(Page(holes), tuple(Curve(tuple(w)) for w in windings))

    @property
    def holes(self) -> int:
        return self.page.holes

    def __len__(self) -> int:
        return len(self.cycles)

    def winding_matrix(self) -> List[List[int]]:
        """The ``holes x cycles`` matrix whose columns are the winding vectors."""
        return [[c.winding[h] for c in self.cycles] for h in range(self.holes)]

    def to_json(self) -> dict:
        return {"holes": self.holes, "cycles": [list(c.winding) for c in self.cycles]}


def boundary_multitwist(b: int) -> Factorization:
    """Product of the Dehn twists about all ``b`` boundary components.

    The page has ``b - 1`` holes; the outer boundary contributes the curve
    enclosing every hole, each hole the curve enclosing only itself.  With
    ``b == 1`` the page is a disk, which carries no essential curve, so the
    factorization is empty and carries a warning.
    """
    if b < 1:
        raise ValueError("the page needs at least one boundary component")
    n = b - 1
    if n == 0:
        msg = "disk page: the boundary twist is not a product of essential twists"
        warnings.warn(msg)
        return Factorization(Page(0), (), warnings=(msg,))
    outer = Curve((1,) * n)
    inner = [Curve(tuple(int(h == k) for h in range(n))) for k in range(n)]
    return Factorization(Page(n), (outer, *inner))


def factorization_from_json(data: Any) -> Factorization:
    """Build a factorization from ``{"holes": n, "cycles": [[0|1, ...], ...]}``."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise FactorizationParseError(f"invalid JSON ({exc.msg} at line {exc.lineno} column {exc.colno})")
    if not isinstance(data, dict):
        raise FactorizationParseError("expected an object with 'holes' and 'cycles'")
    holes = data.get("holes")
    if not isinstance(holes, int) or isinstance(holes, bool) or holes < 0:
        raise FactorizationParseError("'holes' must be a non-negative integer", "$.holes")
    cycles = data.get("cycles", [])
    if not isinstance(cycles, list):
        raise FactorizationParseError("'cycles' must be a list", "$.cycles")
    curves = []
    for i, row in enumerate(cycles):
        where = f"$.cycles[{i}]"
        if not isinstance(row, list):
            raise FactorizationParseError("cycle must be a list of 0/1 entries", where)
        if len(row) != holes:
            raise FactorizationParseError(f"cycle has {len(row)} entries, expected {holes}", where)
        for h, x in enumerate(row):
            if x not in (0, 1) or isinstance(x, bool):
                raise FactorizationParseError("winding entries must be 0 or 1", f"{where}[{h}]")
        if not any(row):
            raise FactorizationParseError("cycle encloses no hole (not essential)", where)
        curves.append(Curve(tuple(row)))
    return Factorization(Page(holes), tuple(curves))
