"""Indexed root expressions, symbolic intervals, and cell descriptions.

A cell is described level by level: at each level either a *sector*
(an open interval between two indexed root expressions, or infinity)
or a *section* (the graph of one indexed root expression).  An indexed
root expression "the j-th real root of p in x_i" only gains a value
once the lower-level coordinates are fixed, which is what
`eval_indexed_root` does.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .polynomial import MPoly, Var, parse_poly, poly_to_str
from .realalg import NULLIFIED, UNDEF, RealAlg, RootSortProxy, Sample, roots_in_extension


@dataclass(frozen=True)
class IndexedRoot:
    """The index-th real root (1-based, in increasing order) of poly,
    viewed as a univariate polynomial in its top variable."""

    poly: MPoly
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("root indices are 1-based")
        if self.poly.is_constant():
            raise ValueError("indexed roots need a nonconstant polynomial")

    @property
    def var(self) -> Var:
        return self.poly.level

    @property
    def level(self) -> int:
        return self.poly.level

    def __repr__(self) -> str:
        return f"root({poly_to_str(self.poly)}, {self.index})"


class SymbolicInterval:
    level: int

    def is_section(self) -> bool:
        raise NotImplementedError

    def bound_roots(self) -> list[IndexedRoot]:
        raise NotImplementedError


@dataclass(frozen=True)
class SectionInterval(SymbolicInterval):
    bound: IndexedRoot

    @property
    def level(self) -> int:
        return self.bound.level

    def is_section(self) -> bool:
        return True

    def bound_roots(self) -> list[IndexedRoot]:
        return [self.bound]

    def __repr__(self) -> str:
        return f"section({self.bound!r})"


@dataclass(frozen=True)
class SectorInterval(SymbolicInterval):
    lower: Optional[IndexedRoot]  # None = -inf
    upper: Optional[IndexedRoot]  # None = +inf
    level_hint: int = 0  # required when both ends are infinite

    @property
    def level(self) -> int:
        if self.lower is not None:
            return self.lower.level
        if self.upper is not None:
            return self.upper.level
        return self.level_hint

    def is_section(self) -> bool:
        return False

    def bound_roots(self) -> list[IndexedRoot]:
        return [b for b in (self.lower, self.upper) if b is not None]

    def __repr__(self) -> str:
        lo = "-inf" if self.lower is None else repr(self.lower)
        hi = "+inf" if self.upper is None else repr(self.upper)
        return f"sector({lo}, {hi})"


class CellDescription:
    """Triangular cell data: one symbolic interval per level, interval i
    only mentioning variables x1..xi."""

    def __init__(self, intervals: Sequence[SymbolicInterval]):
        self.intervals = list(intervals)
        for i, iv in enumerate(self.intervals):
            if iv.level not in (i + 1, 0):
                raise ValueError(f"interval {i + 1} has level {iv.level}")

    def __len__(self) -> int:
        return len(self.intervals)

    def __getitem__(self, i: int) -> SymbolicInterval:
        return self.intervals[i]

    def __iter__(self):
        return iter(self.intervals)

    def __eq__(self, other):
        return isinstance(other, CellDescription) and self.intervals == other.intervals

    def __repr__(self) -> str:
        return "Cell[" + "; ".join(repr(iv) for iv in self.intervals) + "]"


# ---------------------------------------------------------------------------
# evaluation

_roots_cache: dict[tuple, object] = {}


def cached_roots(p: MPoly, s: Sample):
    """roots_in_extension with memoization keyed on exact identities."""
    key = (p, tuple(c.key() for c in s))
    if key not in _roots_cache:
        _roots_cache[key] = roots_in_extension(p, s)
    return _roots_cache[key]


def eval_indexed_root(xi: IndexedRoot, s: Sample):
    """Value of the indexed root over the sample prefix, or UNDEF when
    the polynomial is nullified or has fewer real roots than the index."""
    roots = cached_roots(xi.poly, s)
    if roots is NULLIFIED:
        return UNDEF
    if xi.index > len(roots):
        return UNDEF
    return roots[xi.index - 1]


def irexpr(P: Iterable[MPoly], s: Sample, at: RealAlg | None = None):
    """All indexed root expressions of the polynomials in P at s (UNDEF
    if any polynomial is nullified); optionally filtered to the ones
    whose value equals `at`."""
    out: set[IndexedRoot] = set()
    for p in P:
        roots = cached_roots(p, s)
        if roots is NULLIFIED:
            return UNDEF
        for k, r in enumerate(roots):
            if at is None or r.compare(at) == 0:
                out.add(IndexedRoot(p, k + 1))
    return out


def cell_contains(c: CellDescription, r: Sample):
    """Three-valued membership test following the lift definition."""
    for i in range(1, len(r) + 1):
        if i > len(c):
            break
        iv = c[i - 1]
        prefix = r.prefix(i - 1)
        if iv.is_section():
            val = eval_indexed_root(iv.bound, prefix)
            if val is UNDEF:
                return UNDEF
            if r[i - 1].compare(val) != 0:
                return False
        else:
            if iv.lower is not None:
                lo = eval_indexed_root(iv.lower, prefix)
                if lo is UNDEF:
                    return UNDEF
                if not r[i - 1].compare(lo) > 0:
                    return False
            if iv.upper is not None:
                hi = eval_indexed_root(iv.upper, prefix)
                if hi is UNDEF:
                    return UNDEF
                if not r[i - 1].compare(hi) < 0:
                    return False
    return True


def cell_pick_interior_point(c: CellDescription, seed: int) -> Sample:
    """A deterministic sample inside the cell: sections land exactly on
    the bound, sectors take a rational strictly between the refined
    bound enclosures."""
    rng = random.Random(seed)
    coords: list[RealAlg] = []
    for i, iv in enumerate(c):
        prefix = Sample(coords)
        if iv.is_section():
            val = eval_indexed_root(iv.bound, prefix)
            if val is UNDEF:
                raise ValueError("section bound undefined inside its own cell")
            coords.append(val)
            continue
        lo = eval_indexed_root(iv.lower, prefix) if iv.lower is not None else None
        hi = eval_indexed_root(iv.upper, prefix) if iv.upper is not None else None
        if lo is UNDEF or hi is UNDEF:
            raise ValueError("sector bound undefined inside its own cell")
        t = Fraction(rng.randint(1, 15), 16)
        if lo is None and hi is None:
            coords.append(RealAlg.rational(t - Fraction(1, 2)))
        elif lo is None:
            coords.append(RealAlg.rational(hi.enclosure()[0] - 1 - t))
        elif hi is None:
            coords.append(RealAlg.rational(lo.enclosure()[1] + 1 + t))
        else:
            while not lo.enclosure()[1] < hi.enclosure()[0]:
                lo.refine()
                hi.refine()
            a, b = lo.enclosure()[1], hi.enclosure()[0]
            coords.append(RealAlg.rational(a + (b - a) * t))
    return Sample(coords)


# ---------------------------------------------------------------------------
# formula view (used by explanation clauses)


@dataclass(frozen=True)
class ExtendedAtom:
    """Comparison of a variable against an indexed root expression."""

    var: Var
    rel: str  # "<", ">", "="
    bound: IndexedRoot

    def negated(self) -> "ExtendedAtom":
        flip = {"<": ">=", ">": "<=", "=": "!=", "<=": ">", ">=": "<", "!=": "="}
        return ExtendedAtom(self.var, flip[self.rel], self.bound)

    def __repr__(self) -> str:
        return f"x{self.var} {self.rel} {self.bound!r}"


def cell_to_formula(c: CellDescription) -> list[ExtendedAtom]:
    """The cell as a conjunction of extended constraints, one or two
    atoms per level, none for full-line sectors."""
    atoms: list[ExtendedAtom] = []
    for i, iv in enumerate(c, start=1):
        if iv.is_section():
            atoms.append(ExtendedAtom(i, "=", iv.bound))
        else:
            if iv.lower is not None:
                atoms.append(ExtendedAtom(i, ">", iv.lower))
            if iv.upper is not None:
                atoms.append(ExtendedAtom(i, "<", iv.upper))
    return atoms


# ---------------------------------------------------------------------------
# serialization

_ROOT_RE = re.compile(r'\(root\s+"([^"]*)"\s+(\d+)\)|([+-]inf)')


def _root_to_text(b: Optional[IndexedRoot], sign: str) -> str:
    if b is None:
        return f"{sign}inf"
    return f'(root "{poly_to_str(b.poly)}" {b.index})'


def cell_to_text(c: CellDescription) -> str:
    lines = []
    for i, iv in enumerate(c, start=1):
        if iv.is_section():
            lines.append(f"level {i} section {_root_to_text(iv.bound, '')}")
        else:
            lines.append(
                f"level {i} sector {_root_to_text(iv.lower, '-')} "
                f"{_root_to_text(iv.upper, '+')}"
            )
    return "\n".join(lines) + ("\n" if lines else "")


def cell_from_text(text: str) -> CellDescription:
    intervals: list[SymbolicInterval] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        m = re.match(r"level\s+(\d+)\s+(sector|section)\s+(.*)", line)
        if not m:
            raise ValueError(f"line {lineno}: cannot parse cell level: {raw!r}")
        level, kind, rest = int(m.group(1)), m.group(2), m.group(3)
        if level != len(intervals) + 1:
            raise ValueError(f"line {lineno}: expected level {len(intervals) + 1}")
        bounds = []
        for bm in _ROOT_RE.finditer(rest):
            if bm.group(3):
                bounds.append(None)
            else:
                bounds.append(IndexedRoot(parse_poly(bm.group(1)), int(bm.group(2))))
        if kind == "section":
            if len(bounds) != 1 or bounds[0] is None:
                raise ValueError(f"line {lineno}: a section needs one root bound")
            intervals.append(SectionInterval(bounds[0]))
        else:
            if len(bounds) != 2:
                raise ValueError(f"line {lineno}: a sector needs two bounds")
            hint = level if bounds[0] is None and bounds[1] is None else 0
            intervals.append(SectorInterval(bounds[0], bounds[1], level_hint=hint))
    return CellDescription(intervals)
