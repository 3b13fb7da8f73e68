"""Model-constructing search for conjunctions of polynomial constraints.

Variables are assigned in order x1..xn.  Each level picks a value from a
finite candidate set covering every sign-invariant region of the
level's constraint polynomials.  When no value works, the conflict is
generalized to a cell around the current prefix and the excluded region
steers later choices.  Unsatisfiability is reported either from a
conflict over the empty prefix or when the learned cells provably cover
the whole x1 line.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from .cells import CellDescription, cached_roots, cell_contains, eval_indexed_root
from .config import HeuristicConfig
from .engine import Fail
from .explain import Constraint, check_conflict, constraint_satisfied, explain_conflict
from .realalg import NULLIFIED, UNDEF, RealAlg, Sample
from .stats import RunStats

SAT = "sat"
UNSAT = "unsat"
UNKNOWN = "unknown"


@dataclass
class SolveResult:
    status: str
    model: Optional[Sample] = None
    learned: List[CellDescription] = field(default_factory=list)
    explanations: int = 0

    def __bool__(self) -> bool:
        return self.status != UNKNOWN


def simplest_between(a: Fraction, b: Fraction) -> Fraction:
    """The smallest-denominator rational strictly between a and b,
    with ties broken toward the smaller magnitude."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("empty interval")
    if a < 0 < b:
        return Fraction(0)
    if b <= 0:
        return -simplest_between(-b, -a)
    fa = a.numerator // a.denominator
    if a < fa + 1 < b:
        return Fraction(fa + 1)
    if a == fa:
        # (fa, b] with b - fa <= 1: the simplest is fa + 1/k
        k = ((b - fa) ** -1).__floor__() + 1
        return fa + Fraction(1, k)
    return fa + 1 / simplest_between(1 / (b - fa), 1 / (a - fa))


def _candidate_values(
    polys, learned: Sequence[CellDescription], level: int, prefix: Sample
) -> list[RealAlg]:
    """Candidates for x_level: every root of the level's constraint
    polynomials over the prefix, every applicable learned-cell bound,
    and one simple rational per gap around them."""
    vals: list[RealAlg] = []
    for p in polys:
        roots = cached_roots(p, prefix)
        if roots is not NULLIFIED:
            vals.extend(roots)
    for cell in learned:
        if len(cell) != level:
            continue
        if level > 1 and cell_contains(cell, prefix) is not True:
            continue
        iv = cell[level - 1]
        for b in iv.bound_roots():
            v = eval_indexed_root(b, prefix)
            if v is not UNDEF:
                vals.append(v)
    vals.sort(key=functools.cmp_to_key(RealAlg.compare))
    roots: list[RealAlg] = []
    for v in vals:
        if not roots or roots[-1].compare(v) != 0:
            roots.append(v)

    out: list[RealAlg] = [RealAlg.rational(0)]
    if roots:
        a = roots[0].enclosure()[0]
        out.append(RealAlg.rational(simplest_between(a - 1, a)))
        for j in range(len(roots) - 1):
            lo, hi = roots[j], roots[j + 1]
            while not lo.enclosure()[1] < hi.enclosure()[0]:
                lo.refine()
                hi.refine()
            out.append(
                RealAlg.rational(
                    simplest_between(lo.enclosure()[1], hi.enclosure()[0])
                )
            )
        b = roots[-1].enclosure()[1]
        out.append(RealAlg.rational(simplest_between(b, b + 1)))
    out.extend(roots)
    return out


def _excluded(t: RealAlg, learned, level: int, prefix: Sample) -> bool:
    point = prefix.extend(t)
    for cell in learned:
        if len(cell) == level and cell_contains(cell, point) is True:
            return True
    return False


def _line_covered(learned: Sequence[CellDescription]) -> bool:
    """True when the level-1 intervals of the learned cells provably
    cover all of R."""
    base = Sample(())
    spans: list[tuple[Optional[RealAlg], Optional[RealAlg], bool, bool]] = []
    for cell in learned:
        iv = cell[0]
        if iv.is_section():
            v = eval_indexed_root(iv.bound, base)
            if v is not UNDEF:
                spans.append((v, v, True, True))
        else:
            lo = None if iv.lower is None else eval_indexed_root(iv.lower, base)
            hi = None if iv.upper is None else eval_indexed_root(iv.upper, base)
            if lo is UNDEF or hi is UNDEF:
                continue
            spans.append((lo, hi, False, False))

    def sort_key(span):
        lo, _, lc, _ = span
        if lo is None:
            return (0,)
        # closed lower ends first so a point can seal an open boundary
        return (1, functools.cmp_to_key(RealAlg.compare)(lo), 0 if lc else 1)

    spans.sort(key=sort_key)
    covered_hi: Optional[RealAlg] = None
    covered_closed = False
    started = False
    for lo, hi, lc, hc in spans:
        if not started:
            if lo is not None:
                return False
            started = True
            if hi is None:
                return True
            covered_hi, covered_closed = hi, hc
            continue
        if lo is not None:
            cmp = lo.compare(covered_hi)
            if cmp > 0 or (cmp == 0 and not (lc or covered_closed)):
                return False
        if hi is None:
            return True
        cmp = hi.compare(covered_hi)
        if cmp > 0:
            covered_hi, covered_closed = hi, hc
        elif cmp == 0 and hc:
            covered_closed = True
    return False


def solve_conjunction(
    constraints: Sequence[Constraint],
    nvars: int,
    budget: int = 256,
    cfg: Optional[HeuristicConfig] = None,
    stats: Optional[RunStats] = None,
) -> SolveResult:
    """Decide the conjunction of the constraints over x1..xnvars.

    `budget` bounds the number of conflict explanations; exhausting it
    yields UNKNOWN.
    """
    cfg = cfg if cfg is not None else HeuristicConfig()
    stats = stats if stats is not None else RunStats()
    result = SolveResult(UNKNOWN)

    by_level: dict[int, list[Constraint]] = {i: [] for i in range(nvars + 1)}
    for c in constraints:
        lvl = c.poly.level
        if lvl > nvars:
            raise ValueError(f"constraint {c!r} uses an undeclared variable")
        by_level[lvl].append(c)
    for c in by_level[0]:
        if not constraint_satisfied(c, Sample(())):
            result.status = UNSAT
            return result

    assignment: list[RealAlg] = []
    steps = 0
    max_steps = 64 * (budget + 1)
    while True:
        steps += 1
        if steps > max_steps:
            return result
        i = len(assignment) + 1
        if i > nvars:
            model = Sample(assignment)
            if all(constraint_satisfied(c, model) for c in constraints):
                result.status = SAT
                result.model = model
                return result
            return result

        prefix = Sample(assignment)
        polys = [c.poly for c in by_level[i]]
        chosen = None
        for t in _candidate_values(polys, result.learned, i, prefix):
            if _excluded(t, result.learned, i, prefix):
                continue
            point = prefix.extend(t)
            if all(constraint_satisfied(c, point) for c in by_level[i]):
                chosen = t
                break
        if chosen is not None:
            assignment.append(chosen)
            continue

        if by_level[i] and check_conflict(by_level[i], prefix):
            if result.explanations >= budget:
                return result
            result.explanations += 1
            explained = explain_conflict(by_level[i], prefix, cfg, stats)
            if isinstance(explained, Fail):
                if not assignment:
                    return result
                assignment.pop()
                continue
            if i == 1:
                result.status = UNSAT
                result.learned.append(explained.cell)
                return result
            result.learned.append(explained.cell)
            assignment.pop()
            continue

        # every admissible value is inside a learned cell
        if i == 1:
            if _line_covered(result.learned):
                result.status = UNSAT
            return result
        assignment.pop()
