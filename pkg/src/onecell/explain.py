"""Conflict generalization for a model-constructing solver.

Given constraints over x1..x_{n+1} and an assignment of x1..xn that
cannot be extended in the last variable, build a cell around the
assignment on which every constraint polynomial is sign-invariant, so
the same conflict persists everywhere in the cell.  The negated cell
description is the clause a solver can learn.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Union

from .cells import (
    CellDescription,
    ExtendedAtom,
    IndexedRoot,
    cached_roots,
    cell_to_formula,
    eval_indexed_root,
)
from .config import HeuristicConfig
from .engine import CellResult, Fail, run_levels
from .polynomial import MPoly, factor, normalize, poly_to_str, resultant
from .properties import AnDel, DerivationTrace, OrdInv, SgnInv
from .realalg import NULLIFIED, UNDEF, RealAlg, Sample, sign_at
from .rules import PropertySet
from .stats import RunStats

RELS = ("<", "<=", "=", "!=", ">=", ">")


@dataclass(frozen=True)
class Constraint:
    """poly rel 0."""

    poly: MPoly
    rel: str

    def __post_init__(self):
        if self.rel not in RELS:
            raise ValueError(f"unknown relation {self.rel!r}")

    def __repr__(self) -> str:
        return f"{poly_to_str(self.poly)} {self.rel} 0"


@dataclass(frozen=True)
class ExtendedConstraint:
    """x_var rel (an indexed root expression)."""

    var: int
    rel: str
    bound: IndexedRoot

    def __post_init__(self):
        if self.rel not in RELS:
            raise ValueError(f"unknown relation {self.rel!r}")

    def __repr__(self) -> str:
        return f"x{self.var} {self.rel} {self.bound!r}"


def _rel_holds(sign: int, rel: str) -> bool:
    return {
        "<": sign < 0,
        "<=": sign <= 0,
        "=": sign == 0,
        "!=": sign != 0,
        ">=": sign >= 0,
        ">": sign > 0,
    }[rel]


def constraint_satisfied(c, s: Sample) -> bool:
    if isinstance(c, Constraint):
        return _rel_holds(sign_at(c.poly, s), c.rel)
    val = eval_indexed_root(c.bound, s.prefix(c.bound.level - 1))
    if val is UNDEF:
        return False
    return _rel_holds(s[c.var - 1].compare(val), c.rel)


def _constraint_level(c) -> int:
    if isinstance(c, Constraint):
        return c.poly.level
    return max(c.var, c.bound.level)


def _candidate_values(C, s: Sample) -> list[RealAlg]:
    """Root values of all constraint polynomials in the last variable
    over s, sorted and de-duplicated."""
    n = len(s)
    vals: list[RealAlg] = []
    for c in C:
        if isinstance(c, Constraint):
            if c.poly.level == n + 1:
                roots = cached_roots(c.poly, s)
                if roots is not NULLIFIED:
                    vals.extend(roots)
        else:
            if c.var == n + 1:
                v = eval_indexed_root(c.bound, s.prefix(c.bound.level - 1))
                if v is not UNDEF:
                    vals.append(v)
    vals.sort(key=functools.cmp_to_key(RealAlg.compare))
    out: list[RealAlg] = []
    for v in vals:
        if not out or out[-1].compare(v) != 0:
            out.append(v)
    return out


def _between(lo: RealAlg, hi: RealAlg) -> RealAlg:
    while not lo.enclosure()[1] < hi.enclosure()[0]:
        lo.refine()
        hi.refine()
    a, b = lo.enclosure()[1], hi.enclosure()[0]
    return RealAlg.rational((a + b) / 2)


def check_conflict(C: Iterable, s: Sample) -> bool:
    """True iff no value of the next variable satisfies all constraints
    under s: the candidate roots and one sample per interval around
    them all violate some constraint."""
    C = list(C)
    n = len(s)
    for c in C:
        if _constraint_level(c) > n + 1:
            raise ValueError(f"constraint {c!r} beyond level {n + 1}")
    vals = _candidate_values(C, s)
    candidates: list[RealAlg] = []
    if not vals:
        candidates.append(RealAlg.rational(0))
    else:
        candidates.append(RealAlg.rational(vals[0].enclosure()[0] - 1))
        for j, v in enumerate(vals):
            candidates.append(v)
            if j + 1 < len(vals):
                candidates.append(_between(v, vals[j + 1]))
        candidates.append(RealAlg.rational(vals[-1].enclosure()[1] + 1))
    for t in candidates:
        ext = s.extend(t)
        if all(constraint_satisfied(c, ext) for c in C):
            return False
    return True


@dataclass
class ExplainResult:
    cell: CellDescription
    clause: list[ExtendedAtom]
    trace: DerivationTrace
    stats: RunStats

    def __iter__(self):
        return iter((self.cell, self.clause))


def explain_conflict(
    C: Iterable,
    s,
    cfg: HeuristicConfig | None = None,
    stats: RunStats | None = None,
) -> Union[ExplainResult, Fail]:
    """Generalize a verified conflict to a cell around s and the clause
    excluding it."""
    from .engine import as_sample

    C = list(C)
    cfg = cfg if cfg is not None else HeuristicConfig()
    stats = stats if stats is not None else RunStats()
    sample = as_sample(s)
    if not check_conflict(C, sample):
        raise ValueError("the constraints are satisfiable over the assignment")
    n = len(sample)

    polys: set[MPoly] = set()
    for c in C:
        polys.add(c.poly if isinstance(c, Constraint) else c.bound.poly)
    facs: list[MPoly] = []
    for p in sorted(polys, key=MPoly.sort_key):
        stats.saw_poly(p)
        for f, _ in factor(p, cfg.factor_mode):
            if not f.is_constant() and f not in facs:
                facs.append(f)

    top = [f for f in facs if f.level == n + 1]
    for f in top:
        if cached_roots(f, sample) is NULLIFIED:
            return Fail(f"nullified polynomial {poly_to_str(f)} at the assignment")

    trace = DerivationTrace()
    Q = PropertySet(trace)
    for f in facs:
        if f.level < n + 1:
            Q.add(SgnInv(f))
        else:
            Q.add(AnDel(f))

    # chain the top-level roots in value order; consecutive resultants
    # keep the roots ordered over the constructed cell
    chain: list[tuple[IndexedRoot, RealAlg]] = []
    for f in top:
        for k, v in enumerate(cached_roots(f, sample)):
            chain.append((IndexedRoot(f, k + 1), v))

    def cmp(a, b):
        c = a[1].compare(b[1])
        if c:
            return c
        ka = (a[0].poly.sort_key(), a[0].index)
        kb = (b[0].poly.sort_key(), b[0].index)
        return -1 if ka < kb else (1 if ka > kb else 0)

    chain.sort(key=functools.cmp_to_key(cmp))
    for j in range(len(chain) - 1):
        pa, pb = chain[j][0].poly, chain[j + 1][0].poly
        if pa == pb:
            continue
        res = resultant(pa, pb, n + 1)
        if res.is_zero():
            # shared factor; its delineability keeps the roots apart
            continue
        rn = res if res.is_constant() else normalize(res)
        stats.add_resultant(rn)
        Q.add(OrdInv(rn))

    result = run_levels(Q, sample, n, cfg, stats)
    if isinstance(result, Fail):
        return result
    clause = [atom.negated() for atom in cell_to_formula(result.cell)]
    return ExplainResult(result.cell, clause, result.trace, result.stats)


def clause_to_text(cell: CellDescription) -> str:
    """The learnable clause as the negated conjunction of the cell's
    extended atoms."""
    atoms = cell_to_formula(cell)
    if not atoms:
        return "(not true)"
    rendered = " ".join(
        f'({a.rel} x{a.var} (root "{poly_to_str(a.bound.poly)}" {a.bound.index}))'
        for a in atoms
    )
    return f"(not (and {rendered}))"
