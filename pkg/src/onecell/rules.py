"""Proof rules and the property replacement step.

For a pending property this module enumerates the applicable rule
instances (each an antecedent set that would justify it), picks one,
logs the derivation, and replaces the property by the antecedents that
are not yet justified.  Rule availability depends on the construction
phase: rules concluding sign-invariance of an irreducible polynomial
need the symbolic interval and root ordering chosen for the level,
everything else only needs the sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .cells import IndexedRoot, SymbolicInterval, cached_roots
from .config import HeuristicConfig
from .polynomial import (
    MPoly,
    coeff_info,
    discriminant,
    factor,
    normalize,
    poly_to_str,
    resultant,
)
from .properties import (
    AnDel,
    AnSub,
    Connected,
    DerivationTrace,
    Holds,
    IrOrd,
    NonNull,
    OrdInv,
    Property,
    Repr,
    RootOrdering,
    SampleProp,
    SgnInv,
    is_whole,
    property_tier,
    selection_key,
)
from .realalg import NULLIFIED, Sample, sign_at
from .stats import RunStats


class ConstructionFailed(Exception):
    """Raised when no rule can justify a pending property; the public
    entry points convert this into a FAIL result."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def _norm(p: MPoly) -> MPoly:
    return p if p.is_constant() else normalize(p)


def trivial_rule(q: Property) -> Optional[str]:
    """Rule name if q holds on any region without antecedents."""
    if isinstance(q, (OrdInv, SgnInv)) and q.p.is_constant():
        return "const-inv"
    if isinstance(q, SampleProp) and len(q.s) == 0:
        return "triv-base"
    if isinstance(q, (AnSub, Connected)) and q.i == 0:
        return "triv-base"
    return None


class PropertySet:
    """Pending properties plus the trace justifying everything that has
    already been discharged.  Trivially true properties and interval
    assumptions never become pending: they are logged immediately."""

    def __init__(self, trace: DerivationTrace):
        self.props: set[Property] = set()
        self.derived: set[Property] = set()
        self.trace = trace

    def add(self, q: Property) -> None:
        if q in self.derived or q in self.props:
            return
        rule = trivial_rule(q)
        if rule is not None:
            self.trace.derive_from_true(q, rule)
            self.derived.add(q)
            return
        if isinstance(q, Holds):
            self.trace.axiom(q)
            self.derived.add(q)
            return
        self.props.add(q)

    def justified(self, q: Property) -> bool:
        return q in self.derived or trivial_rule(q) is not None

    def discharge(self, q: Property) -> None:
        self.props.discard(q)
        self.derived.add(q)

    def __contains__(self, q: Property) -> bool:
        return q in self.props

    def __iter__(self):
        return iter(self.props)

    def at_level(self, i: int) -> list[Property]:
        return [q for q in self.props if q.level == i]

    def greatest(
        self,
        i: int,
        max_tier: Optional[int] = None,
        exclude: Optional[Property] = None,
    ) -> Optional[Property]:
        cands = [
            q
            for q in self.props
            if q.level == i
            and (max_tier is None or property_tier(q) <= max_tier)
            and q != exclude
        ]
        if not cands:
            return None
        return min(cands, key=selection_key)


@dataclass(frozen=True)
class RuleCtx:
    """Everything a rule instance may depend on at construction level
    `level`: the sample, the configuration, and (after the
    representation has been chosen) the interval, ordering, and the
    polynomials earmarked for the equational projection."""

    s: Sample
    level: int
    cfg: HeuristicConfig
    stats: RunStats
    interval: Optional[SymbolicInterval] = None
    ordering: Optional[RootOrdering] = None
    eq_set: frozenset = frozenset()


@dataclass(frozen=True)
class Choice:
    rule: str
    antecedents: tuple[Property, ...]
    rank: int = 0  # smaller preferred; ranks estimated computation cost
    introduced: tuple[tuple[str, MPoly], ...] = ()  # (kind, poly) for stats

    def order_key(self):
        degree = max(
            (p.total_degree() for _, p in self.introduced), default=0
        )
        return (self.rank, degree, self.rule, tuple(a.text() for a in self.antecedents))


def _dedup(props: Iterable[Property]) -> tuple[Property, ...]:
    seen: list[Property] = []
    for q in props:
        if q not in seen:
            seen.append(q)
    return tuple(seen)


# ---------------------------------------------------------------------------
# rule instances per property kind


def _factors_choice(q, wrap) -> list[Choice]:
    parts = [f for f, _ in factor(q.p, "squarefree") if not f.is_constant()]
    return [Choice("factors", _dedup(wrap(f) for f in parts))]


def _eqproj_choice(p: MPoly, ell: int, ctx: RuleCtx, rank: int) -> Optional[Choice]:
    interval = ctx.interval
    bound = interval.bound
    prefix = ctx.s.prefix(ell - 1)
    ants = [
        AnSub(ell - 1),
        Connected(ell - 1),
        Repr(interval, prefix),
        AnDel(bound.poly),
    ]
    introduced: tuple = ()
    if p != bound.poly:
        res = resultant(bound.poly, p, ell)
        if res.is_zero():
            # a shared factor with the section polynomial: the
            # projection gives no information, the rule does not apply
            return None
        rn = _norm(res)
        ants.append(OrdInv(rn))
        introduced = (("res", rn),)
    return Choice("eqproj", _dedup(ants), rank, introduced)


def _sgninv_choices(q: SgnInv, ctx: RuleCtx) -> list[Choice]:
    p = q.p
    if not is_whole(p):
        return _factors_choice(q, SgnInv)
    ell = q.level
    prefix = ctx.s.prefix(ell - 1)
    roots = cached_roots(p, prefix)
    if roots is NULLIFIED:
        if ctx.interval is not None and ctx.interval.is_section():
            ch = _eqproj_choice(p, ell, ctx, 1)
            return [ch] if ch is not None else []
        return []
    if not roots:
        return [Choice("nozero", (SampleProp(prefix), AnDel(p)))]
    if ctx.interval is None:
        return []
    interval = ctx.interval
    choices: list[Choice] = []
    in_eq = p in ctx.eq_set
    if interval.is_section():
        ch = _eqproj_choice(
            p, ell, ctx, 0 if p == interval.bound.poly else (1 if in_eq else 2)
        )
        if ch is not None:
            choices.append(ch)
    ordering = ctx.ordering
    if ordering is not None:
        if interval.is_section():
            lo = up = interval.bound
        else:
            lo, up = interval.lower, interval.upper
        ok = True
        for k in range(len(roots)):
            xi = IndexedRoot(p, k + 1)
            below = lo is not None and ordering.le(xi, lo)
            above = up is not None and ordering.le(up, xi)
            if not (below or above):
                ok = False
                break
        if ok:
            ants = (
                SampleProp(ctx.s.prefix(ell)),
                Repr(interval, prefix),
                IrOrd(ordering, prefix),
                AnDel(p),
                AnSub(ell - 1),
                Connected(ell - 1),
            )
            choices.append(Choice("sgninv-ord", ants, 2 if in_eq else 1))
    return choices


def _ordinv_choices(q: OrdInv, ctx: RuleCtx) -> list[Choice]:
    p = q.p
    if not is_whole(p):
        return _factors_choice(q, OrdInv)
    ell = q.level
    sp = ctx.s.prefix(ell)
    if sign_at(p, sp) != 0:
        return [Choice("ordinv-nonzero", (SampleProp(sp), SgnInv(p)))]
    return [
        Choice(
            "ordinv-zero",
            (SampleProp(sp), AnSub(ell - 1), Connected(ell), SgnInv(p), AnDel(p)),
        )
    ]


def _nonnull_choices(q: NonNull, ctx: RuleCtx) -> list[Choice]:
    p = q.p
    ell = q.level
    sp = ctx.s.prefix(ell)
    deg, _, coeffs = coeff_info(p, p.level)
    choices: list[Choice] = []
    if any(c.is_constant() and not c.is_zero() for c in coeffs):
        choices.append(Choice("nonnull-const-coeff", ()))
    else:
        for c in coeffs:
            if c.is_zero() or c.is_constant():
                continue
            if sign_at(c, sp) != 0:
                cn = _norm(c)
                choices.append(
                    Choice(
                        "nonnull-coeff",
                        (SampleProp(sp), SgnInv(cn)),
                        1,
                        (("coeff", cn),),
                    )
                )
        if deg >= 2:
            disc = discriminant(p, p.level)
            if not disc.is_zero() and sign_at(disc, sp) != 0:
                dn = _norm(disc)
                choices.append(
                    Choice(
                        "nonnull-disc",
                        (SampleProp(sp), SgnInv(dn)),
                        2,
                        (("disc", dn),),
                    )
                )
    return choices


def _andel_choice(q: AnDel, ctx: RuleCtx) -> list[Choice]:
    p = q.p
    ell = q.level
    deg, lc, _ = coeff_info(p, p.level)
    if deg == 1:
        disc = MPoly.constant(1)
    else:
        disc = discriminant(p, p.level)
    if disc.is_zero():
        # delineability needs a square-free polynomial
        return []
    dn = _norm(disc)
    lcn = _norm(lc)
    introduced = []
    if not dn.is_constant():
        introduced.append(("disc", dn))
    if not lcn.is_constant():
        introduced.append(("coeff", lcn))
    ants = (AnSub(ell), Connected(ell), NonNull(p), OrdInv(dn), SgnInv(lcn))
    return [Choice("del", ants, 0, tuple(introduced))]


def _irord_choice(q: IrOrd, ctx: RuleCtx) -> list[Choice]:
    ell = len(q.s)
    ants: list[Property] = [SampleProp(q.s), AnSub(ell), Connected(ell)]
    for poly in sorted({xi.poly for xi in q.ord.dom()}, key=MPoly.sort_key):
        ants.append(AnDel(poly))
    introduced: list[tuple[str, MPoly]] = []
    seen: set[frozenset] = set()
    pairs = sorted(
        q.ord.pairs,
        key=lambda ab: (ab[0].poly.sort_key(), ab[0].index, ab[1].poly.sort_key()),
    )
    for a, b in pairs:
        if a.poly == b.poly:
            # one delineable polynomial cannot reorder its own roots
            continue
        key = frozenset((a.poly, b.poly))
        if key in seen:
            continue
        seen.add(key)
        res = resultant(a.poly, b.poly, a.poly.level)
        if res.is_zero():
            # shared factor: relate the distinct irreducible factors
            # pairwise instead; the shared factor needs no projection
            # as it is delineable itself
            v = a.poly.level
            # factors without roots in x_v cannot reorder anything
            fa = [f for f, _ in factor(a.poly, "finest") if f.degree(v) > 0]
            fb = [f for f, _ in factor(b.poly, "finest") if f.degree(v) > 0]
            for f in fa:
                for g in fb:
                    if f == g:
                        continue
                    fkey = frozenset((f, g))
                    if fkey in seen:
                        continue
                    seen.add(fkey)
                    rfg = _norm(resultant(f, g, v))
                    ants.append(OrdInv(rfg))
                    introduced.append(("res", rfg))
        else:
            rn = _norm(res)
            ants.append(OrdInv(rn))
            introduced.append(("res", rn))
    return [Choice("irord", _dedup(ants), 0, tuple(introduced))]


def _connected_choices(q: Connected, ctx: RuleCtx) -> list[Choice]:
    i = q.i
    if i == 1:
        return [Choice("connected-base", ())]
    if ctx.interval is None or ctx.level != i:
        return []
    interval = ctx.interval
    prefix = ctx.s.prefix(i - 1)
    base = (Connected(i - 1), Repr(interval, prefix))
    if interval.is_section():
        return [Choice("connected-section", base)]
    if interval.lower is None or interval.upper is None:
        return [Choice("connected-inf", base)]
    if ctx.ordering is None or not ctx.ordering.le(interval.lower, interval.upper):
        return []
    return [Choice("connected-sector", base + (IrOrd(ctx.ordering, prefix),))]


def rule_choices(q: Property, ctx: RuleCtx) -> list[Choice]:
    """All rule instances that can conclude q under ctx."""
    if isinstance(q, SgnInv):
        return _sgninv_choices(q, ctx)
    if isinstance(q, OrdInv):
        return _ordinv_choices(q, ctx)
    if isinstance(q, NonNull):
        return _nonnull_choices(q, ctx)
    if isinstance(q, AnDel):
        return _andel_choice(q, ctx)
    if isinstance(q, IrOrd):
        return _irord_choice(q, ctx)
    if isinstance(q, Connected):
        return _connected_choices(q, ctx)
    if isinstance(q, AnSub):
        if ctx.interval is None or ctx.level != q.i:
            return []
        prefix = ctx.s.prefix(q.i - 1)
        return [Choice("submanifold", (Repr(ctx.interval, prefix), AnSub(q.i - 1)))]
    if isinstance(q, SampleProp):
        ell = len(q.s)
        if ctx.interval is None or ctx.level != ell:
            return []
        return [
            Choice(
                "sample-prefix",
                (Repr(ctx.interval, q.s.prefix(ell - 1)), SampleProp(q.s.prefix(ell - 1))),
            )
        ]
    if isinstance(q, Repr):
        ants = [SampleProp(q.s), Holds(q.I)]
        for b in q.I.bound_roots():
            ants.append(AnDel(b.poly))
        return [Choice("repr", _dedup(ants))]
    return []


def apply_pre(Q: PropertySet, q: Property, ctx: RuleCtx) -> None:
    """Replace the pending property q by the antecedents of one
    applicable rule instance.  Prefers instances whose antecedents are
    all justified already; otherwise ranks by estimated cost, then by
    the degree of the polynomial the instance would introduce."""
    choices = rule_choices(q, ctx)
    if not choices:
        raise ConstructionFailed(f"no applicable rule for {q.text()}")
    covered = [
        c
        for c in choices
        if all(a in Q or Q.justified(a) for a in c.antecedents)
    ]
    pool = covered if covered else choices
    chosen = min(pool, key=Choice.order_key)
    for kind, poly in chosen.introduced:
        if kind == "res":
            ctx.stats.add_resultant(poly, ctx.level)
        elif kind == "disc":
            ctx.stats.add_discriminant(poly, ctx.level)
        else:
            ctx.stats.add_coefficient(poly, ctx.level)
    for a in chosen.antecedents:
        Q.add(a)
    Q.trace.derive(q, chosen.antecedents, chosen.rule)
    Q.discharge(q)
