"""Property terms, their well-founded ordering, and derivation traces.

Properties are statements about a region of R^i ("p is sign-invariant
here", "this is an analytic submanifold", ...).  Each carries a derived
level; the construction works through properties from the greatest to
the smallest under a strict ordering in which levels dominate and,
within a level, a fixed twelve-tier ranking applies.  Every rule
application replaces a property by strictly smaller ones, which is what
makes the whole construction terminate and lets a trace be validated
without re-running the search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .polynomial import MPoly, factor, normalize, poly_to_str
from .realalg import Sample, realalg_to_text
from .cells import IndexedRoot, SectionInterval, SectorInterval, SymbolicInterval

_sqfree_cache: dict[MPoly, bool] = {}
_whole_cache: dict[MPoly, bool] = {}


def is_squarefree(p: MPoly) -> bool:
    """Square-free check with memoization; the property tiers and the
    decomposition rule both key off this."""
    if p not in _sqfree_cache:
        _sqfree_cache[p] = all(m == 1 for _, m in factor(p, "squarefree"))
    return _sqfree_cache[p]


def is_whole(p: MPoly) -> bool:
    """True when the decomposition rule has nothing left to do on p:
    constants, and normalized square-free polynomials."""
    if p.is_constant():
        return True
    if p not in _whole_cache:
        _whole_cache[p] = is_squarefree(p) and p == normalize(p)
    return _whole_cache[p]


# ---------------------------------------------------------------------------
# property variants


class Property:
    __slots__ = ()

    @property
    def level(self) -> int:
        raise NotImplementedError

    def text(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.text()


def _sample_text(s: Sample) -> str:
    return "(" + ",".join(realalg_to_text(c) for c in s) + ")"


def _interval_text(iv: SymbolicInterval) -> str:
    def root(b: Optional[IndexedRoot], sign: str) -> str:
        if b is None:
            return sign + "inf"
        return f'(root "{poly_to_str(b.poly)}" {b.index})'

    if iv.is_section():
        return f"section[{root(iv.bound, '')}]"
    return f"sector[{root(iv.lower, '-')},{root(iv.upper, '+')}]"


@dataclass(frozen=True)
class SampleProp(Property):
    s: Sample

    @property
    def level(self) -> int:
        return len(self.s)

    def text(self) -> str:
        return f"sample{_sample_text(self.s)}"


@dataclass(frozen=True)
class OrdInv(Property):
    p: MPoly

    @property
    def level(self) -> int:
        return self.p.level

    def text(self) -> str:
        return f"ordinv({poly_to_str(self.p)})"


@dataclass(frozen=True)
class SgnInv(Property):
    p: MPoly

    @property
    def level(self) -> int:
        return self.p.level

    def text(self) -> str:
        return f"sgninv({poly_to_str(self.p)})"


@dataclass(frozen=True)
class NonNull(Property):
    p: MPoly

    @property
    def level(self) -> int:
        return self.p.level - 1

    def text(self) -> str:
        return f"nonnull({poly_to_str(self.p)})"


@dataclass(frozen=True)
class AnDel(Property):
    """Analytic delineability of p over the region one level down."""

    p: MPoly

    @property
    def level(self) -> int:
        return self.p.level - 1

    def text(self) -> str:
        return f"andel({poly_to_str(self.p)})"


@dataclass(frozen=True)
class AnSub(Property):
    i: int

    @property
    def level(self) -> int:
        return self.i

    def text(self) -> str:
        return f"ansub({self.i})"


@dataclass(frozen=True)
class Connected(Property):
    i: int

    @property
    def level(self) -> int:
        return self.i

    def text(self) -> str:
        return f"connected({self.i})"


class RootOrdering:
    """A set of (xi, xi') pairs read as xi <= xi', acyclic over distinct
    roots; the reflexive-transitive closure is the partial order the
    rules consume."""

    __slots__ = ("pairs", "_closure")

    def __init__(self, pairs: Iterable[tuple[IndexedRoot, IndexedRoot]]):
        self.pairs = frozenset((a, b) for a, b in pairs if a != b)
        self._closure: frozenset | None = None
        # cycle check over distinct roots
        adj: dict[IndexedRoot, set[IndexedRoot]] = {}
        for a, b in self.pairs:
            adj.setdefault(a, set()).add(b)
        state: dict[IndexedRoot, int] = {}

        def visit(v: IndexedRoot, trail: set) -> None:
            if v in trail:
                raise ValueError("cyclic indexed root ordering")
            if state.get(v):
                return
            trail.add(v)
            for w in adj.get(v, ()):
                visit(w, trail)
            trail.discard(v)
            state[v] = 1

        for v in adj:
            visit(v, set())

    def dom(self) -> frozenset:
        out = set()
        for a, b in self.pairs:
            out.add(a)
            out.add(b)
        return frozenset(out)

    def closure(self) -> frozenset:
        """Transitive (not reflexive) closure of the pair set."""
        if self._closure is None:
            reach: dict[IndexedRoot, set[IndexedRoot]] = {}
            for a, b in self.pairs:
                reach.setdefault(a, set()).add(b)
            changed = True
            while changed:
                changed = False
                for a in list(reach):
                    extra = set()
                    for b in reach[a]:
                        extra |= reach.get(b, set())
                    if not extra <= reach[a]:
                        reach[a] |= extra
                        changed = True
            self._closure = frozenset(
                (a, b) for a, bs in reach.items() for b in bs
            )
        return self._closure

    def le(self, a: IndexedRoot, b: IndexedRoot) -> bool:
        return a == b or (a, b) in self.closure()

    def matches(self, s: Sample) -> bool:
        """Every pair's roots are defined at s with values in pair order."""
        from .cells import eval_indexed_root
        from .realalg import UNDEF

        for a, b in self.pairs:
            va = eval_indexed_root(a, s)
            vb = eval_indexed_root(b, s)
            if va is UNDEF or vb is UNDEF:
                return False
            if va.compare(vb) > 0:
                return False
        return True

    def text(self) -> str:
        items = sorted(
            f'(root "{poly_to_str(a.poly)}" {a.index})<=(root "{poly_to_str(b.poly)}" {b.index})'
            for a, b in self.pairs
        )
        return "{" + ",".join(items) + "}"

    def __eq__(self, other):
        return isinstance(other, RootOrdering) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        return f"RootOrdering{self.text()}"


@dataclass(frozen=True)
class Repr(Property):
    """The symbolic interval refers to the same roots across the region
    below it (representation maintenance)."""

    I: SymbolicInterval
    s: Sample

    @property
    def level(self) -> int:
        return self.I.level

    def text(self) -> str:
        return f"repr({_interval_text(self.I)},{_sample_text(self.s)})"


@dataclass(frozen=True)
class IrOrd(Property):
    ord: RootOrdering
    s: Sample

    @property
    def level(self) -> int:
        return len(self.s)

    def text(self) -> str:
        return f"irord({self.ord.text()},{_sample_text(self.s)})"


@dataclass(frozen=True)
class Holds(Property):
    """The axiom: the region actually is the lift of the interval."""

    I: SymbolicInterval

    @property
    def level(self) -> int:
        return self.I.level

    def text(self) -> str:
        return f"holds({_interval_text(self.I)})"


# ---------------------------------------------------------------------------
# the ordering


def property_tier(q: Property) -> int:
    """Within-level rank, 1 = greatest.  Invariance properties split by
    whether the decomposition rule still applies to them."""
    if isinstance(q, IrOrd):
        return 1
    if isinstance(q, AnDel):
        return 2
    if isinstance(q, NonNull):
        return 3
    if isinstance(q, OrdInv):
        return 5 if is_whole(q.p) else 4
    if isinstance(q, SgnInv):
        return 7 if is_whole(q.p) else 6
    if isinstance(q, Connected):
        return 8
    if isinstance(q, AnSub):
        return 9
    if isinstance(q, SampleProp):
        return 10
    if isinstance(q, Repr):
        return 11
    if isinstance(q, Holds):
        return 12
    raise TypeError(f"not a property: {q!r}")


def property_compare(q1: Property, q2: Property) -> str:
    """LT/EQ/GT/INCOMPARABLE under the level-dominant tiered ordering."""
    if q1 == q2:
        return "EQ"
    if q1.level != q2.level:
        return "GT" if q1.level > q2.level else "LT"
    t1, t2 = property_tier(q1), property_tier(q2)
    if t1 == t2:
        return "INCOMPARABLE"
    return "GT" if t1 < t2 else "LT"


def strictly_smaller(q: Property, than: Property) -> bool:
    return property_compare(q, than) == "LT"


def selection_key(q: Property):
    """Deterministic pick of the greatest property: level-dominant,
    tier-ranked, INCOMPARABLE ties broken by textual order."""
    return (-q.level, property_tier(q), q.text())


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class TraceEntry:
    conclusion: Property
    antecedents: tuple[Property, ...]
    rule: str


class DerivationTrace:
    def __init__(self):
        self.entries: list[TraceEntry] = []
        self.axioms: list[Property] = []
        self._from_true_seen: set[Property] = set()

    def derive(self, conclusion: Property, antecedents: Iterable[Property], rule: str):
        self.entries.append(TraceEntry(conclusion, tuple(antecedents), rule))

    def derive_from_true(self, conclusion: Property, rule: str):
        if conclusion not in self._from_true_seen:
            self._from_true_seen.add(conclusion)
            self.entries.append(TraceEntry(conclusion, (), rule))

    def axiom(self, prop: Property):
        if prop not in self.axioms:
            self.axioms.append(prop)

    def conclusions(self) -> set[Property]:
        return {e.conclusion for e in self.entries}

    def to_text(self) -> str:
        lines = [f"AXIOM {a.text()}" for a in self.axioms]
        for e in self.entries:
            ants = "; ".join(a.text() for a in e.antecedents) or "true"
            lines.append(f"DERIVE {e.conclusion.text()} FROM {ants} VIA {e.rule}")
        return "\n".join(lines) + ("\n" if lines else "")

    def __len__(self):
        return len(self.entries)


KNOWN_RULES = {
    "const-inv",
    "triv-base",
    "factors",
    "del",
    "nonnull-const-coeff",
    "nonnull-coeff",
    "nonnull-disc",
    "ordinv-nonzero",
    "ordinv-zero",
    "nozero",
    "eqproj",
    "sgninv-ord",
    "irord",
    "connected-base",
    "connected-sector",
    "connected-inf",
    "connected-section",
    "sample-prefix",
    "submanifold",
    "repr",
    "level-one-base",
}

# which antecedent kinds a rule may cite; a structural side-condition
# check used by the trace validator
_RULE_SHAPES: dict[str, tuple[type, tuple[type, ...]]] = {
    "const-inv": ((OrdInv, SgnInv), ()),
    "triv-base": ((SampleProp, AnSub, Connected), ()),
    "factors": ((OrdInv, SgnInv), (OrdInv, SgnInv)),
    "del": (AnDel, (AnSub, Connected, NonNull, OrdInv, SgnInv)),
    "nonnull-const-coeff": (NonNull, ()),
    "nonnull-coeff": (NonNull, (SampleProp, SgnInv)),
    "nonnull-disc": (NonNull, (SampleProp, SgnInv)),
    "ordinv-nonzero": (OrdInv, (SampleProp, SgnInv)),
    "ordinv-zero": (OrdInv, (SampleProp, AnSub, Connected, SgnInv, AnDel)),
    "nozero": (SgnInv, (SampleProp, AnDel)),
    "eqproj": (SgnInv, (AnSub, Connected, Repr, AnDel, OrdInv)),
    "sgninv-ord": (SgnInv, (SampleProp, Repr, IrOrd, AnDel, AnSub, Connected)),
    "irord": (IrOrd, (SampleProp, AnSub, Connected, AnDel, OrdInv)),
    "connected-base": (Connected, ()),
    "connected-sector": (Connected, (Connected, Repr, IrOrd)),
    "connected-inf": (Connected, (Connected, Repr)),
    "connected-section": (Connected, (Connected, Repr)),
    "sample-prefix": (SampleProp, (Repr, SampleProp)),
    "submanifold": (AnSub, (Repr, AnSub)),
    "repr": (Repr, (SampleProp, Holds, AnDel)),
    "level-one-base": ((SgnInv, AnSub, SampleProp), (Repr,)),
}


def validate_trace(trace: DerivationTrace, axioms: set[Property]) -> bool:
    """Check that every antecedent is an axiom or a derived conclusion,
    that each cited rule exists and its antecedent kinds fit, and that
    every antecedent is strictly smaller than its conclusion (which is
    what rules out circular justification)."""
    derived = trace.conclusions()
    ok_axioms = set(axioms) | set(trace.axioms)
    for e in trace.entries:
        if e.rule not in KNOWN_RULES:
            return False
        shape = _RULE_SHAPES.get(e.rule)
        if shape is not None:
            ckinds, akinds = shape
            if not isinstance(e.conclusion, ckinds):
                return False
            if akinds == () and e.antecedents:
                return False
            if any(not isinstance(a, akinds) for a in e.antecedents if akinds):
                return False
        for a in e.antecedents:
            if a in ok_axioms:
                continue
            if a not in derived:
                return False
            if not strictly_smaller(a, e.conclusion):
                return False
    return True
