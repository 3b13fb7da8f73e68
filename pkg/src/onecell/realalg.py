"""Real algebraic numbers and exact sign evaluation at sample points.

A `RealAlg` is either an exact rational or a root of an irreducible
integer polynomial pinned down by an open isolating interval with
rational endpoints.  Refining the interval never changes the value, and
two values compare equal exactly when they are the same real number.

Root isolation uses bisection driven by Descartes' rule of signs on the
square-free part; irreducible factors of degree >= 2 have no rational
roots, which keeps the bisection free of midpoint corner cases.  For
sample points with irrational coordinates, root finding eliminates each
algebraic coordinate through resultants with its defining polynomial,
producing rational candidate polynomials whose roots are then filtered
by an exact sign test.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .polynomial import (
    MPoly,
    Var,
    coeff_info,
    factor,
    normalize,
    parse_poly,
    poly_to_str,
    resultant,
    to_sympy,
    _sym,
)


class _Nullified:
    """Sentinel: a polynomial specialized to the zero polynomial."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NULLIFIED"


NULLIFIED = _Nullified()


class _Undef:
    """Sentinel: an indexed root expression without a value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDEF"

    def __bool__(self):
        return False


UNDEF = _Undef()


# ---------------------------------------------------------------------------
# dense univariate helpers (coefficient lists over Fraction, index = degree)


def _utrim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _ueval(c: Sequence[Fraction], x: Fraction) -> Fraction:
    total = Fraction(0)
    for coeff in reversed(c):
        total = total * x + coeff
    return total


def _usign(c: Sequence[Fraction], x: Fraction) -> int:
    v = _ueval(c, x)
    return 0 if v == 0 else (1 if v > 0 else -1)


def _umul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _cauchy_bound(c: Sequence[Fraction]) -> Fraction:
    lead = abs(c[-1])
    m = max((abs(x) for x in c[:-1]), default=Fraction(0))
    return Fraction(1) + m / lead


def _descartes_in(c: Sequence[Fraction], a: Fraction, b: Fraction) -> int:
    """Sign-variation bound on the number of roots in the open interval
    (a, b): 0 means none, 1 means exactly one."""
    n = len(c) - 1
    # coefficients of (1+x)^n * p((a + b*x) / (1+x))
    acc = [Fraction(0)] * (n + 1)
    lin1 = [a, b]          # a + b*x
    lin2 = [Fraction(1), Fraction(1)]  # 1 + x
    pow1: list[list[Fraction]] = [[Fraction(1)]]
    pow2: list[list[Fraction]] = [[Fraction(1)]]
    for _ in range(n):
        pow1.append(_umul(pow1[-1], lin1))
        pow2.append(_umul(pow2[-1], lin2))
    for k, ck in enumerate(c):
        if ck:
            term = _umul(pow1[k], pow2[n - k])
            for i, t in enumerate(term):
                acc[i] += ck * t
    signs = [1 if x > 0 else -1 for x in acc if x != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _upoly_coeffs(p: MPoly, v: Var) -> list[Fraction]:
    d, _, coeffs = coeff_info(p, v)
    out = []
    for c in coeffs:
        if not c.is_constant():
            raise ValueError(f"{p} is not univariate in x{v}")
        out.append(c.constant_value())
    return _utrim(out)


# ---------------------------------------------------------------------------
# RealAlg


_CANONICAL: dict[tuple[Fraction, ...], list[tuple[Fraction, Fraction]]] = {}


class RealAlg:
    """A real algebraic number: a rational, or an isolated root of an
    irreducible integer polynomial of degree >= 2."""

    __slots__ = ("_rat", "_def", "_lo", "_hi", "_slo", "_index")

    def __init__(self):
        raise TypeError("use RealAlg.rational or RealAlg.algebraic")

    @classmethod
    def rational(cls, r) -> "RealAlg":
        self = object.__new__(cls)
        self._rat = Fraction(r)
        self._def = None
        self._lo = self._hi = self._rat
        self._slo = 0
        self._index = None
        return self

    @classmethod
    def algebraic(
        cls, defining: Sequence[Fraction], lo: Fraction, hi: Fraction
    ) -> "RealAlg":
        """Root of `defining` (irreducible, degree >= 2, integer-primitive,
        positive leading coefficient) isolated by the open interval (lo, hi);
        neither endpoint may be a root."""
        c = tuple(defining)
        self = object.__new__(cls)
        self._rat = None
        self._def = c
        self._lo, self._hi = Fraction(lo), Fraction(hi)
        self._slo = _usign(c, self._lo)
        if self._slo == 0 or _usign(c, self._hi) == 0:
            raise ValueError("isolating interval endpoints must not be roots")
        if self._slo == _usign(c, self._hi):
            raise ValueError("no sign change over the isolating interval")
        self._index = None
        return self

    # -- basic views --------------------------------------------------

    def is_rational(self) -> bool:
        return self._rat is not None

    def rational_value(self) -> Fraction:
        if self._rat is None:
            raise ValueError("not rational")
        return self._rat

    def enclosure(self) -> tuple[Fraction, Fraction]:
        return self._lo, self._hi

    def refine(self) -> None:
        if self._rat is not None:
            return
        m = (self._lo + self._hi) / 2
        if _usign(self._def, m) == self._slo:
            self._lo = m
        else:
            self._hi = m

    def refine_below(self, width: Fraction) -> None:
        while self._hi - self._lo > width:
            self.refine()

    def key(self):
        """Canonical identity: hashable, stable under refinement."""
        if self._rat is not None:
            return ("rat", self._rat)
        return ("alg", self._def, self.canonical_index())

    def canonical_index(self) -> int:
        """1-based position among the real roots of the defining polynomial."""
        if self._index is not None:
            return self._index
        spots = _canonical_intervals(self._def)
        while True:
            hits = [
                k
                for k, (a, b) in enumerate(spots)
                if self._lo < b and a < self._hi
            ]
            if len(hits) == 1:
                self._index = hits[0] + 1
                return self._index
            self.refine()

    def to_sympy(self):
        if self._rat is not None:
            return sympy.Rational(self._rat.numerator, self._rat.denominator)
        x = sympy.Symbol("x")
        expr = sum(
            sympy.Rational(c.numerator, c.denominator) * x**k
            for k, c in enumerate(self._def)
        )
        return sympy.CRootOf(expr, self.canonical_index() - 1)

    def approx(self) -> float:
        if self._rat is not None:
            return float(self._rat)
        self.refine_below(Fraction(1, 1 << 30))
        return float((self._lo + self._hi) / 2)

    # -- comparison ---------------------------------------------------

    def compare(self, other: "RealAlg") -> int:
        """-1, 0, or 1 as self <, =, > other; exact."""
        if self._rat is not None and other._rat is not None:
            a, b = self._rat, other._rat
            return 0 if a == b else (-1 if a < b else 1)
        if self._def is not None and other._def is not None:
            if self._def == other._def:
                i, j = self.canonical_index(), other.canonical_index()
                return 0 if i == j else (-1 if i < j else 1)
        elif self._rat is not None or other._rat is not None:
            pass  # one rational, one irrational: never equal
        # distinct values: refine until the enclosures separate
        while True:
            if self._hi <= other._lo:
                return -1
            if other._hi <= self._lo:
                return 1
            self.refine()
            other.refine()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RealAlg):
            return NotImplemented
        return self.compare(other) == 0

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        if self._rat is not None:
            return f"RealAlg({self._rat})"
        return f"RealAlg({realalg_to_text(self)}~{self.approx():.4g})"


def _canonical_intervals(defc: tuple[Fraction, ...]) -> list[tuple[Fraction, Fraction]]:
    if defc not in _CANONICAL:
        # the defining polynomial is irreducible; bisect it directly so
        # index lookups cannot re-enter the factoring isolation path
        _CANONICAL[defc] = [r.enclosure() for r in _isolate_irreducible(list(defc))]
    return _CANONICAL[defc]


def compare(a: RealAlg, b: RealAlg) -> str:
    c = a.compare(b)
    return "EQ" if c == 0 else ("LT" if c < 0 else "GT")


# ---------------------------------------------------------------------------
# isolation


def _isolate_irreducible(c: list[Fraction]) -> list[RealAlg]:
    """Isolate the real roots of an irreducible polynomial of degree >= 2.

    Irreducibility over Q rules out rational roots, so no bisection
    midpoint can be a root.
    """
    c = tuple(c)
    bound = _cauchy_bound(c)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        v = _descartes_in(c, a, b)
        if v == 0:
            continue
        if v == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        stack.append((a, m))
        stack.append((m, b))
    out.sort()
    return [RealAlg.algebraic(c, a, b) for a, b in out]


def _isolate_squarefree(c: list[Fraction]) -> list[RealAlg]:
    """Real roots of an arbitrary nonzero univariate coefficient list,
    via irreducible factorization of the square-free part."""
    c = _utrim(list(c))
    if not c:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if len(c) == 1:
        return []
    x = _sym(1)
    expr = sum(
        sympy.Rational(k.numerator, k.denominator) * x**i for i, k in enumerate(c)
    )
    roots: list[RealAlg] = []
    for f, _m in sympy.factor_list(expr)[1]:
        fp = sympy.Poly(f, x)
        fc = [Fraction(int(q.p), int(q.q)) for q in
              [sympy.Rational(v) for v in fp.all_coeffs()[::-1]]]
        _utrim(fc)
        if len(fc) == 2:
            roots.append(RealAlg.rational(-fc[0] / fc[1]))
        elif len(fc) > 2:
            if fc[-1] < 0:
                fc = [-v for v in fc]
            roots.extend(_isolate_irreducible(fc))
    roots.sort(key=lambda r: RootSortProxy(r))
    return roots


class RootSortProxy:
    """Total-order adapter so exact roots can go through list.sort."""

    __slots__ = ("root",)

    def __init__(self, root: RealAlg):
        self.root = root

    def __lt__(self, other: "RootSortProxy") -> bool:
        return self.root.compare(other.root) < 0


def isolate_real_roots(p: MPoly) -> list[RealAlg]:
    """Sorted distinct real roots of a univariate polynomial."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    vs = p.variables()
    if not vs:
        return []
    if len(vs) > 1:
        raise ValueError(f"{p} is not univariate")
    (v,) = vs
    return _isolate_squarefree(_upoly_coeffs(p, v))


# ---------------------------------------------------------------------------
# samples


class Sample(tuple):
    """A point in R^i with real algebraic coordinates (coordinate j is
    bound to x_j).  Prefixes are themselves samples."""

    def __new__(cls, coords: Iterable):
        vals = []
        for c in coords:
            if isinstance(c, RealAlg):
                vals.append(c)
            else:
                vals.append(RealAlg.rational(c))
        return super().__new__(cls, vals)

    def prefix(self, i: int) -> "Sample":
        return Sample(self[:i])

    def extend(self, coord) -> "Sample":
        return Sample(list(self) + [coord])

    def all_rational(self) -> bool:
        return all(c.is_rational() for c in self)

    def rationals(self) -> list[Fraction]:
        return [c.rational_value() for c in self]

    def __repr__(self) -> str:
        return "Sample(" + ", ".join(realalg_to_text(c) for c in self) + ")"


# ---------------------------------------------------------------------------
# sign evaluation


def _interval_pow(lo: Fraction, hi: Fraction, k: int) -> tuple[Fraction, Fraction]:
    if k == 0:
        return Fraction(1), Fraction(1)
    if k % 2 == 1 or lo >= 0:
        return lo**k, hi**k
    if hi <= 0:
        return hi**k, lo**k
    return Fraction(0), max(lo**k, hi**k)


def _interval_eval(p: MPoly, boxes: list[tuple[Fraction, Fraction]]):
    lo_t, hi_t = Fraction(0), Fraction(0)
    for e, c in p.terms.items():
        tlo, thi = Fraction(c), Fraction(c)
        for i, k in enumerate(e):
            if k:
                plo, phi = _interval_pow(boxes[i][0], boxes[i][1], k)
                cands = (tlo * plo, tlo * phi, thi * plo, thi * phi)
                tlo, thi = min(cands), max(cands)
        lo_t += tlo
        hi_t += thi
    return lo_t, hi_t


def sign_at(p: MPoly, s: Sample) -> int:
    """Exact sign of p at s: interval refinement with an algebraic
    zero test as the tie-breaker."""
    if p.is_constant():
        v = p.constant_value()
        return 0 if v == 0 else (1 if v > 0 else -1)
    if p.level > len(s):
        raise ValueError("sample has too few coordinates")
    if all(s[v - 1].is_rational() for v in p.variables()):
        v = p.eval_rational([c._lo if c.is_rational() else Fraction(0) for c in s])
        return 0 if v == 0 else (1 if v > 0 else -1)
    tested_zero = False
    rounds = 0
    while True:
        boxes = [c.enclosure() for c in s]
        lo, hi = _interval_eval(p, boxes)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if not tested_zero and rounds >= 8:
            if _is_zero_algebraic(p, s):
                return 0
            tested_zero = True
        for c in s:
            c.refine()
        rounds += 1


def _is_zero_algebraic(p: MPoly, s: Sample) -> bool:
    expr = to_sympy(p)
    subs = {_sym(i + 1): c.to_sympy() for i, c in enumerate(s)}
    expr = expr.subs(subs)
    x = sympy.Symbol("zz")
    return sympy.minimal_polynomial(expr, x) == x


# ---------------------------------------------------------------------------
# roots of a polynomial over an extended sample


def roots_in_extension(p: MPoly, s: Sample):
    """Sorted distinct real roots of p(s, x_i) where i = level(p) and s
    has length i - 1; NULLIFIED when the specialization is identically
    zero."""
    i = p.level
    if i != len(s) + 1:
        raise ValueError("level(p) must be len(s) + 1")
    d, _, coeffs = coeff_info(p, i)
    if all(sign_at(c, s) == 0 for c in coeffs):
        return NULLIFIED
    if s.all_rational():
        q = p.subst_rational({j + 1: s[j].rational_value() for j in range(len(s))})
        if q.is_constant():
            return []
        return isolate_real_roots(q)
    candidates = _candidate_polys(p, s)
    seen: list[RealAlg] = []
    for cand in candidates:
        for r in _isolate_squarefree(cand):
            if sign_at(p, s.extend(r)) == 0:
                if not any(r.compare(t) == 0 for t in seen):
                    seen.append(r)
    seen.sort(key=RootSortProxy)
    return seen


def _candidate_polys(p: MPoly, s: Sample) -> list[list[Fraction]]:
    """Rational univariate polynomials whose roots cover all roots of
    p(s, x_i), obtained by resultant elimination of each irrational
    coordinate against its defining polynomial."""
    i = p.level
    rat = {j + 1: s[j].rational_value() for j in range(len(s)) if s[j].is_rational()}
    q = p.subst_rational(rat)
    for j in range(len(s)):
        if s[j].is_rational():
            continue
        if q.degree(j + 1) == 0:
            continue
        dpoly = MPoly({})
        for k, c in enumerate(s[j]._def):
            dpoly = dpoly + MPoly.constant(c) * MPoly.var(j + 1) ** k
        q = resultant(q, dpoly, j + 1)
        if q.is_zero():
            return _candidate_polys_sympy(p, s)
    if q.is_constant() or q.degree(i) == 0:
        return []
    return [_upoly_coeffs_multi(q, i)]


def _upoly_coeffs_multi(q: MPoly, v: Var) -> list[Fraction]:
    d, _, coeffs = coeff_info(q, v)
    out = []
    for c in coeffs:
        if not c.is_constant():
            raise ValueError("elimination left extra variables")
        out.append(c.constant_value())
    return _utrim(out)


def _candidate_polys_sympy(p: MPoly, s: Sample) -> list[list[Fraction]]:
    """Fallback for the degenerate case where an intermediate resultant
    vanishes (a conjugate coordinate interaction): take exact minimal
    polynomials of the roots computed by sympy over the extension."""
    i = p.level
    expr = to_sympy(p).subs({_sym(j + 1): s[j].to_sympy() for j in range(len(s))})
    xi = _sym(i)
    poly = sympy.Poly(expr, xi, extension=True)
    out: list[list[Fraction]] = []
    z = sympy.Symbol("zz")
    for r in poly.real_roots():
        mp = sympy.Poly(sympy.minimal_polynomial(r, z), z)
        coeffs = [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q))
                  for c in mp.all_coeffs()[::-1]]
        out.append(_utrim(coeffs))
    return out


# ---------------------------------------------------------------------------
# text form


def realalg_to_text(a: RealAlg) -> str:
    if a.is_rational():
        return str(a.rational_value())
    poly = MPoly({})
    for k, c in enumerate(a._def):
        poly = poly + MPoly.constant(c) * MPoly.var(1) ** k
    return f'(root {poly_to_str(poly)} {a.canonical_index()})'


def realalg_from_text(text: str) -> RealAlg:
    text = text.strip()
    if text.startswith("(root"):
        inner = text[5:].strip()
        if not inner.endswith(")"):
            raise ValueError(f"bad real algebraic literal: {text}")
        inner = inner[:-1].strip()
        body, _, idx = inner.rpartition(" ")
        poly = parse_poly(body)
        roots = isolate_real_roots(poly)
        k = int(idx)
        if not 1 <= k <= len(roots):
            raise ValueError(f"root index {k} out of range for {body}")
        return roots[k - 1]
    return RealAlg.rational(Fraction(text))
