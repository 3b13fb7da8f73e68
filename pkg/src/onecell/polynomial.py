"""Sparse multivariate polynomials over the rationals.

Variables are identified by 1-based integer indices under the fixed
ordering x1 < x2 < ... < xn.  A polynomial's *level* is the largest
variable index that actually occurs in it (0 for constants).  All
coefficients are exact `fractions.Fraction` values and every polynomial
is kept in a canonical form (no zero coefficients stored), so equality
of term maps is equality of polynomials.

The module also provides the projection operations the cell construction
consumes: resultants via subresultant polynomial remainder sequences,
discriminants, and factorization (irreducible or square-free) which is
delegated to sympy behind a stable interface.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import sympy

Rat = Fraction
Var = int  # 1-based variable index

_SYMS: dict[int, sympy.Symbol] = {}


def _sym(i: int) -> sympy.Symbol:
    if i not in _SYMS:
        _SYMS[i] = sympy.Symbol(f"x{i}")
    return _SYMS[i]


def _trim(exps: tuple[int, ...]) -> tuple[int, ...]:
    """Drop trailing zero exponents so keys are canonical."""
    n = len(exps)
    while n and exps[n - 1] == 0:
        n -= 1
    return exps[:n]


class MPoly:
    """An immutable sparse polynomial in Q[x1, ..., xn].

    The term map sends trimmed exponent tuples to nonzero rational
    coefficients; the exponent tuple ``(2, 1)`` stands for x1^2*x2.
    """

    __slots__ = ("_terms", "_hash", "_level")

    def __init__(self, terms: dict[tuple[int, ...], Fraction] | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exps, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    key = _trim(tuple(exps))
                    acc = clean.get(key, Fraction(0)) + c
                    if acc == 0:
                        clean.pop(key, None)
                    else:
                        clean[key] = acc
        self._terms = clean
        self._hash: int | None = None
        self._level = max((len(e) for e in clean), default=0)

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(c) -> "MPoly":
        return MPoly({(): Fraction(c)})

    @staticmethod
    def var(i: Var) -> "MPoly":
        if i < 1:
            raise ValueError("variable indices are 1-based")
        return MPoly({tuple([0] * (i - 1) + [1]): Fraction(1)})

    # -- basic structure ----------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    @property
    def level(self) -> int:
        return self._level

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return self._level == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self._terms.get((), Fraction(0))

    def degree(self, v: Var) -> int:
        """Degree in x_v; 0 when the variable does not occur (and for 0)."""
        d = 0
        for e in self._terms:
            if len(e) >= v:
                d = max(d, e[v - 1])
        return d

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def variables(self) -> set[Var]:
        out: set[Var] = set()
        for e in self._terms:
            for i, k in enumerate(e):
                if k:
                    out.add(i + 1)
        return out

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other) -> "MPoly":
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MPoly(out)

    def __radd__(self, other) -> "MPoly":
        return self.__add__(other)

    def __neg__(self) -> "MPoly":
        return MPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "MPoly":
        other = _coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                n = max(len(e1), len(e2))
                e = tuple(
                    (e1[i] if i < len(e1) else 0) + (e2[i] if i < len(e2) else 0)
                    for i in range(n)
                )
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MPoly(out)

    def __rmul__(self, other) -> "MPoly":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = MPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "MPoly":
        c = Fraction(c)
        return MPoly({e: c * k for e, k in self._terms.items()})

    # -- evaluation / substitution ------------------------------------

    def eval_rational(self, point: Sequence[Fraction]) -> Fraction:
        """Evaluate at a fully rational point (coordinate j for x_j)."""
        if self._level > len(point):
            raise ValueError("point has too few coordinates")
        total = Fraction(0)
        for e, c in self._terms.items():
            val = c
            for i, k in enumerate(e):
                if k:
                    val *= Fraction(point[i]) ** k
            total += val
        return total

    def subst_rational(self, vals: dict[Var, Fraction]) -> "MPoly":
        """Substitute rational values for some variables."""
        out: dict[tuple[int, ...], Fraction] = {}
        acc = MPoly({})
        for e, c in self._terms.items():
            coeff = c
            rest = list(e)
            for v, val in vals.items():
                if len(e) >= v and e[v - 1]:
                    coeff *= Fraction(val) ** e[v - 1]
                    rest[v - 1] = 0
            key = _trim(tuple(rest))
            out[key] = out.get(key, Fraction(0)) + coeff
        return MPoly(out)

    # -- dunder plumbing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        return poly_to_str(self)

    def __repr__(self) -> str:
        return f"MPoly({poly_to_str(self)})"

    def sort_key(self):
        """Canonical total order on polynomials, used for deterministic
        tie-breaking: graded comparison of the sorted term sequences."""
        n = self._level
        items = sorted(
            ((_monom_key(e, n), c) for e, c in self._terms.items()), reverse=True
        )
        return (self.total_degree(), len(items), tuple(items))


def _coerce(x) -> MPoly:
    if isinstance(x, MPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MPoly.constant(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to MPoly")


def _monom_key(e: tuple[int, ...], n: int):
    padded = e + (0,) * (n - len(e))
    # graded lex with the highest variable most significant
    return (sum(e), tuple(reversed(padded)))


# ---------------------------------------------------------------------------
# univariate views


def coeff_info(p: MPoly, v: Var) -> tuple[int, MPoly, list[MPoly]]:
    """View p as univariate in x_v.

    Returns (degree, leading coefficient, coefficients from degree 0 up).
    A polynomial not mentioning x_v has degree 0 and is its own leading
    coefficient.
    """
    d = p.degree(v)
    coeffs: list[dict[tuple[int, ...], Fraction]] = [dict() for _ in range(d + 1)]
    for e, c in p._terms.items():
        k = e[v - 1] if len(e) >= v else 0
        rest = list(e)
        if len(rest) >= v:
            rest[v - 1] = 0
        key = _trim(tuple(rest))
        coeffs[k][key] = coeffs[k].get(key, Fraction(0)) + c
    out = [MPoly(t) for t in coeffs]
    return d, out[d], out


def from_coeffs(coeffs: Sequence[MPoly], v: Var) -> MPoly:
    """Inverse of coeff_info: sum coeffs[k] * x_v^k."""
    xv = MPoly.var(v)
    total = MPoly({})
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            total = total + c * xv**k
    return total


# ---------------------------------------------------------------------------
# exact division (the coefficient ring is a UFD; PRS divisions are exact)


def exact_div(a: MPoly, b: MPoly) -> MPoly:
    """Divide a by b, raising ValueError unless the division is exact."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    if b.is_constant():
        return a.scale(Fraction(1) / b.constant_value())
    v = b.level
    db, lb, _ = coeff_info(b, v)
    xv = MPoly.var(v)
    total = MPoly({})
    rem = a
    while not rem.is_zero():
        da, la, _ = coeff_info(rem, v)
        if da < db:
            raise ValueError("inexact polynomial division")
        q = exact_div(la, lb)
        total = total + q * xv ** (da - db)
        rem = rem - q * xv ** (da - db) * b
    return total


# ---------------------------------------------------------------------------
# resultants and discriminants


def _udeg(c: list[MPoly]) -> int:
    return len(c) - 1


def _utrim(c: list[MPoly]) -> list[MPoly]:
    while c and c[-1].is_zero():
        c.pop()
    return c


def _prem(a: list[MPoly], b: list[MPoly]) -> list[MPoly]:
    """Pseudo-remainder of coefficient lists: lc(b)^(da-db+1) * a mod b."""
    da, db = _udeg(a), _udeg(b)
    lb = b[-1]
    r = list(a)
    for _ in range(da - db + 1):
        dr = _udeg(r)
        if dr < db:
            r = [lb * c for c in r]
            continue
        lr = r[-1]
        shifted = [MPoly({})] * (dr - db) + [lr * c for c in b]
        r = [lb * r[i] - shifted[i] for i in range(dr)]
        _utrim(r)
    return r


def resultant(p: MPoly, q: MPoly, v: Var) -> MPoly:
    """res_v(p, q) via the subresultant polynomial remainder sequence.

    Equals the determinant of the Sylvester matrix of p and q in x_v.
    Both arguments must have positive degree in x_v.
    """
    dp, dq = p.degree(v), q.degree(v)
    if dp < 1 or dq < 1:
        raise ValueError("resultant requires positive degree in the main variable")
    _, _, ac = coeff_info(p, v)
    _, _, bc = coeff_info(q, v)
    A, B = list(ac), list(bc)
    sign = 1
    if _udeg(A) < _udeg(B):
        if (_udeg(A) * _udeg(B)) % 2 == 1:
            sign = -sign
        A, B = B, A
    one = MPoly.constant(1)
    g, h = one, one
    while True:
        da, db = _udeg(A), _udeg(B)
        d = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        R = _utrim(_prem(A, B))
        if not R:
            return MPoly({})  # nonconstant common factor
        denom = g * h**d
        A = B
        B = [exact_div(c, denom) for c in R]
        g = A[-1]
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = exact_div(g**d, h ** (d - 1))
        if _udeg(B) == 0:
            da2 = _udeg(A)
            num = B[0] ** da2
            if da2 <= 1:
                res = h ** (1 - da2) * num
            else:
                res = exact_div(num, h ** (da2 - 1))
            return res if sign == 1 else -res


def discriminant(p: MPoly, v: Var) -> MPoly:
    """disc_v(p) = (-1)^(d(d-1)/2) res_v(p, dp/dxv) / ldcf_v(p).

    For degree 1 the empty-matrix convention yields the constant 1.
    """
    d = p.degree(v)
    if d < 1:
        raise ValueError("discriminant requires the variable to occur")
    if d == 1:
        return MPoly.constant(1)
    dp = derivative(p, v)
    r = resultant(p, dp, v)
    _, lc, _ = coeff_info(p, v)
    r = exact_div(r, lc)
    if (d * (d - 1) // 2) % 2 == 1:
        r = -r
    return r


def derivative(p: MPoly, v: Var) -> MPoly:
    out: dict[tuple[int, ...], Fraction] = {}
    for e, c in p._terms.items():
        k = e[v - 1] if len(e) >= v else 0
        if k:
            rest = list(e)
            rest[v - 1] = k - 1
            key = _trim(tuple(rest))
            out[key] = out.get(key, Fraction(0)) + c * k
    return MPoly(out)


# ---------------------------------------------------------------------------
# normalization and factorization


def content(p: MPoly) -> Fraction:
    """Positive rational c with p/c integer-primitive; 0 for the zero poly."""
    if p.is_zero():
        return Fraction(0)
    nums = [c.numerator for c in p._terms.values()]
    dens = [c.denominator for c in p._terms.values()]
    g = 0
    for n in nums:
        g = math.gcd(g, abs(n))
    l = 1
    for d in dens:
        l = l * d // math.gcd(l, d)
    return Fraction(g, l)


def normalize(p: MPoly) -> MPoly:
    """Canonical representative up to nonzero constants: integer-primitive
    with positive leading coefficient under graded lex."""
    if p.is_zero():
        return p
    q = p.scale(Fraction(1) / content(p))
    n = q.level
    lead = max(q._terms, key=lambda e: _monom_key(e, n))
    if q._terms[lead] < 0:
        q = -q
    return q


def to_sympy(p: MPoly):
    expr = sympy.Integer(0)
    for e, c in p._terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for i, k in enumerate(e):
            if k:
                term *= _sym(i + 1) ** k
        expr += term
    return expr


def from_sympy(expr) -> MPoly:
    expr = sympy.expand(expr)
    if not expr.free_symbols:
        r = sympy.Rational(expr)
        return MPoly.constant(Fraction(int(r.p), int(r.q)))
    gens = [_sym(i) for i in range(1, _max_sym_index(expr) + 1)]
    poly = sympy.Poly(expr, *gens)
    out: dict[tuple[int, ...], Fraction] = {}
    for monom, coeff in poly.terms():
        c = sympy.Rational(coeff)
        out[_trim(tuple(monom))] = Fraction(int(c.p), int(c.q))
    return MPoly(out)


def _max_sym_index(expr) -> int:
    best = 1
    for s in expr.free_symbols:
        m = re.fullmatch(r"x(\d+)", s.name)
        if not m:
            raise ValueError(f"unexpected symbol {s}")
        best = max(best, int(m.group(1)))
    return best


def factor(p: MPoly, mode: str = "finest") -> list[tuple[MPoly, int]]:
    """Factor p into normalized irreducible (``finest``) or square-free
    pairwise-coprime (``squarefree``) factors with multiplicities.

    The product of factors^multiplicities equals p up to a nonzero
    rational constant.  Constant input yields an empty list.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.is_constant():
        return []
    expr = to_sympy(p)
    if mode == "finest":
        _, pairs = sympy.factor_list(expr)
    elif mode == "squarefree":
        _, pairs = sympy.sqf_list(expr)
    else:
        raise ValueError(f"unknown factor mode: {mode}")
    out: list[tuple[MPoly, int]] = []
    for f, m in pairs:
        g = normalize(from_sympy(f))
        if not g.is_constant():
            out.append((g, int(m)))
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


def is_irreducible(p: MPoly) -> bool:
    fs = factor(p, "finest")
    return len(fs) == 1 and fs[0][1] == 1


def squarefree_part(p: MPoly) -> MPoly:
    prod = MPoly.constant(1)
    for f, _ in factor(p, "squarefree"):
        prod = prod * f
    return normalize(prod)


# ---------------------------------------------------------------------------
# text form


_TOKEN = re.compile(r"\s*(\d+|x\d+|[a-zA-Z_][a-zA-Z_0-9]*|\^|\*|/|\+|-|\(|\))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ValueError(f"bad character at offset {pos}: {text[pos]!r}")
                break
            self.tokens.append((m.group(1), m.start(1)))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of polynomial text")
        self.i += 1
        return tok

    def parse(self) -> MPoly:
        p = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input near {self.peek()!r}")
        return p

    def expr(self) -> MPoly:
        if self.peek() == "-":
            self.next()
            acc = -self.term()
        else:
            if self.peek() == "+":
                self.next()
            acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MPoly:
        acc = self.power()
        while True:
            tok = self.peek()
            if tok in ("*", "/"):
                self.next()
                rhs = self.power()
                if tok == "*":
                    acc = acc * rhs
                else:
                    if not rhs.is_constant() or rhs.constant_value() == 0:
                        raise ValueError("division only by nonzero constants")
                    acc = acc.scale(Fraction(1) / rhs.constant_value())
            elif tok is not None and (tok[0].isdigit() or tok[0].isalpha() or tok == "("):
                # implicit multiplication, e.g. "4x1^2"
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> MPoly:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            neg = False
            if self.peek() == "-":
                raise ValueError("negative exponents are not polynomials")
            k = self.next()
            if not k.isdigit():
                raise ValueError(f"expected integer exponent, got {k!r}")
            return base ** int(k)
        return base

    def atom(self) -> MPoly:
        tok = self.next()
        if tok == "(":
            p = self.expr()
            if self.next() != ")":
                raise ValueError("unbalanced parentheses")
            return p
        if tok.isdigit():
            return MPoly.constant(int(tok))
        m = re.fullmatch(r"x(\d+)", tok)
        if not m:
            raise ValueError(f"unknown symbol {tok!r} (variables are x1, x2, ...)")
        return MPoly.var(int(m.group(1)))


def parse_poly(text: str) -> MPoly:
    """Parse the compact infix form, e.g. ``x1^2+x2^2-1`` or ``5x1^2-2x1-3``."""
    return _Parser(text).parse()


def poly_to_str(p: MPoly) -> str:
    if p.is_zero():
        return "0"
    n = p.level
    items = sorted(p._terms.items(), key=lambda ec: _monom_key(ec[0], n), reverse=True)
    parts: list[str] = []
    for e, c in items:
        mono = "*".join(
            f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}"
            for i, k in enumerate(e)
            if k
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(parts)
