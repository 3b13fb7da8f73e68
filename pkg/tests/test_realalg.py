"""Real algebraic numbers and root isolation, cross-checked with Sturm
sequences."""

import random
from fractions import Fraction

import pytest

from onecell.polynomial import MPoly, parse_poly
from onecell.realalg import (
    NULLIFIED,
    RealAlg,
    Sample,
    isolate_real_roots,
    realalg_from_text,
    realalg_to_text,
    roots_in_extension,
    sign_at,
)

from conftest import random_poly
from oracles import sturm_count_all_real_roots, sturm_count_interval


def _upoly(rng, max_deg=5):
    while True:
        c = [Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(2, max_deg + 1))]
        while c and c[-1] == 0:
            c.pop()
        if len(c) >= 2:
            return c


def _to_mpoly(c):
    p = MPoly({})
    for i, x in enumerate(c):
        p = p + MPoly({(i,): x}) if x else p
    return p


def test_isolation_count_matches_sturm(rng):
    """Dual route for root counting; multiplicities collapse on both
    sides."""
    for _ in range(120):
        c = _upoly(rng)
        p = _to_mpoly(c)
        roots = isolate_real_roots(p)
        assert len(roots) == sturm_count_all_real_roots(c)


def test_isolated_roots_are_sorted_and_distinct(rng):
    for _ in range(40):
        p = _to_mpoly(_upoly(rng))
        roots = isolate_real_roots(p)
        for a, b in zip(roots, roots[1:]):
            assert a.compare(b) < 0


def test_isolated_roots_sit_in_sturm_windows(rng):
    """Each enclosure, once refined, contains exactly one root by the
    Sturm interval count."""
    for _ in range(30):
        c = _upoly(rng)
        p = _to_mpoly(c)
        for r in isolate_real_roots(p):
            for _ in range(4):
                r.refine()
            lo, hi = r.enclosure()
            if lo == hi:
                continue  # rational root pinned exactly
            pad = (hi - lo) / 1000
            assert sturm_count_interval(c, lo - pad, hi) == 1


def test_rational_arithmetic_and_compare():
    a = RealAlg.rational(Fraction(1, 3))
    b = RealAlg.rational(Fraction(2, 3))
    assert a.compare(b) < 0
    assert b.compare(a) > 0
    assert a.compare(RealAlg.rational(Fraction(1, 3))) == 0
    assert a < b <= b


def test_algebraic_compare_sqrt2():
    p = parse_poly("x1^2-2")
    lo, hi = isolate_real_roots(p)
    assert lo.compare(RealAlg.rational(Fraction(-3, 2))) > 0
    assert hi.compare(RealAlg.rational(Fraction(3, 2))) < 0
    assert lo.compare(hi) < 0
    assert hi.compare(hi) == 0


def test_sign_at_rational_and_algebraic():
    circle = parse_poly("x1^2+x2^2-1")
    assert sign_at(circle, Sample([Fraction(0), Fraction(0)])) == -1
    assert sign_at(circle, Sample([Fraction(1), Fraction(0)])) == 0
    sqrt2 = isolate_real_roots(parse_poly("x1^2-2"))[1]
    assert sign_at(parse_poly("x1^2-2"), Sample([sqrt2])) == 0
    assert sign_at(parse_poly("x1-1"), Sample([sqrt2])) == 1


def test_roots_in_extension_nullified():
    p = parse_poly("x1*x2+0*x2")  # x1 * x2; zero at x1 = 0 identically
    assert roots_in_extension(p, Sample([Fraction(0)])) is NULLIFIED
    roots = roots_in_extension(p, Sample([Fraction(2)]))
    assert roots is not NULLIFIED and len(roots) == 1
    assert roots[0].compare(RealAlg.rational(0)) == 0


def test_roots_in_extension_over_algebraic_prefix():
    sqrt2 = isolate_real_roots(parse_poly("x1^2-2"))[1]
    p = parse_poly("x2^2-x1^2")  # roots +/- sqrt(2) over x1 = sqrt(2)
    roots = roots_in_extension(p, Sample([sqrt2]))
    assert len(roots) == 2
    assert roots[0].compare(RealAlg.rational(0)) < 0 < roots[1].compare(
        RealAlg.rational(0)
    )
    assert roots[1].compare(sqrt2) == 0


def test_sample_prefix_extend():
    s = Sample([Fraction(1), Fraction(2)])
    assert len(s.prefix(1)) == 1
    assert len(s.extend(Fraction(3))) == 3
    assert s.prefix(0) == Sample(())


def test_realalg_text_roundtrip():
    vals = [RealAlg.rational(Fraction(-7, 3))]
    vals.extend(isolate_real_roots(parse_poly("x1^3-x1-1")))
    for v in vals:
        back = realalg_from_text(realalg_to_text(v))
        assert back.compare(v) == 0


def test_refine_narrows():
    r = isolate_real_roots(parse_poly("x1^2-3"))[1]
    lo0, hi0 = r.enclosure()
    r.refine()
    lo1, hi1 = r.enclosure()
    assert hi1 - lo1 < hi0 - lo0
