"""End-to-end cell construction: the worked two-variable instance,
failure modes, and randomized soundness."""

import random
from fractions import Fraction

import pytest

from onecell.cells import cell_contains, cell_to_text
from onecell.config import HEURISTIC_IDS, HeuristicConfig, config_from_id
from onecell.engine import Fail, single_cell
from onecell.polynomial import normalize, parse_poly
from onecell.properties import SgnInv, validate_trace
from onecell.realalg import RealAlg, Sample, isolate_real_roots
from onecell.stats import RunStats

from conftest import check_cell_sound, random_poly, random_sample

P_RUNNING = ["x1-2*x2+1", "x1^2+x2^2-1", "x1-2*x2-1"]
S_RUNNING = (Fraction(1, 8), Fraction(-3, 4))


def test_running_instance_cell_shape():
    result = single_cell(P_RUNNING, S_RUNNING, HeuristicConfig("EQ", "BC"))
    assert result
    text = cell_to_text(result.cell)
    assert text == (
        'level 1 sector (root "5*x1^2-2*x1-3" 1) (root "x1^2-1" 2)\n'
        'level 2 sector (root "x2^2+x1^2-1" 1) (root "2*x2-x1+1" 1)\n'
    )


def test_running_instance_base_interval_endpoints():
    """The level-1 sector is exactly (-3/5, 1), resolved numerically
    from the projection polynomials."""
    result = single_cell(P_RUNNING, S_RUNNING)
    lo_bound = result.cell[0].lower
    hi_bound = result.cell[0].upper
    lo = isolate_real_roots(lo_bound.poly)[lo_bound.index - 1]
    hi = isolate_real_roots(hi_bound.poly)[hi_bound.index - 1]
    assert lo.compare(RealAlg.rational(Fraction(-3, 5))) == 0
    assert hi.compare(RealAlg.rational(Fraction(1))) == 0


def test_running_instance_trace_validates():
    result = single_cell(P_RUNNING, S_RUNNING)
    assert validate_trace(result.trace, set(result.trace.axioms))


def test_running_instance_inputs_are_derived():
    result = single_cell(P_RUNNING, S_RUNNING)
    derived = {c.text() for c in result.trace.conclusions()}
    for p in P_RUNNING:
        poly = parse_poly(p)
        assert (
            SgnInv(poly).text() in derived
            or SgnInv(normalize(poly)).text() in derived
        )


def test_nullified_top_level_fails():
    result = single_cell(["x1*x3+x2"], (0, 0, 0))
    assert isinstance(result, Fail)
    assert not result


def test_nonzero_coefficient_rescues():
    result = single_cell(["x1*x3+x2"], (1, 0, 0))
    assert result
    assert cell_contains(result.cell, Sample([Fraction(1), Fraction(0), Fraction(0)])) is True


def test_cell_contains_its_sample():
    rng = random.Random(7)
    for _ in range(25):
        nv = rng.randint(1, 3)
        polys = [random_poly(rng, nv) for _ in range(rng.randint(1, 3))]
        coords = random_sample(rng, nv)
        result = single_cell(polys, coords)
        if isinstance(result, Fail):
            continue
        assert cell_contains(result.cell, Sample(coords)) is True


def test_sign_invariance_random(rng):
    successes = 0
    for k in range(60):
        nv = rng.randint(1, 3)
        polys = [random_poly(rng, nv) for _ in range(rng.randint(1, 4))]
        coords = random_sample(rng, nv)
        hid = sorted(HEURISTIC_IDS)[k % len(HEURISTIC_IDS)]
        result = single_cell(polys, coords, config_from_id(hid))
        if isinstance(result, Fail):
            continue
        successes += 1
        check_cell_sound(result.cell, polys, Sample(coords), 10)
    assert successes > 10


def test_sample_on_poly_root_gives_section():
    result = single_cell(["x2^2+x1^2-1"], (Fraction(0), Fraction(1)))
    assert result
    assert result.cell[1].is_section()


def test_constant_inputs_are_harmless():
    result = single_cell(["3", "x1-1"], (Fraction(0),))
    assert result
    assert len(result.cell) == 1


def test_level_check_rejects_excess_variables():
    with pytest.raises(ValueError):
        single_cell(["x1*x3+x2"], (0, 0))


def test_stats_are_populated():
    stats = RunStats()
    result = single_cell(P_RUNNING, S_RUNNING, stats=stats)
    assert result
    lines = dict(l.split("=") for l in stats.lines())
    assert lines["cells_constructed"] == "1"
    assert int(lines["resultants_computed"]) >= 1
    assert int(lines["discriminants_computed"]) >= 1


def test_all_heuristics_on_running_instance():
    for hid in sorted(HEURISTIC_IDS):
        result = single_cell(P_RUNNING, S_RUNNING, config_from_id(hid))
        assert result, hid
        assert cell_contains(
            result.cell, Sample([Fraction(1, 8), Fraction(-3, 4)])
        ) is True
        assert validate_trace(result.trace, set(result.trace.axioms)), hid
