"""Compare root-ordering heuristics on a small random corpus.

Each heuristic decides which pairs of roots the cell construction must
keep ordered, which in turn decides how many resultants the projection
needs.  Fewer ordered pairs usually means fewer and lower-degree
projection polynomials, at the price of a smaller cell.
"""

import random
from fractions import Fraction

from onecell import HEURISTIC_IDS, RunStats, config_from_id, single_cell
from onecell.polynomial import MPoly


def random_poly(rng, nvars):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        exps = tuple(rng.randint(0, 2) for _ in range(nvars))
        terms[exps] = terms.get(exps, 0) + rng.choice([-2, -1, 1, 2])
    p = MPoly({k: Fraction(v) for k, v in terms.items() if v})
    return p if not p.is_zero() else MPoly.constant(1)


corpus = []
rng = random.Random(5)
while len(corpus) < 30:
    nv = rng.randint(2, 3)
    polys = [random_poly(rng, nv) for _ in range(3)]
    sample = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(nv)]
    corpus.append((polys, sample))

print(f"{'heuristic':<10} {'cells':>5} {'res':>5} {'disc':>5} {'mean dim':>9}")
for hid in sorted(HEURISTIC_IDS):
    stats = RunStats()
    cfg = config_from_id(hid)
    for polys, sample in corpus:
        single_cell(polys, sample, cfg, stats)
    lines = dict(l.split("=") for l in stats.lines())
    print(
        f"{hid:<10} {lines['cells_constructed']:>5} "
        f"{lines['resultants_computed']:>5} {lines['discriminants_computed']:>5} "
        f"{lines['mean_cell_dimension']:>9}"
    )
