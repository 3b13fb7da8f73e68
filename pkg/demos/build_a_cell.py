"""Walk through building one sign-invariant cell.

Three curves in the plane: two lines and the unit circle.  Around the
point (1/8, -3/4) we want a region where none of them changes sign, so
that anything we conclude at the point transfers to the whole region.
"""

from fractions import Fraction

from onecell import HeuristicConfig, RunStats, cell_to_text, single_cell, validate_trace

polys = [
    "x1-2*x2+1",  # line above the sample point
    "x1^2+x2^2-1",  # unit circle
    "x1-2*x2-1",  # line below the sample point
]
sample = (Fraction(1, 8), Fraction(-3, 4))

stats = RunStats()
result = single_cell(polys, sample, HeuristicConfig("EQ", "BC"), stats)
assert result, "construction failed"

print("cell around (1/8, -3/4):")
print(cell_to_text(result.cell))

# The level-2 interval is bounded by the circle below and one line
# above.  Projecting those bounds down gives two univariate
# polynomials; their roots bound x1 in (-3/5, 1).

print("derivation trace:")
print(result.trace.to_text())

print("the trace checks out:", validate_trace(result.trace, set(result.trace.axioms)))

print("\nconstruction statistics:")
for line in stats.lines():
    print(" ", line)
