"""From an unsatisfiable partial assignment to a learnable clause.

A model-constructing solver assigned x1 = 0 and then discovered that no
value of x2 satisfies both constraints below.  Instead of excluding the
single point x1 = 0, we generalize: build a cell around it on which the
same conflict persists, and learn the cell's negation.
"""

from fractions import Fraction

from onecell import Constraint, check_conflict, clause_to_text, explain_conflict, parse_poly
from onecell.cells import cell_pick_interior_point, cell_to_text
from onecell.realalg import Sample

C = [
    Constraint(parse_poly("x1^2+x2^2-1"), "<"),  # inside the unit circle
    Constraint(parse_poly("x2-1"), ">"),  # above the line x2 = 1
]
assignment = [Fraction(0)]

print("conflict at x1 = 0:", check_conflict(C, Sample(assignment)))

result = explain_conflict(C, assignment)
assert result, "generalization failed"

print("\nexcluded cell:")
print(cell_to_text(result.cell))
print("clause to learn:")
print(clause_to_text(result.cell))

# the conflict really does persist across the cell
for seed in range(5):
    pt = cell_pick_interior_point(result.cell, seed)
    assert check_conflict(C, pt)
print("\nconflict persists at 5 sampled points of the cell")
