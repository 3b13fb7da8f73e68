"""Run statistics with the metric definitions used for comparisons:
counts of distinct nonconstant resultants / discriminants / coefficients
introduced, cells constructed, their dimensions, and the maximal degree
in a polynomial's main variable seen during construction."""

from __future__ import annotations

from .polynomial import MPoly


class RunStats:
    def __init__(self):
        self.cells_constructed = 0
        self.cell_dimensions: list[int] = []
        self.max_main_degree = 0
        self._res: set[MPoly] = set()
        self._disc: set[MPoly] = set()
        self._coeff: set[MPoly] = set()
        # (kind, polynomial, construction level) in introduction order
        self.events: list[tuple[str, MPoly, int | None]] = []

    @property
    def resultants_computed(self) -> int:
        return len(self._res)

    @property
    def discriminants_computed(self) -> int:
        return len(self._disc)

    @property
    def coefficients_computed(self) -> int:
        return len(self._coeff)

    def resultant_polys(self) -> frozenset:
        return frozenset(self._res)

    def discriminant_polys(self) -> frozenset:
        return frozenset(self._disc)

    def coefficient_polys(self) -> frozenset:
        return frozenset(self._coeff)

    def saw_poly(self, p: MPoly) -> None:
        if not p.is_constant():
            self.max_main_degree = max(self.max_main_degree, p.degree(p.level))

    def add_resultant(self, p: MPoly, level: int | None = None) -> None:
        if not p.is_constant():
            self._res.add(p)
            self.events.append(("res", p, level))
            self.saw_poly(p)

    def add_discriminant(self, p: MPoly, level: int | None = None) -> None:
        if not p.is_constant():
            self._disc.add(p)
            self.events.append(("disc", p, level))
            self.saw_poly(p)

    def add_coefficient(self, p: MPoly, level: int | None = None) -> None:
        if not p.is_constant():
            self._coeff.add(p)
            self.events.append(("coeff", p, level))
            self.saw_poly(p)

    def add_cell(self, dimension: int) -> None:
        self.cells_constructed += 1
        self.cell_dimensions.append(dimension)

    def lines(self) -> list[str]:
        dims = self.cell_dimensions
        mean_dim = sum(dims) / len(dims) if dims else 0.0
        return [
            f"cells_constructed={self.cells_constructed}",
            f"mean_cell_dimension={mean_dim:.3f}",
            f"max_main_degree={self.max_main_degree}",
            f"resultants_computed={self.resultants_computed}",
            f"discriminants_computed={self.discriminants_computed}",
            f"coefficients_computed={self.coefficients_computed}",
        ]
