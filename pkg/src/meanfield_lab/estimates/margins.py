"""Margin bookkeeping shared by every inequality check."""

from dataclasses import dataclass, field

MARGIN_TOL = 1e-9


@dataclass(frozen=True)
class BoundMargin:
    """One inequality lhs <= rhs evaluated as numbers."""

    name: str
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def holds(self, tol: float = MARGIN_TOL) -> bool:
        return self.margin >= -tol


@dataclass
class MarginReport:
    """A named group of inequality checks."""

    name: str
    margins: list[BoundMargin] = field(default_factory=list)
    details: dict[str, float] = field(default_factory=dict)

    def add(self, name: str, lhs: float, rhs: float) -> None:
        self.margins.append(BoundMargin(name, float(lhs), float(rhs)))

    def extend(self, other: "MarginReport", prefix: str = "") -> None:
        for m in other.margins:
            self.margins.append(BoundMargin(prefix + m.name, m.lhs, m.rhs))

    @property
    def worst_margin(self) -> float:
        return min((m.margin for m in self.margins), default=0.0)

    @property
    def worst(self) -> BoundMargin | None:
        return min(self.margins, key=lambda m: m.margin, default=None)

    def passed(self, tol: float = MARGIN_TOL) -> bool:
        return all(m.holds(tol) for m in self.margins)

    def to_dict(self) -> dict[str, object]:
        return {
            "name": self.name,
            "worst_margin": self.worst_margin,
            "passed": self.passed(),
            "details": self.details,
            "margins": [
                {"name": m.name, "lhs": m.lhs, "rhs": m.rhs, "margin": m.margin}
                for m in self.margins
            ],
        }
