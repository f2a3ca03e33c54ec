"""Cells, cell vectors and solver results."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..semantics import Structure
from ..syntax import Literal


@dataclass(frozen=True)
class Cell:
    """A valuation of the relevant atoms; ``inside`` holds the atoms set to in."""

    inside: frozenset[str]

    def satisfies(self, literal: Literal) -> bool:
        return (literal.atom in self.inside) == literal.positive


@dataclass
class CellVector:
    atoms: tuple[str, ...]
    counts: dict[Cell, int]

    def __post_init__(self):
        self.atoms = tuple(sorted(self.atoms))
        self.counts = {c: n for c, n in self.counts.items() if n > 0}
        for c in self.counts:
            if not c.inside <= set(self.atoms):
                raise ValueError(f"cell {sorted(c.inside)} mentions atoms outside {self.atoms}")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def cells(self) -> list[Cell]:
        rank = {a: k for k, a in enumerate(self.atoms)}
        return sorted(self.counts, key=lambda c: sorted(rank[a] for a in c.inside))

    def to_structure(self) -> Structure:
        domain, interp = [], {a: set() for a in self.atoms}
        for c in self.cells():
            for _ in range(self.counts[c]):
                name = f"x{len(domain)}"
                domain.append(name)
                for a in c.inside:
                    interp[a].add(name)
        return Structure(domain, interp)

    @classmethod
    def from_assignments(cls, atoms: Iterable[str], assignments: Iterable[Mapping[str, bool]]) -> "CellVector":
        counts: dict[Cell, int] = {}
        for asg in assignments:
            cell = Cell(frozenset(a for a, v in asg.items() if v))
            counts[cell] = counts.get(cell, 0) + 1
        return cls(tuple(atoms), counts)


@dataclass
class SatResult:
    verdict: str  # "sat", "unsat" or "unknown"
    engine: str
    model: CellVector | None = None
    nodes: int = 0
    trace: list[str] = field(default_factory=list)

    @property
    def sat(self) -> bool:
        return self.verdict == "sat"

    @property
    def unsat(self) -> bool:
        return self.verdict == "unsat"

    def structure(self) -> Structure | None:
        return self.model.to_structure() if self.model is not None else None
