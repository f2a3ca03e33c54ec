"""Finite structures and truth of counting formulas in them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InputError
from .syntax import (
    AT_MOST,
    MORE_THAN,
    Formula,
    LanguageId,
    Literal,
    argument_pairs,
)


class Structure:
    """A nonempty finite domain with an interpretation of atoms as subsets.

    Atoms missing from ``interp`` denote the empty set.  Extensions are kept
    as integer bitmasks over the domain order, so counting an intersection
    is a popcount.
    """

    __slots__ = ("domain", "interp", "_index", "_masks", "_full")

    def __init__(self, domain: Iterable[str], interp: Mapping[str, Iterable[str]] | None = None):
        domain = tuple(domain)
        if not domain:
            raise InputError("a structure needs a nonempty domain")
        if len(set(domain)) != len(domain):
            raise InputError("duplicate element names in domain")
        self.domain = domain
        self._index = {e: k for k, e in enumerate(domain)}
        self._full = (1 << len(domain)) - 1
        cleaned = {}
        masks = {}
        for atom, elems in (interp or {}).items():
            elems = frozenset(elems)
            stray = elems - self._index.keys()
            if stray:
                raise InputError(f"atom {atom!r} mentions unknown elements {sorted(stray)}")
            cleaned[atom] = elems
            m = 0
            for e in elems:
                m |= 1 << self._index[e]
            masks[atom] = m
        self.interp = cleaned
        self._masks = masks

    def __len__(self):
        return len(self.domain)

    def __eq__(self, other):
        if not isinstance(other, Structure):
            return NotImplemented
        return (self.domain == other.domain
                and {a: s for a, s in self.interp.items() if s} == {a: s for a, s in other.interp.items() if s})

    def __repr__(self):
        return f"Structure(domain={len(self.domain)} elements, atoms={sorted(self.interp)})"

    def atoms_of(self, element: str) -> frozenset[str]:
        return frozenset(a for a, s in self.interp.items() if element in s)

    def mask(self, literal: Literal) -> int:
        m = self._masks.get(literal.atom, 0)
        return m if literal.positive else self._full & ~m

    def elements(self, mask: int) -> frozenset[str]:
        return frozenset(e for k, e in enumerate(self.domain) if mask >> k & 1)

    def count(self, first: Literal, second: Literal) -> int:
        return (self.mask(first) & self.mask(second)).bit_count()

    def restrict(self, elements: Iterable[str]) -> "Structure":
        wanted = set(elements)
        keep = [e for e in self.domain if e in wanted]
        return Structure(keep, {a: s & wanted for a, s in self.interp.items()})


def extension(structure: Structure, literal: Literal) -> frozenset[str]:
    return structure.elements(structure.mask(literal))


def evaluate(structure: Structure, phi: Formula) -> bool:
    n = structure.count(*phi.args)
    return n <= phi.bound if phi.quantifier is AT_MOST else n > phi.bound


@dataclass
class ModelCheck:
    holds: bool
    failing: Formula | None = None

    def __bool__(self):
        return self.holds


def models_set(structure: Structure, formulas: Iterable[Formula]) -> ModelCheck:
    """Check every formula; on failure report the first one in canonical order."""
    for phi in sorted(formulas):
        if not evaluate(structure, phi):
            return ModelCheck(False, phi)
    return ModelCheck(True)


def theory_of(structure: Structure, atoms: Iterable[str], lang: LanguageId) -> frozenset[Formula]:
    """All formulas of ``lang`` over ``atoms`` true in ``structure``."""
    atoms = frozenset(atoms)
    if not atoms:
        raise InputError("atom set must be nonempty")
    if not lang.bounded:
        raise InputError(f"{lang} is unbounded; pick S_z or S†_z")
    out = []
    for a, b in argument_pairs(atoms, lang):
        n = structure.count(a, b)
        for i in range(lang.z + 1):
            out.append(Formula(AT_MOST if n <= i else MORE_THAN, i, a, b))
    return frozenset(out)
