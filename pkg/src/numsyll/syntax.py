"""Literals, counting formulas and the languages S_z, S†_z, N and N†.

A formula ``Q_i(l, m)`` is a counting quantifier (at most / more than), a
nonnegative bound ``i`` and an unordered pair of literals.  Arguments are
stored in canonical order (atom name, then positive before negative) so that
``Q_i(l, m)`` and ``Q_i(m, l)`` are the same value.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import BoundError, InputError

ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


class Quantifier(enum.Enum):
    AT_MOST = "<="
    MORE_THAN = ">"

    @property
    def dual(self) -> "Quantifier":
        return Quantifier.MORE_THAN if self is Quantifier.AT_MOST else Quantifier.AT_MOST


AT_MOST = Quantifier.AT_MOST
MORE_THAN = Quantifier.MORE_THAN


def check_atom(name: str) -> str:
    if not isinstance(name, str) or not ATOM_RE.match(name):
        raise InputError(f"invalid atom name {name!r}")
    return name


@dataclass(frozen=True)
class Literal:
    """An atom (``positive=True``) or its complement."""

    atom: str
    positive: bool = True

    def __post_init__(self):
        check_atom(self.atom)

    def __invert__(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def complement(self) -> "Literal":
        return ~self

    @property
    def sort_key(self):
        return (self.atom, not self.positive)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        return self.atom if self.positive else "~" + self.atom

    @classmethod
    def parse(cls, text: str) -> "Literal":
        text = text.strip()
        if text.startswith("~"):
            return cls(text[1:].strip(), False)
        return cls(text, True)


def lit(text: str | Literal) -> Literal:
    return text if isinstance(text, Literal) else Literal.parse(text)


@dataclass(frozen=True)
class Formula:
    quantifier: Quantifier
    bound: int
    args: tuple[Literal, Literal]

    def __init__(self, quantifier: Quantifier, bound: int, first, second=None):
        if second is None:
            first, second = first
        a, b = lit(first), lit(second)
        if not isinstance(bound, int) or isinstance(bound, bool) or bound < 0:
            raise BoundError(f"bound must be a nonnegative integer, got {bound!r}")
        if b.sort_key < a.sort_key:
            a, b = b, a
        object.__setattr__(self, "quantifier", Quantifier(quantifier))
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "args", (a, b))

    @property
    def left(self) -> Literal:
        return self.args[0]

    @property
    def right(self) -> Literal:
        return self.args[1]

    @property
    def is_at_most(self) -> bool:
        return self.quantifier is AT_MOST

    @property
    def is_more_than(self) -> bool:
        return self.quantifier is MORE_THAN

    def atoms(self) -> frozenset[str]:
        return frozenset((self.args[0].atom, self.args[1].atom))

    def negate(self) -> "Formula":
        return Formula(self.quantifier.dual, self.bound, self.args)

    def __neg__(self) -> "Formula":
        return self.negate()

    def rename(self, mapping) -> "Formula":
        """Apply an atom map; atoms missing from ``mapping`` are kept."""
        a, b = self.args
        return Formula(
            self.quantifier,
            self.bound,
            Literal(mapping.get(a.atom, a.atom), a.positive),
            Literal(mapping.get(b.atom, b.atom), b.positive),
        )

    @property
    def sort_key(self):
        return (self.args[0].sort_key, self.args[1].sort_key, self.bound, self.quantifier.value)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        return f"{self.quantifier.value}{self.bound}({self.args[0]},{self.args[1]})"

    def __repr__(self):
        return f"Formula({str(self)!r})"


def at_most(bound: int, first, second) -> Formula:
    return Formula(AT_MOST, bound, first, second)


def more_than(bound: int, first, second) -> Formula:
    return Formula(MORE_THAN, bound, first, second)


def negate(phi: Formula) -> Formula:
    return phi.negate()


def is_absurdity(phi: Formula) -> bool:
    a, b = phi.args
    return phi.is_more_than and a.atom == b.atom and a.positive != b.positive


def absurdity(atom: str = "a") -> Formula:
    return more_than(0, Literal(atom), Literal(atom, False))


def atoms_of(formulas: Iterable[Formula]) -> frozenset[str]:
    out: set[str] = set()
    for phi in formulas:
        out.update(phi.atoms())
    return frozenset(out)


def expand_star(kind: str, i: int, z: int, first, second) -> frozenset[Formula]:
    """Expand the starred abbreviations ``∃*≤i``, ``∃*>i`` and ``∃*=i``.

    ``∃*≤i`` is {≤i, …, ≤z}; ``∃*>i`` is {>0, …, >i}; ``∃*=i`` is
    {>0, …, >i-1, ≤i, …, ≤z}.
    """
    if kind in ("<=", "≤", "le"):
        if not 0 <= i <= z:
            raise BoundError(f"∃*<= needs 0 <= i <= z, got i={i}, z={z}")
        return frozenset(at_most(k, first, second) for k in range(i, z + 1))
    if kind in (">", "gt"):
        if not 0 <= i <= z:
            raise BoundError(f"∃*> needs 0 <= i <= z, got i={i}, z={z}")
        return frozenset(more_than(k, first, second) for k in range(0, i + 1))
    if kind in ("=", "eq"):
        if not 0 < i <= z:
            raise BoundError(f"∃*= needs 0 < i <= z, got i={i}, z={z}")
        return expand_star(">", i - 1, z, first, second) | expand_star("<=", i, z, first, second)
    raise InputError(f"unknown star kind {kind!r}")


FAMILIES = ("S", "Sdagger", "N", "Ndagger")


@dataclass(frozen=True)
class LanguageId:
    """One of S_z, S†_z, or the unbounded unions N and N†."""

    family: str
    z: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown language family {self.family!r}")
        if self.bounded:
            if self.z is None or self.z < 0:
                raise InputError(f"{self.family} needs a nonnegative z")
        else:
            object.__setattr__(self, "z", None)

    @property
    def bounded(self) -> bool:
        return self.family in ("S", "Sdagger")

    @property
    def allows_double_negative(self) -> bool:
        return self.family in ("Sdagger", "Ndagger")

    def __str__(self):
        names = {"S": "S", "Sdagger": "S†", "N": "N", "Ndagger": "N†"}
        return names[self.family] + (f"_{self.z}" if self.bounded else "")

    @classmethod
    def parse(cls, lang: str, z: int | None = None) -> "LanguageId":
        key = lang.strip().lower()
        table = {"s": "S", "sd": "Sdagger", "sdagger": "Sdagger", "s†": "Sdagger",
                 "n": "N", "nd": "Ndagger", "ndagger": "Ndagger", "n†": "Ndagger"}
        if key not in table:
            raise InputError(f"unknown language {lang!r}")
        return cls(table[key], z)


def S(z: int) -> LanguageId:
    return LanguageId("S", z)


def Sdagger(z: int) -> LanguageId:
    return LanguageId("Sdagger", z)


def in_language(phi: Formula, lang: LanguageId) -> bool:
    if lang.bounded and phi.bound > lang.z:
        return False
    if not lang.allows_double_negative:
        return phi.args[0].positive or phi.args[1].positive
    return True


def literals_over(atoms: Iterable[str]) -> list[Literal]:
    out = []
    for a in sorted(set(atoms)):
        out.append(Literal(a, True))
        out.append(Literal(a, False))
    return out


def argument_pairs(atoms: Iterable[str], lang: LanguageId) -> Iterator[tuple[Literal, Literal]]:
    """Canonical unordered literal pairs admissible in ``lang`` over ``atoms``."""
    lits = literals_over(atoms)
    for a, b in itertools.combinations_with_replacement(lits, 2):
        if lang.allows_double_negative or a.positive or b.positive:
            yield a, b


def formulas_over(atoms: Iterable[str], lang: LanguageId) -> list[Formula]:
    """All formulas of L(P') in canonical order."""
    if not lang.bounded:
        raise InputError(f"{lang} has infinitely many formulas over a finite atom set")
    out = []
    for a, b in argument_pairs(atoms, lang):
        for i in range(lang.z + 1):
            out.append(Formula(AT_MOST, i, a, b))
            out.append(Formula(MORE_THAN, i, a, b))
    return out


@dataclass
class CompletenessReport:
    complete: bool
    exactly_one: bool
    missing: list[Formula] = field(default_factory=list)
    both: list[Formula] = field(default_factory=list)

    def __bool__(self):
        return self.complete


def is_complete_set(formulas: Iterable[Formula], atoms: Iterable[str], lang: LanguageId) -> CompletenessReport:
    """Check that ``formulas`` holds φ or its negation for every φ of L(P').

    ``missing`` lists, for every unrepresented complement pair, its at-most
    member; ``both`` lists the at-most member of every pair present twice.
    """
    atoms = frozenset(atoms)
    formulas = frozenset(formulas)
    if not atoms:
        raise InputError("atom set must be nonempty")
    for phi in formulas:
        if not phi.atoms() <= atoms:
            raise InputError(f"{phi} uses atoms outside the given set")
        if not in_language(phi, lang):
            raise InputError(f"{phi} is not a formula of {lang}")
    missing, both = [], []
    for phi in formulas_over(atoms, lang):
        if not phi.is_at_most:
            continue
        has, has_neg = phi in formulas, phi.negate() in formulas
        if not has and not has_neg:
            missing.append(phi)
        elif has and has_neg:
            both.append(phi)
    return CompletenessReport(not missing, not missing and not both, missing, both)
