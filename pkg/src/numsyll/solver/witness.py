"""Complete branch-and-propagate satisfiability search.

Every more-than-``i`` formula asks for ``i + 1`` distinct witness elements
inside the intersection of its arguments.  Elements are partial valuations
of the relevant atoms.  The search places witnesses one at a time, either
into an existing element (adding the two literals) or into a fresh one, and
after each step propagates the at-most budgets: once a region holds as many
elements as its bound allows, every other element is pushed out of it.
When all witnesses are placed the remaining unassigned atoms are branched
on.  Restricting any model to a choice of witnesses gives a model, so this
search is complete.
"""

from __future__ import annotations

from ..errors import ResourceLimitError
from ..syntax import atoms_of
from .model import CellVector, SatResult


def _inside(elem, lits):
    for l in lits:
        if elem.get(l.atom) is not l.positive:
            return False
    return True


def _blocked(elem, lits):
    for l in lits:
        v = elem.get(l.atom)
        if v is not None and v is not l.positive:
            return True
    return False


class WitnessSearch:
    def __init__(self, formulas, max_nodes=10**7):
        self.formulas = sorted(set(formulas))
        self.atoms = sorted(atoms_of(self.formulas))
        self.max_nodes = max_nodes
        self.nodes = 0
        self.limits = []   # (bound, literals)
        self.demands = []  # (witnesses needed, literals)
        self.impossible = None
        for phi in self.formulas:
            a, b = phi.args
            if a.atom == b.atom and a.positive != b.positive:
                if phi.is_more_than:
                    self.impossible = phi
                continue
            lits = (a,) if a == b else (a, b)
            if phi.is_at_most:
                self.limits.append((phi.bound, lits))
            else:
                self.demands.append((phi.bound + 1, lits))
        # tightest demand first: at most one entry per region matters
        best = {}
        for need, lits in self.demands:
            best[lits] = max(need, best.get(lits, 0))
        self.demands = sorted((n, l) for l, n in best.items())
        self.max_elems = max(1, sum(n for n, _ in self.demands))

    def propagate(self, elems):
        changed = True
        while changed:
            changed = False
            for bound, lits in self.limits:
                inside = sum(1 for e in elems if _inside(e, lits))
                if inside > bound:
                    return False
                if inside < bound:
                    continue
                for e in elems:
                    open_lit, n_open = None, 0
                    for l in lits:
                        v = e.get(l.atom)
                        if v is None:
                            n_open += 1
                            open_lit = l
                        elif v is not l.positive:
                            n_open = -1
                            break
                    if n_open == 1:
                        e[open_lit.atom] = not open_lit.positive
                        changed = True
        return True

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise ResourceLimitError(f"witness search exceeded node budget {self.max_nodes}", self.nodes)

    def _choose_demand(self, elems):
        best = None
        for need, lits in self.demands:
            have = sum(1 for e in elems if _inside(e, lits))
            if have >= need:
                continue
            seen, cands = set(), []
            for k, e in enumerate(elems):
                if _inside(e, lits) or _blocked(e, lits):
                    continue
                key = frozenset(e.items())
                if key not in seen:
                    seen.add(key)
                    cands.append(k)
            room = len(elems) < self.max_elems
            options = len(cands) + room
            if best is None or options < best[0]:
                best = (options, lits, cands, room)
                if options <= 1:
                    break
        return best

    def search(self, elems):
        self._tick()
        choice = self._choose_demand(elems)
        if choice is not None:
            options, lits, cands, room = choice
            if options == 0:
                return None
            for k in cands:
                new = [dict(e) for e in elems]
                for l in lits:
                    new[k][l.atom] = l.positive
                if self.propagate(new):
                    found = self.search(new)
                    if found is not None:
                        return found
            if room:
                new = [dict(e) for e in elems] + [{l.atom: l.positive for l in lits}]
                if self.propagate(new):
                    return self.search(new)
            return None
        # all witnesses placed: complete the valuations
        if not elems:
            elems = [{}]
            if not self.propagate(elems):
                return None
        for k, e in enumerate(elems):
            for atom in self.atoms:
                if atom in e:
                    continue
                for value in (False, True):
                    new = [dict(x) for x in elems]
                    new[k][atom] = value
                    if self.propagate(new):
                        found = self.search(new)
                        if found is not None:
                            return found
                return None
        return elems

    def run(self) -> SatResult:
        if self.impossible is not None:
            return SatResult("unsat", "witness", nodes=0,
                             trace=[f"{self.impossible} has an empty argument intersection"])
        elems = self.search([])
        if elems is None:
            return SatResult("unsat", "witness", nodes=self.nodes)
        model = CellVector.from_assignments(self.atoms, elems)
        return SatResult("sat", "witness", model=model, nodes=self.nodes)


def witness_search(formulas, max_nodes=10**7) -> SatResult:
    return WitnessSearch(formulas, max_nodes).run()
