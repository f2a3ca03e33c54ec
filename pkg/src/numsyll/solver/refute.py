"""Witness-chain refutation.

A cheap, sound but incomplete UNSAT check.  Each more-than-0 fact gets a
named witness.  At-most-0 facts of shape (p, ~q) read as p ⊆ q and push
literals onto witnesses; at-most-1 facts on positive pairs force two
witnesses in the same region to be the same element, which is tracked with
union-find; at-most-0 facts on positive pairs forbid any witness in the
region.  The engine reports UNSAT on the first violation and never claims
SAT.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from networkx.utils import UnionFind

from ..syntax import Formula, Literal


@dataclass
class Refutation:
    verdict: str  # "unsat" or "unknown"
    trace: list[str] = field(default_factory=list)
    violated: Formula | None = None
    witnesses: int = 0

    @property
    def unsat(self) -> bool:
        return self.verdict == "unsat"


def _region(phi):
    a, b = phi.args
    return frozenset((a, b))


def refute_witness_chain(formulas) -> Refutation:
    formulas = sorted(set(formulas))
    implies: dict[Literal, list[tuple[Literal, Formula]]] = {}
    forbidden: list[tuple[frozenset, Formula]] = []
    budgets: list[tuple[frozenset, Formula]] = []
    seeds: list[Formula] = []
    for phi in formulas:
        a, b = phi.args
        if phi.is_more_than:
            if phi.bound == 0:
                seeds.append(phi)
            continue
        if phi.bound == 0 and a.positive != b.positive and a.atom != b.atom:
            p, nq = (a, b) if a.positive else (b, a)
            implies.setdefault(p, []).append((~nq, phi))
            implies.setdefault(nq, []).append((~p, phi))
        elif a.positive and b.positive and phi.bound in (0, 1):
            (forbidden if phi.bound == 0 else budgets).append((_region(phi), phi))

    trace: list[str] = []
    names = [f"a_{k}" for k in range(len(seeds))]
    uf = UnionFind(names)
    members: dict[str, set[Literal]] = {}
    for name, phi in zip(names, seeds):
        members[name] = set(phi.args)
        trace.append(f"witness {name} for {phi}: {name} ∈ {phi.args[0]} ∩ {phi.args[1]}")

    def label(root):
        group = sorted(uf.to_sets(), key=len)
        for g in group:
            if root in g:
                return "=".join(sorted(g, key=lambda s: int(s[2:])))
        return root

    def fail(msg, phi=None):
        trace.append(msg)
        return Refutation("unsat", trace, phi, len(seeds))

    changed = True
    while changed:
        changed = False
        roots = sorted({uf[n] for n in names}, key=lambda s: int(s[2:]))
        # saturate memberships through the subset facts
        for r in roots:
            lits = members[r]
            stack = sorted(lits)
            while stack:
                l = stack.pop()
                for m, phi in implies.get(l, ()):
                    if m not in lits:
                        lits.add(m)
                        stack.append(m)
                        trace.append(f"{r} ∈ {m} by {phi}")
            for l in sorted(lits):
                if l.positive and ~l in lits:
                    return fail(f"violation: {label(r)} satisfies both {l} and {~l}")
        for r in roots:
            for region, phi in forbidden:
                if region <= members[r]:
                    return fail(f"violation: {label(r)} lies in the region of {phi}", phi)
        for region, phi in budgets:
            inside = [r for r in roots if uf[r] == r and region <= members[r]]
            if len(inside) < 2:
                continue
            keep = inside[0]
            for other in inside[1:]:
                uf.union(keep, other)
                root = uf[keep]
                merged = members.pop(keep) | members.pop(other)
                members[root] = merged
                trace.append(f"merge {keep} and {other} by {phi}")
                keep = root
            changed = True
            break
    return Refutation("unknown", trace, None, len(seeds))
