"""Exhaustive search over cell vectors.

Every vector of per-cell counts in ``0..cell_cap`` with total in
``1..total_cap`` is a candidate model.  Small search spaces are enumerated
in vectorised chunks; larger ones fall back to a depth-first walk that only
cuts branches which provably cannot reach a model.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import ResourceLimitError
from ..syntax import atoms_of
from .model import Cell, CellVector, SatResult

VECTOR_LIMIT = 1 << 22
CHUNK = 1 << 18


def _regions(formulas, atoms, cells):
    """Boolean matrix: cell k lies in the argument intersection of formula f."""
    reg = np.zeros((len(cells), len(formulas)), dtype=np.int64)
    for f, phi in enumerate(formulas):
        a, b = phi.args
        for k, cell in enumerate(cells):
            reg[k, f] = cell.satisfies(a) and cell.satisfies(b)
    return reg


def brute_force(formulas, z, *, cell_cap=None, total_cap=None, max_atoms=5, max_nodes=10**7):
    formulas = sorted(set(formulas))
    atoms = sorted(atoms_of(formulas))
    if len(atoms) > max_atoms:
        raise ResourceLimitError(f"brute engine handles at most {max_atoms} atoms, got {len(atoms)}")
    cap = z + 1 if cell_cap is None else cell_cap
    if total_cap is None:
        total_cap = max(1, (z + 1) * len(formulas))
    cells = [Cell(frozenset(a for a, v in zip(atoms, bits) if v))
             for bits in itertools.product((False, True), repeat=len(atoms))]
    reg = _regions(formulas, atoms, cells)
    bounds = np.array([phi.bound for phi in formulas], dtype=np.int64)
    upper = np.array([phi.is_at_most for phi in formulas], dtype=bool)

    space = (cap + 1) ** len(cells)
    if space <= VECTOR_LIMIT:
        if space > max_nodes:
            raise ResourceLimitError(f"brute search space {space} exceeds node budget {max_nodes}", space)
        counts, nodes = _vectorised(len(cells), cap, total_cap, reg, bounds, upper, space)
    else:
        counts, nodes = _depth_first(len(cells), cap, total_cap, reg, bounds, upper, max_nodes)
    if counts is None:
        return SatResult("unsat", "brute", nodes=nodes)
    model = CellVector(tuple(atoms), {c: int(n) for c, n in zip(cells, counts) if n})
    return SatResult("sat", "brute", model=model, nodes=nodes)


def _vectorised(ncells, cap, total_cap, reg, bounds, upper, space):
    radix = cap + 1
    powers = radix ** np.arange(ncells, dtype=np.int64)
    best, best_total = None, None
    for start in range(0, space, CHUNK):
        idx = np.arange(start, min(space, start + CHUNK), dtype=np.int64)
        counts = (idx[:, None] // powers[None, :]) % radix
        totals = counts.sum(axis=1)
        sums = counts @ reg
        ok = (totals >= 1) & (totals <= total_cap)
        if len(bounds):
            ok &= np.where(upper[None, :], sums <= bounds[None, :], sums > bounds[None, :]).all(axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            k = hits[np.argmin(totals[hits])]
            if best is None or totals[k] < best_total:
                best, best_total = counts[k].copy(), totals[k]
    return best, space


def _depth_first(ncells, cap, total_cap, reg, bounds, upper, max_nodes):
    # decide cells that can serve more-than demands first, so that budget
    # conflicts surface near the root
    demand = reg[:, ~upper].sum(axis=1) if len(bounds) else np.zeros(ncells, dtype=np.int64)
    order = sorted(range(ncells), key=lambda k: (-int(demand[k]), -int(reg[k].sum()), k))
    counts, nodes = _walk(ncells, cap, total_cap, reg[order], bounds, upper, max_nodes)
    if counts is None:
        return None, nodes
    out = [0] * ncells
    for pos, k in enumerate(order):
        out[k] = counts[pos]
    return out, nodes


def _walk(ncells, cap, total_cap, reg, bounds, upper, max_nodes):
    nf = len(bounds)
    # a cell inside the region of <=i holds at most i elements
    cell_max = np.full(ncells, cap, dtype=np.int64)
    for f in range(nf):
        if upper[f]:
            cell_max = np.where(reg[:, f] == 1, np.minimum(cell_max, bounds[f]), cell_max)
    # remaining[k, f]: capacity of the region of f at positions >= k
    remaining = np.zeros((ncells + 1, nf), dtype=np.int64)
    for k in range(ncells - 1, -1, -1):
        remaining[k] = remaining[k + 1] + reg[k] * cell_max[k]
    cell_max_l = cell_max.tolist()
    reg_l = reg.tolist()
    rem_l = remaining.tolist()
    bounds_l = bounds.tolist()
    upper_l = upper.tolist()
    counts = [0] * ncells
    sums = [0] * nf
    nodes = 0

    def viable(k, total):
        room = total_cap - total
        for f in range(nf):
            if upper_l[f]:
                if sums[f] > bounds_l[f]:
                    return False
            elif sums[f] + min(room, rem_l[k][f]) <= bounds_l[f]:
                return False
        return True

    def walk(k, total):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise ResourceLimitError(f"brute search exceeded node budget {max_nodes}", nodes)
        if not viable(k, total):
            return False
        if k == ncells:
            return total >= 1
        row = reg_l[k]
        for n in range(0, min(cell_max_l[k], total_cap - total) + 1):
            counts[k] = n
            for f in range(nf):
                if row[f]:
                    sums[f] += n
            found = walk(k + 1, total + n)
            for f in range(nf):
                if row[f]:
                    sums[f] -= n
            if found:
                return True
        counts[k] = 0
        return False

    if walk(0, 0):
        return list(counts), nodes
    return None, nodes
