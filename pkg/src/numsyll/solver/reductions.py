"""Gadgets behind the NP-hardness of satisfiability for S_1.

``reduce_3col`` maps a graph to a set of formulas in S_1 extended with
"at most 3 p are p"; ``reduce_T_to_S1`` removes those extra forms with two
fresh atoms each.
"""

from __future__ import annotations

import networkx as nx

from ..errors import InputError
from ..semantics import Structure
from ..syntax import AT_MOST, Formula, at_most, atoms_of, in_language, more_than, S


def is_cardinality_three(phi: Formula) -> bool:
    a, b = phi.args
    return phi.quantifier is AT_MOST and phi.bound == 3 and a == b and a.positive


def _fresh_names(taken, count):
    out, k = [], 1
    while len(out) < count:
        name = f"o__g{k}"
        if name not in taken:
            out.append(name)
        k += 1
    return out


def reduce_T_to_S1(formulas) -> list[Formula]:
    """Replace each ``<=3(p,p)`` by {<=1(p,~o), <=1(o,o'), <=1(o,~o')} with fresh o, o'."""
    formulas = list(formulas)
    s1 = S(1)
    for phi in formulas:
        if not (is_cardinality_three(phi) or in_language(phi, s1)):
            raise InputError(f"{phi} is neither in S_1 nor of the form <=3(p,p)")
    targets = [phi for phi in formulas if is_cardinality_three(phi)]
    fresh = iter(_fresh_names(atoms_of(formulas), 2 * len(targets)))
    out: list[Formula] = []
    for phi in formulas:
        if not is_cardinality_three(phi):
            if phi not in out:
                out.append(phi)
            continue
        p = phi.args[0]
        o, o2 = next(fresh), next(fresh)
        out.extend([at_most(1, p, "~" + o), at_most(1, o, o2), at_most(1, o, "~" + o2)])
    return out


def expand_T_model(structure: Structure, formulas) -> Structure:
    """Interpret the fresh atoms of ``reduce_T_to_S1(formulas)`` in a model of ``formulas``.

    For each replaced ``<=3(p,p)``, o takes the first two elements of p and o'
    the first of those, which satisfies the replacement whenever |p| <= 3.
    """
    formulas = list(formulas)
    targets = [phi for phi in formulas if is_cardinality_three(phi)]
    fresh = iter(_fresh_names(atoms_of(formulas), 2 * len(targets)))
    interp = dict(structure.interp)
    for phi in targets:
        members = [e for e in structure.domain if e in structure.interp.get(phi.args[0].atom, ())]
        interp[next(fresh)] = set(members[:2])
        interp[next(fresh)] = set(members[:1])
    return Structure(structure.domain, interp)


def vertex_atom(k: int) -> str:
    return f"v{k}"


def reduce_3col(graph: nx.Graph, colour_atom: str = "c") -> list[Formula]:
    """Formulas satisfiable exactly when ``graph`` is 3-colourable.

    Each vertex atom holds exactly one element, inside the colour atom c;
    adjacent vertices get different elements; and c holds at most three.
    """
    if graph.number_of_nodes() == 0:
        raise InputError("graph needs at least one vertex")
    if nx.number_of_selfloops(graph):
        raise InputError("self-loops cannot be coloured")
    nodes = sorted(graph.nodes)
    name = {v: vertex_atom(k) for k, v in enumerate(nodes, 1)}
    out = [at_most(3, colour_atom, colour_atom)]
    for v in nodes:
        a = name[v]
        out += [more_than(0, a, a), at_most(1, a, a), at_most(0, a, "~" + colour_atom)]
    for u, v in sorted(tuple(sorted((name[u], name[v]))) for u, v in graph.edges):
        out.append(at_most(0, u, v))
    return out
