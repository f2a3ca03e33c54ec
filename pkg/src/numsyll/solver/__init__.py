"""Satisfiability and entailment for finite sets of S†_z formulas."""

from __future__ import annotations

from ..errors import InputError
from ..syntax import Formula, Sdagger, in_language
from .brute import brute_force
from .model import Cell, CellVector, SatResult
from .reductions import expand_T_model, reduce_3col, reduce_T_to_S1
from .refute import Refutation, refute_witness_chain
from .witness import WitnessSearch, witness_search

ENGINES = ("brute", "witness", "refute")
DEFAULT_MAX_NODES = 10**7

__all__ = [
    "Cell", "CellVector", "SatResult", "Refutation", "ENGINES",
    "small_model_bound", "satisfiable", "entails", "countermodel",
    "refute_witness_chain", "reduce_T_to_S1", "reduce_3col", "expand_T_model",
    "brute_force", "witness_search", "WitnessSearch",
]


def _check_language(formulas, z):
    lang = Sdagger(z)
    for phi in formulas:
        if not in_language(phi, lang):
            raise InputError(f"{phi} is not a formula of {lang}")


def small_model_bound(formulas, z: int) -> int:
    """Domain size sufficient for a model of any satisfiable set: max(1, (z+1)|Φ|)."""
    formulas = set(formulas)
    _check_language(formulas, z)
    return max(1, (z + 1) * len(formulas))


def satisfiable(formulas, z: int, engine: str = "witness", *, max_nodes: int = DEFAULT_MAX_NODES,
                max_atoms: int = 5, cell_cap: int | None = None) -> SatResult:
    formulas = frozenset(formulas)
    _check_language(formulas, z)
    if engine == "brute":
        result = brute_force(formulas, z, cell_cap=cell_cap, total_cap=small_model_bound(formulas, z),
                             max_atoms=max_atoms, max_nodes=max_nodes)
    elif engine == "witness":
        result = witness_search(formulas, max_nodes=max_nodes)
    elif engine == "refute":
        ref = refute_witness_chain(formulas)
        return SatResult(ref.verdict, "refute", nodes=ref.witnesses, trace=ref.trace)
    else:
        raise InputError(f"unknown engine {engine!r}; pick one of {ENGINES}")
    if result.sat:
        from ..semantics import models_set

        check = models_set(result.model.to_structure(), formulas)
        if not check:
            raise AssertionError(f"{engine} engine returned a non-model; {check.failing} fails")
    return result


def countermodel(premises, conclusion: Formula, z: int, engine: str = "witness", **kw):
    """A model of the premises falsifying the conclusion, or None."""
    result = satisfiable(set(premises) | {conclusion.negate()}, z, engine, **kw)
    if result.verdict == "unknown":
        raise InputError("the refute engine cannot decide entailment")
    return result.structure() if result.sat else None


def entails(premises, conclusion: Formula, z: int, engine: str = "witness", **kw) -> bool:
    return countermodel(premises, conclusion, z, engine, **kw) is None
