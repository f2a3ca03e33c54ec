"""Figures for the counterexample reports, rendered off-screen to files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .semantics import Structure  # noqa: E402


def _family(element: str) -> str:
    return element.split("_", 1)[0]


def incidence_matrix(structure: Structure, atoms) -> tuple[np.ndarray, list[str]]:
    """0/1 matrix with one row per element and one column per atom."""
    elems = sorted(structure.domain, key=lambda e: (_family(e), e))
    mat = np.zeros((len(elems), len(atoms)), dtype=np.uint8)
    for r, e in enumerate(elems):
        inside = structure.atoms_of(e)
        for c, a in enumerate(atoms):
            mat[r, c] = a in inside
    return mat, elems


def plot_incidence(structure: Structure, atoms, path, title: str | None = None) -> Path:
    mat, elems = incidence_matrix(structure, atoms)
    height = min(40.0, 2.0 + 0.04 * len(elems))
    fig, ax = plt.subplots(figsize=(max(6.0, 0.35 * len(atoms)), height))
    ax.imshow(mat, aspect="auto", interpolation="nearest", cmap="Greys")
    ax.set_xticks(range(len(atoms)))
    ax.set_xticklabels(atoms, rotation=90, fontsize=7)
    # label only the first row of each element family
    ticks, labels, last = [], [], None
    for r, e in enumerate(elems):
        fam = _family(e)
        if fam != last:
            ticks.append(r)
            labels.append(fam if fam in ("b", "c", "d") else e)
            last = fam
    ax.set_yticks(ticks)
    ax.set_yticklabels(labels, fontsize=7)
    ax.set_xlabel("atom")
    ax.set_ylabel("element")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_claim_timings(reports, path, title: str = "claim checks") -> Path:
    labels = [f"{r.claim} (n={r.n},z={r.z},{r.lang})" for r in reports]
    secs = [r.seconds for r in reports]
    colours = ["tab:green" if r.verdict else "tab:red" for r in reports]
    fig, ax = plt.subplots(figsize=(7, 0.45 * len(reports) + 1.5))
    ax.barh(range(len(reports)), secs, color=colours)
    ax.set_yticks(range(len(reports)))
    ax.set_yticklabels(labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_group_sizes(groups: dict, path, title: str = "formula groups") -> Path:
    names = list(groups)
    sizes = [len(groups[k]) for k in names]
    fig, ax = plt.subplots(figsize=(8, 3.5))
    ax.bar(range(len(names)), sizes, color="tab:blue")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=60, fontsize=8)
    ax.set_ylabel("formulas")
    ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
