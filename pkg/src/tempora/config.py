"""Analyzer configuration: constraint data, lexicons, weights, and flags."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from .centering import PreferenceWeights
from .closeness import ClosenessLexicon, load_closeness
from .constraints import FeasibilityTable, load_table
from .lattice import CueLexicon, RelationLattice, load_cues, load_lattice

DATA_ENV_VAR = "TEMPORA_DATA"

LATTICE_FILE = "lattice.txt"
CUES_FILE = "cues.txt"
TABLE_FILE = "feasibility.txt"
CLOSENESS_FILE = "closeness.tsv"


@dataclass(frozen=True)
class AnalyzerConfig:
    lattice: RelationLattice
    cues: CueLexicon
    table: FeasibilityTable
    closeness: ClosenessLexicon
    weights: PreferenceWeights = field(default_factory=PreferenceWeights)
    allow_marginal: bool = False
    tier_prune: bool = True

    def with_flags(self, **kwargs) -> "AnalyzerConfig":
        return replace(self, **kwargs)


def default_data_dir() -> Path:
    """Shipped data directory, overridable through TEMPORA_DATA."""
    override = os.environ.get(DATA_ENV_VAR)
    if override:
        return Path(override)
    return Path(os.fspath(resources.files("tempora") / "data"))


def discourse_dir() -> Path:
    return default_data_dir() / "discourses"


def load_config(
    *,
    data_dir: str | Path | None = None,
    lattice_path: str | Path | None = None,
    cues_path: str | Path | None = None,
    table_path: str | Path | None = None,
    closeness_path: str | Path | None = None,
    weights: PreferenceWeights | None = None,
    allow_marginal: bool = False,
    tier_prune: bool = True,
) -> AnalyzerConfig:
    base = Path(data_dir) if data_dir is not None else default_data_dir()
    lattice = load_lattice(lattice_path or base / LATTICE_FILE)
    return AnalyzerConfig(
        lattice=lattice,
        cues=load_cues(cues_path or base / CUES_FILE, lattice),
        table=load_table(table_path or base / TABLE_FILE),
        closeness=load_closeness(closeness_path or base / CLOSENESS_FILE),
        weights=weights or PreferenceWeights(),
        allow_marginal=allow_marginal,
        tier_prune=tier_prune,
    )
