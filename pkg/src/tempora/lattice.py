"""Temporal/rhetorical relation type hierarchy with meet and join.

The hierarchy is a tree rooted at ``any_rel`` plus an explicit ``bottom``
element, which makes meet total: two incomparable nodes meet at bottom, and
callers translate bottom into an inconsistency.  Rhetorical relations such as
``cause`` or ``background`` sit below one of the four core temporal relations,
so every non-trivial node projects onto a core temporal relation.

Both the hierarchy and the cue-word lexicon are loaded from small data files
so they can be revised without code changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .model import CORE_RELATIONS, DiscourseInputError

TOP = "any_rel"
BOTTOM = "bottom"


class LatticeError(ValueError):
    """Malformed hierarchy or lookup of an unknown node."""


@dataclass(frozen=True)
class RelationLattice:
    """Partial order over relation names, with glb/lub operations."""

    parent: dict[str, str]  # child name -> parent name; TOP has no entry

    def __post_init__(self) -> None:
        for child, par in self.parent.items():
            if par != TOP and par not in self.parent:
                raise LatticeError(f"node {child!r} has unknown parent {par!r}")
        # ancestor chains are precomputed once; the lattice is immutable
        chains: dict[str, tuple[str, ...]] = {TOP: (TOP,)}
        for name in self.parent:
            chain = [name]
            seen = {name}
            while chain[-1] != TOP:
                nxt = self.parent[chain[-1]]
                if nxt in seen:
                    raise LatticeError(f"cycle through {nxt!r}")
                chain.append(nxt)
                seen.add(nxt)
            chains[name] = tuple(chain)
        object.__setattr__(self, "_chains", chains)

    @property
    def nodes(self) -> tuple[str, ...]:
        """All proper nodes (excluding bottom), top first, then sorted."""
        rest = sorted(self.parent)
        return (TOP, *rest)

    def is_node(self, name: str) -> bool:
        return name == TOP or name in self.parent

    def _chain(self, name: str) -> tuple[str, ...]:
        try:
            return self._chains[name]  # type: ignore[attr-defined]
        except KeyError:
            raise LatticeError(f"unknown relation node {name!r}") from None

    def subsumes(self, upper: str, lower: str) -> bool:
        """True when ``upper`` dominates (or equals) ``lower``."""
        if lower == BOTTOM:
            return True
        if upper == BOTTOM:
            return False
        return upper in self._chain(lower)

    def meet(self, a: str, b: str) -> str:
        """Greatest lower bound; ``bottom`` when the nodes are incomparable."""
        if a == BOTTOM or b == BOTTOM:
            return BOTTOM
        if self.subsumes(a, b):
            return b
        if self.subsumes(b, a):
            return a
        return BOTTOM

    def join(self, a: str, b: str) -> str:
        """Least upper bound (total: ``any_rel`` dominates everything)."""
        if a == BOTTOM:
            return b
        if b == BOTTOM:
            return a
        chain_b = set(self._chain(b))
        for node in self._chain(a):
            if node in chain_b:
                return node
        return TOP

    def temporal_projection(self, r: str) -> str:
        """The core temporal relation a node refines.

        Undefined for ``any_rel`` (callers keep the option set instead) and
        for ``bottom``.
        """
        if r in (TOP, BOTTOM):
            raise LatticeError(f"no temporal projection for {r!r}")
        for node in self._chain(r):
            if node in CORE_RELATIONS:
                return node
        raise LatticeError(f"node {r!r} does not refine a core temporal relation")


@dataclass(frozen=True)
class CueLexicon:
    """Map from cue token to the relation node it marks."""

    mapping: dict[str, str]

    def relation_for(self, token: str) -> str:
        try:
            return self.mapping[token]
        except KeyError:
            raise DiscourseInputError(f"unknown cue token {token!r}") from None

    def __contains__(self, token: str) -> bool:
        return token in self.mapping


def load_lattice(path: str | Path) -> RelationLattice:
    """Read a hierarchy file: one ``child parent`` pair per line, # comments."""
    parent: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise LatticeError(f"{path}:{lineno}: expected 'child parent', got {raw!r}")
        child, par = parts
        if child in (TOP, BOTTOM):
            raise LatticeError(f"{path}:{lineno}: {child!r} cannot be redefined")
        parent[child] = par
    lattice = RelationLattice(parent=parent)
    missing = [r for r in CORE_RELATIONS if not lattice.is_node(r)]
    if missing:
        raise LatticeError(f"{path}: hierarchy lacks core relations {missing}")
    return lattice


def load_cues(path: str | Path, lattice: RelationLattice) -> CueLexicon:
    """Read a cue lexicon file: ``token node`` per line, # comments."""
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise LatticeError(f"{path}:{lineno}: expected 'token node', got {raw!r}")
        token, node = parts
        if token != token.lower():
            raise LatticeError(f"{path}:{lineno}: cue tokens must be lowercase")
        if not lattice.is_node(node):
            raise LatticeError(f"{path}:{lineno}: unknown relation node {node!r}")
        mapping[token] = node
    return CueLexicon(mapping=mapping)


def cue_relation(lex: CueLexicon, token: str) -> str:
    return lex.relation_for(token)
