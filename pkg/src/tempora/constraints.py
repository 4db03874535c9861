"""Feasible attachment options for a new clause.

Two constraint sources feed the engine.  When the new clause is a simple past
event, a feasibility matrix (loaded from a data file) enumerates which core
relations are possible against each anchor category, including temporal-focus
anchors when the anchor clause is stative.  Every other clause category is
governed by four category rules keyed on tense complexity and semantic
aspect.  Explicit markers (cue words, temporal expressions) then refine or
override the option set: a temporal expression replaces it outright, and cue
relations are met against each option in the relation lattice, conflicts
discarding the option or, when nothing survives, failing the parse.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .lattice import BOTTOM, RelationLattice
from .model import (
    CORE_RELATIONS,
    JUST_AFTER,
    OVERLAP,
    PRECEDE,
    SAME_EVENT,
    TEMPFOC_TOKEN,
    AnchorKind,
    ClauseAnnotation,
    SemanticAspect,
    SyntacticAspect,
    Tense,
)

SOURCE_TABLE = "table"
SOURCE_BULLETS = "bullets"
SOURCE_TEMP_EXPR = "temp_expr"
SOURCE_CUE = "cue"

GROUP_PAST = "past"
GROUP_PAST_PERFECT = "past_perfect"

_RELATION_ORDER = {r: i for i, r in enumerate(CORE_RELATIONS)}
_ALLOW_VALUES = ("yes", "no", "marginal")


class TableError(ValueError):
    """Malformed feasibility table file."""


class ExplicitConflict(Exception):
    """Two explicit markers (or a marker and all feasible options) clash."""

    def __init__(self, site: str, first: str, second: str) -> None:
        self.site = site
        self.first = first
        self.second = second
        super().__init__(f"at {site}: {first} conflicts with {second}")


@dataclass(frozen=True)
class AttachmentOption:
    """One way to attach the new clause: an anchor plus a relation node."""

    anchor_id: str
    anchor_kind: AnchorKind
    relation: str
    source: str
    marginal: bool = False

    def sort_key(self) -> tuple[int, int, str]:
        return (_RELATION_ORDER.get(self.relation, 99), self.anchor_kind is AnchorKind.TF1, self.anchor_id)


@dataclass(frozen=True)
class S1Context:
    """The anchor side of an attachment: last clause and optional tempfoc."""

    s1: ClauseAnnotation
    tempfoc: ClauseAnnotation | None = None

    @property
    def tempfoc_id(self) -> str | None:
        return self.tempfoc.id if self.tempfoc is not None else None


@dataclass(frozen=True)
class FeasibilityTable:
    """Allowed (anchor kind, relation) cells per anchor-clause category."""

    cells: dict[tuple[str, SemanticAspect, AnchorKind, str], str]

    def allow(
        self, group: str, sem: SemanticAspect, kind: AnchorKind, relation: str
    ) -> str:
        # focus-anchor rows exist only for stative categories; everything
        # else is implicitly disallowed
        return self.cells.get((group, sem, kind, relation), "no")


def tense_group(annotation: ClauseAnnotation) -> str | None:
    """Collapse tense/aspect into the matrix's anchor categories."""
    if annotation.tense is not Tense.PAST:
        return None
    if annotation.syn_aspect in (SyntacticAspect.PERF, SyntacticAspect.PERF_PROG):
        return GROUP_PAST_PERFECT
    return GROUP_PAST


def is_simple_past_event(annotation: ClauseAnnotation) -> bool:
    return (
        annotation.tense is Tense.PAST
        and annotation.syn_aspect is SyntacticAspect.SIMPLE
        and annotation.sem_aspect is SemanticAspect.EVENT
    )


def _complex_tense(a: ClauseAnnotation) -> bool:
    return a.syn_aspect in (SyntacticAspect.PERF, SyntacticAspect.PERF_PROG)


def _simple_tense(a: ClauseAnnotation) -> bool:
    return not _complex_tense(a)


def _state(a: ClauseAnnotation) -> bool:
    return a.sem_aspect is SemanticAspect.STATE


def _event(a: ClauseAnnotation) -> bool:
    return a.sem_aspect is SemanticAspect.EVENT


def _activity(a: ClauseAnnotation) -> bool:
    return a.sem_aspect is SemanticAspect.ACTIVITY


def _atelic(a: ClauseAnnotation) -> bool:
    return a.sem_aspect in (SemanticAspect.STATE, SemanticAspect.ACTIVITY)


def _overlap_ok(s1: ClauseAnnotation, s2: ClauseAnnotation) -> bool:
    # applied symmetrically: a state on either side licenses overlap
    return _state(s2) or _state(s1)


def _just_after_ok(s1: ClauseAnnotation, s2: ClauseAnnotation) -> bool:
    if _event(s2) and _simple_tense(s2):
        return True
    if _complex_tense(s1) and _complex_tense(s2) and _event(s2):
        return True
    if _event(s1) and (_activity(s2) or (_state(s2) and _simple_tense(s2))):
        return True
    if _state(s1) and _activity(s2) and _simple_tense(s2):
        return True
    return False


def _precede_ok(s1: ClauseAnnotation, s2: ClauseAnnotation) -> bool:
    if _event(s2):
        return True
    return not _activity(s1) and _state(s2) and s2.is_past_perfect


def _elaborate_ok(s1: ClauseAnnotation, s2: ClauseAnnotation) -> bool:
    # an anterior-tense clause cannot elaborate a simple-tense one
    if _complex_tense(s2) and _simple_tense(s1):
        return False
    if _event(s1):
        return True
    if _activity(s1) and _atelic(s2):
        return True
    return _state(s1) and _state(s2)


def feasible_simple_past_event(
    ctx: S1Context, table: FeasibilityTable, allow_marginal: bool = False
) -> list[AttachmentOption]:
    """Matrix lookup for a simple past eventive new clause."""
    group = tense_group(ctx.s1)
    if group is None:
        raise ValueError("feasibility matrix only covers past anchor clauses")
    options: list[AttachmentOption] = []
    for relation in CORE_RELATIONS:
        for kind in (AnchorKind.S1, AnchorKind.TF1):
            allow = table.allow(group, ctx.s1.sem_aspect, kind, relation)
            if allow == "no" or (allow == "marginal" and not allow_marginal):
                continue
            if kind is AnchorKind.TF1:
                if ctx.tempfoc is None:
                    continue
                anchor = ctx.tempfoc.id
            else:
                anchor = ctx.s1.id
            options.append(
                AttachmentOption(
                    anchor_id=anchor,
                    anchor_kind=kind,
                    relation=relation,
                    source=SOURCE_TABLE,
                    marginal=allow == "marginal",
                )
            )
    options.sort(key=AttachmentOption.sort_key)
    return options


def feasible_general(
    ctx: S1Context,
    s2: ClauseAnnotation,
    table: FeasibilityTable,
    allow_marginal: bool = False,
) -> list[AttachmentOption]:
    """All feasible options for attaching ``s2`` against ``ctx``.

    The matrix overrides the category rules when it applies; an empty result
    is legal and means the clause can only start a new thread.
    """
    if is_simple_past_event(s2) and tense_group(ctx.s1) is not None:
        return feasible_simple_past_event(ctx, table, allow_marginal)

    s1 = ctx.s1
    stative_anchor = _state(s1)
    focus = ctx.tempfoc_id
    options: list[AttachmentOption] = []

    def add(relation: str, anchor_id: str, kind: AnchorKind) -> None:
        options.append(
            AttachmentOption(
                anchor_id=anchor_id,
                anchor_kind=kind,
                relation=relation,
                source=SOURCE_BULLETS,
            )
        )

    # relations that move the narrative anchor at the temporal focus when
    # the latest clause is stative; overlap always holds of the clause itself
    if _overlap_ok(s1, s2):
        add(OVERLAP, s1.id, AnchorKind.S1)
    if _just_after_ok(s1, s2):
        if not stative_anchor:
            add(JUST_AFTER, s1.id, AnchorKind.S1)
        elif focus is not None:
            add(JUST_AFTER, focus, AnchorKind.TF1)
    if _precede_ok(s1, s2):
        if not stative_anchor:
            add(PRECEDE, s1.id, AnchorKind.S1)
        elif focus is not None:
            add(PRECEDE, focus, AnchorKind.TF1)
    if _elaborate_ok(s1, s2):
        add(SAME_EVENT, s1.id, AnchorKind.S1)
    if stative_anchor and ctx.tempfoc is not None and _elaborate_ok(ctx.tempfoc, s2):
        add(SAME_EVENT, ctx.tempfoc.id, AnchorKind.TF1)

    options.sort(key=AttachmentOption.sort_key)
    return options


def apply_explicit(
    options: list[AttachmentOption],
    cue: str | None,
    tx,  # TempExprDirective | None
    lattice: RelationLattice,
    *,
    site: str,
    cue_token: str | None = None,
    default_anchor: str | None = None,
    tempfoc_id: str | None = None,
) -> list[AttachmentOption]:
    """Refine options with explicit markers.

    A temporal expression replaces the option set with its single directed
    relation (defaults are ignored); a cue relation is met against each
    option, dropping inconsistent ones.  An explicit pair that meets at
    bottom, or a cue that eliminates every option, raises ExplicitConflict.
    """
    cue_name = f"cue {cue_token or cue!r}" if cue is not None else None
    if tx is not None:
        anchor = tx.anchor
        kind = AnchorKind.S1
        if anchor is None:
            anchor = default_anchor
        elif anchor == TEMPFOC_TOKEN:
            anchor = tempfoc_id
            kind = AnchorKind.TF1
        if anchor is None:
            raise ExplicitConflict(
                site,
                f"temporal expression {tx.relation!r}",
                "no available anchor (thread has no temporal focus)",
            )
        relation = tx.relation
        if cue is not None:
            met = lattice.meet(relation, cue)
            if met == BOTTOM:
                raise ExplicitConflict(
                    site,
                    f"temporal expression {tx.relation!r}",
                    cue_name,
                )
            relation = met
        return [
            AttachmentOption(
                anchor_id=anchor,
                anchor_kind=kind,
                relation=relation,
                source=SOURCE_CUE if cue is not None else SOURCE_TEMP_EXPR,
            )
        ]

    if cue is None:
        return list(options)

    refined: list[AttachmentOption] = []
    for opt in options:
        met = lattice.meet(opt.relation, cue)
        if met == BOTTOM:
            continue
        refined.append(
            AttachmentOption(
                anchor_id=opt.anchor_id,
                anchor_kind=opt.anchor_kind,
                relation=met,
                source=SOURCE_CUE,
                marginal=opt.marginal,
            )
        )
    if options and not refined:
        feasible = ", ".join(sorted({o.relation for o in options}))
        raise ExplicitConflict(site, cue_name, f"feasible relations {{{feasible}}}")
    return refined


def load_table(path: str | Path) -> FeasibilityTable:
    """Read the feasibility matrix.

    Line format: ``s1=<group>,<sem> anchor=<s1|tf1> rel=<relation>
    allow=<yes|no|marginal>``; focus rows are only legal for stative
    categories.
    """
    cells: dict[tuple[str, SemanticAspect, AnchorKind, str], str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields: dict[str, str] = {}
        for part in line.split():
            if "=" not in part:
                raise TableError(f"{path}:{lineno}: expected key=value, got {part!r}")
            key, value = part.split("=", 1)
            fields[key] = value
        missing = {"s1", "anchor", "rel", "allow"} - fields.keys()
        if missing:
            raise TableError(f"{path}:{lineno}: missing {sorted(missing)}")
        extra = fields.keys() - {"s1", "anchor", "rel", "allow"}
        if extra:
            raise TableError(f"{path}:{lineno}: unknown keys {sorted(extra)}")
        try:
            group, sem_token = fields["s1"].split(",")
        except ValueError:
            raise TableError(f"{path}:{lineno}: s1 must be <group>,<sem>") from None
        if group not in (GROUP_PAST, GROUP_PAST_PERFECT):
            raise TableError(f"{path}:{lineno}: unknown tense group {group!r}")
        sem = SemanticAspect.parse(sem_token)
        kind = AnchorKind(fields["anchor"])
        if kind is AnchorKind.TF1 and sem is not SemanticAspect.STATE:
            raise TableError(f"{path}:{lineno}: focus anchors require a stative category")
        relation = fields["rel"]
        if relation not in CORE_RELATIONS:
            raise TableError(f"{path}:{lineno}: unknown relation {relation!r}")
        allow = fields["allow"]
        if allow not in _ALLOW_VALUES:
            raise TableError(f"{path}:{lineno}: allow must be one of {_ALLOW_VALUES}")
        key = (group, sem, kind, relation)
        if key in cells:
            raise TableError(f"{path}:{lineno}: duplicate cell {fields['s1']} {relation}")
        cells[key] = allow
    expected = 2 * 3 * 4 + 2 * 4  # anchor cells for six categories + focus rows
    if len(cells) != expected:
        raise TableError(f"{path}: expected {expected} cells, found {len(cells)}")
    return FeasibilityTable(cells=cells)
