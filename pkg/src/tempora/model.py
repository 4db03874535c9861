"""Domain data for discourse analysis.

Every value here is immutable: analysis states form a persistent tree and a
state may be extended without disturbing its parent.  A discourse is a
sequence of clause annotations; analysing it produces readings, each of which
assigns an anchor and a relation to every non-initial clause and tracks the
narrative threads the discourse follows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction


class DiscourseInputError(ValueError):
    """Invalid input annotation or discourse file."""


class Tense(Enum):
    PAST = "past"
    PRESENT = "pres"
    FUTURE = "fut"

    @classmethod
    def parse(cls, token: str) -> "Tense":
        try:
            return cls(token)
        except ValueError:
            raise DiscourseInputError(f"unknown tense {token!r}") from None


class SyntacticAspect(Enum):
    SIMPLE = "simple"
    PERF = "perf"
    PROG = "prog"
    PERF_PROG = "perf_prog"

    @classmethod
    def parse(cls, token: str) -> "SyntacticAspect":
        try:
            return cls(token)
        except ValueError:
            raise DiscourseInputError(f"unknown aspect {token!r}") from None


class SemanticAspect(Enum):
    EVENT = "event"
    STATE = "state"
    ACTIVITY = "activity"

    @classmethod
    def parse(cls, token: str) -> "SemanticAspect":
        try:
            return cls(token)
        except ValueError:
            raise DiscourseInputError(f"unknown semantic aspect {token!r}") from None


class AnchorKind(Enum):
    S1 = "s1"    # the last clause of the anchor thread
    TF1 = "tf1"  # the anchor thread's temporal focus (used when S1 is stative)


# Core temporal relation names.  The richer rhetorical vocabulary lives in
# the relation lattice; these four are what temporal relations project onto.
JUST_AFTER = "just_after"
PRECEDE = "precede"
OVERLAP = "overlap"
SAME_EVENT = "same_event"
CORE_RELATIONS = (JUST_AFTER, PRECEDE, OVERLAP, SAME_EVENT)

TEMPFOC_TOKEN = "tf"

_ENGLISH = {
    JUST_AFTER: "just-after",
    PRECEDE: "precedes",
    OVERLAP: "overlaps",
    SAME_EVENT: "same-event",
}


@dataclass(frozen=True)
class TempExprDirective:
    """Directed temporal relation contributed by a temporal expression.

    ``anchor`` may be an earlier eventuality id, the token ``tf`` (the
    current thread's temporal focus), or None, which anchors at the last
    clause of the attachment thread.
    """

    relation: str
    anchor: str | None = None

    def __post_init__(self) -> None:
        if self.relation not in CORE_RELATIONS:
            raise DiscourseInputError(
                f"temporal expression relation must be one of {CORE_RELATIONS}, "
                f"got {self.relation!r}"
            )


@dataclass(frozen=True)
class ClauseAnnotation:
    """Per-clause input record."""

    id: str
    tense: Tense
    syn_aspect: SyntacticAspect
    sem_aspect: SemanticAspect
    cue: str | None = None
    temp_expr: TempExprDirective | None = None
    words: tuple[str, ...] = ()
    text: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise DiscourseInputError("clause id must be nonempty")

    @property
    def is_past_perfect(self) -> bool:
        return self.tense is Tense.PAST and self.syn_aspect in (
            SyntacticAspect.PERF,
            SyntacticAspect.PERF_PROG,
        )

    @property
    def is_eventive(self) -> bool:
        return self.sem_aspect is not SemanticAspect.STATE


@dataclass(frozen=True)
class Dcu:
    """A discourse constituent unit: one clause plus its resolved attachment.

    The initial unit of a discourse carries no relation or anchor.  Extra
    fields beyond the resolved relation record how the attachment was
    derived, for reporting.
    """

    annotation: ClauseAnnotation
    rhet_reln: str | None = None
    anchor: tuple[str, AnchorKind] | None = None
    temp_relns: tuple[tuple[str, str, str], ...] = ()
    source: str | None = None
    tier: int = 0
    marginal: bool = False
    opened_thread: bool = False


@dataclass(frozen=True)
class Thread:
    """An open narrative line: member eventualities plus continuation cues.

    ``tempfoc`` is the most recent event or activity member; stative-only
    threads have none and cannot serve as focus anchors.
    """

    members: tuple[str, ...]
    tense_of_last: Tense
    aspect_of_last: SyntacticAspect
    tempfoc: str | None
    content_words: frozenset[str]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("thread must have at least one member")

    @property
    def last(self) -> str:
        return self.members[-1]


@dataclass(frozen=True)
class TempCenter:
    """Forward/backward/closed centers of temporal centering.

    ``fwd_center`` is a stack (index 0 at the bottom); ``bkwd_center`` indexes
    the thread currently being followed.  Threads moved to ``closed_threads``
    never reopen.
    """

    fwd_center: tuple[Thread, ...]
    bkwd_center: int
    closed_threads: tuple[Thread, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.bkwd_center < len(self.fwd_center):
            raise ValueError("bkwd_center must index an open thread")

    @property
    def current(self) -> Thread:
        return self.fwd_center[self.bkwd_center]


@dataclass(frozen=True)
class AnalysisState:
    """One consistent partial or complete reading of a discourse."""

    dcus: tuple[Dcu, ...]
    center: TempCenter
    score: Fraction = Fraction(0)
    log: tuple[str, ...] = ()

    def annotation(self, eid: str) -> ClauseAnnotation:
        for dcu in self.dcus:
            if dcu.annotation.id == eid:
                return dcu.annotation
        raise KeyError(eid)

    def ids(self) -> tuple[str, ...]:
        return tuple(d.annotation.id for d in self.dcus)


# A terminal state, with every clause attached, is a reading.
Reading = AnalysisState


def make_thread(annotation: ClauseAnnotation) -> Thread:
    tempfoc = annotation.id if annotation.is_eventive else None
    return Thread(
        members=(annotation.id,),
        tense_of_last=annotation.tense,
        aspect_of_last=annotation.syn_aspect,
        tempfoc=tempfoc,
        content_words=frozenset(annotation.words),
    )


def extend_thread(thread: Thread, annotation: ClauseAnnotation) -> Thread:
    tempfoc = annotation.id if annotation.is_eventive else thread.tempfoc
    return Thread(
        members=thread.members + (annotation.id,),
        tense_of_last=annotation.tense,
        aspect_of_last=annotation.syn_aspect,
        tempfoc=tempfoc,
        content_words=thread.content_words | frozenset(annotation.words),
    )


def new_discourse(first: ClauseAnnotation) -> AnalysisState:
    """Start an analysis: one thread holding the first eventuality."""
    if first.temp_expr is not None and first.temp_expr.anchor not in (None, TEMPFOC_TOKEN):
        raise DiscourseInputError(
            f"clause {first.id}: temporal expression anchor "
            f"{first.temp_expr.anchor!r} cannot name an earlier eventuality"
        )
    if first.cue is not None or first.temp_expr is not None:
        raise DiscourseInputError(
            f"clause {first.id}: the initial clause cannot carry a cue or "
            "temporal-expression directive"
        )
    center = TempCenter(fwd_center=(make_thread(first),), bkwd_center=0)
    return AnalysisState(dcus=(Dcu(annotation=first),), center=center)


def eventuality_order(state: AnalysisState) -> list[tuple[str, str, str]]:
    """Accumulated temporal relations, in discourse order."""
    out: list[tuple[str, str, str]] = []
    for dcu in state.dcus:
        out.extend(dcu.temp_relns)
    return out


def format_relation(triple: tuple[str, str, str], style: str = "name") -> str:
    """Render one temporal relation.

    ``name`` style prints the relation identifier (``e2 precede e1``);
    ``english`` prints the verbal form (``e2 precedes e1``).
    """
    left, rel, right = triple
    if style == "english":
        return f"{left} {_ENGLISH[rel]} {right}"
    return f"{left} {rel} {right}"
