"""Discourse analysis: constrain attachments, then rank them by preference.

Each new clause is attached to candidate threads through the constraint
engine; explicit markers refine the options; unforced backward movement is
demoted to a lower tier; and temporal centering rates the competing
continuations.  ``best`` mode follows the centering preferences clause by
clause and keeps the top-scored readings, ``enumerate`` keeps every reading
the constraints allow, and ``underspec`` packs the surviving readings into a
single lattice node per attachment site.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .centering import (
    TIER_DEFAULT,
    TIER_DEMOTED,
    rate_new_thread,
    rate_thread,
    select_threads,
    start_new_thread,
    attach_to_thread,
)
from .config import AnalyzerConfig
from .constraints import (
    AttachmentOption,
    ExplicitConflict,
    S1Context,
    apply_explicit,
    feasible_general,
)
from .lattice import BOTTOM, TOP
from .model import (
    JUST_AFTER,
    OVERLAP,
    PRECEDE,
    AnalysisState,
    AnchorKind,
    ClauseAnnotation,
    Dcu,
    DiscourseInputError,
    SemanticAspect,
    Thread,
    eventuality_order,
    new_discourse,
)

MODES = ("best", "enumerate", "underspec")

NEW_THREAD_SOURCE = "new_thread"


class ParseFailure(Exception):
    """Every reading died; explicit markers could not be reconciled."""

    def __init__(self, site: str, reasons: tuple[str, ...]) -> None:
        self.site = site
        self.reasons = reasons
        detail = "; ".join(reasons) if reasons else "no feasible attachment"
        super().__init__(f"parse failure at {site}: {detail}")


@dataclass(frozen=True)
class UnderspecSite:
    """One attachment site packed across readings."""

    id: str
    node: str | None  # least dominator of the surviving relations
    new_thread_only: bool
    candidates: tuple[tuple[str | None, str | None], ...]  # (anchor, node) per reading


@dataclass(frozen=True)
class UnderspecifiedStructure:
    sites: tuple[UnderspecSite, ...]


@dataclass(frozen=True)
class AnalysisResult:
    mode: str
    readings: tuple[AnalysisState, ...]
    underspec: UnderspecifiedStructure | None = None
    warnings: tuple[str, ...] = ()


_ASPECT_DEFAULT = {
    SemanticAspect.EVENT: JUST_AFTER,
    SemanticAspect.STATE: OVERLAP,
    SemanticAspect.ACTIVITY: OVERLAP,
}


def _open_thread_containing(center, anchor_id: str) -> int | None:
    for i, thread in enumerate(center.fwd_center):
        if anchor_id in thread.members:
            return i
    return None


def _s1_context(state: AnalysisState, thread: Thread) -> S1Context:
    s1 = state.annotation(thread.last)
    focus = None
    if thread.tempfoc is not None and thread.tempfoc != thread.last:
        focus = state.annotation(thread.tempfoc)
    elif thread.tempfoc is not None:
        focus = s1
    return S1Context(s1=s1, tempfoc=focus)


def _demoted(
    relation: str,
    s2: ClauseAnnotation,
    cue_node: str | None,
    cfg: AnalyzerConfig,
) -> bool:
    """Backward movement is a lower tier unless something forces it."""
    if cfg.lattice.temporal_projection(relation) != PRECEDE:
        return False
    if s2.is_past_perfect:
        return False
    if s2.temp_expr is not None and s2.temp_expr.relation == PRECEDE:
        return False
    if cue_node is not None and cue_node not in (TOP, BOTTOM):
        if cfg.lattice.temporal_projection(cue_node) == PRECEDE:
            return False
    return True


def _successor(
    state: AnalysisState,
    s2: ClauseAnnotation,
    opt: AttachmentOption,
    *,
    tier: int,
    thread_index: int,
    rating: Fraction,
    cfg: AnalyzerConfig,
    as_new_thread: bool,
) -> AnalysisState:
    projection = cfg.lattice.temporal_projection(opt.relation)
    dcu = Dcu(
        annotation=s2,
        rhet_reln=opt.relation,
        anchor=(opt.anchor_id, opt.anchor_kind),
        temp_relns=((s2.id, projection, opt.anchor_id),),
        source=opt.source,
        tier=tier,
        marginal=opt.marginal,
        opened_thread=as_new_thread,
    )
    if as_new_thread:
        center = start_new_thread(state.center, s2)
        how = f"{s2.id}: new thread, {opt.relation} anchored at {opt.anchor_id}"
    else:
        center = attach_to_thread(state.center, thread_index, s2)
        how = (
            f"{s2.id}: thread {thread_index}, {opt.relation} at {opt.anchor_id}"
            f" [{opt.anchor_kind.value}]"
        )
    log = state.log + (f"{how} (source={opt.source}, tier={tier})",)
    return AnalysisState(
        dcus=state.dcus + (dcu,),
        center=center,
        score=state.score + rating,
        log=log,
    )


def attach(
    state: AnalysisState,
    s2: ClauseAnnotation,
    cfg: AnalyzerConfig,
    *,
    prefer_threads: bool = True,
) -> list[AnalysisState]:
    """All successor states for one clause.

    With ``prefer_threads`` the centering selection narrows the candidate
    threads first; without it, every open thread is a candidate and only the
    constraints prune.  Raises ParseFailure when no successor survives.
    """
    if s2.id in state.ids():
        raise DiscourseInputError(f"duplicate eventuality id {s2.id!r}")
    center = state.center
    cue_node = cfg.cues.relation_for(s2.cue) if s2.cue is not None else None
    tx = s2.temp_expr

    if prefer_threads:
        candidates = select_threads(center, s2, cfg.closeness, cfg.weights)
    else:
        candidates = list(range(len(center.fwd_center)))

    successors: dict[tuple, AnalysisState] = {}
    reasons: list[str] = []

    def emit(succ: AnalysisState, key: tuple) -> None:
        successors.setdefault(key, succ)

    for idx in candidates:
        thread = center.fwd_center[idx]
        ctx = _s1_context(state, thread)
        options = feasible_general(ctx, s2, cfg.table, cfg.allow_marginal)
        try:
            options = apply_explicit(
                options,
                cue_node,
                tx,
                cfg.lattice,
                site=s2.id,
                cue_token=s2.cue,
                default_anchor=ctx.s1.id,
                tempfoc_id=ctx.tempfoc_id,
            )
        except ExplicitConflict as conflict:
            reasons.append(f"{conflict.first} vs {conflict.second}")
            continue
        tiers = [
            TIER_DEMOTED if _demoted(o.relation, s2, cue_node, cfg) else TIER_DEFAULT
            for o in options
        ]
        if cfg.tier_prune and TIER_DEFAULT in tiers:
            options = [o for o, t in zip(options, tiers) if t == TIER_DEFAULT]
            tiers = [TIER_DEFAULT] * len(options)
        for opt, tier in zip(options, tiers):
            as_new = (
                s2.is_past_perfect
                and cfg.lattice.temporal_projection(opt.relation) == PRECEDE
            )
            if as_new:
                target = len(center.fwd_center)
                rating = rate_new_thread(center, s2, cfg.closeness, cfg.weights)
            else:
                # explicit anchors may point outside the candidate thread
                target = _open_thread_containing(center, opt.anchor_id)
                if target is None:
                    reasons.append(
                        f"anchor {opt.anchor_id!r} is not in any open thread"
                    )
                    continue
                rating = rate_thread(
                    center.fwd_center[target], s2, cfg.closeness,
                    target == center.bkwd_center, cfg.weights,
                )
            key = (as_new, opt.anchor_id, opt.relation, -1 if as_new else target)
            emit(
                _successor(
                    state, s2, opt,
                    tier=tier,
                    thread_index=target,
                    rating=rating,
                    cfg=cfg,
                    as_new_thread=as_new,
                ),
                key,
            )

    # a flashback may always branch off the thread being followed
    if s2.is_past_perfect and tx is None and center.current.tempfoc is not None:
        node = PRECEDE
        consistent = True
        if cue_node is not None:
            met = cfg.lattice.meet(PRECEDE, cue_node)
            if met == BOTTOM:
                consistent = False
            else:
                node = met
        if consistent:
            anchor = center.current.tempfoc
            opt = AttachmentOption(
                anchor_id=anchor,
                anchor_kind=AnchorKind.S1,
                relation=node,
                source=NEW_THREAD_SOURCE,
            )
            emit(
                _successor(
                    state, s2, opt,
                    tier=TIER_DEFAULT,
                    thread_index=len(center.fwd_center),
                    rating=rate_new_thread(center, s2, cfg.closeness, cfg.weights),
                    cfg=cfg,
                    as_new_thread=True,
                ),
                (True, anchor, node, -1),
            )

    # attachment impossible: a bare new thread, unless an explicit marker
    # demands a relation that nothing can realize
    if not successors and cue_node is None and tx is None:
        dcu = Dcu(annotation=s2, opened_thread=True)
        succ = AnalysisState(
            dcus=state.dcus + (dcu,),
            center=start_new_thread(center, s2, options_empty=True),
            score=state.score + rate_new_thread(center, s2, cfg.closeness, cfg.weights),
            log=state.log + (f"{s2.id}: new thread, no feasible attachment",),
        )
        emit(succ, (True, None, None, -1))

    if not successors:
        if not reasons and cue_node is not None:
            reasons.append(
                f"cue {s2.cue!r} vs no feasible attachment to refine"
            )
        raise ParseFailure(s2.id, tuple(reasons))
    return list(successors.values())


def _reading_sort_key(state: AnalysisState):
    path = []
    for dcu in state.dcus[1:]:
        ann = dcu.annotation
        if dcu.anchor is None:
            path.append((99, 0, "", ""))
            continue
        proj = dcu.temp_relns[0][1]
        default_rank = 0 if proj == _ASPECT_DEFAULT[ann.sem_aspect] else 1
        # thread position approximated by anchor placement keeps ordering
        # deterministic: earlier anchors sort first
        thread_marker = _thread_marker(state, dcu)
        path.append((thread_marker, default_rank, dcu.rhet_reln, dcu.anchor[0]))
    return (-state.score, tuple(path))


def _thread_marker(state: AnalysisState, dcu: Dcu) -> int:
    anchor_id = dcu.anchor[0]
    for i, thread in enumerate(state.center.fwd_center + state.center.closed_threads):
        if anchor_id in thread.members:
            return i
    return 98


def analyze(
    discourse: list[ClauseAnnotation] | tuple[ClauseAnnotation, ...],
    cfg: AnalyzerConfig,
    mode: str = "best",
) -> AnalysisResult:
    """Analyse a discourse and return its readings.

    Raises DiscourseInputError for malformed input and ParseFailure when
    explicit markers rule out every reading.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if not discourse:
        raise DiscourseInputError("empty discourse")
    _validate(discourse, cfg)

    states = [new_discourse(discourse[0])]
    prefer = mode == "best"
    for s2 in discourse[1:]:
        nxt: list[AnalysisState] = []
        failure: ParseFailure | None = None
        for st in states:
            try:
                nxt.extend(attach(st, s2, cfg, prefer_threads=prefer))
            except ParseFailure as exc:
                failure = failure or exc
        if not nxt:
            raise failure or ParseFailure(s2.id, ())
        states = nxt

    states.sort(key=_reading_sort_key)
    if mode == "best":
        top = states[0].score
        states = [s for s in states if s.score == top]

    warnings = []
    open_count = len(states[0].center.fwd_center)
    if open_count > 1:
        warnings.append(
            f"discourse ends with {open_count} open threads (dangling narrative lines)"
        )

    underspec = None
    if mode == "underspec":
        underspec = underspecify(states, cfg)
    return AnalysisResult(
        mode=mode,
        readings=tuple(states),
        underspec=underspec,
        warnings=tuple(warnings),
    )


def underspecify(
    readings, cfg: AnalyzerConfig
) -> UnderspecifiedStructure:
    """Pack readings into one lattice node per attachment site.

    Each non-initial eventuality gets the least node dominating every
    relation it takes across the readings, with the anchor candidates kept.
    """
    readings = list(readings)
    if not readings:
        raise ValueError("cannot underspecify an empty reading set")
    signature = tuple(d.annotation for d in readings[0].dcus)
    if any(tuple(d.annotation for d in r.dcus) != signature for r in readings):
        raise ValueError("readings describe different discourses")
    ids = readings[0].ids()

    sites: list[UnderspecSite] = []
    for pos, eid in enumerate(ids[1:], 1):
        candidates: list[tuple[str | None, str | None]] = []
        node: str | None = None
        saw_relation = False
        for reading in readings:
            dcu = reading.dcus[pos]
            if dcu.anchor is None:
                candidates.append((None, None))
                continue
            candidates.append((dcu.anchor[0], dcu.rhet_reln))
            node = dcu.rhet_reln if not saw_relation else cfg.lattice.join(node, dcu.rhet_reln)
            saw_relation = True
        sites.append(
            UnderspecSite(
                id=eid,
                node=node,
                new_thread_only=not saw_relation,
                candidates=tuple(candidates),
            )
        )
    return UnderspecifiedStructure(sites=tuple(sites))


def _validate(discourse, cfg: AnalyzerConfig) -> None:
    seen: set[str] = set()
    for pos, ann in enumerate(discourse):
        if ann.id in seen:
            raise DiscourseInputError(f"duplicate eventuality id {ann.id!r}")
        if ann.cue is not None and ann.cue not in cfg.cues:
            raise DiscourseInputError(f"clause {ann.id}: unknown cue token {ann.cue!r}")
        tx = ann.temp_expr
        if tx is not None and tx.anchor not in (None, "tf") and tx.anchor not in seen:
            raise DiscourseInputError(
                f"clause {ann.id}: temporal expression anchor {tx.anchor!r} "
                "does not name an earlier eventuality"
            )
        seen.add(ann.id)


__all__ = [
    "AnalysisResult",
    "MODES",
    "ParseFailure",
    "UnderspecSite",
    "UnderspecifiedStructure",
    "analyze",
    "attach",
    "eventuality_order",
    "underspecify",
]
