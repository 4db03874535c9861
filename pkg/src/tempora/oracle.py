"""Brute-force reference analysis for equivalence testing and reading counts.

The oracle first enumerates every assignment of the four core relations to
the non-initial clauses (plus, for discourses of three or more clauses, one
extra skeleton in which the final clause begins a new thread), then filters
by replaying each assignment against the same constraint data the engine
uses.  The replay re-derives feasibility, explicit-marker handling, and tier
pruning on its own, so agreement with the incremental builder is evidence
rather than tautology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import AnalyzerConfig
from .lattice import BOTTOM, TOP
from .model import (
    CORE_RELATIONS,
    JUST_AFTER,
    OVERLAP,
    PRECEDE,
    SAME_EVENT,
    TEMPFOC_TOKEN,
    AnalysisState,
    AnchorKind,
    ClauseAnnotation,
    DiscourseInputError,
    SemanticAspect,
    SyntacticAspect,
    Tense,
)

WILDCARD = "*"

# skeleton site: a core relation name, WILDCARD, or None (bare new thread)
Skeleton = tuple

# resolved site: (anchor id, core relation); (None, None) marks a clause
# that opened a relation-free thread
Site = tuple


@dataclass(frozen=True)
class OracleReading:
    sites: tuple[Site, ...]


def enumerate_unconstrained(discourse) -> list[Skeleton]:
    """Unconstrained reading skeletons under the counting convention.

    Each non-initial clause independently takes one of the four core
    relations at its attachment point (thread choice is not multiplied), and
    a discourse of three or more clauses gets one extra skeleton whose final
    clause begins a new thread.
    """
    n = len(discourse)
    if n == 0:
        raise DiscourseInputError("empty discourse")
    vectors: list[Skeleton] = [
        tuple(v) for v in itertools.product(CORE_RELATIONS, repeat=n - 1)
    ]
    if n >= 3:
        vectors.append((WILDCARD,) * (n - 2) + (None,))
    return vectors


def filter_constrained(
    readings: list[Skeleton],
    discourse,
    cfg: AnalyzerConfig,
    *,
    constrained: bool = True,
) -> list[OracleReading]:
    """Resolve each skeleton against the constraints.

    Resolution assigns concrete anchors by replaying the thread stack, so one
    skeleton may resolve to several readings (one per admissible thread) or
    to none.  With ``constrained=False`` the skeletons pass through untouched.
    """
    if not constrained:
        return list(readings)
    anns = {c.id: c for c in discourse}
    first = ((discourse[0].id,), _focus_of(discourse[0]))
    resolved: set[tuple[Site, ...]] = set()
    for skeleton in readings:
        _resolve(
            skeleton, 0, discourse, anns, cfg,
            _Replay(open_threads=(first,), bkwd=0), (), resolved,
        )
    return [OracleReading(sites=s) for s in sorted(resolved, key=_site_sort_key)]


def _site_sort_key(sites: tuple[Site, ...]):
    return tuple((a or "", r or "") for a, r in sites)


def canonicalize(state: AnalysisState) -> OracleReading:
    """Project a builder reading onto the oracle's site representation."""
    sites: list[Site] = []
    for dcu in state.dcus[1:]:
        if dcu.anchor is None:
            sites.append((None, None))
        else:
            sites.append((dcu.anchor[0], dcu.temp_relns[0][1]))
    return OracleReading(sites=tuple(sites))


# ---------------------------------------------------------------------------
# replay machinery

@dataclass(frozen=True)
class _Replay:
    # each open thread is (member ids, tempfoc id or None), bottom first
    open_threads: tuple[tuple[tuple[str, ...], str | None], ...]
    bkwd: int


def _focus_of(ann: ClauseAnnotation) -> str | None:
    return ann.id if ann.sem_aspect is not SemanticAspect.STATE else None


def _resolve(skeleton, pos, discourse, anns, cfg, replay, acc, out) -> None:
    if pos == len(skeleton):
        out.add(acc)
        return
    want = skeleton[pos]
    s2 = discourse[pos + 1]
    options = _site_options(replay, s2, anns, cfg)
    if not options:
        # dead end: only a relation-free thread is possible, and explicit
        # markers rule even that out
        if s2.cue is None and s2.temp_expr is None:
            nxt = _apply(replay, s2, None, new_thread=True)
            _resolve(skeleton, pos + 1, discourse, anns, cfg, nxt, acc + ((None, None),), out)
        return
    for anchor, relation, new_thread in options:
        if want is not None and want != WILDCARD and relation != want:
            continue
        if want is None:
            continue  # bare new-thread skeletons never match a relation
        nxt = _apply(replay, s2, anchor, new_thread=new_thread)
        _resolve(
            skeleton, pos + 1, discourse, anns, cfg, nxt,
            acc + ((anchor, relation),), out,
        )


def _apply(replay: _Replay, s2, anchor, *, new_thread: bool) -> _Replay:
    if new_thread:
        return _Replay(
            open_threads=replay.open_threads + (((s2.id,), _focus_of(s2)),),
            bkwd=len(replay.open_threads),
        )
    idx = next(
        i for i, (members, _) in enumerate(replay.open_threads) if anchor in members
    )
    members, focus = replay.open_threads[idx]
    extended = (members + (s2.id,), _focus_of(s2) or focus)
    return _Replay(open_threads=replay.open_threads[:idx] + (extended,), bkwd=idx)


# ---------------------------------------------------------------------------
# independent per-site constraint derivation

def _complex(ann: ClauseAnnotation) -> bool:
    return ann.syn_aspect in (SyntacticAspect.PERF, SyntacticAspect.PERF_PROG)


def _past_perfect(ann: ClauseAnnotation) -> bool:
    return ann.tense is Tense.PAST and _complex(ann)


def _sem(ann: ClauseAnnotation) -> SemanticAspect:
    return ann.sem_aspect


def _matrix_applies(s1: ClauseAnnotation, s2: ClauseAnnotation) -> bool:
    return (
        s2.tense is Tense.PAST
        and s2.syn_aspect is SyntacticAspect.SIMPLE
        and s2.sem_aspect is SemanticAspect.EVENT
        and s1.tense is Tense.PAST
    )


def _core_pairs(s1, tf_ann, s2, cfg) -> list[tuple[str, bool]]:
    """Allowed (relation, anchored at focus) pairs, before explicit markers."""
    EVENT, STATE, ACTIVITY = (
        SemanticAspect.EVENT, SemanticAspect.STATE, SemanticAspect.ACTIVITY,
    )
    pairs: list[tuple[str, bool]] = []
    if _matrix_applies(s1, s2):
        group = "past_perfect" if _complex(s1) else "past"
        for rel in CORE_RELATIONS:
            for focus_anchor, kind in ((False, AnchorKind.S1), (True, AnchorKind.TF1)):
                allow = cfg.table.allow(group, _sem(s1), kind, rel)
                ok = allow == "yes" or (allow == "marginal" and cfg.allow_marginal)
                if ok and (not focus_anchor or tf_ann is not None):
                    pairs.append((rel, focus_anchor))
        return pairs

    stative = _sem(s1) is STATE
    focus_ok = tf_ann is not None

    if _sem(s2) is STATE or stative:
        pairs.append((OVERLAP, False))

    ja = (
        (_sem(s2) is EVENT and not _complex(s2))
        or (_complex(s1) and _complex(s2) and _sem(s2) is EVENT)
        or (_sem(s1) is EVENT and (_sem(s2) is ACTIVITY
                                   or (_sem(s2) is STATE and not _complex(s2))))
        or (stative and _sem(s2) is ACTIVITY and not _complex(s2))
    )
    if ja:
        if not stative:
            pairs.append((JUST_AFTER, False))
        elif focus_ok:
            pairs.append((JUST_AFTER, True))

    pr = _sem(s2) is EVENT or (
        _sem(s1) is not ACTIVITY and _sem(s2) is STATE and _past_perfect(s2)
    )
    if pr:
        if not stative:
            pairs.append((PRECEDE, False))
        elif focus_ok:
            pairs.append((PRECEDE, True))

    def elaborates(anchor_ann):
        if _complex(s2) and not _complex(anchor_ann):
            return False
        return (
            _sem(anchor_ann) is EVENT
            or (_sem(anchor_ann) is ACTIVITY and _sem(s2) in (STATE, ACTIVITY))
            or (_sem(anchor_ann) is STATE and _sem(s2) is STATE)
        )

    if elaborates(s1):
        pairs.append((SAME_EVENT, False))
    if stative and focus_ok and elaborates(tf_ann):
        pairs.append((SAME_EVENT, True))
    return pairs


def _site_options(replay: _Replay, s2, anns, cfg) -> list[tuple[str, str, bool]]:
    """Realizable (anchor, core relation, opens thread) triples at a state."""
    cue_node = cfg.cues.relation_for(s2.cue) if s2.cue is not None else None
    tx = s2.temp_expr
    out: list[tuple[str, str, bool]] = []
    seen: set[tuple[str, str, bool]] = set()

    def offer(anchor: str, relation: str, new_thread: bool) -> None:
        # cue relations must be consistent with whatever else fixed the site
        if cue_node is not None and cfg.lattice.meet(relation, cue_node) == BOTTOM:
            return
        entry = (anchor, relation, new_thread)
        if entry not in seen:
            seen.add(entry)
            out.append(entry)

    def realizes_as_new(relation: str) -> bool:
        return _past_perfect(s2) and relation == PRECEDE

    if tx is not None:
        for members, focus in replay.open_threads:
            if tx.anchor is None:
                anchor = members[-1]
            elif tx.anchor == TEMPFOC_TOKEN:
                if focus is None:
                    continue
                anchor = focus
            else:
                anchor = tx.anchor
                if not any(anchor in m for m, _ in replay.open_threads):
                    continue
            offer(anchor, tx.relation, realizes_as_new(tx.relation))
        return out

    for members, focus in replay.open_threads:
        s1 = anns[members[-1]]
        tf_ann = anns[focus] if focus is not None else None
        pairs = _core_pairs(s1, tf_ann, s2, cfg)
        if cfg.tier_prune and not _precede_forced(s2, cue_node, cfg):
            if any(rel != PRECEDE for rel, _ in pairs):
                pairs = [(rel, f) for rel, f in pairs if rel != PRECEDE]
        for rel, at_focus in pairs:
            anchor = focus if at_focus else members[-1]
            offer(anchor, rel, realizes_as_new(rel))

    # a flashback can always branch off the thread being followed
    if _past_perfect(s2):
        _, focus = replay.open_threads[replay.bkwd]
        if focus is not None:
            offer(focus, PRECEDE, True)
    return out


def _precede_forced(s2, cue_node, cfg) -> bool:
    if _past_perfect(s2):
        return True
    if cue_node is not None and cue_node not in (TOP, BOTTOM):
        return cfg.lattice.temporal_projection(cue_node) == PRECEDE
    return False


def reading_counts(discourse, cfg: AnalyzerConfig) -> dict[str, int]:
    """Unconstrained, constrained, and tier-pruned counts for one discourse."""
    skeletons = enumerate_unconstrained(discourse)
    pruned = filter_constrained(skeletons, discourse, cfg.with_flags(tier_prune=True))
    unpruned = filter_constrained(
        skeletons, discourse, cfg.with_flags(tier_prune=False)
    )
    return {
        "unconstrained": len(skeletons),
        "constrained": len(pruned) if cfg.tier_prune else len(unpruned),
        "constrained_unpruned": len(unpruned),
        "tier1": len(unpruned) - len(pruned),
    }
