"""Temporal centering: thread ratings and center updates.

A new clause prefers to continue a thread with parallel tense, a thread whose
content words are semantically close to its own, and the thread currently
being followed.  Continuing a thread below the top of the stack closes every
thread above it; flashback clauses (past perfect) may instead open a new
thread, which is also what a clause must do when no attachment is feasible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .closeness import ClosenessLexicon, dcu_thread_closeness
from .model import ClauseAnnotation, TempCenter, Thread, extend_thread, make_thread

ZERO = Fraction(0)

# relation tiers order readings: unforced backward movement is dispreferred
TIER_DEFAULT = 0
TIER_DEMOTED = 1


class ThreadingError(ValueError):
    """Center update that violates the thread stack discipline."""


@dataclass(frozen=True)
class PreferenceWeights:
    w_tense: Fraction = Fraction(1)
    w_sem: Fraction = Fraction(1)
    w_cur: Fraction = Fraction(1, 2)

    @classmethod
    def from_floats(cls, w_tense: float = 1.0, w_sem: float = 1.0, w_cur: float = 0.5):
        # decimal strings keep CLI-supplied weights exact
        return cls(
            w_tense=Fraction(str(w_tense)),
            w_sem=Fraction(str(w_sem)),
            w_cur=Fraction(str(w_cur)),
        )


def tense_parallel(thread: Thread, s2: ClauseAnnotation) -> bool:
    """Parallel means the same tense and the same syntactic aspect."""
    return thread.tense_of_last is s2.tense and thread.aspect_of_last is s2.syn_aspect


def rate_thread(
    thread: Thread,
    s2: ClauseAnnotation,
    lex: ClosenessLexicon,
    is_current: bool,
    weights: PreferenceWeights,
) -> Fraction:
    score = ZERO
    if tense_parallel(thread, s2):
        score += weights.w_tense
    score += weights.w_sem * dcu_thread_closeness(lex, s2.words, thread)
    if is_current:
        score += weights.w_cur
    return score


def rate_new_thread(
    center: TempCenter,
    s2: ClauseAnnotation,
    lex: ClosenessLexicon,
    weights: PreferenceWeights,
) -> Fraction:
    """Rating for opening a fresh thread.

    A fresh thread branches off the story being followed, so it keeps the
    currency bonus and the parallel-tense comparison against the current
    thread.  When the clause is semantically unrelated to every open thread
    it is about something new, and the closeness weight is credited to the
    fresh thread instead.
    """
    score = weights.w_cur
    if tense_parallel(center.current, s2):
        score += weights.w_tense
    if all(
        dcu_thread_closeness(lex, s2.words, t) == ZERO for t in center.fwd_center
    ):
        score += weights.w_sem
    return score


def select_threads(
    center: TempCenter,
    s2: ClauseAnnotation,
    lex: ClosenessLexicon,
    weights: PreferenceWeights,
) -> list[int]:
    """Indices of the threads the clause may continue.

    The current thread wins any tie it is part of; otherwise all of the
    highest-rated threads are returned and each continuation is generated.
    """
    ratings = [
        rate_thread(t, s2, lex, i == center.bkwd_center, weights)
        for i, t in enumerate(center.fwd_center)
    ]
    best = max(ratings)
    winners = [i for i, r in enumerate(ratings) if r == best]
    if center.bkwd_center in winners:
        return [center.bkwd_center]
    return winners


def attach_to_thread(center: TempCenter, idx: int, s2: ClauseAnnotation) -> TempCenter:
    """Append the clause to thread ``idx``, closing every thread above it."""
    if not 0 <= idx < len(center.fwd_center):
        raise ThreadingError(f"no open thread at index {idx}")
    extended = extend_thread(center.fwd_center[idx], s2)
    return TempCenter(
        fwd_center=center.fwd_center[:idx] + (extended,),
        bkwd_center=idx,
        closed_threads=center.closed_threads + center.fwd_center[idx + 1:],
    )


def start_new_thread(
    center: TempCenter, s2: ClauseAnnotation, *, options_empty: bool = False
) -> TempCenter:
    """Push a fresh thread and follow it.

    Only a past perfect clause (a flashback opener) or a clause with no
    feasible attachment may do this.
    """
    if not (s2.is_past_perfect or options_empty):
        raise ThreadingError(
            f"clause {s2.id} may not start a new thread: it is not past "
            "perfect and attachment options exist"
        )
    return TempCenter(
        fwd_center=center.fwd_center + (make_thread(s2),),
        bkwd_center=len(center.fwd_center),
        closed_threads=center.closed_threads,
    )
