"""Word-association scores used as a cheap stand-in for world knowledge.

Scores are symmetric, live in [0, 1], and are exact rationals so that thread
ratings compare deterministically.  A word is maximally close to itself;
unlisted pairs score zero.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .model import Thread

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ClosenessLexicon:
    scores: dict[frozenset[str], Fraction]

    def closeness(self, w1: str, w2: str) -> Fraction:
        if w1 == w2:
            return ONE
        return self.scores.get(frozenset((w1, w2)), ZERO)


def closeness(lex: ClosenessLexicon, w1: str, w2: str) -> Fraction:
    return lex.closeness(w1, w2)


def dcu_thread_closeness(
    lex: ClosenessLexicon, words: Iterable[str], thread: Thread
) -> Fraction:
    """Strongest association between the new clause's words and the thread's.

    Max aggregation: one strong link is enough to tie a clause to a thread,
    and adding words never lowers the rating.
    """
    best = ZERO
    for w1 in words:
        for w2 in thread.content_words:
            score = lex.closeness(w1, w2)
            if score > best:
                best = score
    return best


def load_closeness(path: str | Path) -> ClosenessLexicon:
    """Read tab-separated ``lemma lemma score`` lines; last entry wins."""
    scores: dict[frozenset[str], Fraction] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected 'lemma<TAB>lemma<TAB>score'")
        w1, w2, raw_score = (p.strip() for p in parts)
        try:
            score = Fraction(raw_score)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"{path}:{lineno}: bad score {raw_score!r}") from None
        if not ZERO <= score <= ONE:
            raise ValueError(f"{path}:{lineno}: score {raw_score} outside [0, 1]")
        key = frozenset((w1.lower(), w2.lower()))
        if key in scores and scores[key] != score:
            logger.warning(
                "%s:%d: pair %s rescored %s -> %s (last wins)",
                path, lineno, tuple(sorted(key)), scores[key], score,
            )
        scores[key] = score
    return ClosenessLexicon(scores=scores)
