"""Discourse file parsing and rendering.

One clause per line::

    clause id=e1 tense=past aspect=simple sem=event [cue=because]
        [temprel=precede@tf] [words=john,fall] [text="John fell"]

Lines are UTF-8 with ``#`` comments; parsing and rendering round-trip.
"""

from __future__ import annotations

import shlex
from pathlib import Path

from .model import (
    ClauseAnnotation,
    DiscourseInputError,
    SemanticAspect,
    SyntacticAspect,
    TempExprDirective,
    Tense,
)

_REQUIRED = ("id", "tense", "aspect", "sem")
_OPTIONAL = ("cue", "temprel", "words", "text")


def parse_discourse(text: str, source: str = "<string>") -> list[ClauseAnnotation]:
    clauses: list[ClauseAnnotation] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            tokens = shlex.split(stripped, comments=True)
        except ValueError as exc:
            raise DiscourseInputError(f"{source}:{lineno}: {exc}") from None
        if not tokens:
            continue
        if tokens[0] != "clause":
            raise DiscourseInputError(
                f"{source}:{lineno}: lines must start with 'clause', got {tokens[0]!r}"
            )
        fields: dict[str, str] = {}
        for token in tokens[1:]:
            if "=" not in token:
                raise DiscourseInputError(
                    f"{source}:{lineno}: expected key=value, got {token!r}"
                )
            key, value = token.split("=", 1)
            if key not in _REQUIRED and key not in _OPTIONAL:
                raise DiscourseInputError(f"{source}:{lineno}: unknown key {key!r}")
            if key in fields:
                raise DiscourseInputError(f"{source}:{lineno}: duplicate key {key!r}")
            fields[key] = value
        missing = [k for k in _REQUIRED if k not in fields]
        if missing:
            raise DiscourseInputError(f"{source}:{lineno}: missing keys {missing}")
        try:
            clauses.append(_build_clause(fields))
        except DiscourseInputError as exc:
            raise DiscourseInputError(f"{source}:{lineno}: {exc}") from None
    return clauses


def _build_clause(fields: dict[str, str]) -> ClauseAnnotation:
    temp_expr = None
    if "temprel" in fields:
        spec = fields["temprel"]
        if "@" in spec:
            relation, anchor = spec.split("@", 1)
            temp_expr = TempExprDirective(relation=relation, anchor=anchor)
        else:
            temp_expr = TempExprDirective(relation=spec)
    words: tuple[str, ...] = ()
    if "words" in fields and fields["words"]:
        words = tuple(w.strip().lower() for w in fields["words"].split(",") if w.strip())
    return ClauseAnnotation(
        id=fields["id"],
        tense=Tense.parse(fields["tense"]),
        syn_aspect=SyntacticAspect.parse(fields["aspect"]),
        sem_aspect=SemanticAspect.parse(fields["sem"]),
        cue=fields.get("cue", "").lower() or None,
        temp_expr=temp_expr,
        words=words,
        text=fields.get("text"),
    )


def load_discourse(path: str | Path) -> list[ClauseAnnotation]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DiscourseInputError(f"cannot read {path}: {exc}") from None
    return parse_discourse(text, source=str(path))


def render_discourse(clauses: list[ClauseAnnotation] | tuple[ClauseAnnotation, ...]) -> str:
    """Inverse of parse_discourse for the text format."""
    lines = []
    for c in clauses:
        parts = [
            "clause",
            f"id={c.id}",
            f"tense={c.tense.value}",
            f"aspect={c.syn_aspect.value}",
            f"sem={c.sem_aspect.value}",
        ]
        if c.cue is not None:
            parts.append(f"cue={c.cue}")
        if c.temp_expr is not None:
            spec = c.temp_expr.relation
            if c.temp_expr.anchor is not None:
                spec += f"@{c.temp_expr.anchor}"
            parts.append(f"temprel={spec}")
        if c.words:
            parts.append("words=" + ",".join(c.words))
        if c.text is not None:
            parts.append(f'text="{c.text}"')
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
