"""Command line interface.

``analyze`` renders the readings of a discourse file as text, JSON, or DOT;
``oracle`` reports brute-force reading counts next to the engine's; and
``conformance`` replays the feasibility cells and the shipped example
discourses.  ``--report DIR`` additionally writes a tab-separated table and a
rendered figure for the run.

Exit codes: 0 success, 1 input or configuration error, 2 parse failure
(inconsistent explicit markers).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .builder import AnalysisResult, MODES, ParseFailure, analyze
from .centering import PreferenceWeights
from .config import AnalyzerConfig, load_config
from .conformance import run_conformance
from .discfile import load_discourse
from .model import AnalysisState, DiscourseInputError, eventuality_order, format_relation
from .oracle import reading_counts

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PARSE_FAILURE = 2


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lexicon", metavar="FILE", help="closeness lexicon file")
    parser.add_argument("--table", metavar="FILE", help="feasibility table file")
    parser.add_argument("--lattice", metavar="FILE", help="relation hierarchy file")
    parser.add_argument("--cues", metavar="FILE", help="cue lexicon file")
    parser.add_argument("--w-tense", type=float, default=1.0, metavar="F")
    parser.add_argument("--w-sem", type=float, default=1.0, metavar="F")
    parser.add_argument("--w-cur", type=float, default=0.5, metavar="F")
    parser.add_argument(
        "--allow-marginal", action="store_true",
        help="admit feasibility cells marked marginal",
    )
    parser.add_argument(
        "--no-tier-prune", action="store_true",
        help="keep demoted backward-movement readings, labeled by tier",
    )


def _config_from_args(args: argparse.Namespace) -> AnalyzerConfig:
    return load_config(
        lattice_path=args.lattice,
        cues_path=args.cues,
        table_path=args.table,
        closeness_path=args.lexicon,
        weights=PreferenceWeights.from_floats(args.w_tense, args.w_sem, args.w_cur),
        allow_marginal=args.allow_marginal,
        tier_prune=not args.no_tier_prune,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tempora",
        description="Temporal and rhetorical discourse structure analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="analyse a discourse file")
    p_analyze.add_argument("-i", "--input", required=True, metavar="FILE")
    p_analyze.add_argument("--mode", choices=MODES, default="best")
    p_analyze.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p_analyze.add_argument("--report", metavar="DIR", help="write TSV and figure here")
    _add_config_flags(p_analyze)

    p_oracle = sub.add_parser("oracle", help="brute-force reading counts")
    p_oracle.add_argument("-i", "--input", required=True, metavar="FILE")
    p_oracle.add_argument("--format", choices=("text", "json"), default="text")
    _add_config_flags(p_oracle)

    p_conf = sub.add_parser("conformance", help="replay cells and shipped examples")
    p_conf.add_argument("--report", metavar="DIR", help="write TSV and figure here")
    _add_config_flags(p_conf)

    return parser


# ---------------------------------------------------------------------------
# rendering

def _reading_dict(state: AnalysisState) -> dict:
    attachments = []
    for dcu in state.dcus[1:]:
        attachments.append(
            {
                "id": dcu.annotation.id,
                "anchor": dcu.anchor[0] if dcu.anchor else None,
                "kind": dcu.anchor[1].value if dcu.anchor else None,
                "node": dcu.rhet_reln,
                "source": dcu.source,
                "tier": dcu.tier,
                "marginal": dcu.marginal,
                "new_thread": dcu.opened_thread,
            }
        )
    return {
        "score": str(state.score),
        "score_float": float(state.score),
        "relations": [list(t) for t in eventuality_order(state)],
        "attachments": attachments,
        "threads": {
            "open": [list(t.members) for t in state.center.fwd_center],
            "closed": [list(t.members) for t in state.center.closed_threads],
        },
        "log": list(state.log),
    }


def _result_dict(result: AnalysisResult) -> dict:
    payload = {
        "mode": result.mode,
        "readings": [_reading_dict(r) for r in result.readings],
        "warnings": list(result.warnings),
    }
    if result.underspec is not None:
        payload["underspec"] = {
            "sites": [
                {
                    "id": site.id,
                    "node": site.node,
                    "new_thread_only": site.new_thread_only,
                    "candidates": [list(c) for c in site.candidates],
                }
                for site in result.underspec.sites
            ]
        }
    return payload


def _render_text(result: AnalysisResult) -> str:
    lines: list[str] = []
    if result.mode == "underspec" and result.underspec is not None:
        lines.append("underspecified structure")
        for site in result.underspec.sites:
            if site.new_thread_only:
                lines.append(f"{site.id}: new thread")
                continue
            anchors = sorted({f"{a}:{n}" for a, n in site.candidates if a is not None})
            lines.append(f"{site.id}: {site.node} candidates=[{', '.join(anchors)}]")
    else:
        total = len(result.readings)
        for i, reading in enumerate(result.readings, 1):
            tier_note = ""
            if any(d.tier > 0 for d in reading.dcus[1:]):
                tier_note = " [tier-1]"
            lines.append(f"reading {i}/{total} score={reading.score}{tier_note}")
            for triple in eventuality_order(reading):
                lines.append(format_relation(triple))
            threads = " ".join(
                f"t{j + 1}=[{','.join(t.members)}]"
                for j, t in enumerate(reading.center.fwd_center)
            )
            closed = " ".join(
                f"[{','.join(t.members)}]" for t in reading.center.closed_threads
            )
            lines.append(f"threads: {threads}" + (f" closed: {closed}" if closed else ""))
    for warning in result.warnings:
        lines.append(f"warning: {warning}")
    return "\n".join(lines) + "\n"


def _render_dot(result: AnalysisResult) -> str:
    top = result.readings[0]
    lines = ["digraph discourse {", "  rankdir=LR;", "  node [shape=circle];"]
    threads = list(top.center.fwd_center) + list(top.center.closed_threads)
    open_count = len(top.center.fwd_center)
    for i, thread in enumerate(threads):
        closed = i >= open_count
        label = f"thread {i + 1}" + (" (closed)" if closed else "")
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="{label}";')
        for member in thread.members:
            lines.append(f"    {member};")
        lines.append("  }")
    for left, rel, right in eventuality_order(top):
        lines.append(f'  {left} -> {right} [label="{rel}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _write_report(result: AnalysisResult, report_dir: Path, stem: str) -> None:
    from .figures import save_timeline_figure

    report_dir.mkdir(parents=True, exist_ok=True)
    rows = ["reading\tscore\tsite\tanchor\tkind\tnode\trelation\ttier\tmarginal\tnew_thread\tsource"]
    for i, reading in enumerate(result.readings, 1):
        for dcu in reading.dcus[1:]:
            relation = dcu.temp_relns[0][1] if dcu.temp_relns else ""
            rows.append(
                "\t".join(
                    str(v)
                    for v in (
                        i, reading.score, dcu.annotation.id,
                        dcu.anchor[0] if dcu.anchor else "",
                        dcu.anchor[1].value if dcu.anchor else "",
                        dcu.rhet_reln or "", relation,
                        dcu.tier, dcu.marginal, dcu.opened_thread,
                        dcu.source or "",
                    )
                )
            )
    (report_dir / f"{stem}_readings.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    save_timeline_figure(
        result.readings[0],
        report_dir / f"{stem}_timeline.png",
        title=f"best reading (score {result.readings[0].score})",
    )


# ---------------------------------------------------------------------------
# commands

def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    discourse = load_discourse(args.input)
    result = analyze(discourse, cfg, mode=args.mode)
    if args.format == "json":
        print(json.dumps(_result_dict(result), indent=2, sort_keys=True))
    elif args.format == "dot":
        print(_render_dot(result), end="")
    else:
        print(_render_text(result), end="")
    if args.report:
        _write_report(result, Path(args.report), Path(args.input).stem)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    discourse = load_discourse(args.input)
    counts = reading_counts(discourse, cfg)
    try:
        preferred = len(analyze(discourse, cfg, mode="best").readings)
    except ParseFailure:
        preferred = 0
    if args.format == "json":
        payload = dict(counts, preferred=preferred)
        print(json.dumps(payload, indent=2, sort_keys=True))
        return EXIT_OK
    print(f"unconstrained readings: {counts['unconstrained']}")
    if cfg.tier_prune:
        print(f"constrained readings: {counts['constrained']}")
    else:
        kept = counts["constrained_unpruned"] - counts["tier1"]
        print(
            f"constrained readings: {counts['constrained_unpruned']} "
            f"(tier-1: {counts['tier1']}; default pruning keeps {kept})"
        )
    print(f"preferred readings: {preferred}")
    return EXIT_OK


def cmd_conformance(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    results = run_conformance(cfg)
    failures = 0
    for row in results:
        status = "ok" if row.passed else "FAIL"
        detail = f" ({row.detail})" if row.detail else ""
        print(f"{row.kind} {row.name}: {status}{detail}")
        failures += not row.passed
    passed = len(results) - failures
    print(f"{passed}/{len(results)} checks passed")
    if args.report:
        report_dir = Path(args.report)
        report_dir.mkdir(parents=True, exist_ok=True)
        rows = ["kind\tname\tpassed\tdetail"]
        rows += [f"{r.kind}\t{r.name}\t{r.passed}\t{r.detail}" for r in results]
        (report_dir / "conformance.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
        from .figures import save_conformance_figure

        save_conformance_figure(results, report_dir / "conformance.png")
    return EXIT_OK if failures == 0 else EXIT_INPUT


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": cmd_analyze,
        "oracle": cmd_oracle,
        "conformance": cmd_conformance,
    }
    try:
        return handlers[args.command](args)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_FAILURE
    except (DiscourseInputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
