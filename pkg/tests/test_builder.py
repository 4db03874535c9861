import pytest

from tempora import analyze, load_config, underspecify
from tempora.builder import ParseFailure, attach
from tempora.config import discourse_dir
from tempora.discfile import load_discourse
from tempora.lattice import TOP
from tempora.model import (
    JUST_AFTER,
    OVERLAP,
    PRECEDE,
    SAME_EVENT,
    ClauseAnnotation,
    DiscourseInputError,
    SemanticAspect,
    SyntacticAspect,
    TempExprDirective,
    Tense,
    eventuality_order,
    new_discourse,
)


@pytest.fixture(scope="module")
def cfg():
    return load_config()


def clause(eid, sem=SemanticAspect.EVENT, aspect=SyntacticAspect.SIMPLE, **kw):
    return ClauseAnnotation(
        id=eid, tense=Tense.PAST, syn_aspect=aspect, sem_aspect=sem, **kw
    )


def shipped(name):
    return load_discourse(discourse_dir() / f"{name}.disc")


def test_cue_pins_a_single_reading(cfg):
    result = analyze(shipped("j1"), cfg, mode="enumerate")
    assert len(result.readings) == 1
    top = result.readings[0]
    assert eventuality_order(top) == [("e2", PRECEDE, "e1")]
    assert top.dcus[1].rhet_reln == "cause"


def test_anteriority_without_cues(cfg):
    result = analyze(shipped("j2"), cfg)
    assert eventuality_order(result.readings[0]) == [("e2", PRECEDE, "e1")]
    assert result.readings[0].dcus[1].opened_thread


def test_event_event_keeps_narration_and_elaboration(cfg):
    result = analyze(shipped("jjk"), cfg, mode="enumerate")
    relations = [r.dcus[1].temp_relns[0][1] for r in result.readings]
    assert relations == [JUST_AFTER, SAME_EVENT]


def test_state_after_event_prefers_overlap(cfg):
    result = analyze(shipped("jjk2"), cfg)
    assert result.readings[0].dcus[1].temp_relns[0][1] == OVERLAP


def test_continuations_resolve_to_the_preferred_thread(cfg):
    best_a = analyze(shipped("vvg_a"), cfg).readings
    assert len(best_a) == 2
    assert eventuality_order(best_a[0]) == [
        ("e2", PRECEDE, "e1"),
        ("e3", JUST_AFTER, "e1"),
    ]
    best_b = analyze(shipped("vvg_b"), cfg).readings
    assert len(best_b) == 2
    assert eventuality_order(best_b[0]) == [
        ("e2", PRECEDE, "e1"),
        ("e3", JUST_AFTER, "e2"),
    ]


def test_enumerate_counts_for_the_flashback_discourses(cfg):
    assert len(analyze(shipped("vvg_a"), cfg, mode="enumerate").readings) == 4
    unpruned = analyze(
        shipped("vvg_a"), cfg.with_flags(tier_prune=False), mode="enumerate"
    ).readings
    assert len(unpruned) == 6
    demoted = [r for r in unpruned if any(d.tier == 1 for d in r.dcus[1:])]
    assert len(demoted) == 2


def test_directive_overrides_stative_default(cfg):
    result = analyze(shipped("cons1"), cfg)
    assert eventuality_order(result.readings[0]) == [("e2", PRECEDE, "e1")]


def test_consistent_markers_refine_to_background(cfg):
    top = analyze(shipped("cl"), cfg).readings[0]
    assert top.dcus[1].rhet_reln == "background"
    assert top.dcus[1].temp_relns[0][1] == OVERLAP


def test_readings_sorted_by_non_increasing_score(cfg):
    for name in ("vvg_a", "vvg_b", "9a", "9b", "third"):
        readings = analyze(shipped(name), cfg, mode="enumerate").readings
        scores = [r.score for r in readings]
        assert scores == sorted(scores, reverse=True)


def test_best_readings_are_a_prefix_of_enumerate_set(cfg):
    for name in ("vvg_a", "jjk", "5a", "9b"):
        best = analyze(shipped(name), cfg).readings
        enum = analyze(shipped(name), cfg, mode="enumerate").readings
        enum_keys = {tuple(eventuality_order(r)) for r in enum}
        assert all(tuple(eventuality_order(r)) in enum_keys for r in best)


def test_cue_site_relations_stay_below_the_cue_node(cfg):
    discourse = [clause("e1"), clause("e2", cue="then")]
    for reading in analyze(discourse, cfg, mode="enumerate").readings:
        assert cfg.lattice.subsumes("narration", reading.dcus[1].rhet_reln)


def test_vacuous_cue_keeps_all_options(cfg):
    plain = analyze([clause("e1"), clause("e2")], cfg, mode="enumerate").readings
    cued = analyze([clause("e1"), clause("e2", cue="and")], cfg, mode="enumerate").readings
    assert [eventuality_order(r) for r in plain] == [eventuality_order(r) for r in cued]


def test_directive_site_realizes_exactly_the_directive(cfg):
    tx = TempExprDirective(relation=SAME_EVENT)
    discourse = [clause("e1"), clause("e2", temp_expr=tx)]
    readings = analyze(discourse, cfg, mode="enumerate").readings
    assert readings
    for r in readings:
        assert r.dcus[1].temp_relns[0][1] == SAME_EVENT


def test_conflicting_markers_fail_the_parse(cfg):
    with pytest.raises(ParseFailure) as err:
        analyze(shipped("ruled"), cfg)
    message = str(err.value)
    assert "as_a_result" in message and "precede" in message


def test_unattachable_flashback_still_precedes_the_focus(cfg):
    # in-thread options are empty, but a past perfect may branch off the
    # focus of the current thread
    discourse = [
        clause("e1", sem=SemanticAspect.ACTIVITY),
        clause("e2", sem=SemanticAspect.ACTIVITY, aspect=SyntacticAspect.PERF),
    ]
    result = analyze(discourse, cfg, mode="enumerate")
    assert len(result.readings) == 1
    top = result.readings[0]
    assert top.dcus[1].opened_thread
    assert eventuality_order(top) == [("e2", PRECEDE, "e1")]


def test_dead_end_opens_a_bare_thread(cfg):
    # a present perfect activity after a simple past activity licenses
    # nothing at all: the clause starts a relation-free thread
    discourse = [
        clause("e1", sem=SemanticAspect.ACTIVITY),
        ClauseAnnotation(
            id="e2", tense=Tense.PRESENT, syn_aspect=SyntacticAspect.PERF,
            sem_aspect=SemanticAspect.ACTIVITY,
        ),
    ]
    result = analyze(discourse, cfg, mode="enumerate")
    assert len(result.readings) == 1
    top = result.readings[0]
    assert top.dcus[1].opened_thread
    assert top.dcus[1].rhet_reln is None
    assert eventuality_order(top) == []


def test_cue_on_a_dead_end_fails(cfg):
    discourse = [
        clause("e1", sem=SemanticAspect.ACTIVITY),
        ClauseAnnotation(
            id="e2", tense=Tense.PRESENT, syn_aspect=SyntacticAspect.PERF,
            sem_aspect=SemanticAspect.ACTIVITY, cue="because",
        ),
    ]
    with pytest.raises(ParseFailure):
        analyze(discourse, cfg)


def test_duplicate_ids_rejected(cfg):
    with pytest.raises(DiscourseInputError):
        analyze([clause("e1"), clause("e1")], cfg)


def test_empty_discourse_rejected(cfg):
    with pytest.raises(DiscourseInputError):
        analyze([], cfg)


def test_unknown_cue_rejected(cfg):
    with pytest.raises(DiscourseInputError):
        analyze([clause("e1"), clause("e2", cue="nevertheless")], cfg)


def test_directive_anchor_must_be_earlier(cfg):
    tx = TempExprDirective(relation=PRECEDE, anchor="e9")
    with pytest.raises(DiscourseInputError):
        analyze([clause("e1"), clause("e2", temp_expr=tx)], cfg)


def test_dangling_threads_warn(cfg):
    result = analyze(shipped("9b"), cfg)
    assert any("open threads" in w for w in result.warnings)
    closed = analyze(shipped("vvg_a"), cfg)
    assert not closed.warnings


def test_attach_emits_nothing_for_unselected_threads(cfg):
    # best mode narrows to the preferred thread before attaching
    states = [new_discourse(shipped("third")[0])]
    states = attach(states[0], shipped("third")[1], cfg)
    successors = attach(states[0], shipped("third")[2], cfg, prefer_threads=True)
    anchors = {s.dcus[2].anchor[0] for s in successors}
    assert anchors == {"e2"}


# ---------------------------------------------------------------------------
# underspecification

def test_underspec_joins_surviving_relations(cfg):
    result = analyze(shipped("vvg_a"), cfg, mode="underspec")
    sites = {s.id: s for s in result.underspec.sites}
    assert sites["e2"].node == PRECEDE
    assert sites["e3"].node == TOP
    anchors = {c[0] for c in sites["e3"].candidates}
    assert anchors == {"e1", "e2"}


def test_underspec_singleton_site_keeps_its_node(cfg):
    result = analyze(shipped("cl"), cfg, mode="underspec")
    (site,) = result.underspec.sites
    assert site.node == "background"


def test_underspec_cue_site_is_the_cue_node(cfg):
    result = analyze(shipped("j1"), cfg, mode="underspec")
    (site,) = result.underspec.sites
    assert site.node == "cause"


def test_underspec_node_is_least_dominator(cfg):
    # brute force: every dominator of the surviving set dominates the node
    result = analyze(shipped("vvg_a"), cfg, mode="underspec")
    lattice = cfg.lattice
    for site in result.underspec.sites:
        survivors = {n for _, n in site.candidates if n is not None}
        assert all(lattice.subsumes(site.node, n) for n in survivors)
        for candidate in lattice.nodes:
            if all(lattice.subsumes(candidate, n) for n in survivors):
                assert lattice.subsumes(candidate, site.node)


def test_underspec_rejects_mixed_discourses(cfg):
    a = analyze(shipped("j1"), cfg).readings
    b = analyze(shipped("j2"), cfg).readings
    with pytest.raises(ValueError):
        underspecify(list(a) + list(b), cfg)
