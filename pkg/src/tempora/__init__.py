"""Temporal and rhetorical discourse structure from per-clause annotations."""

from .builder import (
    AnalysisResult,
    ParseFailure,
    UnderspecifiedStructure,
    UnderspecSite,
    analyze,
    attach,
    underspecify,
)
from .centering import (
    PreferenceWeights,
    attach_to_thread,
    rate_thread,
    select_threads,
    start_new_thread,
)
from .closeness import ClosenessLexicon, closeness, dcu_thread_closeness, load_closeness
from .config import AnalyzerConfig, default_data_dir, discourse_dir, load_config
from .constraints import (
    AttachmentOption,
    ExplicitConflict,
    FeasibilityTable,
    S1Context,
    apply_explicit,
    feasible_general,
    feasible_simple_past_event,
    load_table,
)
from .discfile import load_discourse, parse_discourse, render_discourse
from .lattice import (
    BOTTOM,
    TOP,
    CueLexicon,
    RelationLattice,
    cue_relation,
    load_cues,
    load_lattice,
)
from .model import (
    CORE_RELATIONS,
    JUST_AFTER,
    OVERLAP,
    PRECEDE,
    SAME_EVENT,
    AnalysisState,
    AnchorKind,
    ClauseAnnotation,
    Dcu,
    DiscourseInputError,
    Reading,
    SemanticAspect,
    SyntacticAspect,
    TempCenter,
    TempExprDirective,
    Tense,
    Thread,
    eventuality_order,
    format_relation,
    new_discourse,
)

__version__ = "0.1.0"
