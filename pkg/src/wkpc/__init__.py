"""Watson-Crick automata, communicating automata systems, multihead
automata, and the constructions connecting them."""

from .classify import (
    HOLDS_UP_TO_BOUND,
    VIOLATED,
    SystemClassReport,
    WeakDeterminismReport,
    WKClassReport,
    bounded_weak_determinism,
    classify_system,
    classify_wk,
    multihead_is_deterministic,
    prefix_comparable,
)
from .constructions import (
    ConstructionError,
    NormalizationReport,
    lift_pcfa,
    normalize_one_limited,
    product_multihead,
)
from .engines import (
    ACCEPTED,
    COMPONENT_STUCK,
    CYCLE_WITHOUT_PROGRESS,
    DEFAULT_NODE_LIMIT,
    EXHAUSTED,
    RESOURCE_LIMIT,
    PCConfiguration,
    ResourceLimitError,
    RunResult,
    component_move_counts,
    multihead_accepts,
    pcfa_accepts,
    pcwk_accepts,
    pcwk_step,
    reachable_fixed_strand,
    wk_accepts,
    wk_accepts_fixed,
)
from .model import (
    FAComponent,
    FARule,
    MultiheadAutomaton,
    MultiheadRule,
    PCFASystem,
    PCWKSystem,
    Rho,
    WKAutomaton,
    WKRule,
    Word,
    rho_complements,
    rho_is_injective,
    rho_upper_preimages,
    validate,
    wrap_wk,
)
from .oracle import (
    EquivalenceReport,
    complement_strands,
    enumerate_accepted,
    equivalent_up_to,
    semantic_example2_member,
    semantic_square_member,
)
from .textio import (
    MachineDocument,
    ParseError,
    expand_word,
    load_machine,
    parse_machine,
    serialize_machine,
)

__all__ = [
    "ACCEPTED",
    "COMPONENT_STUCK",
    "CYCLE_WITHOUT_PROGRESS",
    "DEFAULT_NODE_LIMIT",
    "EXHAUSTED",
    "HOLDS_UP_TO_BOUND",
    "RESOURCE_LIMIT",
    "VIOLATED",
    "ConstructionError",
    "EquivalenceReport",
    "FAComponent",
    "FARule",
    "MachineDocument",
    "MultiheadAutomaton",
    "MultiheadRule",
    "NormalizationReport",
    "ParseError",
    "PCConfiguration",
    "PCFASystem",
    "PCWKSystem",
    "ResourceLimitError",
    "Rho",
    "RunResult",
    "SystemClassReport",
    "WeakDeterminismReport",
    "WKAutomaton",
    "WKClassReport",
    "WKRule",
    "Word",
    "bounded_weak_determinism",
    "classify_system",
    "classify_wk",
    "complement_strands",
    "component_move_counts",
    "enumerate_accepted",
    "equivalent_up_to",
    "expand_word",
    "lift_pcfa",
    "load_machine",
    "multihead_accepts",
    "multihead_is_deterministic",
    "normalize_one_limited",
    "parse_machine",
    "pcfa_accepts",
    "pcwk_accepts",
    "pcwk_step",
    "prefix_comparable",
    "product_multihead",
    "reachable_fixed_strand",
    "rho_complements",
    "rho_is_injective",
    "rho_upper_preimages",
    "semantic_example2_member",
    "semantic_square_member",
    "serialize_machine",
    "validate",
    "wk_accepts",
    "wk_accepts_fixed",
    "wrap_wk",
]
