"""MaxMin minimal st-separator / minimal odd cycle transversal solver suite."""

from .certificates import (
    CheckResult,
    ExtensionRequest,
    OctCertificate,
    SeparatorCertificate,
    Witness,
    check_oct_certificate,
    check_separator_certificate,
    extend_oct_certificate,
    extend_separator_certificate,
    is_minimal_oct,
    is_minimal_set_separator,
    is_minimal_st_separator,
    verify_witness,
)
from .graph import (
    CycleRecord,
    Graph,
    GraphError,
    OddClosedWalk,
    ParseError,
    TwoColoring,
    bipartition_or_odd_cycle,
    connected_components,
    format_graph,
    induced_subgraph,
    neighborhood,
    parse_graph,
    shortest_odd_cycle,
)
from .oct_fpt import (
    OctResult,
    SunflowerDecomposition,
    VertexClassification,
    classify_vertex,
    find_sunflower,
    grow_from_long_cycle,
    oct_from_small_cycles,
    solve_unbreakable_oct,
)
from .oracle import (
    BreakabilityVerdict,
    OracleSizeError,
    Separation,
    breakability_witness,
    enumerate_minimal_octs,
    enumerate_minimal_st_separators,
    exists_induced_odd_cycle_through,
    exists_induced_odd_path,
    exists_induced_st_path_through,
    maxmin_oct_bruteforce,
    maxmin_stsep_bruteforce,
)
from .reductions import ReductionResult, odd_path_to_odd_cycle_gadget, stsep_to_oct
from .stsep_fpt import BranchState, StsepResult, apply_reductions, solve_unbreakable_stsep

__version__ = "0.1.0"
