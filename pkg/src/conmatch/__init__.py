"""Connected matchings in edge-coloured graphs.

A desk-scale toolkit: exact maximum matchings (blossom search), 2-matchings,
Gallai-Edmonds decompositions, monochromatic connected-matching analysis of
coloured graphs, extremal colouring generators with exhaustive structure
verifiers, and a reduction that turns an almost-complete coloured graph (or
almost-blow-up) into a slightly smaller complete colouring with the same
connected-matching ceilings.
"""

from .graphs import (
    COMPLETE,
    BlowupSpec,
    ColouredGraph,
    GraphFormatError,
    GroundComplement,
    InternalCheckError,
    PreconditionError,
    all_pairs,
    blowup_spec,
    build_blowup,
    coloured_graph,
    complement_within,
    induced_subgraph,
    load_graph,
    min_ground_degree_deficit,
    parse_graph,
    restrict_blowup,
    save_graph,
    write_graph,
)
from .matching import (
    Matching,
    TwoMatching,
    brute_matching_number,
    brute_two_matching_order,
    enumerate_maximum_matchings,
    is_factor_critical,
    konig_cover,
    matching_number,
    max_matching,
    max_two_matching,
    max_two_matching_order,
)
from .gallai_edmonds import (
    GEDecomposition,
    GETheoremReport,
    StarBlowup,
    critical_vertex,
    ge_decompose,
    maximal_star_extension,
    maximal_two_matching_extension,
    star_edge_set,
    verify_ge_theorem,
)
from .mono import (
    CMReport,
    CMWitness,
    ComponentInfo,
    has_cm_at_least,
    largest_mono_cm,
    mono_components,
)
from .reduction import (
    ReductionParams,
    ReductionReport,
    TypeSignature,
    classify_components,
    complement_matching_bound,
    delta_threshold,
    maximalize,
    params_from_json,
    reduce_blowup,
    reduce_complete,
    reduction_params,
    type_census,
    type_of,
)
from .verify import (
    StructureB2,
    StructureC,
    check_structure_b2,
    check_structure_c,
    derive_complement_filter,
    gen_structure_b2,
    gen_structure_c,
    random_graph,
    verify_bipartite_structure,
    verify_ge_random,
    verify_mono_cm_guarantee,
    verify_pulleyblank,
    verify_pulleyblank_random,
    verify_stability_structure,
    verify_three_colour_structure,
)

__version__ = "0.1.0"
