"""Multi-step flip-flop quantum walks by graph powering.

Spatial search on the 2D torus in a reduced spectral representation, exact
full-space verification operators, the ancilla-controlled search variant, and
Szegedy quantization of symmetric Markov chains.
"""

from .torus import (
    AdjacencySpectrum,
    DirectedPort,
    PathPort,
    TorusGrid,
    adjacency_eigenphase,
    adjacency_matrix,
    adjacency_power_entry,
    adjacency_spectrum,
    powered_rotation_apply,
    rotation_map_apply,
)
from .fullwalk import (
    WalkSpectrum,
    apply_coin,
    apply_oracle,
    apply_shift,
    apply_walk,
    coin_uniform_state,
    correspondence_report,
    path_component_check,
    projection_sum,
    uniform_superposition,
    walk_matrix,
    walk_spectrum,
)
from .search import (
    SearchResult,
    SpectralModel,
    build_model,
    compute_alpha,
    iterate_search,
    nearest_odd,
    overlap_ws,
    overlap_wt,
    spectral_gap_power,
    success_probability,
)
from .sums import GridSums, grid_sums
from .tulsi import (
    TulsiModel,
    build_tulsi,
    compute_alpha_delta,
    iterate_tulsi,
    tulsi_overlaps,
    tulsi_success,
    tune_delta,
)
from .szegedy import (
    MarkovChain,
    SzegedyWalk,
    build_isometries,
    complete_chain,
    cycle_chain,
    discriminant,
    lazy_chain,
    nontrivial_eigenphases,
    query_cost,
    random_symmetric_chain,
    walk_apply,
)

__version__ = "0.1.0"
