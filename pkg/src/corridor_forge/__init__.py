"""Randomized construction and verification of high-diameter simplicial
complexes and pseudomanifolds."""

from .complexes import (
    SimplicialComplex,
    boundary_complex_of_simplex,
    boundary_corridor,
    codim2_skeleton,
    complex_from_facets,
    corridor_face_count,
    f_vector,
    is_pseudomanifold,
    k_faces,
    make_face,
    straight_corridor,
)
from .corridor import ProcessConfig, RunReport, error_band, i_end, predicted_Y, run
from .dual import (
    DualGraph,
    build_dual,
    caccetta_smyth_bound,
    diameter,
    is_induced_path,
    is_strongly_connected,
    johnson_graph,
    longest_induced_path_bruteforce,
    vertex_connectivity,
)
from .gf2 import (
    boundary_matrix,
    boundary_of_indicator,
    check_small_facet_lemma,
    rank_gf2,
    reduced_betti,
    tightness_example,
)
from .pm import (
    PmConfig,
    PmRunReport,
    hpm_upper,
    hs_upper,
    pm_diameter_lower,
    pm_error_band,
    pm_predicted_Y,
    pm_run,
)

__version__ = "0.1.0"
