"""Walk distances and the long walk distance on connected weighted multigraphs."""
from .distances import (
    DistanceMatrix,
    build_h_matrix,
    long_walk_distance,
    long_walk_limit_estimate,
    longwalk_det,
    longwalk_ginverse,
    longwalk_submatrix,
    longwalk_via_gprime,
    rescaled_longwalk,
    resistance_distance,
    transform_gprime,
    walk_distance,
    zvector,
)
from .errors import InputError, LongWalkError, NumericalError
from .graph import (
    WeightedMultigraph,
    adjacency_matrix,
    build_graph,
    laplacian_matrix,
    para_laplacian,
    separates,
    shortest_path_distance,
)
from .linalg import PerronData, ginverse_kernel_shift, perron_eigenpair
from .verify import VerificationReport, run_full_report

__version__ = "0.1.0"
