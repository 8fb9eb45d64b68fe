"""GME-AME, Scott and polygon entanglement measures for pure qudit states."""
from .chmap import is_dual_unitary, op_to_state, pair_marginals, reshape
from .errors import ConsistencyError, InputError, SolverError
from .kernels import BACKEND as KERNEL_BACKEND
from .measures import (
    MeasureReport,
    bipartition_ledger,
    gme_ame,
    gme_ame_operator,
    is_k_uniform,
    measure_report,
    scott,
)
from .polygon import SolverConfig, entropy_vector, polygon_measure, solve_polygon_system
from .statecore import (
    DensityMatrix,
    PureState,
    apply_local,
    haar_unitary,
    make_state,
    partial_trace,
    purity,
    von_neumann_entropy,
)

__version__ = "0.1.0"
