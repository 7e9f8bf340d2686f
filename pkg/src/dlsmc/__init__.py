"""DLS-MC: dynamic local search for the maximum clique problem."""
from .clique_state import CliqueError, CliqueState
from .graph import (
    DimacsFormatError,
    Graph,
    complement,
    degree_stats,
    is_edge,
    load_graph,
    parse_dimacs_ascii,
    parse_dimacs_binary,
    random_graph,
)
from .oracle import enumerate_maximum_cliques, max_clique_exact, verify_clique
from .penalties import PENALTY_CAP, PenaltyState
from .solver import (
    PerturbationEvent,
    SolverConfig,
    SolverResult,
    expand,
    perturb,
    plateau_search,
    solve,
    solve_instrumented,
)
from .vertex_set import IndexedVertexSet

__version__ = "0.1.0"
