"""Level-set machinery for time-dependent Hamilton-Jacobi equations.

Grids and implicit surfaces, upwind ENO/WENO gradients, the Lax-Friedrichs
monotone term, CFL-bounded TVD Runge-Kutta integration, and the two-rocket
pursuit-evasion reachable tube built on top of them.
"""
from .grid import (
    BoundaryCondition,
    Grid,
    ScalarField,
    create_grid,
    dirichlet,
    extend_with_ghost_cells,
    extrapolate,
    mesh_coordinates,
    periodic,
    with_boundary,
)
from .integrator import (
    IntegrationResult,
    IntegratorOptions,
    ode_cfl_1,
    ode_cfl_2,
    ode_cfl_3,
)
from .reachability import (
    BRTResult,
    ReachProblem,
    RocketParams,
    rockets_hamiltonian,
    rockets_hamiltonian_extremal,
    rockets_hamiltonian_oracle,
    rockets_partials,
    rockets_term_config,
    solve_brt,
    sublevel_volume,
)
from .shapes import (
    csg_complement,
    csg_difference,
    csg_intersect,
    csg_union,
    cylinder,
    ellipsoid,
    hyper_rectangle,
    sphere,
)
from .snapshot import export_field, import_field
from .spatial import (
    GHOST_WIDTH,
    DerivativePair,
    DividedDifferenceTable,
    WenoWorkspace,
    derivative_pair,
    divided_differences,
    upwind_first_eno2,
    upwind_first_eno3,
    upwind_first_first,
    upwind_first_weno5,
    weno5_workspace,
)
from .term import (
    TermConfig,
    TermOutput,
    advection_term_config,
    dissipation_glf,
    term_lax_friedrichs,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryCondition",
    "BRTResult",
    "DerivativePair",
    "DividedDifferenceTable",
    "GHOST_WIDTH",
    "Grid",
    "IntegrationResult",
    "IntegratorOptions",
    "ReachProblem",
    "RocketParams",
    "ScalarField",
    "TermConfig",
    "TermOutput",
    "WenoWorkspace",
    "advection_term_config",
    "create_grid",
    "csg_complement",
    "csg_difference",
    "csg_intersect",
    "csg_union",
    "cylinder",
    "derivative_pair",
    "dirichlet",
    "dissipation_glf",
    "divided_differences",
    "ellipsoid",
    "export_field",
    "extend_with_ghost_cells",
    "extrapolate",
    "hyper_rectangle",
    "import_field",
    "mesh_coordinates",
    "ode_cfl_1",
    "ode_cfl_2",
    "ode_cfl_3",
    "periodic",
    "rockets_hamiltonian",
    "rockets_hamiltonian_extremal",
    "rockets_hamiltonian_oracle",
    "rockets_partials",
    "rockets_term_config",
    "solve_brt",
    "sphere",
    "sublevel_volume",
    "term_lax_friedrichs",
    "upwind_first_eno2",
    "upwind_first_eno3",
    "upwind_first_first",
    "upwind_first_weno5",
    "weno5_workspace",
    "with_boundary",
]
