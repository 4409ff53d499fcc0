from .condense import recover_interior, static_condense
from .dofmap import DofMap, augmented_cells, build_dofmap
from .field import DiscreteField
from .local import (
    ELEMENT_KINDS,
    PROBLEM_KINDS,
    CellBasis,
    ElementParams,
    LocalMatrices,
    Recovery,
    cell_basis,
    check_kinds,
    local_matrices,
    n_components,
)
from .system import (
    SparseSystem,
    assemble,
    edge_boundary_values,
    interpolate_midpoints,
    reported_dofs,
)
