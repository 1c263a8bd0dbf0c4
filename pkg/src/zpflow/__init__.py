"""Exact solvers for additive bases of Z_p^n built from small-support linear
bases, and for boundary-prescribed graph orientations and flows over Z_k."""

from ._kernels import backend
from .basis_builder import (
    RepresentResult,
    Route,
    TraceStep,
    bases_required,
    bases_required_any_shadow,
    bases_required_zero_sum,
    meets_threshold,
    replay,
    represent,
    represent_zero_sum,
    required_bases_for,
)
from .errors import Infeasible, ZpflowError
from .field import Modulus, Residue, cd_represent, inverse_mod, mod_inverse
from .flows import (
    Boundary,
    Digraph,
    EdgeWeighting,
    FlowAssignment,
    ListAssignment,
    asf_connectivity_threshold,
    boundary_of_flow,
    construct_asf,
    edge_vector_correspondence,
    is_antisymmetric_flow,
    reduce_list_flow,
    scaled_orientation,
    solve_01_flow,
    solve_beta_orientation,
    solve_list_flow,
    solve_prescribed_degrees,
    solve_weighted_orientation,
    solve_weighted_orientation_inductive,
    spanning_tree_basis,
    verify_orientation,
)
from .graph import (
    Multigraph,
    PartitionCut,
    choose_partition,
    edge_connectivity,
    global_min_cut,
    mader_extract,
    spanning_tree_packing,
)
from .subset_oracle import GroupStateTable, is_additive_basis, subset_sum
from .zpn_linear import (
    BasisFamily,
    GroupVec,
    Shadow,
    SpaceKind,
    contract_rows,
    drop_last_row,
    extract_basis_columns,
    is_linear_basis,
    rank_gf,
    scale_rows,
)

__version__ = "0.1.0"

__all__ = [
    "BasisFamily",
    "Boundary",
    "Digraph",
    "EdgeWeighting",
    "FlowAssignment",
    "GroupStateTable",
    "GroupVec",
    "Infeasible",
    "ListAssignment",
    "Modulus",
    "Multigraph",
    "PartitionCut",
    "RepresentResult",
    "Residue",
    "Route",
    "Shadow",
    "SpaceKind",
    "TraceStep",
    "ZpflowError",
    "asf_connectivity_threshold",
    "backend",
    "bases_required",
    "bases_required_any_shadow",
    "bases_required_zero_sum",
    "boundary_of_flow",
    "cd_represent",
    "choose_partition",
    "construct_asf",
    "contract_rows",
    "drop_last_row",
    "edge_connectivity",
    "edge_vector_correspondence",
    "extract_basis_columns",
    "global_min_cut",
    "inverse_mod",
    "is_additive_basis",
    "is_antisymmetric_flow",
    "is_linear_basis",
    "mader_extract",
    "meets_threshold",
    "mod_inverse",
    "rank_gf",
    "reduce_list_flow",
    "replay",
    "represent",
    "represent_zero_sum",
    "required_bases_for",
    "scale_rows",
    "scaled_orientation",
    "solve_01_flow",
    "solve_beta_orientation",
    "solve_list_flow",
    "solve_prescribed_degrees",
    "solve_weighted_orientation",
    "solve_weighted_orientation_inductive",
    "spanning_tree_basis",
    "spanning_tree_packing",
    "subset_sum",
    "verify_orientation",
]
