"""Merging calculus for groups of Menger's paths in acyclic directed networks.

Builds the extremal families, certifies non-reroutability, verifies the
alternating-walk merging identities, and recomputes the exact extremal
merging numbers by exhaustive search at desk scale.
"""

from .analysis import (
    AaSequence,
    BlockDecomposition,
    MergedSubpath,
    SemiReach,
    aa_merging_identity,
    all_aa_sequences,
    block_decomposition,
    block_identities,
    brute_force_reroutable,
    count_mergings,
    find_mergings,
    group_is_reroutable,
    is_reroutable,
    minimize_mergings,
    phi_aa_sequence,
    psi_aa_sequence,
    reduce_network,
    semi_reach,
    semi_reach_reroutable,
)
from .bounds import BoundTable, bound_m, bound_m_star, upper_m_3n
from .codec import MergingSequence, canonical_key, decode, encode, validate
from .core import (
    Dag,
    Edge,
    all_menger_path_sets,
    get_edge_limit,
    menger_paths,
    min_cut,
    set_edge_limit,
    topological_order,
)
from .families import (
    ConstructionRecipe,
    concat_back_to_back,
    concat_chain,
    concat_f_g,
    concat_shifted,
    fixture,
    fixtures,
    gen_e,
    gen_e_padded,
    gen_f,
    gen_h,
    gen_mn_lower,
    gen_one_two_n,
    gen_ones_n,
    gen_ones_two_chain,
    gen_ones_two_grid,
    gen_two_n_extremal,
    generate,
    recipe,
)
from .io import from_json, from_json_dict, to_dot, to_json, to_json_dict
from .network import (
    MergeNetwork,
    PathGroup,
    build_network,
    is_covered,
    swap_groups,
    validate_network,
)
from .search import (
    SearchLimits,
    SearchOutcome,
    count_extremal_two_n,
    search_m,
    search_m_star,
    search_with_added_path,
    verify_known_table,
)

from . import errors

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
