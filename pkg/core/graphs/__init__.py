# region 图模块导出
from .generate import (
    RIGID_CHECK_MAX_VERTICES,
    gen_hamiltonian_graph,
    gen_hamiltonian_with_degrees,
    gen_noniso_pair,
    gen_twin_hamiltonian,
    random_graph,
    random_rigid_graph,
)
from .graph import (
    HAMILTONIAN_CYCLE,
    Graph,
    Permutation,
    PlantedSolution,
    apply_perm,
    compose,
    decode_graph,
    decode_perm,
    encode_vertex_sequence,
    invert,
    normalize_cycle,
    perm_rank,
    perm_rank_bits,
    perm_unrank,
    permute_solution,
    random_perm,
    read_vertex_sequence,
    validate_cycle,
)
from .oracle import (
    ORACLE_MAX_VERTICES,
    automorphism_count,
    find_isomorphism,
    is_rigid,
)

__all__ = [
    "HAMILTONIAN_CYCLE",
    "ORACLE_MAX_VERTICES",
    "RIGID_CHECK_MAX_VERTICES",
    "Graph",
    "Permutation",
    "PlantedSolution",
    "apply_perm",
    "automorphism_count",
    "compose",
    "decode_graph",
    "decode_perm",
    "encode_vertex_sequence",
    "find_isomorphism",
    "gen_hamiltonian_graph",
    "gen_hamiltonian_with_degrees",
    "gen_noniso_pair",
    "gen_twin_hamiltonian",
    "invert",
    "is_rigid",
    "normalize_cycle",
    "perm_rank",
    "perm_rank_bits",
    "perm_unrank",
    "permute_solution",
    "random_graph",
    "random_perm",
    "random_rigid_graph",
    "read_vertex_sequence",
    "validate_cycle",
]
# endregion
