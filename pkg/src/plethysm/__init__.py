"""Exact computational workbench for plethysms of complete homogeneous
symmetric functions and the Schur-positivity order on partitions."""

from .errors import ResourceCapError, UsageError
from .homs import (
    BijectiveTableau,
    FilledTableau,
    enumerate_ssyt,
    f_t,
    join,
    polytabloid,
    rlex_filling,
    ssh_rank,
    stability_lift_2col,
    stability_lift_h,
    theta,
    theta_bar,
    theta_hat,
    verify_stability,
)
from .linalg import SparseRationalMatrix, is_injective, span_rank
from .order import (
    RelationVerdict,
    antisymmetry_scan,
    hasse_diagram,
    is_le,
    schur_difference,
    transitivity_scan,
)
from .partitions import (
    Partition,
    add_parts,
    conjugate,
    enumerate_partitions,
    num_standard_tableaux,
    repeat,
    union_parts,
    z_of,
)
from .symfunc import (
    CharacterTable,
    SymExpr,
    character_table,
    character_value,
    h_to_p,
    kostka,
    monomial_oracle_expand,
    multiply_p,
    oracle_schur_expand,
    plethysm,
    plethysm_coefficient,
    plethysm_h,
    plethysm_schur,
    schur_coefficient,
    schur_expand,
)
from .tabloids import (
    ModuleVector,
    PlethysticTabloid,
    Tabloid,
    act,
    canonicalize,
    enumerate_basis,
    fh_map_matrix,
    fh_map_vector,
    phi,
    phi_tilde,
    phi_tilde_tabloid,
    phi_tuple,
    psi_tuple,
    tabloid,
    union_compose_injection,
    union_inner_inject,
    union_outer_iso,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
