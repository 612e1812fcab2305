"""Spectrum and eigenbasis of the averaging operator on metric graphs."""
from .eigenbasis import (ConditioningError, EigenField, assemble_basis, compare_with_oracle,
                         completeness_check, kernel_fields, kernel_summary, verify_eigenbasis)
from .fields import (EdgeField, apply_A, field_gram, field_inner, field_norm, interpolate)
from .flows import (Flow, FlowBasis, even_flow_basis, flow_nullspace_oracle, kirchhoff_residual,
                    mperp_basis, odd_flow_basis)
from .linalg import jacobi_eigh
from .network import (Network, NetworkError, build_network, generate, is_bipartite, load_network,
                      spanning_tree_and_cycles)
from .quadrature import discretize_A
from .spectral_map import (cycle_spectrum_analytic, dl_point_spectrum, mu, omega_star,
                           spectral_radius_A, spectrum_A_finite, tree_analysis)
from .spectrum import SpectrumP, eigendecompose, transition_matrix
from .unitfunc import J, J_lambda, S, UnitFunction, u_basis, unit_inner

__all__ = [
    "ConditioningError", "EigenField", "assemble_basis", "compare_with_oracle",
    "completeness_check", "kernel_fields", "kernel_summary", "verify_eigenbasis",
    "EdgeField", "apply_A", "field_gram", "field_inner", "field_norm", "interpolate",
    "Flow", "FlowBasis", "even_flow_basis", "flow_nullspace_oracle", "kirchhoff_residual",
    "mperp_basis", "odd_flow_basis", "jacobi_eigh", "Network", "NetworkError", "build_network",
    "generate", "is_bipartite", "load_network", "spanning_tree_and_cycles", "discretize_A",
    "cycle_spectrum_analytic", "dl_point_spectrum", "mu", "omega_star", "spectral_radius_A",
    "spectrum_A_finite", "tree_analysis", "SpectrumP", "eigendecompose", "transition_matrix",
    "J", "J_lambda", "S", "UnitFunction", "u_basis", "unit_inner",
]
