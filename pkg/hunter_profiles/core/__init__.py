"""Constants, explicit solutions and the self-similar ODE system."""

from .params import (
    derive_params,
    explicit_derivative,
    explicit_profile,
    explicit_solution,
    friedman_sonic_point,
    require_strict,
    residue_matrix,
)
from .system import (
    OriginSingular,
    SonicSingular,
    coefficient_matrices,
    enthalpy_rhs,
    from_enthalpy,
    from_log,
    from_pw,
    log_field,
    residual,
    rho_u_field,
    rhs_pw,
    rhs_rho_u,
    sonic_discriminant,
    to_enthalpy,
    to_log,
    to_pw,
)

__all__ = [
    "OriginSingular",
    "SonicSingular",
    "coefficient_matrices",
    "derive_params",
    "enthalpy_rhs",
    "explicit_derivative",
    "explicit_profile",
    "explicit_solution",
    "friedman_sonic_point",
    "from_enthalpy",
    "from_log",
    "from_pw",
    "log_field",
    "require_strict",
    "residual",
    "residue_matrix",
    "rho_u_field",
    "rhs_pw",
    "rhs_rho_u",
    "sonic_discriminant",
    "to_enthalpy",
    "to_log",
    "to_pw",
]
