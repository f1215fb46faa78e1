"""Exact stability computations for equivariant modules over diagonal groups, tori and SL2."""

from .approximation import choose_window, error_between_windows, error_to_theta, majorant, verify_limit
from .constellations import enumerate_monomial_constellations, staircases_with_hilbert
from .errors import ConstellationError, InputError, InternalCheckError, PairingError
from .geometry import hilbert_chow_point, invariant_monomial_generators
from .git import derive_parameters, git_verdict, mu_filtration, mu_one_step, saturate, theta_tilde
from .groups import GroupSpec, decompose_sym_power, tensor
from .hilbert import ConstantTail, GeometricTail, HilbertFunction, ThetaVector, ZeroTail, pairing
from .modules import (
    ActionSpec,
    EquivariantModule,
    GradedSubspace,
    QuotientPresentation,
    enumerate_submodules,
    free_orbit_module,
    from_monomial_basis,
    submodule_generated,
)
from .problem import format_problem, parse_problem, parse_text
from .stability import hilbert_scheme_mode_check, module_theta_verdict, theta_verdict

__version__ = "0.1.0"
