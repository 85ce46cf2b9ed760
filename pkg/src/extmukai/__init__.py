"""Exact lattice calculus for extended Mukai lattices of hyper-Kaehler
manifolds: integral quadratic lattices, isometry groups with spinor norms
and Eichler transvections, the graded Sym^n model of the Verbitsky
component with Todd-class linearisations, the catalog of isometries induced
by derived equivalences of Hilbert schemes, and discriminant criteria for
moduli spaces of sheaves on K3 surfaces.

All arithmetic is exact over Q; there are no tolerances anywhere.
"""

from .linalg import Mat, Q, kernel_basis, smith_normal_form, solve_linear
from .lattice import (
    DiscGroup,
    LatticeError,
    NotFound,
    QuadLattice,
    brute_force_isometric,
    discriminant_group,
    divisibility,
    is_primitive,
    orthogonal_complement,
    standard_lattice,
)
from .isometry import (
    Isometry,
    IsometryError,
    QuadSpace,
    TransvectionWord,
    cartan_dieudonne,
    disc_action,
    eichler_transport,
    eichler_transvection,
    generate_bounded,
    identity_isometry,
    minus_identity,
    preserves_lattice,
    reflection,
    spinor_norm,
)
from .spaces import (
    DeformationType,
    ExtMukaiSpace,
    ExtVector,
    SpaceError,
    b_field,
    custom_type,
    ext_vector_line_bundle,
    ext_vector_point,
    in_hat_aut_plus,
    k3_surface_type,
    k3n_lattices,
    k3n_type,
    kumn_type,
    membership,
    og6_type,
    og10_type,
    rank_predicate_kx_orbit,
    rank_predicate_o_orbit,
    shifted_integral_lattice,
    signum_normalize,
    split_algebraic,
)
from .verbitsky import (
    SymElement,
    SymError,
    bessel_polynomial_coefficient,
    euler_char_line_bundle,
    integrate,
    integrate_via_pairing,
    laplacian,
    lefschetz_e,
    lefschetz_power_coefficient,
    pair_with_sh,
    pairing_bn,
    project_t,
    psi_monomial,
    restricted_space,
    sqrt_todd_argument,
    sqrt_todd_bar,
    todd_argument,
    todd_bar,
)
from .catalog import (
    CATALOG_KEYS,
    CatalogError,
    NamedAction,
    PoincareModel,
    action,
    dn_transfer,
    k3_extended_space,
    poincare_checks,
)
from .moduli import (
    AlgebraicMukaiLattice,
    ModuliError,
    disc_lemma_check,
    fineness,
    moduli_dimension,
    ns_of_moduli,
    partner_invariants,
)

__version__ = "0.1.0"
