"""Exact computations on flat solvmanifolds: lattices, holonomy, enumeration."""

from .errors import FlatSolvError, InvalidInputError, NumericalError, ObstructionError
from .exact_arith import (
    IntPolynomial,
    ReducedFraction,
    cyclotomic_factorization,
    cyclotomic_poly,
    euler_phi,
    gcd_lcm,
    hiller_phi,
)
from .spectrum import (
    Obstruction,
    OrbitCertificate,
    RotationSpectrum,
    admissible_pairs_dim5,
    eigenvalue_multiset,
    orbit_check,
    spectrum_order,
)
from .lie_model import (
    AlmostAbelianBlock,
    E2Factor,
    FlatLieAlgebra,
    SolvmanifoldSpec,
    TorusFactor,
    is_almost_abelian,
    spec_dimension,
    split_e2,
)
from .lattice import LatticeDescriptor, build_integer_model, build_lattice, rotation_matrix
from .holonomy import (
    FiniteAbelianGroup,
    abelian_witness,
    holonomy_of_block,
    holonomy_of_spec,
    merge_blocks,
    min_dim_solv,
    minimal_cyclic_witness,
    prime_power_witness,
)
from .enumeration import (
    DimensionReport,
    dimension_report,
    enumerate_almost_abelian,
    enumerate_e2_products,
    platycosm_table,
)

__version__ = "0.1.0"
