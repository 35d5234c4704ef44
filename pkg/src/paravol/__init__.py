"""Exact parahoric volume engine.

Builds decorated local Dynkin diagrams, computes reductive quotients and
their orders over residue fields, compares parahoric volume factors
symbolically, and assembles arbitrarily large certified families of
coherent collections with equal covolume and pairwise non-conjugate types.
"""

from .construction import (
    CITATIONS,
    CoherentCollection,
    FamilyCertificate,
    Place,
    apply_torsionfree_refinement,
    build_family,
    certify_family,
    make_collection,
    refinement_index,
    relative_covolume,
)
from .diagram import (
    Edge,
    FiniteTypeLabel,
    GroupSpec,
    IWAHORI,
    LocalIndex,
    ParahoricTypeSpec,
    build_local_index,
    induced_subdiagram,
    realized_automorphisms,
)
from .errors import (
    CertificateError,
    DomainError,
    EqualCharacteristicError,
    ImproperTypeError,
    IncomparableError,
    InvalidResidueError,
    ParavolError,
    SchemaError,
    UnknownPlaceError,
    UnsupportedTypeError,
)
from .parahoric import (
    HalfPowerRational,
    LocalFactor,
    ONE,
    conjugate_types,
    factor_ratio,
    find_equal_volume_pairs,
    local_factor,
)
from .reductive import (
    OrderPolynomial,
    ReductiveQuotientDescriptor,
    evaluate_order,
    order_polynomial,
    quotient_descriptor,
)
from .roots import GROUP_DIMENSIONS, group_dimension

__all__ = [name for name in dir() if not name.startswith("_")]
