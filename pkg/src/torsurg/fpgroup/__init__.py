"""Finitely presented groups: words, presentations, finite quotients."""

from torsurg.fpgroup.classify import (
    FreeAbelian,
    GroupClass,
    NonAbelian,
    Undetermined,
    classify,
)
from torsurg.fpgroup.finite import (
    CATALOG_BY_NAME,
    FiniteGroup,
    alternating_group,
    default_catalog,
    dihedral_group_8,
    full_catalog,
    quaternion_group,
    sl2_3,
    symmetric_group,
    trivial_group,
)
from torsurg.fpgroup.homs import (
    EnumerationBudgetExceeded,
    Homomorphism,
    enumerate_homs,
    find_nonabelian_witness,
)
from torsurg.fpgroup.presentation import (
    Presentation,
    abelianization,
    certify_free_abelian,
    simplify,
    simplify_with_images,
)
from torsurg.fpgroup.words import (
    IDENTITY,
    Word,
    WordParseError,
    commutator,
    free_reduce,
    parse_word,
)

__all__ = [
    "CATALOG_BY_NAME",
    "IDENTITY",
    "EnumerationBudgetExceeded",
    "FiniteGroup",
    "FreeAbelian",
    "GroupClass",
    "Homomorphism",
    "NonAbelian",
    "Presentation",
    "Undetermined",
    "Word",
    "WordParseError",
    "abelianization",
    "alternating_group",
    "certify_free_abelian",
    "classify",
    "commutator",
    "default_catalog",
    "dihedral_group_8",
    "enumerate_homs",
    "find_nonabelian_witness",
    "free_reduce",
    "full_catalog",
    "parse_word",
    "quaternion_group",
    "simplify",
    "simplify_with_images",
    "sl2_3",
    "symmetric_group",
    "trivial_group",
]
