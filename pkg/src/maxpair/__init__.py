"""Finite-group computation engine for generation-rank maximality and
prime-pair automorphism conditions."""

from .presentations import (
    PcPresentation,
    PresentationError,
    InconsistentPresentationError,
    Word,
    parse_presentation,
    render_presentation,
    normal_form,
    build_group,
)
from .engine import (
    ConcreteGroup,
    SubgroupSet,
    Series,
    NotPGroupError,
    SizeCapError,
    closure,
    center,
    centralizer,
    commutator_subgroup,
    lower_central_series,
    gamma,
    frattini_subgroup,
    frattini_p,
    omega_n,
    agemo_n,
    exponent,
    is_regular,
    quotient_group,
    subgroup_as_group,
    direct_product,
    semidirect_product,
    is_isomorphic,
    fingerprint,
)
from .actions import (
    GroupMap,
    CharacterValue,
    NotAHomomorphismError,
    hom_from_images,
    identity_map,
    map_order,
    search_automorphisms,
    acts_through_character,
    frattini_scalar,
    plus_minus_split,
)
from .subgroups import (
    SubgroupLattice,
    all_subgroups,
    maximal_subgroups,
    min_generators,
    subgroup_min_generators,
    jumps,
)
from .maximality import (
    MaximalityReport,
    PairCheckReport,
    StructuralReport,
    is_d_maximal,
    check_pair,
    build_group_from_pair,
    strip_pair,
    quotient_pair,
    product_pair,
    structural_report,
)
from .catalog import (
    CatalogError,
    ExtensionSlotError,
    list_catalog,
    get_group,
    get_automorphism,
)

__version__ = "0.1.0"
