"""catcw: finitely presented categories as a model for homotopy types.

Presentations with a confluent-rewriting word problem, the model structure
whose cofibrations are object-injective functors, colimits and homotopy
pushouts, spheres and CW recognition, cone/suspension K-theory witnesses,
and constant sheaves of categories over finite spaces.
"""

from .kernel import KERNEL_BACKEND, RuleTable
from .fpcat import (
    CatError,
    DanglingEndpoint,
    DuplicateName,
    FiniteCategory,
    FpCategory,
    Functor,
    Generator,
    IncompleteSystem,
    IncompleteSystemWarning,
    NonParallelRelation,
    NotFinite,
    Path,
    Quiver,
    build,
    check_functor,
    compose_functors,
    complete,
    discrete,
    finite_to_fp,
    from_json,
    functor_from_json,
    functors_equal,
    identity_functor,
    irreducible_words,
    normalize,
    terminal,
    to_finite,
)
from .model_structure import (
    EquivalenceCertificate,
    NotDecided,
    NotEquivalence,
    SearchSpaceTooLarge,
    all_functors,
    find_equivalence,
    find_isomorphism,
    is_cofibration,
    is_contractible,
    is_equivalence,
    is_groupoid,
    is_groupoid_fp,
    is_isofibration,
    iso_core,
)
from .colimits import (
    CoproductResult,
    EmptySet,
    PushoutResult,
    chaotic,
    cofibrant_replacement,
    coproduct,
    one_sided_homotopy_pushout,
    pushout,
)
from .cw import (
    CwVerdict,
    GroupoidComponent,
    GroupoidPresentation,
    MixedDimensions,
    attach_cells,
    build_one_complex,
    build_two_complex,
    cw_classify,
    point_collapse,
    read_off_presentation,
    sphere,
)
from .ktheory import (
    K0_SCOPE_NOTE,
    CofiberCertificate,
    CofiberFailure,
    CompletionBudgetExceeded,
    ContractibilityCertificate,
    DoubleSuspensionCertificate,
    K0Witness,
    PointedCategory,
    as_pointed_fp,
    cone,
    cone_map,
    cone_unit,
    is_cofiber_sequence,
    k0_vanishing_witness,
    suspend,
    verify_double_suspension,
)
from .sheaftopos import (
    CatPresheaf,
    CatSheaf,
    CwSheafVerdict,
    FiniteSpace,
    IsoCertificate,
    NotAnOpen,
    NotConnected,
    SheafMap,
    UnitFailure,
    classify_cw_sheaf,
    connected_components,
    constantify,
    exotic_map_demo,
    global_sections,
    is_connected,
    is_in_constant_image,
    sheafify_constant,
    sheafify_functor,
    space_from_json,
    unit_check,
)

__version__ = "0.1.0"
