"""quohal: exact-arithmetic verification of finite-dimensional quasi-Hopf algebras.

The package represents algebras, quasibialgebras, quasi-Hopf algebras,
their modules, bimodules and Hopf modules by structure constants over GF(p)
or the rationals, verifies every axiom exactly, and computationally confirms
the structural freeness theorems (free Hopf modules, Nichols–Zoeller-style
freeness over subalgebras, Frobenius property, integral criterion for
semisimplicity) on desk-scale instances.
"""

from .field import FieldError, PrimeField, RationalField, field_from_spec
from .linalg import NotInvertible, TensorIndex, invert, kernel, kron, rank, solve
from .reports import (
    AxiomReport,
    CheckItem,
    FreeOfRank,
    IsoNo,
    IsoUnknown,
    IsoYes,
    NotFree,
    TheoremReport,
    UnknownFreeness,
)
from .algebra import FinAlgebra, op_algebra, tensor_algebra, tp_mul, verify_algebra
from .quasi import (
    QuasiBialgebra,
    QuasiHopfAlgebra,
    op_cop_bop,
    tensor_qba,
    verify_quasiantipode,
    verify_quasibialgebra,
)
from .errors import (
    ConstructionError,
    EmbeddingError,
    FormatError,
    InputError,
    PreconditionError,
    QuohalError,
    RegimeError,
)
from .modules import (
    BimoduleRep,
    ModuleRep,
    bimodule_iso_test,
    counit_bimodule,
    counit_module,
    direct_sum_modules,
    freeness_check,
    hom_space,
    is_faithful,
    is_module,
    iso_test,
    module_power,
    regular_bimodule,
    regular_module,
    restrict_bimodule,
    restrict_module,
    tensor_bimodules,
    tensor_modules,
    verify_bimodule,
)
from .hopfmod import (
    EmbeddingReport,
    HopfModule,
    SubalgebraEmbedding,
    cofree_hopf_module,
    cofree_left_hopf_module,
    cotensor,
    direct_sum_hopf_modules,
    identity_embedding,
    structure_freeness,
    tensor_embedding,
    twist_tensor_hopf_module,
    validate_embedding,
    verify_cotensor_iso,
    verify_hopf_module,
)
from .integrals import (
    FrobeniusForm,
    IntegralSpace,
    NeedLargerField,
    PanResult,
    UnsupportedOracle,
    dual_bimodule_Hstar,
    find_frobenius_form,
    integral_space,
    pan_semisimple,
    radical_oracle,
)
from .nz import auxthm_check, hopf_module_freeness, nz_freeness, semisimple_descent
from .zoo import (
    Cocycle3,
    GroupTable,
    ZOO_NAMES,
    check_3cocycle,
    coset_embedding,
    dual_group_algebra,
    group_algebra,
    pullback_cocycle,
    standard_cocycle,
    trivial_cocycle,
    zoo_instance,
    zoo_quasi_hopf,
)
from .io import (
    Bundle,
    add_bimodule,
    add_hopf_module,
    add_module,
    array_to_sparse,
    bundle_to_json,
    emit_embedding,
    emit_quasi_hopf,
    load_bundle,
    loads_bundle,
    read_source,
    sparse_to_array,
)

__version__ = "0.1.0"
