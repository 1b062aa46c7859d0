"""Hom-quantum groups at desk scale.

Quasi-triangular Hom-bialgebras given by structure constants, their twists,
and the Hom-Yang-Baxter operators they induce on modules.  Coefficients are
approximate complex numbers or truncated power series in ``h``.
"""

from .catalog import (
    FiniteAbelianGroup,
    GroupMorphism,
    anyonic_hom,
    anyonic_qt,
    bicharacter_r,
    check_group_r,
    cyclic_power_endo,
    function_bialgebra,
    group_bialgebra,
)
from .hommodules import (
    HomModule,
    HybeSolution,
    b_alpha_v1_matrix,
    braid_operators,
    build_b,
    build_b_alpha,
    check_braid_relations,
    check_hybe,
    check_module_axioms,
    regular_module,
    twisted_module,
)
from .homstruct import HomAlgebra, HomBialgebra, HomCoalgebra, StructureError, VerificationReport, check_all_bialgebra, dualize
from .quasitri import QTHomBialgebra, check_all_qt, check_qhybe, check_qt_axioms, is_alpha_invariant, lambda_maps
from .scalars import Scalar, ScalarRing
from .tensor import LinearOperator, TensorElement
from .twisting import HypothesisError, VerificationError, qt_yau_twist, twist_r, yau_twist
from .uhsl2 import Uhsl2Model, uhsl2_r_operator, vn_action, vn_alpha

__version__ = "0.1.0"
