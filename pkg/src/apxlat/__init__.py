"""apxlat: exact construction and certification of approximate subgroups.

Cut-and-project model sets, arithmetic approximate lattices, counting
quasimorphisms, and the bounded-Euler-cocycle central extension, all with
machine-checkable covering certificates at finite truncation scale.
"""

from .covering import (
    CoveringCertificate,
    DeloneReport,
    NotSymmetric,
    Uncoverable,
    commensurable,
    covering_certificate,
    delone_check,
    intersect_classes,
    maximal_free_set,
    product_set,
    verify_approximate_subgroup,
)
from .cutproject import (
    CutProjectScheme,
    ModelSet,
    Window,
    approximate_ring_zp,
    fibonacci_scheme,
    generate_model_set,
    meyer_check,
    pisot_matrix_set,
    pullback_containment_check,
    quad_scheme,
    zp_ring_scheme,
    zp_scheme,
)
from .euler import (
    RealMat2,
    circle_action,
    cocycle_identity_check,
    euler_cocycle,
    lift_eval,
)
from .extension import (
    ExtElem,
    default_generators,
    delta_qm,
    ext_ball,
    kernel_Delta,
    twisted_product,
)
from .freewords import FreeWord, f2_ball, free_group_f2
from .groups import AmbientGroup, PointSet
from .matrices import Mat2, mat2_det, mat2_inv, mat2_mul
from .quasimorphism import (
    Quasimorphism,
    approximate_kernel,
    brooks_count,
    brooks_value,
    empirical_defect,
    homogenize_estimate,
    in_brooks_A,
    nearest_integer_qh,
)
from .scalars import PScaled, QuadScalar, galois_conj, is_pisot, padic_norm

__version__ = "0.1.0"

__all__ = [
    "AmbientGroup",
    "CoveringCertificate",
    "CutProjectScheme",
    "DeloneReport",
    "ExtElem",
    "FreeWord",
    "Mat2",
    "ModelSet",
    "NotSymmetric",
    "PScaled",
    "PointSet",
    "QuadScalar",
    "Quasimorphism",
    "RealMat2",
    "Uncoverable",
    "Window",
    "approximate_kernel",
    "approximate_ring_zp",
    "brooks_count",
    "brooks_value",
    "circle_action",
    "cocycle_identity_check",
    "commensurable",
    "covering_certificate",
    "default_generators",
    "delone_check",
    "delta_qm",
    "empirical_defect",
    "euler_cocycle",
    "ext_ball",
    "f2_ball",
    "fibonacci_scheme",
    "free_group_f2",
    "galois_conj",
    "generate_model_set",
    "homogenize_estimate",
    "in_brooks_A",
    "intersect_classes",
    "is_pisot",
    "kernel_Delta",
    "lift_eval",
    "mat2_det",
    "mat2_inv",
    "mat2_mul",
    "maximal_free_set",
    "meyer_check",
    "nearest_integer_qh",
    "padic_norm",
    "pisot_matrix_set",
    "product_set",
    "pullback_containment_check",
    "quad_scheme",
    "twisted_product",
    "verify_approximate_subgroup",
    "zp_ring_scheme",
    "zp_scheme",
]
