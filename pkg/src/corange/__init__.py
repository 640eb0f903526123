"""Range geometry of square complex matrices: EP, DR, SR, co-EP, weak-EP and CoR."""

from .classes import (
    ClassificationReport,
    NotCoRError,
    classify,
    classify_via_blocks,
    cor_structure,
)
from .decomposition import BlockDecomposition, decompose, intersection_projector, reconstruct
from .formulas import (
    QuotientResult,
    quotient,
    range_additivity,
    star_order_quantities,
    sum_pinv_cor,
)
from .generators import (
    GenerationError,
    ProjectionWord,
    paper_fixture,
    projection_product,
    random_class_instance,
    random_projection,
)
from .numerics import (
    DEFAULT_TOL,
    InputError,
    KernelError,
    ToleranceConfig,
    numerical_rank,
    operator_norm,
    pinv,
    svd,
)
from .subspaces import (
    Subspace,
    column_space,
    intersect,
    null_space,
    ominus,
    projector,
    subspace_contains,
    subspace_equals,
    subspace_sum,
)

__version__ = "0.1.0"
