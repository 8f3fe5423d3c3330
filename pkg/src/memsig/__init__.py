"""Exact signature tensors of paths and two-parameter membranes.

Public surface re-exported here: the rational scalar, dense matrices and
tensors, path/membrane signature routines, the linear-time piecewise-bilinear
algorithm and the variety diagnostics.
"""

from .fastsig import (
    CellPolyField,
    advance_letter,
    cell_derivatives,
    sig_matrix_fast,
    sig_tensor_fast,
    sig_word_fast,
)
from .linalg import (
    CongruenceInvariants,
    GammaBlock,
    HBlock,
    Matrix,
    cosquare,
    det,
    inverse,
    kron,
    pfaffian,
    pm1_jordan_structure,
    rank,
    sym_skew_split,
)
from .membranes import (
    GridData,
    PiecewiseBilinearMembrane,
    PolynomialMembrane,
    ProductMembrane,
    TransformedMembrane,
    axis_grid,
    axis_membrane_eval,
    bilinear_decompose,
    core_matrix,
    core_tensor,
    hadamard_sig,
    nu,
    nu_inv,
    product_sig_entry,
    reduce_grid,
    sig_matrix_via_congruence,
    sig_via_congruence,
)
from .paths import (
    AxisPath,
    LinearPath,
    MomentPath,
    PiecewiseLinearPath,
    PolynomialPath,
    axis_path_sig_entry,
    linear_path_sig,
    moment_path_sig_entry,
    poly_path_sig_oracle,
    pw_linear_path_sig,
)
from .rational import Rat, rat, rat_str
from .tensor import SigTensor, tucker_apply
from .variety import (
    DimReport,
    axis_core_det_check,
    congruence_invariants,
    congruent_check,
    core_rank_profile,
    degree_formula,
    dimension_formula,
    dimension_report,
    image_dimension,
    relation_checks,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
