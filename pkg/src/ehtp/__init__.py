"""Elementary-operator realizations of finite measure algebras.

Finite groups, complex measures on them, unitary representations, and the
map sending a measure ``mu`` to the two-sided multiplication operator
``x -> sum_s mu({s}) pi(s) x pi(s)*``.  The package provides the transfer
calculus for such operators (composition, Choi matrices, Kraus extraction,
complete positivity), Haagerup-style norm bounds by gauge optimization,
Fourier symbols and Schur multiplier forms over joint eigenbases, kernel
tests, positive-definiteness equivalences, and subgroup restriction of
diagonalization spectra.  ``ehtp.cli`` exposes the scenario runner and the
randomized selftest; ``ehtp.suites`` holds the underlying invariant suites.
"""

from .errors import (
    BimoduleError,
    DimensionMismatchError,
    EhtpError,
    EquivalenceViolationError,
    GroupMismatchError,
    NonAbelianError,
    NotCompletelyPositiveError,
    NumericalError,
    RestrictionMismatchError,
    ScenarioError,
)
from .groups import (
    Character,
    FiniteGroup,
    SpectrumSet,
    SubgroupRestriction,
    difference_set,
    dual_group,
    from_cayley,
    make_cyclic_product,
    spectrum,
    subgroup_and_restriction,
)
from .measures import (
    Measure,
    conjugate,
    convolve,
    dirac,
    fourier_on,
    fourier_stieltjes,
    from_density,
    in_augmentation_ideal,
    reverse,
    reverse_conj,
)
from .representations import (
    DiagonalizedRep,
    Representation,
    block_algebra_basis,
    character_rep,
    conjugate_rep,
    cyclic_vector,
    diagonalize,
    gelfand,
    integrate,
    make_representation,
    regular_rep,
    restrict_representation,
    tensor_conjugate,
    trivial_rep,
)
from .elementary import (
    ElementaryOperator,
    PositivityReport,
    apply,
    choi,
    compose,
    conjugate_by,
    conjugation_op,
    identity_op,
    is_completely_positive,
    is_diagonal_bimodule,
    op_from_json,
    op_to_json,
    positive_implies_cp_check,
    schur_op,
    slice_left,
    slice_right,
    strongly_independent_kraus,
    transfer_matrix,
    unvec,
    vec,
)
from .hnorm import NormInterval, haagerup_norm_bounds
from .gamma import (
    GammaImage,
    RestrictionReport,
    gamma,
    kernel_test_difference_set,
    kernel_test_tensor_conjugate,
    kernel_test_transfer,
    restriction_spectrum_check,
    schur_form,
    slice_identity_residual,
)
from .varopoulos import (
    EquivalenceReport,
    VFunction,
    equivalence_suite,
    from_measure,
    gram_factorize,
    gram_sup,
    is_positive_definite,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "EhtpError",
    "NonAbelianError",
    "GroupMismatchError",
    "DimensionMismatchError",
    "NumericalError",
    "NotCompletelyPositiveError",
    "BimoduleError",
    "RestrictionMismatchError",
    "EquivalenceViolationError",
    "ScenarioError",
    # groups
    "FiniteGroup",
    "Character",
    "SpectrumSet",
    "SubgroupRestriction",
    "make_cyclic_product",
    "from_cayley",
    "spectrum",
    "dual_group",
    "difference_set",
    "subgroup_and_restriction",
    # measures
    "Measure",
    "dirac",
    "from_density",
    "convolve",
    "reverse",
    "conjugate",
    "reverse_conj",
    "fourier_stieltjes",
    "fourier_on",
    "in_augmentation_ideal",
    # representations
    "Representation",
    "DiagonalizedRep",
    "make_representation",
    "trivial_rep",
    "regular_rep",
    "character_rep",
    "conjugate_rep",
    "integrate",
    "tensor_conjugate",
    "restrict_representation",
    "diagonalize",
    "gelfand",
    "cyclic_vector",
    "block_algebra_basis",
    # elementary operators
    "ElementaryOperator",
    "PositivityReport",
    "vec",
    "unvec",
    "identity_op",
    "conjugation_op",
    "schur_op",
    "apply",
    "compose",
    "transfer_matrix",
    "slice_left",
    "slice_right",
    "choi",
    "is_completely_positive",
    "strongly_independent_kraus",
    "is_diagonal_bimodule",
    "positive_implies_cp_check",
    "conjugate_by",
    "op_to_json",
    "op_from_json",
    # norms
    "NormInterval",
    "haagerup_norm_bounds",
    # gamma
    "GammaImage",
    "RestrictionReport",
    "gamma",
    "schur_form",
    "slice_identity_residual",
    "kernel_test_transfer",
    "kernel_test_difference_set",
    "kernel_test_tensor_conjugate",
    "restriction_spectrum_check",
    # positive definiteness
    "VFunction",
    "EquivalenceReport",
    "from_measure",
    "is_positive_definite",
    "gram_factorize",
    "gram_sup",
    "equivalence_suite",
]