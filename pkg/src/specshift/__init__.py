"""specshift: point spectra of symmetric and antisymmetric tensor products
of unilateral weighted shift operators, with a brute-force oracle and a CLI.
"""

from .blocks import ASYM, SYM, BlockSpec, block_dimension, build_block_matrix
from .eig import (MatchReport, TridiagonalSym, dense_sym_eigenvalues,
                  multiset_match, sturm_count, tridiag_eigenvalues)
from .oracle import (TruncatedOperator, build_truncated_sym_product,
                     build_Vk_operator, oracle_block_eigenvalues)
from .shiftdiag import (DiskCertificate, NormBounds, SymCoefficientMap,
                        apply_shift_diag, build_disk_eigenvector,
                        classify_point_spectrum_shift_diag, disk_radius,
                        estimate_norm_truncated, kernel_induction_solve,
                        norm_bounds_adj, unweighted_disk_eigenvector)
from .spectrum import (EigenMultiset, closed_form_spectrum, point_spectrum,
                       zero_multiplicity)
from .weights import (WeightSequence, inf_geo_mean, parse_weight_spec,
                      sup_modulus, weight_at)

__version__ = "0.1.0"
