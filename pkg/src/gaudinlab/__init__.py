"""gaudinlab: exact verification lab for higher Gaudin Hamiltonians,
quasi-exponential function spaces, and Plucker positivity."""

__version__ = "0.1.0"

from .rationals import QQ, rational, format_rational, parse_rational
from .partitions import (Partition, Permutation, GroupAlgebraElement,
                         alpha_element, character, syt_count, skew_syt_count,
                         partitions_of, partitions_upto)
from .symfunc import power_sum, schur_eval, schur_via_power_sums
from .tensorops import (TensorOperator, elementary_unit, diagonal_h_action,
                        permutation_operator)
from .gaudin import (GaudinInstance, OperatorPolynomial, matrix_derivative,
                     build_T_definitional, build_T_partial_trace,
                     build_T_jacobi_trudi, build_beta, operators_commute,
                     IdentityViolationError)
