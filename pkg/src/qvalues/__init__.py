"""State-dependent values of quantum observables.

Two notions are implemented side by side: Deutsch-Hayden matrix values
``U_phi^dag B U_phi`` and noncommutative values ``{f; V_n}`` built from the
expectation-value function and its derivatives.
"""

from .dhvalue import (DHMatrixValue, UnitaryCompletion, complete_unitary,
                      completion_independence_report, dh_descriptor, dh_value,
                      verify_dh_homomorphism, verify_strong_locality)
from .hilbert import (Observable, StateVector, Unitary, lift_local,
                      operator_schmidt_rank, partial_trace, sample_random,
                      tensor)
from .ncvalue import (NCValue, expectation_fn, nc_value, nc_value_of_product,
                      star_scalar, transport_under_local_process, uncertainty,
                      v_components)

__version__ = "0.1.0"
