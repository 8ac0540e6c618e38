"""Native statevector simulation of qudit circuits of any dimension."""

from .circuit import Circuit, CircuitOp, simulate, swap_macro, unitary_of
from .circuit_text import ParseError, parse, serialize
from .gates import (
    GateMatrix,
    adjoint,
    complement_gate,
    hadamard,
    omega_power,
    pauli_x,
    pauli_z,
    phase_gate,
    s_gate,
    sump,
    sumx,
    t_gate,
)
from .qft import (
    VerificationReport,
    dft_matrix,
    inverse_dft_matrix,
    max_entry_distance,
    qft_circuit,
    verify_qft,
)
from .statevec import (
    StateVector,
    apply_1,
    apply_2,
    basis_state,
    digits_to_index,
    index_to_digits,
    inner_product,
)

__version__ = "0.1.0"
