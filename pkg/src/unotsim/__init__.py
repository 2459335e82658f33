"""Universal qubit-complementation (U-NOT) gate simulator and verification suite.

Core building blocks live in flat modules: `qubit` (states, fidelity,
partial trace/transpose), `dicke` (symmetric-subspace algebra), `gate`
(the N-to-M complementing transformation), `estimation` (measurement-based
complementing), `optimality` (extremal covariant channels and twirling),
`restricted` (real-amplitude inputs), plus `report`/`verify` driving the
CLI and HTTP service.
"""

__version__ = "0.1.0"

from .dicke import (
    DickeBasisLabel,
    DickeVector,
    SymDensity,
    embed_dicke,
    frame_orthogonal,
    product_state_in_dicke,
    reduce_single_qubit,
    reduce_two_qubits,
)
from .errors import CapacityError, UnotSimError, UnsupportedCaseError, ValidationError
from .estimation import (
    EstimationDensity,
    EstimationOutput,
    classical_multi_output,
    classical_unot_analytic,
    classical_unot_montecarlo,
    estimation_density_at,
)
from .gate import (
    GateCoefficients,
    JointOutputState,
    OutputReport,
    apply_unot,
    check_pairwise_separability,
    clone_output,
    clone_scaling_exact,
    complement_output,
    gate_coefficients,
    gate_report,
    not_scaling_exact,
)
from .optimality import (
    CGIntertwiner,
    ExtremalChannelReport,
    build_intertwiner,
    delta_of_channel,
    extremal_channel,
    extremal_channel_apply,
    extremal_channel_report,
    twirl_channel,
)
from .qubit import (
    BlochVector,
    DensityMatrix,
    PureQubit,
    ScaledStateForm,
    complement,
    fidelity,
    haar_sample_pure,
    is_ppt,
    partial_trace,
    partial_transpose,
)
from .restricted import GapReport, RealQubit, gap_report, perfect_real_not, real_estimation_fidelity

__all__ = [
    "BlochVector",
    "CGIntertwiner",
    "CapacityError",
    "DensityMatrix",
    "DickeBasisLabel",
    "DickeVector",
    "EstimationDensity",
    "EstimationOutput",
    "ExtremalChannelReport",
    "GapReport",
    "GateCoefficients",
    "JointOutputState",
    "OutputReport",
    "PureQubit",
    "RealQubit",
    "ScaledStateForm",
    "SymDensity",
    "UnotSimError",
    "UnsupportedCaseError",
    "ValidationError",
    "apply_unot",
    "build_intertwiner",
    "check_pairwise_separability",
    "classical_multi_output",
    "classical_unot_analytic",
    "classical_unot_montecarlo",
    "clone_output",
    "clone_scaling_exact",
    "complement",
    "complement_output",
    "delta_of_channel",
    "embed_dicke",
    "estimation_density_at",
    "extremal_channel",
    "extremal_channel_apply",
    "extremal_channel_report",
    "fidelity",
    "frame_orthogonal",
    "gap_report",
    "gate_coefficients",
    "gate_report",
    "haar_sample_pure",
    "is_ppt",
    "not_scaling_exact",
    "partial_trace",
    "partial_transpose",
    "perfect_real_not",
    "product_state_in_dicke",
    "real_estimation_fidelity",
    "reduce_single_qubit",
    "reduce_two_qubits",
    "twirl_channel",
]
