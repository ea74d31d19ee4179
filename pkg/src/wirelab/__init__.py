"""wirelab: depth-2 boolean circuit transforms, operator coding, and
wire-count bounds, with exhaustive verification at desk scale."""

from ._kernels import BACKEND
from .gf2 import Gf2Matrix, Gf2Vector, first_basis_columns, matvec, rank, solve_in_span
from .circuit import (
    Depth2Circuit,
    GeneralCircuit,
    LinearDepth2Circuit,
    OperatorTable,
    TruthTable,
    collapse,
    computes_linear,
    equivalent,
    evaluate,
    is_linear_gate,
    weakly_computes,
)
from .transforms import (
    LinearizationReport,
    cap_fanin,
    linearize,
    normalize_output_xor,
    remove_direct_wires,
    zero_normalize_middle,
)
from .compress import OperatorEncoding, bit_length, decode, decode_matrix, deserialize, encode, serialize
from .bounds import (
    BoundParams,
    linear_circuit_lower_bound,
    log2_count_upper,
    log2_num_operators,
    min_wires_lower_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundParams",
    "Depth2Circuit",
    "GeneralCircuit",
    "Gf2Matrix",
    "Gf2Vector",
    "LinearDepth2Circuit",
    "LinearizationReport",
    "OperatorEncoding",
    "OperatorTable",
    "TruthTable",
    "bit_length",
    "cap_fanin",
    "collapse",
    "computes_linear",
    "decode",
    "decode_matrix",
    "deserialize",
    "encode",
    "equivalent",
    "evaluate",
    "first_basis_columns",
    "is_linear_gate",
    "linear_circuit_lower_bound",
    "linearize",
    "log2_count_upper",
    "log2_num_operators",
    "matvec",
    "min_wires_lower_bound",
    "normalize_output_xor",
    "rank",
    "remove_direct_wires",
    "serialize",
    "solve_in_span",
    "weakly_computes",
    "zero_normalize_middle",
]
