"""CSS code surgery as colimits of chain complexes over F2."""

from . import chain, codemap, colimit, csscode, cubical, f2linalg, search, stabsim, surgery
from .chain import ChainComplex, ChainMap, dual, direct_sum, homology_dim, tensor
from .codemap import CnotCircuit, CodeMap, logical_action, make_code_map, synthesize_circuit
from .codes import shor_code
from .colimit import coequaliser, pushout
from .csscode import CssCode, choose_logical_basis, from_parity_checks, metrics, weight_profile
from .errors import CssSurgeryError
from .stabsim import PauliString, StabilizerTableau, run_merge_protocol
from .surgery import build_sandwich, check_gauge_fixable, check_separation, x_merge, z_merge

__all__ = [
    "ChainComplex",
    "ChainMap",
    "CnotCircuit",
    "CodeMap",
    "CssCode",
    "CssSurgeryError",
    "PauliString",
    "StabilizerTableau",
    "build_sandwich",
    "chain",
    "check_gauge_fixable",
    "check_separation",
    "choose_logical_basis",
    "codemap",
    "coequaliser",
    "colimit",
    "csscode",
    "cubical",
    "direct_sum",
    "dual",
    "f2linalg",
    "from_parity_checks",
    "homology_dim",
    "logical_action",
    "make_code_map",
    "metrics",
    "pushout",
    "run_merge_protocol",
    "search",
    "shor_code",
    "stabsim",
    "surgery",
    "synthesize_circuit",
    "tensor",
    "weight_profile",
    "x_merge",
    "z_merge",
]
