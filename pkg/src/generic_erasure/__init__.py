"""Generic parity-check collections for iterative erasure decoding of binary linear codes."""

from ._kernels import BACKEND
from .codes import Code, dual_codewords, even_weight_code, hamming_code, is_correctable, repetition_code
from .decoder import ChannelStats, PeelTrace, enumerate_stopping_sets, is_stopping_set, peel, simulate, support_weight_check
from .gensets import (
    GenericSet,
    construct_A,
    construct_A_star,
    construct_B,
    construct_even_weight_set,
    construct_W,
    induced_collection,
    transform,
)
from .gf2 import BitMatrix, BitVec, enumerate_independent_subsets, invert, mat_vec, rank, restrict
from .search import SearchReport, inclusion_minimality_audit, min_size, optimal_rr_characterization
from .verifier import (
    BudgetExceeded,
    VerifyResult,
    cross_check_hamming,
    is_correcting_for_code,
    is_generic,
    is_generic_for_even_weight,
    is_reducing_for_code,
    witness_is_valid,
)

__version__ = "0.1.0"
