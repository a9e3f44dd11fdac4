"""Synchronization strings, indexing decoders and insertion-deletion codes."""
from .construction import (
    FULL_SYNC,
    SELF_MATCHING,
    ConstructionError,
    FormatError,
    SyncString,
    construct_self_matching_string,
    construct_sync_string,
    dumps,
    load,
    loads,
    save,
)
from .indexing import ADVERSARIES, DECODERS, MODES, decode, misdecoding_bound, simulate_channel
from .insdel_code import InfeasibleParams, code_params, insdel_decode, insdel_encode
from .rs import DecodeFailure, InterleavedRS, ReedSolomon
from .strings_core import (
    Delete,
    Insert,
    SymbolString,
    Transcript,
    apply_script,
    edit_distance,
    lcs_length,
    longest_common_subsequence,
    relative_suffix_distance,
    relative_suffix_pseudo_distance,
)
from .sync_properties import check_self_matching, check_synchronization, find_bad_indices, max_bad_self_matching

__version__ = "0.1.0"
