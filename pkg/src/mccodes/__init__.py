"""Multicomposition codes: Dyck-path codewords whose mixed prefix/suffix
composition multisets identify every subset of at most h codewords."""
from .codec import Codebook, build_codebook, decode, decode_detailed, encode, mix_indices, recover_sum
from .compositions import MixtureDocument, full_multiset, mix, prefix_multiset, separate_prefixes, suffix_multiset
from .core import BinaryString, Composition, is_dyck
from .errors import DecodeError, GuardError, InvariantViolation, MCError, ValidationError
from .oracle import confusable, is_h_mc_code, max_mc_code_size
from .sidon import build_bh_codebook, pad_to_square, verify_bh

__version__ = "0.1.0"

__all__ = [
    "BinaryString",
    "Codebook",
    "Composition",
    "DecodeError",
    "GuardError",
    "InvariantViolation",
    "MCError",
    "MixtureDocument",
    "ValidationError",
    "build_bh_codebook",
    "build_codebook",
    "confusable",
    "decode",
    "decode_detailed",
    "encode",
    "full_multiset",
    "is_dyck",
    "is_h_mc_code",
    "max_mc_code_size",
    "mix",
    "mix_indices",
    "pad_to_square",
    "prefix_multiset",
    "recover_sum",
    "separate_prefixes",
    "suffix_multiset",
    "verify_bh",
]
