"""Exact homological algebra over the integers and the integers mod m."""

from .chain import ChainComplex, ChainMap, homology, is_exact, make_chain_map, make_complex
from .derived import TorRequest, tensor, tor, tor_les
from .diagram import LongExactSequence, ShortExactSeqComplexes, ShortExactSeqModules, long_exact_sequence, snake
from .errors import HomalgError, NotAComplex, NotExact, NotWellDefined, ParseError
from .exactlin import ZZ, Matrix, RingSpec, Zmod, kernel_basis, snf, solve
from .fpmod import FpModule, ModuleHom, cokernel, cyclic, free_module, image, kernel
from .homotopy import are_chain_homotopic, find_null_homotopy, find_splitting
from .resolve import Resolution, free_resolution, is_projective, lift_between_resolutions
from .simplicial import SimplicialComplex, chain_complex_of, homology_report
