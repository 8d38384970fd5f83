"""Bipartite graph ensembles with fixed degrees and butterfly counts."""
__version__ = "0.1.0"

from .canon import CanonicalForm, are_isomorphic, canonical_form
from .constructor import construct_pair, verify_construction
from .ensemble import EnsembleSpec, enumerate_ensemble
from .explorer import direct_qbso, min_single_swap_size, reachable_set
from .graph import BipartiteGraph, build_graph, butterfly_count, parse_bip
from .mcmc import ChainConfig, run_chain, uniformity_distance
from .swaps import QSwap, apply_qbso, validate_qbso
