"""Constructive (2-degenerate + matching) decompositions of triangle-free
plane graphs, with an exhaustive small-scale oracle."""

from .config_algebra import (Configuration, Derivation, combine, contains_special,
                             generate_family, recognize, reverse_view)
from .decomposition import (ConstraintSpec, Decomposition, check_coloring,
                            defective_coloring, degeneracy_order, verify,
                            verify_21)
from .main_decomposer import (CaseTrace, CounterexampleError, PreconditionError,
                              decompose_21, decompose_config)
from .oracle import brute_force, canonical_form, enumerate_graphs
from .plane_graph import (BlockDecomposition, FaceWalk, PlaneGraph, chords,
                          cycle_graph, int_subgraph, two_chords, validate)
from .special_decomposer import (ClauseRequest, compose, decompose_p2_shifted,
                                 decompose_special, supported_clauses)

__version__ = "0.1.0"
