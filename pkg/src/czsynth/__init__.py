"""czsynth: graph-state preparation with few two-qubit operations.

Synthesis of preparation procedures for graph states through the equivalence
between two-qubit Clifford cost and unit-cost edge complementations on graphs,
with rank-width guided and code-guided dependent-set strategies, interval /
circle / containment word algorithms, stabilizer-tableau verification, and an
exhaustive small-instance oracle.
"""

from .f2linalg import BitMatrix, find_dependent_row, rank, solve
from .graphcore import (DEL, EC1, EC2, EC3, LC, Graph, GraphOp, OpTrace,
                        apply_op, lc_orbit, local_complement, parse_graph,
                        parse_trace, pivot, replay, serialize_graph,
                        serialize_trace)
from .rankwidth import (DependentSet, RankDecomposition, cutrank,
                        exact_rankwidth, find_balanced_edge,
                        find_dependent_set, greedy_decomposition,
                        shrink_dependent, width)
from .codesf4 import (AdditiveCode, code_from_graph, dependent_set_from_code,
                      min_distance, mind_bound)
from .synthesis import (Bounds, SynthResult, bound_upper_generic,
                        bound_upper_rankwidth, certify, grow_vertex, synth)
from .intervalwords import (DOWord, TourGraph, circle_graph, containment_graph,
                            euler_cycle, interval_graph, parse_word,
                            reroute_word, serialize_word, synth_circle,
                            synth_containment, synth_interval, tour_graph)
from .tableau import (Circuit, Tableau, apply_gate, check_graph_state,
                      decompose_two_qubit, enumerate_two_qubit_classes,
                      graph_state, measure_z, plus_state, rewrite_circuit,
                      simulate_circuit, trace_to_circuit, zero_state)
from .oracle import EcTable, exact_ec, exact_ec_all

__version__ = "0.1.0"
