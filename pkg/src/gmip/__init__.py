"""gmip: graph-matching problems compiled to exact 0-1 integer programs."""

from .graphs import Graph, GraphError, LayeredGraph, graph_to_text, parse_graph
from .model import (IPModel, ModelError, add_table2_constraints, emit_lp,
                    evaluate, parse_lp)
from .problems import (MatchingInstance, ProblemError, load_spec,
                       parse_spec_text, validate_instance)
from .framework import build_output1, build_output2, build_output3, decode
from .encoders import decode_witness, encode, render_witness
from .solver import SolveConfig, Solution, propagate, solve
from .oracles import (OracleCapExceeded, OracleResult, oracle_framework,
                      oracle_solve)
from .checkers import check_map, check_witness

__version__ = "0.1.0"

__all__ = [
    "Graph", "GraphError", "LayeredGraph", "graph_to_text", "parse_graph",
    "IPModel", "ModelError", "add_table2_constraints", "emit_lp", "evaluate",
    "parse_lp", "MatchingInstance", "ProblemError", "load_spec",
    "parse_spec_text", "validate_instance", "build_output1", "build_output2",
    "build_output3", "decode", "decode_witness", "encode", "render_witness",
    "SolveConfig", "Solution", "propagate", "solve", "OracleCapExceeded",
    "OracleResult", "oracle_framework", "oracle_solve", "check_map",
    "check_witness",
]
