"""Multiplierless multiplication of a variable by several large constants."""
from .cse import Mode
from .errors import VlcmError
from .graph import AdderGraph, Design, DesignStats, evaluate, verify_design
from .mcm import McmProblem, dbr, gb_delay_constrained, gb_exact_small, gb_heuristic, solve
from .numeric import LargeConstant, csd_nz, min_adder_steps, parse_hex, to_csd
from .partition import PartitionConfig, Strategy, partition
from .pipeline import build_design

__version__ = "0.1.0"

__all__ = [
    "AdderGraph", "Design", "DesignStats", "LargeConstant", "McmProblem", "Mode",
    "PartitionConfig", "Strategy", "VlcmError", "build_design", "csd_nz", "dbr",
    "evaluate", "gb_delay_constrained", "gb_exact_small", "gb_heuristic",
    "min_adder_steps", "parse_hex", "partition", "solve", "to_csd", "verify_design",
]
