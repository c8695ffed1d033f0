"""Regex matching in time proportional to the number of active automaton states."""
from .analysis import AnalysisTables, analyze
from .engine import Engine, TransitionTree, build_engine, compile_pattern
from .errors import ContractError, RangeError, RegexSyntaxError
from .internal import InternalIndex, build_internal_index
from .matcher import Matcher, MatchReport, density_profile, match
from .oracle import OracleAutomaton, build_oracle, oracle_delta, oracle_match
from .regex import Kind, ParseTree, parse

__all__ = [
    "AnalysisTables",
    "ContractError",
    "Engine",
    "InternalIndex",
    "Kind",
    "MatchReport",
    "Matcher",
    "OracleAutomaton",
    "ParseTree",
    "RangeError",
    "RegexSyntaxError",
    "TransitionTree",
    "analyze",
    "build_engine",
    "build_internal_index",
    "build_oracle",
    "compile_pattern",
    "density_profile",
    "match",
    "oracle_delta",
    "oracle_match",
    "parse",
]

__version__ = "0.1.0"
