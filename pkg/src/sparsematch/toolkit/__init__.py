"""Tree and array machinery: RMQ, LCA, predecessor search, first-label queries."""
from .counters import Counters
from .firstlabel import FirstLabelStructure
from .lca import LcaStructure
from .predecessor import BatchedPredecessor, BatchStats, SortedArrayPredecessor
from .rmq import RmqStructure

__all__ = [
    "BatchStats",
    "BatchedPredecessor",
    "Counters",
    "FirstLabelStructure",
    "LcaStructure",
    "RmqStructure",
    "SortedArrayPredecessor",
]
