"""Dynamic collection of persistent strings with canonical signatures."""

from .collection import Collection
from .grammar import (DepthGuard, Failure, Grammar, LengthOverflow,
                      LevelOverflow)
from .history import Delete, History, Insert, Move
from .match_index import MatchIndex
from .order import compare, lcp
from .slp import SLP, slp_eq

__all__ = ["Collection", "Grammar", "MatchIndex", "History", "Insert", "Delete", "Move",
           "SLP", "slp_eq", "compare", "lcp",
           "Failure", "LevelOverflow", "LengthOverflow", "DepthGuard"]
