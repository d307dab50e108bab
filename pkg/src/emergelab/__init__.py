"""emergelab: a desk-scale workbench for simple systems with hard-to-predict
behaviour: elementary cellular automata, Conway's Game of Life, Langton's
ant, and enumerative multi-tape Turing machines with step accounting."""

__version__ = "0.1.0"

from .errors import EmergeLabError

__all__ = ["EmergeLabError", "__version__"]
