"""Storage codes on coset graphs of binary linear codes.

Exact GF(2) rank/rate computation for Cayley-graph storage operators,
combinatorial rate bounds, and erasure-recovery simulation.
"""

from .gf2 import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
