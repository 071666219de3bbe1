"""
nonorientable-reps.

Exact computations with low-dimensional linear representations of mapping
class groups of nonorientable surfaces: representation tables, relation
checks, the mod-2 isometry group and symbolic derivation scenarios.
"""

__version__ = "0.1.0"

from src.cli import main

__all__ = ["main", "__version__"]
