"""Orbifold state sums for 2D and 3D defect TQFTs."""
from ._orbifold import *  # noqa: F401,F403
from ._orbifold import OrbifoldError

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
