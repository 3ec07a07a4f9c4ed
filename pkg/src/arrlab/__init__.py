"""arrlab: exact hyperplane-arrangement computations.

Construction of arrangements (graphic, digraphic, root-system families and
their deformations), intersection-lattice invariants, combinatorial
freeness certification, and accuracy / flag-accuracy witness search, all in
exact integer arithmetic with machine-checkable, replayable certificates.
"""

__version__ = "0.1.0"

from .core import Arrangement, Flat, Hyperplane, arrangement, cone, essentialize, localize, normalize, product, restrict

__all__ = [
    "Arrangement",
    "Flat",
    "Hyperplane",
    "arrangement",
    "cone",
    "essentialize",
    "localize",
    "normalize",
    "product",
    "restrict",
    "__version__",
]
