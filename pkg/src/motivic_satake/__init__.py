"""Root data, affine Weyl combinatorics and the decategorified Satake picture."""

from .root_datum import BasedRootDatum, dual_root_datum, load_root_datum, preset
from .laurent import LaurentPoly

__version__ = "0.1.0"

__all__ = ["BasedRootDatum", "LaurentPoly", "dual_root_datum", "load_root_datum", "preset", "__version__"]
