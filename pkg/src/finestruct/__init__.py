"""Exact Clifford-algebra engine for fine-structure operator kernels,
slice polynomials, contour quadrature, and S-functional calculi."""

__version__ = "0.1.0"

from .clifford_core import Multivector, blade_product, mv_mul  # noqa: F401
from .slice_poly import (  # noqa: F401
    CanonicalPoly,
    SlicePolynomial,
    XBarPolynomial,
    to_canonical,
)
from .fueter_ops import apply_word, monomial_image  # noqa: F401
