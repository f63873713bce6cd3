"""Exact Kauffman bracket skein algebra of the punctured disk.

Coefficients live in ``Z[v, 1/v, beta]`` with ``beta * (v^2 + v^-2) = 1``;
elements are finite combinations of multicurves.  Products are computed by a
Kauffman state sum, and a catalog of presented relations can be checked
exactly against it.
"""

from .ring import ALPHA, BETA, ONE, ZERO, ScalarR, eval_at_q, is_unit, mirror_scalar, scalar
from .multicurve import Multicurve, compatible
from .skein import SkeinElement, basis_product, element_product, stacked_product_planar
from .ncpoly import Generator, NCPoly, gen
from .expr import ExprError, parse, parse_poly, to_string
from .presentation import (
    FAMILIES, RelationInstance, build_catalog, generator_image, instantiate, mirror_poly,
    theta_eval, verify_instance, verify_relation,
)
from .normalform import enumerate_profile_basis, normal_form, spanning_triangularity_check

__version__ = "0.1.0"
