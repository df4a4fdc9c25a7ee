"""Root data, affine Weyl groups, positive-energy weights and loop diagnostics for simply-laced groups."""

from .affine_weyl import (AffineRoot, AffineWeylElement, Alcove, compose, discover_alcoves_geometric,
                          enumerate_alcoves, inverse, reduce_to_alcove, reflection_element)
from .cartan import RootSystem, WeylElement, build_root_system, coroot, weyl_group
from .errors import (ConfigurationError, DomainError, LoopWeightsError, ResourceError,
                     SingularPointError, WindowError)
from .grassmann import (BlockDecomposition, PolarizedWindow, block_decompose, gl_res_certificate,
                        hs_norm_offdiag, hs_norm_windowed, virtual_dimension, winding_number)
from .kernels import BACKEND
from .loopalg import LaurentLoop, cocycle, cocycle_quadrature, su2_generator, su2_generator_exp
from .weights import (Weight, enumerate_antidominant, make_weight, norm_squared, orbit, parabola_check,
                      su2_weight)

__version__ = "0.1.0"

__all__ = [
    "AffineRoot", "AffineWeylElement", "Alcove", "BACKEND", "BlockDecomposition", "ConfigurationError",
    "DomainError", "LaurentLoop", "LoopWeightsError", "PolarizedWindow", "ResourceError", "RootSystem",
    "SingularPointError", "Weight", "WeylElement", "WindowError", "block_decompose", "build_root_system",
    "cocycle", "cocycle_quadrature", "compose", "coroot", "discover_alcoves_geometric", "enumerate_alcoves",
    "enumerate_antidominant", "gl_res_certificate", "hs_norm_offdiag", "hs_norm_windowed", "inverse",
    "make_weight", "norm_squared", "orbit", "parabola_check", "reduce_to_alcove", "reflection_element",
    "su2_generator", "su2_generator_exp", "su2_weight", "virtual_dimension", "weyl_group", "winding_number",
]
