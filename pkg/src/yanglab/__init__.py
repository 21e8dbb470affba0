"""Exact weight modules for the Yangian Y(sl2).

Finite-dimensional modules W_m(a), dense modules V(mu, tau, b_mu) and their
tensor products, with relation checks and a simplicity test for
V(mu, tau, b_mu) (x) W_1(r).
"""
from .scalar_field import (FieldContext, QuadScalar, is_rational_square, parse_scalar,
                           quad_inv, quad_mul, rational_normalize, sqrt_in_field)
from .engine import (Generator, ModuleSpec, WeightVector, apply_generator, apply_word,
                     hgen, weight_of, xminus, xplus)
from .findim import DrinfeldPoly, WmModule, drinfeld_series, wm_closed_form_act, wm_highest_series
from .dense import DenseModule, DenseValidationError, validate_dense, x1_closed_form
from .tensor import TensorModule, tensor_primitive_act, weight_space_basis
from .analysis import (Matrix, SimplicityVerdict, check_defining_relations, h1_eigenvectors,
                       operator_matrix, simplicity_criterion, submodule_probe, u_module)
from .descriptors import module_from_json, parse_module

__version__ = "0.1.0"
