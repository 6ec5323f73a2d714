"""Exact-arithmetic polyhedral and tensor flat chains.

Coordinate and simplicial chains over abelian normed coefficient groups,
with boundary/slicing/restriction calculus, grid deformation operators, and
a witness-based grid flat-norm solver.
"""

from .chains import BoundingBox, CoordChain, Iv, Pt, box_chain, iv, pt, single_cell
from .deform import (GridSpec, ShiftBoxDecomposition, cauchy_experiment,
                     convergence_experiment, counterexample_build, deform_P,
                     deform_Pi0, shift_average_mass, staircase_chain)
from .errors import (DegenerateInput, DegenerateSlice, DomainError,
                     FlatchainError, SignatureMismatch, UnsupportedInput,
                     ValidationError)
from .flatnorm import (FlatWitness, InducedComplex, TensorFlatWitness,
                       flat_dist, flat_norm_grid, induced_complex, n_norm,
                       n_norm_tensor, tensor_flat_norm_grid)
from .groups import (ChainCoefficients, CoefficientValue, GroupDescriptor,
                     Integers, Rationals, Residues)
from .simplices import GrassmannEstimate, Simplex, SimplexChain, grassmann_average
from .slicing import (Figure, FigureInterval, complement, figures_equal,
                      intersect, restrict, restrict_tensor, slice0_coord,
                      slicing_mass, slicing_mass_by_axes, slicing_mass_tensor,
                      union)
from .tensor import (Split, TensorChain, bidegrees, chi, chi_tensor, classify,
                     d1, d2, iota, iota_inv, jdecomp)

__version__ = "0.1.0"
