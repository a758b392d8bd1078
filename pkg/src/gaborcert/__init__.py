"""Certificates and estimates for Gabor frames with Hermite and Gaussian windows."""

__version__ = "0.1.0"

from . import errors
from .exact import Surd, parse_literal
from .lattice import (
    ComplexLattice,
    Lattice,
    complexify,
    covolume,
    enumerate_points,
    homology_indices,
    make_lattice,
    multi_indices,
    product_lattice,
    read_lattice_spec,
    scale,
    symplectic_dual,
)
from .relations import integer_relation, relation_search
from .transcendence import is_transcendental, minor_table, product_lattice_check, genericity_sample
from .windows import GaussianWindow, HermiteWindow, TFPoint, hermite_eval, tf_shift
from .fock import bargmann, fock_shift, poly_bargmann, stft_matrix_element
from .frames import GaborSystem, criterion_verdict, density_threshold, frame_bounds_estimate, riesz_bounds_estimate
from .thresholds import (
    asymptotic_report,
    interpolation_number_estimate,
    seshadri_transcendental,
    uniqueness_number_estimate,
)

__all__ = [
    "__version__",
    "errors",
    "Surd",
    "parse_literal",
    "ComplexLattice",
    "Lattice",
    "complexify",
    "covolume",
    "enumerate_points",
    "homology_indices",
    "make_lattice",
    "multi_indices",
    "product_lattice",
    "read_lattice_spec",
    "scale",
    "symplectic_dual",
    "integer_relation",
    "relation_search",
    "is_transcendental",
    "minor_table",
    "product_lattice_check",
    "genericity_sample",
    "GaussianWindow",
    "HermiteWindow",
    "TFPoint",
    "hermite_eval",
    "tf_shift",
    "bargmann",
    "fock_shift",
    "poly_bargmann",
    "stft_matrix_element",
    "GaborSystem",
    "criterion_verdict",
    "density_threshold",
    "frame_bounds_estimate",
    "riesz_bounds_estimate",
    "asymptotic_report",
    "interpolation_number_estimate",
    "seshadri_transcendental",
    "uniqueness_number_estimate",
]
