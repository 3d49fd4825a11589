"""Geometry, measures and embedding-constant verifiers on the unit disk."""
from . import geometry, kernels, measures, functionals, lattice, verifier
from .geometry import (
    Arc,
    BergmanDisk,
    BoundaryPoint,
    CarlesonBox,
    DeltaBox,
    DiskPoint,
    DyadicArc,
    EuclideanDisk,
    LusinCone,
    WholeDisk,
    aperture_arc,
    bergman_disk_euclidean,
    bergman_distance,
    mobius,
    region_contains,
)
from .measures import (
    AlphaArea,
    Atomic,
    DivergenceError,
    GridDensity,
    MeasureError,
    QuadratureConfig,
    RadialPower,
    integrate,
    make_measure,
)
from .functionals import (
    AnalyticTestFunction,
    ArcRep,
    BoundaryFunctionSamples,
    ConstantEstimate,
    Direct,
    ParameterError,
    a_functional,
    b_functional,
    bergman_disk_constant,
    carleson_constant,
    cone_integral,
    kernel_boundary_trace,
    nontangential_sup,
    sup_over_dyadic_arcs,
    theorem_condition,
    weak_lorentz_norm,
    weighted_sup_norm,
)
from .lattice import Lattice, LatticeReport, build_lattice, verify_lattice
from .verifier import (
    MeasureFamily,
    TheoremReport,
    standard_family,
    verify_equivalence_2_2,
    verify_lorentz_representation,
    verify_theorem,
)

__version__ = "0.1.0"
