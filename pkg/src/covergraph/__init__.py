"""Cover graphs of finite posets: exact recognition, Mycielskians, direct products,
circular chromatic numbers and checkable certificates."""

__version__ = "0.1.0"

from .certify import Certificate, Verdict, certificate_from_json, certificate_to_json, validate
from .circular import CircularColoring, chi_c_exact, chi_c_via_imbalance
from .constructions import direct_product, mycielskian
from .errors import (
    CapacityError,
    CoverGraphError,
    CyclicOrientationError,
    FormatError,
    InvalidParameterError,
    MalformedInputError,
    NotHasseDiagramError,
    ValidationError,
)
from .graph import ROOT, Graph, Myc, Pair, Plain, build_cycle, chromatic_number, girth, is_bipartite
from .hom import Homomorphism, find_hom, verify_hom
from .kernels import BACKEND
from .orientations import AcyclicOrientation, d_min, dependent_arcs, imbalance, is_cover_exact

__all__ = [
    "BACKEND",
    "ROOT",
    "AcyclicOrientation",
    "CapacityError",
    "Certificate",
    "CircularColoring",
    "CoverGraphError",
    "CyclicOrientationError",
    "FormatError",
    "Graph",
    "Homomorphism",
    "InvalidParameterError",
    "MalformedInputError",
    "Myc",
    "NotHasseDiagramError",
    "Pair",
    "Plain",
    "ValidationError",
    "Verdict",
    "build_cycle",
    "certificate_from_json",
    "certificate_to_json",
    "chi_c_exact",
    "chi_c_via_imbalance",
    "chromatic_number",
    "d_min",
    "dependent_arcs",
    "direct_product",
    "find_hom",
    "girth",
    "imbalance",
    "is_bipartite",
    "is_cover_exact",
    "mycielskian",
    "validate",
    "verify_hom",
]
