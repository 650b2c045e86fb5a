"""Bounds, witnesses and certified estimates for the inverse Markov factor of convex sets."""

from .bounds import BoundReport, bound_report, bound_values, diamond_width, komarov_lower, komarov_upper, sharpness_check
from .constructions import WitnessCertificate, WitnessChoice, certify_witness, witness_for
from .geometry import (
    AffineMap,
    Diamond,
    Disk,
    Ellipse,
    GeometryError,
    Polygon,
    ResourceLimitError,
    Segment,
    affine,
    diameter,
    min_width,
    normalize,
    set_from_json,
    set_to_json,
)
from .polyroot import NormEstimate, RatioInterval, RootPoly, markov_ratio, sup_norm
from .proofcheck import CheckRecord, ProofReport, proof_certificate
from .search import MarkovEstimate, brute_force_mn, estimate_mn, sample_ratio_floor

__all__ = [
    "AffineMap", "BoundReport", "CheckRecord", "Diamond", "Disk", "Ellipse", "GeometryError",
    "MarkovEstimate", "NormEstimate", "Polygon", "ProofReport", "RatioInterval", "ResourceLimitError",
    "RootPoly", "Segment", "WitnessCertificate", "WitnessChoice", "affine", "bound_report", "diamond_width",
    "bound_values", "brute_force_mn", "certify_witness", "diameter", "estimate_mn", "komarov_lower",
    "komarov_upper", "markov_ratio", "min_width", "normalize", "proof_certificate",
    "sample_ratio_floor", "set_from_json", "set_to_json", "sharpness_check", "sup_norm", "witness_for",
]
