"""Integer circulant determinants of order 16: membership, witnesses, and norm identities."""

from .circulant import (
    GaussianInteger,
    NormFactorization,
    Transforms,
    alpha1_exact,
    alpha1_formula,
    alpha2_exact,
    alpha2_formula,
    cyclic_convolve,
    det_bareiss,
    det_via_norms,
    norms,
    parity_gate,
    transforms,
)
from .classifier import MembershipVerdict, classify, verify_verdict
from .numtheory import factorize, is_prime, mod8_class, one_plus_two_squares, two_squares
from .search import SearchBox, enumerate_box, find_value, spectrum
from .witness import WitnessPlan, build_witness, plan_for, realize

__version__ = "0.1.0"

__all__ = [
    "GaussianInteger",
    "MembershipVerdict",
    "NormFactorization",
    "SearchBox",
    "Transforms",
    "WitnessPlan",
    "alpha1_exact",
    "alpha1_formula",
    "alpha2_exact",
    "alpha2_formula",
    "build_witness",
    "classify",
    "cyclic_convolve",
    "det_bareiss",
    "det_via_norms",
    "enumerate_box",
    "factorize",
    "find_value",
    "is_prime",
    "mod8_class",
    "norms",
    "one_plus_two_squares",
    "parity_gate",
    "plan_for",
    "realize",
    "spectrum",
    "transforms",
    "two_squares",
    "verify_verdict",
]
