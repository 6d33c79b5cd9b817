"""Online bin packing with cardinality constraints, in exact rational arithmetic."""

from .algorithms import (
    ALGORITHMS,
    Alg5,
    FirstFit,
    Harmonic,
    OnlineAlgorithm,
    ThinAndFat,
    first_fit,
    make_algorithm,
    run,
)
from .core import (
    OPTIMAL,
    UPPER_BOUND,
    Bin,
    CardbinError,
    Certificate,
    Instance,
    Packing,
    Report,
    read_instance,
    read_packing,
    trivial_lower_bound,
    validate_packing,
    write_instance,
    write_packing,
)
from .oracle import exact_opt

__all__ = [
    "ALGORITHMS", "Alg5", "FirstFit", "Harmonic", "OnlineAlgorithm", "ThinAndFat",
    "first_fit", "make_algorithm", "run",
    "OPTIMAL", "UPPER_BOUND", "Bin", "CardbinError", "Certificate", "Instance", "Packing",
    "Report", "read_instance", "read_packing", "trivial_lower_bound", "validate_packing",
    "write_instance", "write_packing", "exact_opt",
]
