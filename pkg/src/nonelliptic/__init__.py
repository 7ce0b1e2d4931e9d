"""Certificate-producing toolkit for mod-ell Galois representations given by
newform eigenvalue data: proves irreducibility and non-ellipticity (the
representation is not the ell-torsion of any elliptic curve over Q) with
machine-checkable witnesses."""

from .arith import (
    Factorization,
    Residue,
    hasse_interval,
    is_prime,
    isqrt,
    legendre,
    mod_inv,
    mod_pow,
    primes_in_range,
    trial_factor,
)
from .certify import (
    Certificate,
    check,
    closed_form_scan,
    conductor_bound_test,
    certify_form,
    full_paper_verification,
    irreducibility_by_discriminant,
    non_elliptic_trace_test,
    reducibility_obstruction,
    serre_bound_predicate,
)
from .data_io import bundled_form, dump_form, dump_report, load_form, parse_form
from .ecoracle import (
    CurveFp,
    CurveQ,
    count_points,
    counting_backend,
    falsify_curve,
    trace_of_frobenius,
    trace_set,
)
from .quadfield import (
    EmbeddingChoice,
    QuadInt,
    embedding_choices,
    norm_discriminant,
    reduce_mod,
    splits,
)
from .repmodel import (
    NewformData,
    ResidualRep,
    TwistSpec,
    available_witness_primes,
    residual_rep,
    twist,
    twist_to_det_chi,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "CurveFp",
    "CurveQ",
    "EmbeddingChoice",
    "Factorization",
    "NewformData",
    "QuadInt",
    "Residue",
    "ResidualRep",
    "TwistSpec",
    "available_witness_primes",
    "bundled_form",
    "certify_form",
    "check",
    "closed_form_scan",
    "conductor_bound_test",
    "count_points",
    "counting_backend",
    "dump_form",
    "dump_report",
    "embedding_choices",
    "falsify_curve",
    "full_paper_verification",
    "hasse_interval",
    "irreducibility_by_discriminant",
    "is_prime",
    "isqrt",
    "legendre",
    "load_form",
    "mod_inv",
    "mod_pow",
    "non_elliptic_trace_test",
    "norm_discriminant",
    "parse_form",
    "primes_in_range",
    "reduce_mod",
    "reducibility_obstruction",
    "residual_rep",
    "serre_bound_predicate",
    "splits",
    "trace_of_frobenius",
    "trace_set",
    "trial_factor",
    "twist",
    "twist_to_det_chi",
    "__version__",
]
