"""Exact computations for generalized Bott manifolds and two-stage toric Fano rigidity."""

from .cohomology import (
    CohomologyRing,
    additive_basis,
    c1,
    multiply,
    nilpotent_degree2,
    normal_form,
    relations,
    total_chern,
)
from .enumerate import classification_emit, enumerate_fano, verify_rigidity
from .fan import (
    is_fano,
    is_fano_two_stage,
    maximal_cones,
    primitive_collections,
    primitive_relation,
    ray_matrix,
)
from .gbm import (
    CanonicalForm,
    GeneralizedBottMatrix,
    TwoStageSpec,
    canonical_form,
    elementary_symmetric,
    normalize,
    parse_spec,
    validate,
)
from .iso import (
    IsoVerdict,
    IsoWitness,
    decide_c1_iso,
    decide_variety_iso,
    hirzebruch_class,
    product_cohomology_test,
    ring_iso_search,
    verify_witness,
)
from .polynomial import IntPolynomial

__version__ = "0.1.0"
