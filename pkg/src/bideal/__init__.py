"""Exact combinatorics of central hyperplane arrangements over the rationals:
intersection lattice, irreducible decomposition, exponents, freeness
certificates, and the factored Bernstein-ideal generator of a free
arrangement together with its slope set.
"""

__version__ = "0.1.0"

from .arrangement import (
    Arrangement,
    LinearForm,
    delete,
    essentialize,
    family,
    localize,
    make_arrangement,
    restrict,
)
from .bernstein import (
    FactoredSPolynomial,
    LinearFactor,
    SlopeSet,
    UnivariateFactored,
    bernstein_generator,
    evident_multiple,
    lower_bound_irreducible,
    slopes,
    specialize,
    symmetry_check,
)
from .errors import (
    AsymmetryError,
    DomainError,
    DuplicateHyperplaneError,
    EmptyArrangementError,
    FreenessRequiredError,
    InvalidFormError,
    InvalidIndexError,
    InvalidParameterError,
    NotAFlatError,
    NotIrreducibleError,
    NotLogarithmicError,
)
from .lattice import Flat, IntersectionLattice, IntPoly, char_poly, intersection_lattice
from .linalg import MultiPoly, Rational, RowSpace, det_poly, rref
from .structure import (
    Derivation,
    ExponentMultiset,
    FreenessVerdict,
    InductiveChain,
    IrreducibleDecomposition,
    NonIntegralRootsReport,
    Outcome,
    RankAtMostTwo,
    SaitoWitness,
    TildeOperator,
    annihilator_presentation,
    check_logarithmic,
    defining_polynomial,
    euler_derivation,
    exponents,
    freeness,
    irreducible_components,
    power_derivation,
    saito_check,
    tilde,
)

__all__ = [name for name in dir() if not name.startswith("_")]
