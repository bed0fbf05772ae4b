"""Exact hypothesis audits for dual representation triples, plus the
operator calculus (Weierstrass preparation, twists, involution,
characteristic ideals) used to decide algebraic functional equations."""

from .artin import ArtinInstance, AuditReport, DecompositionModel, full_audit
from .chartab import (
    CharTable,
    ClassFunction,
    dixon_table,
    find_modular_prime,
    regular_character,
    trivial_character,
)
from .cyclotomic import CycloElement, cyclotomic_polynomial, euler_phi
from .errors import (
    ConductorOverflow,
    DegreeCapExceeded,
    ElementNotInGroup,
    GroupMismatch,
    IwartinError,
    InvalidPermutation,
    NoSuitableModularPrime,
    NonIntegerMultiplicity,
    NotAMultiple,
    NotAnInvolution,
    NotASubMultiset,
    NotASubgroup,
    NotSquarefree,
    OrderCapExceeded,
    OrthogonalityFailure,
    POrderViolation,
    ParseError,
    PrecisionExhausted,
    SchemaViolation,
    SearchExhausted,
)
from .iwasawa import (
    CoefficientRing,
    ElementaryModule,
    IwasawaElement,
    TwistCharacter,
    WeierstrassForm,
    char_ideal,
    coinvariants_finite,
    ext1_elementary,
    find_regular_twist,
    funceq_check,
    involute,
    module_twist,
    normal_form_equal,
    omega,
    twist,
    twist_lemma_check,
    wprep,
)
from .modpfactor import PolyModP, frobenius_consistency
from .perms import (
    CyclicFactor,
    PermGroup,
    ProductWithCyclic,
    direct_product_with_cyclic,
)
from .suite import format_summary, run_suite

__version__ = "0.1.0"
