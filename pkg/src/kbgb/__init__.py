"""Knuth-Bendix completion and the noncommutative Buchberger algorithm,
run in lockstep.

The string-rewriting engine completes semigroup/monoid presentations; the
polynomial engine completes free-algebra ideal bases over exact fields.
For a rule set R and the basis of two-term polynomials {l - r}, the
lockstep driver runs both engines pass by pass and verifies that they
correspond at every step.
"""

from .correspondence import (
    CorrespondenceReport,
    IsoCheckReport,
    LockstepPass,
    NonBinomialError,
    basis_to_rules,
    lockstep_complete,
    rules_to_basis,
    verify_algebra_iso,
)
from .limits import (
    CompletionLimits,
    LimitExceeded,
    ReductionBudgetExceeded,
)
from .ncpoly import (
    QQ,
    Basis,
    BuchbergerResult,
    NcPolynomial,
    PolyPassRecord,
    PrimeField,
    RationalField,
    ReductionStep,
    SPolyRecord,
    buchberger,
    buchberger_pass,
    field_from_name,
    is_pm_binomial,
    leading_monomial,
    make_monic,
    monomials_equal_mod_ideal,
    poly_normal_form,
    poly_reduce_once,
    reduce_with_steps,
    render_poly,
    replay_steps,
    s_polynomials,
)
from .presentation import (
    ParseError,
    PresentationFile,
    parse_presentation,
    render_presentation,
)
from .rewriting import (
    MONOID,
    SEMIGROUP,
    CriticalPair,
    KnuthBendixResult,
    PassRecord,
    RewriteSystem,
    Rule,
    critical_pairs,
    enumerate_normal_forms,
    interreduce,
    is_irreducible,
    is_locally_confluent,
    kb_pass,
    knuth_bendix,
    normal_form,
    reduce_once,
    words_equal,
)
from .words import (
    Alphabet,
    AlphabetMismatch,
    MatchKind,
    MonomialOrder,
    OverlapMatch,
    Word,
    concat,
    find_matches,
    find_subword_occurrences,
)

__version__ = "0.1.0"
