"""Quadratic monomial ideals with linear powers: checks, orders and certificates."""

from .core import (
    ContextError,
    Monomial,
    MonomialIdeal,
    PolarizationMap,
    VarContext,
    colon_gen,
    ideal_power,
    ideal_product,
    minimalize,
    polarize,
    support,
)
from .graphs import (
    ChordalityCertificate,
    EliminationOrder,
    Graph,
    complement,
    from_edge_ideal,
    is_chordal,
    is_chordless_cycle,
    is_cochordal,
    is_peo,
    mcs_order,
    to_edge_ideal,
)
from .linres import (
    BettiTable,
    NotQuadraticError,
    SimplicialComplex,
    betti_oracle,
    has_linear_resolution_quadratic,
    is_linear_from_betti,
    stanley_reisner,
)
from .quotients import (
    GeneratorOrdering,
    LQCertificate,
    LQFailure,
    SearchBudgetExceeded,
    colon_previous,
    find_lq_order,
    is_lq_order,
    lex_ordering,
    naive_find_lq_order,
)
from .hhz import (
    HHZLabeling,
    HHZWalk,
    HHZWitness,
    NoLinearResolution,
    StandardPresentation,
    WitnessError,
    YWord,
    check_star,
    check_star_star,
    decompose,
    hhz_relabel,
    hhz_walk,
    power_order,
    standard_presentation,
    verify_theorem,
    verify_witness,
    witness,
)

__version__ = "0.1.0"
