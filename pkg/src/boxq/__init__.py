"""Exact-arithmetic workbench for box_q-modules and their relatives.

Scalars live in Q(q) (field), matrices and subspaces on top of them
(linalg), the four algebras as relation tables with twists and pullbacks
(presentations), module constructions and structural analysis (modules),
Drinfel'd polynomials (drinfeld), and tridiagonal pairs (tdpair).
"""

from .field import (
    LiteralParseError,
    PoleError,
    Poly,
    RatFunc,
    ZPoly,
    canonicalize,
    eval_at,
    parse_ratfunc,
    q_factorial,
    q_int,
)
from .linalg import (
    FieldMatrix,
    IntertwinerSearchError,
    Subspace,
    burnside_irreducible,
    check_semisimple,
    eigenspace,
    kernel,
    solve_intertwiner,
    solve_linear,
)
from .presentations import (
    ALGEBRAS,
    AlgebraMismatchError,
    Relation,
    RelationReport,
    Representation,
    chevalley_to_equitable,
    equitable_to_chevalley,
    pullback_eta,
    pullback_kappa,
    pullback_psi,
    relations_for,
    rho_twist,
    scale_twist,
    verify_relations,
)
from .modules import (
    BoxAnalysis,
    CertificationError,
    CompletionError,
    EvaluationParams,
    TypeDetectionError,
    WeightData,
    WeightDecompositionError,
    analyze_box,
    detect_diameter,
    evaluation_box_module,
    evaluation_module,
    is_isomorphic,
    loop_module_of_box,
    normalize_type,
    reconstruct_uq,
    tensor,
    tet_from_equitable,
    trivial_module,
    weight_decomposition,
)
from .drinfeld import (
    DrinfeldPoly,
    NotEigenvectorError,
    SigmaSequence,
    check_partner_theorem,
    drinfeld_P,
    drinfeld_Q,
    drinfeld_of_box,
    drinfeld_pair_of_box,
    mu_seq,
    partner,
    sigma_seq,
    trace_invariants,
)
from .tdpair import (
    InconsistentBaseError,
    NoExactFitError,
    NotProportionalError,
    SixTableReport,
    TDAnalysis,
    TDPair,
    TDPairFailure,
    UnsupportedDiameterError,
    analyze_tdpair,
    base_of,
    box_generator_pair,
    fit_theta_params,
    q_geometric_check,
    six_polynomial_table,
    split_sequence,
    td_drinfeld,
    verify_tdpair,
)

__all__ = [name for name in dir() if not name.startswith("_")]
