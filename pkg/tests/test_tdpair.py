import pytest

from boxq.field import RatFunc, ZPoly
from boxq.linalg import FieldMatrix
from boxq.drinfeld import drinfeld_P, drinfeld_Q, mu_seq, sigma_seq
from boxq.modules import (
    evaluation_box_module,
    loop_module_of_box,
    weight_decomposition,
)
from boxq.tdpair import (
    InconsistentBaseError,
    NoExactFitError,
    NotProportionalError,
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

Q = RatFunc.gen()
ONE = RatFunc.one()
ZERO = RatFunc.zero()
QQ = Q - Q**-1


def desc(d):
    return tuple(Q ** (d - 2 * i) for i in range(d + 1))


# --- axioms ------------------------------------------------------------------


def test_box_pair_passes(box_q3):
    pair = verify_tdpair(
        box_q3.gens["x0"], box_q3.gens["x2"], desc(1), desc(1)
    )
    assert isinstance(pair, TDPair)
    assert pair.diameter == 1
    assert pair.shape == (1, 1)


def test_commuting_diagonals_fail_axiom_iv():
    result = verify_tdpair(
        FieldMatrix.diagonal([1, 2]),
        FieldMatrix.diagonal([3, 4]),
        (ONE, RatFunc.from_fraction(2)),
        (RatFunc.from_fraction(3), RatFunc.from_fraction(4)),
    )
    assert isinstance(result, TDPairFailure)
    assert result.axiom == "iv"


def test_a_equals_one_fails_axiom_iv():
    box = evaluation_box_module(ONE)
    result = verify_tdpair(box.gens["x0"], box.gens["x2"], desc(1), desc(1))
    assert isinstance(result, TDPairFailure)
    assert result.axiom == "iv"


def test_wrong_eigenvalues_fail_axiom_i(box_q3):
    result = verify_tdpair(
        box_q3.gens["x0"], box_q3.gens["x2"], (Q**2, Q**-2), desc(1)
    )
    assert isinstance(result, TDPairFailure)
    assert result.axiom == "i"


def test_non_tridiagonal_ordering_fails(box_d2):
    scrambled = (Q**2, Q**-2, ONE)  # not a standard ordering
    result = verify_tdpair(
        box_d2.gens["x0"], box_d2.gens["x2"], scrambled, desc(2)
    )
    assert isinstance(result, TDPairFailure)
    assert result.axiom == "ii"


# --- base ---------------------------------------------------------------------


def test_base_small_diameter_convention(box_q3):
    pair = box_generator_pair(box_q3, 0)
    assert base_of(pair) == Q**2 + Q**-2


def test_base_diameter_three_computed():
    # independent check: plug theta_i = q^(3-2i) into the defining ratio
    thetas = desc(3)
    ratio = (thetas[0] - thetas[3]) / (thetas[1] - thetas[2])
    assert ratio - 1 == Q**2 + Q**-2


def test_base_diameter_three_pair():
    from boxq.suite import box_triple

    pair = box_generator_pair(box_triple(), 0)
    assert pair.diameter == 3
    assert base_of(pair) == Q**2 + Q**-2


def test_tampered_eigenvalues_inconsistent_base():
    a = FieldMatrix.diagonal([Q**3, Q, Q**-1, Q**-3])
    pair = TDPair(
        a,
        a,
        (Q**3, Q, Q**-1, Q**5),  # tampered tail
        desc(3),
        (None,) * 4,
        (None,) * 4,
    )
    with pytest.raises(InconsistentBaseError):
        base_of(pair)


# --- theta parameter fits --------------------------------------------------------


def test_fit_ascending_descending_patterns(box_d2):
    # the orderings used in the module-side proofs: (0,1,0) against (0,0,1)
    pair = box_generator_pair(box_d2, 3, 1, a_descending=False)
    a, b, c, astar, bstar, cstar = fit_theta_params(pair, Q)
    assert (a, b, c) == (ZERO, ONE, ZERO)
    assert (astar, bstar, cstar) == (ZERO, ZERO, ONE)
    pair = box_generator_pair(box_d2, 2, 0, astar_descending=False)
    a, b, c, astar, bstar, cstar = fit_theta_params(pair, Q)
    assert (a, b, c) == (ZERO, ZERO, ONE)
    assert (astar, bstar, cstar) == (ZERO, ONE, ZERO)


def test_fit_rejects_constant_eigenvalues():
    pair = TDPair(
        FieldMatrix.identity(3),
        FieldMatrix.identity(3),
        (ONE, ONE, ONE),
        (ONE, ONE, ONE),
        (None,) * 3,
        (None,) * 3,
    )
    with pytest.raises(NoExactFitError):
        fit_theta_params(pair, Q)


def test_fit_rejects_bad_t(box_q3):
    pair = box_generator_pair(box_q3, 0)
    with pytest.raises(ValueError):
        fit_theta_params(pair, ONE)


# --- split sequences ---------------------------------------------------------------


def test_split_sequence_starts_at_one(box_q3):
    pair = box_generator_pair(box_q3, 0)
    zetas = split_sequence(pair)
    assert zetas[0] == ONE


def test_split_sequence_sigma_bridge_diameter_one(box_q3):
    # pair (x3, x1) with the proof's orderings: zeta_1 = (q - q^-1)^2 sigma_1
    pair = box_generator_pair(box_q3, 3, 1, a_descending=False)
    zetas = split_sequence(pair)
    assert zetas[1] == QQ**2 * Q**3


def test_split_sequence_mu_bridge_diameter_one(box_q3):
    pair = box_generator_pair(box_q3, 2, 0, astar_descending=False)
    zetas = split_sequence(pair)
    assert zetas[1] == QQ**2 * Q**-3


def test_split_sequence_bridges_termwise(box_d2):
    loop = loop_module_of_box(box_d2)
    wd = weight_decomposition(loop)
    sigmas = sigma_seq(loop, wd).values
    mus = mu_seq(loop, wd).values
    zetas_s = split_sequence(box_generator_pair(box_d2, 3, 1, a_descending=False))
    zetas_m = split_sequence(box_generator_pair(box_d2, 2, 0, astar_descending=False))
    for i in range(3):
        assert zetas_s[i] == QQ ** (2 * i) * sigmas[i]
        assert zetas_m[i] == QQ ** (2 * i) * mus[i]


# --- the tridiagonal Drinfel'd polynomial ---------------------------------------------


def test_td_drinfeld_refuses_small_diameter(box_q3):
    pair = box_generator_pair(box_q3, 0)
    with pytest.raises(UnsupportedDiameterError):
        td_drinfeld(pair, Q)


def test_td_drinfeld_bridges(box_d2):
    loop = loop_module_of_box(box_d2)
    p = drinfeld_P(loop).as_zpoly()
    qv = drinfeld_Q(loop).as_zpoly()
    assert td_drinfeld(box_generator_pair(box_d2, 0, 2), Q) == qv.reversed_to(2)
    assert td_drinfeld(box_generator_pair(box_d2, 1, 3), Q) == p.reversed_to(2)


def test_td_drinfeld_swap_symmetric(box_d2):
    pair = box_generator_pair(box_d2, 0, 2)
    assert td_drinfeld(pair, Q) == td_drinfeld(pair.swapped(), Q)


def test_td_drinfeld_rejects_wrong_t(box_d2):
    pair = box_generator_pair(box_d2, 0, 2)
    with pytest.raises(ValueError):
        td_drinfeld(pair, Q**2)


# --- q-geometric recognition ----------------------------------------------------------


def test_q_geometric_check(box_q3):
    pair = box_generator_pair(box_q3, 0)
    assert q_geometric_check(pair, Q)
    assert not q_geometric_check(pair, Q**3)


def test_q_geometric_check_uq_plus_pair(box_q3):
    from boxq.presentations import pullback_kappa

    up = pullback_kappa(box_q3)
    pair = verify_tdpair(up.gens["x"], up.gens["y"], desc(1), desc(1))
    assert isinstance(pair, TDPair)
    assert q_geometric_check(pair, Q)


def test_q_geometric_check_mismatched():
    a = FieldMatrix.diagonal([Q**2, ONE, Q**-2])
    # mismatched eigenvalue lists could never verify, so build the record directly
    pair = TDPair(a, a, (Q**3, Q, Q**-1), (Q**2, ONE, Q**-2), (None,) * 3, (None,) * 3)
    assert not q_geometric_check(pair, Q)


# --- analysis bundle -------------------------------------------------------------------


def test_analyze_tdpair(box_d2):
    pair = box_generator_pair(box_d2, 0)
    analysis = analyze_tdpair(pair, Q)
    assert analysis.diameter == 2
    assert analysis.shape == (1, 2, 1)
    assert analysis.base == Q**2 + Q**-2
    assert analysis.split_seq[0] == ONE
    payload = analysis.to_json()
    assert payload["diameter"] == 2 and len(payload["split_seq"]) == 3


# --- the twelve-polynomial table --------------------------------------------------------


def test_six_polynomial_table_passes(box_d2):
    report = six_polynomial_table(box_d2)
    assert report.ok
    assert len(report.hexad_a) == 6 and len(report.hexad_b) == 6


def test_six_polynomial_table_rejects_small_diameter(box_q3):
    with pytest.raises(UnsupportedDiameterError):
        six_polynomial_table(box_q3)


def test_six_polynomial_table_detects_tampering(box_d2):
    from boxq.presentations import Representation

    tampered = Representation(
        "box_q", 4, {**box_d2.gens, "x1": box_d2.gens["x1"].scale(Q)}
    )
    with pytest.raises(Exception):
        # either pair verification or reconstruction certification trips
        six_polynomial_table(tampered)
