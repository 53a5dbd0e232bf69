import random

import pytest
from hypothesis import given, settings, strategies as st

from boxq.field import Poly, RatFunc
from boxq.linalg import (
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
from boxq.modules import evaluation_module
from boxq.presentations import pullback_psi

Q = RatFunc.gen()
ONE = RatFunc.one()
ZERO = RatFunc.zero()


def m(rows):
    return FieldMatrix(rows)


# --- kernels and eigenspaces --------------------------------------------------


def test_kernel_identity_is_zero():
    assert kernel(FieldMatrix.identity(3)).dim == 0


def test_kernel_zero_matrix_is_full():
    assert kernel(FieldMatrix.zeros(2, 2)) == Subspace.full(2)


def test_kernel_rank_one_matrix():
    a = m([[1, Q], [Q**-1, 1]])
    assert a.det().is_zero()  # rank-1 witness
    ker = kernel(a)
    assert ker.dim == 1
    assert ker.contains_vector([-Q, ONE])


def test_eigenspace_diagonal():
    a = FieldMatrix.diagonal([Q, Q**-1])
    assert eigenspace(a, Q).basis == ((ONE, ZERO),)
    assert eigenspace(a, ONE).dim == 0


def test_eigenspace_of_equitable_generator():
    x01 = evaluation_module(Q**3, "equitable").gens["X01"]
    space = eigenspace(x01, Q**-1)
    assert space.basis == ((ONE, ZERO),)


# --- semisimplicity -----------------------------------------------------------


def test_check_semisimple_diagonal():
    res = check_semisimple(FieldMatrix.diagonal([Q, Q**-1]), [Q, Q**-1])
    assert res.ok and res.dim_sum == 2
    assert [s.dim for s in res.spaces] == [1, 1]


def test_check_semisimple_jordan_block_fails():
    res = check_semisimple(m([[1, 1], [0, 1]]), [ONE])
    assert not res.ok
    assert res.dim_sum == 1


def test_check_semisimple_box_generator():
    box = pullback_psi(evaluation_module(Q**2, "equitable"))
    res = check_semisimple(box.gens["x0"], [Q, Q**-1])
    assert res.ok


def test_check_semisimple_rejects_duplicates():
    with pytest.raises(ValueError):
        check_semisimple(FieldMatrix.identity(2), [Q, Q])


# --- subspace lattice ----------------------------------------------------------


def _span(vectors, n):
    return Subspace(n, vectors)


def test_intersect_examples():
    u = _span([[ONE, ZERO, ZERO], [ZERO, ONE, ZERO]], 3)
    w = _span([[ZERO, ONE, ZERO], [ZERO, ZERO, ONE]], 3)
    assert u.intersect(w) == _span([[ZERO, ONE, ZERO]], 3)
    assert u.intersect(u) == u
    line1 = _span([[ONE, ZERO]], 2)
    line2 = _span([[ZERO, ONE]], 2)
    assert line1.intersect(line2).dim == 0


def test_intersect_dimension_mismatch():
    with pytest.raises(ValueError):
        Subspace.full(2).intersect(Subspace.full(3))


@st.composite
def subspaces(draw, n=4):
    k = draw(st.integers(0, n))
    vecs = [
        [RatFunc.from_fraction(draw(st.integers(-3, 3))) for _ in range(n)]
        for _ in range(k)
    ]
    return Subspace(n, vecs)


@given(subspaces(), subspaces(), subspaces())
@settings(max_examples=60, deadline=None)
def test_intersect_lattice_laws(u, v, w):
    assert u.intersect(v) == v.intersect(u)
    assert u.intersect(u) == u
    assert u.intersect(v).intersect(w) == u.intersect(v.intersect(w))


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), max_size=4))
@settings(max_examples=100)
def test_rank_nullity(rows):
    if not rows:
        return
    a = FieldMatrix([[RatFunc.from_fraction(x) for x in row] for row in rows])
    assert a.rank() + kernel(a).dim == a.cols


def test_solve_linear_consistent_and_not():
    a = m([[1, 1], [0, 1]])
    x, hom = solve_linear(a, [Q, ONE])
    assert x is not None and hom.dim == 0
    assert a.apply(x) == [Q, ONE]
    singular = m([[1, 1], [1, 1]])
    x, hom = solve_linear(singular, [ONE, ZERO])
    assert x is None
    assert hom.dim == 1


# --- intertwiners ---------------------------------------------------------------


def test_intertwiner_identity_case():
    a = m([[Q, 1], [0, Q**-1]])
    s = solve_intertwiner([a], [a])
    assert s is not None
    assert s * a == a * s


def test_intertwiner_swap_case():
    a = FieldMatrix.diagonal([Q, Q**-1])
    b = FieldMatrix.diagonal([Q**-1, Q])
    s = solve_intertwiner([a], [b])
    assert s is not None
    assert s * a == b * s
    assert not s.det().is_zero()


def test_intertwiner_none_when_no_solution():
    a = FieldMatrix.diagonal([Q, Q**-1])
    b = FieldMatrix.diagonal([Q**2, Q**-2])
    # only S = 0 solves SA = BS here, so the solution space is trivial
    assert solve_intertwiner([a, a], [b, b]) is None


def test_intertwiner_search_failure_is_distinct():
    # reducible situation where solutions exist but none is invertible:
    # S * 0 = 0 * S for the zero map plus a rank trap on the second pair
    a1 = m([[0, 0], [0, 0]])
    b1 = a1
    a2 = m([[0, 1], [0, 0]])
    b2 = m([[0, 0], [0, 0]])
    with pytest.raises(IntertwinerSearchError):
        solve_intertwiner([a1, a2], [b1, b2])


# --- Burnside irreducibility ----------------------------------------------------


def test_burnside_single_diagonal_reducible():
    assert not burnside_irreducible([FieldMatrix.diagonal([1, 2])])


def test_burnside_evaluation_module_irreducible():
    equi = evaluation_module(Q**3, "equitable")
    assert burnside_irreducible([equi.gens["X01"], equi.gens["X23"]])


def test_burnside_a_equals_one_reducible():
    equi = evaluation_module(RatFunc.one(), "equitable")
    assert not burnside_irreducible([equi.gens["X01"], equi.gens["X23"]])


def _bruteforce_irreducible(mats, candidate_eigs):
    """Independent oracle: search for a proper joint-invariant subspace by
    closing spans of eigenvectors of the generators."""
    n = mats[0].rows
    for a in mats:
        for lam in candidate_eigs:
            space = eigenspace(a, lam)
            for v in space.basis:
                w = Subspace(n, [v])
                while True:
                    grown = w
                    for b in mats:
                        grown = grown + Subspace(
                            n, [b.apply(u) for u in grown.basis]
                        )
                    if grown == w:
                        break
                    w = grown
                if 0 < w.dim < n:
                    return False
    return True


def test_burnside_agrees_with_bruteforce_small():
    cands = [RatFunc.from_fraction(k) for k in (-2, -1, 1, 2, 3, 4)] + [
        Q,
        Q**-1,
        ONE,
    ]
    instances = [
        [FieldMatrix.diagonal([1, 2])],
        [FieldMatrix.diagonal([1, 2]), FieldMatrix.diagonal([3, 4])],
        [m([[0, 1], [1, 0]]), m([[1, 0], [0, -1]])],  # irreducible pair
        [FieldMatrix.diagonal([1, 2, 3]), m([[1, 1, 0], [0, 1, 1], [0, 0, 1]])],
    ]
    equi = evaluation_module(Q**3, "equitable")
    instances.append([equi.gens["X01"], equi.gens["X23"]])
    one_mod = evaluation_module(ONE, "equitable")
    instances.append([one_mod.gens["X01"], one_mod.gens["X23"]])
    for mats in instances:
        assert burnside_irreducible(mats) == _bruteforce_irreducible(mats, cands)


def test_burnside_validates_input():
    with pytest.raises(ValueError):
        burnside_irreducible([])
    with pytest.raises(ValueError):
        burnside_irreducible([FieldMatrix.identity(2), FieldMatrix.identity(3)])


# --- misc matrix helpers -------------------------------------------------------


def test_inverse_round_trip():
    a = m([[Q, 1], [1, Q**-1 + 1]])
    assert a * a.inverse() == FieldMatrix.identity(2)
    with pytest.raises(ValueError):
        m([[1, 1], [1, 1]]).inverse()


def test_kron_shape_and_values():
    a = FieldMatrix.diagonal([Q, Q**-1])
    b = FieldMatrix.identity(2)
    k = a.kron(b)
    assert (k.rows, k.cols) == (4, 4)
    assert k[0, 0] == Q and k[3, 3] == Q**-1


def test_matrix_json_round_trip():
    a = m([[Q, 1], [0, Q**-2]])
    assert FieldMatrix.from_json(a.to_json()) == a
