"""Tridiagonal pairs: axioms, shape, base, theta parameters, split sequence,
and the polynomial built from them, with the bridges to the module-side
Drinfel'd polynomials.

Orderings are explicit throughout: a TDPair carries the standard eigenvalue
orderings it was verified against, and the convenience constructor for
q-geometric pairs picks descending powers (theta_0 = t^d).
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import RatFunc, ZPoly
from .linalg import FieldMatrix, burnside_irreducible, check_semisimple, solve_linear
from .presentations import Representation, rho_twist
from .drinfeld import drinfeld_P, drinfeld_Q
from .modules import detect_diameter, loop_module_of_box

_ONE = RatFunc.one()
_ZERO = RatFunc.zero()


class InconsistentBaseError(ValueError):
    """The base ratios disagree across i or across the two eigenvalue lists."""


class NoExactFitError(ValueError):
    """The eigenvalues are not of the a + b t^(2i-d) + c t^(d-2i) form."""


class NotProportionalError(ValueError):
    """A split-sequence word did not act as a scalar (non-sharp pair?)."""


class UnsupportedDiameterError(ValueError):
    """The tridiagonal Drinfel'd polynomial needs diameter at least 2."""


@dataclass(frozen=True)
class TDPair:
    A: FieldMatrix
    Astar: FieldMatrix
    eig_A: tuple  # standard ordering theta_0 .. theta_d
    eig_Astar: tuple
    spaces_A: tuple  # eigenspaces in the same order
    spaces_Astar: tuple

    @property
    def diameter(self) -> int:
        return len(self.eig_A) - 1

    @property
    def shape(self) -> tuple:
        return tuple(s.dim for s in self.spaces_A)

    def swapped(self) -> "TDPair":
        return TDPair(
            self.Astar, self.A, self.eig_Astar, self.eig_A,
            self.spaces_Astar, self.spaces_A,
        )


@dataclass(frozen=True)
class TDPairFailure:
    axiom: str
    detail: str


@dataclass(frozen=True)
class TDAnalysis:
    diameter: int
    shape: tuple
    base: RatFunc
    t: RatFunc
    params: tuple  # (a, b, c, a*, b*, c*)
    split_seq: tuple

    def to_json(self) -> dict:
        return {
            "diameter": self.diameter,
            "shape": list(self.shape),
            "base": self.base.to_json(),
            "t": self.t.to_json(),
            "params": [p.to_json() for p in self.params],
            "split_seq": [z.to_json() for z in self.split_seq],
        }


def _tridiagonal(op: FieldMatrix, spaces) -> bool:
    d = len(spaces) - 1
    for i, space in enumerate(spaces):
        lo, hi = max(i - 1, 0), min(i + 1, d)
        window = spaces[lo]
        for j in range(lo + 1, hi + 1):
            window = window + spaces[j]
        for v in space.basis:
            if not window.contains_vector(op.apply(v)):
                return False
    return True


def verify_tdpair(a: FieldMatrix, astar: FieldMatrix, eigs_a, eigs_astar):
    """Check the four tridiagonal-pair axioms; failure is a value."""
    if a.rows != a.cols or astar.rows != astar.cols or a.rows != astar.rows:
        raise ValueError("operators must be square of equal size")
    eigs_a = tuple(eigs_a)
    eigs_astar = tuple(eigs_astar)
    if len(eigs_a) != len(eigs_astar):
        return TDPairFailure(
            "diameter", f"orderings have lengths {len(eigs_a)} != {len(eigs_astar)}"
        )
    res_a = check_semisimple(a, eigs_a)
    if not res_a.ok:
        return TDPairFailure(
            "i", f"A eigenspaces reach dimension {res_a.dim_sum} of {a.rows}"
        )
    res_astar = check_semisimple(astar, eigs_astar)
    if not res_astar.ok:
        return TDPairFailure(
            "i", f"A* eigenspaces reach dimension {res_astar.dim_sum} of {a.rows}"
        )
    if not _tridiagonal(astar, res_a.spaces):
        return TDPairFailure("ii", "A* is not tridiagonal on the A ordering")
    if not _tridiagonal(a, res_astar.spaces):
        return TDPairFailure("iii", "A is not tridiagonal on the A* ordering")
    if not burnside_irreducible([a, astar]):
        return TDPairFailure("iv", "the pair admits a proper invariant subspace")
    return TDPair(a, astar, eigs_a, eigs_astar, res_a.spaces, res_astar.spaces)


def base_of(pair: TDPair) -> RatFunc:
    """Common value of (th_{i-2}-th_{i+1})/(th_{i-1}-th_i) minus one; for
    d <= 2 the conventional base q^2 + q^-2."""
    d = pair.diameter
    q = RatFunc.gen()
    if d <= 2:
        return q**2 + q**-2
    vals = []
    for th in (pair.eig_A, pair.eig_Astar):
        for i in range(2, d):
            vals.append((th[i - 2] - th[i + 1]) / (th[i - 1] - th[i]))
    if any(v != vals[0] for v in vals[1:]):
        raise InconsistentBaseError(f"base ratios disagree: {[str(v) for v in vals]}")
    return vals[0] - _ONE


def _fit_three(thetas, t: RatFunc):
    d = len(thetas) - 1
    if d == 0:
        return _ZERO, _ZERO, thetas[0]
    if d == 1:
        # convention a = 0; the 2x2 system is invertible because t^4 != 1
        m = FieldMatrix([[t**-1, t], [t, t**-1]])
        sol, _ = solve_linear(m, list(thetas))
        return _ZERO, sol[0], sol[1]
    rows = [[_ONE, t ** (2 * i - d), t ** (d - 2 * i)] for i in range(d + 1)]
    sol, _ = solve_linear(FieldMatrix(rows), list(thetas))
    if sol is None:
        raise NoExactFitError("eigenvalues do not fit the type-I closed form")
    return sol[0], sol[1], sol[2]


def fit_theta_params(pair: TDPair, t: RatFunc):
    """(a, b, c, a*, b*, c*) with theta_i = a + b t^(2i-d) + c t^(d-2i)."""
    if t.is_zero() or t**4 == _ONE:
        raise ValueError("need t nonzero with t^4 != 1")
    a, b, c = _fit_three(pair.eig_A, t)
    astar, bstar, cstar = _fit_three(pair.eig_Astar, t)
    return a, b, c, astar, bstar, cstar


def split_sequence(pair: TDPair):
    """Eigenvalues zeta_i of the alternating operator words on V*_0."""
    v0_space = pair.spaces_Astar[0]
    if v0_space.dim != 1:
        raise NotProportionalError("pair is not sharp: dim V*_0 != 1")
    v = list(v0_space.basis[0])
    d = pair.diameter
    n = len(v)
    ident = FieldMatrix.identity(n)
    zetas = [_ONE]
    a_image = v
    for i in range(1, d + 1):
        shifted = pair.A - ident.scale(pair.eig_A[i - 1])
        a_image = shifted.apply(a_image)
        w = a_image
        for k in range(i, 0, -1):
            w = (pair.Astar - ident.scale(pair.eig_Astar[k])).apply(w)
        zetas.append(_scalar_on(v, w))
    return tuple(zetas)


def _scalar_on(v, w) -> RatFunc:
    pivot = next(i for i, x in enumerate(v) if not x.is_zero())
    scalar = w[pivot] / v[pivot]
    if w != [scalar * x for x in v]:
        raise NotProportionalError("word image is not proportional to V*_0")
    return scalar


def _t_int(t: RatFunc, n: int) -> RatFunc:
    return (t**n - t**-n) / (t - t**-1)


def td_drinfeld(pair: TDPair, t: RatFunc) -> ZPoly:
    """The split-sequence generating polynomial of a type-I pair, d >= 2."""
    d = pair.diameter
    if d < 2:
        raise UnsupportedDiameterError("defined only for diameter >= 2")
    beta = base_of(pair)
    if t**2 + t**-2 != beta:
        raise ValueError("t does not witness the base: t^2 + t^-2 != beta")
    a, b, c, astar, bstar, cstar = fit_theta_params(pair, t)
    zetas = split_sequence(pair)
    ps = [None]  # 1-indexed
    for i in range(1, d + 1):
        w = (t**i - t**-i) ** 2
        const = (b * bstar * t ** (2 * i - 2 * d)) + (c * cstar * t ** (2 * d - 2 * i))
        ps.append(ZPoly([w * const, -w]))
    tails = [ZPoly.one()] * (d + 1)
    for i in range(d - 1, -1, -1):
        tails[i] = ps[i + 1] * tails[i + 1]
    total = ZPoly.zero()
    for i in range(d + 1):
        total = total + tails[i].scale(zetas[i])
    sign = _ONE if d % 2 == 0 else -_ONE
    fact = _ONE
    for i in range(2, d + 1):
        fact = fact * _t_int(t, i)
    e = sign * fact**-2 * (t - t**-1) ** (-2 * d)
    return total.scale(e)


def q_geometric_check(pair: TDPair, t: RatFunc) -> bool:
    """Whether both eigenvalue orderings are {t^(d-2i)} up to inversion."""
    if t.is_zero() or t**4 == _ONE:
        raise ValueError("need t nonzero with t^4 != 1")
    d = pair.diameter
    target = tuple(t ** (d - 2 * i) for i in range(d + 1))
    reverse = tuple(reversed(target))
    return pair.eig_A in (target, reverse) and pair.eig_Astar in (target, reverse)


def analyze_tdpair(pair: TDPair, t: RatFunc) -> TDAnalysis:
    """Shape, base, fitted parameters, and split sequence, with the recalled
    shape facts (symmetric, unimodal, sharp) enforced."""
    shape = pair.shape
    d = pair.diameter
    if shape != tuple(reversed(shape)):
        raise ValueError(f"shape {shape} is not symmetric")
    for i in range(1, (d + 2) // 2):
        if shape[i - 1] > shape[i]:
            raise ValueError(f"shape {shape} is not unimodal")
    if shape[0] != 1:
        raise ValueError("pair is not sharp")
    zetas = split_sequence(pair)
    return TDAnalysis(
        diameter=d,
        shape=shape,
        base=base_of(pair),
        t=t,
        params=fit_theta_params(pair, t),
        split_seq=zetas,
    )


# ---------------------------------------------------------------------------
# Pairs coming from box_q modules, and the twelve-polynomial comparison.


def box_generator_pair(
    rep: Representation, i: int, j=None, a_descending=True, astar_descending=True
):
    """(x_i, x_j) of a type-1 box module as a verified tridiagonal pair.

    Default j = i+2; eigenvalue lists are descending powers q^(d-2n) unless
    the corresponding flag asks for the inverted (ascending) ordering.
    """
    if rep.algebra != "box_q":
        raise ValueError("expected a box_q representation")
    if j is None:
        j = (i + 2) % 4
    q = RatFunc.gen()
    det = detect_diameter(rep.gens["x0"], _ONE)
    if det is None:
        raise ValueError("not a type-1 box module")
    d = det[0]
    desc = tuple(q ** (d - 2 * n) for n in range(d + 1))
    asc = tuple(reversed(desc))
    result = verify_tdpair(
        rep.gens[f"x{i}"],
        rep.gens[f"x{j}"],
        desc if a_descending else asc,
        desc if astar_descending else asc,
    )
    if isinstance(result, TDPairFailure):
        raise ValueError(f"axiom ({result.axiom}) fails: {result.detail}")
    return result


@dataclass
class SixTableReport:
    diameter: int
    hexad_a: dict  # label -> ZPoly
    hexad_b: dict
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches


def six_polynomial_table(rep: Representation) -> SixTableReport:
    """Compute the twelve polynomials of the coincidence theorem through
    independent pipelines (split-sequence side vs module side) and compare."""
    if rep.algebra != "box_q":
        raise ValueError("expected a box_q representation")
    q = RatFunc.gen()
    det = detect_diameter(rep.gens["x0"], _ONE)
    if det is None:
        raise ValueError("not a type-1 box module")
    d = det[0]
    if d < 2:
        raise UnsupportedDiameterError("the table needs diameter >= 2")

    td_polys = {}
    for i, j in ((0, 2), (2, 0), (1, 3), (3, 1)):
        td_polys[(i, j)] = td_drinfeld(box_generator_pair(rep, i, j), q)

    twists = [rep]
    for _ in range(3):
        twists.append(rho_twist(twists[-1]))
    p_rev, q_rev = {}, {}
    for k, twisted in enumerate(twists):
        loop = loop_module_of_box(twisted)
        p_rev[k] = drinfeld_P(loop).as_zpoly().reversed_to(d)
        q_rev[k] = drinfeld_Q(loop).as_zpoly().reversed_to(d)

    hexad_a = {
        "P[x0,x2]": td_polys[(0, 2)],
        "z^d*P[rho V](1/z)": p_rev[1],
        "z^d*Q[V](1/z)": q_rev[0],
        "P[x2,x0]": td_polys[(2, 0)],
        "z^d*P[rho^3 V](1/z)": p_rev[3],
        "z^d*Q[rho^2 V](1/z)": q_rev[2],
    }
    hexad_b = {
        "P[x1,x3]": td_polys[(1, 3)],
        "z^d*P[V](1/z)": p_rev[0],
        "z^d*Q[rho V](1/z)": q_rev[1],
        "P[x3,x1]": td_polys[(3, 1)],
        "z^d*P[rho^2 V](1/z)": p_rev[2],
        "z^d*Q[rho^3 V](1/z)": q_rev[3],
    }
    mismatches = []
    for hexad in (hexad_a, hexad_b):
        labels = list(hexad)
        ref = hexad[labels[0]]
        for label in labels[1:]:
            if hexad[label] != ref:
                mismatches.append(f"{label} != {labels[0]}")
    return SixTableReport(d, hexad_a, hexad_b, mismatches)
