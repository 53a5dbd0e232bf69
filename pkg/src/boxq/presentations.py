"""The four algebras as explicit relation tables over named generators.

Relations are stored as data (noncommutative words with Q(q) coefficients),
one table per algebra id, so relation verification is a single generic word
evaluator.  Twists and pullbacks are pure re-bindings of the generator map.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .field import RatFunc, q_int
from .linalg import FieldMatrix

ALGEBRAS: dict[str, tuple[str, ...]] = {
    "box_q": ("x0", "x1", "x2", "x3"),
    "uq_loop": ("e0p", "e0m", "K0", "K0inv", "e1p", "e1m", "K1", "K1inv"),
    "uq_loop_equitable": ("X01", "X12", "X23", "X30", "X13", "X31"),
    "uq_plus": ("x", "y"),
    "tet_q": ("x01", "x12", "x23", "x30", "x02", "x20", "x13", "x31"),
}


class AlgebraMismatchError(ValueError):
    """Operation applied to a representation of the wrong algebra."""


@dataclass
class Representation:
    """A module: an algebra id plus one square matrix per generator."""

    algebra: str
    dim: int
    gens: dict[str, FieldMatrix]

    def __post_init__(self):
        if self.algebra not in ALGEBRAS:
            raise AlgebraMismatchError(f"unknown algebra {self.algebra!r}")
        names = ALGEBRAS[self.algebra]
        missing = [g for g in names if g not in self.gens]
        if missing:
            raise ValueError(f"unbound generators: {missing}")
        extra = [g for g in self.gens if g not in names]
        if extra:
            raise ValueError(f"unexpected generators: {extra}")
        for g, m in self.gens.items():
            if m.rows != self.dim or m.cols != self.dim:
                raise ValueError(f"generator {g} is not {self.dim}x{self.dim}")

    def gen(self, name: str) -> FieldMatrix:
        return self.gens[name]

    def gens_in_order(self) -> list[FieldMatrix]:
        return [self.gens[g] for g in ALGEBRAS[self.algebra]]

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "dim": self.dim,
            "gens": {g: m.to_json() for g, m in self.gens.items()},
        }

    @staticmethod
    def from_json(obj) -> "Representation":
        return Representation(
            obj["algebra"],
            obj["dim"],
            {g: FieldMatrix.from_json(m) for g, m in obj["gens"].items()},
        )


@dataclass(frozen=True)
class Relation:
    """sum(coeff * word) = rhs * 1, with words as generator-name tuples."""

    label: str
    terms: tuple
    rhs: RatFunc


@dataclass
class RelationReport:
    total: int
    failed: list  # (label, description of a deviating entry)

    @property
    def ok(self) -> bool:
        return not self.failed


def _weyl(label, r, s, rhs_one=True):
    """(q*r*s - q^-1*s*r)/(q - q^-1) = 1."""
    q = RatFunc.gen()
    qq = q - q**-1
    return Relation(
        label,
        ((q / qq, (r, s)), (-(q**-1) / qq, (s, r))),
        RatFunc.one() if rhs_one else RatFunc.zero(),
    )


def _serre(label, r, s):
    """r^3 s - [3] r^2 s r + [3] r s r^2 - s r^3 = 0."""
    three = q_int(3)
    one = RatFunc.one()
    return Relation(
        label,
        (
            (one, (r, r, r, s)),
            (-three, (r, r, s, r)),
            (three, (r, s, r, r)),
            (-one, (s, r, r, r)),
        ),
        RatFunc.zero(),
    )


def _unit(label, r, s):
    """r*s = 1."""
    return Relation(label, ((RatFunc.one(), (r, s)),), RatFunc.one())


def _box_relations():
    rels = []
    for i in range(4):
        rels.append(_weyl(f"box_q.eq11.i={i}", f"x{i}", f"x{(i + 1) % 4}"))
    for i in range(4):
        rels.append(_serre(f"box_q.eq12.i={i}", f"x{i}", f"x{(i + 2) % 4}"))
    return tuple(rels)


def _uq_loop_relations():
    q = RatFunc.gen()
    one = RatFunc.one()
    zero = RatFunc.zero()
    c = (q - q**-1) ** -1
    rels = [
        _unit("uq_loop.KKinv.i=0", "K0", "K0inv"),
        _unit("uq_loop.KinvK.i=0", "K0inv", "K0"),
        _unit("uq_loop.KKinv.i=1", "K1", "K1inv"),
        _unit("uq_loop.KinvK.i=1", "K1inv", "K1"),
        _unit("uq_loop.K0K1", "K0", "K1"),
        _unit("uq_loop.K1K0", "K1", "K0"),
    ]
    for i in (0, 1):
        for j, s in ((0, "p"), (0, "m"), (1, "p"), (1, "m")):
            sign = 1 if s == "p" else -1
            exp = 2 * sign if i == j else -2 * sign
            rels.append(
                Relation(
                    f"uq_loop.conj.K{i}.e{j}{s}",
                    (
                        (one, (f"K{i}", f"e{j}{s}", f"K{i}inv")),
                        (-(q**exp), (f"e{j}{s}",)),
                    ),
                    zero,
                )
            )
    for i in (0, 1):
        rels.append(
            Relation(
                f"uq_loop.cartan.i={i}",
                (
                    (one, (f"e{i}p", f"e{i}m")),
                    (-one, (f"e{i}m", f"e{i}p")),
                    (-c, (f"K{i}",)),
                    (c, (f"K{i}inv",)),
                ),
                zero,
            )
        )
    for a, b in (("e0p", "e1m"), ("e0m", "e1p")):
        rels.append(
            Relation(
                f"uq_loop.cross.{a}.{b}",
                ((one, (a, b)), (-one, (b, a))),
                zero,
            )
        )
    for i, j in ((0, 1), (1, 0)):
        for s in ("p", "m"):
            rels.append(_serre(f"uq_loop.serre.e{i}{s}.e{j}{s}", f"e{i}{s}", f"e{j}{s}"))
    return tuple(rels)


def _equitable_relations():
    rels = [
        _unit("uq_eq.inv.X13X31", "X13", "X31"),
        _unit("uq_eq.inv.X31X13", "X31", "X13"),
        _weyl("uq_eq.weyl.X01.X13", "X01", "X13"),
        _weyl("uq_eq.weyl.X13.X30", "X13", "X30"),
        _weyl("uq_eq.weyl.X23.X31", "X23", "X31"),
        _weyl("uq_eq.weyl.X31.X12", "X31", "X12"),
    ]
    ring = ("X01", "X12", "X23", "X30")
    for i in range(4):
        rels.append(_weyl(f"uq_eq.weyl.i={i}", ring[i], ring[(i + 1) % 4]))
    for i in range(4):
        rels.append(_serre(f"uq_eq.serre.i={i}", ring[i], ring[(i + 2) % 4]))
    return tuple(rels)


def _uq_plus_relations():
    return (
        _serre("uq_plus.serre.x", "x", "y"),
        _serre("uq_plus.serre.y", "y", "x"),
    )


def _tet_relations():
    rels = []
    for i in range(4):
        j = (i + 2) % 4
        rels.append(_unit(f"tet_q.inv.x{i}{j}", f"x{i}{j}", f"x{j}{i}"))
    for h in range(4):
        i, j = (h + 1) % 4, (h + 2) % 4
        rels.append(_weyl(f"tet_q.weyl.h={h}.d=(1,1)", f"x{h}{i}", f"x{i}{j}"))
        i, j = (h + 1) % 4, (h + 3) % 4
        rels.append(_weyl(f"tet_q.weyl.h={h}.d=(1,2)", f"x{h}{i}", f"x{i}{j}"))
        i, j = (h + 2) % 4, (h + 3) % 4
        rels.append(_weyl(f"tet_q.weyl.h={h}.d=(2,1)", f"x{h}{i}", f"x{i}{j}"))
    for h in range(4):
        i, j, k = (h + 1) % 4, (h + 2) % 4, (h + 3) % 4
        rels.append(_serre(f"tet_q.serre.h={h}", f"x{h}{i}", f"x{j}{k}"))
    return tuple(rels)


_RELATION_TABLES: dict[str, tuple] = {}


def relations_for(algebra: str) -> tuple:
    if algebra not in ALGEBRAS:
        raise AlgebraMismatchError(f"unknown algebra {algebra!r}")
    if not _RELATION_TABLES:
        _RELATION_TABLES.update(
            {
                "box_q": _box_relations(),
                "uq_loop": _uq_loop_relations(),
                "uq_loop_equitable": _equitable_relations(),
                "uq_plus": _uq_plus_relations(),
                "tet_q": _tet_relations(),
            }
        )
    return _RELATION_TABLES[algebra]


def verify_relations(rep: Representation) -> RelationReport:
    """Evaluate every defining relation of rep.algebra as a matrix identity."""
    rels = relations_for(rep.algebra)
    ident = FieldMatrix.identity(rep.dim)
    failed = []
    for rel in rels:
        acc = FieldMatrix.zeros(rep.dim, rep.dim)
        for coeff, word in rel.terms:
            prod = reduce(
                lambda acc_m, name: acc_m * rep.gens[name], word, ident
            )
            acc = acc + prod.scale(coeff)
        diff = acc - ident.scale(rel.rhs)
        bad = _first_nonzero(diff)
        if bad is not None:
            i, j, val = bad
            failed.append((rel.label, f"entry ({i},{j}) deviates by {val}"))
    return RelationReport(total=len(rels), failed=failed)


def _first_nonzero(m: FieldMatrix):
    for i, row in enumerate(m.entries):
        for j, x in enumerate(row):
            if not x.is_zero():
                return i, j, x
    return None


# ---------------------------------------------------------------------------
# Twists (algebra automorphisms acting on representations).


def rho_twist(rep: Representation) -> Representation:
    """Twist by the automorphism sending x_i -> x_{i+1} (indices mod 4)."""
    if rep.algebra == "box_q":
        new = {f"x{i}": rep.gens[f"x{(i + 1) % 4}"] for i in range(4)}
    elif rep.algebra == "tet_q":
        new = {}
        for name in ALGEBRAS["tet_q"]:
            i, j = int(name[1]), int(name[2])
            new[name] = rep.gens[f"x{(i + 1) % 4}{(j + 1) % 4}"]
    else:
        raise AlgebraMismatchError(f"rho twist undefined for {rep.algebra}")
    return Representation(rep.algebra, rep.dim, new)


def scale_twist(rep: Representation, alpha: RatFunc) -> Representation:
    """Twist by x0 -> a^-1 x0, x1 -> a x1, x2 -> a^-1 x2, x3 -> a x3."""
    if rep.algebra != "box_q":
        raise AlgebraMismatchError(f"scale twist undefined for {rep.algebra}")
    if alpha.is_zero():
        raise ValueError("scale twist needs a nonzero alpha")
    inv = alpha.inverse()
    new = {
        "x0": rep.gens["x0"].scale(inv),
        "x1": rep.gens["x1"].scale(alpha),
        "x2": rep.gens["x2"].scale(inv),
        "x3": rep.gens["x3"].scale(alpha),
    }
    return Representation("box_q", rep.dim, new)


def conjugate_representation(rep: Representation, p: FieldMatrix) -> Representation:
    """Change of basis g -> p g p^-1 (an isomorphic copy of the module)."""
    p_inv = p.inverse()
    return Representation(
        rep.algebra, rep.dim, {g: p * m * p_inv for g, m in rep.gens.items()}
    )


# ---------------------------------------------------------------------------
# Pullbacks along the homomorphism chain uq_plus -> box_q -> loop -> tet.


def pullback_psi(rep: Representation) -> Representation:
    """box_q structure on an equitable module: x_i acts as X_{i,i+1}."""
    if rep.algebra != "uq_loop_equitable":
        raise AlgebraMismatchError("psi pulls back equitable representations")
    new = {
        "x0": rep.gens["X01"],
        "x1": rep.gens["X12"],
        "x2": rep.gens["X23"],
        "x3": rep.gens["X30"],
    }
    return Representation("box_q", rep.dim, new)


def pullback_kappa(rep: Representation) -> Representation:
    """uq_plus structure on a box_q module: x acts as x0, y as x2."""
    if rep.algebra != "box_q":
        raise AlgebraMismatchError("kappa pulls back box_q representations")
    return Representation(
        "uq_plus", rep.dim, {"x": rep.gens["x0"], "y": rep.gens["x2"]}
    )


def pullback_eta(rep: Representation) -> Representation:
    """Equitable structure on a tet_q module."""
    if rep.algebra != "tet_q":
        raise AlgebraMismatchError("eta pulls back tet_q representations")
    new = {
        "X01": rep.gens["x01"],
        "X12": rep.gens["x12"],
        "X23": rep.gens["x23"],
        "X30": rep.gens["x30"],
        "X13": rep.gens["x13"],
        "X31": rep.gens["x31"],
    }
    return Representation("uq_loop_equitable", rep.dim, new)


# ---------------------------------------------------------------------------
# Chevalley <-> equitable coordinate changes.


def chevalley_to_equitable(rep: Representation) -> Representation:
    if rep.algebra != "uq_loop":
        raise AlgebraMismatchError("expected a Chevalley representation")
    q = RatFunc.gen()
    qq = q - q**-1
    g = rep.gens
    new = {
        "X01": g["K0"] + (g["K0"] * g["e0m"]).scale(q * qq),
        "X23": g["K1"] + (g["K1"] * g["e1m"]).scale(q * qq),
        "X12": g["K1"] - g["e1p"].scale(qq),
        "X30": g["K0"] - g["e0p"].scale(qq),
        "X13": g["K1"],
        "X31": g["K0"],
    }
    return Representation("uq_loop_equitable", rep.dim, new)


def equitable_to_chevalley(rep: Representation) -> Representation:
    if rep.algebra != "uq_loop_equitable":
        raise AlgebraMismatchError("expected an equitable representation")
    q = RatFunc.gen()
    qq = q - q**-1
    c = (q * qq).inverse()
    g = rep.gens
    ident = FieldMatrix.identity(rep.dim)
    new = {
        "e0m": (g["X13"] * g["X01"] - ident).scale(c),
        "e1m": (g["X31"] * g["X23"] - ident).scale(c),
        "e1p": (g["X13"] - g["X12"]).scale(qq.inverse()),
        "e0p": (g["X31"] - g["X30"]).scale(qq.inverse()),
        "K1": g["X13"],
        "K0": g["X31"],
        "K0inv": g["X13"],
        "K1inv": g["X31"],
    }
    return Representation("uq_loop", rep.dim, new)
