"""Dense exact linear algebra over Q(q).

Everything is Gaussian elimination with exact pivoting and full reduction,
so echelon forms are unique and Subspace equality is structural equality.
That is what lets decompositions and flags be compared componentwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .field import RatFunc

_ZERO = RatFunc.zero()
_ONE = RatFunc.one()


class IntertwinerSearchError(RuntimeError):
    """Nonzero intertwiner space, but no invertible member found."""


def _rf(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.from_fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a matrix entry")


class FieldMatrix:
    """Immutable dense matrix over Q(q), stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(_rf(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        self.rows = len(rows)
        self.cols = len(rows[0])
        self.entries = rows

    @staticmethod
    def identity(n: int) -> "FieldMatrix":
        return FieldMatrix(
            [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(r: int, c: int) -> "FieldMatrix":
        return FieldMatrix([[_ZERO] * c for _ in range(r)])

    @staticmethod
    def diagonal(values) -> "FieldMatrix":
        values = [_rf(v) for v in values]
        n = len(values)
        return FieldMatrix(
            [[values[i] if i == j else _ZERO for j in range(n)] for i in range(n)]
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._same_shape(other)
        return FieldMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._same_shape(other)
        return FieldMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self) -> "FieldMatrix":
        return FieldMatrix([[-a for a in row] for row in self.entries])

    def scale(self, c) -> "FieldMatrix":
        c = _rf(c)
        return FieldMatrix([[a * c for a in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, FieldMatrix):
            if self.cols != other.rows:
                raise ValueError("matrix shape mismatch in product")
            bt = list(zip(*other.entries))
            out = []
            for row in self.entries:
                out.append(
                    [
                        _dot(row, col)
                        for col in bt
                    ]
                )
            return FieldMatrix(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "FieldMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        out = FieldMatrix.identity(self.rows)
        for _ in range(n):
            out = out * self
        return out

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(list(zip(*self.entries)))

    def trace(self) -> RatFunc:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        t = _ZERO
        for i in range(self.rows):
            t = t + self.entries[i][i]
        return t

    def kron(self, other: "FieldMatrix") -> "FieldMatrix":
        out = []
        for ra in self.entries:
            for rb in other.entries:
                out.append([a * b for a in ra for b in rb])
        return FieldMatrix(out)

    def apply(self, vec):
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [_dot(row, vec) for row in self.entries]

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.entries for a in row)

    def rank(self) -> int:
        reduced, pivots = _rref([list(r) for r in self.entries])
        return len(pivots)

    def det(self) -> RatFunc:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.entries]
        n = self.rows
        sign = 1
        out = _ONE
        for c in range(n):
            p = next((r for r in range(c, n) if not m[r][c].is_zero()), None)
            if p is None:
                return _ZERO
            if p != c:
                m[c], m[p] = m[p], m[c]
                sign = -sign
            out = out * m[c][c]
            inv = m[c][c].inverse()
            for r in range(c + 1, n):
                if m[r][c].is_zero():
                    continue
                f = m[r][c] * inv
                for k in range(c, n):
                    m[r][k] = m[r][k] - f * m[c][k]
        return out if sign == 1 else -out

    def inverse(self) -> "FieldMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = [
            list(row) + [_ONE if i == j else _ZERO for j in range(n)]
            for i, row in enumerate(self.entries)
        ]
        reduced, pivots = _rref(aug)
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return FieldMatrix([row[n:] for row in reduced])

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("matrix shape mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, FieldMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in row) for row in self.entries)
        return f"FieldMatrix[{body}]"

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[a.to_json() for a in row] for row in self.entries],
        }

    @staticmethod
    def from_json(obj) -> "FieldMatrix":
        m = FieldMatrix(
            [[RatFunc.from_json(a) for a in row] for row in obj["entries"]]
        )
        if m.rows != obj["rows"] or m.cols != obj["cols"]:
            raise ValueError("matrix JSON shape mismatch")
        return m


def _dot(row, vec):
    t = _ZERO
    for a, b in zip(row, vec):
        if not (a.is_zero() or b.is_zero()):
            t = t + a * b
    return t


def _rref(m):
    """In-place reduced row echelon form; returns (nonzero rows, pivot cols)."""
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m[:r], pivots


class Subspace:
    """Subspace of Q(q)^n with a canonical reduced-echelon basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors=()):
        if ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        rows = []
        for v in vectors:
            v = [_rf(x) for x in v]
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
            rows.append(v)
        reduced, _ = _rref(rows)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(row) for row in reduced)

    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n)

    @staticmethod
    def full(n: int) -> "Subspace":
        return Subspace(n, FieldMatrix.identity(n).entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains_vector(self, vec) -> bool:
        v = [_rf(x) for x in vec]
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        for row in self.basis:
            p = next(i for i, x in enumerate(row) if not x.is_zero())
            if not v[p].is_zero():
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return all(x.is_zero() for x in v)

    def contains(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        return all(self.contains_vector(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        # columns of [B_U | B_W]; kernel vectors give U-side coefficients
        k, m = self.dim, other.dim
        stacked = FieldMatrix(
            [
                [self.basis[j][i] for j in range(k)]
                + [other.basis[j][i] for j in range(m)]
                for i in range(self.ambient_dim)
            ]
        )
        ker = kernel(stacked)
        vecs = []
        for coeffs in ker.basis:
            v = [_ZERO] * self.ambient_dim
            for j in range(k):
                c = coeffs[j]
                if c.is_zero():
                    continue
                v = [x + c * y for x, y in zip(v, self.basis[j])]
            vecs.append(v)
        return Subspace(self.ambient_dim, vecs)

    def _same_ambient(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "basis": [[x.to_json() for x in row] for row in self.basis],
        }

    @staticmethod
    def from_json(obj) -> "Subspace":
        return Subspace(
            obj["ambient_dim"],
            [[RatFunc.from_json(x) for x in row] for row in obj["basis"]],
        )


def kernel(a: FieldMatrix) -> Subspace:
    """Canonical basis of the null space of a."""
    reduced, pivots = _rref([list(r) for r in a.entries])
    piv_set = set(pivots)
    free = [c for c in range(a.cols) if c not in piv_set]
    vecs = []
    for f in free:
        v = [_ZERO] * a.cols
        v[f] = _ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        vecs.append(v)
    return Subspace(a.cols, vecs)


def eigenspace(a: FieldMatrix, theta: RatFunc) -> Subspace:
    """Kernel of a - theta*I."""
    if a.rows != a.cols:
        raise ValueError("eigenspace of a non-square matrix")
    theta = _rf(theta)
    shifted = FieldMatrix(
        [
            [
                a.entries[i][j] - theta if i == j else a.entries[i][j]
                for j in range(a.cols)
            ]
            for i in range(a.rows)
        ]
    )
    return kernel(shifted)


@dataclass(frozen=True)
class SemisimpleResult:
    ok: bool
    spaces: tuple
    dim_sum: int


def check_semisimple(a: FieldMatrix, eigs) -> SemisimpleResult:
    """Eigenspace decomposition for the listed eigenvalues, if they exhaust."""
    eigs = [_rf(t) for t in eigs]
    if len(set(eigs)) != len(eigs):
        raise ValueError("eigenvalues must be pairwise distinct")
    spaces = tuple(eigenspace(a, t) for t in eigs)
    dim_sum = sum(s.dim for s in spaces)
    return SemisimpleResult(dim_sum == a.rows, spaces, dim_sum)


def solve_linear(a: FieldMatrix, b):
    """Solve a x = b exactly: (particular solution or None, kernel subspace)."""
    b = [_rf(x) for x in b]
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    aug = [list(row) + [b[i]] for i, row in enumerate(a.entries)]
    reduced, pivots = _rref(aug)
    if a.cols in pivots:
        return None, kernel(a)
    x = [_ZERO] * a.cols
    for r, p in enumerate(pivots):
        x[p] = reduced[r][a.cols]
    return x, kernel(a)


def _vec_of(m: FieldMatrix):
    return [x for row in m.entries for x in row]


def _unvec(v, n: int) -> FieldMatrix:
    return FieldMatrix([v[i * n : (i + 1) * n] for i in range(n)])


def _normalize_first_entry(m: FieldMatrix) -> FieldMatrix:
    for row in m.entries:
        for x in row:
            if not x.is_zero():
                return m.scale(x.inverse())
    raise ValueError("cannot normalize the zero matrix")


def solve_intertwiner(as_, bs, retries: int = 32):
    """Invertible S with S*A_k = B_k*S for all k, or None if no solution.

    The solution space is refined one constraint at a time (for irreducible
    modules it is at most one-dimensional by Schur, so the invertibility
    search below terminates immediately in practice).  Raises
    IntertwinerSearchError if the space is nonzero but no invertible member
    shows up among basis vectors, pairwise sums, and `retries` random
    small-integer combinations.
    """
    as_, bs = list(as_), list(bs)
    if len(as_) != len(bs) or not as_:
        raise ValueError("generator lists must be equal-length and nonempty")
    n = as_[0].rows
    for m in as_ + bs:
        if m.rows != n or m.cols != n:
            raise ValueError("all matrices must be square of equal size")

    basis = None  # list of candidate S matrices spanning the solution space
    for a, b in zip(as_, bs):
        if basis is None:
            c = _constraint_matrix(a, b)
            basis = [_unvec(list(v), n) for v in kernel(c).basis]
        else:
            images = [_vec_of(s * a - b * s) for s in basis]
            if not images:
                break
            coeff_mat = FieldMatrix(
                [[images[j][i] for j in range(len(images))] for i in range(n * n)]
            )
            combos = kernel(coeff_mat).basis
            new_basis = []
            for combo in combos:
                s = FieldMatrix.zeros(n, n)
                for j, cj in enumerate(combo):
                    if not cj.is_zero():
                        s = s + basis[j].scale(cj)
                new_basis.append(s)
            basis = new_basis
        if not basis:
            return None

    for s in basis:
        if s.rank() == n:
            return _normalize_first_entry(s)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = basis[i] + basis[j]
            if s.rank() == n:
                return _normalize_first_entry(s)
    rng = random.Random(0xB0C5)
    for _ in range(retries):
        s = FieldMatrix.zeros(n, n)
        for b_mat in basis:
            s = s + b_mat.scale(rng.randint(-3, 3))
        if not s.is_zero() and s.rank() == n:
            return _normalize_first_entry(s)
    raise IntertwinerSearchError(
        f"solution space has dimension {len(basis)} but no invertible member found"
    )


def _constraint_matrix(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    """Rows of the linear system vec(S*A - B*S) = 0 in the unknowns vec(S)."""
    n = a.rows
    rows = []
    for i in range(n):
        for l in range(n):
            row = [_ZERO] * (n * n)
            for j in range(n):
                row[i * n + j] = row[i * n + j] + a.entries[j][l]
                row[j * n + l] = row[j * n + l] - b.entries[i][j]
            rows.append(row)
    return FieldMatrix(rows)


def burnside_irreducible(as_) -> bool:
    """True iff the unital algebra generated by the matrices is all of End(V).

    Closes the span of words under left-multiplication by each generator,
    starting from the identity word.  A full span after specializing q at a
    rational point already certifies a full span over Q(q) (ranks only drop
    under specialization), so that cheap exact check runs first; the
    symbolic closure is the fallback that decides the negative case.
    """
    as_ = list(as_)
    if not as_:
        raise ValueError("need at least one matrix")
    n = as_[0].rows
    for m in as_:
        if m.rows != n or m.cols != n:
            raise ValueError("all matrices must be square of equal size")
    for q0 in (Fraction(7, 3), Fraction(23, 11)):
        try:
            mats = [
                [[x.evaluate(q0) for x in row] for row in m.entries] for m in as_
            ]
        except ArithmeticError:
            continue
        if _burnside_rational(mats, n):
            return True
    return _burnside_symbolic(as_, n)


def _burnside_rational(mats, n: int) -> bool:
    full = n * n
    echelon: dict[int, list[Fraction]] = {}

    def try_add(vec) -> bool:
        for p in sorted(echelon):
            if vec[p]:
                f = vec[p]
                row = echelon[p]
                vec = [x - f * y for x, y in zip(vec, row)]
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            return False
        inv = 1 / vec[piv]
        vec = [x * inv for x in vec]
        for p, row in echelon.items():
            if row[piv]:
                f = row[piv]
                echelon[p] = [x - f * y for x, y in zip(row, vec)]
        echelon[piv] = vec
        return True

    def matmul(a, b):
        bt = list(zip(*b))
        return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]

    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    worklist = [ident]
    try_add([x for row in ident for x in row])
    idx = 0
    while idx < len(worklist):
        m = worklist[idx]
        idx += 1
        for a in mats:
            prod = matmul(a, m)
            if try_add([x for row in prod for x in row]):
                if len(echelon) == full:
                    return True
                worklist.append(prod)
    return len(echelon) == full


def _burnside_symbolic(as_, n: int) -> bool:
    full = n * n
    echelon: dict[int, list[RatFunc]] = {}

    def try_add(vec) -> bool:
        for p in sorted(echelon):
            if not vec[p].is_zero():
                f = vec[p]
                row = echelon[p]
                vec = [x - f * y for x, y in zip(vec, row)]
        piv = next((i for i, x in enumerate(vec) if not x.is_zero()), None)
        if piv is None:
            return False
        inv = vec[piv].inverse()
        vec = [x * inv for x in vec]
        for p, row in echelon.items():
            if not row[piv].is_zero():
                f = row[piv]
                echelon[p] = [x - f * y for x, y in zip(row, vec)]
        echelon[piv] = vec
        return True

    worklist = [FieldMatrix.identity(n)]
    try_add(_vec_of(worklist[0]))
    idx = 0
    while idx < len(worklist):
        if len(worklist) > 2 * full + 1:
            raise RuntimeError("Burnside closure failed to stabilize")
        m = worklist[idx]
        idx += 1
        for a in as_:
            prod = a * m
            if try_add(_vec_of(prod)):
                if len(echelon) == full:
                    return True
                worklist.append(prod)
    return len(echelon) == full
