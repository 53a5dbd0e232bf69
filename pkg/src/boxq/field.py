"""Exact scalar arithmetic: the rational-function field Q(q).

Every scalar in the workbench -- quantum integers, evaluation parameters,
eigenvalues, traces -- is a RatFunc: a fraction of polynomials in q with
rational coefficients, kept in canonical form (reduced, monic denominator).
Canonical form makes `==` mathematical equality, so every theorem check
downstream is an exact comparison rather than a tolerance test.
"""

from __future__ import annotations

import math
from fractions import Fraction


class PoleError(ArithmeticError):
    """Evaluation at a rational point where the denominator vanishes."""


class LiteralParseError(ValueError):
    """Malformed rational-function literal."""


def _fr(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class Poly:
    """Sparse polynomial in q over Q, stored as integer coefficients over a
    common positive denominator with gcd(content, den) = 1.  Immutable."""

    __slots__ = ("ic", "den")

    def __init__(self, coeffs=()):
        acc: dict[int, Fraction] = {}
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        for e, v in items:
            if e < 0:
                raise ValueError("Poly exponents must be non-negative")
            v = _fr(v)
            if v:
                acc[e] = acc.get(e, Fraction(0)) + v
        den = 1
        for v in acc.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        ic = {}
        for e, v in acc.items():
            if v:
                ic[e] = int(v * den)
        self.ic, self.den = _poly_normalize(ic, den)

    @classmethod
    def _make(cls, ic: dict, den: int) -> "Poly":
        out = cls.__new__(cls)
        out.ic, out.den = _poly_normalize(ic, den)
        return out

    @staticmethod
    def const(v) -> "Poly":
        return Poly({0: _fr(v)})

    @staticmethod
    def monomial(e: int, v=1) -> "Poly":
        return Poly({e: _fr(v)})

    def is_zero(self) -> bool:
        return not self.ic

    def n_terms(self) -> int:
        return len(self.ic)

    def degree(self):
        """Degree, or None for the zero polynomial."""
        return max(self.ic) if self.ic else None

    def min_exp(self) -> int:
        if not self.ic:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self.ic)

    def lc(self) -> Fraction:
        return Fraction(self.ic[max(self.ic)], self.den)

    def is_monomial(self) -> bool:
        return len(self.ic) == 1

    def terms(self):
        """Term list (exponent, coefficient), highest exponent first."""
        return tuple(
            (e, Fraction(v, self.den)) for e, v in sorted(self.ic.items(), reverse=True)
        )

    def __add__(self, other: "Poly") -> "Poly":
        if not other.ic:
            return self
        if not self.ic:
            return other
        if self.den == other.den:
            acc = dict(self.ic)
            for e, v in other.ic.items():
                w = acc.get(e, 0) + v
                if w:
                    acc[e] = w
                elif e in acc:
                    del acc[e]
            return Poly._make(acc, self.den)
        g = math.gcd(self.den, other.den)
        m1, m2 = other.den // g, self.den // g
        acc = {e: v * m1 for e, v in self.ic.items()}
        for e, v in other.ic.items():
            w = acc.get(e, 0) + v * m2
            if w:
                acc[e] = w
            elif e in acc:
                del acc[e]
        return Poly._make(acc, self.den * m1)

    def __neg__(self) -> "Poly":
        out = Poly.__new__(Poly)
        out.ic = {e: -v for e, v in self.ic.items()}
        out.den = self.den
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.ic or not other.ic:
            return _P_ZERO
        acc: dict[int, int] = {}
        for e1, v1 in self.ic.items():
            for e2, v2 in other.ic.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + v1 * v2
        return Poly._make(acc, self.den * other.den)

    def scale(self, v) -> "Poly":
        v = _fr(v)
        if not v:
            return _P_ZERO
        return Poly._make(
            {e: w * v.numerator for e, w in self.ic.items()}, self.den * v.denominator
        )

    def shift(self, k: int) -> "Poly":
        """Multiply by q^k (k may be negative if every exponent allows it)."""
        ic = {e + k: v for e, v in self.ic.items()}
        if any(e < 0 for e in ic):
            raise ValueError("shift would create negative exponents")
        out = Poly.__new__(Poly)
        out.ic, out.den = ic, self.den
        return out

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = {e: Fraction(v, self.den) for e, v in self.ic.items()}
        quo: dict[int, Fraction] = {}
        db = other.degree()
        lb = other.lc()
        bt = other.terms()
        while rem:
            dr = max(rem)
            if dr < db:
                break
            f = rem[dr] / lb
            quo[dr - db] = f
            for e, v in bt:
                k = e + dr - db
                w = rem.get(k, Fraction(0)) - f * v
                if w:
                    rem[k] = w
                elif k in rem:
                    del rem[k]
        return Poly(quo), Poly(rem)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.ic[max(self.ic)]
        if lead == self.den:
            return self
        return Poly._make(dict(self.ic), lead)

    def __call__(self, x0) -> Fraction:
        x0 = _fr(x0)
        total = 0
        for e, v in self.ic.items():
            total += v * x0**e
        return Fraction(total) / self.den

    def __eq__(self, other):
        return (
            isinstance(other, Poly) and self.den == other.den and self.ic == other.ic
        )

    def __hash__(self):
        return hash((self.den, tuple(sorted(self.ic.items()))))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.ic:
            return "0"
        parts = []
        for e, v in self.terms():
            if e == 0:
                mono = str(v)
            else:
                var = "q" if e == 1 else f"q^{e}"
                if v == 1:
                    mono = var
                elif v == -1:
                    mono = f"-{var}"
                else:
                    mono = f"{v}*{var}"
            parts.append(mono)
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return s


def _poly_normalize(ic: dict, den: int):
    ic = {e: v for e, v in ic.items() if v}
    if not ic:
        return ic, 1
    if den < 0:
        den = -den
        ic = {e: -v for e, v in ic.items()}
    if den != 1:
        g = den
        for v in ic.values():
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            den //= g
            ic = {e: v // g for e, v in ic.items()}
    return ic, den


_P_ZERO = Poly()
_P_ONE = Poly.const(1)


def _int_primitive(p: Poly) -> dict:
    """Integer-coefficient primitive version of p (content stripped)."""
    g = 0
    for v in p.ic.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    if g > 1:
        return {e: v // g for e, v in p.ic.items()}
    return dict(p.ic)


def _int_prem(a: dict, b: dict) -> dict:
    """Pseudo-remainder of a by b over Z (b nonzero)."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r:
        dr = max(r)
        if dr < db:
            break
        lr = r[dr]
        new = {e: v * lb for e, v in r.items()}
        del new[dr]
        for e, v in b.items():
            if e == db:
                continue
            k = e + dr - db
            w = new.get(k, 0) - lr * v
            if w:
                new[k] = w
            elif k in new:
                del new[k]
        r = new
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via the primitive pseudo-remainder sequence over Z."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    ia, ib = _int_primitive(a), _int_primitive(b)
    if max(ia) < max(ib):
        ia, ib = ib, ia
    while ib:
        r = _int_prem(ia, ib)
        if r:
            g = 0
            for v in r.values():
                g = math.gcd(g, v)
            if g > 1:
                r = {e: v // g for e, v in r.items()}
        ia, ib = ib, r
    return Poly._make(ia, ia[max(ia)])


def poly_divexact(a: Poly, b: Poly) -> Poly:
    quo, rem = a.divmod(b)
    if not rem.is_zero():
        raise ValueError("inexact polynomial division")
    return quo


class RatFunc:
    """Element of Q(q) in canonical form: reduced, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = Poly.const(num)
        if den is None:
            den = _P_ONE
        elif isinstance(den, (int, Fraction)):
            den = Poly.const(den)
        self.num, self.den = _canonical(num, den)

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        out = cls.__new__(cls)
        out.num, out.den = num, den
        return out

    @staticmethod
    def zero() -> "RatFunc":
        return _ZERO

    @staticmethod
    def one() -> "RatFunc":
        return _ONE

    @staticmethod
    def gen() -> "RatFunc":
        """The indeterminate q itself."""
        return _Q

    @staticmethod
    def from_fraction(v) -> "RatFunc":
        return RatFunc._raw(Poly.const(v), _P_ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == _P_ONE and self.den == _P_ONE

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.from_fraction(other)
        if isinstance(other, Poly):
            return RatFunc(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den is _P_ONE or self.den == _P_ONE:
            if other.den is _P_ONE or other.den == _P_ONE:
                return RatFunc._raw(self.num + other.num, _P_ONE)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return _ZERO
        if self.den == _P_ONE and other.den == _P_ONE:
            return RatFunc._raw(self.num * other.num, _P_ONE)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return RatFunc(self.den, self.num)

    def __pow__(self, n: int) -> "RatFunc":
        if n == 0:
            return _ONE
        base = self if n > 0 else self.inverse()
        n = abs(n)
        out = _ONE
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def evaluate(self, q0) -> Fraction:
        """Exact substitution q := q0 (a rational number)."""
        q0 = _fr(q0)
        dv = self.den(q0)
        if dv == 0:
            raise PoleError(f"pole at q = {q0}")
        return self.num(q0) / dv

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.from_fraction(other)
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num.terms(), self.den.terms()))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        num = str(self.num)
        if self.den == _P_ONE:
            return num
        if self.num.n_terms() > 1:
            num = f"({num})"
        den = str(self.den)
        if self.den.n_terms() > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def to_json(self) -> dict:
        return {"num": _terms_json(self.num), "den": _terms_json(self.den)}

    @staticmethod
    def from_json(obj) -> "RatFunc":
        return RatFunc(_terms_from_json(obj["num"]), _terms_from_json(obj["den"]))


def _canonical(num: Poly, den: Poly):
    if den.is_zero():
        raise ZeroDivisionError("denominator is the zero polynomial")
    if num.is_zero():
        return _P_ZERO, _P_ONE
    s = min(num.min_exp(), den.min_exp())
    if s:
        num, den = num.shift(-s), den.shift(-s)
    dd = den.degree()
    if dd == 0:
        c = den.lc()
        return (num if c == 1 else num.scale(1 / c)), _P_ONE
    if den.is_monomial():
        # common q-power already stripped, so gcd(num, q^dd) = 1
        c = den.lc()
        return (num if c == 1 else num.scale(1 / c)), Poly.monomial(dd)
    if num.degree() > 0:
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num, den = poly_divexact(num, g), poly_divexact(den, g)
    c = den.lc()
    if c != 1:
        num, den = num.scale(1 / c), den.scale(1 / c)
    return num, den


_ZERO = RatFunc._raw(_P_ZERO, _P_ONE)
_ONE = RatFunc._raw(_P_ONE, _P_ONE)
_Q = RatFunc._raw(Poly.monomial(1), _P_ONE)


def canonicalize(num: Poly, den: Poly) -> RatFunc:
    """Unique reduced monic-denominator form of num/den."""
    return RatFunc(num, den)


def q_int(n: int) -> RatFunc:
    """Quantum integer [n]_q = (q^n - q^-n)/(q - q^-1)."""
    if n == 0:
        return _ZERO
    sign = 1 if n > 0 else -1
    m = abs(n)
    # (q^m - q^-m)/(q - q^-1) = (q^{2m} - 1)/(q^{m+1} - q^{m-1})
    num = Poly({2 * m: 1, 0: -1})
    den = Poly({m + 1: 1, m - 1: -1})
    val = RatFunc(num, den)
    return val if sign > 0 else -val


def q_factorial(n: int) -> RatFunc:
    """[n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1."""
    if n < 0:
        raise ValueError("q-factorial needs n >= 0")
    out = _ONE
    for i in range(2, n + 1):
        out = out * q_int(i)
    return out


def eval_at(f: RatFunc, q0) -> Fraction:
    """Exact value of f at the rational point q0 (pole -> PoleError)."""
    return f.evaluate(q0)


def _terms_json(p: Poly):
    return [[e, str(v)] for e, v in p.terms()]


def _terms_from_json(lst) -> Poly:
    return Poly([(int(e), Fraction(s)) for e, s in lst])


# ---------------------------------------------------------------------------
# Literal grammar for CLI / config input: integers, q, + - * / ^, parentheses.


def parse_ratfunc(text: str) -> RatFunc:
    toks = _tokenize(text)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else None

    def take(expect=None):
        t = peek()
        if t is None or (expect is not None and t != expect):
            raise LiteralParseError(f"unexpected end or token near {t!r} in {text!r}")
        pos[0] += 1
        return t

    def parse_expr():
        node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term():
        node = parse_unary()
        while peek() in ("*", "/"):
            op = take()
            rhs = parse_unary()
            node = node * rhs if op == "*" else node / rhs
        return node

    def parse_unary():
        if peek() == "-":
            take()
            return -parse_unary()
        return parse_power()

    def parse_power():
        base = parse_atom()
        if peek() == "^":
            take()
            sign = 1
            if peek() == "-":
                take()
                sign = -1
            t = take()
            if not isinstance(t, int):
                raise LiteralParseError(f"exponent must be an integer in {text!r}")
            return base ** (sign * t)
        return base

    def parse_atom():
        t = take()
        if t == "(":
            node = parse_expr()
            take(")")
            return node
        if t == "q":
            return _Q
        if isinstance(t, int):
            return RatFunc.from_fraction(t)
        raise LiteralParseError(f"unexpected token {t!r} in {text!r}")

    node = parse_expr()
    if pos[0] != len(toks):
        raise LiteralParseError(f"trailing input in {text!r}")
    return node


def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(int(text[i:j]))
            i = j
        elif ch == "q":
            toks.append("q")
            i += 1
        elif ch in "+-*/^()":
            toks.append(ch)
            i += 1
        else:
            raise LiteralParseError(f"bad character {ch!r} in {text!r}")
    if not toks:
        raise LiteralParseError("empty literal")
    return toks


# ---------------------------------------------------------------------------
# Polynomials in z with RatFunc coefficients (Drinfel'd polynomials live here).


class ZPoly:
    """Dense polynomial in z over Q(q), constant coefficient first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, RatFunc) else RatFunc.from_fraction(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero() -> "ZPoly":
        return ZPoly()

    @staticmethod
    def one() -> "ZPoly":
        return ZPoly((_ONE,))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def __add__(self, other: "ZPoly") -> "ZPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else _ZERO
            b = other.coeffs[i] if i < len(other.coeffs) else _ZERO
            out.append(a + b)
        return ZPoly(out)

    def __neg__(self) -> "ZPoly":
        return ZPoly([-c for c in self.coeffs])

    def __sub__(self, other: "ZPoly") -> "ZPoly":
        return self + (-other)

    def __mul__(self, other: "ZPoly") -> "ZPoly":
        if self.is_zero() or other.is_zero():
            return ZPoly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ZPoly(out)

    def scale(self, c: RatFunc) -> "ZPoly":
        return ZPoly([a * c for a in self.coeffs])

    def __call__(self, z0: RatFunc) -> RatFunc:
        total = _ZERO
        for c in reversed(self.coeffs):
            total = total * z0 + c
        return total

    def reversed_to(self, d: int) -> "ZPoly":
        """The polynomial z^d * f(1/z); requires deg f <= d."""
        if self.degree() is not None and self.degree() > d:
            raise ValueError("degree exceeds reversal bound")
        out = [_ZERO] * (d + 1)
        for i, c in enumerate(self.coeffs):
            out[d - i] = c
        return ZPoly(out)

    def __eq__(self, other):
        return isinstance(other, ZPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"ZPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c)
            if i == 0:
                parts.append(cs)
            else:
                zi = "z" if i == 1 else f"z^{i}"
                parts.append(zi if cs == "1" else f"({cs})*{zi}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"coeffs": [c.to_json() for c in self.coeffs]}

    @staticmethod
    def from_json(obj) -> "ZPoly":
        return ZPoly([RatFunc.from_json(c) for c in obj["coeffs"]])
