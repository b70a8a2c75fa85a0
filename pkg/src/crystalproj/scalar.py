"""Exact arithmetic in the real number field Q(sqrt2, sqrt3).

Every element is ``(a + b*sqrt2 + c*sqrt3 + d*sqrt6) / den`` with integer
numerators and a positive common denominator.  The public components
``a``, ``b``, ``c``, ``d`` are exposed as reduced :class:`fractions.Fraction`.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

__all__ = ["AlgebraicScalar", "S", "parse_scalar", "ZERO", "ONE", "SQRT2", "SQRT3", "SQRT6"]

_START_BITS = 64
_RADICANDS = (2, 3, 6)


def _sqrt_bounds(n: int, bits: int) -> tuple[int, int]:
    # floor and ceil of sqrt(n) * 2**bits
    lo = math.isqrt(n << (2 * bits))
    return lo, lo + 1


@total_ordering
class AlgebraicScalar:
    """Immutable element of Q(sqrt2, sqrt3)."""

    __slots__ = ("_n", "_den", "_hash")

    def __init__(self, a=0, b=0, c=0, d=0):
        fa, fb, fc, fd = (Fraction(x) for x in (a, b, c, d))
        den = math.lcm(fa.denominator, fb.denominator, fc.denominator, fd.denominator)
        self._set(
            (
                fa.numerator * (den // fa.denominator),
                fb.numerator * (den // fb.denominator),
                fc.numerator * (den // fc.denominator),
                fd.numerator * (den // fd.denominator),
            ),
            den,
        )

    def _set(self, n, den):
        g = math.gcd(n[0], n[1], n[2], n[3], den)
        if g > 1:
            n = (n[0] // g, n[1] // g, n[2] // g, n[3] // g)
            den //= g
        self._n = n
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, n, den):
        obj = cls.__new__(cls)
        if den < 0:
            n = (-n[0], -n[1], -n[2], -n[3])
            den = -den
        obj._set(n, den)
        return obj

    @classmethod
    def coerce(cls, x) -> AlgebraicScalar:
        if isinstance(x, AlgebraicScalar):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, (int, Rational)):
            return cls(x)
        if isinstance(x, float):
            raise TypeError("binary floats are not reconstructed into the field")
        raise TypeError(f"cannot convert {type(x).__name__} to AlgebraicScalar")

    # components ---------------------------------------------------------
    @property
    def a(self) -> Fraction:
        return Fraction(self._n[0], self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._n[1], self._den)

    @property
    def c(self) -> Fraction:
        return Fraction(self._n[2], self._den)

    @property
    def d(self) -> Fraction:
        return Fraction(self._n[3], self._den)

    @property
    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return not any(self._n)

    def is_rational(self) -> bool:
        n = self._n
        return n[1] == 0 and n[2] == 0 and n[3] == 0

    def is_integer(self) -> bool:
        return self.is_rational() and self._den == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self._n[0], self._den)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            y = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        d1, d2 = self._den, y._den
        if d1 == d2:
            n = tuple(p + q for p, q in zip(self._n, y._n))
            return AlgebraicScalar._raw(n, d1)
        n = tuple(p * d2 + q * d1 for p, q in zip(self._n, y._n))
        return AlgebraicScalar._raw(n, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        n = self._n
        return AlgebraicScalar._raw((-n[0], -n[1], -n[2], -n[3]), self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            y = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other):
        try:
            y = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return y + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            n = self._n
            return AlgebraicScalar._raw(
                (n[0] * other, n[1] * other, n[2] * other, n[3] * other), self._den
            )
        try:
            y = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        a1, b1, c1, d1 = self._n
        a2, b2, c2, d2 = y._n
        n = (
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )
        return AlgebraicScalar._raw(n, self._den * y._den)

    __rmul__ = __mul__

    def _conj(self, flip2: bool, flip3: bool) -> AlgebraicScalar:
        a, b, c, d = self._n
        if flip2:
            b, d = -b, -d
        if flip3:
            c, d = -c, -d
        return AlgebraicScalar._raw((a, b, c, d), self._den)

    def norm(self) -> Fraction:
        """Field norm: product of the four Galois conjugates."""
        p = self * self._conj(False, True)
        return (p * p._conj(True, False)).as_fraction()

    def invert(self) -> AlgebraicScalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt2, sqrt3)")
        # x * x3 lies in Q(sqrt2); multiplying by its sqrt2-conjugate gives a rational
        x3 = self._conj(False, True)
        p = self * x3
        p2 = p._conj(True, False)
        q = (p * p2).as_fraction()
        return x3 * p2 * AlgebraicScalar(1 / q)

    def __truediv__(self, other):
        try:
            y = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * y.invert()

    def __rtruediv__(self, other):
        try:
            y = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return y * self.invert()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # order --------------------------------------------------------------
    def _enclosure(self, bits: int) -> tuple[int, int]:
        """Integer bounds on numerator * 2**bits."""
        a, b, c, d = self._n
        lo = hi = a << bits
        for coef, r in zip((b, c, d), _RADICANDS):
            if coef == 0:
                continue
            s_lo, s_hi = _sqrt_bounds(r, bits)
            if coef > 0:
                lo += coef * s_lo
                hi += coef * s_hi
            else:
                lo += coef * s_hi
                hi += coef * s_lo
        return lo, hi

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self._n[0] > 0 else -1
        bits = _START_BITS
        while True:
            lo, hi = self._enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def __eq__(self, other):
        if isinstance(other, AlgebraicScalar):
            return self._den == other._den and self._n == other._n
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self._n[0], self._den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._n[0], self._den))
            else:
                self._hash = hash((self._n, self._den))
        return self._hash

    def __lt__(self, other):
        try:
            y = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - y).sign() < 0

    def __bool__(self):
        return not self.is_zero()

    # conversion ---------------------------------------------------------
    def __float__(self) -> float:
        if self.is_rational():
            return self._n[0] / self._den
        bits = _START_BITS
        while True:
            lo, hi = self._enclosure(bits)
            if (lo > 0 or hi < 0) and (hi - lo) << 62 <= min(abs(lo), abs(hi)):
                return float(Fraction(lo + hi, self._den << (bits + 1)))
            bits *= 2

    def to_float(self) -> float:
        return float(self)

    def floor(self) -> int:
        f = math.floor(float(self))
        while self < f:
            f -= 1
        while self >= f + 1:
            f += 1
        return f

    def sqrt(self) -> AlgebraicScalar | None:
        """Square root inside the field, or ``None`` when it leaves the field."""
        return _field_sqrt(self)

    def __str__(self) -> str:
        terms = []
        for coef, name in zip(self.components, ("", "r2", "r3", "r6")):
            if coef == 0:
                continue
            mag = abs(coef)
            if not name:
                body = str(mag)
            elif mag == 1:
                body = name
            else:
                body = f"{mag}*{name}"
            if not terms:
                terms.append(body if coef > 0 else "-" + body)
            else:
                terms.append(("+ " if coef > 0 else "- ") + body)
        return " ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"AlgebraicScalar('{self}')"

    def __reduce__(self):
        return (AlgebraicScalar, (self.a, self.b, self.c, self.d))


def S(x) -> AlgebraicScalar:
    """Shorthand coercion: ``S("1/2*r3")``, ``S(2)``."""
    return AlgebraicScalar.coerce(x)


ZERO = AlgebraicScalar(0)
ONE = AlgebraicScalar(1)
SQRT2 = AlgebraicScalar(0, 1)
SQRT3 = AlgebraicScalar(0, 0, 1)
SQRT6 = AlgebraicScalar(0, 0, 0, 1)
_NAMES = {"r2": SQRT2, "r3": SQRT3, "r6": SQRT6}


def _rational_sqrt(q: Fraction) -> AlgebraicScalar | None:
    if q < 0:
        return None
    if q == 0:
        return ZERO
    for k, unit in ((1, ONE), (2, SQRT2), (3, SQRT3), (6, SQRT6)):
        t = q / k
        p, r = math.isqrt(t.numerator), math.isqrt(t.denominator)
        if p * p == t.numerator and r * r == t.denominator:
            return unit * Fraction(p, r)
    return None


def _split3(x: AlgebraicScalar) -> tuple[AlgebraicScalar, AlgebraicScalar]:
    # x = p + q*sqrt3 with p, q in Q(sqrt2)
    return AlgebraicScalar(x.a, x.b), AlgebraicScalar(x.c, x.d)


def _sqrt_q2_plain(x: AlgebraicScalar) -> AlgebraicScalar | None:
    """Root of x in Q(sqrt2) lying in Q(sqrt2) (any field root if x is rational)."""
    a, b = x.a, x.b
    if b == 0:
        return _rational_sqrt(a)
    # (s + t sqrt2)^2 = s^2 + 2t^2 + 2st sqrt2
    disc = _rational_sqrt(a * a - 2 * b * b)
    if disc is None or not disc.is_rational():
        return None
    for sgn in (1, -1):
        s = _rational_sqrt((a + sgn * disc.as_fraction()) / 2)
        if s is None or not s.is_rational() or s == 0:
            continue
        cand = AlgebraicScalar(s.as_fraction(), b / (2 * s.as_fraction()))
        if cand * cand == x:
            return abs(cand)
    return None


def _sqrt_q2(x: AlgebraicScalar) -> AlgebraicScalar | None:
    root = _sqrt_q2_plain(x)
    if root is None:
        # roots of the form sqrt3 * (s + t sqrt2)
        root = _sqrt_q2_plain(x / 3)
        if root is not None:
            root = root * SQRT3
    return root


def _field_sqrt(x: AlgebraicScalar) -> AlgebraicScalar | None:
    if x.sign() < 0:
        return None
    if x.is_zero():
        return ZERO
    p, q = _split3(x)
    if q.is_zero():
        return _sqrt_q2(p)
    # (u + w sqrt3)^2 = u^2 + 3w^2 + 2uw sqrt3 with u, w in Q(sqrt2)
    disc = _sqrt_q2_plain(p * p - q * q * 3)
    if disc is None:
        return None
    for sgn in (1, -1):
        u = _sqrt_q2_plain((p + disc * sgn) / 2)
        if u is None or u.is_zero():
            continue
        cand = u + q / (u * 2) * SQRT3
        if cand * cand == x:
            return abs(cand)
    return None


# parsing ----------------------------------------------------------------

_BINOPS = {
    ast.Add: lambda x, y: x + y,
    ast.Sub: lambda x, y: x - y,
    ast.Mult: lambda x, y: x * y,
    ast.Div: lambda x, y: x / y,
}


def _eval_node(node) -> AlgebraicScalar:
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return AlgebraicScalar(node.value)
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
        exponent = _eval_node(node.right)
        if not exponent.is_integer():
            raise ValueError("only integer exponents are supported")
        return _eval_node(node.left) ** int(exponent.as_fraction())
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        value = _eval_node(node.operand)
        return -value if isinstance(node.op, ast.USub) else value
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id == "sqrt"
        and len(node.args) == 1
        and not node.keywords
    ):
        root = _eval_node(node.args[0]).sqrt()
        if root is None:
            raise ValueError("square root leaves Q(sqrt2, sqrt3)")
        return root
    raise ValueError(f"unsupported syntax in scalar expression: {ast.dump(node)}")


def parse_scalar(text: str) -> AlgebraicScalar:
    """Parse expressions such as ``"1/2 + 3/4*r2 - r6/12"`` or ``"3/sqrt(6)"``."""
    source = text.strip().replace("√", "sqrt").replace("^", "**")
    if not source:
        raise ValueError("empty scalar expression")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"malformed scalar expression {text!r}") from exc
    return _eval_node(tree)
