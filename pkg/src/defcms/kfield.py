"""Exact arithmetic in Q(k), rational functions in one formal parameter k.

A value is stored as a reduced pair of integer polynomials (num, den) with
the integer content removed and a positive leading coefficient on den, so
two values are equal exactly when their representations are equal.
"""

import re
from fractions import Fraction

from flint import fmpq, fmpq_poly, fmpz_poly

__all__ = [
    "RatK",
    "K",
    "ONE",
    "ZERO",
    "as_ratk",
    "ratk_normalize",
    "ratk_eval",
    "parse_ratk",
    "format_intpoly",
    "parse_intpoly",
]


def _poly(value) -> fmpz_poly:
    if isinstance(value, fmpz_poly):
        return value
    if isinstance(value, int):
        return fmpz_poly([value])
    return fmpz_poly(list(value))


class RatK:
    """Element of Q(k). Immutable; use the module helpers to build values."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = _poly(num)
        den = _poly(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero in Q(k)")
        self.num, self.den = _reduce(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: fmpz_poly, den: fmpz_poly) -> "RatK":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_fraction(cls, q) -> "RatK":
        q = Fraction(q)
        return cls._raw(fmpz_poly([q.numerator]), fmpz_poly([q.denominator]))

    @classmethod
    def from_fmpq_poly(cls, p: fmpq_poly) -> "RatK":
        return cls(p.numer(), fmpz_poly([p.denom()]))

    @classmethod
    def k_power(cls, e: int) -> "RatK":
        """k**e for any integer e."""
        mono = fmpz_poly([0] * abs(e) + [1])
        if e >= 0:
            return cls._raw(mono, _ONE_P)
        return cls._raw(_ONE_P, mono)

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant: %s" % self)
        return Fraction(int(self.num[0]), int(self.den[0]))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return RatK._raw(self.num + other.num, _ONE_P)
        if self.den == other.den:
            return RatK(self.num + other.num, self.den)
        return RatK(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatK._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return RatK._raw(self.num * other.num, _ONE_P)
        return RatK(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatK":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(k)")
        return RatK(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(k)")
        return RatK(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return RatK._raw(self.num ** e, self.den ** e)

    # comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        if self._hash is None:
            if self.num.degree() <= 0 and self.den.degree() == 0:
                # agree with int/Fraction hashing for constants
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((tuple(int(c) for c in self.num.coeffs()),
                                   tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # evaluation / text ----------------------------------------------------
    def __call__(self, k0):
        return ratk_eval(self, k0)

    def to_text(self) -> str:
        """Canonical form "(num)/(den)"."""
        return "(%s)/(%s)" % (format_intpoly(self.num), format_intpoly(self.den))

    def __str__(self):
        if self.den.is_one():
            return format_intpoly(self.num)
        return self.to_text()

    def __repr__(self):
        return "RatK(%r)" % self.to_text()

    def __reduce__(self):
        return (parse_ratk, (self.to_text(),))


_ONE_P = fmpz_poly([1])


def _reduce(num: fmpz_poly, den: fmpz_poly):
    if num.is_zero():
        return num, _ONE_P
    if den.is_one():
        return num, den
    g = num.gcd(den)  # includes the integer content gcd
    if not g.is_one():
        num = num / g
        den = den / g
    if den.leading_coefficient() < 0:
        num = -num
        den = -den
    return num, den


def _coerce(x):
    if isinstance(x, RatK):
        return x
    if isinstance(x, int):
        return RatK._raw(fmpz_poly([x]), _ONE_P)
    if isinstance(x, Fraction):
        return RatK.from_fraction(x)
    if isinstance(x, fmpq):
        return RatK.from_fraction(Fraction(int(x.p), int(x.q)))
    return NotImplemented


def as_ratk(x) -> RatK:
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError("cannot convert %r to RatK" % (x,))
    return r


def ratk_normalize(num, den) -> RatK:
    return RatK(num, den)


K = RatK._raw(fmpz_poly([0, 1]), _ONE_P)
ONE = RatK._raw(fmpz_poly([1]), _ONE_P)
ZERO = RatK._raw(fmpz_poly([]), _ONE_P)


def _horner(p: fmpz_poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * x + int(c)
    return acc


def ratk_eval(a: RatK, k0) -> Fraction:
    """Exact value of a at k = k0 (a rational number)."""
    k0 = Fraction(k0)
    d = _horner(a.den, k0)
    if d == 0:
        raise ZeroDivisionError("pole of %s at k = %s" % (a, k0))
    return _horner(a.num, k0) / d


# text ---------------------------------------------------------------------

def format_intpoly(p: fmpz_poly, var: str = "k") -> str:
    coeffs = [int(c) for c in p.coeffs()]
    if not coeffs:
        return "0"
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else "%s^%d" % (var, e)
            body = mono if a == 1 else "%d*%s" % (a, mono)
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += " %s %s" % (sign, body)
    return out


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(\*?)\s*(k(?:\s*\^\s*(\d+))?)?")


def parse_intpoly(text: str, var: str = "k") -> fmpz_poly:
    """Parse an integer polynomial such as "3*k^2 - k + 1"."""
    s = text.replace(var, "k").strip()
    if not s:
        raise ValueError("empty polynomial")
    coeffs = {}
    pos = 0
    first = True
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos >= len(s):
            break
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError("cannot parse polynomial %r" % text)
        sign, digits, star, mono, exp = m.groups()
        if not first and not sign:
            raise ValueError("missing operator in %r" % text)
        if not digits and not mono:
            raise ValueError("cannot parse polynomial %r" % text)
        if star and not (digits and mono):
            raise ValueError("misplaced '*' in %r" % text)
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        e = 0
        if mono:
            e = int(exp) if exp is not None else 1
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
        first = False
    deg = max(coeffs)
    return fmpz_poly([coeffs.get(i, 0) for i in range(deg + 1)])


def _split_parens(s: str):
    """Split "(A)/(B)" into (A, B); "(A)" or "A" gives (A, None)."""
    s = s.strip()
    if not s.startswith("("):
        if "/" in s:
            a, b = s.split("/", 1)
            return a, b
        return s, None
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                head = s[1:i]
                rest = s[i + 1:].strip()
                if not rest:
                    return head, None
                if not rest.startswith("/"):
                    raise ValueError("cannot parse %r" % s)
                rest = rest[1:].strip()
                if rest.startswith("(") and rest.endswith(")"):
                    rest = rest[1:-1]
                return head, rest
    raise ValueError("unbalanced parentheses in %r" % s)


def parse_ratk(text: str) -> RatK:
    """Inverse of RatK.to_text / str: accepts "(num)/(den)", "(num)" or "num"."""
    num, den = _split_parens(text)
    n = parse_intpoly(num)
    d = parse_intpoly(den) if den is not None else _ONE_P
    return RatK(n, d)
