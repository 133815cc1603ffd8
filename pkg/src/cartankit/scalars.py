"""Exact Gaussian-rational arithmetic.

Every quantity in this package is a + b*i with a, b rational, kept exact.
Internally both parts are gmpy2.mpq; the string form "a/b+c/d*i" is the
canonical serialization and round-trips through parse_scalar.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

_TERM = r"[+-]?\d+(?:/\d+)?"
_RE_REAL = re.compile(rf"^({_TERM})$")
_RE_IMAG = re.compile(rf"^([+-]?)(?:(\d+(?:/\d+)?)\*)?i$")
_RE_BOTH = re.compile(rf"^({_TERM})([+-](?:\d+(?:/\d+)?\*)?i)$")


class Scalar:
    """An element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is mpq else mpq(re))
        object.__setattr__(self, "im", im if type(im) is mpq else mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- predicates ------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self):
        return not self

    def is_one(self):
        return self.re == 1 and not self.im

    def is_rational(self):
        return not self.im

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar(a * c, _MPQ_ZERO)
        return Scalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        c, d = other.re, other.im
        if not c and not d:
            raise ZeroDivisionError("division by zero scalar")
        if not d:
            return Scalar(self.re / c, self.im / c)
        n = c * c + d * d
        a, b = self.re, self.im
        return Scalar((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other.__truediv__(self)

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return Scalar(self.re, -self.im)

    def inverse(self):
        return ONE / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base, n = base * base, n >> 1
        return out

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Scalar, mpq)):
            other = _coerce(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    # -- formatting ------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


_MPQ_ZERO = mpq(0)


def _coerce(x):
    """Scalar view of x, or None when x belongs to a different algebra
    (binary operators then defer via NotImplemented)."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, mpq)):
        return Scalar(x)
    return None


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
MINUS_ONE = Scalar(-1)
HALF = Scalar(mpq(1, 2))


def sc(re, im=0):
    """Shorthand constructor accepting ints, mpq, or 'p/q' strings per part."""
    return Scalar(mpq(re), mpq(im))


def format_scalar(s: Scalar) -> str:
    """Canonical decimal-free form: '0', '3/7', '-i', '1/2-3*i', ...'"""
    a, b = s.re, s.im
    if not b:
        return str(a)
    if b == 1:
        ip = "i"
    elif b == -1:
        ip = "-i"
    elif b > 0:
        ip = f"{b}*i"
    else:
        ip = f"-{-b}*i"
    if not a:
        return ip
    if ip.startswith("-"):
        return f"{a}{ip}"
    return f"{a}+{ip}"


def parse_scalar(text: str) -> Scalar:
    """Inverse of format_scalar; accepts optional leading '+'."""
    s = text.strip().replace(" ", "")
    if s.startswith("+"):
        s = s[1:]
    m = _RE_REAL.match(s)
    if m:
        return Scalar(mpq(m.group(1)))
    m = _RE_IMAG.match(s)
    if m:
        mag = mpq(m.group(2)) if m.group(2) else mpq(1)
        return Scalar(0, -mag if m.group(1) == "-" else mag)
    m = _RE_BOTH.match(s)
    if m:
        rp = parse_scalar(m.group(1))
        ip = parse_scalar(m.group(2))
        return Scalar(rp.re, ip.im)
    raise ValueError(f"not a scalar literal: {text!r}")


def sort_key(s: Scalar):
    """Total order on Q(i) (real part, then imaginary) for determinism."""
    return (s.re, s.im)


def exact_sqrt(s: Scalar):
    """Return t with t*t == s if one exists in Q(i), else None.

    Needed when normalizing symmetric forms: a rational answer exists only
    when the obvious norm/argument conditions hold, and we must detect that
    exactly rather than approximate.
    """
    if not s:
        return ZERO
    a, b = s.re, s.im
    if not b:
        if a > 0:
            r = _mpq_sqrt(a)
            if r is not None:
                return Scalar(r)
            return None
        r = _mpq_sqrt(-a)
        if r is not None:
            return Scalar(0, r)
        return None
    # (x+yi)^2 = a+bi needs x^2 - y^2 = a, 2xy = b; then x^2 is a root of
    # 4t^2 - 4at - b^2 = 0, i.e. t = (a + sqrt(a^2+b^2))/2 with the norm
    # a^2+b^2 a rational square.
    n = _mpq_sqrt(a * a + b * b)
    if n is None:
        return None
    t = (a + n) / 2
    if t <= 0:
        return None
    x = _mpq_sqrt(t)
    if x is None:
        return None
    y = b / (2 * x)
    return Scalar(x, y)


def _mpq_sqrt(q):
    """Exact square root of a nonnegative mpq, or None."""
    from gmpy2 import isqrt

    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return mpq(rn, rd)
    return None
