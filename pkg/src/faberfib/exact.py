"""Exact scalar arithmetic and controlled conversion to floats.

Three scalar types form a tower: `fractions.Fraction` (rationals),
`QSqrt5` (the real quadratic field Q(sqrt 5)), and `ExactComplex`
(complex numbers whose real and imaginary parts live in Q(sqrt 5)).
Arithmetic between levels promotes upward and is exact everywhere; no
operation in this module rounds.  Floats appear only in the explicit
conversion helpers at the bottom, which return a value together with a
guaranteed error bound derived from dyadic interval enclosures.

The module also owns the text grammar for scalars ("3/4",
"-1/2 + 1/2*sqrt5", "2 + 1/3*i", ...) used by the command line and by
reports.  `parse_scalar` accepts a superset of what the renderers emit,
including parenthesised coefficients, an omitted '*', and the unicode
minus sign, and round-trips every rendered value.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering

Rational = Fraction

__all__ = [
    "Rational",
    "QSqrt5",
    "ExactComplex",
    "Interval",
    "IntervalStraddleError",
    "to_float",
    "fraction_sqrt",
    "render_rational",
    "render_qsqrt5",
    "render_scalar",
    "parse_rational",
    "parse_qsqrt5",
    "parse_scalar",
]


@total_ordering
class QSqrt5:
    """An element a + b*sqrt(5) of the real quadratic field Q(sqrt 5).

    `a` and `b` are exact rationals.  The representation is unique, so
    equality is component-wise.  Ordering is the order inherited from
    the reals and is decided exactly by comparing squares of integers,
    never through floating point.
    """

    __slots__ = ("_a", "_b")

    def __init__(self, a=0, b=0):
        if isinstance(a, QSqrt5):
            if b != 0:
                raise TypeError("cannot combine a QSqrt5 with a second component")
            self._a = a._a
            self._b = a._b
            return
        self._a = Fraction(a)
        self._b = Fraction(b)

    @property
    def rational_part(self) -> Fraction:
        return self._a

    @property
    def radical_part(self) -> Fraction:
        return self._b

    # -- ring structure -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QSqrt5):
            return other
        if isinstance(other, (int, Fraction)):
            return QSqrt5(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt5(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt5(self._a - o._a, self._b - o._b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt5(
            self._a * o._a + 5 * self._b * o._b,
            self._a * o._b + self._b * o._a,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return QSqrt5(-self._a, -self._b)

    def __pos__(self):
        return self

    def conjugate(self) -> "QSqrt5":
        """The field conjugate a - b*sqrt(5)."""
        return QSqrt5(self._a, -self._b)

    def norm(self) -> Fraction:
        """Field norm a**2 - 5*b**2 (a rational)."""
        return self._a * self._a - 5 * self._b * self._b

    def inverse(self) -> "QSqrt5":
        n = self.norm()
        if n == 0:
            # a**2 == 5*b**2 with rationals forces a == b == 0
            raise ZeroDivisionError("division by zero in Q(sqrt 5)")
        return QSqrt5(self._a / n, -self._b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QSqrt5(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- exact order ----------------------------------------------------

    def sign(self) -> int:
        """Sign of the real number a + b*sqrt(5): -1, 0 or +1, decided exactly."""
        a, b = self._a, self._b
        if b == 0:
            return -1 if a < 0 else (0 if a == 0 else 1)
        if a == 0:
            return -1 if b < 0 else 1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a**2 with 5*b**2, won by the larger magnitude
        cmp = a * a - 5 * b * b
        dominant = 1 if a > 0 else -1  # sign if |a| > |b|sqrt5
        if cmp > 0:
            return dominant
        if cmp < 0:
            return -dominant
        return 0  # impossible for b != 0, kept for completeness

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, ExactComplex):
                return other == self
            return NotImplemented
        return self._a == o._a and self._b == o._b

    def __hash__(self):
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b, "sqrt5"))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __abs__(self):
        return self if self.sign() >= 0 else -self

    # -- views ------------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self._b == 0

    def to_fraction(self) -> Fraction:
        if self._b != 0:
            raise ValueError(f"{self} has an irrational part")
        return self._a

    def __float__(self):
        if self._b == 0:
            return float(self._a)
        if self.sign() == 0:
            return 0.0
        bits = 128
        while True:
            iv = Interval.from_qsqrt5(self, bits)
            mid = (iv.lo + iv.hi) / 2
            if mid != 0 and iv.hi - iv.lo <= abs(mid) * Fraction(1, 1 << 60):
                return float(mid)
            bits *= 2

    def __repr__(self):
        return f"QSqrt5({self._a!r}, {self._b!r})"

    def __str__(self):
        return render_qsqrt5(self)


class ExactComplex:
    """A complex number re + im*i with re, im in Q(sqrt 5).

    Closed under +, -, *, / and exact; the squared modulus stays in
    Q(sqrt 5), which is what downstream sign decisions need.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        if isinstance(re, ExactComplex):
            if im != 0:
                raise TypeError("cannot combine an ExactComplex with a second component")
            self._re = re._re
            self._im = re._im
            return
        self._re = QSqrt5(re)
        self._im = QSqrt5(im)

    @property
    def real(self) -> QSqrt5:
        return self._re

    @property
    def imag(self) -> QSqrt5:
        return self._im

    def _coerce(self, other):
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, (int, Fraction, QSqrt5)):
            return ExactComplex(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(
            self._re * o._re - self._im * o._im,
            self._re * o._im + self._im * o._re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return ExactComplex(-self._re, -self._im)

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self._re, -self._im)

    def abs_squared(self) -> QSqrt5:
        """|z|**2, exact in Q(sqrt 5)."""
        return self._re * self._re + self._im * self._im

    def inverse(self) -> "ExactComplex":
        m = self.abs_squared()
        if m.sign() == 0:
            raise ZeroDivisionError("division by complex zero")
        conj = self.conjugate()
        return ExactComplex(conj._re / m, conj._im / m)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ExactComplex(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._re == o._re and self._im == o._im

    def __hash__(self):
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im, "i"))

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    @property
    def is_real(self) -> bool:
        return not self._im

    def to_qsqrt5(self) -> QSqrt5:
        if self._im:
            raise ValueError(f"{self} has a nonzero imaginary part")
        return self._re

    def to_fraction(self) -> Fraction:
        return self.to_qsqrt5().to_fraction()

    def __complex__(self):
        return complex(float(self._re), float(self._im))

    def __repr__(self):
        return f"ExactComplex({self._re!r}, {self._im!r})"

    def __str__(self):
        return render_scalar(self)


# -- dyadic interval enclosures ----------------------------------------------


class IntervalStraddleError(ArithmeticError):
    """An interval operation needed a sign the enclosure could not decide."""


def _sqrt5_interval(bits: int) -> "Interval":
    s = math.isqrt(5 << (2 * bits))
    scale = 1 << bits
    return Interval(Fraction(s, scale), Fraction(s + 1, scale))


def _sqrt_lower(q: Fraction, bits: int) -> Fraction:
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    s = math.isqrt((n * d) << (2 * bits))
    return Fraction(s, d << bits)


def _sqrt_upper(q: Fraction, bits: int) -> Fraction:
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    s = math.isqrt((n * d) << (2 * bits))
    return Fraction(s + 1, d << bits)


class Interval:
    """A closed interval [lo, hi] with exact rational endpoints.

    Endpoint arithmetic is exact, so every operation returns a true
    enclosure of the image; only `sqrt` widens, by one dyadic step at
    the requested bit count.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Fraction, hi: Fraction):
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError("interval endpoints out of order")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, value) -> "Interval":
        q = Fraction(value)
        return cls(q, q)

    @classmethod
    def from_qsqrt5(cls, x: QSqrt5, bits: int) -> "Interval":
        if x.radical_part == 0:
            return cls.point(x.rational_part)
        s5 = _sqrt5_interval(bits)
        return cls.point(x.rational_part) + cls.point(x.radical_part) * s5

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other: "Interval") -> "Interval":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    def __truediv__(self, other: "Interval") -> "Interval":
        if other.lo <= 0 <= other.hi:
            raise IntervalStraddleError("interval denominator straddles zero")
        quotients = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return Interval(min(quotients), max(quotients))

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def abs(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi))

    def sqrt(self, bits: int) -> "Interval":
        if self.hi < 0:
            raise ValueError("square root of a negative interval")
        lo = self.lo if self.lo > 0 else Fraction(0)
        return Interval(_sqrt_lower(lo, bits), _sqrt_upper(self.hi, bits))

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def compare(self, other: "Interval"):
        """-1/0-as-None/+1 three-way comparison; None when enclosures overlap."""
        if self.hi < other.lo:
            return -1
        if self.lo > other.hi:
            return 1
        return None

    def sign(self):
        """Sign of the enclosed value, or None if the enclosure straddles zero."""
        if self.hi < 0:
            return -1
        if self.lo > 0:
            return 1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    def __repr__(self):
        return f"Interval({self.lo!r}, {self.hi!r})"


def to_float(x, precision: int = 128):
    """Convert an exact scalar to a float (or complex) with an error bound.

    Returns `(value, error)` where the true value is guaranteed to lie
    within `error` of `value`.  `precision` is the bit count used for
    the interval enclosure; it must be at least 53.
    """
    if precision < 53:
        raise ValueError("precision below 53 bits cannot even cover a double")
    if isinstance(x, ExactComplex):
        re, ere = to_float(x.real, precision)
        im, eim = to_float(x.imag, precision)
        return complex(re, im), ere + eim
    if isinstance(x, (int, Fraction)):
        x = QSqrt5(x)
    if not isinstance(x, QSqrt5):
        raise TypeError(f"cannot convert {type(x).__name__} to float with error bound")
    iv = Interval.from_qsqrt5(x, precision)
    mid = iv.mid
    value = float(mid)
    # enclosure halfwidth, plus double-rounding slack for float(mid), padded
    err = iv.width / 2 + abs(mid) * Fraction(1, 1 << 52)
    error = float(err * (1 + Fraction(1, 1 << 40)))
    if error == 0.0 and err > 0:
        error = math.ulp(0.0)
    return value, error


def fraction_sqrt(q: Fraction):
    """Exact square root of a rational, or None when it is not rational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn = math.isqrt(n)
    rd = math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# -- text grammar -------------------------------------------------------------


def render_rational(q: Fraction) -> str:
    return str(Fraction(q))


def render_qsqrt5(x: QSqrt5) -> str:
    a, b = x.rational_part, x.radical_part
    if b == 0:
        return render_rational(a)
    if b == 1:
        radical = "sqrt5"
    elif b == -1:
        radical = "-sqrt5"
    else:
        radical = f"{render_rational(b)}*sqrt5"
    if a == 0:
        return radical
    if radical.startswith("-"):
        return f"{render_rational(a)} - {radical[1:]}"
    return f"{render_rational(a)} + {radical}"


def _render_imag_unit(y: QSqrt5) -> str:
    if y == 1:
        return "i"
    if y == -1:
        return "-i"
    body = render_qsqrt5(y)
    if y.radical_part != 0 and y.rational_part != 0:
        return f"({body})*i"
    return f"{body}*i"


def render_scalar(z) -> str:
    """Canonical text for any exact scalar (Fraction, QSqrt5 or ExactComplex)."""
    if isinstance(z, (int, Fraction)):
        return render_rational(Fraction(z))
    if isinstance(z, QSqrt5):
        return render_qsqrt5(z)
    if isinstance(z, ExactComplex):
        if not z.imag:
            return render_qsqrt5(z.real)
        imag = _render_imag_unit(z.imag)
        if not z.real:
            return imag
        if imag.startswith("-"):
            return f"{render_qsqrt5(z.real)} - {imag[1:]}"
        return f"{render_qsqrt5(z.real)} + {imag}"
    raise TypeError(f"cannot render {type(z).__name__}")


_TOKEN = re.compile(r"\s*(\d+(?:\s*/\s*\d+)?|sqrt5|i\b|[+\-*()])")


def _tokenize(text: str):
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"unrecognised scalar syntax at {text[pos:]!r}")
        tokens.append(m.group(1).replace(" ", ""))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of scalar text")
        self.pos += 1
        return tok

    def parse_sum(self) -> ExactComplex:
        value = self.parse_product()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.parse_product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_product(self) -> ExactComplex:
        value = self.parse_unary()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                value = value * self.parse_unary()
            elif tok is not None and (tok == "(" or tok in ("sqrt5", "i") or tok[0].isdigit()):
                # implicit multiplication, e.g. "(1/2)sqrt5" or "2i"
                value = value * self.parse_unary()
            else:
                return value

    def parse_unary(self) -> ExactComplex:
        negate = False
        while self.peek() == "-":
            self.take()
            negate = not negate
        value = self.parse_atom()
        return -value if negate else value

    def parse_atom(self) -> ExactComplex:
        tok = self.take()
        if tok == "(":
            value = self.parse_sum()
            if self.take() != ")":
                raise ValueError("unbalanced parenthesis in scalar text")
            return value
        if tok == "sqrt5":
            return ExactComplex(QSqrt5(0, 1))
        if tok == "i":
            return ExactComplex(0, 1)
        if tok[0].isdigit():
            return ExactComplex(Fraction(tok))
        raise ValueError(f"unexpected token {tok!r} in scalar text")


def parse_scalar(text: str) -> ExactComplex:
    """Parse scalar text into an ExactComplex.

    Accepts rationals ("3/4"), Q(sqrt 5) values ("-1/2 + 1/2*sqrt5",
    "(1/2)+(-1/2)sqrt5"), and complex combinations ("2 + i",
    "1/3 - 2/5*i"); '*' is optional, parentheses group, and the unicode
    minus sign is accepted.
    """
    parser = _Parser(_tokenize(text))
    value = parser.parse_sum()
    if parser.peek() is not None:
        raise ValueError(f"trailing junk in scalar text: {parser.tokens[parser.pos:]!r}")
    return value


def parse_qsqrt5(text: str) -> QSqrt5:
    """Parse text that must denote a real element of Q(sqrt 5)."""
    return parse_scalar(text).to_qsqrt5()


def parse_rational(text: str) -> Fraction:
    """Parse text that must denote a rational number."""
    return parse_scalar(text).to_fraction()
