"""Exact formal power series over the Gaussian rationals.

Coefficients are :class:`ComplexRational` values (pairs of reduced
fractions).  A :class:`PowerSeries` is a finite coefficient prefix plus an
optional geometric tail ``s * q**(j - n0)`` for ``j >= n0``, which is the
exact shape of the hyper-range series of a polynomial symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import PreconditionViolation

RationalLike = Union[int, Fraction, str]


class ComplexRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, ComplexRational):
            if im:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value) -> "ComplexRational":
        if isinstance(value, ComplexRational):
            return value
        if isinstance(value, str):
            return parse_complex_rational(value)
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact; pass a string or Fraction")
        return cls(value)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ComplexRational):
            other = _lift(other)
            if other is NotImplemented:
                return other
        return _mk(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ComplexRational):
            other = _lift(other)
            if other is NotImplemented:
                return other
        return _mk(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if not isinstance(other, ComplexRational):
            other = _lift(other)
            if other is NotImplemented:
                return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return _mk(a * c, b)
        return _mk(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, ComplexRational):
            other = _lift(other)
            if other is NotImplemented:
                return other
        c, d = other.re, other.im
        if not d:
            if not c:
                raise ZeroDivisionError("division by exact zero")
            return _mk(self.re / c, self.im / c)
        den = c * c + d * d
        a, b = self.re, self.im
        return _mk((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "ComplexRational":
        return _mk(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    # comparisons / conversions -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, ComplexRational):
            return self.re == other.re and self.im == other.im
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"ComplexRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im} i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)} i"


def _mk(re: Fraction, im: Fraction) -> ComplexRational:
    obj = ComplexRational.__new__(ComplexRational)
    obj.re = re
    obj.im = im
    return obj


def _lift(value):
    if isinstance(value, (int, Fraction)):
        return _mk(Fraction(value), Fraction(0))
    return NotImplemented


ZERO = ComplexRational(0)
ONE = ComplexRational(1)
I = ComplexRational(0, 1)

_NUM = r"\d+(?:\.\d*)?(?:/\d+)?"
_FULL = re.compile(
    rf"^(?P<re>[+-]?{_NUM})(?:(?P<isign>[+-])(?P<im>{_NUM})?\*?i)?$"
)
_IMAG = re.compile(rf"^(?P<isign>[+-]?)(?P<im>{_NUM})?\*?i$")


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` (optionally signed, whitespace-insensitive)."""
    cleaned = "".join(text.split())
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def parse_complex_rational(text: str) -> ComplexRational:
    """Parse ``p/q``, ``p/q+r/s i``, ``r/s i``, ``-i`` and friends."""
    cleaned = "".join(text.split())
    m = _FULL.match(cleaned)
    try:
        if m:
            re_part = Fraction(m.group("re"))
            if m.group("isign") is None:
                return ComplexRational(re_part)
            im_part = Fraction(m.group("im") or 1)
            if m.group("isign") == "-":
                im_part = -im_part
            return ComplexRational(re_part, im_part)
        m = _IMAG.match(cleaned)
        if m:
            im_part = Fraction(m.group("im") or 1)
            if m.group("isign") == "-":
                im_part = -im_part
            return ComplexRational(0, im_part)
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in {text!r}") from exc
    raise ValueError(f"not a complex rational literal: {text!r}")


# --------------------------------------------------------------------------
# power series
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Geometric:
    """Tail model ``coeff(j) = scale * ratio**(j - start)`` for ``j >= start``."""

    scale: ComplexRational
    ratio: ComplexRational
    start: int

    def at(self, j: int) -> ComplexRational:
        return self.scale * self.ratio ** (j - self.start)


@dataclass(frozen=True)
class PowerSeries:
    prefix: tuple
    tail: Optional[Geometric] = None

    def __post_init__(self):
        prefix = tuple(ComplexRational.coerce(c) for c in self.prefix)
        object.__setattr__(self, "prefix", prefix)
        if self.tail is not None and self.tail.start != len(prefix):
            raise ValueError(
                f"geometric tail must start right after the prefix "
                f"(start={self.tail.start}, prefix length={len(prefix)})"
            )

    @classmethod
    def poly(cls, coeffs: Iterable) -> "PowerSeries":
        """Polynomial from ascending coefficients; trailing zeros are dropped."""
        cs = [ComplexRational.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        return cls(tuple(cs))

    @classmethod
    def monomial(cls, j: int, c=1) -> "PowerSeries":
        return cls.poly([0] * j + [c])

    @property
    def is_polynomial(self) -> bool:
        return self.tail is None or not self.tail.scale

    @property
    def degree(self) -> int:
        """Degree of a polynomial series (-1 for the zero series)."""
        if not self.is_polynomial:
            raise PreconditionViolation("series has an infinite tail")
        for j in range(len(self.prefix) - 1, -1, -1):
            if self.prefix[j]:
                return j
        return -1

    def coeff(self, j: int) -> ComplexRational:
        return coeff(self, j)

    def coeffs(self, n: int) -> list:
        """The first ``n`` coefficients."""
        return [self.coeff(j) for j in range(n)]

    def materialize(self, D: int) -> "PowerSeries":
        """Same series with the prefix extended through degree ``D``."""
        if self.tail is None:
            return self
        if D < self.tail.start:
            return self
        new_prefix = self.prefix + tuple(self.tail.at(j) for j in range(self.tail.start, D + 1))
        t = self.tail
        return PowerSeries(new_prefix, Geometric(t.at(D + 1), t.ratio, D + 1))

    def remainder(self, N: int) -> "PowerSeries":
        """The part of degree ``>= N`` (lower coefficients set to zero)."""
        h = self.materialize(N - 1)
        prefix = (ZERO,) * min(N, len(h.prefix)) + h.prefix[N:]
        return PowerSeries(prefix, h.tail)

    def truncate(self, D: int) -> "PowerSeries":
        """Polynomial keeping coefficients of degree ``<= D``."""
        return PowerSeries.poly(self.coeffs(D + 1))

    def scale(self, c) -> "PowerSeries":
        c = ComplexRational.coerce(c)
        tail = None
        if self.tail is not None:
            tail = Geometric(self.tail.scale * c, self.tail.ratio, self.tail.start)
        return PowerSeries(tuple(x * c for x in self.prefix), tail)

    def shift(self, k: int = 1) -> "PowerSeries":
        """Multiply by ``z**k``."""
        tail = None
        if self.tail is not None:
            tail = Geometric(self.tail.scale, self.tail.ratio, self.tail.start + k)
        return PowerSeries((ZERO,) * k + self.prefix, tail)

    def __str__(self):
        terms = []
        for j, c in enumerate(self.prefix):
            if c:
                terms.append(f"({c})z^{j}" if j else f"({c})")
        if self.tail is not None and self.tail.scale:
            t = self.tail
            terms.append(f"({t.scale})*sum_{{j>={t.start}}} ({t.ratio})^(j-{t.start}) z^j")
        return " + ".join(terms) if terms else "0"


def coeff(h: PowerSeries, j: int) -> ComplexRational:
    """Coefficient of ``z**j``: prefix lookup, then tail formula, else zero."""
    if j < 0:
        raise PreconditionViolation("coefficient index must be nonnegative")
    if j < len(h.prefix):
        return h.prefix[j]
    if h.tail is not None:
        return h.tail.at(j)
    return ZERO


def ps_mul_truncated(f: PowerSeries, g: PowerSeries, D: int) -> PowerSeries:
    """Cauchy product, exact through degree ``D``; no tail."""
    if D < 0:
        raise PreconditionViolation("D must be nonnegative")
    fc = f.coeffs(D + 1)
    gc = g.coeffs(D + 1)
    out = []
    for n in range(D + 1):
        acc = ZERO
        for k in range(n + 1):
            a = fc[k]
            if a:
                b = gc[n - k]
                if b:
                    acc = acc + a * b
        out.append(acc)
    return PowerSeries(tuple(out))


def geometric_series(b) -> PowerSeries:
    """``sum_j (z/b)**j``."""
    b = ComplexRational.coerce(b)
    if not b:
        raise ZeroDivisionError("geometric series needs b != 0")
    return PowerSeries((), Geometric(ONE, ONE / b, 0))


def poly_eval(f: PowerSeries, w) -> ComplexRational:
    """Horner evaluation of a polynomial series."""
    if not f.is_polynomial:
        raise PreconditionViolation("poly_eval needs a polynomial")
    w = ComplexRational.coerce(w)
    acc = ZERO
    for c in reversed(f.prefix):
        acc = acc * w + c
    return acc


def tail_closed_form(f: PowerSeries, c=None) -> Geometric:
    """Closed-form tail of the hyper-range series of a polynomial.

    For ``f`` of degree ``n`` the coefficients from degree ``n`` on are
    ``f(c) / c**j``, i.e. ``Geometric(f(c)/c**n, 1/c, n)``.  ``c`` defaults
    to ``f(0)``.
    """
    if not f.is_polynomial:
        raise PreconditionViolation("closed tail exists only for polynomial f")
    n = max(f.degree, 0)
    if c is None:
        c = f.coeff(0)
        if not c:
            raise PreconditionViolation("closed tail needs f(0) != 0")
    else:
        c = ComplexRational.coerce(c)
        if not c:
            raise ZeroDivisionError("c must be nonzero")
    return Geometric(poly_eval(f, c) / c ** n, ONE / c, n)


def build_h0(f: PowerSeries, c, D: int) -> PowerSeries:
    """The series with coefficients ``sum_{i<=j} f^(j-i) / c**i``.

    Uses the recurrence ``h(j) = f(j) + h(j-1)/c``.  For polynomial ``f`` the
    result is exact for every index (prefix through ``max(D, deg f - 1)``
    plus a geometric tail, dropped when its scale vanishes); otherwise it is
    the degree-``D`` truncation.
    """
    c = ComplexRational.coerce(c)
    if not c:
        raise ZeroDivisionError("h0 needs a nonzero eigenvalue candidate")
    inv = ONE / c
    if f.is_polynomial:
        n = max(f.degree, 0)
        last = max(D, n - 1)
        coeffs, prev = [], ZERO
        for j in range(last + 1):
            prev = f.coeff(j) + prev * inv
            coeffs.append(prev)
        tail = tail_closed_form(f, c)
        if not tail.scale:
            return PowerSeries.poly(coeffs)
        h = PowerSeries(tuple(coeffs[:n]), tail)
        return h.materialize(last)
    coeffs, prev = [], ZERO
    for j in range(D + 1):
        prev = f.coeff(j) + prev * inv
        coeffs.append(prev)
    return PowerSeries(tuple(coeffs))


def as_series(value) -> PowerSeries:
    """Accept a PowerSeries, a scalar, or a sequence of ascending coefficients."""
    if isinstance(value, PowerSeries):
        return value
    if isinstance(value, (list, tuple)):
        return PowerSeries.poly(value)
    return PowerSeries.poly([value])


def parse_poly(text: str) -> PowerSeries:
    """Comma-separated ascending coefficients, e.g. ``"1/2, -1"`` for 1/2 - z."""
    parts = [p for p in text.split(",")]
    if not parts or any(not p.strip() for p in parts):
        raise ValueError(f"empty coefficient in {text!r}")
    return PowerSeries.poly(parse_complex_rational(p) for p in parts)


def format_poly(h: PowerSeries) -> str:
    return ", ".join(str(c) for c in h.prefix) if h.prefix else "0"


def pretty_poly(h: PowerSeries, var: str = "z") -> str:
    """Human-readable polynomial, highest degree first: ``z^2 - z``, ``1/2 - z``."""
    terms = []
    for j in range(len(h.prefix) - 1, -1, -1):
        c = h.prefix[j]
        if not c:
            continue
        mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
        if c.im:
            body, neg = f"({c})", False
        else:
            neg = c.re < 0
            mag = abs(c.re)
            body = str(mag) if (mag != 1 or not mono) else ""
        text = body + ("*" if body and mono and not body.startswith("(") else "") + mono
        terms.append((neg, text))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] else "") + terms[0][1]
    for neg, text in terms[1:]:
        out += (" - " if neg else " + ") + text
    if h.tail is not None and h.tail.scale:
        out += " + ..."
    return out


def random_rational_poly(rng, max_degree: int = 4, height: int = 5) -> PowerSeries:
    """Seeded random polynomial with Gaussian-rational coefficients.

    ``rng`` is a :class:`random.Random`; numerators lie in ``[-height, height]``
    and denominators in ``[1, height]``.
    """
    deg = rng.randint(0, max_degree)

    def q():
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    coeffs = [ComplexRational(q(), q() if rng.random() < 0.3 else 0) for _ in range(deg + 1)]
    return PowerSeries.poly(coeffs)
