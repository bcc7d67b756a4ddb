"""Exact arithmetic in Q(i, sqrt 2) and its real subfield Q(sqrt 2).

Every amplitude that shows up in the standard gates, the EPR pair and the
teleportation protocol lives in this field, so equality is decided exactly
and the property tests run with zero tolerance.

Rationals are :class:`fractions.Fraction`; they are always in lowest terms
with a positive denominator.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Optional

from .errors import NegativeInput

Rational = Fraction

SQRT2_FLOAT = math.sqrt(2.0)

def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a finite decimal such as ``"0.25"``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational {text!r}") from exc


def format_rational(x: Fraction) -> str:
    """Inverse of :func:`parse_rational`; the denominator is omitted when it is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """Return the nonnegative rational square root of ``x`` if there is one."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True, slots=True, eq=False)
class RealRadical:
    """The real number ``u + v*sqrt(2)`` with rational ``u`` and ``v``.

    Because sqrt 2 is irrational, two values are equal iff their components
    are equal, and the sign is decided by integer arithmetic on ``u``, ``v``
    and ``u**2 - 2*v**2``.
    """

    u: Fraction = Fraction(0)
    v: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "u", _q(self.u))
        object.__setattr__(self, "v", _q(self.v))

    @classmethod
    def coerce(cls, x) -> "RealRadical":
        if isinstance(x, RealRadical):
            return x
        if isinstance(x, Amplitude):
            if not x.is_real():
                raise ValueError(f"{x} is not real")
            return cls(x.re0, x.re1)
        return cls(_q(x), 0)

    def sign(self) -> int:
        su, sv = _sign(self.u), _sign(self.v)
        if su >= 0 and sv >= 0:
            return 1 if (su or sv) else 0
        if su <= 0 and sv <= 0:
            return -1
        # Opposite signs: whichever of |u| and |v|*sqrt(2) is larger wins.
        return su * _sign(self.u * self.u - 2 * self.v * self.v)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def sqrt2_conjugate(self) -> "RealRadical":
        return RealRadical(self.u, -self.v)

    def field_norm(self) -> Fraction:
        """``u**2 - 2*v**2``, the product with the sqrt 2 conjugate."""
        return self.u * self.u - 2 * self.v * self.v

    def sqrt(self) -> Optional["RealRadical"]:
        return real_sqrt(self)

    def __add__(self, other):
        try:
            o = RealRadical.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return RealRadical(self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return RealRadical(-self.u, -self.v)

    def __sub__(self, other):
        try:
            o = RealRadical.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return RealRadical(self.u - o.u, self.v - o.v)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Amplitude):
            return NotImplemented
        try:
            o = RealRadical.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return RealRadical(self.u * o.u + 2 * self.v * o.v, self.u * o.v + self.v * o.u)

    __rmul__ = __mul__

    def inverse(self) -> "RealRadical":
        n = self.field_norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        return RealRadical(self.u / n, -self.v / n)

    def __truediv__(self, other):
        if isinstance(other, Amplitude):
            return NotImplemented
        try:
            o = RealRadical.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return RealRadical.coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Amplitude):
            return other == self
        try:
            o = RealRadical.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        if self.v == 0:
            return hash(self.u)
        return hash((self.u, self.v))

    def _cmp(self, other) -> int:
        return (self - RealRadical.coerce(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.u) + float(self.v) * SQRT2_FLOAT

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return _format_terms([(self.u, ""), (self.v, "r2")])

    def __repr__(self):
        return f"RealRadical({self})"

    def to_json(self) -> list:
        return [format_rational(self.u), format_rational(self.v)]

    @classmethod
    def from_json(cls, data) -> "RealRadical":
        if isinstance(data, str):
            return cls.coerce(parse_amplitude(data))
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            raise ValueError(f"expected a pair of rationals, got {data!r}")
        return cls(parse_rational(str(data[0])), parse_rational(str(data[1])))


def real_sqrt(r) -> Optional[RealRadical]:
    """Square root inside Q(sqrt 2), or ``None`` when it leaves the field.

    Solves ``x**2 + 2*y**2 = u`` and ``2*x*y = v`` over the rationals and
    returns the nonnegative root ``x + y*sqrt(2)``.

    Raises:
        NegativeInput: if ``r < 0``.
    """
    r = RealRadical.coerce(r)
    if r.sign() < 0:
        raise NegativeInput(f"square root of negative value {r}")
    u, v = r.u, r.v
    if v == 0:
        x = rational_sqrt(u)
        if x is not None:
            return RealRadical(x, 0)
        y = rational_sqrt(u / 2)
        if y is not None:
            return RealRadical(0, y)
        return None
    # Eliminating y gives x**4 - u*x**2 + v**2/2 = 0.
    d = rational_sqrt(u * u - 2 * v * v)
    if d is None:
        return None
    for x_sq in ((u + d) / 2, (u - d) / 2):
        x = rational_sqrt(x_sq)
        if x is None or x == 0:
            continue
        s = RealRadical(x, v / (2 * x))
        if s.sign() < 0:
            s = -s
        if s * s == r:
            return s
    return None


@dataclass(frozen=True, slots=True, eq=False)
class Amplitude:
    """The complex number ``(re0 + im0*i) + (re1 + im1*i)*sqrt(2)``."""

    re0: Fraction = Fraction(0)
    im0: Fraction = Fraction(0)
    re1: Fraction = Fraction(0)
    im1: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("re0", "im0", "re1", "im1"):
            object.__setattr__(self, name, _q(getattr(self, name)))

    @classmethod
    def coerce(cls, x) -> "Amplitude":
        if isinstance(x, Amplitude):
            return x
        if isinstance(x, RealRadical):
            return cls(x.u, 0, x.v, 0)
        if isinstance(x, str):
            return parse_amplitude(x)
        return cls(_q(x))

    @property
    def real(self) -> RealRadical:
        return RealRadical(self.re0, self.re1)

    @property
    def imag(self) -> RealRadical:
        return RealRadical(self.im0, self.im1)

    def is_zero(self) -> bool:
        return not (self.re0 or self.im0 or self.re1 or self.im1)

    def is_real(self) -> bool:
        return self.im0 == 0 and self.im1 == 0

    def conj(self) -> "Amplitude":
        return Amplitude(self.re0, -self.im0, self.re1, -self.im1)

    def abs_sq(self) -> RealRadical:
        """``|a|**2`` computed as ``a * conj(a)``; no square root is taken."""
        a, b, c, d = self.re0, self.im0, self.re1, self.im1
        return RealRadical(a * a + b * b + 2 * (c * c + d * d), 2 * (a * c + b * d))

    def approx(self) -> complex:
        return complex(
            float(self.re0) + float(self.re1) * SQRT2_FLOAT,
            float(self.im0) + float(self.im1) * SQRT2_FLOAT,
        )

    def inverse(self) -> "Amplitude":
        # a^-1 = conj(a) / |a|^2, and |a|^2 is inverted in Q(sqrt 2).
        n = self.abs_sq()
        if n.is_zero():
            raise ZeroDivisionError("division by zero in Q(i, sqrt 2)")
        return self.conj() * n.inverse()

    def __add__(self, other):
        try:
            o = Amplitude.coerce(other)
        except TypeError:
            return NotImplemented
        return Amplitude(self.re0 + o.re0, self.im0 + o.im0, self.re1 + o.re1, self.im1 + o.im1)

    __radd__ = __add__

    def __neg__(self):
        return Amplitude(-self.re0, -self.im0, -self.re1, -self.im1)

    def __sub__(self, other):
        try:
            o = Amplitude.coerce(other)
        except TypeError:
            return NotImplemented
        return Amplitude(self.re0 - o.re0, self.im0 - o.im0, self.re1 - o.re1, self.im1 - o.im1)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = Amplitude.coerce(other)
        except TypeError:
            return NotImplemented
        # (p + q r2)(s + t r2) = (ps + 2qt) + (pt + qs) r2, with p, q, s, t Gaussian.
        pr, pi, qr, qi = self.re0, self.im0, self.re1, self.im1
        sr, si, tr, ti = o.re0, o.im0, o.re1, o.im1
        return Amplitude(
            pr * sr - pi * si + 2 * (qr * tr - qi * ti),
            pr * si + pi * sr + 2 * (qr * ti + qi * tr),
            pr * tr - pi * ti + qr * sr - qi * si,
            pr * ti + pi * tr + qr * si + qi * sr,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = Amplitude.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Amplitude.coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            o = Amplitude.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self.re0, self.im0, self.re1, self.im1) == (o.re0, o.im0, o.re1, o.im1)

    def __hash__(self):
        if self.is_real():
            return hash(self.real)
        return hash((self.re0, self.im0, self.re1, self.im1))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return _format_terms(
            [(self.re0, ""), (self.im0, "i"), (self.re1, "r2"), (self.im1, "i r2")]
        )

    def __repr__(self):
        return f"Amplitude({self})"

    def to_json(self) -> list:
        return [format_rational(c) for c in (self.re0, self.im0, self.re1, self.im1)]

    @classmethod
    def from_json(cls, data) -> "Amplitude":
        if isinstance(data, str):
            return parse_amplitude(data)
        if isinstance(data, (int, float)) and not isinstance(data, bool):
            return cls(Fraction(str(data)))
        if not isinstance(data, (list, tuple)) or len(data) != 4:
            raise ValueError(f"expected a 4-element amplitude array, got {data!r}")
        return cls(*(parse_rational(str(c)) for c in data))


def amp_arith(a, b, op: str) -> Amplitude:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two amplitudes."""
    a, b = Amplitude.coerce(a), Amplitude.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def amp_conj(a) -> Amplitude:
    return Amplitude.coerce(a).conj()


def amp_abs_sq(a) -> RealRadical:
    return Amplitude.coerce(a).abs_sq()


def amp_approx(a) -> tuple[float, float]:
    z = Amplitude.coerce(a).approx()
    return (z.real, z.imag)


ZERO = Amplitude()
ONE = Amplitude(1)
I = Amplitude(0, 1)
SQRT2 = Amplitude(0, 0, 1)
ONESTWO = Amplitude(0, 0, Fraction(1, 2))
HALF = Amplitude(Fraction(1, 2))


# Textual form: ``a + b i + c r2 + d i r2``; e.g. ``1/2 r2`` is 1/sqrt 2.
_TERM = re.compile(
    r"(?P<coef>\d*\.\d+|\d+\.|\d+(?:/\d+)?)?\*?(?P<i1>i)?\*?(?P<r2>r2)?\*?(?P<i2>i)?"
)


def parse_amplitude(text: str) -> Amplitude:
    """Parse the textual amplitude syntax ``a[+bi][+c r2][+d i r2]``.

    Coefficients are rationals (``3/5``) or finite decimals; ``i`` and
    ``r2`` may appear in either order and a missing coefficient means 1.

    >>> parse_amplitude("1/2 r2") == ONESTWO
    True
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty amplitude")
    parts = [0, 0, 0, 0]
    pos = 0
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif pos:
            raise ValueError(f"invalid amplitude {text!r}")
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"invalid amplitude {text!r}")
        if m.group("i1") and m.group("i2"):
            raise ValueError(f"invalid amplitude {text!r}: repeated i")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        slot = (1 if (m.group("i1") or m.group("i2")) else 0) + (2 if m.group("r2") else 0)
        parts[slot] += sign * coef
        pos = m.end()
    return Amplitude(*parts)


def _format_terms(terms) -> str:
    out = []
    for coef, unit in terms:
        if coef == 0:
            continue
        mag = format_rational(abs(coef))
        if unit:
            body = unit if mag == "1" else f"{mag} {unit}" if unit != "i" else f"{mag}i"
        else:
            body = mag
        if not out:
            out.append(body if coef > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if coef > 0 else f"- {body}")
    return " ".join(out) if out else "0"
