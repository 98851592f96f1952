"""Exact arithmetic: Laurent polynomials over Q and over cyclotomic fields.

Three families of objects live here:

* ``LaurentPoly`` -- a univariate Laurent polynomial over an exact field
  (``QQ`` or a ``CyclotomicField``), stored densely as a lowest exponent
  plus a coefficient tuple.  Over a field this ring is a Euclidean domain
  whose units are the monomials ``c*x^k``.
* ``BivariatePoly`` -- a Laurent polynomial in ``q`` and ``t`` over Q,
  stored sparsely.  This is the ring ``Q[q^+-1, t^+-1]``.
* ``CycloElement`` -- an element of ``K_m = Q[z]/(Phi_m(z))`` stored as an
  integer coefficient vector with a common positive denominator.

Rationals are ``int`` or ``fractions.Fraction``; both mix freely.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping

__all__ = [
    "QQ",
    "RationalField",
    "CyclotomicField",
    "CycloElement",
    "LaurentPoly",
    "BivariatePoly",
    "cyclotomic",
    "cyclotomic_field",
    "euler_phi",
    "q_analog",
    "q_factorial",
    "q_binomial",
    "qt_even",
    "qt_double_factorial",
    "qt_primed_binomial",
    "qt_primed_binomial_product",
    "reduce_mod_cyclotomic",
    "cyclo_inverse",
    "specialize",
    "parse_bivariate",
    "ExactDivisionError",
]


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("euler_phi needs m >= 1")
    result, k, p = m, m, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def _fmt_rational(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# coefficient fields


class RationalField:
    """The field Q; elements are ``int`` or ``Fraction``."""

    name = "Q"
    zero = 0
    one = 1

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return x
        if isinstance(x, Rational):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(a) / b

    def inv(self, a):
        return self.div(1, a)

    def fmt(self, a) -> str:
        return _fmt_rational(a)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_get_qq, ())


def _get_qq():
    return QQ


QQ = RationalField()


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    # q^m - 1 divided by Phi_d for every proper divisor d.
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _int_poly_exact_div(num, _cyclotomic_coeffs(d))
    return tuple(num)


def _int_poly_exact_div(a: list[int], b: Iterable[int]) -> list[int]:
    # b monic
    b = list(b)
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            out[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    if any(a[:db]):
        raise ExactDivisionError("cyclotomic division not exact")
    return out


class CyclotomicField:
    """The cyclotomic field ``K_m = Q[z]/(Phi_m(z))``.

    Use :func:`cyclotomic_field` to get the shared instance for an index.
    """

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("cyclotomic index must be >= 1")
        self.m = m
        self.phi = _cyclotomic_coeffs(m)
        self.degree = len(self.phi) - 1
        self.name = f"K{m}"
        d = self.degree
        # integer coordinates of z^k for 0 <= k < max(2d - 1, m)
        powers = []
        cur = [0] * d
        cur[0] = 1
        for _ in range(max(2 * d - 1, m)):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(d):
                    cur[j] -= top * self.phi[j]
        self._powers = powers
        self.zero = CycloElement(self, (0,) * d, 1)
        self.one = CycloElement(self, (1,) + (0,) * (d - 1), 1)

    def gen(self) -> "CycloElement":
        """The class z of the variable, a primitive m-th root of unity."""
        return self.zeta_power(1)

    def zeta_power(self, k: int) -> "CycloElement":
        return CycloElement(self, self._powers[k % self.m], 1)

    def from_coeffs(self, coeffs: Iterable) -> "CycloElement":
        """Element given by a polynomial in z (any length, rational coefficients)."""
        coeffs = list(coeffs)
        den = 1
        for c in coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in coeffs]
        return CycloElement(self, self._reduce_int(ints), den)

    def _reduce_int(self, ints: list[int]) -> tuple[int, ...]:
        d = self.degree
        out = ints[:d] + [0] * (d - len(ints[:d]))
        for k in range(d, len(ints)):
            c = ints[k]
            if c:
                vec = self._power_vec(k)
                for j in range(d):
                    out[j] += c * vec[j]
        return tuple(out)

    def _power_vec(self, k: int) -> tuple[int, ...]:
        if k < len(self._powers):
            return self._powers[k]
        return self._powers[k % self.m]

    def __call__(self, x) -> "CycloElement":
        if isinstance(x, CycloElement):
            if x.field is not self:
                raise TypeError("element of a different cyclotomic field")
            return x
        if isinstance(x, int):
            return CycloElement(self, (x,) + (0,) * (self.degree - 1), 1)
        if isinstance(x, Rational):
            x = Fraction(x)
            return CycloElement(
                self, (x.numerator,) + (0,) * (self.degree - 1), x.denominator
            )
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def div(self, a, b):
        return self(a) * cyclo_inverse(self(b))

    def inv(self, a):
        return cyclo_inverse(self(a))

    def fmt(self, a) -> str:
        return self(a).to_string()

    def __repr__(self):
        return f"CyclotomicField({self.m})"

    def __reduce__(self):
        return (cyclotomic_field, (self.m,))


@lru_cache(maxsize=None)
def cyclotomic_field(m: int) -> CyclotomicField:
    return CyclotomicField(m)


class CycloElement:
    """Element of K_m as ``(num[0] + num[1] z + ...) / den``; immutable."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: CyclotomicField, num: tuple[int, ...], den: int = 1):
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = math.gcd(den, *num)
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        elif g == 0:  # zero element
            den = 1
        self.field = field
        self.num = num
        self.den = den

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def _coerce(self, other):
        if isinstance(other, CycloElement):
            if other.field is not self.field:
                raise TypeError("mixing elements of different cyclotomic fields")
            return other
        if isinstance(other, Rational):
            return self.field(other)
        return NotImplemented

    def __bool__(self):
        return any(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if not any(self.num[1:]):
            return hash(Fraction(self.num[0], self.den))
        return hash((self.field.m, self.num, self.den))

    def __neg__(self):
        return CycloElement(self.field, tuple(-c for c in self.num), self.den)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return CycloElement(
                self.field, tuple(a + b for a, b in zip(self.num, other.num)), self.den
            )
        d1, d2 = self.den, other.den
        return CycloElement(
            self.field,
            tuple(a * d2 + b * d1 for a, b in zip(self.num, other.num)),
            d1 * d2,
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.num, other.num
        d = len(a)
        if d == 1:
            return CycloElement(self.field, (a[0] * b[0],), self.den * other.den)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        powers = self.field._powers
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                vec = powers[k]
                for j in range(d):
                    out[j] += c * vec[j]
        return CycloElement(self.field, tuple(out), self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * cyclo_inverse(other)

    def __rtruediv__(self, other):
        return self.field(other) * cyclo_inverse(self)

    def __pow__(self, k: int):
        if k < 0:
            return cyclo_inverse(self) ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_string(self, symbol: str = "z") -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append((k, c))
        if not terms:
            return "0"
        return _join_terms(
            (c, (f"{symbol}^{k}" if k > 1 else symbol) if k else "") for k, c in terms
        )

    def __repr__(self):
        return f"CycloElement(m={self.m}, {self.to_string()})"


def cyclo_inverse(x: CycloElement) -> CycloElement:
    """Inverse in K_m by the extended Euclidean algorithm against Phi_m."""
    if not x:
        raise ZeroDivisionError("zero has no inverse in a cyclotomic field")
    field = x.field
    a = list(x.coeffs)
    while a and not a[-1]:
        a.pop()
    if len(a) == 1:
        return field(Fraction(1) / a[0])
    # extended Euclid in Q[z]: maintain s with s*a == r (mod Phi)
    r0, r1 = [Fraction(c) for c in field.phi], a
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        quo, rem = _qpoly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(quo, s1))
        if not r1:  # pragma: no cover - Phi_m is irreducible
            raise ArithmeticError("non-invertible element in a cyclotomic field")
    # r1 is a nonzero constant
    c = r1[0]
    return field.from_coeffs([v / c for v in s1])


def _qpoly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _qpoly_trim(out)


def _qpoly_sub(a, b):
    n = max(len(a), len(b))
    out = [
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)
    ]
    return _qpoly_trim([Fraction(c) for c in out])


def _qpoly_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    if len(a) <= db:
        return [], _qpoly_trim(a)
    quo = [Fraction(0)] * (len(a) - db)
    lead = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            quo[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _qpoly_trim(quo), _qpoly_trim(a[:db])


# ---------------------------------------------------------------------------
# text helpers


def _join_terms(pairs) -> str:
    """Join (coefficient, monomial-string) pairs into ``a*x^2 - b*y + ...``."""
    out = []
    for c, mono in pairs:
        c = Fraction(c)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{_fmt_rational(a)}*{mono}"
        else:
            body = _fmt_rational(a)
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) if out else "0"


# ---------------------------------------------------------------------------
# univariate Laurent polynomials over a field


class LaurentPoly:
    """Univariate Laurent polynomial over an exact field.

    ``low`` is the exponent of ``coeffs[0]``; both end coefficients are
    nonzero, and the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("field", "var", "low", "coeffs")

    def __init__(self, field, coeffs=(), low: int = 0, var: str = "t"):
        coeffs = list(coeffs)
        start = 0
        while start < len(coeffs) and not coeffs[start]:
            start += 1
        end = len(coeffs)
        while end > start and not coeffs[end - 1]:
            end -= 1
        self.field = field
        self.var = var
        if start == end:
            self.coeffs = ()
            self.low = 0
        else:
            self.coeffs = tuple(coeffs[start:end])
            self.low = low + start

    # constructors -------------------------------------------------------
    @classmethod
    def from_dict(cls, field, mapping: Mapping[int, object], var: str = "t"):
        items = {k: v for k, v in mapping.items() if v}
        if not items:
            return cls(field, (), 0, var)
        lo, hi = min(items), max(items)
        zero = field.zero
        return cls(
            field, [items.get(k, zero) for k in range(lo, hi + 1)], lo, var
        )

    @classmethod
    def constant(cls, field, c, var: str = "t"):
        return cls(field, (field(c),), 0, var)

    @classmethod
    def monomial(cls, field, c, k: int, var: str = "t"):
        return cls(field, (field(c),), k, var)

    @classmethod
    def zero(cls, field, var: str = "t"):
        return cls(field, (), 0, var)

    @classmethod
    def one(cls, field, var: str = "t"):
        return cls(field, (field.one,), 0, var)

    # basic queries --------------------------------------------------------
    def __bool__(self):
        return bool(self.coeffs)

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def span(self) -> int:
        """Euclidean size: top exponent minus bottom exponent (-1 for zero)."""
        return len(self.coeffs) - 1

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def terms(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.low + i, c

    def to_dict(self) -> dict[int, object]:
        return dict(self.terms())

    def coefficient(self, k: int):
        i = k - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return (
                self.low == other.low
                and self.coeffs == other.coeffs
                and self.var == other.var
            )
        if isinstance(other, (Rational, CycloElement)):
            if not other:
                return not self.coeffs
            return self.low == 0 and len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.var, self.low, self.coeffs))

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.var != self.var:
                raise TypeError("mixing Laurent polynomials in different variables")
            return other
        if isinstance(other, (Rational, CycloElement)):
            return LaurentPoly(self.field, (self.field(other),), 0, self.var)
        return NotImplemented

    # ring operations ------------------------------------------------------
    def __neg__(self):
        return LaurentPoly(self.field, [-c for c in self.coeffs], self.low, self.var)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        zero = self.field.zero
        out = [zero] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.low - lo + i] = c
        off = other.low - lo
        for i, c in enumerate(other.coeffs):
            out[off + i] = out[off + i] + c
        return LaurentPoly(self.field, out, lo, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LaurentPoly(self.field, (), 0, self.var)
        if len(b) == 1:
            c = b[0]
            return LaurentPoly(self.field, [x * c for x in a], self.low + other.low, self.var)
        if len(a) == 1:
            c = a[0]
            return LaurentPoly(self.field, [c * y for y in b], self.low + other.low, self.var)
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return LaurentPoly(self.field, out, self.low + other.low, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ExactDivisionError("only units have negative powers")
            inv = self.field.inv(self.coeffs[0])
            return LaurentPoly(self.field, (inv,), -self.low, self.var) ** (-k)
        result = LaurentPoly.one(self.field, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.field, self.coeffs, self.low + k, self.var)

    def scale(self, c) -> "LaurentPoly":
        c = self.field(c)
        return LaurentPoly(self.field, [x * c for x in self.coeffs], self.low, self.var)

    # Euclidean structure ---------------------------------------------------
    def __divmod__(self, other):
        """Euclidean division with respect to :meth:`span`.

        Returns ``(quo, rem)`` with ``self == quo*other + rem`` and
        ``rem.span() < other.span()``.
        """
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        field = self.field
        b = other.coeffs
        db = len(b) - 1
        if not self.coeffs:
            return self, self
        if db == 0:
            inv = field.inv(b[0])
            quo = LaurentPoly(field, [x * inv for x in self.coeffs], self.low - other.low, self.var)
            return quo, LaurentPoly(field, (), 0, self.var)
        a = list(self.coeffs)
        if len(a) <= db:
            return LaurentPoly(field, (), 0, self.var), self
        inv = field.inv(b[-1])
        quo = [field.zero] * (len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if c:
                c = c * inv
                quo[i - db] = c
                for j in range(db):
                    if b[j]:
                        a[i - db + j] = a[i - db + j] - c * b[j]
                a[i] = field.zero
        q = LaurentPoly(field, quo, self.low - other.low, self.var)
        r = LaurentPoly(field, a[:db], self.low, self.var)
        return q, r

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "LaurentPoly") -> bool:
        """True when ``self`` divides ``other``."""
        return not (other % self)

    def exact_div(self, other) -> "LaurentPoly":
        q, r = divmod(self, other)
        if r:
            raise ExactDivisionError(f"{self} is not divisible by {other}")
        return q

    def normalize(self) -> "LaurentPoly":
        """Unit-normalized associate: lowest exponent 0 and monic."""
        if not self.coeffs:
            return self
        inv = self.field.inv(self.coeffs[-1])
        return LaurentPoly(self.field, [c * inv for c in self.coeffs], 0, self.var)

    def monic_part(self):
        """(normalized, unit) with ``self == unit * normalized``."""
        norm = self.normalize()
        unit = LaurentPoly(self.field, (self.coeffs[-1],), self.low, self.var)
        return norm, unit

    def evaluate(self, x):
        """Evaluate at a field element (x must be nonzero when low < 0)."""
        field = self.field
        x = field(x)
        acc = field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.low:
            acc = acc * (x ** self.low if self.low > 0 else field.inv(x) ** (-self.low))
        return acc

    def __call__(self, x):
        return self.evaluate(x)

    # text -------------------------------------------------------------------
    def to_string(self, symbol: str | None = None, coeff_symbol: str = "z") -> str:
        v = symbol or self.var
        if not self.coeffs:
            return "0"
        pieces = []
        for k, c in self.terms():
            mono = "" if k == 0 else (v if k == 1 else f"{v}^{k}")
            if isinstance(c, CycloElement) and not c.is_rational():
                cs = c.to_string(coeff_symbol)
                sign = "+"
                if sum(1 for x in c.num if x) > 1:
                    cs = f"({cs})"
                elif cs.startswith("-"):
                    sign, cs = "-", cs[1:]
                body = f"{cs}*{mono}" if mono else cs
                pieces.append((sign, body))
            else:
                c = c.coeffs[0] if isinstance(c, CycloElement) else c
                c = Fraction(c)
                sign = "-" if c < 0 else "+"
                a = abs(c)
                if mono:
                    body = mono if a == 1 else f"{_fmt_rational(a)}*{mono}"
                else:
                    body = _fmt_rational(a)
                pieces.append((sign, body))
        out = ""
        for i, (sign, body) in enumerate(pieces):
            if i == 0:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"LaurentPoly({self.field!r}, {self.to_string()!r})"


def xgcd(a: LaurentPoly, b: LaurentPoly):
    """Return (g, s, u) with ``s*a + u*b == g`` and g the normalized gcd."""
    field, var = a.field, a.var
    r0, r1 = a, b
    s0, s1 = LaurentPoly.one(field, var), LaurentPoly.zero(field, var)
    u0, u1 = LaurentPoly.zero(field, var), LaurentPoly.one(field, var)
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        u0, u1 = u1, u0 - quo * u1
    if not r0:
        return r0, s0, u0
    norm, unit = r0.monic_part()
    uinv = unit ** -1
    return norm, s0 * uinv, u0 * uinv


# ---------------------------------------------------------------------------
# bivariate Laurent polynomials over Q


class BivariatePoly:
    """Laurent polynomial in q and t over Q: a map (a, b) -> coefficient of q^a t^b."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self._hash = None

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c, a: int, b: int):
        return cls({(a, b): c})

    @classmethod
    def from_univariate(cls, p: LaurentPoly, var: str | None = None):
        var = var or p.var
        if var == "q":
            return cls({(k, 0): c for k, c in p.terms()})
        if var == "t":
            return cls({(0, k): c for k, c in p.terms()})
        raise ValueError(f"unknown variable {var!r}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, BivariatePoly):
            return self.terms == other.terms
        if isinstance(other, Rational):
            return self.terms == ({(0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, BivariatePoly):
            return other
        if isinstance(other, Rational):
            return BivariatePoly.constant(other)
        return NotImplemented

    def __neg__(self):
        return BivariatePoly({k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BivariatePoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
        return BivariatePoly(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return BivariatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ExactDivisionError("only monomials have negative powers")
            ((a, b), c), = self.terms.items()
            return BivariatePoly({(-a, -b): Fraction(1) / c}) ** (-k)
        result = BivariatePoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def is_zero(self) -> bool:
        return not self.terms

    def degree_in(self, var: str) -> tuple[int, int]:
        """(lowest, highest) exponent of var."""
        idx = 0 if var == "q" else 1
        exps = [k[idx] for k in self.terms]
        return (min(exps), max(exps)) if exps else (0, -1)

    def involves(self, var: str) -> bool:
        idx = 0 if var == "q" else 1
        return any(k[idx] for k in self.terms)

    def normalize(self):
        """(normalized, unit): divide by the monomial making the lowest term ``1*q^0 t^0``.

        The lowest term is taken in lexicographic order on (t-exponent, q-exponent).
        """
        if not self.terms:
            return self, BivariatePoly.constant(1)
        key = min(self.terms, key=lambda k: (k[1], k[0]))
        c = self.terms[key]
        a, b = key
        inv = Fraction(1) / c
        norm = BivariatePoly(
            {(x - a, y - b): v * inv for (x, y), v in self.terms.items()}
        )
        return norm, BivariatePoly.monomial(c, a, b)

    def exact_div(self, other: "BivariatePoly") -> "BivariatePoly":
        """Exact quotient; raises :class:`ExactDivisionError` if other does not divide self."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return BivariatePoly()
        # shift both into honest polynomials, then lex long division (t > q)
        a0 = min(k[0] for k in self.terms)
        b0 = min(k[1] for k in self.terms)
        a1 = min(k[0] for k in other.terms)
        b1 = min(k[1] for k in other.terms)
        num = {(x - a0, y - b0): v for (x, y), v in self.terms.items()}
        den = {(x - a1, y - b1): v for (x, y), v in other.terms.items()}
        lead = max(den, key=lambda k: (k[1], k[0]))
        lc = Fraction(den[lead])
        quo: dict = {}
        while num:
            top = max(num, key=lambda k: (k[1], k[0]))
            da, db = top[0] - lead[0], top[1] - lead[1]
            if da < 0 or db < 0:
                raise ExactDivisionError("bivariate division is not exact")
            c = num[top] / lc
            quo[(da, db)] = c
            for (x, y), v in den.items():
                k = (x + da, y + db)
                nv = num.get(k, 0) - c * v
                if nv:
                    num[k] = nv
                else:
                    num.pop(k, None)
        shift_a, shift_b = a0 - a1, b0 - b1
        return BivariatePoly({(x + shift_a, y + shift_b): v for (x, y), v in quo.items()})

    def substitute(self, q=None, t=None):
        """See :func:`specialize`."""
        return specialize(self, q, t)

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda k: (k[1], k[0]))

        def mono(a, b):
            parts = []
            if a:
                parts.append("q" if a == 1 else f"q^{a}")
            if b:
                parts.append("t" if b == 1 else f"t^{b}")
            return "*".join(parts)

        return _join_terms((self.terms[k], mono(*k)) for k in keys)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"BivariatePoly({self.to_string()!r})"


Q_VAR = BivariatePoly.monomial(1, 1, 0)
T_VAR = BivariatePoly.monomial(1, 0, 1)
ONE = BivariatePoly.constant(1)


def parse_bivariate(text: str) -> BivariatePoly:
    """Parse ``"3*q^-2*t^5 - q + 1/2"``-style text into a BivariatePoly."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    # split into signed terms; '^-' belongs to the exponent
    terms = []
    cur = ""
    for i, ch in enumerate(s):
        if ch in "+-" and cur and not cur.endswith("^"):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    out: dict = {}
    for term in terms:
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ValueError(f"malformed polynomial text {text!r}")
        coeff = Fraction(sign)
        a = b = 0
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"malformed polynomial text {text!r}")
            if factor[0] in "qt":
                var, _, exp = factor.partition("^")
                if var not in ("q", "t"):
                    raise ValueError(f"unknown symbol in {factor!r}")
                e = int(exp) if exp else 1
                if var == "q":
                    a += e
                else:
                    b += e
            else:
                coeff *= Fraction(factor)
        out[(a, b)] = out.get((a, b), 0) + coeff
    return BivariatePoly(out)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and q-analogs (all in Q[q^+-1], variable "q")


def _qpoly(coeffs, low=0) -> LaurentPoly:
    return LaurentPoly(QQ, coeffs, low, "q")


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> LaurentPoly:
    """The m-th cyclotomic polynomial Phi_m(q)."""
    if m < 1:
        raise ValueError("cyclotomic(m) needs m >= 1")
    return _qpoly(_cyclotomic_coeffs(m))


@lru_cache(maxsize=None)
def q_analog(m: int) -> LaurentPoly:
    """[m]_q = 1 + q + ... + q^(m-1)."""
    if m < 0:
        raise ValueError("q_analog needs m >= 0")
    return _qpoly([1] * m)


@lru_cache(maxsize=None)
def q_factorial(m: int) -> LaurentPoly:
    if m < 0:
        raise ValueError("q_factorial needs m >= 0")
    if m == 0:
        return _qpoly([1])
    return q_factorial(m - 1) * q_analog(m)


@lru_cache(maxsize=None)
def q_binomial(m: int, i: int) -> LaurentPoly:
    """Gaussian binomial [m choose i]_q, by exact division of q-factorials."""
    if not 0 <= i <= m:
        raise ValueError(f"q_binomial({m}, {i}): need 0 <= i <= m")
    return q_factorial(m).exact_div(q_factorial(i) * q_factorial(m - i))


def _as_bivariate_q(p: LaurentPoly) -> BivariatePoly:
    return BivariatePoly.from_univariate(p, "q")


@lru_cache(maxsize=None)
def _one_plus_tq(j: int) -> BivariatePoly:
    return BivariatePoly({(0, 0): 1, (j, 1): 1})


@lru_cache(maxsize=None)
def qt_even(m: int) -> BivariatePoly:
    """[2m]_{q,t} = [m]_q (1 + t q^(m-1))."""
    if m < 1:
        raise ValueError("qt_even needs m >= 1")
    return _as_bivariate_q(q_analog(m)) * _one_plus_tq(m - 1)


@lru_cache(maxsize=None)
def qt_double_factorial(m: int) -> BivariatePoly:
    """[2m]_{q,t}!! = prod_{i=1}^m [2i]_{q,t}."""
    if m < 0:
        raise ValueError("qt_double_factorial needs m >= 0")
    if m == 0:
        return ONE
    return qt_double_factorial(m - 1) * qt_even(m)


@lru_cache(maxsize=None)
def qt_primed_binomial_product(m: int, i: int) -> BivariatePoly:
    """[m choose i]_q * prod_{j=i}^{m-1} (1 + t q^j)."""
    if not 0 <= i <= m:
        raise ValueError(f"qt_primed_binomial({m}, {i}): need 0 <= i <= m")
    out = _as_bivariate_q(q_binomial(m, i))
    for j in range(i, m):
        out = out * _one_plus_tq(j)
    return out


@lru_cache(maxsize=None)
def qt_primed_binomial(m: int, i: int) -> BivariatePoly:
    """Primed (q,t)-binomial [2m]!! / ([2i]!! [m-i]_q!), cross-checked against the product form."""
    if not 0 <= i <= m:
        raise ValueError(f"qt_primed_binomial({m}, {i}): need 0 <= i <= m")
    den = qt_double_factorial(i) * _as_bivariate_q(q_factorial(m - i))
    quo = qt_double_factorial(m).exact_div(den)
    prod = qt_primed_binomial_product(m, i)
    if quo != prod:  # pragma: no cover - would mean a transcription bug
        raise ArithmeticError(f"primed binomial ({m}, {i}): quotient and product forms differ")
    return quo


# ---------------------------------------------------------------------------
# reductions and specializations


def reduce_mod_cyclotomic(p: BivariatePoly, m: int) -> LaurentPoly:
    """Image of p under q -> z in K_m[t^+-1]."""
    field = cyclotomic_field(m)
    by_t: dict[int, dict[int, object]] = {}
    for (a, b), c in p.terms.items():
        by_t.setdefault(b, {})[a] = c
    coeffs = {}
    for b, qpart in by_t.items():
        acc = field.zero
        for a, c in qpart.items():
            acc = acc + field.zeta_power(a) * c
        if acc:
            coeffs[b] = acc
    return LaurentPoly.from_dict(field, coeffs, "t")


def specialize(p: BivariatePoly, q=None, t=None):
    """Substitute rational values for q and/or t.

    Returns a rational when both are given, else a LaurentPoly in the
    remaining variable.  Substituted values must be nonzero (they are units).
    """
    if q is not None and not q:
        raise ValueError("cannot specialize q to 0: q is a unit")
    if t is not None and not t:
        raise ValueError("cannot specialize t to 0: t is a unit")
    if q is None and t is None:
        raise ValueError("specialize needs at least one value")

    def power(x, e):
        x = Fraction(x)
        return x**e

    if q is not None and t is not None:
        return sum((c * power(q, a) * power(t, b) for (a, b), c in p.terms.items()), Fraction(0))
    out: dict[int, object] = {}
    if q is not None:
        for (a, b), c in p.terms.items():
            out[b] = out.get(b, 0) + c * power(q, a)
        return LaurentPoly.from_dict(QQ, out, "t")
    for (a, b), c in p.terms.items():
        out[a] = out.get(a, 0) + c * power(t, b)
    return LaurentPoly.from_dict(QQ, out, "q")
