"""Exact univariate polynomial, rational-function and truncated power series
arithmetic in the indeterminates q and z.

All values are immutable.  ``IntPoly`` is a dense polynomial in q with big
integer coefficients, ``RationalFunc`` a reduced quotient of two of them,
``ZPoly`` a polynomial in z whose coefficients live in any of these rings and
``ZSeries`` a power series truncated at an explicit order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

import mpmath

__all__ = [
    "IntPoly",
    "RationalFunc",
    "ZPoly",
    "ZSeries",
    "poly_mul",
    "poly_gcd",
    "rational_reduce",
    "series_from_rational",
    "series_mul",
    "series_pow",
    "poly_eval_rational",
    "poly_eval_float",
    "parse_poly",
    "parse_rational",
    "as_rational",
]

# Below this operand length schoolbook multiplication beats packing.
KRONECKER_THRESHOLD = 24


def _trim(cs):
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _mul_schoolbook(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _offset(count, nbytes, half):
    return int.from_bytes(half.to_bytes(nbytes, "little") * count, "little")


def _mul_kronecker(a, b):
    """Multiply by packing both operands into single big integers.

    Each coefficient occupies a byte-aligned slot wide enough to hold any
    product coefficient in balanced (signed) form.
    """
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    half = 1 << (8 * nbytes - 1)

    def pack(cs):
        raw = b"".join((c + half).to_bytes(nbytes, "little") for c in cs)
        return int.from_bytes(raw, "little") - _offset(len(cs), nbytes, half)

    n_out = len(a) + len(b) - 1
    x = pack(a) * pack(b) + _offset(n_out, nbytes, half)
    raw = x.to_bytes(n_out * nbytes, "little")
    return [
        int.from_bytes(raw[k : k + nbytes], "little") - half
        for k in range(0, n_out * nbytes, nbytes)
    ]


class IntPoly:
    """Dense polynomial in q with exact integer coefficients (ascending)."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        self.coeffs = _trim([int(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs):
        obj = object.__new__(cls)
        obj.coeffs = _trim(coeffs)
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, k, c=1):
        if k < 0:
            raise ValueError("negative exponent in IntPoly monomial")
        return cls._raw([0] * k + [c]) if c else cls._raw([])

    @classmethod
    def constant(cls, c):
        return cls._raw([c])

    # -- structure -------------------------------------------------------
    @property
    def degree(self):
        """Index of the top coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def valuation(self):
        """Lowest exponent with a nonzero coefficient (None for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
            if g == 1:
                break
        return g

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        if g == 1:
            return self
        return IntPoly._raw([c // g for c in self.coeffs])

    # -- arithmetic ------------------------------------------------------
    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return IntPoly._raw([-c for c in self.coeffs])

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(other)
        elif not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(other)
        elif not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, int):
            return IntPoly.constant(other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return IntPoly._raw([])
            return IntPoly._raw([c * other for c in self.coeffs])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = IntPoly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        return RationalFunc(self, other)

    def __rtruediv__(self, other):
        return RationalFunc(other, self)

    def shift(self, k):
        """Multiply by q**k (k >= 0)."""
        if k < 0:
            raise ValueError("negative shift")
        if not self.coeffs or k == 0:
            return self
        return IntPoly._raw([0] * k + list(self.coeffs))

    def subs_power(self, b):
        """Substitute q -> q**b for an integer b >= 1."""
        if b == 1 or len(self.coeffs) <= 1:
            return self
        out = [0] * ((len(self.coeffs) - 1) * b + 1)
        for i, c in enumerate(self.coeffs):
            out[i * b] = c
        return IntPoly._raw(out)

    def subs_neg(self):
        """Substitute q -> -q."""
        return IntPoly._raw([-c if i & 1 else c for i, c in enumerate(self.coeffs)])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        if isinstance(other, RationalFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("IntPoly", self.coeffs))
        return self._hash

    # -- text ------------------------------------------------------------
    def __str__(self):
        return format_poly(self.coeffs, "q")

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)!r})"


def format_poly(coeffs, var="q"):
    """Canonical ascending text form, e.g. ``1 - q^3 - q^5 + q^8``."""
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def poly_mul(a, b):
    """Product of two IntPoly values."""
    x, y = a.coeffs, b.coeffs
    if not x or not y:
        return IntPoly._raw([])
    if min(len(x), len(y)) < KRONECKER_THRESHOLD:
        return IntPoly._raw(_mul_schoolbook(x, y))
    return IntPoly._raw(_mul_kronecker(x, y))


# ---------------------------------------------------------------------------
# Division and gcd over Z[q]
# ---------------------------------------------------------------------------


def poly_exact_div(a, b):
    """Return a / b, raising ValueError unless the quotient lies in Z[q]."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return a
    r = list(a.coeffs)
    db, lb = b.degree, b.lead
    bc = b.coeffs
    dq = len(r) - 1 - db
    if dq < 0:
        raise ValueError("inexact polynomial division")
    quot = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        top = r[k + db]
        if top:
            t, rem = divmod(top, lb)
            if rem:
                raise ValueError("inexact polynomial division")
            quot[k] = t
            for i, c in enumerate(bc):
                r[k + i] -= t * c
    if any(r[:db]):
        raise ValueError("inexact polynomial division")
    return IntPoly._raw(quot)


def _prem(a, b):
    """Pseudo-remainder of coefficient lists a by b (deg a >= deg b)."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and r:
        top = r[-1]
        shift = len(r) - 1 - db
        if lb in (1, -1):
            t = top * lb
            for i, c in enumerate(b):
                r[shift + i] -= t * c
        else:
            g = gcd(top, lb)
            mr, mb = lb // g, top // g
            r = [c * mr for c in r]
            for i, c in enumerate(b):
                r[shift + i] -= mb * c
        r = list(_trim(r))
    return r


def poly_gcd(a, b):
    """Primitive gcd in Z[q] (positive leading coefficient) by primitive PRS."""
    a, b = a.primitive(), b.primitive()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    # Common power of q first: cheap and very frequent here.
    v = min(a.valuation(), b.valuation())
    if v:
        a = IntPoly._raw(a.coeffs[v:])
        b = IntPoly._raw(b.coeffs[v:])
    if a.degree < b.degree:
        a, b = b, a
    x, y = a.coeffs, b.coeffs
    while y:
        if len(y) == 1:
            x = (1,)
            break
        r = _prem(x, y)
        x, y = y, IntPoly._raw(r).primitive().coeffs
    return IntPoly._raw(x).primitive().shift(v)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


def _coerce_poly(x):
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as IntPoly")


def rational_reduce(num, den):
    """Reduce num/den to lowest terms with a positive leading denominator coefficient."""
    num, den = _coerce_poly(num), _coerce_poly(den)
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return RationalFunc._make(num, IntPoly.constant(1))
    if den.degree > 0:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = poly_exact_div(num, g), poly_exact_div(den, g)
    c = gcd(num.content(), den.content())
    if den.lead < 0:
        c = -c
    if c != 1:
        num = IntPoly._raw([x // c for x in num.coeffs])
        den = IntPoly._raw([x // c for x in den.coeffs])
    return RationalFunc._make(num, den)


class RationalFunc:
    """Element of Q(q) stored as a reduced quotient of integer polynomials."""

    __slots__ = ("num", "den")

    def __new__(cls, num, den=1):
        if isinstance(num, RationalFunc) or isinstance(den, RationalFunc):
            return as_rational(num) / as_rational(den)
        if isinstance(num, Fraction) or isinstance(den, Fraction):
            return as_rational(num) / as_rational(den)
        return rational_reduce(num, den)

    @classmethod
    def _make(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.degree == 0 and self.den.lead == 1

    def __bool__(self):
        return not self.num.is_zero()

    def __neg__(self):
        return RationalFunc._make(-self.num, self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _maybe_rational(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return rational_reduce(self.num + other.num, self.den)
        return rational_reduce(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe_rational(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _maybe_rational(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _maybe_rational(other)
        if other is None:
            return NotImplemented
        return rational_reduce(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _maybe_rational(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        return rational_reduce(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _maybe_rational(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (1 / self) ** (-e)
        return RationalFunc._make(self.num**e, self.den**e)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("rational function has a pole at this point")
        n = self.num(x)
        if isinstance(n, int) and isinstance(d, int):
            return Fraction(n, d)
        return n / d

    def subs_power(self, b):
        return rational_reduce(self.num.subs_power(b), self.den.subs_power(b))

    def __eq__(self, other):
        other = _maybe_rational(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_polynomial():
            return hash(self.num)
        return hash(("RationalFunc", self.num.coeffs, self.den.coeffs))

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunc({self.num!r}, {self.den!r})"


def as_rational(x):
    """Promote int, Fraction, IntPoly or RationalFunc to RationalFunc."""
    r = _maybe_rational(x)
    if r is None:
        raise TypeError(f"cannot convert {type(x).__name__} to RationalFunc")
    return r


def _maybe_rational(x):
    if isinstance(x, RationalFunc):
        return x
    if isinstance(x, IntPoly):
        return RationalFunc._make(x, IntPoly.constant(1))
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return RationalFunc._make(IntPoly.constant(x), IntPoly.constant(1))
    if isinstance(x, Fraction):
        return RationalFunc._make(
            IntPoly.constant(x.numerator), IntPoly.constant(x.denominator)
        )
    return None


def _divide(a, b):
    """Exact quotient in the smallest ring that holds it."""
    if b == 1:
        return a
    if b == -1:
        return -a
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) / Fraction(b)
    return as_rational(a) / as_rational(b)


# ---------------------------------------------------------------------------
# Polynomials in z
# ---------------------------------------------------------------------------


class ZPoly:
    """Polynomial in z with coefficients in Z, Q, Z[q] or Q(q)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(list(coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if not isinstance(other, ZPoly):
            other = ZPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return ZPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ZPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, ZPoly):
            other = ZPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return ZPoly([other]) - self

    def __mul__(self, other):
        if not isinstance(other, ZPoly):
            return ZPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y == 0:
                    continue
                out[i + j] = out[i + j] + x * y
        return ZPoly(out)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by z**k."""
        if not self.coeffs:
            return self
        return ZPoly([0] * k + list(self.coeffs))

    def map(self, fn):
        return ZPoly([fn(c) for c in self.coeffs])

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, ZPoly):
            other = ZPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self[k] == other[k] for k in range(n))

    def __hash__(self):
        return hash(("ZPoly", self.coeffs))

    def __str__(self):
        return format_zpoly(self.coeffs, "z")

    def __repr__(self):
        return f"ZPoly({list(self.coeffs)!r})"


def _coeff_text(c):
    s = str(c)
    return s


def format_zpoly(coeffs, var="z"):
    """``1 + (-q^3 - q^5)*z + q^6*z^2`` style text for a polynomial in z."""
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        text = _coeff_text(c)
        simple = not any(op in text.lstrip("-") for op in (" + ", " - ", "/"))
        if k == 0:
            parts.append(text)
            continue
        mono = var if k == 1 else f"{var}^{k}"
        if text == "1":
            term = mono
        elif text == "-1":
            term = "-" + mono
        elif simple:
            term = f"{text}*{mono}"
        else:
            term = f"({text})*{mono}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-") and not p.startswith("-("):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------


class ZSeries:
    """Power series known through ``var**order``.

    The order is part of the value: binary operations require equal orders
    and only ``truncate`` lowers it.
    """

    __slots__ = ("order", "coeffs", "var")

    def __init__(self, coeffs, order=None, var="z"):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("series order must be nonnegative")
        if len(cs) > order + 1:
            raise ValueError("more coefficients than the truncation order allows")
        cs.extend([0] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs = tuple(cs)
        self.var = var

    def __getitem__(self, n):
        if n > self.order:
            raise IndexError(f"coefficient {n} lies beyond truncation order {self.order}")
        return self.coeffs[n]

    def __len__(self):
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other):
        if not isinstance(other, ZSeries):
            return ZSeries([other], self.order, self.var)
        if other.order != self.order:
            raise ValueError(
                f"series order mismatch: {self.order} vs {other.order}; truncate explicitly"
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        return ZSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.var)

    __radd__ = __add__

    def __neg__(self):
        return ZSeries([-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        other = self._check(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ZSeries):
            return ZSeries([c * other for c in self.coeffs], self.order, self.var)
        return series_mul(self, other)

    def __rmul__(self, other):
        return ZSeries([other * c for c in self.coeffs], self.order, self.var)

    def __pow__(self, p):
        return series_pow(self, p)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot raise the truncation order of a series")
        return ZSeries(self.coeffs[: order + 1], order, self.var)

    def shift(self, k):
        """Multiply by var**k, keeping the order."""
        cs = ([0] * k + list(self.coeffs))[: self.order + 1]
        return ZSeries(cs, self.order, self.var)

    def inverse(self):
        """Reciprocal series; the constant term must be invertible."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        out = [_divide(1, c0)]
        for n in range(1, self.order + 1):
            acc = 0
            for k in range(1, n + 1):
                ck = self.coeffs[k]
                if ck != 0:
                    acc = acc + ck * out[n - k]
            out.append(_divide(-acc, c0))
        return ZSeries(out, self.order, self.var)

    def __truediv__(self, other):
        if isinstance(other, ZSeries):
            return self * self._check(other).inverse()
        return ZSeries([_divide(c, other) for c in self.coeffs], self.order, self.var)

    def derivative(self):
        """Formal derivative; the result is known one order less."""
        if self.order == 0:
            raise ValueError("derivative of an order-0 series is unknown")
        return ZSeries(
            [k * self.coeffs[k] for k in range(1, self.order + 1)], self.order - 1, self.var
        )

    def map(self, fn):
        return ZSeries([fn(c) for c in self.coeffs], self.order, self.var)

    def __eq__(self, other):
        if not isinstance(other, ZSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __str__(self):
        return format_zpoly(self.coeffs, self.var) + f" + O({self.var}^{self.order + 1})"

    def __repr__(self):
        return f"ZSeries({list(self.coeffs)!r}, order={self.order}, var={self.var!r})"


def series_mul(s, t):
    """Cauchy product of two series of equal order."""
    t = s._check(t)
    n = s.order
    a, b = s.coeffs, t.coeffs
    if all(isinstance(c, int) for c in a) and all(isinstance(c, int) for c in b):
        prod = _mul_kronecker(a, b) if any(a) and any(b) else [0]
        prod = prod[: n + 1]
        return ZSeries(prod + [0] * (n + 1 - len(prod)), n, s.var)
    out = []
    for k in range(n + 1):
        acc = 0
        for i in range(k + 1):
            x, y = a[i], b[k - i]
            if x != 0 and y != 0:
                acc = acc + x * y
        out.append(acc)
    return ZSeries(out, n, s.var)


def series_pow(s, p):
    """s**p by repeated squaring of truncated products (p >= 0)."""
    if not isinstance(p, int) or p < 0:
        raise ValueError("series exponent must be a nonnegative integer")
    result = ZSeries([1], s.order, s.var)
    base = s
    while p:
        if p & 1:
            result = series_mul(result, base)
        p >>= 1
        if p:
            base = series_mul(base, base)
    return result


def series_from_rational(num, den, order, var="z"):
    """Expand num/den about z = 0 through z**order.

    ``num`` and ``den`` are ZPoly values (or anything with ``[]`` access and
    a ``degree``).  Uses the linear recurrence fixed by the denominator:
    f_n = (num_n - sum_{i>=1} den_i f_{n-i}) / den_0.
    """
    if not isinstance(num, ZPoly):
        num = ZPoly([num])
    if not isinstance(den, ZPoly):
        den = ZPoly([den])
    d0 = den[0]
    if d0 == 0:
        raise ZeroDivisionError("no power series at origin")
    dd = den.degree
    out = []
    for n in range(order + 1):
        acc = num[n]
        for i in range(1, min(n, dd) + 1):
            di = den[i]
            f = out[n - i]
            if di != 0 and f != 0:
                acc = acc - di * f
        out.append(_divide(acc, d0))
    return ZSeries(out, order, var)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def poly_eval_rational(p, x):
    """Exact Horner evaluation of an IntPoly at a rational point."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_eval_float(p, x):
    """Horner evaluation at an mpmath number, rounded to the working precision."""
    with mpmath.workprec(mpmath.mp.prec + 20 + 2 * max(p.degree, 0).bit_length()):
        acc = mpmath.mpf(0)
        for c in reversed(p.coeffs):
            acc = acc * x + c
    return +acc


# ---------------------------------------------------------------------------
# Parsing canonical text
# ---------------------------------------------------------------------------

_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)\s*\*?\s*)?(q(?:\s*\^\s*(\d+))?)?\s*"
)


def parse_poly(text, var="q"):
    """Parse canonical (or loosely formatted) polynomial text into an IntPoly."""
    src = text.replace(var, "q").replace("**", "^").strip()
    if not src:
        raise ValueError("empty polynomial text")
    coeffs = {}
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {src[pos:]!r}")
        sign, num, mono, exp = m.groups()
        if num is None and mono is None:
            raise ValueError(f"cannot parse polynomial near {src[pos:]!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator near {src[pos:]!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        k = 0 if mono is None else (int(exp) if exp is not None else 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
        first = False
    top = max(coeffs)
    return IntPoly([coeffs.get(k, 0) for k in range(top + 1)])


def parse_rational(text):
    """Parse ``(num)/(den)`` or bare polynomial text into a RationalFunc."""
    s = text.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", s)
    if m:
        return RationalFunc(parse_poly(m.group(1)), parse_poly(m.group(2)))
    if "/" in s:
        a, b = s.split("/", 1)
        return RationalFunc(parse_poly(a.strip("() ")), parse_poly(b.strip("() ")))
    return as_rational(parse_poly(s))
