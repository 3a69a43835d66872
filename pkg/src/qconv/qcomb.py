"""q-Pochhammer symbols and Gaussian polynomials as exact polynomials in q."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import IntPoly, RationalFunc, ZPoly, as_rational

__all__ = [
    "QBinomTable",
    "q_pochhammer",
    "q_binomial",
    "q_binomial_product",
    "qbinom_table",
    "q_binomial_theorem_check",
]

Z = "z"


def q_pochhammer(z_spec, qpow, n):
    """(z; q**qpow)_n = prod_{j<n} (1 - z q**(qpow*j)).

    ``z_spec`` may be an int, Fraction, IntPoly or RationalFunc in q, or the
    string ``"z"`` for a symbolic z (the result is then a ZPoly in z).
    Rational inputs give a RationalFunc, polynomial inputs an IntPoly.
    """
    if n < 0:
        raise ValueError("q-Pochhammer index must be nonnegative")
    if qpow < 0:
        raise ValueError("q-Pochhammer base exponent must be nonnegative")
    if isinstance(z_spec, str):
        if z_spec != Z:
            raise ValueError(f"unknown symbol {z_spec!r}")
        out = ZPoly([IntPoly.constant(1)])
        for j in range(n):
            out = out * ZPoly([IntPoly.constant(1), -IntPoly.monomial(qpow * j)])
        return out
    if isinstance(z_spec, (Fraction, RationalFunc)) and not (
        isinstance(z_spec, Fraction) and z_spec.denominator == 1
    ):
        z = as_rational(z_spec)
        out = as_rational(1)
        for j in range(n):
            out = out * (1 - z * IntPoly.monomial(qpow * j))
        return out
    if isinstance(z_spec, Fraction):
        z_spec = z_spec.numerator
    z = z_spec if isinstance(z_spec, IntPoly) else IntPoly.constant(z_spec)
    out = IntPoly.constant(1)
    for j in range(n):
        out = out * (1 - z.shift(qpow * j))
    return out


@lru_cache(maxsize=None)
def _qbinom(n, m, b):
    if m < 0 or m > n:
        return IntPoly()
    if m == 0 or m == n:
        return IntPoly.constant(1)
    if m > n - m:
        return _qbinom(n, n - m, b)
    return _qbinom(n - 1, m - 1, b) + _qbinom(n - 1, m, b).shift(b * m)


def q_binomial(n, m, qpow=1):
    """Gaussian polynomial [n m] in q**qpow; zero outside 0 <= m <= n."""
    if n < 0 or m < 0 or m > n:
        return IntPoly()
    return _qbinom(n, m, qpow)


def q_binomial_product(n, m, qpow=1):
    """[n m] from the Pochhammer quotient (q;q)_n / ((q;q)_m (q;q)_{n-m})."""
    if n < 0 or m < 0 or m > n:
        return IntPoly()
    q = IntPoly.monomial(qpow)
    top = q_pochhammer(q, qpow, n)
    bottom = q_pochhammer(q, qpow, m) * q_pochhammer(q, qpow, n - m)
    r = RationalFunc(top, bottom)
    if not r.is_polynomial():
        raise ArithmeticError("q-binomial quotient is not a polynomial")
    return r.num


class QBinomTable:
    """Immutable triangle of [n m]_{q^b} for 0 <= m <= n <= max_n.

    ``recurrence`` selects which of the two Pascal-type rules builds it:
    1 uses [n m] = [n-1 m-1] + q^{bm} [n-1 m],
    2 uses [n m] = [n-1 m] + q^{b(n-m)} [n-1 m-1].
    """

    def __init__(self, qpow, max_n, recurrence=1):
        if max_n < 0:
            raise ValueError("max_n must be nonnegative")
        self.qpow = qpow
        self.max_n = max_n
        self.recurrence = recurrence
        one = IntPoly.constant(1)
        rows = [(one,)]
        for n in range(1, max_n + 1):
            prev = rows[-1]
            row = [one]
            for m in range(1, n):
                if recurrence == 1:
                    e = prev[m - 1] + prev[m].shift(qpow * m)
                elif recurrence == 2:
                    e = prev[m] + prev[m - 1].shift(qpow * (n - m))
                else:
                    raise ValueError("recurrence must be 1 or 2")
                row.append(e)
            row.append(one)
            rows.append(tuple(row))
        self._rows = tuple(rows)

    def entry(self, n, m):
        if m < 0 or m > n:
            return IntPoly()
        if n > self.max_n:
            raise IndexError(f"row {n} beyond table size {self.max_n}")
        return self._rows[n][m]

    def __getitem__(self, nm):
        return self.entry(*nm)

    def row(self, n):
        return self._rows[n]

    def __eq__(self, other):
        if not isinstance(other, QBinomTable):
            return NotImplemented
        return self.qpow == other.qpow and self._rows == other._rows


@lru_cache(maxsize=32)
def qbinom_table(qpow, max_n, recurrence=1):
    return QBinomTable(qpow, max_n, recurrence)


def q_binomial_theorem_check(n, qpow=1):
    """Check (z; q^b)_n == sum_i [n i]_{q^b} q^{b*C(i,2)} (-z)^i coefficientwise."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    lhs = q_pochhammer(Z, qpow, n)
    rhs = ZPoly(
        [
            q_binomial(n, i, qpow).shift(qpow * i * (i - 1) // 2) * (-1) ** i
            for i in range(n + 1)
        ]
    )
    return lhs == rhs
