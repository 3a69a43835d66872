"""Integer sequences generated from the square-series convergents.

r_p(n), sigma_1(n) and p(n) come out of exact q-series built from
Conv_h(q, q^2) and from unilateral series for the Euler product.  Every
generator has an independent brute-force oracle alongside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .algebra import IntPoly, RationalFunc, ZPoly, ZSeries, parse_poly, series_from_rational
from .jfraction import convergent
from .qcomb import q_binomial, q_pochhammer

__all__ = [
    "IntSequenceTable",
    "ThetaConvergent",
    "WindowError",
    "min_h_for",
    "theta3_series",
    "theta3_tilde",
    "rp_generating_series",
    "rp_oracle",
    "rp_congruence_series",
    "CONGRUENCE_FIXTURES",
    "sigma1_odd",
    "sigma1_full",
    "divisor_sum",
    "euler_product_series",
    "euler_product_oracle",
    "partition_series",
    "partition_oracle",
]


class WindowError(ValueError):
    """Requested order lies outside the range a convergent is exact on."""


@dataclass(frozen=True)
class IntSequenceTable:
    """values[k] is the sequence at index start + k*step."""

    name: str
    values: tuple
    provenance: str
    start: int = 0
    step: int = 1

    def __getitem__(self, n):
        k, r = divmod(n - self.start, self.step)
        if r or k < 0 or k >= len(self.values):
            raise KeyError(n)
        return self.values[k]

    @property
    def indices(self):
        return [self.start + k * self.step for k in range(len(self.values))]

    def as_dict(self):
        return {
            "name": self.name,
            "values": [str(v) for v in self.values],
            "indices": self.indices,
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class ThetaConvergent:
    """q-expansion of 1 + 2q Conv_h(q, q^2) through q^order."""

    h: int
    series: ZSeries


def min_h_for(n):
    """Smallest h with n <= (2h-1)^2."""
    h = 1
    while (2 * h - 1) ** 2 < n:
        h += 1
    return h


def _check_window(h, n):
    if n > (2 * h - 1) ** 2:
        raise WindowError(
            f"order {n} exceeds the window (2h-1)^2 = {(2 * h - 1) ** 2} of h={h}; "
            f"need h >= {min_h_for(n)}"
        )


def _qseries(num, den, order):
    """Integer q-series of num/den (IntPoly, den(0) = +-1) through q^order."""
    return series_from_rational(ZPoly(num.coeffs), ZPoly(den.coeffs), order, var="q")


def _conv_at_q2(h):
    p, qq = convergent(h).at(IntPoly.monomial(2))
    return p, qq


def theta3_series(h, order):
    """ThetaConvergent for depth h through q^order (no window check)."""
    p, qq = _conv_at_q2(h)
    s = _qseries(p, qq, order)
    return ThetaConvergent(h, 1 + 2 * s.shift(1))


def theta3_tilde(h):
    """1 + 2q Conv_h(q, q^2) as a reduced rational function in q."""
    if h < 1:
        raise ValueError("h must be at least 1")
    p, qq = _conv_at_q2(h)
    return RationalFunc(qq + p.shift(1) * 2, qq)


# ---------------------------------------------------------------------------
# Sums of squares
# ---------------------------------------------------------------------------


def rp_generating_series(p, n_max, h=None):
    """r_p(0..n_max) as [q^n] (1 + 2q Conv_h(q, q^2))^p."""
    if p < 1:
        raise ValueError("p must be positive")
    if h is None:
        h = min_h_for(n_max)
    _check_window(h, n_max)
    theta = theta3_series(h, n_max).series
    values = tuple(theta**p)
    return IntSequenceTable(f"r_{p}", values, f"convergent h={h}, power {p}")


def rp_oracle(p, n):
    """Count integer vectors x in Z^p with |x|^2 = n by enumeration."""
    if p < 0 or n < 0:
        raise ValueError("p and n must be nonnegative")
    return _rp_count(p, n)


@lru_cache(maxsize=None)
def _rp_count(p, n):
    if p == 0:
        return 1 if n == 0 else 0
    total = 0
    r = math.isqrt(n)
    for x in range(-r, r + 1):
        total += _rp_count(p - 1, n - x * x)
    return total


# The reduced rational functions are transcribed exactly as published.
CONGRUENCE_FIXTURES = {
    3: {
        "limit": 36,
        "terms": [
            ("1 + 2*q + 2*q^2 + q^3", "1 + q + q^2 + q^3 + q^4 + q^5 + q^6"),
            ("2 + q + q^3 + 2*q^7 + 2*q^8 + 2*q^11 + q^12", "1 + 2*q^9 + 2*q^11 + q^14"),
        ],
    },
    4: {
        "limit": 64,
        "terms": [
            ("2*q^2", "1 + q^4"),
            (
                "2*q + 2*q^3 + 2*q^5 + 2*q^7 + 2*q^8 + 2*q^11 + 2*q^12 + 2*q^15"
                " + 2*q^16 + 2*q^17 + 2*q^18 + 2*q^19 + 2*q^22",
                "1 + q + q^3 + q^4 + q^6 + q^7 + q^8 + q^9 + 3*q^13 + 3*q^14 + 3*q^15"
                " + 3*q^16 + 3*q^17 + 3*q^18 + 3*q^19 + 3*q^20 + 3*q^21 + q^25 + q^26",
            ),
        ],
    },
}


def rp_congruence_series(modulus, p, n_max):
    """r_p(0..n_max) mod 3 or mod 4 from the reduced rational generating functions."""
    if modulus not in CONGRUENCE_FIXTURES:
        raise ValueError(f"unsupported modulus {modulus}; expected 3 or 4")
    fix = CONGRUENCE_FIXTURES[modulus]
    if n_max > fix["limit"]:
        raise WindowError(f"mod {modulus} congruence holds only for n <= {fix['limit']}")
    s = ZSeries([1], n_max, "q")
    for num, den in fix["terms"]:
        s = s + _qseries(parse_poly(num), parse_poly(den), n_max)
    s = s.map(lambda c: c % modulus)
    out = ZSeries([1], n_max, "q")
    base, e = s, p
    while e:
        if e & 1:
            out = (out * base).map(lambda c: c % modulus)
        e >>= 1
        if e:
            base = (base * base).map(lambda c: c % modulus)
    return IntSequenceTable(
        f"r_{p} mod {modulus}", tuple(out), f"reduced generating function mod {modulus}"
    )


# ---------------------------------------------------------------------------
# Divisor sums
# ---------------------------------------------------------------------------


def divisor_sum(n):
    """sigma_1(n) by trial division."""
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            total += d
            if d * d != n:
                total += n // d
    return total


def sigma1_odd(k_max, h=None):
    """sigma_1(2k+1), 0 <= k <= k_max, from (theta(q)^4 - theta(-q)^4) / 16."""
    n_max = 2 * k_max + 1
    if h is None:
        h = min_h_for(n_max)
    _check_window(h, n_max)
    s = theta3_series(h, n_max).series
    s_neg = ZSeries([-c if k % 2 else c for k, c in enumerate(s)], n_max, "q")
    diff = s**4 - s_neg**4
    values = []
    for n in range(1, n_max + 1, 2):
        v, r = divmod(diff[n], 16)
        if r:
            raise ArithmeticError(f"coefficient {n} not divisible by 16")
        values.append(v)
    return IntSequenceTable(
        "sigma1_odd", tuple(values), f"convergent h={h}, fourth powers", start=1, step=2
    )


def _pent_exponents(n_max):
    """(exponent, sign) pairs of (q;q)_inf through q^n_max, from the unilateral form."""
    out = []
    n = 0
    while True:
        e1 = (n + 1) * (3 * n + 2) // 2
        e2 = (n + 1) * (3 * n + 4) // 2
        if e1 > n_max:
            break
        sign = -((-1) ** n)
        out.append((e1, sign))
        if e2 <= n_max:
            out.append((e2, sign))
        n += 1
    return out


def _euler_jfraction(n_max):
    """(q;q)_inf through q^n_max from the two q^3-based J-fraction series."""
    total = ZSeries([1], n_max, "q")
    for lead, sign_exp, shift in ((1, -2, 2), (2, 2, 1)):
        # term_i numerator: (-1)^(i-1) q^((9i+sign_exp)(i-1)/2) (q^3;q^3)_(i-1)
        # denominator:      sum [i j]_{q^3}[i-1 n-j]_{q^3} q^(3j) q^((3i-shift) n)
        i = 1
        acc = ZSeries([0], n_max, "q")
        while True:
            e = (9 * i + sign_exp) * (i - 1) // 2
            if lead + e > n_max:
                break
            num = q_pochhammer(IntPoly.monomial(3), 3, i - 1).shift(e) * (-1) ** (i - 1)
            den = IntPoly()
            for n in range(2 * i):
                inner = IntPoly()
                for j in range(max(0, n - (i - 1)), min(n, i) + 1):
                    inner = inner + (q_binomial(i, j, 3) * q_binomial(i - 1, n - j, 3)).shift(3 * j)
                den = den + inner.shift((3 * i - shift) * n)
            acc = acc + _qseries(num, den, n_max)
            i += 1
        total = total - acc.shift(lead)
    return total


def euler_product_series(n_max, variant="pochhammer", method="unilateral"):
    """(q;q)_inf or (q;q)_inf^3 through q^n_max.

    ``method="unilateral"`` uses the pentagonal / triangular closed sums,
    ``method="jfraction"`` (pochhammer only) sums the convergent-derived
    q^3 series.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if variant == "pochhammer":
        if method == "jfraction":
            return _euler_jfraction(n_max)
        if method != "unilateral":
            raise ValueError(f"unknown method {method!r}")
        cs = [0] * (n_max + 1)
        cs[0] = 1
        for e, s in _pent_exponents(n_max):
            cs[e] += s
        return ZSeries(cs, n_max, "q")
    if variant == "cube":
        # 1 - q sum_n (-1)^n (2n+3) q^(n(n+3)/2)
        cs = [0] * (n_max + 1)
        cs[0] = 1
        n = 0
        while 1 + n * (n + 3) // 2 <= n_max:
            cs[1 + n * (n + 3) // 2] -= (-1) ** n * (2 * n + 3)
            n += 1
        return ZSeries(cs, n_max, "q")
    raise ValueError(f"unknown variant {variant!r}")


def euler_product_oracle(n_max, power=1):
    """prod_{j<=n_max} (1 - q^j)^power truncated to q^n_max."""
    s = ZSeries([1], n_max, "q")
    for j in range(1, n_max + 1):
        factor = ZSeries([1] + [0] * (j - 1) + [-1], n_max, "q")
        for _ in range(power):
            s = s * factor
    return s


def sigma1_full(n_max):
    """sigma_1(1..n_max) from -q d/dq log (q;q)_inf."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    e = euler_product_series(n_max)
    de = e.derivative()
    q_de = ZSeries([0] + list(de.coeffs), n_max, "q")
    s = -(q_de * e.inverse())
    return IntSequenceTable(
        "sigma1", tuple(s.coeffs[1:]), "logarithmic derivative of (q;q)_inf", start=1
    )


def partition_series(n_max):
    """p(0..n_max) as the reciprocal of (q;q)_inf."""
    inv = euler_product_series(n_max).inverse()
    return IntSequenceTable("partition", tuple(inv), "reciprocal of (q;q)_inf")


def partition_oracle(n_max):
    """p(0..n_max) by Euler's pentagonal recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p
