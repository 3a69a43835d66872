"""Floating evaluation of Jacobi theta functions and of the geometric square
series J(q, z) = sum_n q^(n^2) z^n.

Three routes are provided: plain Fourier / unilateral sums, the convergent
derived q-series, and quadrature of a Gaussian integral representation.
Everything runs on mpmath at an explicit decimal precision.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

import mpmath as mp

from .quadrature import composite_gauss_legendre

__all__ = [
    "DEFAULT_DPS",
    "ThetaParams",
    "SeriesValue",
    "close",
    "theta_direct",
    "geometric_square_series",
    "jfraction_series",
    "theta_jfraction",
    "theta01_series",
    "theta01_direct",
    "ramanujan_f",
    "ramanujan_f_direct",
    "special_constants_check",
    "zeta_dirichlet",
    "mellin_zeta_check",
]

DEFAULT_DPS = 50


@contextmanager
def _precision(dps):
    if dps is None:
        dps = DEFAULT_DPS
    if dps < 15:
        raise ValueError("precision must be at least 15 digits")
    with mp.workdps(dps):
        yield dps


def close(a, b, tol):
    """Absolute comparison with an explicit tolerance."""
    return abs(mp.mpmathify(a) - mp.mpmathify(b)) <= tol


def _nome(q):
    q = mp.mpmathify(q)
    if not abs(q) < 1:
        raise ValueError(f"nome must satisfy |q| < 1, got {q}")
    return q


def _real_if(x, real):
    return mp.re(x) if real else x


@dataclass(frozen=True)
class ThetaParams:
    family: int
    u: object
    q: object

    def __post_init__(self):
        if self.family not in (1, 2, 3, 4):
            raise ValueError(f"theta family must be 1..4, got {self.family}")
        _nome(self.q)
        if mp.im(mp.mpmathify(self.u)) != 0:
            raise ValueError("u must be real")


@dataclass(frozen=True)
class SeriesValue:
    value: object
    tail_bound: object
    terms: int
    method: str
    dps: int

    def as_dict(self):
        return {
            "value": mp.nstr(self.value, self.dps),
            "tail_bound": mp.nstr(self.tail_bound, 5),
            "terms": self.terms,
            "method": self.method,
            "precision": self.dps,
        }


# ---------------------------------------------------------------------------
# Direct sums
# ---------------------------------------------------------------------------


def _theta_tail(family, aq, T):
    """Bound on the dropped part of the unilateral sum after T terms."""
    if family in (3, 4):
        return 2 * aq ** (T * T) / (1 - aq)
    return 2 * aq ** mp.mpf(0.25) * aq ** (T * (T + 1)) / (1 - aq)


def _auto_terms(family, aq, dps):
    if aq == 0:
        return 1
    target = mp.mpf(10) ** (-dps - 5)
    T = 1
    while _theta_tail(family, aq, T) > target:
        T += 1
    return T


def theta_direct(params, terms=None, dps=None):
    """Truncated Fourier sum with T = ``terms`` terms and its tail bound.

    theta_1 = 2 q^(1/4) sum_{n<T} (-1)^n q^(n(n+1)) sin((2n+1)u)
    theta_2 = 2 q^(1/4) sum_{n<T} q^(n(n+1)) cos((2n+1)u)
    theta_3 = 1 + 2 sum_{1<=n<T} q^(n^2) cos(2nu)
    theta_4 = 1 + 2 sum_{1<=n<T} (-1)^n q^(n^2) cos(2nu)
    """
    if terms is not None and terms < 1:
        raise ValueError("terms must be at least 1")
    with _precision(dps) as d:
        q = _nome(params.q)
        u = mp.mpmathify(params.u)
        aq = abs(q)
        T = terms if terms is not None else _auto_terms(params.family, aq, d)
        fam = params.family
        if fam in (1, 2):
            trig = mp.sin if fam == 1 else mp.cos
            s = mp.fsum(
                (-1 if fam == 1 and n % 2 else 1) * q ** (n * (n + 1)) * trig((2 * n + 1) * u)
                for n in range(T)
            )
            value = 2 * mp.power(q, mp.mpf(0.25)) * s if q != 0 else mp.mpf(0)
        else:
            sgn = -1 if fam == 4 else 1
            s = mp.fsum(sgn**n * q ** (n * n) * mp.cos(2 * n * u) for n in range(1, T))
            value = 1 + 2 * s
        return SeriesValue(+value, +_theta_tail(fam, aq, T), T, "direct", d)


def _gss_direct(q, z, tol):
    total = mp.mpf(1)
    n = 1
    aq, az = abs(q), abs(z)
    while True:
        term = q ** (n * n) * z**n
        total += term
        # the remaining terms are dominated by a geometric series in |q|^(2n+1)|z|
        ratio = aq ** (2 * n + 1) * az
        if ratio < 1 and abs(term) * ratio / (1 - ratio) < tol:
            return total
        n += 1


# ---------------------------------------------------------------------------
# Convergent-derived series
# ---------------------------------------------------------------------------


def _qbinom_rows(base, n_max):
    """Floating Gaussian binomials [n m]_base for n <= n_max."""
    rows = [[mp.mpf(1)]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [mp.mpf(1)]
        for m in range(1, n):
            row.append(prev[m - 1] + base**m * prev[m])
        row.append(mp.mpf(1))
        rows.append(row)
    return rows


def _square_terms(base, numer, ratio, i_max, with_derivative=False):
    """Yield (f_i, g_i[, f_i', g_i']) for the finite-sum series.

    f_i = (-1)^(i-1) numer(i) (base;base)_(i-1)
    g_i = sum_{n<2i} sum_j [i j][i-1 n-j] base^j (-ratio(i))^n
    where every q-binomial is in ``base``.  ``numer`` and ``ratio`` return
    the pair (value, derivative in z) when ``with_derivative`` is set.
    """
    rows = _qbinom_rows(base, i_max)
    poch = mp.mpf(1)
    for i in range(1, i_max + 1):
        if i > 1:
            poch *= 1 - base ** (i - 1)
        conv = []
        for n in range(2 * i):
            conv.append(
                mp.fsum(
                    rows[i][j] * rows[i - 1][n - j] * base**j
                    for j in range(max(0, n - (i - 1)), min(n, i) + 1)
                )
            )
        sign = -1 if i % 2 == 0 else 1
        if not with_derivative:
            r = -ratio(i)
            yield sign * numer(i) * poch, mp.polyval(conv[::-1], r)
            continue
        (nv, nd), (rv, rd) = numer(i), ratio(i)
        r = -rv
        g = mp.polyval(conv[::-1], r)
        dg = -rd * mp.polyval([n * c for n, c in enumerate(conv)][:0:-1], r)
        yield sign * nv * poch, g, sign * nd * poch, dg


def jfraction_series(q, z, i_max=12, dps=None):
    """J(q, z) from the convergent finite sum, truncated after i_max terms.

    sum_i (-1)^(i-1) q^((3i-4)(i-1)) (q^2;q^2)_(i-1) z^(2i-2) / g_i(q, z)
    """
    if i_max < 1:
        raise ValueError("i_max must be at least 1")
    with _precision(dps):
        q = _nome(q)
        z = mp.mpmathify(z)
        if q == 0:
            return mp.mpf(1)
        terms = _square_terms(
            q * q,
            lambda i: q ** ((3 * i - 4) * (i - 1)) * z ** (2 * i - 2),
            lambda i: q ** (2 * i - 3) * z,
            i_max,
        )
        return +mp.fsum(f / g for f, g in terms)


def _gss_quadrature(q, z, tol):
    # J(q,z) = sqrt(2/pi) int_0^inf e^(-t^2/2) (1 - z cos(at)) / (1 - 2z cos(at) + z^2) dt,
    # a = sqrt(-2 log q), from q^(n^2) = E[cos(n a t)] under a Gaussian weight.
    a = mp.sqrt(-2 * mp.log(q))
    digits = max(1, -int(mp.floor(mp.log10(tol)))) + 2
    t_max = mp.sqrt(2 * digits * mp.log(10))
    c = mp.sqrt(2 / mp.pi)

    def f(t):
        ct = mp.cos(a * t)
        return c * mp.exp(-t * t / 2) * (1 - z * ct) / (1 - 2 * z * ct + z * z)

    return composite_gauss_legendre(f, 0, t_max, tol / 10).value


def geometric_square_series(q, z, mode="direct", i_max=12, tol=None, dps=None):
    """J(q, z) = sum_n q^(n^2) z^n by direct summation, the convergent
    series, or quadrature (real 0 < q < 1 only)."""
    with _precision(dps) as d:
        q = _nome(q)
        z = mp.mpmathify(z)
        if not abs(z) < 1:
            raise ValueError(f"need |z| < 1, got {z}")
        if tol is None:
            tol = mp.mpf(10) ** (-d - 5) if mode != "quadrature" else mp.mpf(10) ** -15
        if mode == "direct":
            return +_gss_direct(q, z, tol)
        if mode == "jfraction_series":
            return jfraction_series(q, z, i_max)
        if mode == "quadrature":
            if mp.im(q) != 0 or mp.im(z) != 0 or not 0 < q < 1:
                raise ValueError("quadrature needs real 0 < q < 1 and real z")
            if z == 0:
                return mp.mpf(1)
            return +_gss_quadrature(mp.re(q), mp.re(z), mp.mpf(tol))
        raise ValueError(f"unknown mode {mode!r}")


def theta_jfraction(params, i_max=12, dps=None):
    """Theta functions through J(q, .) summed over b = +-1.

    theta_3 = 1 + sum_b q w J(q, q^2 w)          w = e^(2ibu)
    theta_4 = 1 - sum_b q w J(q, -q^2 w)
    theta_2 = q^(1/4) sum_b e^(ibu) J(q, q w)
    theta_1 = q^(1/4) sum_b e^(ibu)/(bi) J(q, -q w)
    """
    with _precision(dps):
        q = _nome(params.q)
        u = mp.mpmathify(params.u)
        real = mp.im(q) == 0
        fam = params.family
        if q == 0:
            return mp.mpf(1) if fam in (3, 4) else mp.mpf(0)
        total = mp.mpf(0)
        for b in (1, -1):
            e1 = mp.expj(b * u)
            w = e1 * e1
            if fam == 3:
                total += q * w * jfraction_series(q, q * q * w, i_max)
            elif fam == 4:
                total -= q * w * jfraction_series(q, -q * q * w, i_max)
            elif fam == 2:
                total += e1 * jfraction_series(q, q * w, i_max)
            else:
                total += e1 / (b * mp.j) * jfraction_series(q, -q * w, i_max)
        if fam in (3, 4):
            return _real_if(1 + total, real)
        return _real_if(mp.power(q, mp.mpf(0.25)) * total, real)


# ---------------------------------------------------------------------------
# Weighted square series and Ramanujan's f(a, b)
# ---------------------------------------------------------------------------


def theta01_series(a, b, q, z, i_max=12, dps=None):
    """sum_n (an + b) q^(n^2) z^n as a z sum_i (f_i' g_i - f_i g_i')/g_i^2 + b J(q, z)."""
    with _precision(dps):
        q = _nome(q)
        z = mp.mpmathify(z)
        a, b = mp.mpmathify(a), mp.mpmathify(b)
        if not abs(z) < 1:
            raise ValueError(f"need |z| < 1, got {z}")
        if q == 0:
            return b

        def numer(i):
            e = q ** ((3 * i - 4) * (i - 1))
            if i == 1:
                return e, mp.mpf(0)
            return e * z ** (2 * i - 2), e * (2 * i - 2) * z ** (2 * i - 3)

        def ratio(i):
            r = q ** (2 * i - 3)
            return r * z, r

        deriv = mp.mpf(0)
        value = mp.mpf(0)
        for f, g, df, dg in _square_terms(q * q, numer, ratio, i_max, with_derivative=True):
            deriv += (df * g - f * dg) / (g * g)
            value += f / g
        return +(a * z * deriv + b * value)


def theta01_direct(a, b, q, z, dps=None):
    with _precision(dps) as d:
        q = _nome(q)
        z = mp.mpmathify(z)
        tol = mp.mpf(10) ** (-d - 5)
        total = mp.mpmathify(b)
        n = 1
        while True:
            term = (a * n + b) * q ** (n * n) * z**n
            total += term
            if abs(q) ** (2 * n + 1) * abs(z) < mp.mpf("0.5") and abs(term) < tol:
                return +total
            n += 1


def ramanujan_f(a, b, i_max=12, dps=None):
    """f(a, b) = 1 + sum_{c in (a, b)} c * S(c) where, with Q = ab,

    S(c) = sum_i (-1)^(i-1) Q^((3i-2)(i-1)/2) (Q;Q)_(i-1) c^(2i-2) / g_i
    g_i  = sum_{n<2i} sum_j [i j]_Q [i-1 n-j]_Q Q^j (-Q^(i-1) c)^n
    """
    with _precision(dps):
        a, b = mp.mpmathify(a), mp.mpmathify(b)
        if a == 0 or b == 0:
            raise ValueError("a and b must be nonzero")
        ab = a * b
        if not abs(ab) < 1:
            raise ValueError(f"need |ab| < 1, got {ab}")
        total = mp.mpf(1)
        for c in (a, b):
            terms = _square_terms(
                ab,
                lambda i, c=c: ab ** ((3 * i - 2) * (i - 1) // 2) * c ** (2 * i - 2),
                lambda i, c=c: ab ** (i - 1) * c,
                i_max,
            )
            total += c * mp.fsum(f / g for f, g in terms)
        return +total


def ramanujan_f_direct(a, b, dps=None):
    """1 + sum_{n>=1} (a^(n(n+1)/2) b^(n(n-1)/2) + a^(n(n-1)/2) b^(n(n+1)/2))."""
    with _precision(dps) as d:
        a, b = mp.mpmathify(a), mp.mpmathify(b)
        if not abs(a * b) < 1:
            raise ValueError("need |ab| < 1")
        tol = mp.mpf(10) ** (-d - 5)
        total = mp.mpf(1)
        n = 1
        while True:
            t = a ** (n * (n + 1) // 2) * b ** (n * (n - 1) // 2)
            t += a ** (n * (n - 1) // 2) * b ** (n * (n + 1) // 2)
            total += t
            if n > 3 and abs(t) < tol:
                return +total
            n += 1


# ---------------------------------------------------------------------------
# Closed-form checks
# ---------------------------------------------------------------------------


def special_constants_check(dps=60, report_digits=40):
    """Evaluate both sides of the two classical evaluations at e^(-5pi) and
    e^(-pi/2), plus a convergent-series cross-check, and report the gaps."""
    tol = mp.mpf(10) ** -report_digits
    with _precision(dps):
        K = mp.pi ** mp.mpf(0.25) / mp.gamma(mp.mpf(3) / 4)
        q3 = mp.exp(-5 * mp.pi)
        lhs3 = theta_direct(ThetaParams(3, 0, q3)).value
        rhs3 = K * mp.sqrt(5 + 2 * mp.sqrt(5)) / mp.power(5, mp.mpf(3) / 4)
        ser3 = theta_jfraction(ThetaParams(3, 0, q3), i_max=8)

        q2 = mp.exp(-mp.pi / 2)
        lhs2 = mp.exp(mp.pi / 8) / 2 * theta_direct(ThetaParams(2, 0, q2)).value
        rhs2 = K * mp.power(mp.sqrt(2) + 1, mp.mpf(0.25)) * mp.exp(mp.pi / 16)
        rhs2 /= mp.power(2, mp.mpf(7) / 16)

        rows = {
            "theta3_e^-5pi": (lhs3, rhs3),
            "theta2_e^-pi/2": (lhs2, rhs2),
            "theta3_series_vs_direct": (ser3, lhs3),
        }
        report = {}
        for name, (lhs, rhs) in rows.items():
            diff = abs(lhs - rhs)
            report[name] = {
                "lhs": mp.nstr(lhs, report_digits),
                "rhs": mp.nstr(rhs, report_digits),
                "abs_diff": mp.nstr(diff, 5),
                "ok": bool(diff <= tol),
            }
        report["ok"] = all(v["ok"] for v in report.values())
        report["precision"] = dps
        return report


def zeta_dirichlet(s, N=30, m=20):
    """zeta(s) for real s > 1 from a partial Dirichlet sum with an
    Euler-Maclaurin tail."""
    s = mp.mpmathify(s)
    if not s > 1:
        raise ValueError("Dirichlet series needs s > 1")
    head = mp.fsum(mp.power(n, -s) for n in range(1, N))
    Nf = mp.mpf(N)
    tail = Nf ** (1 - s) / (s - 1) + Nf**-s / 2
    rising = s  # s (s+1) ... (s+2k-2)
    for k in range(1, m + 1):
        tail += mp.bernoulli(2 * k) / mp.factorial(2 * k) * rising * Nf ** (-s - 2 * k + 1)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return head + tail


def _theta2_gauss(x):
    """theta_2(e^(-pi x^2)) for x > 0, switching to the imaginary
    transformation x^-1 theta_4(e^(-pi/x^2)) below x = 1."""
    if x >= 1:
        return theta_direct(ThetaParams(2, 0, mp.exp(-mp.pi * x * x))).value
    return theta_direct(ThetaParams(4, 0, mp.exp(-mp.pi / (x * x)))).value / x


def mellin_zeta_check(s, tol=mp.mpf(10) ** -10, dps=30):
    """Compare int_0^inf x^(s-1) theta_2(e^(-pi x^2)) dx with
    (2^s - 1) pi^(-s/2) Gamma(s/2) zeta(s)."""
    with _precision(dps):
        s = mp.mpmathify(s)
        if not s > 2:
            raise ValueError(f"need s > 2, got {s}")
        closed = (2**s - 1) / mp.power(mp.pi, s / 2) * mp.gamma(s / 2) * zeta_dirichlet(s)
        inner = tol / 100
        # [0, 1] in x = t^2 so the x^(s-2) endpoint behaviour is smoothed out
        left = composite_gauss_legendre(
            lambda t: 2 * t * (t * t) ** (s - 1) * _theta2_gauss(t * t) if t > 0 else mp.mpf(0),
            0,
            1,
            inner,
        ).value
        # theta_2(e^(-pi x^2)) <= 2 e^(-pi x^2/4) / (1 - e^(-2 pi x^2)) for x >= 1
        x_max = mp.mpf(1)
        while 3 * x_max ** (s - 1) * mp.exp(-mp.pi * x_max**2 / 4) > inner:
            x_max += mp.mpf("0.5")
        right = composite_gauss_legendre(
            lambda x: x ** (s - 1) * _theta2_gauss(x), 1, x_max, inner
        ).value
        integral = left + right
        diff = abs(integral - closed)
        return {
            "s": mp.nstr(s, 15),
            "integral": mp.nstr(integral, 25),
            "closed_form": mp.nstr(closed, 25),
            "zeta": mp.nstr(zeta_dirichlet(s), 25),
            "abs_diff": mp.nstr(diff, 5),
            "ok": bool(diff <= tol),
            "precision": dps,
        }

