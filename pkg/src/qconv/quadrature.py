"""Composite Gauss-Legendre quadrature at mpmath working precision."""

from __future__ import annotations

from functools import lru_cache

import mpmath as mp

__all__ = ["gauss_legendre_nodes", "gauss_legendre", "composite_gauss_legendre", "QuadResult"]


@lru_cache(maxsize=16)
def _nodes(n, prec):
    with mp.workprec(prec + 20):
        xs, ws = [], []
        for k in range(1, n // 2 + 1):
            x = mp.cos(mp.pi * (k - mp.mpf(1) / 4) / (n + mp.mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mp.mpf(1), x
                for j in range(2, n + 1):
                    p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mp.mpf(2) ** (-prec - 10):
                    break
            w = 2 / ((1 - x * x) * dp * dp)
            xs += [x, -x]
            ws += [w, w]
        if n % 2:
            p0, p1 = mp.mpf(1), mp.mpf(0)
            for j in range(2, n + 1):
                p0, p1 = p1, (-(j - 1) * p0) / j
            dp = n * p0  # P_n'(0) = n P_{n-1}(0)
            xs.append(mp.mpf(0))
            ws.append(2 / (dp * dp))
    return tuple(+x for x in xs), tuple(+w for w in ws)


def gauss_legendre_nodes(n):
    """Nodes and weights of the n-point rule on [-1, 1]."""
    if n < 1:
        raise ValueError("need at least one node")
    return _nodes(n, mp.mp.prec)


def gauss_legendre(f, a, b, n=20):
    xs, ws = gauss_legendre_nodes(n)
    half = (b - a) / 2
    mid = (a + b) / 2
    return half * mp.fsum(w * f(mid + half * x) for x, w in zip(xs, ws))


class QuadResult(tuple):
    """(value, error_estimate, panels)."""

    __slots__ = ()

    def __new__(cls, value, error, panels):
        return super().__new__(cls, (value, error, panels))

    value = property(lambda self: self[0])
    error = property(lambda self: self[1])
    panels = property(lambda self: self[2])


def composite_gauss_legendre(f, a, b, tol, n=20, max_panels=4096):
    """Integrate f over [a, b], doubling equal panels until two successive
    estimates differ by less than tol."""
    a, b = mp.mpf(a), mp.mpf(b)
    panels = 1
    prev = gauss_legendre(f, a, b, n)
    while panels < max_panels:
        panels *= 2
        h = (b - a) / panels
        cur = mp.fsum(gauss_legendre(f, a + k * h, a + (k + 1) * h, n) for k in range(panels))
        err = abs(cur - prev)
        if err < tol:
            return QuadResult(cur, err, panels)
        prev = cur
    raise ArithmeticError(f"quadrature did not reach tolerance {tol} with {panels} panels")
