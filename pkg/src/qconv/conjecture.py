"""Recover J-fraction component sequences for a target coefficient sequence.

Given f_0 = 1, f_1, f_2, ... (rational functions of q), find c_1, ab_2, c_2,
ab_3, ... so that the J-fraction 1/(1 - c_1 z - ab_2 z^2/(1 - c_2 z - ...))
generates f.  The system is triangular: [z^(2k-2)] of the depth-k convergent
is the first coefficient to see ab_k and [z^(2k-1)] the first to see c_k,
and both enter affinely, so each unknown is fixed by one linear equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import IntPoly, RationalFunc, ZPoly, as_rational, parse_rational, series_from_rational
from .jfraction import jfraction_convergents
from .qcomb import q_binomial

__all__ = [
    "TargetSequence",
    "custom_target",
    "RecoveredJFraction",
    "InconsistentTarget",
    "solve_components",
    "target",
    "TARGETS",
    "CLOSED_FORM_ROWS",
    "CLOSED_FORM_CORRECTED",
    "closed_form_components",
    "verify_closed_form",
    "verify_pochhammer_series",
]


class InconsistentTarget(ArithmeticError):
    """The target is not generated by any J-fraction of the requested depth."""


def _q(k):
    return as_rational(IntPoly.monomial(k)) if k >= 0 else RationalFunc(1, IntPoly.monomial(-k))


def _poch(x, n):
    """(x; q)_n for a RationalFunc x."""
    out = as_rational(1)
    for j in range(n):
        out = out * (1 - x * _q(j))
    return out


@dataclass(frozen=True)
class TargetSequence:
    """f(n) as an exact RationalFunc; parameters are already specialised."""

    name: str
    f: object = field(repr=False)
    params: tuple = ()

    def __call__(self, n):
        return as_rational(self.f(n))

    def values(self, n_max):
        vals = [self(n) for n in range(n_max + 1)]
        if vals[0] != 1:
            raise ValueError(f"target {self.name} must satisfy f(0) = 1, got {vals[0]}")
        return vals


@dataclass(frozen=True)
class RecoveredJFraction:
    """c = (c_1, ..., c_H), ab = (ab_2, ..., ab_H).

    When some ab_k vanished the fraction is finite: ``terminated_at`` is k
    and c, ab stop at c_(k-1), ab_k = 0.
    """

    H: int
    c: tuple
    ab: tuple
    terminated_at: int | None = None

    @property
    def depth(self):
        return len(self.c)

    def component_c(self, h):
        return self.c[h - 1]

    def component_ab(self, h):
        return self.ab[h - 2] if 2 <= h < len(self.ab) + 2 else as_rational(0)

    def convergent(self):
        d = self.depth
        return jfraction_convergents(self.component_c, self.component_ab, d)[d]

    def coefficients(self, order):
        pair = self.convergent()
        return list(series_from_rational(pair.P, pair.Q, order))

    def as_dict(self):
        return {
            "H": self.H,
            "c": [str(x) for x in self.c],
            "ab": [str(x) for x in self.ab],
            "terminated_at": self.terminated_at,
        }


def _coeff(c, ab, order):
    """[z^order] of the depth-len(c) convergent for component lists c, ab."""
    d = len(c)
    pair = jfraction_convergents(
        lambda h: c[h - 1], lambda h: ab[h - 2] if h >= 2 else 0, d
    )[d]
    return as_rational(series_from_rational(pair.P, pair.Q, order)[order])


def _solve_affine(evaluate, rhs):
    v0 = evaluate(0)
    slope = evaluate(1) - v0
    if slope == 0:
        raise InconsistentTarget("unknown does not enter its equation")
    return (rhs - v0) / slope


def solve_components(target, H):
    """Triangular solve of [z^n] Conv_H = f(n) for 1 <= n <= 2H-1."""
    if H < 1:
        raise ValueError("depth H must be at least 1")
    f = target.values(2 * H - 1)
    c, ab = [], []
    for k in range(1, H + 1):
        if k >= 2:
            x = _solve_affine(lambda t: _coeff(c + [0], ab + [t], 2 * k - 2), f[2 * k - 2])
            ab.append(x)
            if x == 0:
                _check_rest(c, ab[:-1], f, 2 * k - 1, H)
                return RecoveredJFraction(H, tuple(c), tuple(ab), terminated_at=k)
        x = _solve_affine(lambda t: _coeff(c + [t], ab, 2 * k - 1), f[2 * k - 1])
        c.append(x)
    return RecoveredJFraction(H, tuple(c), tuple(ab))


def _check_rest(c, ab, f, start, H):
    d = len(c)
    pair = jfraction_convergents(lambda h: c[h - 1], lambda h: ab[h - 2] if h >= 2 else 0, d)[d]
    series = series_from_rational(pair.P, pair.Q, 2 * H - 1)
    for n in range(start, 2 * H):
        if as_rational(series[n]) != f[n]:
            raise InconsistentTarget(f"no J-fraction of depth {H} (order {n} disagrees)")


# ---------------------------------------------------------------------------
# Built-in targets
# ---------------------------------------------------------------------------


def _param(params, key, default):
    v = params.get(key, default)
    return Fraction(v)


def target(name, **params):
    """Named target sequence with exact rational parameter values."""
    if name == "square":
        return TargetSequence(name, lambda n: _q(n * n))
    if name == "pochhammer-a":
        a = _param(params, "a", 2)
        return TargetSequence(name, lambda n: _poch(as_rational(a), n), (("a", a),))
    if name == "inv-qq":
        return TargetSequence(name, lambda n: 1 / _poch(_q(1), n))
    if name in ("shifted-z", "inv-shifted-z"):
        z = _param(params, "z", Fraction(1, 3))
        if name == "shifted-z":
            f = lambda n: _poch(as_rational(z) * _q(-n), n)  # noqa: E731
        else:
            f = lambda n: 1 / _poch(as_rational(z) * _q(-n), n)  # noqa: E731
        return TargetSequence(name, f, (("z", z),))
    raise ValueError(f"unknown target {name!r}")


TARGETS = ("square", "pochhammer-a", "inv-qq", "shifted-z", "inv-shifted-z", "custom")


def custom_target(lines, name="custom"):
    """Target from canonical rational-function texts f(0), f(1), ..."""
    vals = [parse_rational(s) for s in lines if s.strip()]
    if not vals:
        raise ValueError("custom target needs at least one value")

    def f(n):
        if n >= len(vals):
            raise ValueError(f"custom target provides only {len(vals)} values, need f({n})")
        return vals[n]

    return TargetSequence(name, f)


# ---------------------------------------------------------------------------
# Tabulated conjectures
# ---------------------------------------------------------------------------


def _qb1(n):
    """[n 1]_q."""
    return as_rational(q_binomial(n, 1)) if n >= 1 else as_rational(0)


def _row_pochhammer_a(h, a):
    # c_1 = 1 - a
    # c_h = q^{h-1} - a q^{h-2} (q^h + q^{h-1} - 1)
    # ab_h = a q^{2h-4} (a q^{h-2} - 1)(q^{h-1} - 1)
    a = as_rational(a)
    if h == 1:
        return 1 - a, None
    c = _q(h - 1) - a * _q(h - 2) * (_q(h) + _q(h - 1) - 1)
    ab = a * _q(2 * h - 4) * (a * _q(h - 2) - 1) * (_q(h - 1) - 1)
    return c, ab


def _row_inv_qq(h):
    # c_1 = 1/(1-q)
    # c_h = q^{h-1} (q^{h-1} [h-1 1]_q - [h-2 1]_q) / ([2h-3 1]_q (q^{2h-1} - 1))
    # ab_h = -q^{3h-5} / ((q^{2h-3} - 1)^2 (1 + q^{h-2} + q^{h-1} + q^{2h-3}))
    if h == 1:
        return 1 / (1 - _q(1)), None
    c = _q(h - 1) * (_q(h - 1) * _qb1(h - 1) - _qb1(h - 2)) / (_qb1(2 * h - 3) * (_q(2 * h - 1) - 1))
    ab = -_q(3 * h - 5) / (
        (_q(2 * h - 3) - 1) ** 2 * (1 + _q(h - 2) + _q(h - 1) + _q(2 * h - 3))
    )
    return c, ab


def _row_shifted_z(h, z):
    # c_1 = (q - z)/q
    # c_h = (q^h - z - q z + q^h z) / q^{2h-1}
    # ab_h = (q^{h-1} - 1)(q^{h-1} - z) z / q^{4h-5}
    z = as_rational(z)
    if h == 1:
        return (_q(1) - z) / _q(1), None
    c = (_q(h) - z - _q(1) * z + _q(h) * z) / _q(2 * h - 1)
    ab = (_q(h - 1) - 1) * (_q(h - 1) - z) * z / _q(4 * h - 5)
    return c, ab


def _row_inv_shifted_z(h, z):
    # c_1 = q/(q - z)
    # c_h = q^{h-1} (q^{2h-2} + z + q^{h-1} z - q^h z) / ((q^{2h-3} - z)(q^{2h-1} - z))
    # ab_h = [h-1 1]_q q^{3h-4} (1-q)(q^{h-2} - z) z
    #        / ((q^{2h-4} - z)(q^{2h-3} - z)^2 (q^{2h-2} - z))
    z = as_rational(z)
    if h == 1:
        return _q(1) / (_q(1) - z), None
    c = _q(h - 1) * (_q(2 * h - 2) + z + _q(h - 1) * z - _q(h) * z) / (
        (_q(2 * h - 3) - z) * (_q(2 * h - 1) - z)
    )
    ab = (
        _qb1(h - 1)
        * _q(3 * h - 4)
        * (1 - _q(1))
        * (_q(h - 2) - z)
        * z
        / ((_q(2 * h - 4) - z) * (_q(2 * h - 3) - z) ** 2 * (_q(2 * h - 2) - z))
    )
    return c, ab


def _row_inv_qq_corrected(h):
    # tabulated ab_h holds from h = 3; at h = 2 the factor 1 + q^0 + q + q is
    # 2(1 + q) where the solve gives 1 + q
    c, ab = _row_inv_qq(h)
    if h == 2:
        ab = ab * 2
    return c, ab


def _row_inv_shifted_z_corrected(h, z):
    # c_h with the sign of the q^{h-1} z term flipped:
    # q^{h-1} (q^{2h-2} + z - q^{h-1} z - q^h z) / ((q^{2h-3} - z)(q^{2h-1} - z))
    c, ab = _row_inv_shifted_z(h, z)
    if h >= 2:
        z = as_rational(z)
        c = _q(h - 1) * (_q(2 * h - 2) + z - _q(h - 1) * z - _q(h) * z) / (
            (_q(2 * h - 3) - z) * (_q(2 * h - 1) - z)
        )
    return c, ab


CLOSED_FORM_CORRECTED = {
    "inv-qq": (_row_inv_qq_corrected, ()),
    "inv-shifted-z": (_row_inv_shifted_z_corrected, ("z",)),
}

CLOSED_FORM_ROWS = {
    "pochhammer-a": (_row_pochhammer_a, ("a",)),
    "inv-qq": (_row_inv_qq, ()),
    "shifted-z": (_row_shifted_z, ("z",)),
    "inv-shifted-z": (_row_inv_shifted_z, ("z",)),
}


def closed_form_components(row, h, corrected=False, **params):
    """(c_h, ab_h) from the tabulated formula (ab is None for h = 1).

    ``corrected`` swaps in the amended formulas where the solve disagrees
    with the table; rows without amendments are unaffected.
    """
    if row not in CLOSED_FORM_ROWS:
        raise ValueError(f"unknown row {row!r}")
    table = CLOSED_FORM_CORRECTED if corrected and row in CLOSED_FORM_CORRECTED else CLOSED_FORM_ROWS
    fn, keys = table[row]
    args = [Fraction(params[k]) for k in keys]
    try:
        return fn(h, *args)
    except ZeroDivisionError:
        raise ZeroDivisionError(f"tabulated formula has a vanishing denominator at h={h}") from None


def verify_closed_form(row, H, corrected=False, **params):
    """Compare solved components with the tabulated ones for 1 <= h <= H."""
    if row not in CLOSED_FORM_ROWS:
        raise ValueError(f"unknown row {row!r}")
    _, keys = CLOSED_FORM_ROWS[row]
    defaults = {"a": 2, "z": Fraction(1, 3)}
    vals = {k: Fraction(params.get(k, defaults[k])) for k in keys}
    rec = solve_components(target(row, **vals), H)
    entries = []
    for h in range(1, H + 1):
        c_tab, ab_tab = closed_form_components(row, h, corrected=corrected, **vals)
        entry = {"h": h}
        if h <= rec.depth:
            entry["c_match"] = rec.component_c(h) == c_tab
            entry["c_solved"] = str(rec.component_c(h))
            entry["c_table"] = str(c_tab)
        if h >= 2 and h - 2 < len(rec.ab):
            entry["ab_match"] = rec.component_ab(h) == ab_tab
            entry["ab_solved"] = str(rec.component_ab(h))
            entry["ab_table"] = str(ab_tab)
        entries.append(entry)
    ok = all(e.get("c_match", True) and e.get("ab_match", True) for e in entries)
    return {
        "row": row,
        "H": H,
        "corrected": corrected,
        "params": {k: str(v) for k, v in vals.items()},
        "terminated_at": rec.terminated_at,
        "entries": entries,
        "ok": ok,
    }


def _pochhammer_rhs_term(a, i, order):
    """i-th summand of the (a;q)_n series as a z-series through z^order."""
    A = as_rational(a)
    num = A ** (i - 1) * _q((i - 1) * (i - 2)) * _poch(A, i - 1) * _poch(_q(1), i - 1)
    den = [as_rational(0)] * (2 * i)
    for n in range(2 * i):
        acc = as_rational(0)
        for j in range(max(0, n - (i - 1)), min(n, i) + 1):
            t = as_rational(q_binomial(i, j) * q_binomial(i - 1, n - j))
            t = t * _poch(A * _q(i - j), j) * _poch(A * _q(i - 1 - n + j), n - j)
            t = t * _q(j * (j - 1) // 2 + (n - j) * (n - j - 1) // 2)
            acc = acc + t
        den[n] = acc * (-1) ** n
    numer = ZPoly([0] * (2 * i - 2) + [num])
    return series_from_rational(numer, ZPoly(den), order)


def verify_pochhammer_series(a, N, i_max):
    """Sum the first i_max terms of the (a;q)_n series and compare with
    (a;q)_n coefficientwise for n <= N.  The agreement depth is recorded."""
    a = Fraction(a)
    if N < 0 or i_max < 1:
        raise ValueError("need N >= 0 and i_max >= 1")
    total = [as_rational(0)] * (N + 1)
    for i in range(1, i_max + 1):
        s = _pochhammer_rhs_term(a, i, N)
        total = [x + as_rational(y) for x, y in zip(total, s)]
    A = as_rational(a)
    expected = [_poch(A, n) for n in range(N + 1)]
    mismatches = [n for n in range(N + 1) if total[n] != expected[n]]
    depth = (mismatches[0] - 1) if mismatches else N
    return {
        "a": str(a),
        "N": N,
        "i_max": i_max,
        "match_through": depth,
        "mismatches": mismatches,
    }

