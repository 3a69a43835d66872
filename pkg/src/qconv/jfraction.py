"""The square-series J-fraction: component sequences, convergents and their
closed forms, the telescoped finite-sum form, and the coefficient check
[z^n] P_h/Q_h == q^(n^2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import IntPoly, RationalFunc, ZPoly, series_from_rational
from .qcomb import q_binomial, q_pochhammer

__all__ = [
    "H_CAP",
    "ConvergentPair",
    "ModulusTerm",
    "component_c",
    "component_ab",
    "jfraction_convergents",
    "convergents_by_recurrence",
    "convergent",
    "denominator_closed_form",
    "numerator_closed_form",
    "numerator_coefficient",
    "convergent_coefficients",
    "modulus_term",
    "FiniteSum",
    "finite_sum_representation",
    "finite_sum_q2_terms",
    "finite_sum_q2",
    "MainTheoremRecord",
    "MainTheoremReport",
    "verify_main_theorem",
]

# Degrees in q grow like h^2; larger depths need an explicit override.
H_CAP = 16

ONE = IntPoly.constant(1)


def _q(k, c=1):
    return IntPoly.monomial(k, c)


@lru_cache(maxsize=None)
def component_c(h):
    """c_h: 1, q, then q^(2h-3) (q^(2h) + q^(2h-2) - 1) for h >= 2."""
    if h < 0:
        raise ValueError("component index must be nonnegative")
    if h == 0:
        return ONE
    if h == 1:
        return _q(1)
    return (_q(2 * h) + _q(2 * h - 2) - 1).shift(2 * h - 3)


@lru_cache(maxsize=None)
def component_ab(h):
    """ab_h: q^(6h-10) (q^(2h-2) - 1) for h >= 2, zero below."""
    if h < 0:
        raise ValueError("component index must be nonnegative")
    if h < 2:
        return IntPoly()
    return (_q(2 * h - 2) - 1).shift(6 * h - 10)


@dataclass(frozen=True)
class ConvergentPair:
    """Numerator and denominator of the depth-h convergent, as polynomials in z."""

    h: int
    P: ZPoly
    Q: ZPoly

    def __post_init__(self):
        if self.Q.degree > self.h:
            raise ValueError("denominator degree exceeds depth")
        if self.h >= 1 and self.P.degree > self.h - 1:
            raise ValueError("numerator degree must be below depth")

    def at(self, z):
        """(P(z), Q(z)) with z substituted (any ring element or number)."""
        return self.P(z), self.Q(z)

    def reduced(self):
        """P_h / Q_h specialised at z = q^2 as a reduced RationalFunc."""
        p, qq = self.at(_q(2))
        return RationalFunc(p, qq)


def jfraction_convergents(c, ab, h_max):
    """P_h, Q_h for 0 <= h <= h_max of a generic J-fraction.

    ``c`` and ``ab`` are callables (index -> ring element).  Base cases
    P_0 = 0, P_1 = 1, Q_0 = 1, Q_1 = 1 - c_1 z; then
    X_h = (1 - c_h z) X_{h-1} - ab_h z^2 X_{h-2}.
    """
    if h_max < 0:
        raise ValueError("h_max must be nonnegative")
    Ps = [ZPoly(), ZPoly([1])]
    Qs = [ZPoly([1]), ZPoly([1, -c(1)])]
    for h in range(2, h_max + 1):
        lin = ZPoly([1, -c(h)])
        quad = ZPoly([0, 0, ab(h)])
        Ps.append(lin * Ps[h - 1] - quad * Ps[h - 2])
        Qs.append(lin * Qs[h - 1] - quad * Qs[h - 2])
    return [ConvergentPair(h, Ps[h], Qs[h]) for h in range(h_max + 1)]


def _as_intpoly_z(zp):
    return ZPoly([c if isinstance(c, IntPoly) else IntPoly.constant(c) for c in zp.coeffs])


@lru_cache(maxsize=4)
def _recurrence_table(h_max):
    pairs = jfraction_convergents(component_c, component_ab, h_max)
    return tuple(
        ConvergentPair(p.h, _as_intpoly_z(p.P), _as_intpoly_z(p.Q)) for p in pairs
    )


def convergents_by_recurrence(h_max):
    """Square-series convergents (P_h, Q_h) for 0 <= h <= h_max."""
    if h_max < 0:
        raise ValueError("h_max must be nonnegative")
    # Reuse a larger cached table when one exists.
    size = max(h_max, 12)
    return list(_recurrence_table(size)[: h_max + 1])


def convergent(h, closed_form=False):
    """ConvergentPair for one depth, by recurrence or by the closed forms."""
    if closed_form:
        return ConvergentPair(h, numerator_closed_form(h), denominator_closed_form(h))
    return convergents_by_recurrence(h)[h]


def denominator_closed_form(h):
    """Q_h = sum_i [h i]_{q^2} q^((2h-1) i) (-z)^i."""
    if h < 0:
        raise ValueError("h must be nonnegative")
    return ZPoly(
        [q_binomial(h, i, 2).shift((2 * h - 1) * i) * (-1) ** i for i in range(h + 1)]
    )


def numerator_coefficient(h, n):
    """C_{h,n} = sum_{i<=n} [h i]_{q^2} q^((2h-1) i) (-1)^i q^((n-i)^2)."""
    acc = IntPoly()
    for i in range(n + 1):
        acc = acc + q_binomial(h, i, 2).shift((2 * h - 1) * i + (n - i) ** 2) * (-1) ** i
    return acc


def numerator_closed_form(h):
    """P_h = sum_{n<h} C_{h,n} z^n."""
    if h < 1:
        raise ValueError("numerator closed form needs h >= 1")
    return ZPoly([numerator_coefficient(h, n) for n in range(h)])


def convergent_coefficients(h, order):
    """[z^n] P_h/Q_h for 0 <= n <= order as a ZSeries with IntPoly coefficients."""
    if h < 1:
        raise ValueError("h must be at least 1")
    if order < 0:
        raise ValueError("order must be nonnegative")
    pair = convergent(h)
    return series_from_rational(pair.P, pair.Q, order)


# ---------------------------------------------------------------------------
# Finite-sum representation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModulusTerm:
    """(-1)^(i-1) q^((3i-4)(i-1)) (q^2;q^2)_(i-1) z^(2i-2)."""

    i: int
    coeff: IntPoly
    z_power: int

    @property
    def q_exponent(self):
        return (3 * self.i - 4) * (self.i - 1)

    def as_zpoly(self):
        return ZPoly([IntPoly()] * self.z_power + [self.coeff])


def modulus_term(i):
    if i < 1:
        raise ValueError("modulus term index starts at 1")
    e = (3 * i - 4) * (i - 1)
    poch = q_pochhammer(_q(2), 2, i - 1)
    return ModulusTerm(i, poch.shift(e) * (-1) ** (i - 1), 2 * i - 2)


@dataclass(frozen=True)
class FiniteSum:
    """sum_{i<=h} term_i / (Q_{i-1} Q_i) combined over prod_{i<=h} Q_i."""

    h: int
    numerator: ZPoly
    denominator: ZPoly
    terms: tuple = field(repr=False)

    def matches(self, pair):
        """Cross-multiplied check numerator * Q_h == P_h * denominator."""
        return self.numerator * pair.Q == pair.P * self.denominator


def finite_sum_representation(h):
    """Telescoped form of Conv_h over the common denominator Q_0 Q_1 ... Q_h."""
    if h < 1:
        raise ValueError("h must be at least 1")
    Qs = [p.Q for p in convergents_by_recurrence(h)]
    terms = tuple(modulus_term(i) for i in range(1, h + 1))
    # prefix[k] = Q_0...Q_{k-1}, suffix[k] = Q_k...Q_h
    prefix = [ZPoly([ONE])]
    for Qi in Qs:
        prefix.append(prefix[-1] * Qi)
    suffix = [ZPoly([ONE])] * (h + 2)
    for k in range(h, -1, -1):
        suffix[k] = Qs[k] * suffix[k + 1]
    num = ZPoly()
    for t in terms:
        i = t.i
        # product of every Q_k except Q_{i-1} and Q_i
        others = prefix[i - 1] * suffix[i + 1]
        num = num + t.as_zpoly() * others
    return FiniteSum(h, num, prefix[h + 1], terms)


def _g_q2(i):
    """Q_{i-1}(q, q^2) Q_i(q, q^2) from the q-binomial convolution
    sum_{0<=j<=n<2i} [i j][i-1 n-j] q^(2j) (-q^(2i-1))^n, all in base q^2."""
    acc = IntPoly()
    for n in range(2 * i):
        inner = IntPoly()
        for j in range(max(0, n - (i - 1)), min(n, i) + 1):
            inner = inner + (q_binomial(i, j, 2) * q_binomial(i - 1, n - j, 2)).shift(2 * j)
        acc = acc + inner.shift((2 * i - 1) * n) * (-1) ** n
    return acc


def finite_sum_q2_terms(h):
    """[(numerator_i, denominator_i)] of Conv_h(q, q^2) as IntPoly pairs."""
    out = []
    for i in range(1, h + 1):
        num = q_pochhammer(_q(2), 2, i - 1).shift(3 * i * (i - 1)) * (-1) ** (i - 1)
        out.append((num, _g_q2(i)))
    return out


def finite_sum_q2(h):
    """Conv_h(q, q^2) as a reduced RationalFunc from the finite q-series sum."""
    if h < 1:
        raise ValueError("h must be at least 1")
    terms = finite_sum_q2_terms(h)
    den = ONE
    for _, g in terms:
        den = den * g
    # g_i = Q_{i-1} Q_i, so the plain product over-counts; reduce at the end.
    num = IntPoly()
    for k, (f, _) in enumerate(terms):
        cof = ONE
        for m, (_, g2) in enumerate(terms):
            if m != k:
                cof = cof * g2
        num = num + f * cof
    return RationalFunc(num, den)


# ---------------------------------------------------------------------------
# Coefficient check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MainTheoremRecord:
    h: int
    checked: int  # orders 0..checked-1 compared against q^(n^2)
    passed: bool  # every n < 2h matched
    first_failure: int | None  # first n (searched through 2h) with mismatch


@dataclass
class MainTheoremReport:
    records: list

    @property
    def ok(self):
        return all(r.passed for r in self.records)

    def as_dict(self):
        return {
            "ok": self.ok,
            "records": [
                {
                    "h": r.h,
                    "checked": r.checked,
                    "passed": r.passed,
                    "first_failure": r.first_failure,
                }
                for r in self.records
            ],
        }


def verify_main_theorem(h_max, probe_past=True):
    """For 1 <= h <= h_max compare [z^n] Conv_h with q^(n^2) for n < 2h.

    With ``probe_past`` the order n = 2h is also expanded so the first
    failing index is recorded (it is expected to be exactly 2h).
    """
    if h_max < 1:
        raise ValueError("h_max must be at least 1")
    records = []
    for h in range(1, h_max + 1):
        top = 2 * h if probe_past else 2 * h - 1
        series = convergent_coefficients(h, top)
        first = None
        for n in range(top + 1):
            if series[n] != _q(n * n):
                first = n
                break
        passed = first is None or first >= 2 * h
        records.append(MainTheoremRecord(h, 2 * h, passed, first))
    return MainTheoremReport(records)
