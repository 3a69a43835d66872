"""Published convergent tables, transcribed factor by factor.

Each z-coefficient is (sign, power of q, [factor polynomials]); the
expanded product is what the recurrence must reproduce.
"""

from qconv.algebra import IntPoly, RationalFunc, ZPoly, parse_poly

NUMERATORS = {
    1: [(1, 0, [])],
    2: [(1, 0, []), (-1, 1, ["q^4 + q^2 - 1"])],
    3: [
        (1, 0, []),
        (-1, 1, ["1 + q^2", "-1 + q^2 + q^6"]),
        (1, 4, ["1 - q^2 - q^4 + q^8 + q^10"]),
    ],
    4: [
        (1, 0, []),
        (-1, 1, ["1 - q + q^2", "1 + q + q^2", "-1 + q^2 + q^8"]),
        (1, 4, ["1 - q^4 - q^6 - q^8 + q^12 + 2q^14 + q^16 + q^18"]),
        (-1, 9, ["-1 + q^2 + q^4 - 2q^10 + q^16 + q^18"]),
    ],
    5: [
        (1, 0, []),
        (-1, 1, ["1 + q^2", "1 + q^4", "1 - q^2 + q^4", "-1 + q^4 + q^6"]),
        (1, 4, ["1 + q^2", "1 - q + q^2", "1 + q + q^2", "1 - q^2 + q^4", "1 - q^2 - q^6 + q^12 + q^16"]),
        (-1, 9, ["1 + q^2", "-1 + q^2 + q^6 - 2q^14 - q^18 + q^20 + 2q^24 + q^28"]),
        (1, 16, ["1 - q^2 - q^4 + q^10 + q^12 + q^14 - q^16 - q^18 - q^20 + q^26 + q^28"]),
    ],
}

_A5 = "1 - q + q^2 - q^3 + q^4"
_B5 = "1 + q + q^2 + q^3 + q^4"

DENOMINATORS = {
    0: [(1, 0, [])],
    1: [(1, 0, []), (-1, 1, [])],
    2: [(1, 0, []), (-1, 3, ["1 + q^2"]), (1, 6, [])],
    3: [
        (1, 0, []),
        (-1, 5, ["1 - q + q^2", "1 + q + q^2"]),
        (1, 10, ["1 - q + q^2", "1 + q + q^2"]),
        (-1, 15, []),
    ],
    4: [
        (1, 0, []),
        (-1, 7, ["1 + q^2", "1 + q^4"]),
        (1, 14, ["1 - q + q^2", "1 + q + q^2", "1 + q^4"]),
        (-1, 21, ["1 + q^2", "1 + q^4"]),
        (1, 28, []),
    ],
    5: [
        (1, 0, []),
        (-1, 9, [_A5, _B5]),
        (1, 18, ["1 + q^4", _A5, _B5]),
        (-1, 27, ["1 + q^4", _A5, _B5]),
        (1, 36, [_A5, _B5]),
        (-1, 45, []),
    ],
}

# 1 + 2q Conv_h(q, q^2) as (numerator factors, denominator factors)
THETA_TILDE = {
    1: (["1 + q", "-1 - q + q^2"], ["-1 + q", "1 + q + q^2"]),
    2: (
        ["1 + q", "1 + q", "-1 - q - 2q^3 - q^4 - q^6 + q^7"],
        ["1 + q^2", "-1 - q - q^4 + q^6 + q^7"],
    ),
    3: (
        ["1 + q"] * 3
        + ["1 - q + q^2", "1 + q + q^3 + q^5 + q^6 - q^7 + q^8 - q^9 - q^11 - 2q^12 - q^14 + q^15"],
        [
            "-1 + q",
            "1 + q^2",
            "1 + q + q^2",
            "1 + q + q^2 + q^3 + q^4 + q^5 + q^6",
            "-1 + q^2 - q^3 - q^4 + q^5 - q^7 + q^9",
        ],
    ),
    4: (
        ["1 + q"] * 4
        + [
            "1 - q + q^2",
            "1 - q^2 + 2q^3 + q^6 + 2q^8 - q^9 + q^10 + q^12 - 2q^14 + 3q^15 - 2q^16"
            " - q^18 - q^21 + q^22 - 2q^23 + q^24",
        ],
        [
            "1 + q^4",
            "1 + q + q^3 + q^4 + q^6 + q^7 + q^8 + q^9 - q^13 - q^14 - q^15 - q^16 - q^17"
            " - q^18 - q^19 - q^20 - q^21 + q^25 + q^26",
        ],
    ),
}


def _product(factors):
    out = IntPoly.constant(1)
    for f in factors:
        out = out * parse_poly(f)
    return out


def expand(rows):
    return ZPoly([_product(fs).shift(k) * sign for sign, k, fs in rows])


def theta_tilde(h):
    num, den = THETA_TILDE[h]
    return RationalFunc(_product(num), _product(den))
