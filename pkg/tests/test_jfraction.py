import pytest

from fixtures import DENOMINATORS, NUMERATORS, expand
from qconv.algebra import IntPoly, RationalFunc, ZPoly
from qconv.jfraction import (
    ConvergentPair,
    component_ab,
    component_c,
    convergent,
    convergent_coefficients,
    denominator_closed_form,
    finite_sum_q2,
    finite_sum_representation,
    jfraction_convergents,
    modulus_term,
    numerator_closed_form,
    verify_main_theorem,
)


def q(k, c=1):
    return IntPoly.monomial(k, c)


def test_components():
    assert component_c(0) == IntPoly([1])
    assert component_c(1) == q(1)
    assert component_c(2) == q(1) * (q(4) + q(2) - 1)
    assert component_c(3) == q(3) * (q(6) + q(4) - 1)
    assert component_ab(1).is_zero()
    assert component_ab(2) == q(2) * (q(2) - 1)
    assert component_ab(3) == q(8) * (q(4) - 1)
    with pytest.raises(ValueError):
        component_c(-1)


@pytest.mark.parametrize("h", range(0, 6))
def test_tables(h):
    pair = convergent(h)
    assert pair.Q == expand(DENOMINATORS[h])
    if h >= 1:
        assert pair.P == expand(NUMERATORS[h])


@pytest.mark.parametrize("h", range(1, 9))
def test_closed_forms(h):
    pair = convergent(h)
    assert denominator_closed_form(h) == pair.Q
    assert numerator_closed_form(h) == pair.P


def test_degrees():
    for h in range(1, 9):
        pair = convergent(h)
        assert pair.Q.degree == h
        assert pair.P.degree == h - 1
        assert pair.Q[0] == 1 and pair.P[0] == 1


def test_pair_validation():
    with pytest.raises(ValueError):
        ConvergentPair(1, ZPoly([1]), ZPoly([1, 1, 1]))


def test_generic_recurrence_geometric():
    # c = 1, ab = 0 gives 1/(1 - z) at every depth
    pairs = jfraction_convergents(lambda h: 1, lambda h: 0, 3)
    for pair in pairs[1:]:
        assert pair.P * ZPoly([1, -1]) == pair.Q


def test_main_theorem_boundary():
    report = verify_main_theorem(6)
    assert report.ok
    assert [r.first_failure for r in report.records] == [2 * h for h in range(1, 7)]


def test_coefficients_equal_squares():
    s = convergent_coefficients(4, 7)
    assert all(s[n] == q(n * n) for n in range(8))


def test_invalid_orders():
    with pytest.raises(ValueError):
        convergent_coefficients(0, 3)
    with pytest.raises(ValueError):
        convergent_coefficients(2, -1)


def test_modulus_terms():
    t = modulus_term(1)
    assert t.coeff == IntPoly([1]) and t.z_power == 0
    t = modulus_term(2)
    # -q^2 (1 - q^2) z^2
    assert t.coeff == -q(2) * (1 - q(2)) and t.z_power == 2
    with pytest.raises(ValueError):
        modulus_term(0)


@pytest.mark.parametrize("h", range(1, 7))
def test_finite_sum(h):
    assert finite_sum_representation(h).matches(convergent(h))


@pytest.mark.parametrize("h", [1, 2, 3, 4])
def test_finite_sum_at_q2(h):
    assert finite_sum_q2(h) == convergent(h).reduced()


def test_differences_are_modulus_terms():
    # Conv_h - Conv_{h-1} = term_h / (Q_{h-1} Q_h)
    for h in range(2, 6):
        a, b = convergent(h - 1), convergent(h)
        diff = b.P * a.Q - a.P * b.Q
        assert diff == modulus_term(h).as_zpoly()
    assert isinstance(convergent(2).reduced(), RationalFunc)
