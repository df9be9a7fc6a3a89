import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from assocsqueeze import polyfam
from assocsqueeze.errors import DomainError, PoleError
from assocsqueeze.verify import MINUS_TABLE, PLUS_TABLE

complexes = st.complex_numbers(max_magnitude=2.5, allow_nan=False, allow_infinity=False)
xis = st.complex_numbers(max_magnitude=0.95, allow_nan=False, allow_infinity=False)


def test_table_examples():
    assert polyfam.p_plus(2, 1, 0.6) == pytest.approx(0.4)
    assert polyfam.p_plus(0, 3 + 1j, 0.2) == 1
    assert polyfam.p_plus(4, 1, 1) == pytest.approx(-2)
    assert polyfam.p_minus(3, 1, 0.6) == pytest.approx(-0.2)
    assert polyfam.p_minus(0, 3 + 1j, 0.2) == 0
    assert polyfam.p_minus(4, 2, 1) == pytest.approx(-2)


@given(complexes, xis)
@settings(max_examples=40, deadline=None)
def test_tables_symbolic(alpha, xi):
    sp = polyfam.sequence("plus", 4, alpha, xi)
    sm = polyfam.sequence("minus", 4, alpha, xi)
    for n in range(5):
        for got, form in ((sp[n], PLUS_TABLE[n]), (sm[n], MINUS_TABLE[n])):
            ref = form(alpha, xi)
            assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref))


@given(complexes, xis)
@settings(max_examples=100, deadline=None)
def test_constraint_pair(alpha, xi):
    sp = polyfam.sequence("+", 2, alpha, xi)
    sm = polyfam.sequence("-", 2, alpha, xi)
    assert abs(sp[1] - alpha * sp[0]) == 0
    assert abs(sm[2] - alpha * sm[1]) <= 1e-15 * max(1.0, abs(alpha))


@pytest.mark.parametrize("n", range(7))
def test_monic_leading_coefficient(n):
    # n-th forward difference in alpha with unit step equals n! times the leading coefficient
    xi = 0.37 - 0.2j
    vp = [polyfam.p_plus(n, a, xi) for a in range(n + 1)]
    vm = [polyfam.p_minus(n + 1, a, xi) for a in range(n + 1)]
    for vals in (vp, vm):
        diff = sum((-1) ** (n - k) * math.comb(n, k) * vals[k] for k in range(n + 1))
        assert diff / math.factorial(n) == pytest.approx(1.0, abs=1e-9)


def test_amplitude_sequence_is_scaled_recurrence():
    alpha, xi = 1.2 - 0.4j, 0.5j
    q = polyfam.amplitude_sequence("minus", 30, alpha, xi)
    p = polyfam.sequence("minus", 30, alpha, xi)
    ref = p / np.sqrt([float(math.factorial(n)) for n in range(31)])
    np.testing.assert_allclose(q, ref, rtol=1e-12, atol=1e-300)
    assert np.all(np.isfinite(polyfam.amplitude_sequence("plus", 2000, 6.0, 0.8)))


@pytest.mark.parametrize("alpha,xi", [(1.0, 0.6), (0.3 + 0.4j, 0.5j), (-1.7, 0.25), (1.0, -0.6 + 0.3j)])
def test_closed_forms_agree_with_recurrence(alpha, xi):
    sp = polyfam.sequence("plus", 12, alpha, xi)
    sm = polyfam.sequence("minus", 12, alpha, xi)
    for n in range(13):
        assert abs(polyfam.p_plus_closed(n, alpha, xi) - sp[n]) <= 1e-9 * max(1, abs(sp[n]))
        assert abs(polyfam.p_minus_hypergeometric(n, alpha, xi) - sm[n]) <= 1e-9 * max(1, abs(sm[n]))
        if n >= 1:
            assert abs(polyfam.p_minus_sum_form(n, alpha, xi) - sm[n]) <= 1e-9 * max(1, abs(sm[n]))


def test_closed_form_branch_independence():
    # P_n(+) does not depend on which root of xi/2 the closed form uses
    alpha, xi = 0.7 + 0.1j, -0.4 + 0.3j
    s = -cmath.sqrt(xi / 2)
    from assocsqueeze import specfun
    for n in range(8):
        other = s ** n * specfun.hermite_phys(n, alpha / (2 * s))
        assert other == pytest.approx(polyfam.p_plus_closed(n, alpha, xi), rel=1e-12, abs=1e-14)


def test_sum_form_examples_and_errors():
    assert polyfam.p_minus_sum_form(2, 1, 0.6) == pytest.approx(1)
    assert polyfam.p_minus_sum_form(3, 1, 0.6) == pytest.approx(-0.2)
    assert polyfam.p_minus_sum_form(1, 0.3 + 2j, 0.1) == pytest.approx(1)
    with pytest.raises(DomainError):
        polyfam.p_minus_sum_form(0, 1, 0.6)
    with pytest.raises(DomainError):
        polyfam.p_minus_sum_form(3, 1, 0)
    # y = alpha/sqrt(2 xi) = 1/sqrt 2 is a zero of H_2
    with pytest.raises(PoleError) as exc:
        polyfam.p_minus_sum_form(4, 1.0, 1.0)
    assert exc.value.index == 2
    # alpha = 0 puts y on the zero of H_1
    with pytest.raises(PoleError):
        polyfam.p_minus_sum_form(3, 0.0, 0.5)


def test_hypergeometric_examples():
    assert polyfam.p_minus_hypergeometric(5, 0, 0.5) == pytest.approx(2)
    for n in range(6):
        assert polyfam.p_minus_hypergeometric(2 * n + 2, 0, 0.3 + 0.2j) == 0
    assert polyfam.p_minus_hypergeometric(4, 2, 1) == pytest.approx(-2)


@pytest.mark.parametrize("xi", [0.2, 0.5, 0.8 * cmath.exp(1j * math.pi / 3)])
def test_alpha_zero_minus_family(xi):
    seq = polyfam.sequence("minus", 31, 0, xi)
    for n in range(16):
        ref = 2 ** n * math.factorial(n) * (-xi) ** n
        assert abs(seq[2 * n + 1] - ref) <= 1e-12 * abs(ref)
        assert seq[2 * n] == 0


def test_xi_zero_limit():
    alpha = 0.8 - 0.5j
    seq = polyfam.sequence("minus", 11, alpha, 0)
    for n in range(11):
        assert seq[n + 1] == pytest.approx(alpha ** n, rel=1e-14)
    assert polyfam.sequence("plus", 5, alpha, 0)[5] == pytest.approx(alpha ** 5)


def test_general_solution_plus_family():
    k = polyfam.plus_kappas(1.0)
    assert polyfam.general_solution("even", 1, 1.0, 0.6, k["kappa1"], k["kappa1_t"]) == pytest.approx(0.4)
    assert polyfam.general_solution("odd", 3, 1.0, 0.6, 0, 0) == 0
    alpha, xi = 0.9 + 0.3j, 0.4 - 0.2j
    k = polyfam.plus_kappas(alpha)
    seq = polyfam.sequence("plus", 13, alpha, xi)
    for n in range(7):
        assert polyfam.general_solution("even", n, alpha, xi, k["kappa1"], k["kappa1_t"]) == pytest.approx(seq[2 * n])
        assert polyfam.general_solution("odd", n, alpha, xi, k["kappa2"], k["kappa2_t"]) == pytest.approx(seq[2 * n + 1])


@pytest.mark.parametrize("alpha,xi", [(1.0, 0.6), (0.3 + 0.4j, 0.5j), (0.5, -0.3)])
def test_general_solution_minus_family(alpha, xi):
    k = polyfam.minus_kappas(alpha, xi)
    seq = polyfam.sequence("minus", 13, alpha, xi)
    for n in range(7):
        even = polyfam.general_solution("even", n, alpha, xi, k["kappa1"], k["kappa1_t"])
        odd = polyfam.general_solution("odd", n, alpha, xi, k["kappa2"], k["kappa2_t"])
        assert abs(even - seq[2 * n]) <= 1e-10 * max(1, abs(seq[2 * n]))
        assert abs(odd - seq[2 * n + 1]) <= 1e-10 * max(1, abs(seq[2 * n + 1]))


def test_general_solution_errors():
    with pytest.raises(DomainError):
        polyfam.general_solution("even", 2, 1.0, 0.0, 1, 0)
    with pytest.raises(DomainError):
        polyfam.general_solution("both", 2, 1.0, 0.5, 1, 0)
    with pytest.raises(DomainError):
        polyfam.sequence("neutral", 3, 1.0, 0.5)
