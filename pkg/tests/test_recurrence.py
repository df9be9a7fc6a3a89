import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from assocsqueeze import recurrence as rec
from assocsqueeze.errors import DomainError, PoleError, RangeError


def det2(a, b, c, d):
    return a * d - b * c


def test_hermite_spec_values():
    z = 1.0
    seq = rec.run_recurrence(rec.RecurrenceSpec.hermite(), 2 * z, 1.0, 2 * z, 4)
    assert seq[2] == pytest.approx(2)
    assert seq[3] == pytest.approx(-4)
    assert seq[4] == pytest.approx(16 - 48 + 12)


def test_zero_initial_pair_gives_zero_sequence():
    seq = rec.run_recurrence(rec.RecurrenceSpec.squeezing(0.6), 1.0, 0.0, 0.0, 10)
    assert not np.any(seq.values)


def test_squeezing_spec_values():
    seq = rec.run_recurrence(rec.RecurrenceSpec.squeezing(0.6), 1.0, 1.0, 1.0, 3)
    assert seq[2] == pytest.approx(0.4)
    assert seq[3] == pytest.approx(-0.8)


def test_associated_sequence_values():
    g = rec.associated_sequence(rec.RecurrenceSpec.squeezing(0.6), 1.0, 3)
    assert g[0] == 0
    assert g[2] == pytest.approx(1)
    assert g[3] == pytest.approx(-0.2)
    g = rec.associated_sequence(rec.RecurrenceSpec.squeezing(1.0), 2.0, 4)
    assert g[4] == pytest.approx(-2)


def test_run_recurrence_rejects_short_range():
    with pytest.raises(DomainError):
        rec.run_recurrence(rec.RecurrenceSpec.squeezing(0.6), 1.0, 1, 1, 0)


def test_overflow_names_index():
    with pytest.raises(RangeError) as exc:
        rec.run_recurrence(rec.RecurrenceSpec.hermite(), 1e200, 1.0, 1e200, 5)
    assert exc.value.index == 2


@given(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=0.99, allow_nan=False, allow_infinity=False))
@settings(max_examples=50, deadline=None)
def test_replay_invariant(alpha, xi):
    seq = rec.run_recurrence(rec.RecurrenceSpec.squeezing(xi), alpha, 1.0, alpha, 20)
    assert seq.replay_residual() < 1e-12


@pytest.mark.parametrize("alpha", [1.0, 0.3 - 0.7j, 2.5])
def test_casorati_product_law(alpha):
    xi = 0.6
    spec = rec.RecurrenceSpec.squeezing(xi)
    p = rec.run_recurrence(spec, alpha, 1.0, alpha, 12)
    g = rec.associated_sequence(spec, alpha, 12)
    for n in range(11):
        brute = det2(p[n], g[n], p[n + 1], g[n + 1])
        law = np.prod([xi * k for k in range(1, n + 1)])
        assert rec.casorati(p, g, n) == pytest.approx(brute)
        assert abs(rec.casorati(p, g, n) - law) <= 1e-10 * max(1.0, abs(law))


def test_casorati_examples():
    spec = rec.RecurrenceSpec.squeezing(0.6)
    p = rec.run_recurrence(spec, 1.3, 1.0, 1.3, 5)
    g = rec.associated_sequence(spec, 1.3, 5)
    assert rec.casorati(p, g, 1) == pytest.approx(0.6)
    assert rec.casorati(p, g, 2) == pytest.approx(0.72)
    assert rec.casorati(p, p, 3) == 0


def test_casorati_mismatch():
    p = rec.run_recurrence(rec.RecurrenceSpec.squeezing(0.6), 1.0, 1.0, 1.0, 5)
    q = rec.run_recurrence(rec.RecurrenceSpec.squeezing(0.6), 2.0, 1.0, 2.0, 5)
    with pytest.raises(DomainError):
        rec.casorati(p, q, 1)
    with pytest.raises(DomainError):
        rec.casorati(p, rec.run_recurrence(rec.RecurrenceSpec.hermite(), 1.0, 1, 1, 5), 1)
    with pytest.raises(DomainError):
        rec.casorati(p, p, 5)


def test_order_reduction_matches_associated():
    spec = rec.RecurrenceSpec.squeezing(0.6)
    p = rec.run_recurrence(spec, 1.0, 1.0, 1.0, 8)
    g = rec.associated_sequence(spec, 1.0, 8)
    red = rec.numerator_via_order_reduction(p, 0.0, p[0])
    np.testing.assert_allclose(red.values, g.values, atol=1e-10)


def test_order_reduction_zero_constants():
    p = rec.run_recurrence(rec.RecurrenceSpec.squeezing(0.6), 1.0, 1.0, 1.0, 8)
    assert not np.any(rec.numerator_via_order_reduction(p, 0.0, 0.0).values)


def test_order_reduction_reproduces_quotient_sum_on_hermite():
    # second solution of the Hermite recurrence at z with no H_k(z) = 0, k <= 6
    z = 0.37
    spec = rec.RecurrenceSpec.hermite()
    h = rec.run_recurrence(spec, 2 * z, 1.0, 2 * z, 7)
    red = rec.numerator_via_order_reduction(h, 0.0, 1.0)
    g = rec.associated_sequence(spec, 2 * z, 7)
    np.testing.assert_allclose(red.values, g.values, rtol=1e-10, atol=1e-12)
    # direct quotient sum: g_{m+1} = H_{m+1} sum_k 2^k k! / (H_k H_{k+1})
    for m in range(6):
        s = sum(2 ** k * math.factorial(k) / (h[k] * h[k + 1]) for k in range(m + 1))
        assert red[m + 1] == pytest.approx(h[m + 1] * s, rel=1e-12)


def test_order_reduction_pole():
    # alpha = 0: P_1 = 0 and the quotient sum is singular
    p = rec.run_recurrence(rec.RecurrenceSpec.squeezing(0.6), 0.0, 1.0, 0.0, 6)
    with pytest.raises(PoleError) as exc:
        rec.numerator_via_order_reduction(p, 0.0, 1.0)
    assert exc.value.index == 1


def test_compatibility_hermite_pairing():
    alpha, xi = 1.3, 0.6
    z = alpha / math.sqrt(2 * xi)
    ok = rec.compatibility_check(*rec.squeezing_coefficients(alpha, xi), *rec.hermite_coefficients(z), 30)
    assert ok and ok.worst_residual < 1e-12


def test_compatibility_trivial_and_kummer_failure():
    coeffs = rec.squeezing_coefficients(1.0, 0.6)
    assert rec.compatibility_check(*coeffs, *coeffs, 20)
    w = 1.0 / (2 * 0.6)
    bad = rec.compatibility_check(*coeffs, *rec.kummer_coefficients(0.5, w), 20)
    assert not bad
    assert "deviates" in bad.reason


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_decoupled_kummer_pairing(parity):
    alpha, xi = 1.1, 0.45
    w = alpha ** 2 / (2 * xi)
    if parity == "even":
        ours, c = rec.even_decoupled_coefficients(alpha, xi), 0.5
    else:
        ours, c = rec.odd_decoupled_coefficients(alpha, xi), 1.5
    assert rec.compatibility_check(*ours, *rec.kummer_coefficients(c, w), 25)
    # gauge of the terminating branch: (-2 xi)^n (c)_n
    for n in range(6):
        h = rec.comparison_gauge(*ours, *rec.kummer_coefficients(c, w), 1.0, n)
        ref = (-2 * xi) ** n * np.prod([c + k for k in range(n)])
        assert h == pytest.approx(ref, rel=1e-12)


def test_decoupled_recurrences_hold_for_subsequences():
    alpha, xi = 0.8 + 0.2j, 0.5 - 0.1j
    spec = rec.RecurrenceSpec.squeezing(xi)
    for p in (rec.run_recurrence(spec, alpha, 1.0, alpha, 30), rec.associated_sequence(spec, alpha, 30)):
        for coeffs, offset in ((rec.even_decoupled_coefficients(alpha, xi), 0),
                               (rec.odd_decoupled_coefficients(alpha, xi), 1)):
            a, b, d = coeffs
            for n in range(1, 14):
                f = [p[2 * m + offset] for m in (n - 1, n, n + 1)]
                res = a(n) * f[2] + b(n) * f[1] + d(n) * f[0]
                scale = max(abs(a(n) * f[2]), abs(b(n) * f[1]), abs(d(n) * f[0]))
                assert abs(res) <= 1e-12 * scale


def test_gauge_examples():
    alpha, xi = 0.9, 0.5
    z = alpha / math.sqrt(2 * xi)
    ours, herm = rec.squeezing_coefficients(alpha, xi), rec.hermite_coefficients(z)
    assert rec.comparison_gauge(*ours, *herm, 1.0, 2) == pytest.approx(0.25)
    for n in range(8):
        assert rec.comparison_gauge(*ours, *herm, 2.0, n) == pytest.approx(2.0 * (xi / 2) ** (n / 2))
    assert rec.comparison_gauge(*ours, *ours, 1.0, 5) == pytest.approx(1.0)


def test_gauge_errors():
    ours = rec.squeezing_coefficients(1.0, 0.6)
    with pytest.raises(DomainError):
        rec.comparison_gauge(*ours, *rec.kummer_coefficients(0.5, 0.8), 1.0, 4)
    zero_b = (lambda n: 1.0), (lambda n: 0.0), (lambda n: float(n))
    with pytest.raises(DomainError):
        rec.comparison_gauge(*zero_b, *zero_b, 1.0, 3)
