import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tractal import spectra
from tractal.errors import ApproximateOnlyError, DivergenceError, InvalidInputError
from tractal.sequences import SequenceDescriptor as S
from tractal.spectra import (
    factor_eigenvalue,
    gaussian_omega,
    second_ratio,
    tail_sum_H,
    tau_zero,
    truncation_index,
)

import helpers

OMEGA1 = (3.0 - math.sqrt(5.0)) / 2.0


def all_families():
    return [
        ("euler", spectra.euler(S.explicit([0, 1, 1, 2]))),
        ("wiener", spectra.wiener(S.explicit([0, 0, 1, 3]))),
        ("korobov", spectra.korobov(S.constant(1.0), S.power(1.0, -2.0))),
        ("gaussian", spectra.gaussian(S.power(1.0, -1.0))),
        ("analytic_korobov", spectra.analytic_korobov(
            0.5, S.explicit([1.0, 1.5, 2.0]), S.constant(1.2))),
        ("custom", spectra.custom_tabulated(
            [[1.0, 0.5, 0.25, 0.125], [1.0, 0.3, 0.09]],
            tail=spectra.TailModel("geometric", ratio=0.5), tau0=0.0)),
    ]


# ---------------------------------------------------------------------------
# factor_eigenvalue
# ---------------------------------------------------------------------------

def test_euler_leading_value():
    spec = spectra.euler(S.constant(0))
    assert factor_eigenvalue(spec, 1, 1) == pytest.approx((2.0 / math.pi) ** 2, rel=1e-14)


@pytest.mark.parametrize("r,g", [(1.0, 1.0), (2.0, 0.3)])
def test_korobov_unit_leading(r, g):
    spec = spectra.korobov(S.constant(r), S.constant(g))
    for k in (1, 2, 9):
        assert factor_eigenvalue(spec, k, 1) == 1.0


def test_korobov_pairing():
    spec = spectra.korobov(S.constant(1.0), S.constant(0.7))
    assert factor_eigenvalue(spec, 1, 2) == factor_eigenvalue(spec, 1, 3) == 0.7
    assert factor_eigenvalue(spec, 1, 4) == factor_eigenvalue(spec, 1, 5) == pytest.approx(0.7 / 4)


def test_gaussian_second_eigenvalue():
    spec = spectra.gaussian(S.constant(1.0))
    assert factor_eigenvalue(spec, 1, 2) == pytest.approx((1 - OMEGA1) * OMEGA1, rel=1e-14)


def test_analytic_korobov_pair_value():
    spec = spectra.analytic_korobov(0.5, S.constant(1.0), S.constant(1.0))
    for k in (1, 4):
        assert factor_eigenvalue(spec, k, 1) == 1.0
    assert factor_eigenvalue(spec, 1, 2) == 0.5
    assert factor_eigenvalue(spec, 1, 3) == 0.5


def test_wiener_approximate_flagging():
    spec = spectra.wiener(S.explicit([0, 2]))
    # r=0 is the plain min kernel and is exact
    assert factor_eigenvalue(spec, 1, 1, require_exact=True) == pytest.approx(
        (2.0 / math.pi) ** 2, rel=1e-14)
    with pytest.raises(ApproximateOnlyError):
        factor_eigenvalue(spec, 2, 1, require_exact=True)
    # without the flag the leading-order term comes back
    assert factor_eigenvalue(spec, 2, 1) == pytest.approx((2.0 / math.pi) ** 6, rel=1e-13)


def test_bad_indices():
    spec = spectra.euler(S.constant(0))
    with pytest.raises(InvalidInputError):
        factor_eigenvalue(spec, 1, 0)
    with pytest.raises(InvalidInputError):
        factor_eigenvalue(spec, 0, 1)


# ---------------------------------------------------------------------------
# gaussian_omega
# ---------------------------------------------------------------------------

def test_gaussian_omega_exact_value():
    assert gaussian_omega(1.0) == pytest.approx(2.0 / (3.0 + math.sqrt(5.0)), rel=1e-15)


def test_gaussian_omega_small_limit():
    g2 = 1e-9
    assert gaussian_omega(g2) / g2 == pytest.approx(1.0, abs=1e-6)


def test_gaussian_omega_monotone_pair():
    assert gaussian_omega(2.0) > gaussian_omega(1.0)


def test_gaussian_omega_domain():
    with pytest.raises(InvalidInputError):
        gaussian_omega(0.0)


@given(st.floats(min_value=1e-6, max_value=1e6), st.floats(min_value=1e-6, max_value=1e6))
@settings(max_examples=200, deadline=None)
def test_gaussian_omega_increasing_property(a, b):
    wa, wb = gaussian_omega(a), gaussian_omega(b)
    assert 0.0 < wa < 1.0
    if a < b:
        assert wa <= wb
    if b > a * (1.0 + 1e-9):  # strict once the gap clears float resolution
        assert wa < wb


# ---------------------------------------------------------------------------
# second_ratio
# ---------------------------------------------------------------------------

def test_second_ratio_values():
    assert second_ratio(spectra.euler(S.constant(0)), 1) == pytest.approx(1.0 / 9.0, rel=1e-15)
    ko = spectra.korobov(S.constant(1.0), S.power(1.0, -2.0))
    assert second_ratio(ko, 3) == pytest.approx(1.0 / 9.0, rel=1e-15)
    assert second_ratio(spectra.gaussian(S.constant(1.0)), 1) == pytest.approx(OMEGA1, rel=1e-14)


def test_second_ratio_wiener_envelope():
    spec = spectra.wiener(S.explicit([0, 1, 3]))
    assert second_ratio(spec, 1) == 1.0
    assert second_ratio(spec, 2) == 0.25
    assert second_ratio(spec, 3) == pytest.approx(1.0 / 16.0)


@pytest.mark.parametrize("name,spec", all_families())
def test_second_ratio_nonincreasing_in_k(name, spec):
    prev = None
    ks = list(range(1, 200)) + list(range(200, 10001, 97))
    for k in ks:
        h = second_ratio(spec, k)
        assert 0.0 < h <= 1.0
        if prev is not None:
            assert h <= prev + 1e-15
        prev = h


# ---------------------------------------------------------------------------
# tail_sum_H
# ---------------------------------------------------------------------------

def test_tail_sum_korobov_zeta():
    spec = spectra.korobov(S.constant(1.0), S.constant(1.0))
    assert tail_sum_H(spec, 1, 1.0) == pytest.approx(math.pi ** 2 / 3.0, rel=1e-12)


def test_tail_sum_gaussian_geometric():
    spec = spectra.gaussian(S.constant(1.0))
    assert tail_sum_H(spec, 1, 1.0) == pytest.approx(1.0 / (1.0 - OMEGA1), rel=1e-13)


def test_tail_sum_euler_divergent():
    spec = spectra.euler(S.constant(0))
    assert tail_sum_H(spec, 1, 0.5) == math.inf
    ko = spectra.korobov(S.constant(1.0), S.constant(1.0))
    assert tail_sum_H(ko, 1, 0.5) == math.inf


def test_tail_sum_domain():
    with pytest.raises(InvalidInputError):
        tail_sum_H(spectra.gaussian(S.constant(1.0)), 1, 0.0)


@pytest.mark.parametrize("name,spec", all_families())
def test_tail_sum_matches_direct_summation(name, spec):
    # tau at least 0.1 above the divergence threshold
    tau = tau_zero(spec).hi + 0.1 if name != "wiener" else 0.7
    for k in (1, 2, 3):
        H = tail_sum_H(spec, k, tau)
        fac = spec.factor(k)
        lam2 = fac.second
        head = float(np.sum((fac.eigenvalues_up_to(1200)[1:] / lam2) ** tau))
        tail = helpers.factor_tau_tail(spec, k, tau, 1200) / lam2 ** tau
        assert H == pytest.approx(head + tail, rel=1e-9)


@pytest.mark.parametrize("name,spec", all_families())
def test_tail_sum_sup_attained_at_first_dimension(name, spec):
    tau = tau_zero(spec).hi + 0.15
    h1 = tail_sum_H(spec, 1, tau)
    sup = max(tail_sum_H(spec, k, tau) for k in range(1, 101))
    assert sup == h1


@pytest.mark.parametrize("name,spec", all_families())
def test_eigenvalues_nonincreasing_in_j(name, spec):
    for k in (1, 7, 100):
        vals = spec.factor(k).eigenvalues_up_to(1000)
        assert np.all(np.diff(vals) <= 0)
        assert vals[-1] < vals[0]  # decays toward zero


# ---------------------------------------------------------------------------
# tau_zero
# ---------------------------------------------------------------------------

def test_tau_zero_values():
    assert tau_zero(spectra.euler(S.constant(1))) == spectra.Interval.point(0.25)
    assert tau_zero(spectra.gaussian(S.constant(1.0))) == spectra.Interval.point(0.0)
    w = tau_zero(spectra.wiener(S.constant(0)))
    assert (w.lo, w.hi) == (0.0, 0.6)
    assert tau_zero(spectra.korobov(S.constant(2.0), S.constant(1.0))) == \
        spectra.Interval.point(0.25)


def test_tau_zero_custom():
    declared = spectra.custom_tabulated([[1.0, 0.5]], tau0=0.1,
                                        tail=spectra.TailModel("geometric", ratio=0.5))
    assert tau_zero(declared) == spectra.Interval.point(0.1)
    unknown = spectra.custom_tabulated([[1.0, 0.5]])
    with pytest.warns(UserWarning, match="tau0"):
        iv = tau_zero(unknown)
    assert iv.lo == 0.0 and math.isinf(iv.hi)


# ---------------------------------------------------------------------------
# truncation_index
# ---------------------------------------------------------------------------

def test_truncation_index_gaussian_closed_form():
    spec = spectra.gaussian(S.constant(1.0))
    assert truncation_index(spec, 1, 1.0, 1e-12) == 30


@pytest.mark.parametrize("name,spec", all_families()[:5])
def test_truncation_index_whole_tail_allowed(name, spec):
    tau = tau_zero(spec).hi + 0.5 if name != "wiener" else 1.0
    assert truncation_index(spec, 1, tau, 1.0) == 2


def test_analytic_korobov_sublinear_exponent():
    # b < 1 exercises the incomplete-gamma tail machinery
    spec = spectra.analytic_korobov(0.6, S.constant(1.5), S.constant(0.8))
    tau = 0.7
    c = tau * 1.5 * math.log(1.0 / 0.6)
    direct, m = 0.0, 1
    while True:
        t = math.exp(-c * (m ** 0.8 - 1.0))
        direct += 2.0 * t
        if t < 1e-19 * direct:
            break
        m += 1
    assert tail_sum_H(spec, 1, tau) == pytest.approx(direct, rel=1e-12)
    J = truncation_index(spec, 1, tau, 1e-10)
    fac = spec.factor(1)
    tail_true = float(np.sum((fac.eigenvalues_block(J + 1, J + 4000) / fac.second) ** tau))
    assert tail_true < 1e-10 * tail_sum_H(spec, 1, tau)
    assert spectra._tail_bound_fn(spec, 1, tau)(J - 1) >= 1e-10 * tail_sum_H(spec, 1, tau)


def test_truncation_index_divergent():
    spec = spectra.euler(S.constant(0))
    with pytest.raises(DivergenceError):
        truncation_index(spec, 1, 0.4, 1e-6)


def test_truncation_index_bound_is_valid_and_minimal():
    spec = spectra.korobov(S.constant(1.0), S.constant(1.0))
    tau, tol = 2.0, 1e-8
    J = truncation_index(spec, 1, tau, tol)
    H = tail_sum_H(spec, 1, tau)
    bound = spectra._tail_bound_fn(spec, 1, tau)
    assert bound(J) < tol * H <= bound(J - 1)
    # the bound really dominates the true tail
    fac = spec.factor(1)
    true_tail = helpers.factor_tau_tail(spec, 1, tau, J) / fac.second ** tau
    assert true_tail <= bound(J)
    assert true_tail < tol * H


@given(st.floats(min_value=0.2, max_value=3.0), st.floats(min_value=1e-14, max_value=0.5))
@settings(max_examples=60, deadline=None)
def test_truncation_index_minimality_property(tau, tol):
    spec = spectra.gaussian(S.constant(1.0))
    J = truncation_index(spec, 1, tau, tol)
    H = tail_sum_H(spec, 1, tau)
    bound = spectra._tail_bound_fn(spec, 1, tau)
    assert J >= 2
    assert bound(J) < tol * H
    if J > 2:
        assert bound(J - 1) >= tol * H


# ---------------------------------------------------------------------------
# construction validation
# ---------------------------------------------------------------------------

def test_family_validation_errors():
    with pytest.raises(InvalidInputError):
        spectra.korobov(S.constant(0.0), S.constant(1.0))  # r must be positive
    with pytest.raises(InvalidInputError):
        spectra.korobov(S.constant(1.0), S.constant(1.5))  # g <= 1
    with pytest.raises(InvalidInputError):
        spectra.gaussian(S.power(1.0, 2.0))  # must be nonincreasing
    with pytest.raises(InvalidInputError):
        spectra.analytic_korobov(1.5, S.constant(1.0), S.constant(1.0))
    with pytest.raises(InvalidInputError):
        spectra.analytic_korobov(0.5, S.constant(1.0), S.power(1.0, -1.0))  # inf b = 0
    with pytest.raises(InvalidInputError):
        spectra.euler(S.explicit([0.5]))  # integer smoothness required
    with pytest.raises(InvalidInputError):
        spectra.custom_tabulated([[1.0]])


def test_criterion_support():
    assert spectra.wiener(S.constant(1)).criterion_support == {"nor"}
    assert spectra.korobov(S.constant(1.0), S.constant(0.5)).criterion_support == {"abs", "nor"}
    assert spectra.euler(S.constant(0)).criterion_support == {"abs", "nor"}
    unit = spectra.custom_tabulated([[1.0, 0.5]], tau0=0.0)
    assert unit.criterion_support == {"abs", "nor"}
    scaled = spectra.custom_tabulated([[2.0, 1.0]], tau0=0.0)
    assert scaled.criterion_support == {"nor"}
