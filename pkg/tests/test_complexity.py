import math
import random

import numpy as np
import pytest

from tractal import products, spectra
from tractal.complexity import (
    ComplexityQuery,
    info_complexity,
    lemma_bound,
    minimal_error,
    pt_functional,
    qpt_functional,
)
from tractal.errors import DivergenceError, InvalidInputError, UnsupportedCriterionError
from tractal.products import ProductProblem
from tractal.sequences import SequenceDescriptor as S

import helpers

OMEGA1 = spectra.gaussian_omega(1.0)
GAUSS1 = spectra.gaussian(S.constant(1.0))
UNIT_KOROBOV = spectra.korobov(S.constant(1.0), S.constant(1.0))


def test_query_validation():
    with pytest.raises(InvalidInputError):
        ComplexityQuery(epsilon=1.0, d=1)
    with pytest.raises(InvalidInputError):
        ComplexityQuery(epsilon=1.5, d=1)
    with pytest.raises(InvalidInputError):
        ComplexityQuery(epsilon=0.5, d=0)
    with pytest.raises(InvalidInputError):
        ComplexityQuery(epsilon=0.5, d=1, criterion="rel")


def test_minimal_error_initial():
    p = ProductProblem.from_family(GAUSS1, 1)
    assert minimal_error(p, 0) == pytest.approx(math.sqrt(1 - OMEGA1), rel=1e-14)


def test_minimal_error_unit_korobov():
    p = ProductProblem.from_family(UNIT_KOROBOV, 2)
    assert minimal_error(p, 4) == 1.0


def test_minimal_error_nonincreasing():
    p = ProductProblem.from_family(spectra.gaussian(S.power(1.0, -1.0)), 3)
    errs = [minimal_error(p, n) for n in range(0, 101)]
    assert all(b <= a for a, b in zip(errs, errs[1:]))


def test_info_complexity_examples():
    p = ProductProblem.from_family(GAUSS1, 2)
    assert info_complexity(p, ComplexityQuery(0.5, 2, "nor")).n == 3
    assert info_complexity(p, ComplexityQuery(0.5, 2, "abs")).n == 1


def test_info_complexity_boundaries():
    p1 = ProductProblem.from_family(GAUSS1, 1)
    # lam2/lam1 = omega < eps**2 for eps near one, so exactly one value counts
    res = info_complexity(p1, ComplexityQuery(0.999999, 1, "nor"))
    assert res.n == 1
    # absolute threshold at or above lam_{d,1} counts nothing
    res = info_complexity(p1, ComplexityQuery(0.8, 1, "abs"))
    assert res.threshold > p1.leading_product
    assert res.n == 0


def test_info_complexity_criterion_gate():
    p = ProductProblem.from_family(spectra.wiener(S.constant(1)), 2)
    with pytest.raises(UnsupportedCriterionError):
        info_complexity(p, ComplexityQuery(0.5, 2, "abs"))
    assert info_complexity(p, ComplexityQuery(0.5, 2, "nor")).n >= 1


def test_info_complexity_nonincreasing_in_epsilon():
    p = ProductProblem.from_family(spectra.gaussian(S.power(1.0, -1.0)), 3)
    ns = [info_complexity(p, ComplexityQuery(e, 3, "nor")).n
          for e in (0.9, 0.7, 0.5, 0.3, 0.1)]
    assert all(b >= a for a, b in zip(ns, ns[1:]))


def test_info_complexity_error_sandwich():
    p = ProductProblem.from_family(spectra.gaussian(S.power(1.0, -1.0)), 2)
    for eps in (0.9, 0.5, 0.2, 0.05):
        res = info_complexity(p, ComplexityQuery(eps, 2, "nor"))
        cri = minimal_error(p, 0)
        if res.n >= 1:
            assert minimal_error(p, res.n) <= eps * cri
            assert minimal_error(p, res.n - 1) > eps * cri


def test_curse_witness_small_d():
    for d in range(1, 9):
        p = ProductProblem.from_family(UNIT_KOROBOV, d)
        cap = 2 ** d
        res = info_complexity(p, ComplexityQuery(0.5, d, "nor"), cap=cap)
        n_lower = res.n  # saturated counts are exact lower bounds
        assert n_lower >= 2 ** d - 1


def test_lemma_bound_examples():
    p = ProductProblem.from_family(GAUSS1, 2)
    assert lemma_bound(p, 0.5, 1.0) == 11
    assert lemma_bound(p, 0.5, 1.0) >= info_complexity(p, ComplexityQuery(0.5, 2, "nor")).n
    e = ProductProblem.from_family(spectra.euler(S.constant(0)), 1)
    assert lemma_bound(e, 0.5, 1.0) == 5
    assert lemma_bound(p, 0.999, 1.0) >= info_complexity(p, ComplexityQuery(0.999, 2, "nor")).n


def test_lemma_bound_dominates_counts():
    rng = random.Random(5)
    for _ in range(8):
        name, spec = helpers.random_family(rng, allow_wiener=False)
        d = rng.randint(1, 4)
        p = ProductProblem.from_family(spec, d)
        tau0_hi = spectra.tau_zero(spec).hi
        for tau in (0.8, 1.0, 2.0):
            if tau <= tau0_hi:
                continue
            for eps in (0.9, 0.5, 0.2):
                n = info_complexity(p, ComplexityQuery(eps, d, "nor")).n
                assert lemma_bound(p, eps, tau) >= n


def test_nor_scale_invariance():
    rng = random.Random(99)
    for _ in range(20):
        name, spec = helpers.random_family(rng)
        d = rng.randint(1, 4)
        p = ProductProblem.from_family(spec, d)
        scales = [rng.uniform(0.01, 10.0) for _ in range(d)]
        q = p.scaled(scales)
        eps = rng.uniform(0.05, 0.95)
        n0 = info_complexity(p, ComplexityQuery(eps, d, "nor")).n
        n1 = info_complexity(q, ComplexityQuery(eps, d, "nor")).n
        assert n0 == n1


def test_pt_functional_examples():
    vals = pt_functional(spectra.gaussian(S.power(1.0, -2.0)), 1.0, 0.0, 200)
    assert np.all(np.diff(vals) >= 0)
    # summable shape parameters: the profile flattens onto a finite supremum
    assert vals[19] - vals[18] < 7e-3
    assert vals[-1] - vals[19] < 0.15
    assert vals[-1] < 2.9  # the supremum prod_k 1/(1 - omega_k) is finite
    grow = pt_functional(UNIT_KOROBOV, 1.0, 0.0, 10)
    assert grow[9] / grow[8] == pytest.approx(1.0 + math.pi ** 2 / 3.0, rel=1e-9)
    single = pt_functional(GAUSS1, 1.3, 0.0, 1)
    expect = spectra.normalized_factor_power_sum(GAUSS1, 1, 1.3) ** (1 / 1.3)
    assert single[0] == pytest.approx(expect, rel=1e-13)


def test_pt_functional_divergence_names_dimension():
    with pytest.raises(DivergenceError, match="dimension 1"):
        pt_functional(UNIT_KOROBOV, 0.4, 0.0, 3)


def test_qpt_functional_reduces_to_pt_at_d1():
    a = qpt_functional(GAUSS1, 0.7, 1)
    b = pt_functional(GAUSS1, 0.7, 0.0, 1)
    assert a[0] == pytest.approx(b[0], rel=1e-13)


def test_qpt_functional_threshold_sides():
    tstar = 2.0 / math.log(1.0 / OMEGA1)
    hi = qpt_functional(GAUSS1, 2.2, 50)
    assert hi.max() == hi[0]  # bounded profile, supremum at the start
    assert hi[-1] < 1e-2
    # below the threshold the profile is eventually unbounded; visible growth
    # needs a longer window than d=50 (see the acceptance analysis)
    lo = qpt_functional(GAUSS1, 0.5 * (tstar / 2.0), 500)
    assert lo[-1] / lo[0] > 1e3
    tail = lo[150:]
    assert np.all(np.diff(tail) > 0)
