"""Worst-case errors, information complexity, and trace-based bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, InvalidInputError, UnsupportedCriterionError
from .xreal import ceil_exp
from . import products, spectra
from .products import COUNTING_CAP, ENUMERATION_CAP, ProductProblem


@dataclass(frozen=True)
class ComplexityQuery:
    epsilon: float
    d: int
    criterion: str = spectra.NOR

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise InvalidInputError(f"epsilon must lie in (0,1), got {self.epsilon}")
        if self.d < 1:
            raise InvalidInputError(f"d must be >= 1, got {self.d}")
        if self.criterion not in (spectra.ABS, spectra.NOR):
            raise InvalidInputError(f"criterion must be 'abs' or 'nor', got {self.criterion!r}")


@dataclass(frozen=True)
class ComplexityResult:
    n: int
    threshold: float
    saturated: bool


def minimal_error(problem: ProductProblem, n: int, cap: int = ENUMERATION_CAP) -> float:
    """e(n) = sqrt of the (n+1)-st largest product eigenvalue; e(0) is the
    initial error sqrt(prod_k lam(k,1))."""
    if n < 0:
        raise InvalidInputError(f"n must be >= 0, got {n}")
    if n == 0:
        return math.exp(0.5 * problem.log_leading_product)
    top = products.product_eigenvalues_top(problem, n + 1, cap=cap)
    return math.sqrt(top[-1])


def info_complexity(problem: ProductProblem, query: ComplexityQuery,
                    cap: int = COUNTING_CAP) -> ComplexityResult:
    """Minimal n with e(n) <= epsilon * CRI, as a spectrum count.

    The threshold is epsilon**2 for the absolute criterion and
    epsilon**2 * lam_{d,1} for the normalized one; n is the number of
    product eigenvalues strictly above it.
    """
    if query.d != problem.d:
        raise InvalidInputError(f"query d={query.d} does not match problem d={problem.d}")
    if problem.family is not None and query.criterion not in problem.family.criterion_support:
        raise UnsupportedCriterionError(
            f"criterion {query.criterion!r} is not supported for the "
            f"{problem.family.family.value} family")
    eps2 = query.epsilon * query.epsilon
    if query.criterion == spectra.ABS:
        threshold = eps2
        res = products.count_products_above(problem, threshold, cap=cap)
    elif problem.uses_log:
        # CRI**2 assembled in log space so huge d cannot underflow
        log_threshold = 2.0 * math.log(query.epsilon) + problem.log_leading_product
        threshold = math.exp(log_threshold)
        res = products.count_products_above_log(problem, log_threshold, cap=cap)
    else:
        threshold = eps2 * problem.leading_product
        res = products.count_products_above(problem, threshold, cap=cap)
    return ComplexityResult(n=res.count, threshold=threshold, saturated=res.saturated)


def lemma_bound(problem: ProductProblem, epsilon: float, tau: float) -> int:
    """ceil(normalized trace at tau * epsilon**(-2*tau)); an upper bound for
    the normalized-criterion complexity whenever the trace is finite."""
    if not 0.0 < epsilon < 1.0:
        raise InvalidInputError(f"epsilon must lie in (0,1), got {epsilon}")
    log_value = log_normalized_trace(problem, tau) - 2.0 * tau * math.log(epsilon)
    return ceil_exp(log_value)


def log_normalized_trace(problem: ProductProblem, tau: float) -> float:
    """ln sum_j (lam_{d,j}/lam_{d,1})**tau via the per-factor identity."""
    if problem.family is None:
        raise InvalidInputError("normalized traces need a family-backed problem")
    total = 0.0
    for k in range(1, problem.d + 1):
        total += math.log(spectra.normalized_factor_power_sum(problem.family, k, tau))
    return total


def pt_functional(spec, tau: float, q: float, D: int) -> np.ndarray:
    """d -> (sum_j (lam_{d,j}/lam_{d,1})**tau)**(1/tau) * d**-q for d <= D.

    Boundedness of this profile over all d is the polynomial-tractability
    criterion; a finite window can only support the verdict, never prove it.
    """
    if tau <= 0:
        raise InvalidInputError(f"tau must be positive, got {tau}")
    if D < 1:
        raise InvalidInputError(f"D must be >= 1, got {D}")
    log_terms = np.empty(D)
    for k in range(1, D + 1):
        try:
            log_terms[k - 1] = math.log(spectra.normalized_factor_power_sum(spec, k, tau))
        except DivergenceError as exc:
            raise DivergenceError(
                f"factor power sum diverges at dimension {k} for tau={tau}",
                dimension=k) from exc
    cum = np.cumsum(log_terms)
    d = np.arange(1, D + 1, dtype=float)
    return np.exp(cum / tau - q * np.log(d))


def qpt_functional(spec, tau: float, D: int) -> np.ndarray:
    """As pt_functional with exponent tau*(1+ln d) inside and d**-2 outside."""
    if tau <= 0:
        raise InvalidInputError(f"tau must be positive, got {tau}")
    if D < 1:
        raise InvalidInputError(f"D must be >= 1, got {D}")
    out = np.empty(D)
    for d in range(1, D + 1):
        x = tau * (1.0 + math.log(d))
        total = 0.0
        for k in range(1, d + 1):
            try:
                total += math.log(spectra.normalized_factor_power_sum(spec, k, x))
            except DivergenceError as exc:
                raise DivergenceError(
                    f"factor power sum diverges at dimension {k} for exponent {x}",
                    dimension=k) from exc
        out[d - 1] = math.exp(total / tau - 2.0 * math.log(d))
    return out
