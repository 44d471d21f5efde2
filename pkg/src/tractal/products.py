"""d-variate product spectra: top-m enumeration, counting, trace sums.

Products are taken over one factor per dimension in fixed order k = 1..d.
For d <= 30 (and leading products comfortably inside the double range)
values are accumulated by direct multiplication, which makes results
bit-reproducible against the brute-force oracle; beyond that everything
switches to log space.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, DivergenceError, InvalidInputError
from . import spectra

ENUMERATION_CAP = 10**7
COUNTING_CAP = 10**8

_DIRECT_DIM_LIMIT = 30
_DIRECT_LOG_FLOOR = -300.0
_BLOCK = 1 << 13


@dataclass(frozen=True)
class CountResult:
    count: int
    saturated: bool
    cap: int

    def __post_init__(self):
        if self.saturated and self.count != self.cap:
            raise ValueError("saturated counts must equal the cap")


class ProductProblem:
    """An ordered list of factor spectra defining the product eigenvalues."""

    def __init__(self, factors, family=None):
        factors = list(factors)
        if not factors:
            raise InvalidInputError("a product problem needs at least one factor")
        self.factors = factors
        self.family = family
        self.d = len(factors)
        leads = np.array([f.leading for f in factors], dtype=float)
        self.log_leads = np.log(leads)
        # suffix_leading[k] = prod_{k' > k} lam(k', 1), 0-indexed, length d+1
        self.suffix_leading = np.ones(self.d + 1)
        for k in range(self.d - 1, -1, -1):
            self.suffix_leading[k] = leads[k] * self.suffix_leading[k + 1]
        self.log_suffix_leading = np.concatenate(
            (np.cumsum(self.log_leads[::-1])[::-1], [0.0]))
        self.uses_log = (self.d > _DIRECT_DIM_LIMIT
                         or self.log_suffix_leading[0] < _DIRECT_LOG_FLOOR)

    @classmethod
    def from_family(cls, spec, d):
        if d < 1:
            raise InvalidInputError(f"d must be >= 1, got {d}")
        if spec.family is spectra.Family.CUSTOM and d > len(spec.tables):
            raise InvalidInputError(
                f"custom spec provides {len(spec.tables)} tables, requested d={d}")
        return cls([spec.factor(k) for k in range(1, d + 1)], family=spec)

    @property
    def leading_product(self) -> float:
        return float(self.suffix_leading[0])

    @property
    def log_leading_product(self) -> float:
        return float(self.log_suffix_leading[0])

    def scaled(self, constants) -> "ProductProblem":
        """Each factor multiplied by its positive constant; family link dropped."""
        constants = list(constants)
        if len(constants) != self.d:
            raise InvalidInputError("need one scale constant per dimension")
        return ProductProblem([f.scaled(c) for f, c in zip(self.factors, constants)])


def product_eigenvalues_top(problem: ProductProblem, m: int, cap: int = ENUMERATION_CAP) -> np.ndarray:
    """The m largest product eigenvalues, nonincreasing, with multiplicity.

    Best-first search over the index lattice from (1, ..., 1); successors
    increment one coordinate.  Ties pop in lexicographic index order.
    """
    if m < 1:
        raise InvalidInputError(f"m must be >= 1, got {m}")
    if m > cap:
        raise CapExceededError(f"m={m} exceeds the enumeration cap {cap}")
    d = problem.d
    facs = problem.factors
    use_log = problem.uses_log

    def key_of(idx):
        if use_log:
            return sum(math.log(facs[k].eigenvalue(idx[k])) for k in range(d))
        v = 1.0
        for k in range(d):
            v = v * facs[k].eigenvalue(idx[k])
        return v

    start = (1,) * d
    heap = [(-key_of(start), start)]
    seen = {start}
    out = np.empty(m)
    for i in range(m):
        if not heap:
            raise InvalidInputError("spectrum exhausted before m values (zero eigenvalue hit)")
        negkey, idx = heapq.heappop(heap)
        out[i] = math.exp(-negkey) if use_log else -negkey
        for k in range(d):
            nxt = idx[:k] + (idx[k] + 1,) + idx[k + 1:]
            if nxt not in seen:
                lam = facs[k].eigenvalue(nxt[k])
                if lam > 0.0:
                    seen.add(nxt)
                    heapq.heappush(heap, (-key_of(nxt), nxt))
    return out


def count_products_above(problem: ProductProblem, T: float, cap: int = COUNTING_CAP) -> CountResult:
    """|{(j_1..j_d) : prod_k lam(k, j_k) > T}|, saturating at cap.

    Depth-first in dimension order; at depth k a branch survives while
    prefix * lam(k, j) * SuffixMax(k) > T with strict inequality.  The last
    dimension is counted in vectorized blocks.
    """
    if T <= 0:
        raise InvalidInputError("threshold must be positive (the count would be infinite)")
    if cap < 1:
        raise InvalidInputError(f"cap must be >= 1, got {cap}")
    if problem.uses_log:
        return _count_impl(problem, math.log(T), cap, log_space=True)
    return _count_impl(problem, T, cap, log_space=False)


def count_products_above_log(problem: ProductProblem, log_T: float,
                             cap: int = COUNTING_CAP) -> CountResult:
    """count_products_above with the threshold given as ln T.

    Counts in log space regardless of dimension, so thresholds outside the
    double range stay usable.
    """
    if cap < 1:
        raise InvalidInputError(f"cap must be >= 1, got {cap}")
    return _count_impl(problem, log_T, cap, log_space=True)


def _count_impl(problem, T, cap, log_space):
    d = problem.d
    facs = problem.factors
    sfx = problem.log_suffix_leading if log_space else problem.suffix_leading
    count = 0
    pushes = 0
    # Each pushed prefix contributes at least one counted tuple, so pushes
    # are bounded by the cap as well.
    stack = [(0, 0.0 if log_space else 1.0)]
    while stack:
        k, P = stack.pop()
        fac = facs[k]
        if k == d - 1:
            j0 = 1
            width = 64  # most branches die early; widen only while surviving
            while True:
                if log_space:
                    vals = P + fac.log_eigenvalues_block(j0, j0 + width)
                else:
                    vals = P * fac.eigenvalues_block(j0, j0 + width)
                good = vals > T
                n_good = int(good.argmin()) if not good.all() else vals.size
                count += n_good
                if count >= cap:
                    return CountResult(cap, True, cap)
                if n_good < vals.size:
                    break
                j0 += width
                width = min(width * 4, _BLOCK)
        else:
            s = float(sfx[k + 1])
            j = 1
            while True:
                lam = fac.eigenvalue(j)
                if lam <= 0.0:
                    break
                pfx = (P + math.log(lam)) if log_space else (P * lam)
                if not ((pfx + s) > T if log_space else (pfx * s) > T):
                    break
                stack.append((k + 1, pfx))
                pushes += 1
                if pushes >= cap:
                    return CountResult(cap, True, cap)
                j += 1
    return CountResult(count, False, cap)


def trace_sum(problem: ProductProblem, tau: float, tol: float = 1e-12) -> float:
    """sum_j lam_{d,j}**tau = prod_k sum_j lam(k,j)**tau."""
    return math.exp(log_trace_sum(problem, tau, tol))


def log_trace_sum(problem: ProductProblem, tau: float, tol: float = 1e-12) -> float:
    """ln of the trace sum; use this form for large d to avoid overflow."""
    if problem.family is None:
        raise InvalidInputError("trace sums need a family-backed problem")
    if tau <= 0:
        raise InvalidInputError(f"tau must be positive, got {tau}")
    # factor sums carry ~1e-12 relative error each (closed forms much less)
    if tol < problem.d * 5e-15:
        raise InvalidInputError(f"cannot certify relative tolerance {tol} at d={problem.d}")
    total = 0.0
    for k in range(1, problem.d + 1):
        try:
            total += math.log(spectra.factor_power_sum(problem.family, k, tau))
        except DivergenceError:
            raise DivergenceError(f"trace diverges at dimension {k}", dimension=k)
    return total


def brute_force_oracle(problem: ProductProblem, J: int) -> np.ndarray:
    """All products over the box j_k <= J, sorted descending.

    Exact reference only for thresholds above
    max_k lam(k, J) * prod_{k' != k} lam(k', 1); see
    :func:`oracle_validity_floor`.
    """
    if J < 1:
        raise InvalidInputError(f"J must be >= 1, got {J}")
    if J ** problem.d > ENUMERATION_CAP:
        raise CapExceededError(f"J**d = {J ** problem.d} exceeds {ENUMERATION_CAP}")
    vals = None
    for fac in problem.factors:
        arr = fac.eigenvalues_up_to(J)
        vals = arr.copy() if vals is None else np.multiply.outer(vals, arr).ravel()
    return np.sort(vals)[::-1]


def oracle_validity_floor(problem: ProductProblem, J: int) -> float:
    """Thresholds above this value are counted exactly by the J-box oracle."""
    floors = []
    for k, fac in enumerate(problem.factors):
        # prod_{k' != k} lam(k', 1)
        prod = 1.0
        for kk, f2 in enumerate(problem.factors):
            if kk != k:
                prod *= f2.leading
        floors.append(fac.eigenvalue(J) * prod)
    return max(floors)


def oracle_count_above(problem: ProductProblem, J: int, T: float) -> int:
    """Count from the brute-force box; caller checks the validity floor."""
    return int((brute_force_oracle(problem, J) > T).sum())
