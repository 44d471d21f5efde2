"""Univariate factor spectra for the supported kernel families.

Each family describes, per dimension ``k``, a nonincreasing sequence of
operator eigenvalues ``lam(k, j)``.  This module evaluates those eigenvalues
in closed form, together with the derived quantities the rest of the package
is built on: the second ratio ``h_k = lam(k,2)/lam(k,1)``, the tail ratio sum
``H(k, tau) = sum_{j>=2} (lam(k,j)/lam(k,2))**tau``, its divergence threshold
``tau0``, and certified truncation indices.

Family summary (``j >= 1``, ``m = floor(j/2)``):

* ``euler``            lam(k,j) = (pi*(j-1/2))**-(2*r_k+2)
* ``wiener``           leading-order term equals the euler formula; exact
                       values for r_k >= 1 have no closed form and are only
                       available numerically (see :mod:`tractal.nystrom`),
                       so factors are flagged approximate
* ``korobov``          lam(k,1) = 1, lam(k,2m) = lam(k,2m+1) = g_k * m**(-2*r_k)
* ``gaussian``         lam(k,j) = (1-w_k) * w_k**(j-1), w_k = gaussian_omega(gamma_k^2)
* ``analytic_korobov`` lam(k,1) = 1, lam(k,2m) = lam(k,2m+1) = omega**(a_k * m**b_k)
* ``custom``           per-dimension tables with an optional tail model

All operations are pure; specs and factors are immutable after construction
and safe to share across threads.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.special import gamma as _gamma_fn, gammaincc as _gammaincc

from .errors import (
    ApproximateOnlyError,
    DivergenceError,
    InvalidInputError,
    UndecidableError,
)
from .sequences import SequenceDescriptor, validate_sequence
from .special import riemann_zeta
from .xreal import INF, Interval

_REL_TOL = 1e-12


class Family(str, enum.Enum):
    EULER = "euler"
    WIENER = "wiener"
    KOROBOV = "korobov"
    GAUSSIAN = "gaussian"
    ANALYTIC_KOROBOV = "analytic_korobov"
    CUSTOM = "custom"


ABS = "abs"
NOR = "nor"


@dataclass(frozen=True)
class TailModel:
    """Decay model for a tabulated spectrum beyond its last entry.

    ``geometric``: lam(J+i) = lam(J) * ratio**i.
    ``power``:     lam(j) = lam(J) * (J/j)**exponent for j > J.
    """

    kind: str
    ratio: float = 0.0
    exponent: float = 0.0

    def __post_init__(self):
        if self.kind == "geometric":
            if not 0.0 < self.ratio < 1.0:
                raise InvalidInputError(f"geometric tail ratio must be in (0,1), got {self.ratio}")
        elif self.kind == "power":
            if self.exponent <= 0:
                raise InvalidInputError(f"power tail exponent must be positive, got {self.exponent}")
        else:
            raise InvalidInputError(f"unknown tail model kind {self.kind!r}")


@dataclass(frozen=True)
class FamilySpec:
    """A kernel family plus the parameter sequences it requires."""

    family: Family
    r: Optional[SequenceDescriptor] = None
    g: Optional[SequenceDescriptor] = None
    gamma_sq: Optional[SequenceDescriptor] = None
    omega: float = 0.0
    a: Optional[SequenceDescriptor] = None
    b: Optional[SequenceDescriptor] = None
    tables: tuple = ()
    tail: Optional[TailModel] = None
    declared_tau0: Optional[float] = None
    declared_a_star: Optional[float] = None
    declared_b_limit: Optional[float] = None

    @property
    def criterion_support(self) -> frozenset:
        if self.family in (Family.KOROBOV, Family.ANALYTIC_KOROBOV):
            return frozenset((ABS, NOR))
        if self.family in (Family.EULER, Family.GAUSSIAN):
            # ABS is covered by the family-specific exponent formulas.
            return frozenset((ABS, NOR))
        if self.family is Family.CUSTOM:
            if all(row[0] == 1.0 for row in self.tables):
                return frozenset((ABS, NOR))
            return frozenset((NOR,))
        return frozenset((NOR,))

    def factor(self, k: int) -> "FactorSpectrum":
        return _factor(self, k)


def euler(r: SequenceDescriptor) -> FamilySpec:
    validate_sequence(r, "r", direction="nondecreasing", positive=False, integer=True)
    return FamilySpec(family=Family.EULER, r=r)


def wiener(r: SequenceDescriptor) -> FamilySpec:
    validate_sequence(r, "r", direction="nondecreasing", positive=False, integer=True)
    return FamilySpec(family=Family.WIENER, r=r)


def korobov(r: SequenceDescriptor, g: SequenceDescriptor) -> FamilySpec:
    validate_sequence(r, "r", direction="nondecreasing", positive=True)
    validate_sequence(g, "g", direction="nonincreasing", positive=True, max_value=1.0)
    return FamilySpec(family=Family.KOROBOV, r=r, g=g)


def gaussian(gamma_sq: SequenceDescriptor) -> FamilySpec:
    validate_sequence(gamma_sq, "gamma_sq", direction="nonincreasing", positive=True)
    return FamilySpec(family=Family.GAUSSIAN, gamma_sq=gamma_sq)


def analytic_korobov(omega: float, a: SequenceDescriptor, b: SequenceDescriptor) -> FamilySpec:
    if not 0.0 < omega < 1.0:
        raise InvalidInputError(f"omega must lie in (0,1), got {omega}")
    validate_sequence(a, "a", direction="nondecreasing", positive=True)
    validate_sequence(b, "b", positive=True)
    if _b_star(b) <= 0:
        raise InvalidInputError("inf_k b_k must be positive")
    return FamilySpec(family=Family.ANALYTIC_KOROBOV, omega=float(omega), a=a, b=b)


def custom_tabulated(tables, tail=None, tau0=None, a_star=None, b_limit=None) -> FamilySpec:
    rows = []
    for i, row in enumerate(tables):
        row = tuple(float(v) for v in row)
        if len(row) < 2:
            raise InvalidInputError(f"table {i + 1} needs at least two eigenvalues")
        if row[0] <= 0 or row[1] <= 0:
            raise InvalidInputError(f"table {i + 1}: leading two eigenvalues must be positive")
        if any(b > a for a, b in zip(row, row[1:])) or row[-1] < 0:
            raise InvalidInputError(f"table {i + 1} is not nonincreasing and nonnegative")
        rows.append(row)
    if not rows:
        raise InvalidInputError("custom family needs at least one eigenvalue table")
    return FamilySpec(
        family=Family.CUSTOM,
        tables=tuple(rows),
        tail=tail,
        declared_tau0=tau0,
        declared_a_star=a_star,
        declared_b_limit=b_limit,
    )


def _b_star(b: SequenceDescriptor) -> float:
    if b.kind == "constant":
        return b.c
    if b.kind == "power":
        return 0.0 if b.alpha < 0 else b.value(1)
    if b.kind == "log_growth":
        return b.value(1)
    lo = min(b.values) if b.values else INF
    if b._open_ended:
        try:
            lo = min(lo, b.limit())
        except UndecidableError:
            pass
    return lo


# ---------------------------------------------------------------------------
# factor spectra
# ---------------------------------------------------------------------------


class FactorSpectrum:
    """One dimension's eigenvalue sequence with cached block evaluation."""

    __slots__ = ("k", "leading", "truncation_tol", "approximate", "_block",
                 "_cache", "_log_cache")

    def __init__(self, k, block, truncation_tol=_REL_TOL, approximate=False):
        self.k = int(k)
        self._block = block
        self._cache = np.asarray(block(np.arange(1, 65)), dtype=float)
        self._log_cache = None
        self.leading = float(self._cache[0])
        self.truncation_tol = float(truncation_tol)
        self.approximate = bool(approximate)
        if not self.leading > 0:
            raise InvalidInputError(f"leading eigenvalue must be positive at k={k}")

    def eigenvalue(self, j: int) -> float:
        if j < 1:
            raise InvalidInputError(f"eigenvalue index must be >= 1, got {j}")
        if j <= self._cache.size:
            return float(self._cache[j - 1])
        return float(self._block(np.asarray([j]))[0])

    def eigenvalues_up_to(self, J: int) -> np.ndarray:
        if J > self._cache.size:
            n = 1 << max(7, (J - 1).bit_length())
            self._cache = np.asarray(self._block(np.arange(1, n + 1)), dtype=float)
            self._log_cache = None
        return self._cache[:J]

    def eigenvalues_block(self, j0: int, j1: int) -> np.ndarray:
        """Values for indices j0 <= j < j1 without growing the cache."""
        if j1 <= self._cache.size + 1:
            return self._cache[j0 - 1:j1 - 1]
        return np.asarray(self._block(np.arange(j0, j1)), dtype=float)

    def log_eigenvalues_block(self, j0: int, j1: int) -> np.ndarray:
        """ln of eigenvalues_block; zero eigenvalues map to -inf."""
        if j1 <= self._cache.size + 1:
            if self._log_cache is None or self._log_cache.size < self._cache.size:
                with np.errstate(divide="ignore"):
                    self._log_cache = np.log(self._cache)
            return self._log_cache[j0 - 1:j1 - 1]
        with np.errstate(divide="ignore"):
            return np.log(self.eigenvalues_block(j0, j1))

    @property
    def second(self) -> float:
        return float(self._cache[1])

    def scaled(self, c: float) -> "FactorSpectrum":
        """Same spectrum with every eigenvalue multiplied by c > 0."""
        if c <= 0:
            raise InvalidInputError(f"scale constant must be positive, got {c}")
        block = self._block
        return FactorSpectrum(self.k, lambda j: c * np.asarray(block(j), dtype=float),
                              self.truncation_tol, self.approximate)


def _euler_block(r_k: float):
    expo = 2.0 * r_k + 2.0
    def block(j):
        return (np.pi * (np.asarray(j, dtype=float) - 0.5)) ** (-expo)
    return block


def _korobov_block(r_k: float, g_k: float):
    expo = 2.0 * r_k
    def block(j):
        j = np.asarray(j, dtype=float)
        m = np.maximum(np.floor(j / 2.0), 1.0)
        return np.where(j < 2, 1.0, g_k * m ** (-expo))
    return block


def _gaussian_block(omega_k: float):
    c = 1.0 - omega_k
    def block(j):
        return c * omega_k ** (np.asarray(j, dtype=float) - 1.0)
    return block


def _analytic_korobov_block(omega: float, a_k: float, b_k: float):
    def block(j):
        j = np.asarray(j, dtype=float)
        m = np.maximum(np.floor(j / 2.0), 1.0)
        return np.where(j < 2, 1.0, omega ** (a_k * m ** b_k))
    return block


def _custom_block(row: tuple, tail: Optional[TailModel]):
    arr = np.asarray(row, dtype=float)
    J = arr.size
    last = arr[-1]
    def block(j):
        j = np.asarray(j, dtype=np.int64)
        out = arr[np.minimum(j, J) - 1].astype(float)
        beyond = j > J
        if np.any(beyond):
            if tail is None:
                out[beyond] = 0.0
            elif tail.kind == "geometric":
                out[beyond] = last * tail.ratio ** (j[beyond] - J).astype(float)
            else:
                out[beyond] = last * (J / j[beyond].astype(float)) ** tail.exponent
        return out
    return block


@lru_cache(maxsize=4096)
def _factor(spec: FamilySpec, k: int) -> FactorSpectrum:
    if k < 1:
        raise InvalidInputError(f"dimension index must be >= 1, got {k}")
    fam = spec.family
    if fam in (Family.EULER, Family.WIENER):
        r_k = spec.r.value(k)
        return FactorSpectrum(k, _euler_block(r_k),
                              approximate=(fam is Family.WIENER and r_k >= 1))
    if fam is Family.KOROBOV:
        return FactorSpectrum(k, _korobov_block(spec.r.value(k), spec.g.value(k)))
    if fam is Family.GAUSSIAN:
        return FactorSpectrum(k, _gaussian_block(gaussian_omega(spec.gamma_sq.value(k))))
    if fam is Family.ANALYTIC_KOROBOV:
        return FactorSpectrum(k, _analytic_korobov_block(spec.omega, spec.a.value(k), spec.b.value(k)))
    row = spec.tables[min(k, len(spec.tables)) - 1]
    return FactorSpectrum(k, _custom_block(row, spec.tail))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def gaussian_omega(gamma_sq: float) -> float:
    """Geometric ratio of the gaussian factor spectrum; increasing in gamma^2."""
    if gamma_sq <= 0:
        raise InvalidInputError(f"gamma^2 must be positive, got {gamma_sq}")
    return 2.0 * gamma_sq / (1.0 + 2.0 * gamma_sq + math.sqrt(1.0 + 4.0 * gamma_sq))


def factor_eigenvalue(spec: FamilySpec, k: int, j: int, require_exact: bool = False) -> float:
    """Evaluate lam(k, j).

    For the wiener family with ``r_k >= 1`` only the leading-order term is
    returned; pass ``require_exact=True`` to turn that into an
    :class:`ApproximateOnlyError` instead.  Numerical estimates live in
    :mod:`tractal.nystrom`.
    """
    if j < 1:
        raise InvalidInputError(f"eigenvalue index must be >= 1, got {j}")
    fac = _factor(spec, k)
    if require_exact and fac.approximate:
        raise ApproximateOnlyError(
            f"wiener eigenvalues with r_k={spec.r.value(k):g} >= 1 are approximate-only"
        )
    return fac.eigenvalue(j)


def second_ratio(spec: FamilySpec, k: int) -> float:
    """h_k = lam(k,2)/lam(k,1), from the family closed form.

    The wiener family has no closed form; the decay envelope
    ``f_k = (1+r_k)**-2`` is returned in its place (the true ratio lies
    within constant factors of it, with unknown constants).
    """
    fam = spec.family
    if fam is Family.EULER:
        return 3.0 ** (-(2.0 * spec.r.value(k) + 2.0))
    if fam is Family.WIENER:
        return (1.0 + spec.r.value(k)) ** -2.0
    if fam is Family.KOROBOV:
        return spec.g.value(k)
    if fam is Family.GAUSSIAN:
        return gaussian_omega(spec.gamma_sq.value(k))
    if fam is Family.ANALYTIC_KOROBOV:
        return spec.omega ** spec.a.value(k)
    row = spec.tables[min(k, len(spec.tables)) - 1]
    return row[1] / row[0]


def tail_sum_H(spec: FamilySpec, k: int, tau: float) -> float:
    """H(k, tau) = sum_{j>=2} (lam(k,j)/lam(k,2))**tau, +oo if divergent.

    Finite values carry relative error below 1e-12.
    """
    if tau <= 0:
        raise InvalidInputError(f"tau must be positive, got {tau}")
    fam = spec.family
    if fam in (Family.EULER, Family.WIENER):
        x = tau * (2.0 * spec.r.value(k) + 2.0)
        if x <= 1.0:
            return INF
        # sum over j>=2 of (3/(2j-1))**x, via sum_{j>=1} (2j-1)**-x = (1-2**-x) zeta(x)
        return 3.0 ** x * ((1.0 - 2.0 ** -x) * riemann_zeta(x) - 1.0)
    if fam is Family.KOROBOV:
        x = 2.0 * spec.r.value(k) * tau
        if x <= 1.0:
            return INF
        return 2.0 * riemann_zeta(x)
    if fam is Family.GAUSSIAN:
        w = gaussian_omega(spec.gamma_sq.value(k))
        return 1.0 / (1.0 - w ** tau)
    if fam is Family.ANALYTIC_KOROBOV:
        return _analytic_korobov_tail_sum(spec.omega, spec.a.value(k), spec.b.value(k), tau)
    return _custom_tail_sum(spec, k, tau)


def _analytic_korobov_tail_sum(omega, a_k, b_k, tau):
    c = tau * a_k * math.log(1.0 / omega)
    if b_k == 1.0:
        return 2.0 / (1.0 - math.exp(-c))
    # 2 * sum_{m>=1} exp(-c*(m**b - 1)); bracket the remainder by integrals
    # of the decreasing integrand.
    total = 0.0
    m = 1
    while True:
        term = math.exp(-c * (m ** b_k - 1.0))
        total += term
        nxt = math.exp(-c * ((m + 1) ** b_k - 1.0))
        if nxt / 2.0 <= 0.5 * _REL_TOL * total:
            tail_lo = _exp_power_integral(c, b_k, m + 1)
            total += math.exp(c) * tail_lo + nxt / 2.0
            break
        if m > 10**7:
            raise DivergenceError("tail sum did not converge within 1e7 terms", dimension=None)
        m += 1
    return 2.0 * total


def _exp_power_integral(c, b, lower):
    """integral_{lower}^{oo} exp(-c*x**b) dx via the incomplete gamma function."""
    s = 1.0 / b
    return _gamma_fn(s) * _gammaincc(s, c * lower ** b) / (b * c ** s)


def _custom_tail_sum(spec, k, tau):
    row = np.asarray(spec.tables[min(k, len(spec.tables)) - 1], dtype=float)
    lam2 = row[1]
    finite = float(np.sum((row[1:] / lam2) ** tau))
    tail = spec.tail
    if tail is None:
        return finite
    J = row.size
    last_ratio = (row[-1] / lam2) ** tau
    if tail.kind == "geometric":
        q = tail.ratio ** tau
        return finite + last_ratio * q / (1.0 - q)
    x = tail.exponent * tau
    if x <= 1.0:
        return INF
    # sum_{j>J} (J/j)**x = J**x * (zeta(x) - sum_{j<=J} j**-x)
    head = float(np.sum(np.arange(1, J + 1, dtype=float) ** -x))
    return finite + last_ratio * J ** x * (riemann_zeta(x) - head)


def tau_zero(spec: FamilySpec) -> Interval:
    """Infimum of exponents with uniformly bounded tail ratio sums.

    Point interval where a closed form exists; [0, 3/5] for the wiener
    family, whose exact threshold is unresolved; [0, +oo) with a warning for
    tabulated spectra with no declared value.
    """
    fam = spec.family
    if fam is Family.EULER:
        return Interval.point(1.0 / (2.0 * spec.r.value(1) + 2.0))
    if fam is Family.WIENER:
        return Interval(0.0, 0.6)
    if fam is Family.KOROBOV:
        return Interval.point(1.0 / (2.0 * spec.r.value(1)))
    if fam in (Family.GAUSSIAN, Family.ANALYTIC_KOROBOV):
        return Interval.point(0.0)
    if spec.declared_tau0 is not None:
        return Interval.point(spec.declared_tau0)
    warnings.warn("tabulated spectrum has no declared tau0; reporting the "
                  "uninformative interval [0, +oo)", stacklevel=2)
    return Interval(0.0, INF)


def truncation_index(spec: FamilySpec, k: int, tau: float, tol: float) -> int:
    """Smallest J >= 2 whose analytic tail bound past J is below tol*H(k,tau)."""
    if tol <= 0:
        raise InvalidInputError(f"tol must be positive, got {tol}")
    H = tail_sum_H(spec, k, tau)
    if math.isinf(H):
        raise DivergenceError("no finite truncation: the tail ratio sum diverges",
                              dimension=k)
    budget = tol * H
    bound = _tail_bound_fn(spec, k, tau)
    J = 2
    while bound(J) >= budget:
        if J > 10**9:
            raise DivergenceError("truncation index exceeds 1e9", dimension=k)
        J *= 2
    lo, hi = max(2, J // 2), J  # bound(hi) < budget <= bound(lo) unless hi == 2
    while lo < hi:
        mid = (lo + hi) // 2
        if bound(mid) < budget:
            hi = mid
        else:
            lo = mid + 1
    return hi


def _tail_bound_fn(spec, k, tau):
    """Closed-form upper bound for sum_{j>J} (lam(k,j)/lam(k,2))**tau."""
    fam = spec.family
    if fam in (Family.EULER, Family.WIENER):
        x = tau * (2.0 * spec.r.value(k) + 2.0)
        def bound(J):
            return 3.0 ** x * (2.0 * J - 1.0) ** (1.0 - x) / (2.0 * (x - 1.0))
        return bound
    if fam is Family.KOROBOV:
        x = 2.0 * spec.r.value(k) * tau
        def bound(J):
            M = J // 2
            extra = float(M) ** -x if J % 2 == 0 else 0.0
            return extra + 2.0 * M ** (1.0 - x) / (x - 1.0)
        return bound
    if fam is Family.GAUSSIAN:
        w = gaussian_omega(spec.gamma_sq.value(k))
        wt = w ** tau
        def bound(J):
            return w ** (tau * (J - 1.0)) / (1.0 - wt)
        return bound
    if fam is Family.ANALYTIC_KOROBOV:
        a_k, b_k = spec.a.value(k), spec.b.value(k)
        c = tau * a_k * math.log(1.0 / spec.omega)
        def bound(J):
            M = J // 2
            extra = math.exp(-c * (M ** b_k - 1.0)) if J % 2 == 0 else 0.0
            return extra + 2.0 * math.exp(c) * _exp_power_integral(c, b_k, M + 1) \
                + 2.0 * math.exp(-c * ((M + 1) ** b_k - 1.0))
        return bound
    row = np.asarray(spec.tables[min(k, len(spec.tables)) - 1], dtype=float)
    lam2 = row[1]
    tail = spec.tail

    def bound(J):
        inside = float(np.sum((row[J:] / lam2) ** tau)) if J < row.size else 0.0
        if tail is None:
            return inside
        last_ratio = (row[-1] / lam2) ** tau
        if tail.kind == "geometric":
            q = tail.ratio ** tau
            start = max(J + 1 - row.size, 1)
            return inside + last_ratio * q ** start / (1.0 - q)
        x = tail.exponent * tau
        M = max(J, row.size)
        return inside + last_ratio * row.size ** x * M ** (1.0 - x) / (x - 1.0)

    return bound


def factor_power_sum(spec: FamilySpec, k: int, tau: float) -> float:
    """sum_j lam(k,j)**tau = lam(k,1)**tau + lam(k,2)**tau * H(k,tau)."""
    H = tail_sum_H(spec, k, tau)
    if math.isinf(H):
        raise DivergenceError(f"factor power sum diverges at dimension {k} for tau={tau}",
                              dimension=k)
    fac = _factor(spec, k)
    return fac.leading ** tau + fac.second ** tau * H


def normalized_factor_power_sum(spec: FamilySpec, k: int, tau: float) -> float:
    """sum_j (lam(k,j)/lam(k,1))**tau = 1 + h_k**tau * H(k,tau)."""
    H = tail_sum_H(spec, k, tau)
    if math.isinf(H):
        raise DivergenceError(f"normalized power sum diverges at dimension {k} for tau={tau}",
                              dimension=k)
    return 1.0 + second_ratio(spec, k) ** tau * H


# ---------------------------------------------------------------------------
# descriptors consumed by the tractability classifier
# ---------------------------------------------------------------------------


def _quiet(fn):
    try:
        return fn()
    except UndecidableError:
        return None


def h_descriptor(spec: FamilySpec) -> SequenceDescriptor:
    """The second-ratio sequence k -> h_k with its declared asymptotics.

    The declared fields encode ``liminf ln(1/h_k)/ln k`` and ``lim h_k``
    composed through the family map; either may be left undeclared when the
    underlying parameter sequence does not decide it.
    """
    fam = spec.family
    if fam is Family.KOROBOV:
        return spec.g
    evaluator = lambda k: second_ratio(spec, k)
    ln3 = math.log(3.0)
    if fam is Family.EULER:
        rate = _quiet(lambda: 2.0 * ln3 * spec.r.liminf_over_log())
        rbar = _quiet(spec.r.limit)
        lim = None if rbar is None else (0.0 if math.isinf(rbar) else 3.0 ** (-(2 * rbar + 2)))
    elif fam is Family.WIENER:
        rate = _quiet(lambda: 2.0 * _growth_rate(spec.r))
        rbar = _quiet(spec.r.limit)
        lim = None if rbar is None else (0.0 if math.isinf(rbar) else (1.0 + rbar) ** -2.0)
    elif fam is Family.GAUSSIAN:
        rate = _quiet(spec.gamma_sq.liminf_log_ratio)
        g2bar = _quiet(spec.gamma_sq.limit)
        lim = None if g2bar is None else (0.0 if g2bar == 0 else gaussian_omega(g2bar))
    elif fam is Family.ANALYTIC_KOROBOV:
        lnw = math.log(1.0 / spec.omega)
        rate = _quiet(lambda: lnw * spec.a.liminf_over_log())
        abar = _quiet(spec.a.limit)
        lim = None if abar is None else (0.0 if math.isinf(abar) else spec.omega ** abar)
    else:
        rate = spec.declared_a_star
        B = spec.declared_b_limit
        lim = None if B is None else (0.0 if math.isinf(B) else math.exp(-B))
    return SequenceDescriptor.explicit((), evaluator=evaluator,
                                       liminf_log_ratio=rate, limit=lim)


def _growth_rate(r: SequenceDescriptor) -> float:
    """liminf ln(1+r_k)/ln k; zero whenever r is bounded."""
    lim = _quiet(r.limit)
    if lim is not None and math.isfinite(lim):
        return 0.0
    return r.liminf_log_over_log()


def korobov_exp_weights(r: SequenceDescriptor) -> SequenceDescriptor:
    """Weights g_k = (2*pi)**(-2*r_k) tied to the smoothness sequence."""
    ln2pi = math.log(2.0 * math.pi)
    rate = _quiet(lambda: 2.0 * ln2pi * r.liminf_over_log())
    rbar = _quiet(r.limit)
    lim = None if rbar is None else (0.0 if math.isinf(rbar) else (2.0 * math.pi) ** (-2.0 * rbar))
    return SequenceDescriptor.explicit(
        (), evaluator=lambda k: (2.0 * math.pi) ** (-2.0 * r.value(k)),
        liminf_log_ratio=rate, limit=lim)
