"""Parameter sequences with declared asymptotics.

A :class:`SequenceDescriptor` is a total map ``k -> s_k`` (k >= 1) together
with enough declared asymptotic information to evaluate the limits that the
tractability classifier needs.  Four kinds are supported:

* ``constant(c)``          -- s_k = c
* ``power(c, alpha)``      -- s_k = c * k**alpha
* ``log_growth(theta)``    -- s_k = ceil(theta * ln(k+1))
* ``explicit(values)``     -- a finite head, continued at the last value
                              unless an ``evaluator`` is supplied

For the structured kinds every asymptotic quantity has a closed form.  An
explicit descriptor without an evaluator is eventually constant, so its
limits are decidable too; with an evaluator the declared fields are the only
source of truth and missing declarations raise :class:`UndecidableError`.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import InvalidInputError, UndecidableError
from .xreal import INF

_VALIDATION_WINDOW = 10**4
_ADVISORY_SLACK = 0.1


@dataclass(frozen=True)
class SequenceDescriptor:
    kind: str
    c: float = 1.0
    alpha: float = 0.0
    theta: float = 1.0
    values: tuple = ()
    # evaluators compare by identity so distinct callables never alias in
    # caches keyed on the descriptor
    evaluator: Optional[Callable[[int], float]] = None
    declared_liminf_log_ratio: Optional[float] = None
    declared_limit: Optional[float] = None

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c: float) -> "SequenceDescriptor":
        return cls(kind="constant", c=float(c))

    @classmethod
    def power(cls, c: float, alpha: float) -> "SequenceDescriptor":
        return cls(kind="power", c=float(c), alpha=float(alpha))

    @classmethod
    def log_growth(cls, theta: float) -> "SequenceDescriptor":
        if theta <= 0:
            raise InvalidInputError(f"log_growth rate must be positive, got {theta}")
        return cls(kind="log_growth", theta=float(theta))

    @classmethod
    def explicit(cls, values, evaluator=None, liminf_log_ratio=None, limit=None):
        values = tuple(float(v) for v in values)
        if not values and evaluator is None:
            raise InvalidInputError("explicit sequence needs values or an evaluator")
        return cls(
            kind="explicit",
            values=values,
            evaluator=evaluator,
            declared_liminf_log_ratio=liminf_log_ratio,
            declared_limit=limit,
        )

    # -- evaluation ---------------------------------------------------

    def value(self, k: int) -> float:
        if k < 1:
            raise InvalidInputError(f"sequence index must be >= 1, got {k}")
        if self.kind == "constant":
            return self.c
        if self.kind == "power":
            return self.c * float(k) ** self.alpha
        if self.kind == "log_growth":
            return float(math.ceil(self.theta * math.log(k + 1)))
        if k <= len(self.values):
            return self.values[k - 1]
        if self.evaluator is not None:
            return float(self.evaluator(k))
        return self.values[-1]

    def __call__(self, k: int) -> float:
        return self.value(k)

    # -- declared / closed-form asymptotics ---------------------------

    @property
    def _open_ended(self) -> bool:
        return self.kind == "explicit" and self.evaluator is not None

    def liminf_log_ratio(self) -> float:
        """liminf_k ln(1/s_k) / ln k."""
        if self.kind == "constant":
            return 0.0
        if self.kind == "power":
            return -self.alpha
        if self.kind == "log_growth":
            return 0.0
        if self.declared_liminf_log_ratio is not None:
            return self.declared_liminf_log_ratio
        if not self._open_ended:
            return 0.0 if self.values[-1] > 0 else INF
        raise UndecidableError("liminf ln(1/s_k)/ln k undeclared for explicit sequence")

    def limit(self) -> float:
        """lim_k s_k, assuming the sequence is monotone."""
        if self.kind == "constant":
            return self.c
        if self.kind == "power":
            if self.alpha < 0:
                return 0.0
            return self.c if self.alpha == 0 else INF
        if self.kind == "log_growth":
            return INF
        if self.declared_limit is not None:
            return self.declared_limit
        if not self._open_ended:
            return self.values[-1]
        raise UndecidableError("limit undeclared for explicit sequence")

    def liminf_over_log(self) -> float:
        """liminf_k s_k / ln k."""
        if self.kind == "constant":
            return 0.0
        if self.kind == "power":
            return INF if self.alpha > 0 else 0.0
        if self.kind == "log_growth":
            return self.theta
        if not self._open_ended:
            return 0.0
        ratio = self.declared_liminf_log_ratio
        if ratio is not None and ratio != 0:
            return INF if ratio < 0 else 0.0
        raise UndecidableError("liminf s_k/ln k undecidable for explicit sequence")

    def liminf_log_over_log(self) -> float:
        """liminf_k ln(s_k) / ln k."""
        if self.kind == "constant":
            return 0.0
        if self.kind == "power":
            return self.alpha
        if self.kind == "log_growth":
            return 0.0
        if not self._open_ended:
            return 0.0
        if self.declared_limit is not None and math.isfinite(self.declared_limit):
            return 0.0
        raise UndecidableError("liminf ln(s_k)/ln k undecidable for explicit sequence")


def validate_sequence(seq, name, direction=None, positive=True, integer=False,
                      max_value=None):
    """Check range, integrality and monotonicity of a parameter sequence.

    Structured kinds are checked analytically; explicit kinds are checked on
    the window k <= 10^4.  A declared liminf that disagrees with the
    empirical log-ratio at the window edge by more than 0.1 only warns,
    since no finite window can decide a liminf.
    """
    if seq.kind == "constant":
        _check_value(seq.c, name, positive, integer, max_value)
        return
    if seq.kind == "power":
        _check_value(seq.c, name, positive, integer=False, max_value=None)
        if direction == "nondecreasing" and seq.alpha < 0:
            raise InvalidInputError(f"{name} must be nondecreasing (alpha={seq.alpha})")
        if direction == "nonincreasing" and seq.alpha > 0:
            raise InvalidInputError(f"{name} must be nonincreasing (alpha={seq.alpha})")
        probes = range(1, _VALIDATION_WINDOW + 1) if integer else (1, 2, _VALIDATION_WINDOW)
        for probe in probes:
            _check_value(seq.value(probe), name, positive, integer, max_value)
        return
    if seq.kind == "log_growth":
        if direction == "nonincreasing":
            raise InvalidInputError(f"{name} must be nonincreasing, log_growth grows")
        return
    limit = min(_VALIDATION_WINDOW, len(seq.values) + 1)
    prev = None
    for k in range(1, limit + 1):
        v = seq.value(k)
        _check_value(v, name, positive, integer, max_value)
        if prev is not None:
            if direction == "nondecreasing" and v < prev:
                raise InvalidInputError(f"{name} not nondecreasing at k={k}")
            if direction == "nonincreasing" and v > prev:
                raise InvalidInputError(f"{name} not nonincreasing at k={k}")
        prev = v
    if seq._open_ended:
        _advisory_limit_check(seq, name)


def _check_value(v, name, positive, integer, max_value):
    if not math.isfinite(v):
        raise InvalidInputError(f"{name} must be finite, got {v}")
    if positive and v <= 0:
        raise InvalidInputError(f"{name} must be positive, got {v}")
    if not positive and v < 0:
        raise InvalidInputError(f"{name} must be nonnegative, got {v}")
    if integer and v != int(v):
        raise InvalidInputError(f"{name} must be integer-valued, got {v}")
    if max_value is not None and v > max_value:
        raise InvalidInputError(f"{name} must be <= {max_value}, got {v}")


def _advisory_limit_check(seq, name):
    declared = seq.declared_liminf_log_ratio
    if declared is None or not math.isfinite(declared):
        return
    # Sample log-spaced indices; a liminf is approached from above along a
    # subsequence, so compare against the windowed minimum, and stay silent
    # while the gap is still shrinking (slow convergence, not disagreement).
    ks = sorted({int(round(10 ** (2 + 2 * i / 63))) for i in range(64)})
    gaps = []
    for k in ks:
        v = seq.value(k)
        if v <= 0:
            return
        gaps.append(abs(math.log(1.0 / v) / math.log(k) - declared))
    shrinking = gaps[-1] < 0.75 * gaps[0]
    if min(gaps) > _ADVISORY_SLACK and not shrinking:
        warnings.warn(
            f"{name}: declared liminf log-ratio {declared:g} differs from the "
            f"empirical window values (closest gap {min(gaps):g} up to "
            f"k={_VALIDATION_WINDOW}); declared value is authoritative "
            "(liminf is not decidable from a finite window)",
            stacklevel=3,
        )
