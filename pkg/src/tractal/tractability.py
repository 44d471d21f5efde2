"""Tractability classification with exact exponents.

The classifier maps a family's second-ratio asymptotics to verdicts for
strong polynomial (SPT), polynomial (PT), quasi-polynomial (QPT), uniformly
weak (UWT), (s,t)-weak, and weak tractability (WT), plus the curse of
dimensionality, together with the exponents

    p* = max(2/A, 2*tau0)   with  A = liminf_k ln(1/h_k) / ln k,
    t* = max(2/B, 2*tau0)   with  B = lim_k    ln(1/h_k),

under the extended-real conventions of :mod:`tractal.xreal`.  Verdicts come
only from declared or closed-form limits; finite windows of a sequence never
produce one.  Exponents are intervals so an unresolved tau0 (the wiener
family) is carried honestly instead of being collapsed to a point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import InvalidInputError, UndecidableError, UnsupportedCriterionError
from .sequences import SequenceDescriptor
from .special import g_function, g_root, riemann_zeta  # noqa: F401  (public surface)
from .xreal import INF, Interval, jsonable_float, two_over
from . import spectra
from .spectra import ABS, NOR, Family, FamilySpec


class Limit(NamedTuple):
    value: float
    source: str  # "closed-form" or "declared"


def limit_A_star(h: SequenceDescriptor) -> Limit:
    """A = liminf_d ln(1/h_d)/ln d from the descriptor's closed form or its
    declared value; raises UndecidableError when neither decides it."""
    source = "declared" if h.kind == "explicit" else "closed-form"
    return Limit(h.liminf_log_ratio(), source)


def limit_B(h: SequenceDescriptor) -> Limit:
    """B = lim_d ln(1/h_d); the limit exists for monotone h in [0, +oo]."""
    source = "declared" if h.kind == "explicit" else "closed-form"
    lim = h.limit()
    if lim < 0 or lim > 1:
        raise InvalidInputError(f"second ratios must stay in (0,1], limit {lim}")
    return Limit(INF if lim == 0 else -math.log(lim), source)


def spt_exponent(a_star: float, tau0: Interval) -> Interval:
    """p* interval max(2/A, 2*tau0) over the tau0 interval."""
    if a_star == 0:
        raise InvalidInputError("not SPT: the decay-rate limit A is zero")
    base = two_over(a_star)
    return Interval(max(base, 2.0 * tau0.lo), max(base, 2.0 * tau0.hi))


def qpt_exponent(b: float, tau0: Interval) -> Interval:
    """t* interval max(2/B, 2*tau0) over the tau0 interval."""
    if b == 0:
        raise InvalidInputError("not QPT: the second-ratio log limit B is zero")
    base = two_over(b)
    return Interval(max(base, 2.0 * tau0.lo), max(base, 2.0 * tau0.hi))


def euler_abs_spt_exponent(r: SequenceDescriptor) -> float:
    """Absolute-criterion SPT exponent for the euler family:
    max(x0/(rbar+1), 1/(r1+1)) where x0 is the root of G(x) = 1."""
    x0 = g_root()
    r1 = r.value(1)
    rbar = r.limit()
    first = 0.0 if math.isinf(rbar) else x0 / (rbar + 1.0)
    return max(first, 1.0 / (r1 + 1.0))


def korobov_exp_weight_spt_exponent(r: SequenceDescriptor) -> Optional[float]:
    """SPT exponent for the korobov subfamily with weights (2*pi)**(-2*r_k),
    computed from the smoothness sequence alone:
    max(1/r1, R/ln(2*pi)) with R = limsup ln k / r_k; None when not SPT."""
    rate = r.liminf_over_log()  # liminf r_k / ln k; R is its reciprocal
    if rate == 0:
        return None
    R = 0.0 if math.isinf(rate) else 1.0 / rate
    return max(1.0 / r.value(1), R / math.log(2.0 * math.pi))


@dataclass
class TractabilityReport:
    """Flags and exponents; None marks a question the theory leaves open."""

    criterion: str
    spt: Optional[bool]
    pt: Optional[bool]
    qpt: Optional[bool]
    uwt: Optional[bool]
    wt: Optional[bool]
    curse: Optional[bool]
    p_star: Optional[Interval]
    t_star: Optional[Interval]
    a_star: Optional[float]
    b: Optional[float]
    tau0: Interval
    provenance: dict = field(default_factory=dict)

    def st_weakly_tractable(self, s: float, t: float) -> Optional[bool]:
        """(s,t)-weak tractability: always true for t > 1; equal to QPT for
        t in (0, 1]."""
        if s <= 0 or t <= 0:
            raise InvalidInputError("s and t must be positive")
        if t > 1.0:
            return True
        return self.qpt

    def to_json_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "spt": self.spt,
            "pt": self.pt,
            "qpt": self.qpt,
            "uwt": self.uwt,
            "wt": self.wt,
            "curse": self.curse,
            "p_star": self.p_star.to_json_dict() if self.p_star else None,
            "t_star": self.t_star.to_json_dict() if self.t_star else None,
            "a_star": jsonable_float(self.a_star),
            "b": jsonable_float(self.b),
            "tau0": self.tau0.to_json_dict(),
            "provenance": dict(self.provenance),
        }


def classify(spec: FamilySpec, criterion: str = NOR) -> TractabilityReport:
    """Classify a family under the given error criterion.

    Verdicts follow the closed-form limit maps of each family; fields the
    available results do not determine are reported as None with an "open"
    provenance entry rather than guessed.
    """
    if criterion not in (ABS, NOR):
        raise InvalidInputError(f"criterion must be 'abs' or 'nor', got {criterion!r}")
    if criterion not in spec.criterion_support:
        raise UnsupportedCriterionError(
            f"criterion {criterion!r} is not supported for the {spec.family.value} family")

    tau0 = spectra.tau_zero(spec)
    h = spectra.h_descriptor(spec)
    prov = {"tau0": "family closed form" if spec.family is not Family.CUSTOM
            else ("declared" if spec.declared_tau0 is not None else "unknown")}

    a_star = _try_limit(limit_A_star, h, prov, "a_star")
    b = _try_limit(limit_B, h, prov, "b")

    if spec.family is Family.WIENER:
        report = _classify_second_ratio_envelope(criterion, a_star, b, tau0, prov)
    else:
        report = _classify_monotone(criterion, a_star, b, tau0, prov)

    if criterion == ABS and spec.family is Family.EULER:
        _override_abs_euler(report, spec, prov)
    elif criterion == ABS and spec.family is Family.GAUSSIAN:
        _override_abs_gaussian(report, a_star, prov)
    return report


def _try_limit(fn, h, prov, name):
    try:
        lim = fn(h)
    except UndecidableError:
        prov[name] = "undecidable from finite data"
        return None
    prov[name] = lim.source
    return lim.value


def _classify_monotone(criterion, a_star, b, tau0, prov):
    """Families with nonincreasing second ratios: the full equivalence
    lattice applies (SPT = PT, QPT = UWT = WT = not curse)."""
    spt = None if a_star is None else a_star > 0
    qpt = None if b is None else b > 0
    if spt:
        prov["spt"] = "second-ratio decay-rate limit is positive"
    elif spt is not None:
        prov["spt"] = "second-ratio decay-rate limit is zero"
    else:
        prov["spt"] = "open: decay-rate limit undeclared"
    if qpt is not None:
        prov["qpt"] = "second-ratio log limit" + (" is positive" if qpt else " is zero")
        prov["curse"] = "holds exactly when the second ratios are identically one"
    else:
        prov["qpt"] = "open: second-ratio log limit undeclared"
    p_star = _exp_or_none(spt_exponent, spt, a_star, tau0, prov, "p_star")
    t_star = _exp_or_none(qpt_exponent, qpt, b, tau0, prov, "t_star")
    return TractabilityReport(
        criterion=criterion, spt=spt, pt=spt, qpt=qpt, uwt=qpt, wt=qpt,
        curse=None if qpt is None else not qpt,
        p_star=p_star, t_star=t_star, a_star=a_star, b=b, tau0=tau0,
        provenance=prov)


def _classify_second_ratio_envelope(criterion, a_star, b, tau0, prov):
    """Families known only through a two-sided envelope of the second
    ratios (wiener): SPT/PT and (s,t)-weak with t > 1 are decided; the
    QPT cluster is open unless implied by SPT."""
    del b
    spt = None if a_star is None else a_star > 0
    prov["a_star"] = prov.get("a_star", "declared") + " (decay envelope of the second ratios)"
    prov["spt"] = ("envelope decay-rate limit is positive" if spt
                   else "envelope decay-rate limit is zero" if spt is not None
                   else "open: envelope decay rate undeclared")
    qpt = True if spt else None
    prov["qpt"] = ("implied by strong polynomial tractability" if spt
                   else "open: not determined for this family")
    prov["b"] = "open: second-ratio constants are not determined"
    p_star = _exp_or_none(spt_exponent, spt, a_star, tau0, prov, "p_star")
    return TractabilityReport(
        criterion=criterion, spt=spt, pt=spt, qpt=qpt, uwt=qpt, wt=qpt,
        curse=None if qpt is None else not qpt,
        p_star=p_star, t_star=None, a_star=a_star, b=None, tau0=tau0,
        provenance=prov)


def _exp_or_none(fn, flag, value, tau0, prov, name):
    if not flag or value is None:
        if flag is False:
            prov[name] = "undefined: the problem is not tractable at this level"
        elif flag is None:
            prov[name] = "open: the deciding limit is undeclared"
        return None
    interval = fn(value, tau0)
    prov.setdefault(name, "exponent formula over the tau0 interval")
    return interval


def _override_abs_euler(report, spec, prov):
    report.spt = report.pt = True
    report.qpt = report.uwt = report.wt = True
    report.curse = False
    report.p_star = Interval.point(euler_abs_spt_exponent(spec.r))
    report.t_star = None
    prov["spt"] = "absolute criterion: holds for every admissible smoothness sequence"
    prov["p_star"] = "root of the eigenvalue power series combined with the smoothness limits"
    prov["t_star"] = "open: no absolute-criterion QPT exponent is available"
    prov["qpt"] = "implied by strong polynomial tractability"


def _override_abs_gaussian(report, a_star, prov):
    report.spt = report.pt = True
    report.qpt = report.uwt = report.wt = True
    report.curse = False
    if a_star is None:
        report.p_star = None
        prov["p_star"] = "open: shape-parameter decay rate undeclared"
    else:
        report.p_star = Interval.point(min(2.0, two_over(a_star)))
        prov["p_star"] = "absolute criterion: min(2, 2/decay rate)"
    report.t_star = None
    prov["spt"] = "absolute criterion: holds for all shape parameters"
    prov["t_star"] = "open: no absolute-criterion QPT exponent is available"
    prov["qpt"] = "implied by strong polynomial tractability"
