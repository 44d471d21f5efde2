"""Command-line front end: classify, complexity, sweep, verify, oracle-compare.

Exit codes: 0 success, 1 verification failure, 2 unsupported criterion,
3 invalid input, 4 resource cap.  Reports are JSON; sweeps emit CSV.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import complexity, nystrom, products, spectra, tractability
from .errors import (
    CapExceededError,
    InvalidInputError,
    TractalError,
    UnsupportedCriterionError,
)
from .sequences import SequenceDescriptor

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_UNSUPPORTED_CRITERION = 2
EXIT_INVALID_INPUT = 3
EXIT_RESOURCE_CAP = 4


# ---------------------------------------------------------------------------
# family documents
# ---------------------------------------------------------------------------

_SEQ_FIELDS = {
    "constant": ({"kind", "c"}, set()),
    "power": ({"kind", "c", "alpha"}, set()),
    "log_growth": ({"kind", "theta"}, set()),
    "explicit": ({"kind", "values"}, {"liminf_log_ratio", "limit"}),
}

_FAMILY_FIELDS = {
    "euler": ({"family", "r"}, set()),
    "wiener": ({"family", "r"}, set()),
    "korobov": ({"family", "r", "g"}, set()),
    "gaussian": ({"family", "gamma_sq"}, set()),
    "analytic_korobov": ({"family", "omega", "a", "b"}, set()),
    "custom": ({"family", "tables"}, {"tail", "tau0", "a_star", "b_limit"}),
}


def _check_fields(doc, required, optional, context):
    keys = set(doc)
    unknown = keys - required - optional
    if unknown:
        raise InvalidInputError(f"{context}: unknown fields {sorted(unknown)}")
    missing = required - keys
    if missing:
        raise InvalidInputError(f"{context}: missing fields {sorted(missing)}")


def parse_sequence(doc, name) -> SequenceDescriptor:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise InvalidInputError(f"{name}: expected an object with a 'kind' field")
    kind = doc["kind"]
    if kind not in _SEQ_FIELDS:
        raise InvalidInputError(f"{name}: unknown sequence kind {kind!r}")
    required, optional = _SEQ_FIELDS[kind]
    _check_fields(doc, required, optional, name)
    if kind == "constant":
        return SequenceDescriptor.constant(doc["c"])
    if kind == "power":
        return SequenceDescriptor.power(doc["c"], doc["alpha"])
    if kind == "log_growth":
        return SequenceDescriptor.log_growth(doc["theta"])
    return SequenceDescriptor.explicit(
        doc["values"],
        liminf_log_ratio=doc.get("liminf_log_ratio"),
        limit=doc.get("limit"),
    )


def parse_family(doc) -> spectra.FamilySpec:
    if not isinstance(doc, dict) or "family" not in doc:
        raise InvalidInputError("family document must be an object with a 'family' field")
    fam = doc["family"]
    if fam not in _FAMILY_FIELDS:
        raise InvalidInputError(f"unknown family {fam!r}")
    required, optional = _FAMILY_FIELDS[fam]
    _check_fields(doc, required, optional, f"family {fam!r}")
    if fam == "euler":
        return spectra.euler(parse_sequence(doc["r"], "r"))
    if fam == "wiener":
        return spectra.wiener(parse_sequence(doc["r"], "r"))
    if fam == "korobov":
        return spectra.korobov(parse_sequence(doc["r"], "r"), parse_sequence(doc["g"], "g"))
    if fam == "gaussian":
        return spectra.gaussian(parse_sequence(doc["gamma_sq"], "gamma_sq"))
    if fam == "analytic_korobov":
        if not isinstance(doc["omega"], (int, float)):
            raise InvalidInputError("omega must be a number")
        return spectra.analytic_korobov(
            float(doc["omega"]), parse_sequence(doc["a"], "a"), parse_sequence(doc["b"], "b"))
    tail = None
    if doc.get("tail") is not None:
        tdoc = doc["tail"]
        _check_fields(tdoc, {"kind"}, {"ratio", "exponent"}, "tail")
        tail = spectra.TailModel(kind=tdoc["kind"], ratio=tdoc.get("ratio", 0.0),
                                 exponent=tdoc.get("exponent", 0.0))
    return spectra.custom_tabulated(
        doc["tables"], tail=tail, tau0=doc.get("tau0"),
        a_star=doc.get("a_star"), b_limit=doc.get("b_limit"))


def sequence_document(seq: SequenceDescriptor) -> dict:
    if seq.kind == "constant":
        return {"kind": "constant", "c": seq.c}
    if seq.kind == "power":
        return {"kind": "power", "c": seq.c, "alpha": seq.alpha}
    if seq.kind == "log_growth":
        return {"kind": "log_growth", "theta": seq.theta}
    if seq.evaluator is not None:
        raise InvalidInputError("evaluator-backed explicit sequences are not serializable")
    doc = {"kind": "explicit", "values": list(seq.values)}
    if seq.declared_liminf_log_ratio is not None:
        doc["liminf_log_ratio"] = seq.declared_liminf_log_ratio
    if seq.declared_limit is not None:
        doc["limit"] = seq.declared_limit
    return doc


def family_document(spec: spectra.FamilySpec) -> dict:
    """The JSON document for a family spec; inverse of parse_family."""
    fam = spec.family.value
    if fam in ("euler", "wiener"):
        return {"family": fam, "r": sequence_document(spec.r)}
    if fam == "korobov":
        return {"family": fam, "r": sequence_document(spec.r),
                "g": sequence_document(spec.g)}
    if fam == "gaussian":
        return {"family": fam, "gamma_sq": sequence_document(spec.gamma_sq)}
    if fam == "analytic_korobov":
        return {"family": fam, "omega": spec.omega,
                "a": sequence_document(spec.a), "b": sequence_document(spec.b)}
    doc = {"family": "custom", "tables": [list(row) for row in spec.tables]}
    if spec.tail is not None:
        tdoc = {"kind": spec.tail.kind}
        if spec.tail.kind == "geometric":
            tdoc["ratio"] = spec.tail.ratio
        else:
            tdoc["exponent"] = spec.tail.exponent
        doc["tail"] = tdoc
    for key, val in (("tau0", spec.declared_tau0), ("a_star", spec.declared_a_star),
                     ("b_limit", spec.declared_b_limit)):
        if val is not None:
            doc[key] = val
    return doc


def _load_family(path) -> spectra.FamilySpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InvalidInputError(f"cannot read family file: {exc}")
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed family JSON: {exc}")
    return parse_family(doc)


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _parse_float_list(text):
    try:
        vals = [float(t) for t in text.split(",") if t]
    except ValueError:
        raise InvalidInputError(f"bad float list {text!r}")
    if not vals:
        raise InvalidInputError("empty value list")
    return vals


def _parse_int_list(text):
    out = []
    for tok in text.split(","):
        if not tok:
            continue
        if ":" in tok:
            lo, hi = tok.split(":", 1)
            try:
                out.extend(range(int(lo), int(hi) + 1))
            except ValueError:
                raise InvalidInputError(f"bad range {tok!r}")
        else:
            try:
                out.append(int(tok))
            except ValueError:
                raise InvalidInputError(f"bad integer {tok!r}")
    if not out:
        raise InvalidInputError("empty value list")
    return out


def _thread_count():
    raw = os.environ.get("TRACTAL_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InvalidInputError(f"TRACTAL_THREADS must be an integer >= 1, got {raw!r}")
    if n < 1:
        raise InvalidInputError(f"TRACTAL_THREADS must be >= 1, got {n}")
    return n


def _emit(text, out_path):
    if out_path:
        directory = os.path.dirname(os.path.abspath(out_path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tractal-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, out_path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _dump_json(obj):
    return json.dumps(obj, indent=2)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def run_classify(args) -> int:
    spec = _load_family(args.family)
    report = tractability.classify(spec, args.criterion)
    _emit(_dump_json(report.to_json_dict()), args.out)
    return EXIT_OK


def run_complexity(args) -> int:
    spec = _load_family(args.family)
    eps_list = _parse_float_list(args.epsilon)
    d_list = _parse_int_list(args.d)
    if len(eps_list) != 1 or len(d_list) != 1:
        raise InvalidInputError("complexity takes a single epsilon and a single d; use sweep for grids")
    eps, d = eps_list[0], d_list[0]
    problem = products.ProductProblem.from_family(spec, d)
    query = complexity.ComplexityQuery(epsilon=eps, d=d, criterion=args.criterion)
    result = complexity.info_complexity(problem, query, cap=args.cap)
    doc = {
        "epsilon": eps,
        "d": d,
        "criterion": args.criterion,
        "n": result.n,
        "saturated": result.saturated,
        "threshold": result.threshold,
    }
    _emit(_dump_json(doc), args.out)
    if result.saturated and args.strict:
        print("count saturated at the cap under --strict", file=sys.stderr)
        return EXIT_RESOURCE_CAP
    return EXIT_OK


def _sweep_point(spec, criterion, eps, d, cap):
    problem = products.ProductProblem.from_family(spec, d)
    query = complexity.ComplexityQuery(epsilon=eps, d=d, criterion=criterion)
    return complexity.info_complexity(problem, query, cap=cap)


def run_sweep(args) -> int:
    spec = _load_family(args.family)
    eps_list = sorted(_parse_float_list(args.epsilon), reverse=True)
    d_list = sorted(set(_parse_int_list(args.d)))
    grid = [(d, eps) for d in d_list for eps in eps_list]
    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(
                lambda p: _sweep_point(spec, args.criterion, p[1], p[0], args.cap), grid))
    else:
        results = [_sweep_point(spec, args.criterion, eps, d, args.cap) for d, eps in grid]
    if args.strict and any(r.saturated for r in results):
        print("a sweep point saturated at the cap under --strict", file=sys.stderr)
        return EXIT_RESOURCE_CAP
    lines = ["family,criterion,epsilon,d,n,saturated"]
    for (d, eps), res in zip(grid, results):
        lines.append(f"{spec.family.value},{args.criterion},{eps!r},{d},"
                     f"{res.n},{'true' if res.saturated else 'false'}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def run_oracle_compare(args) -> int:
    spec = _load_family(args.family)
    d = _parse_int_list(args.d)[0]
    problem = products.ProductProblem.from_family(spec, d)
    J = args.j
    if J ** d > products.ENUMERATION_CAP:
        raise CapExceededError(f"J**d = {J ** d} exceeds the enumeration cap")
    oracle = products.brute_force_oracle(problem, J)
    m = min(args.m, oracle.size)
    top = products.product_eigenvalues_top(problem, m)
    top_dev = float(np.max(np.abs(top - oracle[:m])))
    floor = products.oracle_validity_floor(problem, J)
    t_lo = max(floor * 1.0000001, oracle[-1])
    t_hi = oracle[0]
    mismatches = 0
    thresholds = np.geomspace(max(t_lo, 1e-300), t_hi, 17)[:-1] * 0.9999
    for T in thresholds:
        if T <= floor:
            continue
        a = products.count_products_above(problem, float(T)).count
        b = int((oracle > T).sum())
        if a != b:
            mismatches += 1
    doc = {
        "d": d,
        "m": m,
        "box_side": J,
        "top_max_abs_deviation": top_dev,
        "count_mismatches": mismatches,
        "pass": top_dev == 0.0 and mismatches == 0,
    }
    _emit(_dump_json(doc), args.out)
    return EXIT_OK if doc["pass"] else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _direct_tail_power_sum(factor, tau, j_start, rel_floor=1e-16, max_terms=10**6):
    """sum_{j >= j_start} lam(j)**tau by blockwise direct summation."""
    total = 0.0
    j0 = j_start
    block = 4096
    while True:
        arr = factor.eigenvalues_block(j0, j0 + block) ** tau
        s = float(arr.sum())
        total += s
        if s <= rel_floor * max(total, 1e-300) or arr[-1] == 0.0:
            return total
        j0 += block
        if j0 - j_start > max_terms:
            return total


def _check_nystrom(name, spec, nodes, m, threshold):
    report = nystrom.verify_against_closed_form(spec, nodes, m)
    return {"name": name, "deviation": report.max_deviation,
            "threshold": threshold, "pass": report.max_deviation < threshold}


def _suite_euler_nystrom():
    return [_check_nystrom(f"euler-r{r}-400-nodes", nystrom.euler_iterated(r), 400, 6, 1e-4)
            for r in (0, 1)]


def _suite_wiener_nystrom():
    return [_check_nystrom("wiener-r0-400-nodes", nystrom.wiener_integral(0), 400, 6, 1e-5)]


def _suite_gaussian_nystrom():
    return [_check_nystrom(f"gaussian-g2-{g2}-100-nodes", nystrom.gaussian_weighted(g2), 100, 6, 1e-8)
            for g2 in (0.25, 1.0, 4.0)]


def _suite_korobov_nystrom():
    spec = nystrom.korobov_series(1.0, 1.0, series_cutoff=10**4)
    return [_check_nystrom("korobov-a1-b1-400-nodes", spec, 400, 5, 1e-6)]


def _eq21_specs():
    return [
        ("euler", spectra.euler(SequenceDescriptor.constant(2))),
        ("korobov", spectra.korobov(SequenceDescriptor.constant(2),
                                    SequenceDescriptor.power(1.0, -2.0))),
        ("gaussian", spectra.gaussian(SequenceDescriptor.power(1.0, -1.0))),
        ("analytic_korobov", spectra.analytic_korobov(
            0.5, SequenceDescriptor.constant(1.0), SequenceDescriptor.constant(1.0))),
    ]


def _suite_eq21():
    checks = []
    J = 60
    for name, spec in _eq21_specs():
        problem = products.ProductProblem.from_family(spec, 3)
        tau = 1.0
        box = products.brute_force_oracle(problem, J) ** tau
        box_sum = float(box.sum())
        # independent correction: per-factor direct tail sums
        heads = [float((f.eigenvalues_up_to(J) ** tau).sum()) for f in problem.factors]
        tails = [_direct_tail_power_sum(f, tau, J + 1) for f in problem.factors]
        full = 1.0
        for h, t in zip(heads, tails):
            full *= h + t
        oracle = box_sum + (full - math.prod(heads))
        ts = products.trace_sum(problem, tau)
        dev = abs(ts - oracle) / oracle
        checks.append({"name": f"eq21-{name}-d3-tau1", "deviation": dev,
                       "threshold": 1e-9, "pass": dev <= 1e-9})
    return checks


def _suite_counting_oracle():
    rng = random.Random(20240901)
    mismatches = 0
    trials = 25
    for _ in range(trials):
        name, spec = _eq21_specs()[rng.randrange(4)]
        d = rng.randint(1, 4)
        problem = products.ProductProblem.from_family(spec, d)
        J = {1: 400, 2: 60, 3: 40, 4: 25}[d]
        oracle = products.brute_force_oracle(problem, J)
        floor = products.oracle_validity_floor(problem, J)
        lo = max(floor, oracle[-1]) * 1.000001
        T = math.exp(rng.uniform(math.log(lo), math.log(oracle[0])))
        if T <= floor:
            continue
        got = products.count_products_above(problem, T).count
        want = int((oracle > T).sum())
        if got != want:
            mismatches += 1
    return [{"name": f"counting-oracle-{trials}-instances", "deviation": float(mismatches),
             "threshold": 0.5, "pass": mismatches == 0}]


def _suite_g_function():
    checks = []
    d1 = abs(tractability.g_function(2.0) - 0.5)
    checks.append({"name": "g-at-2", "deviation": d1, "threshold": 1e-10, "pass": d1 < 1e-10})
    x0 = tractability.g_root()
    d2 = abs(tractability.g_function(x0) - 1.0)
    checks.append({"name": "g-root-residual", "deviation": d2, "threshold": 1e-10,
                   "pass": d2 < 1e-10})
    for x in (1.2, 1.5, 3.0):
        j = np.arange(1, 10**6 + 1, dtype=float)
        direct = float(np.sum((math.pi * (j - 0.5)) ** -x))
        n = 10**6
        direct += (math.pi * n) ** (1 - x) / (math.pi * (x - 1)) - 0.5 * (math.pi * (n + 0.5)) ** -x
        dev = abs(direct - tractability.g_function(x)) / tractability.g_function(x)
        checks.append({"name": f"g-reduction-vs-series-x{x}", "deviation": dev,
                       "threshold": 1e-8, "pass": dev < 1e-8})
    return checks


def _suite_exponent_crosscheck():
    r = SequenceDescriptor.log_growth(1.0)
    spec = spectra.korobov(r, spectra.korobov_exp_weights(r))
    report = tractability.classify(spec, spectra.NOR)
    alt = tractability.korobov_exp_weight_spt_exponent(r)
    dev = abs(report.p_star.lo - alt)
    checks = [{"name": "exp-weight-crosscheck-growing-r", "deviation": dev,
               "threshold": 1e-12, "pass": report.p_star.is_point and dev <= 1e-12}]
    r_const = SequenceDescriptor.constant(1.0)
    spec2 = spectra.korobov(r_const, spectra.korobov_exp_weights(r_const))
    report2 = tractability.classify(spec2, spectra.NOR)
    alt2 = tractability.korobov_exp_weight_spt_exponent(r_const)
    agree = (report2.spt is False) and (alt2 is None)
    checks.append({"name": "exp-weight-crosscheck-constant-r", "deviation": 0.0 if agree else 1.0,
                   "threshold": 0.5, "pass": agree})
    return checks


_SUITES = {
    "euler-nystrom": _suite_euler_nystrom,
    "wiener-nystrom": _suite_wiener_nystrom,
    "gaussian-nystrom": _suite_gaussian_nystrom,
    "korobov-nystrom": _suite_korobov_nystrom,
    "eq21-identity": _suite_eq21,
    "counting-oracle": _suite_counting_oracle,
    "g-function": _suite_g_function,
    "exponent-crosscheck": _suite_exponent_crosscheck,
}


def run_verify(args) -> int:
    if args.suite == "all":
        names = list(_SUITES)
    elif args.suite in _SUITES:
        names = [args.suite]
    else:
        raise InvalidInputError(
            f"unknown suite {args.suite!r}; available: {', '.join(sorted(_SUITES))}, all")
    checks = []
    for name in names:
        checks.extend(_SUITES[name]())
    ok = all(c["pass"] for c in checks)
    doc = {"suite": args.suite, "checks": checks, "pass": ok}
    _emit(_dump_json(doc), args.out)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tractal",
        description="Information complexity and tractability for tensor-product spectra")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family=True):
        if family:
            p.add_argument("--family", required=True, help="path to a family JSON document")
        p.add_argument("--criterion", choices=("abs", "nor"), default="nor")
        p.add_argument("--epsilon", default="0.5", help="comma-separated list")
        p.add_argument("--d", default="1", help="comma-separated list; a:b for ranges")
        p.add_argument("--cap", type=int, default=products.COUNTING_CAP)
        p.add_argument("--strict", action="store_true")
        p.add_argument("--out", default=None, help="write output to this path atomically")

    common(sub.add_parser("classify", help="tractability flags and exponents"))
    common(sub.add_parser("complexity", help="information complexity at one (epsilon, d)"))
    common(sub.add_parser("sweep", help="CSV of n(epsilon, d) over a grid"))
    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("--suite", default="all")
    p_verify.add_argument("--out", default=None)
    p_oc = sub.add_parser("oracle-compare", help="enumeration vs brute-force oracle")
    common(p_oc)
    p_oc.add_argument("--m", type=int, default=200)
    p_oc.add_argument("--j", type=int, default=30)
    return parser


_COMMANDS = {
    "classify": run_classify,
    "complexity": run_complexity,
    "sweep": run_sweep,
    "verify": run_verify,
    "oracle-compare": run_oracle_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID_INPUT if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except UnsupportedCriterionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED_CRITERION
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE_CAP
    except (InvalidInputError, TractalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
