"""Experiment runner.

Deterministic enumeration experiments, seeded Monte Carlo estimation,
and CSV report emission over the library's spaces and bounds.

Every command writes one UTF-8 CSV (header row included) to --out or
stdout, sorted deterministically; exact rationals are emitted as
num/den integer column pairs next to float renderings.  Reruns with
the same configuration and seed are byte-identical.

Exit status is 0 iff no emitted row carries status "fail".  Known
small-class deviations (the cubic tabulation bound on the shortest-
code model at n = 1, 2) are downgraded to "expected_fail" under
--audit, so audited runs distinguish "bound reproduced" from "bound
audited and found not to hold".
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
from fractions import Fraction

from . import analytic, engines, measure
from .formula import ConnectiveTable, Formula, FormulaError, var_count_alpha

PASS = "pass"
FAIL = "fail"
EXPECTED_FAIL = "expected_fail"
INFO = "info"

# (command, model, n) triples whose bound is known not to hold; --audit
# reports them as expected_fail instead of fail.
KNOWN_DEVIATIONS = {("tab-oclass", "shannon", 1), ("tab-oclass", "shannon", 2)}


def _frac(q: Fraction) -> list[str]:
    q = Fraction(q)
    return [str(q.numerator), str(q.denominator)]


def _float(v) -> str:
    return repr(float(v))


def _read_config(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    cfg = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SystemExit(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            cfg[key.strip()] = value.strip()
    return cfg


class Options:
    """Option resolution: CLI flag, then config file, then default."""

    def __init__(self, args: argparse.Namespace, cfg: dict[str, str]):
        self.args = args
        self.cfg = cfg

    def get(self, name: str, default, cast=None):
        value = getattr(self.args, name.replace("-", "_"), None)
        if value is not None:
            return value
        if name in self.cfg:
            raw = self.cfg[name]
            if cast is not None:
                return cast(raw)
            if isinstance(default, bool):
                return raw.lower() in ("1", "true", "yes")
            if isinstance(default, int):
                return int(raw)
            if isinstance(default, float):
                return float(raw)
            return raw
        return default

    def int_list(self, name: str, default: list[int]) -> list[int]:
        raw = self.get(name, None, cast=str)
        if raw is None:
            return default
        return [int(part) for part in str(raw).split(",") if part != ""]


def _load_table(opts: Options) -> ConnectiveTable:
    path = opts.get("table", None, cast=str)
    if path:
        return ConnectiveTable.from_file(path)
    return ConnectiveTable.standard()


def _emit(out_path: str | None, header: list[str], rows: list[list[str]]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exit_status(rows: list[list[str]]) -> int:
    return 1 if any(row and row[-1] == FAIL for row in rows) else 0


# --- commands ---------------------------------------------------------


def cmd_expected_min(opts: Options):
    n = opts.get("n", 1)
    ns = range(0, n + 1) if opts.get("upto", False) else [n]
    header = ["n", "brute_num", "brute_den", "closed_num", "closed_den",
              "nonempty_num", "nonempty_den", "closed_float", "status"]
    rows = []
    for k in ns:
        em = analytic.expected_min_plus_one(k)
        brute = em.brute if em.brute is not None else em.closed
        ok = em.closed < 2 and em.nonempty_sum < 2
        rows.append([str(k), *_frac(brute), *_frac(em.closed),
                     *_frac(em.nonempty_sum), _float(em.closed),
                     PASS if ok else FAIL])
    return header, rows


def _sat_report(table: ConnectiveTable, n: int, max_tokens: int | None):
    if max_tokens is None:
        space = measure.covering_space(table, n)
    else:
        space = measure.formula_space(table, n, max_tokens, alpha=n)
    mu = measure.uniform_over_model_classes(space, n)
    T = lambda x: engines.sat_scan(x).time_units
    return space, measure.oclass_member(space, T, lambda k: 2 * k, mu)


def cmd_sat_oclass(opts: Options):
    n = opts.get("n", 1)
    max_tokens = opts.get("max_tokens", None, cast=int)
    table = _load_table(opts)
    header = ["check"] + measure.BoundReport.CSV_HEADER
    rows = []
    space, report = _sat_report(table, n, max_tokens)
    for row in report.csv_rows():
        rows.append(["sat"] + row)
    T = lambda x: engines.sat_scan(x).time_units
    if table.negation_strategy() is None:
        rows.append(["co-skipped", str(n), "0", "1", "0", "1", "0.0", "0.0", INFO])
    else:
        co_space = measure.InputSpace.from_formulas(
            engines.negated(x) for x in space.items)
        mu_co = measure.uniform_over_model_classes(co_space, n)
        co_report = measure.oclass_member(co_space, T, lambda k: 2 * k, mu_co)
        for row in co_report.csv_rows():
            rows.append(["co"] + row)
    # measured share of the checker's time spent reading the input
    # (the linear bound alone would put it at 1/2); informational only
    mu = measure.uniform_over_model_classes(space, n)
    read = measure.avg_time(lambda x: engines.rewrite_cost(x).time_units, mu,
                            space.items)
    share = read / measure.avg_time(T, mu, space.items)
    rows.append(["read-share", str(n), *_frac(share), *_frac(Fraction(3, 10)),
                 _float(share), "0.3", INFO])
    return header, rows


def cmd_tab_oclass(opts: Options, audit: bool):
    model = opts.get("model", "shannon", cast=str)
    ns = opts.int_list("n_list", [opts.get("n", 3)])
    header = measure.BoundReport.CSV_HEADER
    rows = []
    if model == "shannon":
        for n in sorted(ns):
            tb = analytic.tabulator_class_bound(n)
            status = PASS if tb.passed else FAIL
            if status == FAIL and audit and ("tab-oclass", "shannon", n) in KNOWN_DEVIATIONS:
                status = EXPECTED_FAIL
            rows.append([str(n), *_frac(tb.lhs), *_frac(tb.rhs),
                         _float(tb.lhs), _float(tb.rhs), status])
    elif model == "enumerated":
        table = _load_table(opts)
        max_tokens = opts.get("max_tokens", 7)
        for n in sorted(ns):
            space = measure.formula_space(table, n, max_tokens, alpha=n)
            mu = measure.uniform_within_min_layers(space, n)
            T = lambda x: engines.tabulate(x).time_units
            report = measure.oclass_member(space, T, lambda k: k ** 3, mu)
            rows.extend(report.csv_rows())
    else:
        raise SystemExit(f"unknown tab model {model!r}")
    return header, rows


def cmd_moments(opts: Options):
    m_list = opts.int_list("m_list", [2, 3])
    n_list = opts.int_list("n_list", [1, 2])
    tol = Fraction(1, 10 ** opts.get("tol_exp", 12))
    table = _load_table(opts)
    header = ["kind", "m", "n", "lhs_num", "lhs_den", "rhs_num", "rhs_den",
              "lhs_float", "rhs_float", "status"]
    rows = []
    for m in sorted(m_list):
        s = analytic.geometric_moment_sum(m, tol)
        if m == 1:
            bound = Fraction(2)
            ok = abs(bound - s.partial) <= tol
        else:
            bound = analytic.moment_oclass_constant(m)
            ok = s.upper <= bound
        rows.append(["sum", str(m), "", *_frac(s.partial), *_frac(bound),
                     _float(s.partial), _float(bound), PASS if ok else FAIL])
    spaces = {n: measure.covering_space(table, n) for n in sorted(n_list)}
    for m in sorted(m_list):
        if m < 2:
            continue
        c = analytic.moment_oclass_constant(m)
        for n, space in spaces.items():
            mu = measure.uniform_over_model_classes(space, n)
            T = lambda x: engines.sat_scan(x).time_units ** m
            report = measure.oclass_member(space, T, lambda k: c * k ** m, mu)
            for row in report.csv_rows():
                rows.append(["oclass", str(m)] + row)
    return header, rows


def cmd_counting(opts: Options):
    n_max = opts.get("n_max", 10)
    p = opts.get("p", 2)
    enum_limit = opts.get("enum_limit", 3)
    header = ["N", "gamma", "catalan", "sentence_count", "enum_count",
              "F_num", "F_den", "F_float", "partial_num", "partial_den",
              "partial_float", "status"]
    rows = []
    partial = Fraction(0)
    for N in range(n_max + 1):
        g = analytic.gamma_count(N)
        cat = analytic.catalan_binomial(N)
        sc = analytic.sentence_count(N)
        t = analytic.totals_and_ratio(N, p)
        partial += t.ratio
        ok = g == cat
        enum_count = ""
        if N <= enum_limit:
            census = analytic.enumerated_census(N)
            enum_count = str(census.count)
            ok = ok and census.count == sc and census.tabulate_total == t.tabulate_total
        rows.append([str(N), str(g), str(cat), str(sc), enum_count,
                     *_frac(t.ratio), _float(t.ratio), *_frac(partial),
                     _float(partial), PASS if ok else FAIL])
    return header, rows


_CASES = {
    "harmonic": dict(T=lambda n: n, mu=lambda n: 1.0 / (n * n),
                     start=1, exact=False, expect=measure.Verdict.DIVERGENT_TREND),
    "geometric": dict(T=lambda n: 2 ** n, mu=lambda n: Fraction(1, 4 ** n),
                      start=0, exact=True, expect=measure.Verdict.CONVERGENT),
    "constant": dict(T=lambda n: 5, mu=lambda n: Fraction(1, n),
                     start=1, exact=True, expect=measure.Verdict.CONVERGENT),
}


def cmd_tractability(opts: Options):
    case = opts.get("case", "harmonic", cast=str)
    if case not in _CASES:
        raise SystemExit(f"unknown case {case!r}; choose from {sorted(_CASES)}")
    case_def = _CASES[case]
    default_budget = 10 ** 6 if case == "harmonic" else 60
    budget = opts.get("budget", default_budget)
    start = case_def["start"]
    res = measure.tractability(
        case_def["T"], case_def["mu"],
        measure.singleton_classes(range(start, start + budget)),
        eps=opts.get("eps", 1e-12), cap=opts.get("cap", 1e6),
        exact=case_def["exact"])
    header = ["case", "prefix", "value_num", "value_den", "value_float",
              "verdict", "status"]
    checkpoints = []
    k = 1
    while k < len(res.partials):
        checkpoints.append(k)
        k *= 10
    checkpoints.append(len(res.partials))
    status = PASS if res.verdict is case_def["expect"] else FAIL
    rows = []
    for k in checkpoints:
        v = res.partials[k - 1]
        frac = _frac(v) if case_def["exact"] else ["", ""]
        rows.append([case, str(k), *frac, _float(v), res.verdict.value, status])
    return header, rows


def _completion_counts(n_vars: int, arities, length: int):
    """cnt[r][d]: valid completions from stack depth d in exactly r tokens."""
    cnt = [[0] * (length + 2) for _ in range(length + 1)]
    cnt[0][1] = 1
    for r in range(1, length + 1):
        for d in range(length + 1):
            total = n_vars * cnt[r - 1][d + 1]
            for a in arities:
                if d >= a:
                    total += cnt[r - 1][d - a + 1]
            cnt[r][d] = total
    return cnt


def _unrank(u: int, length: int, n_vars: int, arities, cnt) -> tuple[int, ...]:
    codes = []
    d = 0
    for pos in range(length):
        r = length - pos - 1
        block = cnt[r][d + 1]
        if u < n_vars * block:
            codes.append(u // block)
            u %= block
            d += 1
            continue
        u -= n_vars * block
        for j, a in enumerate(arities):
            if d < a:
                continue
            bj = cnt[r][d - a + 1]
            if u < bj:
                codes.append(-j - 1)
                d = d - a + 1
                break
            u -= bj
        else:
            raise AssertionError("unrank index out of range")
    return tuple(codes)


class SequenceSampler:
    """Uniform sampling over all valid RPN sequences of bounded length."""

    def __init__(self, table: ConnectiveTable, n_vars: int, max_tokens: int):
        self.table = table
        self.n_vars = n_vars
        self.tables = {L: _completion_counts(n_vars, table.arities, L)
                       for L in range(1, max_tokens + 1)}
        self.totals = [(L, t[L][0]) for L, t in sorted(self.tables.items()) if t[L][0]]
        self.grand_total = sum(c for _, c in self.totals)

    def sample(self, rng: random.Random) -> Formula:
        u = rng.randrange(self.grand_total)
        for L, c in self.totals:
            if u < c:
                return Formula(_unrank(u, L, self.n_vars, self.table.arities,
                                       self.tables[L]), self.table)
            u -= c
        raise AssertionError("sampler index out of range")


def _mean_stderr(values: list[float]) -> tuple[float, float]:
    mean = statistics.fmean(values)
    if len(values) < 2:
        return mean, 0.0
    return mean, statistics.stdev(values) / len(values) ** 0.5


def cmd_montecarlo(opts: Options, seed: int):
    space_kind = opts.get("space", "sat", cast=str)
    if space_kind != "sat":
        raise SystemExit(f"unknown space {space_kind!r}")
    n = opts.get("n", 2)
    max_tokens = opts.get("max_tokens", 8)
    samples = opts.get("samples", 100000)
    exhaustive = opts.get("exhaustive", False)
    exact_check = opts.get("exact_check", False)
    table = _load_table(opts)
    T = lambda x: engines.sat_scan(x).time_units

    exact_mean = ""
    z = ""
    status = PASS
    if exhaustive:
        space = measure.formula_space(table, n, max_tokens, alpha=n)
        values = [float(T(x)) for x in space.items]
        mean, se = _mean_stderr(values)
        exact = measure.avg_time(T, measure.uniform_on(space), space.items)
        exact_mean = _float(exact)
        status = PASS if mean == float(exact) else FAIL
        samples = len(values)
    else:
        sampler = SequenceSampler(table, n, max_tokens)
        rng = random.Random(seed)
        values = []
        rejected = 0
        while len(values) < samples:
            x = sampler.sample(rng)
            if var_count_alpha(x) == n:
                values.append(float(T(x)))
            else:
                rejected += 1
                if rejected > 1000 * (len(values) + samples):
                    raise SystemExit(
                        f"no sentences with {n} distinct variables within "
                        f"{max_tokens} tokens (rejected {rejected} samples)")
        mean, se = _mean_stderr(values)
        if exact_check:
            space = measure.formula_space(table, n, max_tokens, alpha=n)
            exact = measure.avg_time(T, measure.uniform_on(space), space.items)
            exact_mean = _float(exact)
            zval = 0.0 if se == 0 else (mean - float(exact)) / se
            z = _float(zval)
            status = PASS if abs(zval) <= 4 else FAIL
    header = ["space", "n", "max_tokens", "samples", "seed", "mean", "stderr",
              "exact_mean", "z", "status"]
    rows = [[space_kind, str(n), str(max_tokens), str(samples), str(seed),
             _float(mean), _float(se), exact_mean, z, status]]
    return header, rows


def cmd_explore_min(opts: Options, seed: int):
    target = opts.get("target_tokens", 9)
    arity = opts.get("arity", 2)
    samples = opts.get("samples", 10000)
    table = ConnectiveTable.all_of_arity(arity)
    # a sentence of L tokens over arity-a connectives has at most
    # 1 + (L-1)*(a-1)/a leaves; use that many variables
    pool = 1 + (target - 1) * (arity - 1) // arity
    cnt = _completion_counts(pool, table.arities, target)
    total = cnt[target][0]
    if total == 0:
        raise SystemExit(f"no sentences with exactly {target} tokens at arity {arity}")
    rng = random.Random(seed)
    from .formula import compact_model_set
    values = []
    for _ in range(samples):
        codes = _unrank(rng.randrange(total), target, pool, table.arities, cnt)
        values.append(float(engines.min_n(compact_model_set(Formula(codes, table)))))
    mean, se = _mean_stderr(values)
    header = ["target_tokens", "arity", "pool", "samples", "seed", "mean",
              "stderr", "status"]
    rows = [[str(target), str(arity), str(pool), str(samples), str(seed),
             _float(mean), _float(se), INFO]]
    return header, rows


def _combined_space(table: ConnectiveTable, ns: list[int], max_tokens: int | None):
    """One space holding the covering enumeration for every class in ns."""
    formulas: list[Formula] = []
    for n in sorted(ns):
        if max_tokens is None:
            formulas.extend(measure.covering_space(table, n).items)
        else:
            formulas.extend(measure.formula_space(table, n, max_tokens, alpha=n).items)
    return measure.InputSpace.from_formulas(formulas)


def cmd_property_2_2(opts: Options, audit: bool):
    ns = opts.int_list("n_list", [1, 2])
    max_tokens = opts.get("max_tokens", None, cast=int)
    break_class = opts.get("break_class", None, cast=int)
    inflate = opts.get("inflate", 4)
    table = _load_table(opts)
    space = _combined_space(table, ns, max_tokens)
    mu = measure.uniform_over_model_classes(space)
    base = lambda x: engines.sat_scan(x).time_units
    if break_class is None:
        T = base
    else:
        T = lambda x: base(x) * (inflate if var_count_alpha(x) == break_class else 1)
    result = measure.check_property_2_2(
        space, T, lambda k: 2 * k, mu,
        extra_H=[("ones", lambda n: 1), ("linear", lambda n: n)])
    header = ["check", "label", "n", "lhs_num", "lhs_den", "rhs_num", "rhs_den",
              "lhs_float", "rhs_float", "status"]
    rows = []

    def class_status(n: int, passed: bool) -> str:
        if passed:
            return PASS
        return EXPECTED_FAIL if break_class == n else FAIL

    for r in sorted(result.oclass.rows, key=lambda r: r.n):
        rows.append(["oclass", "", str(r.n), *_frac(r.lhs), *_frac(r.rhs),
                     _float(r.lhs), _float(r.rhs), class_status(r.n, r.passed)])
    for h in result.h_rows:
        if h.ok:
            status = PASS
        elif break_class is not None and (h.label == f"chi_{break_class}"
                                          or not h.label.startswith("chi_")):
            status = EXPECTED_FAIL
        else:
            status = FAIL
        rows.append(["H", h.label, "", *_frac(h.lhs), *_frac(h.rhs),
                     _float(h.lhs), _float(h.rhs), status])
    bic = result.biconditional_ok
    if break_class is not None:
        # the demonstration must actually break the targeted class
        bic = bic and not result.oclass.row(break_class).passed
    rows.append(["biconditional", "", "", "0", "1", "0", "1", "0.0", "0.0",
                 PASS if bic else FAIL])
    return header, rows


def cmd_property_2_3(opts: Options):
    model = opts.get("model", "sat", cast=str)
    exponent = opts.get("h_exponent", 2)
    H = lambda n: Fraction(1, n ** exponent)
    if model == "sat":
        ns = opts.int_list("n_list", [1, 2])
        table = _load_table(opts)
        space = _combined_space(table, ns, opts.get("max_tokens", None, cast=int))
        mu = measure.uniform_over_model_classes(space, per_class=True)
        T = lambda x: engines.sat_scan(x).time_units
        F = lambda k: 2 * k
    elif model == "shannon":
        ns = opts.int_list("n_list", [3, 4])
        space, T, mu = analytic.shannon_space(ns)
        F = lambda k: k ** 3
    else:
        raise SystemExit(f"unknown model {model!r}")
    result = measure.check_property_2_3(space, T, F, mu, H)
    header = ["model", "ns", "h_exponent", "expectation_num", "expectation_den",
              "bound_num", "bound_den", "mass_num", "mass_den",
              "expectation_float", "bound_float", "status"]
    rows = [[model, ";".join(str(n) for n in sorted(ns)), str(exponent),
             *_frac(result.expectation), *_frac(result.bound),
             *_frac(result.dominated_mass), _float(result.expectation),
             _float(result.bound), PASS if result.ok else FAIL]]
    return header, rows


def cmd_markov_tail(opts: Options):
    n = opts.get("n", 2)
    multiplier = opts.get("multiplier", 100)
    table = _load_table(opts)
    space = measure.covering_space(table, n)
    mu = measure.uniform_over_model_classes(space, n)
    T = lambda x: engines.sat_scan(x).time_units
    avg = measure.avg_time(T, mu, space.items)
    result = measure.markov_tail(T, mu, space.items, multiplier * avg)
    ok = result.ok and result.empirical <= Fraction(1, multiplier)
    header = ["n", "multiplier", "avg_num", "avg_den", "bound_num", "bound_den",
              "empirical_num", "empirical_den", "status"]
    rows = [[str(n), str(multiplier), *_frac(avg), *_frac(result.bound),
             *_frac(result.empirical), PASS if ok else FAIL]]
    return header, rows


# --- entry point ------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="flat key = value option file")
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="CSV output path (default stdout)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="Monte Carlo seed (default 0)")
    common.add_argument("--audit", action="store_true", default=argparse.SUPPRESS,
                        help="report known deviations as expected_fail")
    parser = argparse.ArgumentParser(
        prog="avgsat", parents=[common],
        description="Average running time experiments over propositional sentence spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    p = add_parser("expected-min", help="expected first-witness bound")
    p.add_argument("--n", type=int)
    p.add_argument("--upto", action="store_true", default=None,
                   help="emit every n from 0 to --n")

    p = add_parser("sat-oclass", help="linear bound for the satisfiability scanner")
    p.add_argument("--n", type=int)
    p.add_argument("--max-tokens", type=int)
    p.add_argument("--table")

    p = add_parser("tab-oclass", help="cubic bound for the tabulator")
    p.add_argument("--n", type=int)
    p.add_argument("--n-list")
    p.add_argument("--model", choices=["shannon", "enumerated"])
    p.add_argument("--max-tokens", type=int)
    p.add_argument("--table")

    p = add_parser("moments", help="higher-moment sums and bounds")
    p.add_argument("--m-list")
    p.add_argument("--n-list")
    p.add_argument("--tol-exp", type=int)
    p.add_argument("--table")

    p = add_parser("counting", help="sentence shape counts and cost-ratio series")
    p.add_argument("--n-max", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--enum-limit", type=int)

    p = add_parser("tractability", help="partial-average trend scans")
    p.add_argument("--case", choices=sorted(_CASES))
    p.add_argument("--budget", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--cap", type=float)

    p = add_parser("montecarlo", help="seeded sampling estimate of the average time")
    p.add_argument("--space")
    p.add_argument("--n", type=int)
    p.add_argument("--max-tokens", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--exhaustive", action="store_true", default=None)
    p.add_argument("--exact-check", action="store_true", default=None)
    p.add_argument("--table")

    p = add_parser("explore-min", help="sampled expected first witness at fixed length")
    p.add_argument("--target-tokens", type=int)
    p.add_argument("--arity", type=int)
    p.add_argument("--samples", type=int)

    p = add_parser("property-2-2", help="bound/reweighting equivalence check")
    p.add_argument("--n-list")
    p.add_argument("--max-tokens", type=int)
    p.add_argument("--break-class", type=int)
    p.add_argument("--inflate", type=int)
    p.add_argument("--table")

    p = add_parser("property-2-3", help="summable-weights tractability transfer")
    p.add_argument("--model", choices=["sat", "shannon"])
    p.add_argument("--n-list")
    p.add_argument("--max-tokens", type=int)
    p.add_argument("--h-exponent", type=int)
    p.add_argument("--table")

    p = add_parser("markov-tail", help="tail frequency against the mean")
    p.add_argument("--n", type=int)
    p.add_argument("--multiplier", type=int)
    p.add_argument("--table")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = _read_config(getattr(args, "config", None))
    opts = Options(args, cfg)
    seed = opts.get("seed", 0)
    audit = bool(opts.get("audit", False))

    try:
        return _dispatch(args.command, opts, seed, audit)
    except (measure.MeasureError, FormulaError) as exc:
        print(f"avgsat: {exc}", file=sys.stderr)
        return 2


def _dispatch(command: str, opts: Options, seed: int, audit: bool) -> int:
    if command == "expected-min":
        header, rows = cmd_expected_min(opts)
    elif command == "sat-oclass":
        header, rows = cmd_sat_oclass(opts)
    elif command == "tab-oclass":
        header, rows = cmd_tab_oclass(opts, audit)
    elif command == "moments":
        header, rows = cmd_moments(opts)
    elif command == "counting":
        header, rows = cmd_counting(opts)
    elif command == "tractability":
        header, rows = cmd_tractability(opts)
    elif command == "montecarlo":
        header, rows = cmd_montecarlo(opts, seed)
    elif command == "explore-min":
        header, rows = cmd_explore_min(opts, seed)
    elif command == "property-2-2":
        header, rows = cmd_property_2_2(opts, audit)
    elif command == "property-2-3":
        header, rows = cmd_property_2_3(opts)
    elif command == "markov-tail":
        header, rows = cmd_markov_tail(opts)
    else:  # pragma: no cover
        raise SystemExit(f"unknown command {command!r}")

    _emit(opts.get("out", None, cast=str), header, rows)
    return _exit_status(rows)


if __name__ == "__main__":
    sys.exit(main())
