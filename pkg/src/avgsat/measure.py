"""Probability-weighted average running time framework.

Expected running times are taken over an explicit weighted input
space, not over size classes alone.  The core objects:

* :class:`InputSpace` — a finite list of inputs with a bit-size map f
  and an orthogonal partition alpha (for sentences: the number of
  distinct variables).
* :class:`Distribution` — exact rational weights, normalized globally
  or per alpha-class.
* ``oclass_member`` — generalized O(F) membership: in every positive-
  mass alpha-class, the expected value of T(x)/F(f(x)) is at most 1
  (constant factor exactly 1, no asymptotic cutoff, every class).
* ``tractability`` — finiteness evidence for the unconditional
  expected running time, via partial averages over class prefixes.
* ``check_property_2_2`` / ``check_property_2_3`` — executable forms
  of the reweighting equivalences that transfer per-class O(F) bounds
  to whole-space expectations.

All masses and averages on finite spaces are exact ``Fraction``
values; floats only appear in trend scans over very large synthetic
spaces and in CSV rendering.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import _kernel
from .formula import (ConnectiveTable, Formula, compact_model_set, size_f,
                      stratify_min_layers, var_count_alpha)


class MeasureError(Exception):
    pass


class ZeroMassSubset(MeasureError):
    """Conditioning on a subset of probability zero."""


class ZeroMass(MeasureError):
    """A reweighting produced an everywhere-zero distribution."""


class ClassUncovered(MeasureError):
    """An enumerated space is missing some model classes."""


class PreconditionFailed(MeasureError):
    """A check's stated precondition does not hold on this space."""


CostMap = Callable[[object], int] | Mapping[object, int]


def _fn(m):
    """Normalize a mapping-or-callable to a callable."""
    if callable(m):
        return m
    return m.__getitem__


class InputSpace:
    """A finite input space with a size map f and a partition alpha."""

    def __init__(self, items: Iterable, f: CostMap, alpha: CostMap):
        self.items = list(items)
        ff, aa = _fn(f), _fn(alpha)
        self.f = {x: ff(x) for x in self.items}
        self.alpha = {x: aa(x) for x in self.items}
        if len(self.f) != len(self.items):
            raise ValueError("duplicate items in input space")
        for x, v in self.f.items():
            if v < 1:
                raise ValueError(f"size of {x!r} must be >= 1, got {v}")
        self.classes: dict[int, list] = {}
        for x in self.items:
            self.classes.setdefault(self.alpha[x], []).append(x)

    @classmethod
    def from_formulas(cls, formulas: Iterable[Formula]) -> "InputSpace":
        return cls(formulas, size_f, var_count_alpha)

    def attained_classes(self) -> list[int]:
        return sorted(self.classes)

    def class_items(self, n: int) -> list:
        return self.classes.get(n, [])

    def f_class_items(self, n: int) -> list:
        return [x for x in self.items if self.f[x] == n]

    def __len__(self) -> int:
        return len(self.items)


class Normalization(enum.Enum):
    GLOBAL = "global"     # total mass 1
    PER_CLASS = "per-class"  # each alpha-class has mass 1
    RAW = "raw"           # unnormalized (dominating sub-distribution)


@dataclass(frozen=True)
class Distribution:
    """Exact non-negative rational weights over a space's items.

    Items absent from ``weights`` have weight 0.
    """

    weights: Mapping
    normalization: Normalization = Normalization.GLOBAL

    def of(self, x) -> Fraction:
        return self.weights.get(x, Fraction(0))

    def mass(self, items: Iterable) -> Fraction:
        return sum((self.weights.get(x, Fraction(0)) for x in items), Fraction(0))

    def validate(self, space: InputSpace) -> None:
        for x, w in self.weights.items():
            if w < 0:
                raise ValueError(f"negative weight on {x!r}")
        if self.normalization is Normalization.GLOBAL:
            if self.mass(space.items) != 1:
                raise ValueError("global weights must sum to exactly 1")
        elif self.normalization is Normalization.PER_CLASS:
            for n in space.attained_classes():
                if self.mass(space.class_items(n)) != 1:
                    raise ValueError(f"class {n} weights must sum to exactly 1")


@dataclass(frozen=True)
class BoundRow:
    n: int
    lhs: Fraction
    rhs: Fraction
    passed: bool
    note: str = ""


@dataclass
class BoundReport:
    """Per-class verdicts for a bound check, exact and as floats."""

    rows: list[BoundRow] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(r.passed for r in self.rows)

    def row(self, n: int) -> BoundRow:
        for r in self.rows:
            if r.n == n:
                return r
        raise KeyError(n)

    CSV_HEADER = ["n", "lhs_num", "lhs_den", "rhs_num", "rhs_den",
                  "lhs_float", "rhs_float", "pass"]

    def csv_rows(self, status=None) -> list[list[str]]:
        """Rows in the stable schema; ``status`` may remap the pass column."""
        out = []
        for r in sorted(self.rows, key=lambda r: r.n):
            verdict = "pass" if r.passed else "fail"
            if status is not None:
                verdict = status(r)
            out.append([str(r.n),
                        str(r.lhs.numerator), str(r.lhs.denominator),
                        str(r.rhs.numerator), str(r.rhs.denominator),
                        repr(float(r.lhs)), repr(float(r.rhs)), verdict])
        return out


def avg_time(T: CostMap, mu: Distribution, Y: Iterable) -> Fraction:
    """Expected T(x) conditioned on x in Y (exact)."""
    Tf = _fn(T)
    items = list(Y)
    denom = mu.mass(items)
    if denom == 0:
        raise ZeroMassSubset("conditioning subset has probability zero")
    num = sum((Fraction(Tf(x)) * mu.of(x) for x in items), Fraction(0))
    return num / denom


def relative_avg(space: InputSpace, T: CostMap, mu: Distribution, n: int) -> Fraction:
    """Average T over the size class f = n; defined as 1 on empty mass."""
    items = space.f_class_items(n)
    if mu.mass(items) == 0:
        return Fraction(1)
    return avg_time(T, mu, items)


def oclass_member(space: InputSpace, T: CostMap, F: Callable[[int], object],
                  mu: Distribution) -> BoundReport:
    """Generalized O(F) membership test.

    For each alpha-class of positive mass, checks

        sum over the class of  T(x) / F(f(x)) * mu(x)  <=  mu(class)

    in exact rational arithmetic (the coefficient on F is exactly 1).
    """
    Tf = _fn(T)
    report = BoundReport()
    for n in space.attained_classes():
        items = space.class_items(n)
        rhs = mu.mass(items)
        if rhs == 0:
            continue
        lhs = Fraction(0)
        for x in items:
            Fv = Fraction(F(space.f[x]))
            if Fv < 1:
                raise ValueError(f"F({space.f[x]}) = {Fv} < 1")
            lhs += Fraction(Tf(x)) * mu.of(x) / Fv
        report.rows.append(BoundRow(n, lhs, rhs, lhs <= rhs))
    return report


class Verdict(enum.Enum):
    CONVERGENT = "convergent"
    DIVERGENT_TREND = "divergent-trend"
    INCONCLUSIVE = "inconclusive"


@dataclass
class TractabilityResult:
    partials: list
    verdict: Verdict

    @property
    def final(self):
        return self.partials[-1]


def tractability(T: CostMap, mu: CostMap, classes: Iterable[tuple[int, Iterable]],
                 eps: float = 1e-12, cap: float = 1e6, growth_margin: float = 1.0,
                 exact: bool = False, tail_window: int = 10) -> TractabilityResult:
    """Partial expected running times over growing class prefixes.

    ``classes`` yields (class index, items) in increasing index order;
    ``mu`` may be unnormalized (averages are invariant under scaling).
    After each class the running average of T over the union of the
    classes seen so far is recorded.

    The verdict is evidence, not proof: CONVERGENT when the last
    ``tail_window`` relative increments stay below ``eps`` and the
    value stays below ``cap``; DIVERGENT_TREND when the sequence is
    monotone nondecreasing and either exceeds ``cap`` or grows by more
    than ``growth_margin`` between the 0.1% prefix and the end; else
    INCONCLUSIVE.  Finite truncation cannot certify an infinite sum.
    """
    Tf, muf = _fn(T), _fn(mu)
    zero = Fraction(0) if exact else 0.0
    num = den = zero
    partials = []
    for _, items in classes:
        for x in items:
            w = muf(x)
            if not exact:
                w = float(w)
            num += Tf(x) * w
            den += w
        if den == 0:
            raise ZeroMassSubset("class prefix has zero mass")
        partials.append(num / den)
    if not partials:
        raise ZeroMassSubset("no classes supplied")

    window = min(tail_window, len(partials) - 1)
    leveled = window >= 1
    for i in range(len(partials) - window, len(partials)):
        prev, cur = partials[i - 1], partials[i]
        scale = max(abs(cur), abs(prev))
        if scale != 0 and abs(cur - prev) / scale >= eps:
            leveled = False
            break
    if len(partials) == 1:
        leveled = True
    if leveled and partials[-1] <= cap:
        return TractabilityResult(partials, Verdict.CONVERGENT)

    monotone = all(b >= a for a, b in zip(partials, partials[1:]))
    early = partials[max(0, len(partials) // 1000 - 1)]
    if monotone and (partials[-1] > cap or partials[-1] - early > growth_margin):
        return TractabilityResult(partials, Verdict.DIVERGENT_TREND)
    return TractabilityResult(partials, Verdict.INCONCLUSIVE)


def singleton_classes(indices: Iterable[int]) -> Iterable[tuple[int, tuple]]:
    """Each index forms its own class (synthetic one-point classes)."""
    return ((n, (n,)) for n in indices)


class HMode(enum.Enum):
    EQUALITY = "equality"
    DOMINATED = "dominated"


def nu_from_H(space: InputSpace, H: Callable[[int], object],
              F: Callable[[int], object], mu: Distribution,
              mode: HMode = HMode.EQUALITY) -> Distribution:
    """Reweight mu by H(alpha(x)) / F(f(x)).

    EQUALITY scales by the unique constant making the total mass 1;
    DOMINATED returns the raw pointwise product (a sub-distribution
    used as an upper bound).
    """
    raw = {}
    for x in space.items:
        w = Fraction(H(space.alpha[x])) / Fraction(F(space.f[x])) * mu.of(x)
        if w < 0:
            raise ValueError("H produced a negative weight")
        if w:
            raw[x] = w
    if mode is HMode.DOMINATED:
        return Distribution(raw, Normalization.RAW)
    total = sum(raw.values(), Fraction(0))
    if total == 0:
        raise ZeroMass("H vanishes on every positive-mass item")
    return Distribution({x: w / total for x, w in raw.items()}, Normalization.GLOBAL)


@dataclass(frozen=True)
class HRow:
    label: str
    lhs: Fraction   # expected T under nu
    rhs: Fraction   # expected F(f) under nu
    ok: bool


@dataclass
class Prop22Result:
    """Both directions of the bound/reweighting equivalence.

    ``oclass`` holds the per-class membership rows; ``h_rows`` holds,
    for each tested H, the comparison of expected T against expected
    F(f) under the H-reweighted distribution.  The class rows and the
    characteristic-function rows must agree verdict by verdict.
    """

    oclass: BoundReport
    h_rows: list[HRow]
    per_class_agreement: bool

    @property
    def biconditional_ok(self) -> bool:
        return self.per_class_agreement and (
            self.oclass.overall == all(r.ok for r in self.h_rows))


def check_property_2_2(space: InputSpace, T: CostMap, F: Callable[[int], object],
                       mu: Distribution,
                       extra_H: Sequence[tuple[str, Callable]] = ()) -> Prop22Result:
    """Exact verification of the membership/reweighting equivalence.

    The H family is every characteristic function of an attained
    alpha-class plus any user-supplied (label, H) pairs.  For each H
    with a normalizable reweighting, expected T must not exceed
    expected F(f) under the reweighted distribution exactly when the
    per-class membership rows pass.
    """
    Tf = _fn(T)
    oc = oclass_member(space, T, F, mu)
    tested_classes = [r.n for r in oc.rows]
    h_rows = []
    per_class = True
    families = [(f"chi_{n}", (lambda n: lambda k: 1 if k == n else 0)(n))
                for n in tested_classes]
    families.extend(extra_H)
    for label, H in families:
        try:
            nu = nu_from_H(space, H, F, mu, HMode.EQUALITY)
        except ZeroMass:
            continue
        lhs = sum((Fraction(Tf(x)) * nu.of(x) for x in space.items), Fraction(0))
        rhs = sum((Fraction(F(space.f[x])) * nu.of(x) for x in space.items), Fraction(0))
        row = HRow(label, lhs, rhs, lhs <= rhs)
        h_rows.append(row)
        if label.startswith("chi_"):
            n = int(label[4:])
            if row.ok != oc.row(n).passed:
                per_class = False
    return Prop22Result(oc, h_rows, per_class)


@dataclass
class Prop23Result:
    """Transfer of a per-class O(F) bound to a whole-space expectation.

    ``expectation`` is the exact sum of T against the dominating
    sub-distribution H(alpha)/F(f) * mu (mu normalized per class); the
    certified bound is the sum of H over attained classes.  The
    sub-distribution's total mass is reported alongside; dividing the
    expectation by it gives the conditional average, which the bound
    does not cover when the mass is below 1.
    """

    bound: Fraction
    expectation: Fraction
    dominated_mass: Fraction
    ok: bool


def check_property_2_3(space: InputSpace, T: CostMap, F: Callable[[int], object],
                       mu: Distribution, H: Callable[[int], object]) -> Prop23Result:
    """Certify expected T <= sum of H(n) under the dominated reweighting.

    Precondition: mu is normalized per class and the O(F) membership
    rows all pass (raises PreconditionFailed otherwise).
    """
    if mu.normalization is not Normalization.PER_CLASS:
        raise PreconditionFailed("mu must be normalized once per class")
    oc = oclass_member(space, T, F, mu)
    if not oc.overall:
        raise PreconditionFailed("O(F) membership fails on this space")
    Tf = _fn(T)
    nu = nu_from_H(space, H, F, mu, HMode.DOMINATED)
    expectation = sum((Fraction(Tf(x)) * nu.of(x) for x in space.items), Fraction(0))
    mass = nu.mass(space.items)
    bound = sum((Fraction(H(n)) for n in space.attained_classes()), Fraction(0))
    return Prop23Result(bound, expectation, mass, expectation <= bound)


@dataclass(frozen=True)
class MarkovTail:
    bound: Fraction
    empirical: Fraction
    ok: bool


def markov_tail(T: CostMap, mu: Distribution, Y: Iterable, a) -> MarkovTail:
    """Tail bound P(T >= a | Y) <= avg(T | Y) / a, checked exactly."""
    a = Fraction(a)
    if a <= 0:
        raise ValueError("threshold must be positive")
    Tf = _fn(T)
    items = list(Y)
    total = mu.mass(items)
    if total == 0:
        raise ZeroMassSubset("conditioning subset has probability zero")
    bound = avg_time(T, mu, items) / a
    tail = sum((mu.of(x) for x in items if Tf(x) >= a), Fraction(0))
    empirical = tail / total
    return MarkovTail(bound, empirical, empirical <= bound)


# --- distribution constructors ---------------------------------------


def uniform_on(space: InputSpace, subset: Iterable | None = None) -> Distribution:
    """Equal weight on the subset (default: the whole space)."""
    items = list(subset) if subset is not None else space.items
    if not items:
        raise ZeroMassSubset("cannot spread mass over an empty subset")
    w = Fraction(1, len(items))
    return Distribution({x: w for x in items}, Normalization.GLOBAL)


def weights_proportional(space: InputSpace, weight: Callable) -> Distribution:
    """Normalize pointwise weights to total mass 1 (exact)."""
    raw = {x: Fraction(weight(x)) for x in space.items}
    total = sum(raw.values(), Fraction(0))
    if total == 0:
        raise ZeroMass("all weights vanish")
    return Distribution({x: w / total for x, w in raw.items() if w},
                        Normalization.GLOBAL)


def power_law_length(space: InputSpace, p: int) -> Distribution:
    """Weight proportional to f(x)^(-p)."""
    return weights_proportional(space, lambda x: Fraction(1, space.f[x] ** p))


def model_class_of(x: Formula) -> int:
    """Class key: the truth-table bits over the sentence's own variables."""
    return compact_model_set(x).bits


def uniform_over_model_classes(space: InputSpace, n: int | None = None,
                               class_masses: Mapping[int, Fraction] | None = None,
                               per_class: bool = False) -> Distribution:
    """Equal mass to each of the 2^(2^n) model classes within each
    alpha-class, spread uniformly over the class members present.

    With ``n`` given, only that alpha-class carries mass (totaling 1).
    Otherwise every attained alpha-class carries ``class_masses[n]``
    (default: equal shares, or mass 1 each when ``per_class``).
    Raises ClassUncovered when a targeted alpha-class does not inhabit
    all of its model classes.
    """
    targets = [n] if n is not None else space.attained_classes()
    if class_masses is None:
        if per_class or n is not None:
            class_masses = {m: Fraction(1) for m in targets}
        else:
            class_masses = {m: Fraction(1, len(targets)) for m in targets}
    weights: dict = {}
    for m in targets:
        items = space.class_items(m)
        groups: dict[int, list] = {}
        for x in items:
            groups.setdefault(model_class_of(x), []).append(x)
        needed = 1 << (1 << m)
        if len(groups) != needed:
            raise ClassUncovered(
                f"alpha-class {m} inhabits {len(groups)} of {needed} model classes")
        share = Fraction(class_masses[m], needed)
        for members in groups.values():
            w = share / len(members)
            for x in members:
                weights[x] = w
    norm = Normalization.PER_CLASS if per_class else Normalization.GLOBAL
    if n is not None:
        norm = Normalization.GLOBAL
    return Distribution(weights, norm)


def uniform_within_min_layers(space: InputSpace, n: int,
                              layer_masses: Sequence[Fraction] | None = None) -> Distribution:
    """Equal weight to all members of each minimal-length layer.

    Layers come from :func:`stratify_min_layers` on the alpha-class n
    (whose sentences must use variables p0..p(n-1)).  Layer masses
    default to equal shares of 1.
    """
    items = space.class_items(n)
    if not items:
        raise ZeroMassSubset(f"alpha-class {n} is empty")
    layers = stratify_min_layers(items, n)
    if layer_masses is None:
        layer_masses = [Fraction(1, len(layers))] * len(layers)
    if len(layer_masses) != len(layers):
        raise ValueError("one mass per layer required")
    weights: dict = {}
    for mass, layer in zip(layer_masses, layers):
        w = Fraction(mass, len(layer))
        for x in layer:
            weights[x] = w
    return Distribution(weights, Normalization.GLOBAL)


# --- enumerated sentence spaces ---------------------------------------


def formula_space(table: ConnectiveTable, n_vars: int, max_tokens: int,
                  alpha: int | None = None) -> InputSpace:
    """All sentences over p0..p(n_vars-1) up to a token budget."""
    from .formula import enumerate_formulas
    return InputSpace.from_formulas(
        enumerate_formulas(table, n_vars, max_tokens=max_tokens, alpha=alpha))


def covering_space(table: ConnectiveTable, n: int, depth_cap: int = 24,
                   ) -> InputSpace:
    """The smallest-depth enumeration of alpha = n sentences over
    exactly n variables that inhabits all 2^(2^n) model classes.

    Token depth grows one at a time; every sentence up to the first
    covering depth is kept.  Raises ClassUncovered at the cap.
    """
    needed = 1 << (1 << n)
    formulas: list[Formula] = []
    seen: set[int] = set()
    for length in range(1, depth_cap + 1):
        for codes, mask, _ in _kernel.enumerate_length(
                n, table.arities, table.truth_bits, length,
                alpha=n, want_masks=True, compact=True):
            formulas.append(Formula(codes, table))
            seen.add(mask)
        if len(seen) == needed:
            return InputSpace.from_formulas(formulas)
    raise ClassUncovered(
        f"only {len(seen)} of {needed} model classes within {depth_cap} tokens")
