"""Function registry, convergence studies and the reference-table diff."""

from __future__ import annotations

import csv
import dataclasses
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

from . import bounds, cardinal, stepsize, stripquad
from .cardinal import DecaySpec, InterpolationPlan, Rule, StripSpec, TargetFunction
from .stepsize import StepRuleInput

__all__ = [
    "RegistryEntry",
    "REGISTRY",
    "get_entry",
    "StripNormMode",
    "StudyConfig",
    "ConvergenceRow",
    "StudyError",
    "run_study",
    "resolve_step",
    "error_profile",
    "REFERENCE_TABLE",
    "TABLE_LADDER",
    "FULL_LADDER",
    "CellCheck",
    "TableReport",
    "reproduce_table",
    "matches_sig_digits",
    "write_csv",
    "write_tsv",
]

FULL_LADDER = (1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024)
TABLE_LADDER = FULL_LADDER[1:]


@dataclass(frozen=True)
class RegistryEntry:
    """A named test function with its decay and strip parameters.

    ``make`` builds the vectorized evaluator from ``params``; it must accept
    complex arrays when ``complex_ok`` is set.
    """

    name: str
    make: Callable[..., Callable]
    decay: DecaySpec
    default_strip: StripSpec
    params: Mapping[str, float] = field(default_factory=dict)
    complex_ok: bool = True
    description: str = ""

    def evaluator(self) -> Callable:
        return self.make(**self.params)

    def target(self, d: Optional[float] = None) -> TargetFunction:
        strip = self.default_strip if d is None else StripSpec(d)
        return TargetFunction(self.evaluator(), self.decay, strip)

    def complex_target(self, d: Optional[float] = None) -> stripquad.ComplexTarget:
        if not self.complex_ok:
            raise ValueError(f"{self.name} has no complex evaluator")
        strip = self.default_strip if d is None else StripSpec(d)
        return stripquad.ComplexTarget(self.evaluator(), self.decay, strip)

    def with_params(self, **params: float) -> "RegistryEntry":
        unknown = set(params) - set(self.params)
        if unknown:
            raise ValueError(f"{self.name} has no parameter(s) {sorted(unknown)}")
        merged = {**self.params, **params}
        if self.name == "ex1":
            return _ex1_entry(**merged)
        return dataclasses.replace(self, params=merged)


def _ex1_make(a: float):
    p = 2 * int(a)
    return lambda z: 4.0 / (2.0 + z ** p)


def _ex1_entry(a: float = 2) -> RegistryEntry:
    if int(a) != a or a < 2:
        raise ValueError(f"ex1 needs an integer a >= 2, got {a!r}")
    a = int(a)
    # 4(1 + x^2a)/(2 + x^2a) increases to 4, so L = 4 exactly
    d = 0.9 * 2.0 ** (1.0 / (2 * a)) * math.sin(math.pi / (2 * a))
    strip_norm = 17.05467564 if a == 2 else None
    return RegistryEntry(
        name="ex1",
        make=_ex1_make,
        decay=DecaySpec(alpha=2.0 * a, big_l=4.0),
        default_strip=StripSpec(d, strip_norm),
        params={"a": a},
        description="4/(2 + x^(2a)), d = 0.9 * 2^(1/(2a)) sin(pi/(2a))",
    )


def _ex2_cos2x_make():
    return lambda z: 6.0 * np.cos(2.0 * z) / ((5.0 + np.cos(z) ** 2) * (1.0 + z ** 4))


def _ex2_table_make():
    return lambda z: 6.0 * np.cos(z) / ((5.0 + np.cos(z) ** 2) * (1.0 + z ** 4))


def _poisson_make():
    return lambda z: 1.0 / (1.0 + z * z)


REGISTRY: dict[str, RegistryEntry] = {
    "ex1": _ex1_entry(2),
    # 6 cos 2x / ((5 + cos^2 x)(1 + x^4)); |f| (1 + x^4) reaches 6/5 at x = pi/2
    "ex2": RegistryEntry(
        name="ex2",
        make=_ex2_cos2x_make,
        decay=DecaySpec(alpha=4.0, big_l=1.2),
        default_strip=StripSpec(0.7),
        description="6 cos(2x) / ((5 + cos^2 x)(1 + x^4)), d = 0.7",
    ),
    # the variant and strip width that generate the reference table
    "ex2-table": RegistryEntry(
        name="ex2-table",
        make=_ex2_table_make,
        decay=DecaySpec(alpha=4.0, big_l=1.0),
        default_strip=StripSpec(0.9 * math.sqrt(2.0) / 2.0),
        description="6 cos(x) / ((5 + cos^2 x)(1 + x^4)), d = 0.9 sqrt(2)/2",
    ),
    "poisson": RegistryEntry(
        name="poisson",
        make=_poisson_make,
        decay=DecaySpec(alpha=2.0, big_l=1.0),
        default_strip=StripSpec(0.5),
        description="1 / (1 + x^2), d = 0.5",
    ),
}


def get_entry(name_or_entry, **params: float) -> RegistryEntry:
    if isinstance(name_or_entry, RegistryEntry):
        entry = name_or_entry
    else:
        try:
            entry = REGISTRY[name_or_entry]
        except KeyError:
            raise KeyError(
                f"unknown function {name_or_entry!r}; known: {', '.join(REGISTRY)}"
            ) from None
    return entry.with_params(**params) if params else entry


class StripNormMode(str, enum.Enum):
    """Where the strip norm ``N1`` comes from in a study."""

    DECLARED = "declared"
    QUADRATURE = "quadrature"
    STRIP_BOUND = "strip_bound"
    NONE = "none"


class StudyError(RuntimeError):
    """A study row failed; the message carries the ladder index."""


@dataclass(frozen=True)
class StudyConfig:
    function: object  # registry name or RegistryEntry
    rule: Rule = Rule.W_EXACT
    ladder: Sequence[int] = TABLE_LADDER
    d_override: Optional[float] = None
    strip_norm_mode: StripNormMode = StripNormMode.DECLARED
    step: Optional[float] = None  # only for the manual rule
    quad_tol: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "rule", Rule.parse(self.rule))
        object.__setattr__(self, "strip_norm_mode", StripNormMode(self.strip_norm_mode))
        ladder = tuple(int(n) for n in self.ladder)
        if not ladder or any(n < 0 for n in ladder) or any(
                b <= a for a, b in zip(ladder, ladder[1:])):
            raise ValueError(f"ladder must be strictly increasing non-negative integers, got {ladder}")
        object.__setattr__(self, "ladder", ladder)
        if self.rule is Rule.MANUAL and self.step is None:
            raise ValueError("the manual rule needs an explicit step")


@dataclass(frozen=True)
class ConvergenceRow:
    index: int
    n_terms: int
    step: float
    observed_err: float
    envelope: float
    ratio: float

    def as_tuple(self) -> tuple:
        return dataclasses.astuple(self)


def _strip_norm_for(entry: RegistryEntry, d: float, mode: StripNormMode,
                    quad_tol: float) -> Optional[float]:
    if mode is StripNormMode.NONE:
        return None
    if mode is StripNormMode.DECLARED:
        if d == entry.default_strip.half_width:
            return entry.default_strip.strip_norm
        return None
    if mode is StripNormMode.STRIP_BOUND:
        return bounds.strip_norm_bound(entry.decay, d)
    return stripquad.strip_norm(entry.complex_target(d), quad_tol)


def resolve_step(entry: RegistryEntry, rule, n: int, d: Optional[float] = None,
                 strip_norm: Optional[float] = None, step: Optional[float] = None
                 ) -> bounds.PredictedError:
    """``(h, E_N, c)`` for one ``N``; the manual rule uses ``step`` as given."""
    rule = Rule.parse(rule)
    d = entry.default_strip.half_width if d is None else d
    inp = StepRuleInput(entry.decay, StripSpec(d, strip_norm), n)
    if rule is Rule.MANUAL:
        if step is None:
            raise ValueError("the manual rule needs an explicit step")
        return bounds.PredictedError(step, bounds.e_n_truncation_form(step, inp), None)
    return bounds.predicted_error(inp, rule, strip_norm)


def run_study(cfg: StudyConfig) -> list[ConvergenceRow]:
    """Interpolate on every ``N`` of the ladder and tabulate error against envelope.

    Rows are indexed from 1 in ladder order.
    """
    entry = get_entry(cfg.function)
    d = entry.default_strip.half_width if cfg.d_override is None else cfg.d_override
    strip_norm = _strip_norm_for(entry, d, cfg.strip_norm_mode, cfg.quad_tol)
    if cfg.rule is Rule.W_OPTIMIZED and strip_norm is None:
        raise StudyError(
            f"rule w-optimized needs N1 but strip_norm_mode={cfg.strip_norm_mode.value!r} "
            f"gave none for {entry.name}"
        )
    f = entry.evaluator()
    rows = []
    for i, n in enumerate(cfg.ladder, start=1):
        try:
            pred = resolve_step(entry, cfg.rule, n, d, strip_norm, cfg.step)
            err = cardinal.discrete_error(f, InterpolationPlan(n, pred.h, cfg.rule))
        except (ArithmeticError, ValueError) as exc:
            raise StudyError(f"ladder index {i} (N={n}): {exc}") from exc
        rows.append(ConvergenceRow(i, n, pred.h, err, pred.envelope, err / pred.envelope))
    return rows


def error_profile(function, rule, n: int, resolution: Optional[int] = None, *,
                  d: Optional[float] = None, strip_norm: Optional[float] = None,
                  step: Optional[float] = None) -> list[tuple[float, float]]:
    """Signed pointwise error ``f(x) - C_N{f, h}(x)``.

    Sampled at ``resolution`` evenly spaced points on ``[-2 N h, 2 N h]``
    (at least ``4 N + 1``). The default ``8 N + 1`` has spacing ``h / 2``, so
    the error grid ``j h / 2, |j| <= 2 N`` is a subset; so is any resolution
    with ``resolution - 1`` a multiple of ``8 N``.
    """
    entry = get_entry(function)
    rule = Rule.parse(rule)
    d = entry.default_strip.half_width if d is None else d
    if strip_norm is None and rule is Rule.W_OPTIMIZED:
        strip_norm = _strip_norm_for(entry, d, StripNormMode.DECLARED, 1e-8)
        if strip_norm is None:
            strip_norm = _strip_norm_for(entry, d, StripNormMode.QUADRATURE, 1e-8)
    h = resolve_step(entry, rule, n, d, strip_norm, step).h
    if resolution is None:
        resolution = 8 * n + 1
    if resolution < 4 * n + 1:
        raise ValueError(f"resolution must be at least 4N+1 = {4 * n + 1}, got {resolution}")
    f = entry.evaluator()
    ip = cardinal.sample(f, InterpolationPlan(n, h, rule))
    if n == 0:
        x = np.zeros(1) if resolution == 1 else np.linspace(-h, h, resolution)
    else:
        x = np.linspace(-2.0 * n * h, 2.0 * n * h, resolution)
    err = cardinal._eval_real(f, x) - cardinal.evaluate(ip, x)
    return list(zip(x.tolist(), err.tolist()))


# reference rows (N, err, E_N, c)
REFERENCE_TABLE: tuple[tuple[int, float, float, float], ...] = (
    (2, 6.373770e-02, 3.641222e-02, 1.750448),
    (4, 4.011175e-02, 1.904281e-02, 2.106399),
    (8, 1.019463e-02, 8.186076e-03, 1.245362),
    (16, 3.765622e-03, 2.948999e-03, 1.276915),
    (32, 1.368552e-03, 9.160491e-04, 1.493972),
    (64, 1.777309e-04, 2.523604e-04, 0.704274),
    (128, 7.216260e-05, 6.312895e-05, 1.143098),
    (256, 7.698800e-06, 1.460731e-05, 0.527051),
    (512, 2.505400e-06, 3.171023e-06, 0.790092),
    (1024, 3.281000e-07, 6.528835e-07, 0.502540),
)

# significant digits checked per column
TABLE_DIGITS = {"err": 3, "envelope": 6, "ratio": 3}

# canonical configurations; "ex2" reproduces the numbers, "ex2-literal" uses
# the cos 2x function at d = 0.7
_TABLES = {
    "ex2": StudyConfig("ex2-table", Rule.W_EXACT, TABLE_LADDER),
    "ex2-literal": StudyConfig("ex2", Rule.W_EXACT, TABLE_LADDER, d_override=0.7),
}


def matches_sig_digits(value: float, golden: float, digits: int) -> bool:
    """True if ``value`` agrees with ``golden`` to ``digits`` significant digits.

    Agreement means ``|value - golden| <= 0.5 * 10**(e - digits + 1)`` where
    ``e`` is the decimal exponent of ``golden``.
    """
    if golden == 0.0:
        return value == 0.0
    e = math.floor(math.log10(abs(golden)))
    return abs(value - golden) <= 0.5 * 10.0 ** (e - digits + 1)


@dataclass(frozen=True)
class CellCheck:
    index: int
    n_terms: int
    column: str
    value: float
    golden: float
    digits: int
    passed: bool


@dataclass
class TableReport:
    name: str
    rows: list[ConvergenceRow]
    cells: list[CellCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    def row_passed(self, index: int) -> bool:
        return all(c.passed for c in self.cells if c.index == index)

    @property
    def rows_passed(self) -> int:
        return sum(self.row_passed(r.index) for r in self.rows)

    def failures(self) -> list[CellCheck]:
        return [c for c in self.cells if not c.passed]

    def format(self) -> str:
        lines = [f"{'i':>2} {'N':>5} {'h':>13} {'err':>13} {'E_N':>13} {'c':>9}  status"]
        for r in self.rows:
            bad = [c.column for c in self.cells if c.index == r.index and not c.passed]
            status = "ok" if not bad else "FAIL " + ",".join(bad)
            lines.append(
                f"{r.index:>2} {r.n_terms:>5} {r.step:13.6e} {r.observed_err:13.6e} "
                f"{r.envelope:13.6e} {r.ratio:9.6f}  {status}"
            )
        lines.append(f"{self.rows_passed}/{len(self.rows)} rows pass")
        return "\n".join(lines)


def reproduce_table(which: str = "ex2",
                    golden: Optional[Sequence[tuple[int, float, float, float]]] = None
                    ) -> TableReport:
    """Run the canonical reference-table study and diff every cell against ``golden``.

    ``which`` is ``"ex2"`` (the configuration that generates the table) or
    ``"ex2-literal"``. Cell failures are collected, never raised.
    """
    try:
        cfg = _TABLES[which]
    except KeyError:
        raise ValueError(f"unknown table {which!r}; known: {', '.join(_TABLES)}") from None
    golden = REFERENCE_TABLE if golden is None else tuple(golden)
    if [g[0] for g in golden] != list(cfg.ladder):
        raise ValueError("golden rows do not match the study ladder")
    rows = run_study(cfg)
    cells = []
    for row, (n, g_err, g_env, g_ratio) in zip(rows, golden):
        for column, value, g in (("err", row.observed_err, g_err),
                                 ("envelope", row.envelope, g_env),
                                 ("ratio", row.ratio, g_ratio)):
            digits = TABLE_DIGITS[column]
            cells.append(CellCheck(row.index, n, column, value, g, digits,
                                   matches_sig_digits(value, g, digits)))
    return TableReport(which, rows, cells)


CSV_HEADER = ("i", "N", "h", "err", "envelope", "ratio")


def _fmt7(v: float) -> str:
    return f"{v:.6e}"


def write_csv(rows: Iterable[ConvergenceRow], path, delimiter: str = ",") -> None:
    """Write study rows with header ``i,N,h,err,envelope,ratio`` (7 significant digits)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow([r.index, r.n_terms, _fmt7(r.step), _fmt7(r.observed_err),
                        _fmt7(r.envelope), _fmt7(r.ratio)])


def write_tsv(pairs: Iterable[tuple[float, float]], path) -> None:
    """Write an error profile as tab-separated ``x``/``err`` columns."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(("x", "err"))
        for x, e in pairs:
            w.writerow((_fmt7(x), _fmt7(e)))
