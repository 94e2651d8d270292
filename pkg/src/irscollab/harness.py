"""Monte Carlo experiment driver.

Estimates the failure rate P_F(t), undetected-error rate P_ML(t), and total
error rate P_e(t) = P_F + P_ML of collaborative decoding; evaluates the
analytic finite-field failure bound; measures condition numbers of the
stacked syndrome system; runs the end-to-end coded-matmul demo; and emits
deterministic CSV reports.

Every trial draws from its own counter-based RNG stream keyed by
(master seed, L, t, trial index), so runs are reproducible cell by cell and
independent of execution order.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .decoder import FailureReason, build_stacked, cpda_decode, mssr_decode, outcomes_equal, t_max
from .errmodel import ErrorModelSpec, inject, sample_error
from .errors import DecoderMismatch, InvalidParameters
from .field import Field, PrimeField, RealField
from .grs import make_grs
from .polycode import PolyCodeParams, assemble_irs, encode_tasks, recover_product, worker_compute

__all__ = [
    "ExperimentConfig",
    "CellStats",
    "Report",
    "DemoReport",
    "make_alphas",
    "run_monte_carlo",
    "condnum_study",
    "pf_bound",
    "demo_matmul",
    "emit_csv",
    "load_csv",
]

# An undetected error means the decoder confidently returned a word that is
# materially different from the transmitted one; over the reals "different"
# is judged at this relative tolerance (successful corrections land orders
# of magnitude below it, wrong codewords orders of magnitude above).
CLASSIFY_RTOL = 1e-6

_DECODERS = ("cpda", "mssr", "both")
_MODELS = ("uref", "gre")


def make_alphas(field: Field, n: int, rule: str):
    """Evaluation points from a rule string.

    pow:<base>   alpha_i = base**i for i = 1..n
    linear       alpha_i = i for i = 1..n
    primitive    alpha_j = g**j for j = 0..n-1, g a primitive root (GF only)
    """
    if n < 1:
        raise InvalidParameters(f"need n >= 1, got {n}")
    if rule.startswith("pow:"):
        raw = rule[len("pow:"):]
        if isinstance(field, PrimeField):
            base = field.element(int(raw))
            return field.array([pow(int(base), i, field.p) for i in range(1, n + 1)])
        base = float(raw)
        return field.array([base ** i for i in range(1, n + 1)])
    if rule == "linear":
        return field.array(np.arange(1, n + 1))
    if rule == "primitive":
        if not isinstance(field, PrimeField):
            raise InvalidParameters("the primitive rule needs a prime field")
        g = field.primitive_root()
        return field.array([pow(g, j, field.p) for j in range(n)])
    raise InvalidParameters(f"unknown alpha rule {rule!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    """One Monte Carlo experiment: a grid of (L, t) cells over a fixed code."""

    field: Field
    n: int
    k: int
    l_values: tuple
    t_values: tuple
    trials: int
    model: str
    alphas: str = "primitive"
    decoder: str = "cpda"
    seed: int = 0
    measure_cond: bool = False
    model_mean: float = 0.0
    model_variance: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "l_values", tuple(int(l) for l in self.l_values))
        object.__setattr__(self, "t_values", tuple(int(t) for t in self.t_values))
        if not 1 <= self.k < self.n:
            raise InvalidParameters(f"need 1 <= k < n, got n={self.n}, k={self.k}")
        if not self.l_values or any(l < 1 for l in self.l_values):
            raise InvalidParameters("l_values must be positive and nonempty")
        if not self.t_values or any(not 0 <= t <= self.n for t in self.t_values):
            raise InvalidParameters(f"t_values must lie in [0, {self.n}]")
        if self.trials < 1:
            raise InvalidParameters("trials must be positive")
        if self.model not in _MODELS:
            raise InvalidParameters(f"model must be one of {_MODELS}, got {self.model!r}")
        if self.decoder not in _DECODERS:
            raise InvalidParameters(f"decoder must be one of {_DECODERS}, got {self.decoder!r}")
        if self.model == "uref" and not isinstance(self.field, PrimeField):
            raise InvalidParameters("the uref model requires a prime field")
        if self.model == "gre" and not isinstance(self.field, RealField):
            raise InvalidParameters("the gre model requires the real field")
        if self.seed < 0:
            raise InvalidParameters("seed must be nonnegative")

    def code(self):
        return make_grs(self.field, self.n, self.k, make_alphas(self.field, self.n, self.alphas))

    def error_spec(self, t: int) -> ErrorModelSpec:
        if self.model == "uref":
            return ErrorModelSpec(kind="uref", t=t)
        return ErrorModelSpec(kind="gre", t=t, mean=self.model_mean,
                              variance=self.model_variance)


@dataclass(frozen=True)
class CellStats:
    """Counters for one (L, t) cell; successes + failures + undetected = trials."""

    t: int
    l: int
    trials: int
    failures: int
    undetected: int
    mean_cond: float | None = None

    @property
    def successes(self) -> int:
        return self.trials - self.failures - self.undetected

    @property
    def p_f(self) -> float:
        return self.failures / self.trials

    @property
    def p_ml(self) -> float:
        return self.undetected / self.trials

    @property
    def p_e(self) -> float:
        return (self.failures + self.undetected) / self.trials


@dataclass(frozen=True)
class Report:
    """Cells ordered by (L, t)."""

    cells: tuple

    def __post_init__(self):
        ordered = tuple(sorted(self.cells, key=lambda c: (c.l, c.t)))
        object.__setattr__(self, "cells", ordered)

    def cell(self, l: int, t: int) -> CellStats:
        for c in self.cells:
            if c.l == l and c.t == t:
                return c
        raise KeyError(f"no cell for L={l}, t={t}")


def _trial_rng(seed: int, l: int, t: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, l, t, trial))))


def _random_messages(fld: Field, rng, l: int, k: int):
    if isinstance(fld, PrimeField):
        return fld.rand_elements(rng, (l, k))
    return rng.standard_normal((l, k))


def _words_differ(fld: Field, got, want) -> bool:
    if isinstance(fld, PrimeField):
        return not np.array_equal(got, want)
    scale = max(1.0, float(np.max(np.abs(want), initial=0.0)))
    return bool(np.max(np.abs(got - want)) > CLASSIFY_RTOL * scale)


def _decode_once(config: ExperimentConfig, code, received):
    if config.decoder == "cpda":
        return cpda_decode(code, received)
    if config.decoder == "mssr":
        return mssr_decode(code, received)
    a = cpda_decode(code, received)
    b = mssr_decode(code, received)
    if isinstance(config.field, PrimeField):
        if not outcomes_equal(config.field, a, b):
            raise DecoderMismatch(f"decoders disagree: {a.reason} vs {b.reason}")
    elif not outcomes_equal(config.field, a, b, rtol=CLASSIFY_RTOL):
        warnings.warn("cpda and mssr disagree beyond tolerance; keeping the cpda outcome")
    return a


def run_monte_carlo(config: ExperimentConfig) -> Report:
    """Estimate P_F, P_ML, P_e for every (L, t) cell of the config.

    Each trial encodes random messages, plants a weight-t column error,
    decodes, and classifies the outcome against the transmitted word:
    failure when the decoder gives up, undetected error when it returns a
    different word.  Deterministic for a fixed master seed.
    """
    fld = config.field
    code = config.code()
    enc = code.encoding_matrix().T  # k x n, word = messages @ enc
    cells = []
    for l in config.l_values:
        for t in config.t_values:
            spec = None if t == 0 else config.error_spec(t)
            failures = undetected = 0
            conds = []
            for trial in range(config.trials):
                rng = _trial_rng(config.seed, l, t, trial)
                word = fld.matmul(_random_messages(fld, rng, l, config.k), enc)
                if spec is None:
                    received = word
                else:
                    err = sample_error(spec, fld, l, config.n, rng)
                    received = inject(word, err.e, fld)
                if config.measure_cond and t >= 1:
                    s = build_stacked(code, received, t).matrix
                    conds.append(float(np.linalg.cond(s.T @ s)))
                outcome = _decode_once(config, code, received)
                if not outcome.success:
                    failures += 1
                elif _words_differ(fld, outcome.corrected, word):
                    undetected += 1
            mean_cond = math.fsum(conds) / len(conds) if conds else None
            cells.append(CellStats(t=t, l=l, trials=config.trials,
                                   failures=failures, undetected=undetected,
                                   mean_cond=mean_cond))
    return Report(cells=tuple(cells))


def condnum_study(config: ExperimentConfig) -> Report:
    """Mean 2-norm condition number of the stacked system's Gram matrix.

    For each (L, t) cell, plants weight-t errors on random codewords and
    averages cond(S^T S) of the stacked system built at the true t.  No
    decoding is performed.  Real field only.
    """
    if not isinstance(config.field, RealField):
        raise InvalidParameters("conditioning is only studied over the real field")
    if any(t < 1 for t in config.t_values):
        raise InvalidParameters("conditioning needs t >= 1")
    for l in config.l_values:
        tm = t_max(config.n, config.k, l)
        bad = [t for t in config.t_values if t > tm]
        if bad:
            raise InvalidParameters(f"t={bad[0]} exceeds t_max={tm} for L={l}")
    fld = config.field
    code = config.code()
    enc = code.encoding_matrix().T
    cells = []
    for l in config.l_values:
        for t in config.t_values:
            spec = config.error_spec(t)
            conds = []
            for trial in range(config.trials):
                rng = _trial_rng(config.seed, l, t, trial)
                word = fld.matmul(_random_messages(fld, rng, l, config.k), enc)
                err = sample_error(spec, fld, l, config.n, rng)
                received = inject(word, err.e, fld)
                s = build_stacked(code, received, t).matrix
                conds.append(float(np.linalg.cond(s.T @ s)))
            cells.append(CellStats(t=t, l=l, trials=config.trials, failures=0,
                                   undetected=0,
                                   mean_cond=math.fsum(conds) / len(conds)))
    return Report(cells=tuple(cells))


def pf_bound(q: int, n: int, k: int, l: int, t: int) -> float:
    """Analytic upper bound on the failure rate under uniform errors.

    ((q^L - 1/q) / (q^L - 1)) * q^{-(L+1)(t_max - t)} / (q - 1), clamped to
    [0, 1]; valid for 0 <= t <= t_max.  Evaluated in exact rational
    arithmetic before conversion to float.
    """
    if q < 2:
        raise InvalidParameters(f"need q >= 2, got {q}")
    tm = t_max(n, k, l)
    if not 0 <= t <= tm:
        raise InvalidParameters(f"need 0 <= t <= t_max={tm}, got t={t}")
    ql = Fraction(q) ** l
    bound = ((ql - Fraction(1, q)) / (ql - 1)) / (Fraction(q) ** ((l + 1) * (tm - t)) * (q - 1))
    return float(min(Fraction(1), max(Fraction(0), bound)))


@dataclass(frozen=True)
class DemoReport:
    """End-to-end coded matmul outcome."""

    success: bool
    max_rel_error: float | None
    reason: FailureReason | None = None
    t: int = 0
    num_workers: int = 0


def demo_matmul(params: PolyCodeParams, t: int, seed: int = 0) -> DemoReport:
    """Full pipeline on random matrices with t faulty workers.

    Generates random inputs, distributes encoded tasks, corrupts the
    outputs of t workers, decodes collaboratively, and compares the
    recovered product to the directly computed one.  A decoding impasse is
    reported in the outcome, not raised.
    """
    fld = params.field
    # Fixed demo shapes: 4 inner rows and blocks of width 2, giving an
    # interleaving depth of L = 4 regardless of the split counts.
    s, r, rp = 4, 2 * params.m, 2 * params.n
    l = (r * rp) // (params.m * params.n)
    tm = t_max(params.num_workers, params.k, l)
    if not 0 <= t <= tm:
        raise InvalidParameters(f"need 0 <= t <= t_max={tm}, got t={t}")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, l, t, 0))))
    if isinstance(fld, PrimeField):
        a = fld.rand_elements(rng, (s, r))
        b = fld.rand_elements(rng, (s, rp))
    else:
        a = rng.standard_normal((s, r))
        b = rng.standard_normal((s, rp))
    tasks = encode_tasks(params, a, b)
    outputs = [worker_compute(task) for task in tasks]
    word = assemble_irs(params, outputs)
    if t > 0:
        kind = "uref" if isinstance(fld, PrimeField) else "gre"
        err = sample_error(ErrorModelSpec(kind=kind, t=t), fld, l, params.num_workers, rng)
        word = replace(word, d=inject(word.d, err.e, fld))
    outcome = cpda_decode(word.code, word.d)
    if not outcome.success:
        return DemoReport(success=False, max_rel_error=None, reason=outcome.reason,
                          t=t, num_workers=params.num_workers)
    product = recover_product(params, replace(word, d=outcome.corrected))
    truth = fld.matmul(a.T, b)
    if isinstance(fld, PrimeField):
        rel = 0.0 if np.array_equal(product, truth) else 1.0
    else:
        rel = float(np.max(np.abs(product - truth)) / max(1.0, float(np.max(np.abs(truth)))))
    return DemoReport(success=True, max_rel_error=rel, t=t, num_workers=params.num_workers)


# ---------------------------------------------------------------------------
# CSV I/O
# ---------------------------------------------------------------------------

_CSV_HEADER = "t,L,trials,failures,undetected,p_f,p_ml,p_e,mean_cond"
_COND_COMMENT = ("# mean_cond: 2-norm condition number of the stacked system's"
                 " Gram matrix at the true t, averaged over all trials")


def emit_csv(report: Report, path) -> None:
    """Write a report as CSV: one row per (L, t), byte-deterministic."""
    lines = []
    if any(c.mean_cond is not None for c in report.cells):
        lines.append(_COND_COMMENT)
    lines.append(_CSV_HEADER)
    for c in report.cells:
        cond = "" if c.mean_cond is None else repr(c.mean_cond)
        lines.append(f"{c.t},{c.l},{c.trials},{c.failures},{c.undetected},"
                     f"{c.p_f!r},{c.p_ml!r},{c.p_e!r},{cond}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_csv(path) -> Report:
    """Parse a CSV written by emit_csv back into a Report."""
    with open(path, "r", encoding="utf-8") as fh:
        rows = [line for line in fh.read().splitlines()
                if line and not line.startswith("#")]
    if not rows or rows[0] != _CSV_HEADER:
        raise InvalidParameters(f"{path} is not a report CSV")
    cells = []
    for rec in csv.reader(rows[1:]):
        t, l, trials, failures, undetected = (int(x) for x in rec[:5])
        mean_cond = float(rec[8]) if rec[8] else None
        cells.append(CellStats(t=t, l=l, trials=trials, failures=failures,
                               undetected=undetected, mean_cond=mean_cond))
    return Report(cells=tuple(cells))
