"""Collaborative decoding of interleaved GRS words.

An interleaved word R (L x N) carries L codewords of one GRS(N, K) code hit
by errors confined to at most t shared columns.  Each layer l yields N - K
syndromes S^(l)_i; a common error-locator polynomial Lambda(z) = 1 + c_1 z +
... + c_t z^t with roots 1/alpha_j at the erroneous columns j satisfies, for
every layer, the windowed recurrence

    sum_{k=0}^{t-1} S^(l)_{i+k} * c_{t-k} = -S^(l)_{t+i},   0 <= i < N-K-t.

Stacking these L Hankel blocks gives one linear system in the t unknown
coefficients; errors in up to t_max = floor(L (N-K) / (L+1)) columns are
correctable whenever the stack has full column rank.

Two decoders are provided and produce identical outcomes: cpda_decode scans
t = 1, 2, ... and accepts the first t whose stacked system is consistent
(with a unique solution), while mssr_decode synthesizes the minimal-length
common recurrence of the L syndrome sequences directly and validates it.
Both certify the result through the same location and value-recovery checks,
so a Success is always the closest (maximum-likelihood) explanation of R.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import InvalidParameters
from .field import Field, PrimeField, RealField
from .grs import GrsCode

__all__ = [
    "FailureReason",
    "ErrorLocator",
    "SyndromeSet",
    "StackedSystem",
    "DecodeOutcome",
    "t_max",
    "layer_syndromes",
    "build_stacked",
    "synthesize_recurrence",
    "is_t_valid",
    "recover_error_values",
    "cpda_decode",
    "mssr_decode",
    "outcomes_equal",
]


class FailureReason(enum.Enum):
    """Why a decode attempt returned no corrected word.

    NO_CONSISTENT_T    no t <= t_max admits any common recurrence
    RANK_DEFICIENT     the minimal consistent t admits multiple recurrences
    NOT_T_VALID        the unique locator lacks t distinct candidate roots
    SYNDROME_RESIDUAL  located error values cannot reproduce the syndromes
    """

    NO_CONSISTENT_T = "no_consistent_t"
    RANK_DEFICIENT = "rank_deficient"
    NOT_T_VALID = "not_t_valid"
    SYNDROME_RESIDUAL = "syndrome_residual"


@dataclass(frozen=True)
class ErrorLocator:
    """Lambda(z) = 1 + coeffs[0] z + ... + coeffs[t-1] z^t."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.atleast_1d(np.array(self.coeffs, copy=True))
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def t(self) -> int:
        return self.coeffs.shape[0]


@dataclass(frozen=True)
class SyndromeSet:
    """Per-layer syndromes; scale carries magnitude references over the reals."""

    values: np.ndarray
    scale: np.ndarray | None = None


@dataclass(frozen=True)
class StackedSystem:
    """The L stacked Hankel blocks for a trial error count t."""

    t: int
    matrix: np.ndarray
    rhs: np.ndarray


@dataclass(frozen=True)
class DecodeOutcome:
    """Result of a decode attempt.

    On success, corrected is the repaired L x N word, locations the sorted
    erroneous columns, values the L x t error values subtracted there, and
    locator the certified error-locator polynomial.  On failure only reason
    is set.  A Success certifies that the corrected word has all-zero
    syndromes (to within the residual tolerance over the reals) and is the
    closest interleaved codeword to the input.
    """

    success: bool
    corrected: np.ndarray | None = None
    locator: ErrorLocator | None = None
    locations: tuple | None = None
    values: np.ndarray | None = None
    reason: FailureReason | None = None

    @classmethod
    def ok(cls, corrected, locator, locations, values):
        return cls(success=True, corrected=corrected, locator=locator,
                   locations=tuple(int(j) for j in locations), values=values)

    @classmethod
    def fail(cls, reason: FailureReason):
        return cls(success=False, reason=reason)


def t_max(n: int, k: int, l: int) -> int:
    """Collaborative decoding radius floor(l * (n - k) / (l + 1))."""
    if not 1 <= k < n:
        raise InvalidParameters(f"need 1 <= k < n, got n={n}, k={k}")
    if l < 1:
        raise InvalidParameters(f"need l >= 1, got l={l}")
    return (l * (n - k)) // (l + 1)


def layer_syndromes(code: GrsCode, r) -> SyndromeSet:
    """Syndromes of every layer of an L x N word, with magnitude references."""
    fld = code.field
    r = fld.array(r)
    if r.ndim != 2 or r.shape[1] != code.n:
        raise InvalidParameters(f"expected an L x {code.n} matrix, got shape {r.shape}")
    values = fld.matmul(r, code.syndrome_matrix())
    if isinstance(fld, PrimeField):
        return SyndromeSet(values=values)
    scale = np.abs(r) @ code.syndrome_matrix_abs()
    return SyndromeSet(values=values, scale=scale)


def _stack(synd: SyndromeSet, t: int, field: Field) -> StackedSystem:
    values = synd.values
    nk = values.shape[1]
    win = sliding_window_view(values, t, axis=1)
    matrix = win[:, : nk - t, :].reshape(-1, t)
    rhs = -values[:, t:]
    if isinstance(field, PrimeField):
        rhs = rhs % field.p
    return StackedSystem(t=t, matrix=matrix, rhs=rhs.reshape(-1))


def build_stacked(code: GrsCode, r, t: int) -> StackedSystem:
    """Stacked syndrome system for trial error count t.

    Per layer, row i pairs the window (S_i, ..., S_{i+t-1}) with the
    right-hand side -S_{t+i}; the unknown vector is (c_t, ..., c_1).
    """
    if not isinstance(t, (int, np.integer)) or t < 1:
        raise InvalidParameters(f"t must be a positive integer, got {t!r}")
    r = code.field.array(r)
    if r.ndim != 2:
        raise InvalidParameters("expected an L x N matrix")
    tm = t_max(code.n, code.k, r.shape[0])
    if t > tm:
        raise InvalidParameters(f"t={t} exceeds the decoding radius t_max={tm}")
    return _stack(layer_syndromes(code, r), int(t), code.field)


# ---------------------------------------------------------------------------
# Minimal common recurrence synthesis
# ---------------------------------------------------------------------------

def _prefix_system(seqs: np.ndarray, t2: int, j: int, field: Field):
    """Constraint system for a length-t2 recurrence on positions t2..j."""
    rows = j - t2 + 1
    if rows <= 0:
        return None, None
    wins = sliding_window_view(seqs[:, :j], t2, axis=1)[:, :rows, :]
    matrix = wins[..., ::-1].reshape(-1, t2)
    rhs = -seqs[:, t2:j + 1]
    if isinstance(field, PrimeField):
        rhs = rhs % field.p
    return matrix, rhs.reshape(-1)


def synthesize_recurrence(field: Field, seqs, scales=None):
    """Minimal-length common linear recurrence over the rows of seqs.

    Processes the sequences position by position; whenever any row shows a
    nonzero discrepancy the register is re-fit at the smallest length whose
    constraint system over the processed prefix is consistent.  Returns
    (t, coeffs) with coeffs = (c_1, ..., c_t) such that every row s obeys
    s[i] + sum_k c_k s[i-k] = 0 for t <= i < len(s).  Discrepancy zero tests
    over the reals are scale-relative; scales (same shape as seqs) supplies
    per-syndrome magnitude references.
    """
    seqs = field.array(seqs)
    if seqs.ndim != 2:
        raise InvalidParameters("expected an L x n matrix of sequences")
    _, n = seqs.shape
    real = isinstance(field, RealField)
    mags = None
    if real:
        mags = np.abs(seqs)
        if scales is not None:
            mags = np.maximum(mags, np.asarray(scales, dtype=np.float64))
    t = 0
    coeffs = field.zeros(0)
    for j in range(n):
        if j < t:
            continue
        window = seqs[:, j - t:j][:, ::-1]
        if real:
            delta = seqs[:, j] + (window @ coeffs if t else 0)
            base = mags[:, j] + (np.abs(window) @ np.abs(coeffs) if t else 0)
            if np.all(field.is_zero(delta, scale=base)):
                continue
        else:
            delta = seqs[:, j]
            if t:
                delta = field.add(delta, field.matmul(window, coeffs.reshape(-1, 1)).reshape(-1))
            if np.all(delta == 0):
                continue
        for t2 in range(max(t, 1), j + 2):
            matrix, rhs = _prefix_system(seqs, t2, j, field)
            if matrix is None:
                t, coeffs = t2, field.zeros(t2)
                break
            sol = field.solve_consistent(matrix, rhs)
            if sol is not None:
                t, coeffs = t2, sol
                break
    return t, coeffs


# ---------------------------------------------------------------------------
# Locator validation and error-value recovery
# ---------------------------------------------------------------------------

def _require_invertible_points(code: GrsCode):
    if np.any(np.asarray(code.alphas) == 0):
        raise InvalidParameters("decoding requires nonzero evaluation points")


def is_t_valid(code: GrsCode, locator: ErrorLocator):
    """Check that Lambda has exactly t distinct roots among the 1/alpha_j.

    Returns (valid, locations).  Over GF(p) the candidates are evaluated
    exactly; over the reals the t polynomial roots are matched to their
    nearest candidates, each match accepted only within a window of
    max(root_tol * |candidate|, 0.45 * nearest-candidate gap) so that roots
    perturbed by solver noise are recognized while off-grid or coalescing
    roots are rejected.
    """
    _require_invertible_points(code)
    fld = code.field
    t = locator.t
    if t == 0:
        return True, ()
    if isinstance(fld, PrimeField):
        coeffs = fld.array(locator.coeffs)
        if coeffs[-1] == 0:
            return False, ()
        cands = fld.inv(code.alphas)
        acc = fld.zeros(code.n)
        for c in list(coeffs[::-1]) + [1]:
            acc = (acc * cands + c) % fld.p
        locations = np.nonzero(acc == 0)[0]
        return (locations.shape[0] == t), tuple(int(j) for j in locations)
    coeffs = np.asarray(locator.coeffs, dtype=np.float64)
    lead_scale = max(1.0, float(np.max(np.abs(coeffs))))
    if fld.is_zero(coeffs[-1], scale=lead_scale):
        return False, ()
    roots = np.roots(np.concatenate([coeffs[::-1], [1.0]]))
    cands = 1.0 / np.asarray(code.alphas, dtype=np.float64)
    gaps = code.candidate_gaps()
    matched = set()
    for root in roots:
        dists = np.abs(root - cands)
        j1 = int(np.argmin(dists))
        window = max(fld.tol.root_tol * max(abs(cands[j1]), 1.0), 0.45 * gaps[j1])
        if dists[j1] > window:
            return False, ()
        matched.add(j1)
    if len(matched) != t:
        return False, ()
    return True, tuple(sorted(matched))


def recover_error_values(code: GrsCode, locations, synd: SyndromeSet):
    """Error values explaining every syndrome at the given locations.

    Solves, for each layer, the full overdetermined system
    sum_i u_{j_i} e_{j_i} alpha_{j_i}^k = S_k over all N - K syndromes;
    returns the L x t value matrix, or None when any layer's system is
    inconsistent (so the locations cannot explain the received word).
    """
    locations = list(locations)
    if not locations:
        return code.field.zeros((synd.values.shape[0], 0))
    m = code.syndrome_matrix()[locations, :].T
    sol = code.field.solve_consistent(m, synd.values.T)
    return None if sol is None else sol.T


# ---------------------------------------------------------------------------
# The two decoders
# ---------------------------------------------------------------------------

def _all_syndromes_zero(synd: SyndromeSet, field: Field) -> bool:
    if isinstance(field, PrimeField):
        return bool(np.all(synd.values == 0))
    return bool(np.all(field.is_zero(synd.values, scale=synd.scale)))


def _clean_outcome(field: Field, r: np.ndarray) -> DecodeOutcome:
    locator = ErrorLocator(coeffs=field.zeros(0))
    return DecodeOutcome.ok(np.array(r, copy=True), locator, (), field.zeros((r.shape[0], 0)))


def _finish(code: GrsCode, synd: SyndromeSet, r: np.ndarray, coeffs) -> DecodeOutcome:
    """Shared tail: validate the locator, recover values, subtract."""
    fld = code.field
    locator = ErrorLocator(coeffs=coeffs)
    valid, locations = is_t_valid(code, locator)
    if not valid:
        return DecodeOutcome.fail(FailureReason.NOT_T_VALID)
    values = recover_error_values(code, locations, synd)
    if values is None:
        return DecodeOutcome.fail(FailureReason.SYNDROME_RESIDUAL)
    corrected = np.array(r, copy=True)
    locs = list(locations)
    corrected[:, locs] = fld.sub(corrected[:, locs], values)
    return DecodeOutcome.ok(corrected, locator, locations, values)


def _validated_word(code: GrsCode, r):
    _require_invertible_points(code)
    r = code.field.array(r)
    if r.ndim != 2 or r.shape[1] != code.n or r.shape[0] < 1:
        raise InvalidParameters(f"expected an L x {code.n} received matrix")
    return r


def _attempt(code: GrsCode, synd: SyndromeSet, r: np.ndarray, t: int, coeffs=None):
    """Try to decode with exactly t errors.

    Returns ("skip", None) when the stacked system is inconsistent,
    ("fail", reason) when it is consistent but a downstream check rejects
    it, or ("success", outcome).  When coeffs is given (from recurrence
    synthesis) the stacked solve is skipped.
    """
    fld = code.field
    system = _stack(synd, t, fld)
    if coeffs is None:
        sol = fld.solve_consistent(system.matrix, system.rhs)
        if sol is None:
            return "skip", None
        coeffs = sol[::-1]
    if fld.rank(system.matrix) < t:
        return "fail", FailureReason.RANK_DEFICIENT
    outcome = _finish(code, synd, r, coeffs)
    if outcome.success:
        return "success", outcome
    return "fail", outcome.reason


def cpda_decode(code: GrsCode, r) -> DecodeOutcome:
    """Collaborative Peterson-style decoder.

    Scans t = 1, ..., t_max and accepts the first t whose stacked syndrome
    system is consistent; the solution must be unique (full column rank),
    t-valid, and able to reproduce every syndrome.  Over GF(p) a failed
    check at the accepted t is final (larger t provably cannot recover).
    Over the reals the scan continues past it - a near-degenerate error
    pattern can look consistent at too small a t within tolerance - and
    the first failure is reported if no t succeeds.  Never raises on a
    decoding impasse; all failure modes are reported in the outcome.
    """
    r = _validated_word(code, r)
    fld = code.field
    synd = layer_syndromes(code, r)
    if _all_syndromes_zero(synd, fld):
        return _clean_outcome(fld, r)
    tm = t_max(code.n, code.k, r.shape[0])
    first_reason = None
    for t in range(1, tm + 1):
        kind, res = _attempt(code, synd, r, t)
        if kind == "success":
            return res
        if kind == "fail":
            if isinstance(fld, PrimeField):
                return DecodeOutcome.fail(res)
            if first_reason is None:
                first_reason = res
    return DecodeOutcome.fail(first_reason or FailureReason.NO_CONSISTENT_T)


def mssr_decode(code: GrsCode, r) -> DecodeOutcome:
    """Multi-sequence shift-register decoder.

    Synthesizes the minimal-length common recurrence of the L syndrome
    sequences, then applies the same validity, uniqueness, and value
    checks as cpda_decode (including the real-field rescan at larger t
    after a downstream rejection); the two decoders agree on every input
    (exactly over GF(p), to numerical tolerance over the reals).
    """
    r = _validated_word(code, r)
    fld = code.field
    synd = layer_syndromes(code, r)
    if _all_syndromes_zero(synd, fld):
        return _clean_outcome(fld, r)
    t0, coeffs = synthesize_recurrence(fld, synd.values, scales=synd.scale)
    if t0 == 0:
        return _clean_outcome(fld, r)
    tm = t_max(code.n, code.k, r.shape[0])
    if t0 > tm:
        return DecodeOutcome.fail(FailureReason.NO_CONSISTENT_T)
    kind, res = _attempt(code, synd, r, t0, coeffs=coeffs)
    if kind == "success":
        return res
    if isinstance(fld, PrimeField):
        return DecodeOutcome.fail(res)
    first_reason = res
    for t in range(t0 + 1, tm + 1):
        kind, res = _attempt(code, synd, r, t)
        if kind == "success":
            return res
    return DecodeOutcome.fail(first_reason)


def outcomes_equal(field: Field, a: DecodeOutcome, b: DecodeOutcome, rtol=None) -> bool:
    """Whether two outcomes agree (exactly over GF, within rtol over reals)."""
    if a.success != b.success:
        return False
    if not a.success:
        return a.reason == b.reason
    if a.locations != b.locations:
        return False
    if isinstance(field, PrimeField):
        return (np.array_equal(a.corrected, b.corrected)
                and np.array_equal(a.values, b.values)
                and np.array_equal(a.locator.coeffs, b.locator.coeffs))
    if rtol is None:
        rtol = field.tol.eq_tol
    for x, y in ((a.corrected, b.corrected), (a.values, b.values),
                 (a.locator.coeffs, b.locator.coeffs)):
        if x.shape != y.shape:
            return False
        scale = max(1.0, float(np.max(np.abs(x), initial=0.0)),
                    float(np.max(np.abs(y), initial=0.0)))
        if not np.all(np.abs(x - y) <= rtol * scale):
            return False
    return True
