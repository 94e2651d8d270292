"""
Inside the collaborative decoder
================================

Walk through one decode of an interleaved word, from syndromes to the
stacked key equation to the error-locator polynomial and back to the
corrected word.

An interleaved word is L codewords from the same generalized
Reed-Solomon code whose errors share column positions.  Each row alone
yields N - K syndromes and a Hankel key equation; stacking the L key
equations multiplies the number of usable equations without adding
unknowns, which is what pushes the radius past the classical
(N - K) / 2.
"""

import numpy as np

from irscollab import (
    ErrorModelSpec,
    PrimeField,
    build_stacked,
    cpda_decode,
    encode,
    inject,
    is_t_valid,
    layer_syndromes,
    make_grs,
    mssr_decode,
    outcomes_equal,
    recover_error_values,
    sample_error,
    t_max,
)

###############################################################################
# A five-column error that a classical decoder cannot touch
# ---------------------------------------------------------
# Code: N = 10 evaluation points, K = 2 message symbols, over GF(257).
# One row corrects floor((N - K) / 2) = 4 errors; two rows sharing their
# error support stretch that to t_max = floor(2 * 8 / 3) = 5.

fld = PrimeField(257)
code = make_grs(fld, 10, 2, np.arange(1, 11))
print(f"radius alone: {t_max(10, 2, 1)}, radius with 2 rows: {t_max(10, 2, 2)}")

rng = np.random.default_rng(11)
msgs = rng.integers(0, fld.p, size=(2, 2))
word = np.stack([encode(code, msg) for msg in msgs])

err = sample_error(ErrorModelSpec("uref", 5), fld, 2, 10, rng)
received = inject(word, err.e, fld)
print(f"planted error columns: {list(err.support)}")

###############################################################################
# Step 1: syndromes
# -----------------
# Every row contributes N - K = 8 syndromes; they depend only on the
# error, not on the message.

synd = layer_syndromes(code, received)
print(f"syndrome array shape: {synd.values.shape}")
print(f"row 0 syndromes: {synd.values[0]}")

###############################################################################
# Step 2: the stacked key equation
# --------------------------------
# For a trial error weight t, each row gives N - K - t Hankel equations
# in the same t locator coefficients.  Scanning t upward, the first
# weight whose stacked system turns consistent is the answer.

for t in range(1, t_max(10, 2, 2) + 1):
    system = build_stacked(code, received, t)
    sol = fld.solve_consistent(system.matrix, system.rhs.reshape(-1, 1))
    status = "consistent" if sol is not None else "inconsistent"
    print(f"t = {t}: stacked system {system.matrix.shape} is {status}")

###############################################################################
# Step 3: locate and evaluate
# ---------------------------
# The full decoder repeats the scan, checks that the locator polynomial
# Lambda(x) = 1 + c1*x + ... + ct*x^t has exactly t roots among the
# reciprocal evaluation points, then solves for the error values row by
# row.

outcome = cpda_decode(code, received)
print(f"locator coefficients (c1..ct): {outcome.locator.coeffs}")
valid, located = is_t_valid(code, outcome.locator)
print(f"locator has exactly t roots on the grid: {valid}, "
      f"pointing at columns {list(located)}")

values = recover_error_values(code, outcome.locations, synd)
print(f"recovered error values match planted ones: "
      f"{np.array_equal(values, err.e[:, list(err.support)])}")
print(f"corrected word equals the sent word: "
      f"{np.array_equal(outcome.corrected, word)}")

###############################################################################
# Two decoders, one answer
# ------------------------
# The shift-register decoder synthesizes the shortest recurrence that
# generates every syndrome row instead of scanning weights one by one.
# Over a prime field both decoders are exactly equivalent.

alt = mssr_decode(code, received)
print(f"shift-register decoder agrees: {outcomes_equal(fld, outcome, alt)}")
