"""
Distributed matrix multiplication with faulty workers
=====================================================

Multiply two matrices on a pool of twelve workers, let half of them
return garbage, and recover the exact product anyway.

The master splits ``A`` and ``B`` into column blocks and hands every
worker one *encoded* pair -- a polynomial combination of the blocks
evaluated at a point assigned to that worker.  Each worker multiplies
its pair and sends the result back.  Stacking the flattened worker
results side by side yields an interleaved codeword: every worker owns
one column, so a corrupted worker corrupts one column across all rows.
The collaborative decoder exploits that shared column support to remove
more corrupted workers than a row-by-row decoder ever could.
"""

import dataclasses

import numpy as np

from irscollab import (
    PolyCodeParams,
    PrimeField,
    assemble_irs,
    cpda_decode,
    encode_tasks,
    make_alphas,
    recover_product,
    t_max,
    worker_compute,
)

###############################################################################
# Problem setup
# -------------
# We work over the prime field GF(257) so every recovery is exact.  ``A``
# is split into m = 2 column blocks and ``B`` into n = 2, which means any
# m * n = 4 honest workers would suffice; we provision 12 so the job
# survives faulty ones.

fld = PrimeField(257)
m, n = 2, 2
num_workers = 12

xs = make_alphas(fld, num_workers, "primitive")
params = PolyCodeParams(field=fld, m=m, n=n, num_workers=num_workers, xs=xs)

rng = np.random.default_rng(7)
a = rng.integers(0, fld.p, size=(4, 4))
b = rng.integers(0, fld.p, size=(4, 4))
truth = fld.matmul(a.T, b)

print(f"computing A^T B for A, B of shape {a.shape} over GF({fld.p})")
print(f"workers: {num_workers}, recovery threshold: {params.k} honest results")

###############################################################################
# Encode, dispatch, collect
# -------------------------
# ``encode_tasks`` builds one (A-tilde, B-tilde) pair per worker;
# ``worker_compute`` is the untrusted part of the computation.

tasks = encode_tasks(params, a, b)
outputs = [worker_compute(task) for task in tasks]
print(f"each worker returns a {outputs[0].shape} block product")

###############################################################################
# Six workers go rogue
# --------------------
# The interleaved code built on 12 workers with threshold 4 and 4 rows
# tolerates t_max = 6 corrupted columns -- compare with only
# (12 - 4) // 2 = 4 for a row-by-row decoder.

radius = t_max(num_workers, params.k, 4)
print(f"column-error radius with 4 shared rows: {radius}")

bad = [1, 4, 7, 8, 10, 11]
for w in bad:
    outputs[w] = rng.integers(0, fld.p, size=outputs[w].shape)
print(f"workers returning garbage: {bad}")

###############################################################################
# Decode and recover the product
# ------------------------------
# ``assemble_irs`` flattens the worker results into an interleaved word;
# the decoder reports which columns it corrected, and the corrected word
# is interpolated back into the product.

word = assemble_irs(params, outputs)
print(f"interleaved word shape (rows x workers): {word.d.shape}")

outcome = cpda_decode(word.code, word.d)
print(f"decode success: {outcome.success}")
print(f"corrupted workers identified: {list(outcome.locations)}")

repaired = dataclasses.replace(word, d=outcome.corrected)
c_hat = recover_product(params, repaired)

print(f"recovered product equals A^T B exactly: {np.array_equal(c_hat, truth)}")
