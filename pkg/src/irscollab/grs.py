"""Generalized Reed-Solomon codes with explicit dual (syndrome) multipliers.

A GRS(N, K) code over a field F is the set of words c with
c_i = v_i * m(alpha_i) for polynomials m of degree < K, where the alpha_i are
distinct evaluation points and the v_i are nonzero column multipliers.  The
dual multipliers u_i, defined by u_i^-1 = v_i * prod_{j != i} (alpha_i -
alpha_j), make the N - K syndrome functionals S_i(r) = sum_j u_j r_j
alpha_j^i vanish exactly on codewords.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidParameters, NotACodeword
from .field import Field, PrimeField, RealField

__all__ = ["GrsCode", "make_grs", "classical_code", "encode", "syndromes", "interpolate"]


class GrsCode:
    """Immutable GRS code parameters plus cached evaluation/syndrome matrices."""

    __slots__ = ("field", "n", "k", "alphas", "v", "u",
                 "_enc_mat", "_synd_mat", "_synd_mat_abs", "_cand_gaps")

    def __init__(self, field: Field, n: int, k: int, alphas, v, u):
        self.field = field
        self.n = n
        self.k = k
        self.alphas = np.array(alphas, copy=True)
        self.v = np.array(v, copy=True)
        self.u = np.array(u, copy=True)
        for arr in (self.alphas, self.v, self.u):
            arr.setflags(write=False)
        self._enc_mat = None
        self._synd_mat = None
        self._synd_mat_abs = None
        self._cand_gaps = None

    @property
    def d_min(self) -> int:
        """Minimum distance N - K + 1 (GRS codes are MDS)."""
        return self.n - self.k + 1

    def __repr__(self):
        return f"GrsCode(n={self.n}, k={self.k}, field={self.field!r})"

    # Cached matrices -------------------------------------------------------

    def encoding_matrix(self) -> np.ndarray:
        """N x K matrix G with G[i, j] = v_i * alpha_i**j, so c = G @ m."""
        if self._enc_mat is None:
            powers = self.field.power_matrix(self.alphas, self.k)
            mat = self.field.mul(powers, self.v[:, None])
            mat.setflags(write=False)
            self._enc_mat = mat
        return self._enc_mat

    def syndrome_matrix(self) -> np.ndarray:
        """N x (N-K) matrix H with H[j, i] = u_j * alpha_j**i, so s = r @ H."""
        if self._synd_mat is None:
            powers = self.field.power_matrix(self.alphas, self.n - self.k)
            mat = self.field.mul(powers, self.u[:, None])
            mat.setflags(write=False)
            self._synd_mat = mat
        return self._synd_mat

    def syndrome_matrix_abs(self) -> np.ndarray:
        """Entrywise |syndrome matrix|; magnitude reference for zero tests."""
        if self._synd_mat_abs is None:
            mat = np.abs(self.syndrome_matrix())
            mat.setflags(write=False)
            self._synd_mat_abs = mat
        return self._synd_mat_abs

    def candidate_gaps(self) -> np.ndarray:
        """Per-candidate nearest-neighbour distance among the 1/alpha_j."""
        if self._cand_gaps is None:
            cands = 1.0 / np.asarray(self.alphas, dtype=np.float64)
            diffs = np.abs(cands[:, None] - cands[None, :])
            np.fill_diagonal(diffs, np.inf)
            gaps = diffs.min(axis=1)
            gaps.setflags(write=False)
            self._cand_gaps = gaps
        return self._cand_gaps


def _product_of_differences(field: Field, alphas: np.ndarray) -> np.ndarray:
    """prod_{j != i} (alpha_i - alpha_j) for every i."""
    n = alphas.shape[0]
    if isinstance(field, PrimeField):
        out = field.ones(n)
        for j in range(n):
            diff = (alphas - alphas[j]) % field.p
            diff[j] = 1
            out = (out * diff) % field.p
        return out
    diffs = alphas[:, None] - alphas[None, :]
    np.fill_diagonal(diffs, 1.0)
    return np.prod(diffs, axis=1)


def make_grs(field: Field, n: int, k: int, alphas, v=None) -> GrsCode:
    """Build a GRS(n, k) code; dual multipliers are derived from alphas and v.

    alphas must be distinct; v defaults to all ones and must be nonzero
    entrywise.  Raises InvalidParameters on any violation.
    """
    if not isinstance(n, (int, np.integer)) or not isinstance(k, (int, np.integer)):
        raise InvalidParameters("n and k must be integers")
    n, k = int(n), int(k)
    if not 1 <= k < n:
        raise InvalidParameters(f"need 1 <= k < n, got n={n}, k={k}")
    alphas = field.array(alphas)
    if alphas.ndim != 1 or alphas.shape[0] != n:
        raise InvalidParameters(f"alphas must be a length-{n} vector")
    if len(set(alphas.tolist())) != n:
        raise InvalidParameters("evaluation points must be pairwise distinct")
    if v is None:
        v = field.ones(n)
    else:
        v = field.array(v)
        if v.ndim != 1 or v.shape[0] != n:
            raise InvalidParameters(f"v must be a length-{n} vector")
    if np.any(v == 0):
        raise InvalidParameters("column multipliers v must be nonzero")
    prods = _product_of_differences(field, alphas)
    if isinstance(field, RealField) and np.any(prods == 0.0):
        raise InvalidParameters("evaluation points must be pairwise distinct")
    u = field.inv(field.mul(v, prods))
    return GrsCode(field, n, k, alphas, v, u)


def classical_code(field: PrimeField, n: int, k: int) -> GrsCode:
    """GRS code on the points g**j (g a primitive root), v = 1, over GF(p)."""
    if not isinstance(field, PrimeField):
        raise InvalidParameters("classical_code is defined over prime fields only")
    if n > field.p - 1:
        raise InvalidParameters(f"need n <= p - 1 = {field.p - 1} distinct powers, got n={n}")
    g = field.primitive_root()
    alphas = field.power_matrix(field.array([g]), n)[0]
    return make_grs(field, n, k, alphas)


def encode(code: GrsCode, msg) -> np.ndarray:
    """Codeword c with c_i = v_i * m(alpha_i), m the polynomial with coeffs msg."""
    msg = code.field.array(msg)
    if msg.ndim != 1 or msg.shape[0] != code.k:
        raise InvalidParameters(f"message must be a length-{code.k} coefficient vector")
    return code.field.matmul(code.encoding_matrix(), msg)


def syndromes(code: GrsCode, received) -> np.ndarray:
    """The N - K syndromes S_i = sum_j u_j r_j alpha_j**i, i in [0, N-K)."""
    r = code.field.array(received)
    if r.ndim != 1 or r.shape[0] != code.n:
        raise InvalidParameters(f"received word must have length {code.n}")
    return code.field.matmul(r, code.syndrome_matrix())


def _interpolate_rows(code: GrsCode, rows: np.ndarray) -> np.ndarray:
    """Message coefficients for each row of a stack of codewords.

    Over GF(p) the first K positions determine the message exactly and the
    remaining positions are verified by re-encoding; over the reals a full
    least-squares fit is used and judged by its relative residual.  Raises
    NotACodeword when any row fails.
    """
    field = code.field
    gmat = code.encoding_matrix()
    if isinstance(field, PrimeField):
        head = field.solve_consistent(gmat[: code.k], rows[:, : code.k].T)
        if head is None:
            raise RuntimeError("leading square system must be invertible")
        reenc = field.matmul(gmat, head)
        if np.any(reenc.T != rows):
            raise NotACodeword("symbols are not consistent with any codeword")
        return head.T
    msgs, _, _, _ = np.linalg.lstsq(gmat, rows.T, rcond=field.tol.rank_tol * max(gmat.shape))
    resid = gmat @ msgs - rows.T
    bad = np.linalg.norm(resid, axis=0) > field.tol.residual_tol * np.linalg.norm(rows.T, axis=0)
    if np.any(bad):
        raise NotACodeword("least-squares residual exceeds the codeword tolerance")
    return msgs.T


def interpolate(code: GrsCode, symbols) -> np.ndarray:
    """Message coefficients of a (possibly noisy) codeword; see _interpolate_rows."""
    symbols = code.field.array(symbols)
    if symbols.ndim != 1 or symbols.shape[0] != code.n:
        raise InvalidParameters(f"symbols must have length {code.n}")
    return _interpolate_rows(code, symbols[None, :])[0]
