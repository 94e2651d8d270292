"""Field abstractions: prime fields GF(p) and a tolerance-aware real field.

Everything else in the package is generic over the two field classes defined
here.  Scalar elements are plain Python ints (GF) or floats (reals); bulk data
lives in numpy arrays.  The field object owns the arithmetic, the zero and
equality policies, and the linear algebra the decoders rely on: rank
decisions and consistent solves are exact Gaussian elimination over GF(p) and
SVD-based least squares over the reals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameters

__all__ = [
    "ToleranceProfile",
    "PrimeField",
    "RealField",
    "Field",
    "is_prime",
]

# Deterministic Miller-Rabin witnesses for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Largest modulus for which products of two reduced elements fit in int64.
_INT64_SAFE_P = 3_037_000_499


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for base in _MR_BASES:
        if n == base:
            return True
        if n % base == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class ToleranceProfile:
    """Numerical policy knobs for real-field computations.

    eq_tol        scale-relative equality / zero test
    rank_tol      singular-value cutoff factor for rank decisions
    root_tol      acceptance window for locator-root identification
    residual_tol  relative residual bound for consistent-solve checks
    """

    eq_tol: float = 1e-9
    rank_tol: float = 1e-10
    root_tol: float = 1e-6
    residual_tol: float = 1e-8

    def __post_init__(self):
        for name in ("eq_tol", "rank_tol", "root_tol", "residual_tol"):
            val = getattr(self, name)
            if not (isinstance(val, (int, float)) and 0 < val < float("inf")):
                raise InvalidParameters(f"{name} must be a positive finite number, got {val!r}")


class PrimeField:
    """The prime field GF(p).  Elements are canonical ints in [0, p)."""

    __slots__ = ("p", "_primitive_root")

    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
            raise InvalidParameters(f"field modulus must be an integer, got {p!r}")
        p = int(p)
        if not is_prime(p):
            raise InvalidParameters(f"field modulus must be prime, got {p}")
        self.p = p
        self._primitive_root = None

    # -- identity ---------------------------------------------------------

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    # -- element handling --------------------------------------------------

    @property
    def dtype(self):
        return np.int64 if self.p <= _INT64_SAFE_P else object

    def _coerce(self, x):
        """Reduce x (scalar or array) mod p, rejecting non-integer operands."""
        if isinstance(x, bool):
            raise TypeError("GF(p) operations take integer operands, got bool")
        if isinstance(x, (int, np.integer)):
            return int(x) % self.p
        arr = np.asarray(x)
        if arr.dtype.kind not in "iu" and arr.dtype != object:
            raise TypeError(
                f"GF({self.p}) operations take integer operands, got dtype {arr.dtype}"
            )
        if arr.dtype.kind in "iu" and self.p > _INT64_SAFE_P:
            arr = arr.astype(object)
        return arr % self.p

    def element(self, x) -> int:
        """Canonical representative of x in [0, p)."""
        val = self._coerce(x)
        if isinstance(val, np.ndarray):
            raise TypeError("element() takes a scalar; use array() for bulk data")
        return val

    def array(self, xs) -> np.ndarray:
        """Array of canonical representatives (int64, or object for huge p)."""
        arr = np.asarray(self._coerce(xs))
        if arr.dtype != self.dtype:
            arr = arr.astype(self.dtype)
        return arr

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64) if self.dtype is np.int64 else np.full(shape, 0, dtype=object)

    def ones(self, shape):
        return np.ones(shape, dtype=np.int64) if self.dtype is np.int64 else np.full(shape, 1, dtype=object)

    def rand_elements(self, rng, shape):
        """Uniform field elements drawn from rng (p must fit in int64)."""
        if self.p > 2**63 - 1:
            raise InvalidParameters("uniform sampling supports moduli below 2**63 only")
        return self.array(rng.integers(0, self.p, size=shape, dtype=np.int64))

    # -- arithmetic ---------------------------------------------------------

    def _ret(self, out):
        return int(out) if np.ndim(out) == 0 else out

    def add(self, a, b):
        return self._ret((self._coerce(a) + self._coerce(b)) % self.p)

    def sub(self, a, b):
        return self._ret((self._coerce(a) - self._coerce(b)) % self.p)

    def mul(self, a, b):
        return self._ret((self._coerce(a) * self._coerce(b)) % self.p)

    def neg(self, a):
        return self._ret((-self._coerce(a)) % self.p)

    def inv(self, a):
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        val = self._coerce(a)
        if isinstance(val, np.ndarray):
            if np.any(val == 0):
                raise ZeroDivisionError(f"zero has no inverse in GF({self.p})")
            flat = [pow(int(v), self.p - 2, self.p) for v in val.ravel()]
            return np.array(flat, dtype=val.dtype).reshape(val.shape)
        if val == 0:
            raise ZeroDivisionError(f"zero has no inverse in GF({self.p})")
        return pow(val, self.p - 2, self.p)

    def is_zero(self, a, scale=1.0):
        """Exact zero test; scale is ignored over a finite field."""
        val = self._coerce(a)
        out = val == 0
        return bool(out) if np.ndim(out) == 0 else out

    def eq(self, a, b, scale=1.0):
        return self.is_zero(self.sub(a, b), scale)

    # -- bulk helpers --------------------------------------------------------

    def power_matrix(self, xs, ncols: int) -> np.ndarray:
        """Matrix P with P[j, i] = xs[j] ** i for i in [0, ncols)."""
        xs = self.array(xs)
        out = np.empty((xs.shape[0], ncols), dtype=xs.dtype)
        if ncols == 0:
            return out
        col = self.ones(xs.shape[0])
        out[:, 0] = col
        for i in range(1, ncols):
            col = (col * xs) % self.p
            out[:, i] = col
        return out

    def matmul(self, a, b):
        """Matrix product mod p, chunked so partial sums never overflow."""
        a = self.array(a)
        b = self.array(b)
        inner = a.shape[-1]
        if a.dtype == object or inner * (self.p - 1) ** 2 < 2**63:
            return (a @ b) % self.p
        chunk = max(1, (2**63 - self.p) // ((self.p - 1) ** 2))
        out = None
        for k0 in range(0, inner, chunk):
            part = (a[..., k0:k0 + chunk] @ b[k0:k0 + chunk, ...]) % self.p
            out = part if out is None else (out + part) % self.p
        return out

    # -- linear algebra -------------------------------------------------------

    def _row_reduce(self, m, ncols=None):
        """Reduced row echelon form mod p.  Returns (matrix, pivot_columns).

        Pivots are searched only in the first ncols columns, so callers can
        append right-hand sides as extra columns of an augmented matrix.
        """
        m = np.array(self.array(m), copy=True)
        if m.ndim != 2:
            raise InvalidParameters("row reduction expects a 2-D matrix")
        rows, total = m.shape
        if ncols is None:
            ncols = total
        piv_cols = []
        r = 0
        for c in range(ncols):
            if r == rows:
                break
            nz = np.nonzero(m[r:, c])[0]
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                m[[r, pr]] = m[[pr, r]]
            pivot_inv = pow(int(m[r, c]), self.p - 2, self.p)
            m[r] = (m[r] * pivot_inv) % self.p
            factors = m[:, c].copy()
            factors[r] = 0
            m = (m - np.outer(factors, m[r])) % self.p
            piv_cols.append(c)
            r += 1
        return m, piv_cols

    def rank(self, m) -> int:
        """Exact rank over GF(p)."""
        return len(self._row_reduce(m)[1])

    def solve_consistent(self, a, b):
        """Exact solution of a @ x = b (free variables set to zero).

        Returns None when the system is inconsistent.  b may be a vector or a
        matrix of stacked right-hand sides (then every column must be
        consistent).
        """
        a = self.array(a)
        if a.ndim != 2:
            raise InvalidParameters("solve_consistent expects a 2-D coefficient matrix")
        b = self.array(b)
        one_d = b.ndim == 1
        rhs = b[:, None] if one_d else b
        if rhs.shape[0] != a.shape[0]:
            raise InvalidParameters("right-hand side length does not match the matrix")
        red, piv = self._row_reduce(np.hstack([a, rhs]), ncols=a.shape[1])
        nrank = len(piv)
        if np.any(red[nrank:, a.shape[1]:] != 0):
            return None
        x = self.zeros((a.shape[1], rhs.shape[1]))
        if piv:
            x[np.array(piv), :] = red[:nrank, a.shape[1]:]
        return x[:, 0] if one_d else x

    # -- number theory ---------------------------------------------------------

    def primitive_root(self) -> int:
        """Smallest generator of the multiplicative group of GF(p)."""
        if self._primitive_root is not None:
            return self._primitive_root
        if self.p == 2:
            self._primitive_root = 1
            return 1
        n = self.p - 1
        factors = []
        d, left = 2, n
        while d * d <= left:
            if left % d == 0:
                factors.append(d)
                while left % d == 0:
                    left //= d
            d += 1
        if left > 1:
            factors.append(left)
        for g in range(2, self.p):
            if all(pow(g, n // f, self.p) != 1 for f in factors):
                self._primitive_root = g
                return g
        raise RuntimeError("no primitive root found; modulus is not prime")


class RealField:
    """The real numbers with explicit numerical tolerances.

    Elements are finite floats; zero and equality tests are relative to a
    caller-provided magnitude scale (clamped below at 1) so that cancellation
    noise in large intermediate quantities is judged fairly.
    """

    __slots__ = ("tol",)

    def __init__(self, tol: ToleranceProfile | None = None):
        if tol is None:
            tol = ToleranceProfile()
        if not isinstance(tol, ToleranceProfile):
            raise InvalidParameters(f"tol must be a ToleranceProfile, got {tol!r}")
        self.tol = tol

    # -- identity ---------------------------------------------------------

    def __repr__(self):
        return f"RealField(tol={self.tol})"

    def __eq__(self, other):
        return isinstance(other, RealField) and other.tol == self.tol

    def __hash__(self):
        return hash(("RealField", self.tol))

    # -- element handling --------------------------------------------------

    @property
    def dtype(self):
        return np.float64

    def _coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("real-field operations take numeric operands, got bool")
        if isinstance(x, (int, float, np.integer, np.floating)):
            val = float(x)
            if not np.isfinite(val):
                raise ValueError(f"real-field elements must be finite, got {val!r}")
            return val
        arr = np.asarray(x, dtype=np.float64)
        return arr

    def element(self, x) -> float:
        val = self._coerce(x)
        if isinstance(val, np.ndarray):
            raise TypeError("element() takes a scalar; use array() for bulk data")
        return val

    def array(self, xs) -> np.ndarray:
        arr = np.asarray(self._coerce(xs), dtype=np.float64)
        if not np.all(np.isfinite(arr)):
            raise ValueError("real-field arrays must be finite (no NaN or inf)")
        return arr

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.float64)

    def ones(self, shape):
        return np.ones(shape, dtype=np.float64)

    def rand_elements(self, rng, shape):
        """Standard normal draws; the conventional generic element sampler."""
        return rng.standard_normal(shape)

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b):
        return self._coerce(a) + self._coerce(b)

    def sub(self, a, b):
        return self._coerce(a) - self._coerce(b)

    def mul(self, a, b):
        return self._coerce(a) * self._coerce(b)

    def neg(self, a):
        return -self._coerce(a)

    def inv(self, a):
        val = self._coerce(a)
        if isinstance(val, np.ndarray):
            if np.any(val == 0.0):
                raise ZeroDivisionError("zero has no inverse")
            return 1.0 / val
        if val == 0.0:
            raise ZeroDivisionError("zero has no inverse")
        return 1.0 / val

    def is_zero(self, a, scale=1.0):
        """Scale-relative zero test: |a| <= eq_tol * max(scale, 1)."""
        val = self._coerce(a)
        out = np.abs(val) <= self.tol.eq_tol * np.maximum(scale, 1.0)
        return bool(out) if np.ndim(out) == 0 else out

    def eq(self, a, b, scale=1.0):
        return self.is_zero(self.sub(a, b), scale)

    # -- bulk helpers --------------------------------------------------------

    def power_matrix(self, xs, ncols: int) -> np.ndarray:
        xs = self.array(xs)
        return np.power.outer(xs, np.arange(ncols, dtype=np.float64))

    def matmul(self, a, b):
        return self.array(a) @ self.array(b)

    # -- linear algebra -------------------------------------------------------

    def rank(self, m) -> int:
        """Numerical rank: count of sigma_i > rank_tol * sigma_max * max(dims)."""
        m = self.array(m)
        if m.ndim != 2:
            raise InvalidParameters("rank expects a 2-D matrix")
        if m.size == 0:
            return 0
        s = np.linalg.svd(m, compute_uv=False)
        if s[0] == 0.0:
            return 0
        return int(np.sum(s > self.tol.rank_tol * s[0] * max(m.shape)))

    def solve_consistent(self, a, b):
        """Least-squares solve of a @ x = b, accepted only if consistent.

        The residual test is ||a x - b|| <= residual_tol * max(||b||,
        sigma_max ||x||) per right-hand side; returns None when any side
        fails.
        """
        a = self.array(a)
        if a.ndim != 2:
            raise InvalidParameters("solve_consistent expects a 2-D coefficient matrix")
        b = self.array(b)
        if b.shape[0] != a.shape[0]:
            raise InvalidParameters("right-hand side length does not match the matrix")
        rcond = self.tol.rank_tol * max(a.shape)
        x, _, _, sv = np.linalg.lstsq(a, b, rcond=rcond)
        smax = float(sv[0]) if sv.size else 0.0
        resid = a @ x - b
        if b.ndim == 1:
            ok = np.linalg.norm(resid) <= self.tol.residual_tol * max(
                np.linalg.norm(b), smax * np.linalg.norm(x)
            )
        else:
            bounds = self.tol.residual_tol * np.maximum(
                np.linalg.norm(b, axis=0), smax * np.linalg.norm(x, axis=0)
            )
            ok = np.all(np.linalg.norm(resid, axis=0) <= bounds)
        return x if ok else None


Field = PrimeField | RealField
