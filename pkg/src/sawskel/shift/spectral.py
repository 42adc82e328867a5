"""Perron roots with certified enclosures, and exact characteristic polynomials."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from ..errors import ResourceCapError, SpecError

CHARPOLY_CAP = 64


@dataclass(frozen=True)
class SpectralResult:
    """Perron root estimate with a Collatz-Wielandt enclosure ``lo <= rho <= hi``."""

    value: float
    lo: float
    hi: float
    iterations: int
    converged: bool

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def log(self) -> Tuple[float, float, float]:
        f = lambda x: math.log(x) if x > 0 else float("-inf")
        return f(self.value), f(self.lo), f(self.hi)


def _as_sparse(m) -> sparse.csr_matrix:
    if sparse.issparse(m):
        out = sparse.csr_matrix(m, dtype=np.float64)
    else:
        arr = np.asarray(m, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise SpecError("transfer matrix must be square")
        out = sparse.csr_matrix(arr)
    if out.nnz and out.data.min() < 0:
        raise SpecError("transfer matrix must be nonnegative")
    return out


def _outward(lo: float, hi: float) -> Tuple[float, float]:
    # a few ulps of slack for rounding in the matrix-vector products
    for _ in range(4):
        lo, hi = np.nextafter(lo, -np.inf), np.nextafter(hi, np.inf)
    return max(float(lo), 0.0), float(hi)


def _perron_irreducible(a: sparse.csr_matrix, tol: float, max_iter: int) -> SpectralResult:
    n = a.shape[0]
    # A + I is primitive, so power iteration converges even for periodic A
    b = (a + sparse.identity(n, format="csr")).tocsr()
    x = np.ones(n)
    lo, hi = 0.0, math.inf
    it = 0
    for it in range(1, max_iter + 1):
        y = b @ x
        ratios = y / x
        lo = max(lo, float(ratios.min()) - 1.0)
        hi = min(hi, float(ratios.max()) - 1.0)
        if hi - lo <= tol / 2:
            break
        x = y / y.sum()
        if x.min() <= 0:
            x = np.maximum(x, np.finfo(float).tiny)
    lo, hi = _outward(lo, hi)
    return SpectralResult((lo + hi) / 2, lo, hi, it, hi - lo <= tol)


def spectral_radius(m, tol: float = 1e-12, max_iter: int = 1_000_000) -> SpectralResult:
    """Dominant eigenvalue of a nonnegative matrix.

    The matrix is split into strongly connected components; each nontrivial
    component gets power iteration from the all-ones vector, and the
    componentwise Collatz-Wielandt bounds are kept as the enclosure.
    """
    if not tol > 0:
        raise SpecError("tol must be positive")
    a = _as_sparse(m)
    n = a.shape[0]
    if n == 0:
        return SpectralResult(0.0, 0.0, 0.0, 0, True)
    n_comp, labels = connected_components(a, directed=True, connection="strong")
    results = []
    for c in range(n_comp):
        idx = np.nonzero(labels == c)[0]
        sub = a[idx][:, idx]
        if sub.nnz:  # skip single vertices without a loop
            results.append(_perron_irreducible(sub.tocsr(), tol, max_iter))
    if not results:
        return SpectralResult(0.0, 0.0, 0.0, 0, True)
    # rho = max over components, so the enclosure is [max lo, max hi]
    lo = max(r.lo for r in results)
    hi = max(r.hi for r in results)
    return SpectralResult(max(r.value for r in results), lo, hi, max(r.iterations for r in results), hi - lo <= tol)


# -- exact characteristic polynomial ------------------------------------------------

def char_poly(m: Sequence[Sequence[int]], cap: int = CHARPOLY_CAP) -> List[int]:
    """Coefficients of ``det(x I - M)``, leading first, by division-free Berkowitz."""
    a = [[int(v) for v in row] for row in (m.toarray() if sparse.issparse(m) else m)]
    n = len(a)
    if any(len(row) != n for row in a):
        raise SpecError("matrix must be square")
    if n > cap:
        raise ResourceCapError(f"exact characteristic polynomial limited to dimension {cap}")
    poly = [1]
    for k in range(n):
        r = a[k][:k]
        v = [a[i][k] for i in range(k)]
        col = [1, -a[k][k]]
        for _ in range(k):
            col.append(-sum(r[i] * v[i] for i in range(k)))
            v = [sum(a[i][j] * v[j] for j in range(k)) for i in range(k)]
        poly = [sum(col[i - j] * poly[j] for j in range(len(poly)) if 0 <= i - j < len(col)) for i in range(k + 2)]
    return poly


def poly_eval(poly: Sequence[int], x):
    acc = 0
    for c in poly:
        acc = acc * x + c
    return acc


def largest_real_root(poly: Sequence[int], tol: float = 1e-13) -> Tuple[float, float]:
    """Enclosure ``(lo, hi)`` of the largest real root of an integer polynomial.

    A floating estimate from the companion matrix is refined by exact
    rational bisection on a sign change.
    """
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()  # factor x out; the largest root of interest is positive
    if len(poly) <= 1:
        return 0.0, 0.0
    roots = np.roots(np.asarray(poly, dtype=float))
    real = [r.real for r in roots if abs(r.imag) <= 1e-7 * max(1.0, abs(r))]
    if not real:
        raise SpecError("polynomial has no real root")
    guess = max(real)
    # any real root lies within the Cauchy bound
    lead = abs(poly[0])
    bound = 1 + max(Fraction(abs(c), lead) for c in poly[1:])
    lo = Fraction(guess) - Fraction(1, 10**6)
    hi = bound
    sign_hi = poly_eval(poly, hi) > 0
    # step lo down until the sign differs from the far-right sign
    step = Fraction(1, 10**6)
    while (poly_eval(poly, lo) > 0) == sign_hi and poly_eval(poly, lo) != 0:
        lo -= step
        step *= 2
    hi = Fraction(guess) + Fraction(1, 10**6)
    while (poly_eval(poly, hi) > 0) != sign_hi and hi < bound:
        hi = min(bound, hi + (hi - lo))
    while hi - lo > Fraction(tol):
        mid = (lo + hi) / 2
        val = poly_eval(poly, mid)
        if val == 0:
            return float(mid), float(mid)
        if (val > 0) == sign_hi:
            hi = mid
        else:
            lo = mid
    return float(lo), float(hi)
