"""Exact rational linear algebra.

Scalars are ``gmpy2.mpq``; matrices are sympy ``DomainMatrix`` objects over
``QQ`` in sparse (SDM) format.  Small structure tensors elsewhere in the
package are numpy object arrays holding ``mpq`` entries; the helpers here
convert between the two.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.sdm import SDM

__all__ = [
    "ContainmentError",
    "Matrix",
    "ZERO",
    "ONE",
    "q",
    "qarray",
    "qzeros",
    "qeye",
    "matrix",
    "from_array",
    "to_array",
    "from_rows_dict",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "span_dim",
    "quotient_dim",
    "inverse",
    "is_zero",
]

Matrix = DomainMatrix

ZERO = mpq(0)
ONE = mpq(1)


class ContainmentError(ValueError):
    """A vector that should lie in a span does not."""


def q(x) -> mpq:
    """Coerce an int, ``"p/q"`` string, Fraction or mpq to ``mpq``."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, mpq, Fraction)):
        return mpq(x)
    if isinstance(x, str):
        try:
            return mpq(x.strip())
        except ValueError:
            raise ValueError(f"not a rational literal: {x!r}") from None
    if type(x).__name__ == "mpz":
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def qarray(data) -> np.ndarray:
    """Object array of ``mpq`` from nested sequences (or an existing array)."""
    arr = np.array(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for k, v in enumerate(flat_in):
        flat_out[k] = q(v)
    return out


def qzeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def qeye(n: int) -> np.ndarray:
    out = qzeros((n, n))
    for i in range(n):
        out[i, i] = ONE
    return out


def is_zero(arr) -> bool:
    return all(v == 0 for v in np.asarray(arr, dtype=object).reshape(-1))


def matrix(rows: Sequence[Sequence]) -> DomainMatrix:
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    data = {}
    for i, r in enumerate(rows):
        if len(r) != ncols:
            raise ValueError("ragged matrix rows")
        entries = {j: QQ(q(v)) for j, v in enumerate(r) if v != 0}
        if entries:
            data[i] = entries
    return DomainMatrix.from_rep(SDM(data, (nrows, ncols), QQ))


def from_rows_dict(data: dict, shape: tuple[int, int]) -> DomainMatrix:
    """Build a sparse matrix from ``{row: {col: value}}`` (zeros dropped)."""
    clean = {}
    for i, row in data.items():
        r = {j: QQ(v) for j, v in row.items() if v != 0}
        if r:
            clean[i] = r
    return DomainMatrix.from_rep(SDM(clean, shape, QQ))


def from_array(arr) -> DomainMatrix:
    arr = np.asarray(arr, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d array")
    return matrix(arr.tolist()) if arr.shape[0] else DomainMatrix.from_rep(
        SDM({}, arr.shape, QQ))


def to_array(m: DomainMatrix) -> np.ndarray:
    nrows, ncols = m.shape
    out = qzeros((nrows, ncols))
    for i, row in m.to_sparse().rep.items():
        for j, v in row.items():
            out[i, j] = mpq(v)
    return out


def rref(m: DomainMatrix) -> tuple[DomainMatrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns."""
    if m.shape[0] == 0 or m.shape[1] == 0:
        return m, 0, []
    reduced, pivots = m.to_sparse().rref()
    return reduced, len(pivots), list(pivots)


def rank(m: DomainMatrix) -> int:
    return rref(m)[1]


def kernel_basis(m: DomainMatrix) -> list[list[mpq]]:
    """Basis of ``{v : m v = 0}``, one free variable per vector."""
    nrows, ncols = m.shape
    if ncols == 0:
        return []
    if nrows == 0:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    reduced, _, pivots = rref(m)
    rows = reduced.to_sparse().rep
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for r, p in enumerate(pivots):
            val = rows.get(r, {}).get(free)
            if val:
                v[p] = -mpq(val)
        basis.append(v)
    return basis


def solve(a: DomainMatrix, b: Sequence) -> list[mpq] | None:
    """One solution of ``a x = b`` (free variables set to zero), or None."""
    nrows, ncols = a.shape
    if len(b) != nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {nrows}")
    data = {i: dict(r) for i, r in a.to_sparse().rep.items()}
    for i, v in enumerate(b):
        if v != 0:
            data.setdefault(i, {})[ncols] = QQ(q(v))
    aug = DomainMatrix.from_rep(SDM(data, (nrows, ncols + 1), QQ))
    reduced, _, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    rows = reduced.to_sparse().rep
    for r, p in enumerate(pivots):
        x[p] = mpq(rows.get(r, {}).get(ncols, 0))
    return x


def span_dim(vectors: Iterable[Sequence]) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return rank(matrix(vectors))


def quotient_dim(z_basis: Sequence[Sequence], b_basis: Sequence[Sequence]) -> int:
    """``dim span(z) - dim span(b)``; every b vector must lie in span(z)."""
    z = [list(v) for v in z_basis]
    bvecs = [list(v) for v in b_basis]
    dz = span_dim(z)
    if bvecs and span_dim(z + bvecs) != dz:
        raise ContainmentError("boundary vectors leave the cycle span")
    return dz - span_dim(bvecs)


def inverse(arr) -> np.ndarray:
    """Inverse of a square object array; raises ZeroDivisionError if singular."""
    arr = np.asarray(arr, dtype=object)
    n, k = arr.shape
    if n != k:
        raise ValueError("matrix is not square")
    if n == 0:
        return qzeros((0, 0))
    m = from_array(arr).to_dense()
    if m.rank() < n:
        raise ZeroDivisionError("matrix is singular")
    return to_array(m.inv())
