"""Lie-Yamaguti algebras stored as structure constants.

``binary[i, j, k]`` is the coefficient of e_k in [e_i, e_j] and
``ternary[i, j, k, l]`` the coefficient of e_l in <<e_i, e_j, e_k>>.
Indices are 0-based internally; constructors and reports use 1-based
labels e_1, ..., e_m.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .linalg import (inverse, is_zero, kernel_basis, matrix, q, qarray,
                     qzeros, span_dim)
from .reports import Violation, collect

__all__ = [
    "StructureError",
    "NotALieAlgebraError",
    "LYAlgebra",
    "Subspace",
    "ly_algebra",
    "bracket2",
    "bracket3",
    "check_axioms",
    "center",
    "center_constraints",
    "center_membership_literal",
    "homomorphism_violations",
    "is_homomorphism",
    "from_lie_algebra",
    "transform",
    "direct_sum",
    "k4_example",
    "abelian",
    "heisenberg",
    "nonabelian2",
    "sl2",
    "filiform4",
]


class StructureError(ValueError):
    """Structure constants violate a construction invariant."""


class NotALieAlgebraError(ValueError):
    pass


def ein(spec: str, *ops):
    return np.einsum(spec, *ops, optimize=len(ops) > 2)


def _first_nonzero(t: np.ndarray):
    for idx in np.ndindex(*t.shape):
        if t[idx] != 0:
            return idx
    return None


@dataclass(frozen=True, eq=False)
class LYAlgebra:
    binary: np.ndarray
    ternary: np.ndarray
    name: str = ""

    def __post_init__(self):
        c = qarray(self.binary)
        d = qarray(self.ternary)
        m = c.shape[0] if c.ndim == 3 else -1
        if c.shape != (m, m, m) or d.shape != (m, m, m, m):
            raise StructureError(
                f"binary shape {c.shape} / ternary shape {d.shape} are not (m,m,m) / (m,m,m,m)")
        bad = _first_nonzero(c + np.swapaxes(c, 0, 1))
        if bad:
            i, j, k = bad
            raise StructureError(
                f"binary bracket not antisymmetric: c[{i+1}][{j+1}][{k+1}] != -c[{j+1}][{i+1}][{k+1}]")
        bad = _first_nonzero(d + np.swapaxes(d, 0, 1))
        if bad:
            i, j, k, l = bad
            raise StructureError(
                "ternary bracket not antisymmetric in its first two slots: "
                f"d[{i+1}][{j+1}][{k+1}][{l+1}] != -d[{j+1}][{i+1}][{k+1}][{l+1}]")
        c.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "binary", c)
        object.__setattr__(self, "ternary", d)

    @property
    def dim(self) -> int:
        return self.binary.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LYAlgebra):
            return NotImplemented
        return (self.dim == other.dim
                and bool(np.all(self.binary == other.binary))
                and bool(np.all(self.ternary == other.ternary)))

    __hash__ = object.__hash__

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<LYAlgebra{label} dim={self.dim}>"


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple = field(default=())

    def __post_init__(self):
        basis = tuple(tuple(q(x) for x in v) for v in self.basis)
        for v in basis:
            if len(v) != self.ambient_dim:
                raise ValueError("basis vector has wrong length")
        if span_dim(basis) != len(basis):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        v = [q(x) for x in v]
        if all(x == 0 for x in v):
            return True
        return span_dim(list(self.basis) + [v]) == self.dim

    def same_span(self, other: "Subspace") -> bool:
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and all(self.contains(v) for v in other.basis))


def ly_algebra(dim: int, binary: Mapping | None = None, ternary: Mapping | None = None,
               name: str = "") -> LYAlgebra:
    """Build an algebra from 1-based sparse brackets.

    ``binary`` maps ``(i, j)`` to ``{k: coeff}`` and ``ternary`` maps
    ``(i, j, k)`` to ``{l: coeff}``.  Each bracket may be given in either
    argument order; the mirror entry is filled in.  Giving both orders is
    allowed only when they agree.
    """
    c = qzeros((dim, dim, dim))
    d = qzeros((dim, dim, dim, dim))
    seen2: dict = {}
    for (i, j), out in (binary or {}).items():
        i0, j0 = i - 1, j - 1
        for k, val in out.items():
            val = q(val)
            _place(c, (i0, j0), k - 1, val, seen2, f"[e{i},e{j}]")
    seen3: dict = {}
    for (i, j, k), out in (ternary or {}).items():
        i0, j0, k0 = i - 1, j - 1, k - 1
        for l, val in out.items():
            val = q(val)
            _place(d, (i0, j0, k0), l - 1, val, seen3, f"<<e{i},e{j},e{k}>>")
    return LYAlgebra(c, d, name)


def _place(t, key, out, val, seen, label):
    dim = t.shape[0]
    if not all(0 <= x < dim for x in key + (out,)):
        raise StructureError(f"index out of range in {label}")
    a, b = key[0], key[1]
    rest = key[2:]
    if a == b:
        if val != 0:
            raise StructureError(f"{label} must vanish (repeated antisymmetric argument)")
        return
    mirror = (b, a) + rest
    for k, sign in ((key, 1), (mirror, -1)):
        prev = seen.get(k + (out,))
        if prev is not None and prev != sign * val:
            raise StructureError(f"inconsistent declarations for {label}")
    seen[key + (out,)] = val
    t[key + (out,)] = val
    t[mirror + (out,)] = -val


def _vec(alg: LYAlgebra, x) -> np.ndarray:
    v = qarray(x)
    if v.shape != (alg.dim,):
        raise ValueError(f"vector of length {v.shape} does not match algebra dimension {alg.dim}")
    return v


def bracket2(alg: LYAlgebra, x, y) -> np.ndarray:
    x, y = _vec(alg, x), _vec(alg, y)
    return ein("i,j,ijk->k", x, y, alg.binary)


def bracket3(alg: LYAlgebra, x, y, z) -> np.ndarray:
    x, y, z = _vec(alg, x), _vec(alg, y), _vec(alg, z)
    return ein("i,j,k,ijkl->l", x, y, z, alg.ternary)


def _cyclic3(t):
    """t[x,y,z] + t[y,z,x] + t[z,x,y] over the first three axes."""
    return t + ein("yzx...->xyz...", t) + ein("zxy...->xyz...", t)


def check_axioms(alg: LYAlgebra) -> list[Violation]:
    """Evaluate the four defining identities on every basis tuple."""
    c, d = alg.binary, alg.ternary
    if alg.dim == 0:
        return []
    bb = ein("xyw,wzs->xyzs", c, c)
    ly1 = _cyclic3(bb + d)
    bt = ein("xyv,vzws->xyzws", c, d)
    ly2 = bt + ein("yzxws->xyzws", bt) + ein("zxyws->xyzws", bt)
    ly3 = (ein("zwv,xyvs->xyzws", c, d)
           - ein("xyzv,vws->xyzws", d, c)
           - ein("xywv,zvs->xyzws", d, c))
    ly4 = (ein("zwtv,xyvs->xyzwts", d, d)
           - ein("xyzv,vwts->xyzwts", d, d)
           - ein("xywv,zvts->xyzwts", d, d)
           - ein("xytv,zwvs->xyzwts", d, d))
    return (collect("LY1", ly1, 3) + collect("LY2", ly2, 4)
            + collect("LY3", ly3, 4) + collect("LY4", ly4, 5))


def center_constraints(alg: LYAlgebra) -> np.ndarray:
    """Rows of linear conditions whose common kernel is the strict center."""
    m = alg.dim
    c, d = alg.binary, alg.ternary
    rows = [
        ein("iys->ysi", c).reshape(-1, m),
        ein("iyzs->yzsi", d).reshape(-1, m),
        ein("yizs->yzsi", d).reshape(-1, m),
    ]
    return np.concatenate(rows, axis=0) if m else qzeros((0, 0))


def center(alg: LYAlgebra) -> Subspace:
    m = alg.dim
    if m == 0:
        return Subspace(0, ())
    basis = kernel_basis(matrix(center_constraints(alg).tolist()))
    return Subspace(m, tuple(tuple(v) for v in basis))


def center_membership_literal(alg: LYAlgebra, x) -> bool:
    """Membership in the center read literally: the binary condition, and
    either of the two ternary kernel conditions (a union, not a subspace)."""
    x = _vec(alg, x)
    if not is_zero(ein("i,iys->ys", x, alg.binary)):
        return False
    first = is_zero(ein("i,iyzs->yzs", x, alg.ternary))
    second = is_zero(ein("i,yizs->yzs", x, alg.ternary))
    return first or second


def homomorphism_violations(phi, a: LYAlgebra, b: LYAlgebra) -> list[Violation]:
    phi = qarray(phi)
    if phi.shape != (b.dim, a.dim):
        raise ValueError(f"map of shape {phi.shape} does not send dim {a.dim} to dim {b.dim}")
    if a.dim == 0:
        return []
    lhs2 = ein("st,ijt->ijs", phi, a.binary)
    rhs2 = ein("pi,qj,pqs->ijs", phi, phi, b.binary)
    lhs3 = ein("st,ijkt->ijks", phi, a.ternary)
    rhs3 = ein("pi,qj,rk,pqrs->ijks", phi, phi, phi, b.ternary)
    return collect("hom-binary", lhs2 - rhs2, 2) + collect("hom-ternary", lhs3 - rhs3, 3)


def is_homomorphism(phi, a: LYAlgebra, b: LYAlgebra) -> bool:
    return not homomorphism_violations(phi, a, b)


def from_lie_algebra(lie_constants, name: str = "") -> LYAlgebra:
    """LY structure of a Lie algebra with <<x,y,z>> = [[x,y],z]."""
    c = qarray(lie_constants)
    m = c.shape[0] if c.ndim == 3 else -1
    if c.shape != (m, m, m):
        raise NotALieAlgebraError("structure constants must have shape (m, m, m)")
    if m and not is_zero(c + np.swapaxes(c, 0, 1)):
        raise NotALieAlgebraError("bracket is not antisymmetric")
    if m:
        jac = _cyclic3(ein("xyw,wzs->xyzs", c, c))
        bad = collect("Jacobi", jac, 3)
        if bad:
            raise NotALieAlgebraError(f"Jacobi identity fails: {bad[0]}")
    d = ein("xyw,wzs->xyzs", c, c) if m else qzeros((0, 0, 0, 0))
    return LYAlgebra(c, d, name)


def transform(alg: LYAlgebra, p, name: str = "") -> LYAlgebra:
    """The same algebra written in the basis given by the columns of ``p``."""
    p = qarray(p)
    pinv = inverse(p)
    c = ein("ai,bj,abc,kc->ijk", p, p, alg.binary, pinv)
    d = ein("ai,bj,ck,abcs,ls->ijkl", p, p, p, alg.ternary, pinv)
    return LYAlgebra(c, d, name or alg.name)


def direct_sum(a: LYAlgebra, b: LYAlgebra, name: str = "") -> LYAlgebra:
    m, n = a.dim, b.dim
    c = qzeros((m + n,) * 3)
    d = qzeros((m + n,) * 4)
    c[:m, :m, :m] = a.binary
    c[m:, m:, m:] = b.binary
    d[:m, :m, :m, :m] = a.ternary
    d[m:, m:, m:, m:] = b.ternary
    return LYAlgebra(c, d, name)


def k4_example() -> LYAlgebra:
    """4-dimensional algebra with [e1,e2] = 2 e4 and <<e1,e2,e1>> = e4."""
    return ly_algebra(4, {(1, 2): {4: 2}}, {(1, 2, 1): {4: 1}}, name="K4")


def abelian(m: int) -> LYAlgebra:
    return LYAlgebra(qzeros((m,) * 3), qzeros((m,) * 4), name=f"abelian{m}")


def _lie(dim, brackets):
    c = qzeros((dim,) * 3)
    for (i, j), out in brackets.items():
        for k, v in out.items():
            c[i - 1, j - 1, k - 1] = q(v)
            c[j - 1, i - 1, k - 1] = -q(v)
    return c


def heisenberg() -> LYAlgebra:
    return from_lie_algebra(_lie(3, {(1, 2): {3: 1}}), name="heisenberg3")


def nonabelian2() -> LYAlgebra:
    return from_lie_algebra(_lie(2, {(1, 2): {2: 1}}), name="r2")


def sl2() -> LYAlgebra:
    # basis (h, e, f)
    return from_lie_algebra(_lie(3, {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}}), name="sl2")


def filiform4() -> LYAlgebra:
    return from_lie_algebra(_lie(4, {(1, 2): {3: 1}, (1, 3): {4: 1}}), name="filiform4")
