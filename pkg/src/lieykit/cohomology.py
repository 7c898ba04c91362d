"""Yamaguti cochain complex and the cohomology of crossed homomorphisms.

Cochain payloads, with P = m(m-1)/2 wedge pairs (i<j, lexicographic):

* degree 0: coordinates of an element of the exterior square, shape (P,);
* degree 1: ``G`` of shape (m, n) with ``G[z]`` = f(e_z);
* degree p >= 2: ``F`` of shape (P,)*(p-1) + (n,) and ``G`` of shape
  (P,)*(p-1) + (m, n).

The flat coordinate vector is ``F.ravel()`` followed by ``G.ravel()``.
The coboundary is written once, as tensor contractions over these payloads.
Operator matrices come from running the same code on a symbolic identity
cochain whose entries are sparse linear forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

from .algebra import LYAlgebra, ein
from .crossed import CrossedMap, CrossedMorphism, NotInvertibleError
from .linalg import (ONE, Matrix, from_rows_dict, inverse, kernel_basis, q, qarray,
                     qzeros, quotient_dim, rank, solve, to_array)
from .representation import Representation, check_representation

__all__ = [
    "MissingCrossedMapError",
    "UnsupportedDegreeError",
    "MAX_MATRIX_DEGREE",
    "wedge_pairs",
    "wedge",
    "cochain_dim",
    "Cochain",
    "ComplexContext",
    "induced_rep",
    "delta0",
    "coboundary",
    "operator_matrix",
    "is_cocycle",
    "is_coboundary",
    "cohomology_dim",
    "wedge_square",
    "pushforward",
]

MAX_MATRIX_DEGREE = 3


class MissingCrossedMapError(ValueError):
    pass


class UnsupportedDegreeError(ValueError):
    pass


def wedge_pairs(m: int) -> list[tuple[int, int]]:
    return list(combinations(range(m), 2))


def wedge(u, v) -> np.ndarray:
    """Coordinates of u ^ v in the wedge-pair basis."""
    u, v = qarray(u), qarray(v)
    return np.array([u[i] * v[j] - u[j] * v[i] for i, j in wedge_pairs(len(u))], dtype=object)


def cochain_dim(p: int, m: int, n: int) -> int:
    P = comb(m, 2)
    if p == 0:
        return P
    if p == 1:
        return m * n
    return P ** (p - 1) * n * (1 + m)


def _part_shapes(p: int, m: int, n: int):
    P = comb(m, 2)
    if p == 0:
        return None, (P,)
    if p == 1:
        return None, (m, n)
    return (P,) * (p - 1) + (n,), (P,) * (p - 1) + (m, n)


@dataclass(frozen=True, eq=False)
class Cochain:
    degree: int
    m: int
    n: int
    vector: np.ndarray

    def __post_init__(self):
        vec = qarray(self.vector).reshape(-1)
        if len(vec) != cochain_dim(self.degree, self.m, self.n):
            raise ValueError(
                f"degree-{self.degree} cochain needs {cochain_dim(self.degree, self.m, self.n)}"
                f" coordinates, got {len(vec)}")
        vec.setflags(write=False)
        object.__setattr__(self, "vector", vec)

    @classmethod
    def zero(cls, degree: int, m: int, n: int) -> "Cochain":
        return cls(degree, m, n, qzeros(cochain_dim(degree, m, n)))

    @classmethod
    def from_parts(cls, degree: int, m: int, n: int, F=None, G=None) -> "Cochain":
        fs, gs = _part_shapes(degree, m, n)
        G = qarray(G).reshape(gs)
        if fs is None:
            return cls(degree, m, n, G.reshape(-1))
        F = qarray(F).reshape(fs)
        return cls(degree, m, n, np.concatenate([F.reshape(-1), G.reshape(-1)]))

    @property
    def F(self):
        fs, _ = _part_shapes(self.degree, self.m, self.n)
        if fs is None:
            return None
        return self.vector[:int(np.prod(fs))].reshape(fs)

    @property
    def G(self) -> np.ndarray:
        fs, gs = _part_shapes(self.degree, self.m, self.n)
        start = 0 if fs is None else int(np.prod(fs))
        return self.vector[start:].reshape(gs)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.vector)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return ((self.degree, self.m, self.n) == (other.degree, other.m, other.n)
                and bool(np.all(self.vector == other.vector)))

    def __add__(self, other):
        self._same(other)
        return Cochain(self.degree, self.m, self.n, self.vector + other.vector)

    def __sub__(self, other):
        self._same(other)
        return Cochain(self.degree, self.m, self.n, self.vector - other.vector)

    def __neg__(self):
        return Cochain(self.degree, self.m, self.n, -self.vector)

    def __rmul__(self, c):
        return Cochain(self.degree, self.m, self.n, q(c) * self.vector)

    def _same(self, other):
        if (self.degree, self.m, self.n) != (other.degree, other.m, other.n):
            raise ValueError("cochains of different shape")

    __hash__ = object.__hash__


class _Form:
    """Sparse linear form {coordinate: coefficient} used for matrix assembly."""
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms

    def __mul__(self, c):
        if not c:
            return 0
        return _Form({k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, _Form):
            if len(other.terms) > len(self.terms):
                self, other = other, self
            out = dict(self.terms)
            for k, v in other.terms.items():
                w = out.get(k, 0) + v
                if w:
                    out[k] = w
                else:
                    del out[k]
            return _Form(out)
        if not other:
            return self
        raise TypeError("cannot add a constant to a linear form")

    __radd__ = __add__

    def __neg__(self):
        return _Form({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other


class _Tables:
    """Structure tensors of (g, rep) rewritten over the wedge-pair basis."""

    def __init__(self, alg: LYAlgebra, rep: Representation):
        m, n = alg.dim, rep.target_dim
        pairs = wedge_pairs(m)
        P = len(pairs)
        c, d = alg.binary, alg.ternary
        rho, mu, D = rep.rho, rep.mu, rep.D
        self.m, self.n, self.P = m, n, P
        self.DX = qzeros((P, n, n))
        self.Rw = qzeros((P, m, n, n))
        self.C2w = qzeros((P, m))
        self.Mw = qzeros((P, m, m, n, n))
        self.Tw = qzeros((P, m, m))
        self.Circ = qzeros((P, P, P))
        index = {pr: k for k, pr in enumerate(pairs)}
        for K, (a, b) in enumerate(pairs):
            self.DX[K] = D[a, b]
            self.Rw[K, b] = rho[a]
            self.Rw[K, a] = -rho[b]
            self.C2w[K] = c[a, b]
            self.Mw[K, :, a] = mu[b, :]
            self.Mw[K, :, b] = -mu[a, :]
            self.Tw[K] = d[a, b]
        # X_K o X_L = <<a,b,c>> ^ e_d + e_c ^ <<a,b,d>>
        for K, (a, b) in enumerate(pairs):
            for L, (cc, dd) in enumerate(pairs):
                u, v = d[a, b, cc], d[a, b, dd]
                for t in range(m):
                    if u[t]:
                        self._add_wedge(K, L, t, dd, u[t], index)
                    if v[t]:
                        self._add_wedge(K, L, cc, t, v[t], index)

    def _add_wedge(self, K, L, i, j, coef, index):
        if i == j:
            return
        if i < j:
            self.Circ[K, L, index[(i, j)]] += coef
        else:
            self.Circ[K, L, index[(j, i)]] -= coef


_SLOTS = "ABCDEFGHIJ"


def _apply(tab: _Tables, F, G, q_: int):
    """delta on payloads with q_ wedge slots; returns the output (F, G)."""
    s = _SLOTS[:q_ + 1]
    pre = s[:q_]
    last = s[q_]
    sign = -1 if q_ % 2 else 1

    def drop(k):
        return s[:k] + s[k + 1:]

    def circ_args(k, l):
        return "".join("L" if i == l else ch for i, ch in enumerate(s) if i != k)

    # delta_I
    f_out = (ein(f"{last}wab,{pre}wb->{s}a", tab.Rw, G)
             - ein(f"{last}w,{pre}wa->{s}a", tab.C2w, G))
    if sign < 0:
        f_out = -f_out
    for k in range(q_):
        t = ein(f"{s[k]}ab,{drop(k)}b->{s}a", tab.DX, F)
        f_out = f_out + t if k % 2 == 0 else f_out - t
    for k in range(q_ + 1):
        for l in range(k + 1, q_ + 1):
            t = ein(f"{s[k]}{s[l]}L,{circ_args(k, l)}a->{s}a", tab.Circ, F)
            f_out = f_out - t if k % 2 == 0 else f_out + t
    # delta_II
    g_out = ein(f"{last}zwab,{pre}wb->{s}za", tab.Mw, G)
    if sign < 0:
        g_out = -g_out
    for k in range(q_ + 1):
        t = ein(f"{s[k]}ab,{drop(k)}zb->{s}za", tab.DX, G)
        g_out = g_out + t if k % 2 == 0 else g_out - t
        u = ein(f"{s[k]}zw,{drop(k)}wa->{s}za", tab.Tw, G)
        g_out = g_out - u if k % 2 == 0 else g_out + u
        for l in range(k + 1, q_ + 1):
            t = ein(f"{s[k]}{s[l]}L,{circ_args(k, l)}za->{s}za", tab.Circ, G)
            g_out = g_out - t if k % 2 == 0 else g_out + t
    return f_out, g_out


def induced_rep(H: CrossedMap) -> Representation:
    """rho_H(x)u = [Hx,u] + rho(x)u and mu_H(x,y)u = <<u,Hx,Hy>> + mu(x,y)u."""
    H.require_crossed()
    ctx = H.ctx
    rep = ctx.rep
    if ctx.m == 0 or ctx.n == 0:
        return Representation(ctx.g, rep.rho, rep.mu)
    M = H.matrix
    rho = ein("ki,kba->iab", M, ctx.h.binary) + rep.rho
    mu = ein("ki,lj,bkla->ijab", M, M, ctx.h.ternary) + rep.mu
    return Representation(ctx.g, rho, mu)


@dataclass(frozen=True, eq=False)
class ComplexContext:
    """Coefficients for a cochain complex.

    With ``crossed`` set, ``rep`` must be the induced representation and the
    complex gains the degree-0 term.  Use :meth:`for_crossed` to build one.
    """
    alg: LYAlgebra
    rep: Representation
    crossed: CrossedMap | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.rep.alg != self.alg:
            raise ValueError("representation belongs to a different algebra")
        bad = check_representation(self.alg, self.rep)
        if bad:
            raise ValueError(f"coefficients are not a representation: {bad[0]}")
        if self.crossed is not None:
            if self.crossed.ctx.g != self.alg or not self.rep == induced_rep(self.crossed):
                raise ValueError("coefficients must be the induced representation of the crossed map")

    @classmethod
    def for_crossed(cls, H: CrossedMap) -> "ComplexContext":
        return cls(H.ctx.g, induced_rep(H), H)

    @property
    def m(self) -> int:
        return self.alg.dim

    @property
    def n(self) -> int:
        return self.rep.target_dim

    @cached_property
    def tables(self) -> _Tables:
        return _Tables(self.alg, self.rep)

    def require_crossed(self) -> CrossedMap:
        if self.crossed is None:
            raise MissingCrossedMapError("degree 0 needs a crossed homomorphism")
        return self.crossed


def _delta0_tensor(H: CrossedMap) -> np.ndarray:
    """Z[K, z, :] = delta(e_a ^ e_b)(e_z) for K = (a, b)."""
    ctx = H.ctx
    m, n = ctx.m, ctx.n
    pairs = wedge_pairs(m)
    out = qzeros((len(pairs), m, n))
    if not pairs or n == 0:
        return out
    M, mu = H.matrix, ctx.rep.mu
    W = (ein("bzcd,da->abzc", mu, M)
         - ein("azcd,db->abzc", mu, M)
         + ein("ka,lb,pz,klpc->abzc", M, M, M, ctx.h.ternary))
    for K, (a, b) in enumerate(pairs):
        out[K] = W[a, b]
    return out


def delta0(X, H: CrossedMap) -> Cochain:
    """The 1-cochain z -> mu(y,z)Hx - mu(x,z)Hy + <<Hx,Hy,Hz>> for X = x ^ y,
    extended linearly."""
    H.require_crossed()
    m, n = H.ctx.m, H.ctx.n
    if isinstance(X, Cochain):
        if X.degree != 0:
            raise ValueError("delta0 takes a degree-0 cochain")
        X = X.vector
    X = qarray(X).reshape(-1)
    if len(X) != comb(m, 2):
        raise ValueError(f"expected {comb(m, 2)} wedge coordinates, got {len(X)}")
    G = ein("K,Kzc->zc", X, _delta0_tensor(H)) if len(X) else qzeros((m, n))
    return Cochain.from_parts(1, m, n, G=G)


def _check_shape(ctx: ComplexContext, c: Cochain):
    if (c.m, c.n) != (ctx.m, ctx.n):
        raise ValueError(f"cochain is for dimensions ({c.m}, {c.n}), context has ({ctx.m}, {ctx.n})")


def coboundary(ctx: ComplexContext, c: Cochain) -> Cochain:
    _check_shape(ctx, c)
    if c.degree == 0:
        return delta0(c, ctx.require_crossed())
    p = c.degree
    F, G = _apply(ctx.tables, c.F, c.G, p - 1)
    return Cochain.from_parts(p + 1, ctx.m, ctx.n, F=F, G=G)


def operator_matrix(ctx: ComplexContext, p: int) -> Matrix:
    """Matrix of the differential out of degree p in the flat payload bases."""
    if p < 0 or p > MAX_MATRIX_DEGREE:
        raise UnsupportedDegreeError(f"operator matrices are assembled for 0 <= p <= {MAX_MATRIX_DEGREE}")
    key = ("op", p)
    if key in ctx._cache:
        return ctx._cache[key]
    m, n = ctx.m, ctx.n
    cols = cochain_dim(p, m, n)
    rows = cochain_dim(p + 1, m, n)
    if p == 0:
        Z = _delta0_tensor(ctx.require_crossed()).reshape(cols, -1)
        data = {}
        for K in range(cols):
            for r, v in enumerate(Z[K]):
                if v:
                    data.setdefault(r, {})[K] = v
        mat = from_rows_dict(data, (rows, cols))
    else:
        sym = np.empty(cols, dtype=object)
        for i in range(cols):
            sym[i] = _Form({i: ONE})
        c = _SymbolicCochain(p, m, n, sym)
        F, G = _apply(ctx.tables, c.F, c.G, p - 1)
        flat = np.concatenate([np.asarray(F, dtype=object).reshape(-1),
                               np.asarray(G, dtype=object).reshape(-1)])
        data = {}
        for r, entry in enumerate(flat):
            if isinstance(entry, _Form):
                if entry.terms:
                    data[r] = entry.terms
            elif entry:
                raise AssertionError("constant term in a linear coboundary")
        mat = from_rows_dict(data, (rows, cols))
    ctx._cache[key] = mat
    return mat


class _SymbolicCochain:
    def __init__(self, p, m, n, vec):
        fs, gs = _part_shapes(p, m, n)
        if fs is None:
            self.F, self.G = None, vec.reshape(gs)
        else:
            k = int(np.prod(fs))
            self.F, self.G = vec[:k].reshape(fs), vec[k:].reshape(gs)


def is_cocycle(ctx: ComplexContext, c: Cochain) -> bool:
    return coboundary(ctx, c).is_zero()


def is_coboundary(ctx: ComplexContext, c: Cochain) -> bool:
    _check_shape(ctx, c)
    if c.degree == 0:
        return c.is_zero()
    if c.degree == 1 and ctx.crossed is None:
        ctx.require_crossed()
    return solve(operator_matrix(ctx, c.degree - 1), list(c.vector)) is not None


def _rank(ctx: ComplexContext, p: int) -> int:
    key = ("rank", p)
    if key not in ctx._cache:
        ctx._cache[key] = rank(operator_matrix(ctx, p))
    return ctx._cache[key]


def cohomology_dim(ctx: ComplexContext, p: int) -> int:
    """Dimension of the degree-p cohomology (p in {0, 1, 2})."""
    if p < 0 or p > 2:
        raise UnsupportedDegreeError("cohomology dimensions are supported for p in {0, 1, 2}")
    if p == 0:
        ctx.require_crossed()
        return cochain_dim(0, ctx.m, ctx.n) - _rank(ctx, 0)
    cycles = kernel_basis(operator_matrix(ctx, p))
    if p == 1 and ctx.crossed is None:
        return len(cycles)
    boundaries = to_array(operator_matrix(ctx, p - 1)).T.tolist()
    return quotient_dim(cycles, boundaries)


def wedge_square(psi) -> np.ndarray:
    """Matrix of x ^ y -> psi(x) ^ psi(y) on the wedge-pair basis."""
    psi = qarray(psi)
    m = psi.shape[0]
    pairs = wedge_pairs(m)
    out = qzeros((len(pairs), len(pairs)))
    for K, (a, b) in enumerate(pairs):
        out[:, K] = wedge(psi[:, a], psi[:, b])
    return out


def pushforward(mor: CrossedMorphism, c: Cochain) -> Cochain:
    """Transport a cochain along (psi_g, psi_h): arguments go through
    psi_g^-1 and values through psi_h."""
    if c.degree < 1:
        raise ValueError("pushforward is defined on cochains of degree >= 1")
    try:
        ginv = inverse(mor.psi_g)
    except ZeroDivisionError:
        raise NotInvertibleError("psi_g is singular") from None
    if ginv.shape[0] != c.m or mor.psi_h.shape != (c.n, c.n):
        raise ValueError("morphism does not match the cochain dimensions")
    W = wedge_square(ginv)
    slots = c.degree - 1

    def transport(T, trailing_g):
        T = np.asarray(T, dtype=object)
        for ax in range(slots):
            T = np.moveaxis(np.tensordot(W.T, T, axes=([1], [ax])), 0, ax)
        if trailing_g:
            T = np.moveaxis(np.tensordot(ginv.T, T, axes=([1], [slots])), 0, slots)
        return np.tensordot(T, mor.psi_h.T, axes=([T.ndim - 1], [0]))

    G = transport(c.G, True)
    F = transport(c.F, False) if c.F is not None else None
    return Cochain.from_parts(c.degree, c.m, c.n, F=F, G=G)
