"""Linear, formal and order-n deformations of crossed homomorphisms.

Formal series are truncated: a :class:`DeformationSeries` holds the
coefficients H_0, ..., H_n of H_t = sum H_i t^i, and every identity is
compared coefficient by coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .algebra import ein
from .cohomology import (Cochain, ComplexContext, delta0, operator_matrix, wedge_pairs)
from .crossed import CrossedMap, CrossedMorphism
from .linalg import inverse, q, qarray, qeye, qzeros, solve
from .reports import Violation, collect
from .representation import ActionContext

__all__ = [
    "InvalidDeformationError",
    "NotNijenhuisError",
    "TheoremViolation",
    "TruncatedPoly",
    "DeformationSeries",
    "NijenhuisCandidate",
    "series_residuals",
    "is_linear_deformation",
    "is_formal_deformation",
    "infinitesimal",
    "nijenhuis_operators",
    "is_nijenhuis",
    "trivial_deformation",
    "nijenhuis_morphism",
    "are_equivalent_formal",
    "obstruction",
    "extend",
]


class InvalidDeformationError(ValueError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NotNijenhuisError(ValueError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class TheoremViolation(AssertionError):
    """An identity guaranteed by theory failed; indicates a bug."""


@dataclass(frozen=True)
class TruncatedPoly:
    """Polynomial in t with matrix coefficients, computed modulo t^(order+1)."""
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(qarray(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a truncated polynomial needs at least the constant term")

    @classmethod
    def of(cls, coeffs, order: int) -> "TruncatedPoly":
        coeffs = [qarray(c) for c in coeffs]
        if len(coeffs) > order + 1:
            coeffs = coeffs[:order + 1]
        shape = coeffs[0].shape
        coeffs += [qzeros(shape) for _ in range(order + 1 - len(coeffs))]
        return cls(tuple(coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def _match(self, other):
        if other.order != self.order:
            raise ValueError("truncation orders differ")

    def __add__(self, other):
        self._match(other)
        return TruncatedPoly(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._match(other)
        return TruncatedPoly(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TruncatedPoly(tuple(-a for a in self.coeffs))

    def __matmul__(self, other):
        self._match(other)
        N = self.order
        out = []
        for k in range(N + 1):
            acc = self.coeffs[0].dot(other.coeffs[k])
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i].dot(other.coeffs[k - i])
            out.append(acc)
        return TruncatedPoly(tuple(out))

    def inverse(self) -> "TruncatedPoly":
        """Inverse under composition; for I + tX this is the geometric series
        sum (-tX)^k."""
        b0 = inverse(self.coeffs[0])
        out = [b0]
        for k in range(1, self.order + 1):
            acc = self.coeffs[1].dot(out[k - 1])
            for j in range(2, k + 1):
                acc = acc + self.coeffs[j].dot(out[k - j])
            out.append(-b0.dot(acc))
        return TruncatedPoly(tuple(out))

    def evaluate(self, t0) -> np.ndarray:
        t0 = q(t0)
        acc = qzeros(self.coeffs[0].shape)
        for k, c in enumerate(self.coeffs):
            acc = acc + (t0 ** k) * c
        return acc


@dataclass(frozen=True, eq=False)
class DeformationSeries:
    ctx: ActionContext
    terms: tuple

    def __post_init__(self):
        terms = tuple(qarray(t) for t in self.terms)
        if not terms:
            raise ValueError("a series needs at least the base crossed homomorphism")
        shape = (self.ctx.n, self.ctx.m)
        terms = tuple(t.reshape(shape) if t.size == 0 else t for t in terms)
        for t in terms:
            if t.shape != shape:
                raise ValueError(f"coefficient shape {t.shape}, expected {shape}")
            t.setflags(write=False)
        object.__setattr__(self, "terms", terms)
        CrossedMap(self.ctx, terms[0]).require_crossed()

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @property
    def base(self) -> CrossedMap:
        return CrossedMap(self.ctx, self.terms[0])

    @cached_property
    def complex(self) -> ComplexContext:
        return ComplexContext.for_crossed(self.base)

    def term(self, i: int) -> np.ndarray:
        return self.terms[i] if i < len(self.terms) else qzeros((self.ctx.n, self.ctx.m))

    def evaluate(self, t0) -> np.ndarray:
        return TruncatedPoly(self.terms).evaluate(t0)


@dataclass(frozen=True, eq=False)
class NijenhuisCandidate:
    X: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "X", qarray(self.X).reshape(-1))

    @classmethod
    def wedge(cls, m: int, i: int, j: int, coef=1) -> "NijenhuisCandidate":
        """coef * e_i ^ e_j with 1-based indices."""
        pairs = wedge_pairs(m)
        X = qzeros(len(pairs))
        a, b = i - 1, j - 1
        if a == b:
            return cls(X)
        sign = 1
        if a > b:
            a, b, sign = b, a, -1
        X[pairs.index((a, b))] = sign * q(coef)
        return cls(X)


def series_residuals(ctx: ActionContext, terms, s: int):
    """Coefficient of t^s in both crossed-homomorphism equations for
    H_t = sum terms[i] t^i, as residual tensors (zero means satisfied)."""
    g, h, rep = ctx.g, ctx.h, ctx.rep
    m, n = ctx.m, ctx.n
    terms = [qarray(t) for t in terms]
    N = len(terms) - 1
    zero = qzeros((n, m))
    Ts = terms[s] if s <= N else zero
    r1 = qzeros((m, m, n))
    r2 = qzeros((m, m, m, n))
    if m == 0 or n == 0:
        return r1, r2
    rho, mu, D = rep.rho, rep.mu, rep.D
    r1 = (ein("xyk,ak->xya", g.binary, Ts)
          - ein("xab,by->xya", rho, Ts)
          + ein("yab,bx->xya", rho, Ts))
    r2 = (ein("xyzk,ak->xyza", g.ternary, Ts)
          - ein("xyab,bz->xyza", D, Ts)
          - ein("yzab,bx->xyza", mu, Ts)
          + ein("xzab,by->xyza", mu, Ts))
    for i in range(max(0, s - N), min(s, N) + 1):
        r1 = r1 - ein("kx,ly,kla->xya", terms[i], terms[s - i], h.binary)
    for i, j in product(range(N + 1), repeat=2):
        k = s - i - j
        if 0 <= k <= N:
            r2 = r2 - ein("px,qy,rz,pqra->xyza", terms[i], terms[j], terms[k], h.ternary)
    return r1, r2


def _coefficient_report(ctx, terms, s) -> list[Violation]:
    r1, r2 = series_residuals(ctx, terms, s)
    return collect(f"t^{s}-binary", r1, 2) + collect(f"t^{s}-ternary", r2, 3)


def _as_matrix(K, ctx: ActionContext) -> np.ndarray:
    if isinstance(K, Cochain):
        if K.degree != 1:
            raise ValueError("expected a degree-1 cochain")
        return K.G.T
    K = qarray(K)
    if K.size == 0:
        K = K.reshape(ctx.n, ctx.m)
    if K.shape != (ctx.n, ctx.m):
        raise ValueError(f"map shape {K.shape}, expected ({ctx.n}, {ctx.m})")
    return K


def is_linear_deformation(H: CrossedMap, K) -> list[Violation]:
    """Whether H + tK is crossed for every t: coefficients of t, t^2, t^3."""
    H.require_crossed()
    terms = [H.matrix, _as_matrix(K, H.ctx)]
    out = []
    for s in (1, 2, 3):
        out += _coefficient_report(H.ctx, terms, s)
    return out


def is_formal_deformation(s: DeformationSeries) -> list[Violation]:
    out = []
    for k in range(1, s.order + 1):
        out += _coefficient_report(s.ctx, s.terms, k)
    return out


def _require_deformation(s: DeformationSeries):
    bad = is_formal_deformation(s)
    if bad:
        raise InvalidDeformationError(f"not an order-{s.order} deformation: {bad[0]}", bad)


def infinitesimal(s: DeformationSeries) -> Cochain:
    if s.order < 1:
        raise InvalidDeformationError("the infinitesimal needs a series of order >= 1")
    _require_deformation(s)
    return Cochain.from_parts(1, s.ctx.m, s.ctx.n, G=s.terms[1].T)


def _wedge_vector(X, m: int) -> np.ndarray:
    if isinstance(X, NijenhuisCandidate):
        X = X.X
    elif isinstance(X, Cochain):
        X = X.vector
    X = qarray(X).reshape(-1)
    if len(X) != len(wedge_pairs(m)):
        raise ValueError(f"expected {len(wedge_pairs(m))} wedge coordinates, got {len(X)}")
    return X


def nijenhuis_operators(X, ctx: ActionContext) -> tuple[np.ndarray, np.ndarray]:
    """(L, Dx): L z = sum X_K <<a,b,z>> on g and Dx = sum X_K D(a,b) on h."""
    m, n = ctx.m, ctx.n
    X = _wedge_vector(X, m)
    L = qzeros((m, m))
    Dx = qzeros((n, n))
    for K, (a, b) in enumerate(wedge_pairs(m)):
        if X[K]:
            L = L + X[K] * ctx.g.ternary[a, b].T
            Dx = Dx + X[K] * ctx.rep.D[a, b]
    return L, Dx


def is_nijenhuis(X, H: CrossedMap) -> list[Violation]:
    H.require_crossed()
    ctx = H.ctx
    m, n = ctx.m, ctx.n
    L, Dx = nijenhuis_operators(X, ctx)
    if m == 0:
        return []
    c, d = ctx.g.binary, ctx.g.ternary
    rho, mu = ctx.rep.rho, ctx.rep.mu
    out = collect("nij-1", ein("py,qz,pqs->yzs", L, L, c), 2)
    two = (ein("py,qz,pqws->yzws", L, L, d)
           + ein("py,rw,pzrs->yzws", L, L, d)
           + ein("qz,rw,yqrs->yzws", L, L, d))
    out += collect("nij-2", two, 3)
    out += collect("nij-3", ein("py,qz,rw,pqrs->yzws", L, L, L, d), 3)
    if n:
        out += collect("nij-4", ein("py,pab,bc->yac", L, rho, Dx), 1)
        five = (ein("py,pzab,bc->yzac", L, mu, Dx)
                + ein("qz,yqab,bc->yzac", L, mu, Dx)
                + ein("py,qz,pqac->yzac", L, L, mu))
        out += collect("nij-5", five, 2)
        out += collect("nij-6", ein("py,qz,pqab,bc->yzac", L, L, mu, Dx), 2)
        M = H.matrix
        seven = Dx.dot(Dx.dot(M) - M.dot(L))
        out += collect("nij-7", seven.T, 1)
    return out


def trivial_deformation(X, H: CrossedMap, N: int = 1) -> DeformationSeries:
    """The deformation (I + tDx)^-1 H (I + tL) generated by a Nijenhuis element;
    its expansion stops at t^1 with coefficient delta0(X, H)."""
    if N < 1:
        raise ValueError("truncation order must be at least 1")
    bad = is_nijenhuis(X, H)
    if bad:
        raise NotNijenhuisError(f"not a Nijenhuis element: {bad[0]}", bad)
    ctx = H.ctx
    L, Dx = nijenhuis_operators(X, ctx)
    left = TruncatedPoly.of([qeye(ctx.n), Dx], N).inverse()
    right = TruncatedPoly.of([qeye(ctx.m), L], N)
    mid = TruncatedPoly.of([H.matrix], N)
    Ht = left @ mid @ right
    first = delta0(_wedge_vector(X, ctx.m), H).G.T
    if not np.all(Ht[0] == H.matrix) or not np.all(Ht[1] == first):
        raise TheoremViolation("linear coefficient differs from delta0(X, H)")
    for k in range(2, N + 1):
        if any(v != 0 for v in Ht[k].reshape(-1)):
            raise TheoremViolation(f"coefficient of t^{k} does not vanish")
    return DeformationSeries(ctx, (H.matrix, first))


def nijenhuis_morphism(X, ctx: ActionContext, t0) -> CrossedMorphism:
    """(I + t0 L, I + t0 Dx), a morphism from the deformed map at t0 to H."""
    L, Dx = nijenhuis_operators(X, ctx)
    t0 = q(t0)
    return CrossedMorphism(qeye(ctx.m) + t0 * L, qeye(ctx.n) + t0 * Dx)


def _poly(coeffs, order, shape):
    coeffs = [qarray(c) for c in coeffs]
    for c in coeffs:
        if c.shape != shape:
            raise ValueError(f"coefficient shape {c.shape}, expected {shape}")
    return TruncatedPoly.of(coeffs or [qzeros(shape)], order)


def _hom_report(tag, phi: TruncatedPoly, alg, N) -> list[Violation]:
    out = []
    if alg.dim == 0:
        return out
    for k in range(N + 1):
        r2 = -ein("st,ijt->ijs", phi[k], alg.binary)
        for i in range(k + 1):
            r2 = r2 + ein("pi,qj,pqs->ijs", phi[i], phi[k - i], alg.binary)
        r3 = -ein("st,ijkt->ijks", phi[k], alg.ternary)
        for i in range(k + 1):
            for j in range(k - i + 1):
                r3 = r3 + ein("pi,qj,rk,pqrs->ijks", phi[i], phi[j], phi[k - i - j], alg.ternary)
        out += collect(f"{tag}-binary t^{k}", r2, 2) + collect(f"{tag}-ternary t^{k}", r3, 3)
    return out


def are_equivalent_formal(s1: DeformationSeries, s2: DeformationSeries, phi, vphi,
                          X=None, order: int | None = None) -> list[Violation]:
    """Check that (phi_t, vphi_t) relates the two series.

    The intertwining identity is vphi_t o s1 = s2 o phi_t, so that the
    linear coefficient of s1 is that of s2 plus delta0(X).  All identities
    are compared in K[t]/(t^(order+1)); ``order`` defaults to the largest
    length involved, and may be raised to test the full polynomial identities.
    """
    if s1.ctx != s2.ctx:
        raise ValueError("series live over different action contexts")
    ctx = s1.ctx
    m, n = ctx.m, ctx.n
    phi, vphi = list(phi), list(vphi)
    N = max(s1.order, s2.order, len(phi) - 1, len(vphi) - 1)
    if order is not None:
        if order < N:
            raise ValueError(f"order {order} is below the data order {N}")
        N = order
    P = _poly(phi, N, (m, m))
    V = _poly(vphi, N, (n, n))
    S1 = TruncatedPoly.of(list(s1.terms), N)
    S2 = TruncatedPoly.of(list(s2.terms), N)
    out = []
    out += collect("phi_0-identity", (P[0] - qeye(m)).T, 1)
    out += collect("vphi_0-identity", (V[0] - qeye(n)).T, 1)
    if X is not None and N >= 1:
        L, Dx = nijenhuis_operators(X, ctx)
        out += collect("phi_1-form", (P[1] - L).T, 1)
        out += collect("vphi_1-form", (V[1] - Dx).T, 1)
    out += _hom_report("phi-hom", P, ctx.g, N)
    out += _hom_report("vphi-hom", V, ctx.h, N)
    if m and n:
        rho, mu = ctx.rep.rho, ctx.rep.mu
        for k in range(N + 1):
            r = ein("ab,xbu->xua", V[k], rho)
            for i in range(k + 1):
                r = r - ein("ix,iab,bu->xua", P[i], rho, V[k - i])
            out += collect(f"rho-compat t^{k}", r, 2)
            s = ein("ab,xybu->xyua", V[k], mu)
            for i in range(k + 1):
                for j in range(k - i + 1):
                    s = s - ein("ix,jy,ijab,bu->xyua", P[i], P[j], mu, V[k - i - j])
            out += collect(f"mu-compat t^{k}", s, 3)
    inter = (V @ S1) - (S2 @ P)
    for k in range(N + 1):
        out += collect(f"intertwine t^{k}", inter[k].T, 1)
    return out


def obstruction(s: DeformationSeries, include_base_terms: bool = True) -> Cochain:
    """The degree-2 obstruction to extending an order-n deformation.

    Ob_I(x,y) sums [H_i x, H_j y] over i + j = n+1 with 0 < i, j.  Ob_II sums
    <<H_i x, H_j y, H_k z>> over i + j + k = n+1 with every index <= n; these
    are exactly the terms of the t^(n+1) coefficient not involving H_(n+1).
    With ``include_base_terms=False`` Ob_II keeps only tuples with all indices
    positive, dropping terms such as <<Hx, H_1 y, H_n z>>; that variant is not
    a cocycle in general and is kept for comparison only.
    """
    _require_deformation(s)
    ctx = s.ctx
    m, n = ctx.m, ctx.n
    N = s.order
    pairs = wedge_pairs(m)
    F = qzeros((len(pairs), n))
    G = qzeros((len(pairs), m, n))
    if m and n:
        ob1 = qzeros((m, m, n))
        for i in range(1, N + 1):
            j = N + 1 - i
            if 1 <= j <= N:
                ob1 = ob1 + ein("kx,ly,kla->xya", s.terms[i], s.terms[j], ctx.h.binary)
        lo = 1 if not include_base_terms else 0
        ob2 = qzeros((m, m, m, n))
        for i, j in product(range(lo, N + 1), repeat=2):
            k = N + 1 - i - j
            if lo <= k <= N:
                ob2 = ob2 + ein("px,qy,rz,pqra->xyza", s.terms[i], s.terms[j], s.terms[k],
                                ctx.h.ternary)
        for K, (a, b) in enumerate(pairs):
            F[K] = ob1[a, b]
            G[K] = ob2[a, b]
    return Cochain.from_parts(2, m, n, F=F, G=G)


def extend(s: DeformationSeries):
    """A coefficient H_(n+1) making the series an order-(n+1) deformation, or
    None when the obstruction class is nontrivial."""
    ob = obstruction(s)
    op = operator_matrix(s.complex, 1)
    v = solve(op, [-x for x in ob.vector])
    if v is None:
        return None
    nxt = qarray(v).reshape(s.ctx.m, s.ctx.n).T
    ext = DeformationSeries(s.ctx, s.terms + (nxt,))
    bad = _coefficient_report(ext.ctx, ext.terms, ext.order)
    if bad:
        raise TheoremViolation(f"extension fails at t^{ext.order}: {bad[0]}")
    return nxt
