"""Crossed homomorphisms, relative Rota-Baxter operators and their morphisms.

A crossed homomorphism H: g -> h is stored as an n x m matrix whose column
``i`` is H(e_i).  It must satisfy

    H[x,y]   = rho(x)Hy - rho(y)Hx + [Hx,Hy]
    H<<x,y,z>> = D(x,y)Hz + mu(y,z)Hx - mu(x,z)Hy + <<Hx,Hy,Hz>>
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LYAlgebra, ein, homomorphism_violations
from .linalg import inverse, qarray, qeye, qzeros
from .reports import Violation, collect
from .representation import ActionContext, Representation

__all__ = [
    "NotCrossedError",
    "NotInvertibleError",
    "ContextMismatchError",
    "CrossedMap",
    "CrossedMorphism",
    "crossed_residuals",
    "is_crossed_hom",
    "graph_map",
    "check_graph_equivalence",
    "is_relative_rb",
    "inverse_correspondence",
    "is_crossed_morphism",
]


class NotCrossedError(ValueError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NotInvertibleError(ValueError):
    pass


class ContextMismatchError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CrossedMap:
    ctx: ActionContext
    matrix: np.ndarray

    def __post_init__(self):
        mat = qarray(self.matrix)
        if mat.size == 0:
            mat = mat.reshape(self.ctx.n, self.ctx.m)
        if mat.shape != (self.ctx.n, self.ctx.m):
            raise ValueError(f"matrix shape {mat.shape}, expected ({self.ctx.n}, {self.ctx.m})")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def require_crossed(self) -> "CrossedMap":
        bad = is_crossed_hom(self)
        if bad:
            raise NotCrossedError(f"not a crossed homomorphism: {bad[0]}", bad)
        return self


@dataclass(frozen=True, eq=False)
class CrossedMorphism:
    psi_g: np.ndarray
    psi_h: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "psi_g", qarray(self.psi_g))
        object.__setattr__(self, "psi_h", qarray(self.psi_h))


def crossed_residuals(ctx: ActionContext, H) -> tuple[np.ndarray, np.ndarray]:
    """Residual tensors of the two defining equations, indexed (x, y, :) and
    (x, y, z, :)."""
    g, h, rep = ctx.g, ctx.h, ctx.rep
    H = qarray(H)
    m, n = ctx.m, ctx.n
    if m == 0 or n == 0:
        return qzeros((m, m, n)), qzeros((m, m, m, n))
    rho, mu, D = rep.rho, rep.mu, rep.D
    e1 = (ein("xyk,ak->xya", g.binary, H)
          - ein("xab,by->xya", rho, H)
          + ein("yab,bx->xya", rho, H)
          - ein("kx,ly,kla->xya", H, H, h.binary))
    e2 = (ein("xyzk,ak->xyza", g.ternary, H)
          - ein("xyab,bz->xyza", D, H)
          - ein("yzab,bx->xyza", mu, H)
          + ein("xzab,by->xyza", mu, H)
          - ein("kx,ly,pz,klpa->xyza", H, H, H, h.ternary))
    return e1, e2


def is_crossed_hom(H: CrossedMap) -> list[Violation]:
    e1, e2 = crossed_residuals(H.ctx, H.matrix)
    return collect("crossed-binary", e1, 2) + collect("crossed-ternary", e2, 3)


def graph_map(H: CrossedMap) -> np.ndarray:
    """The map x -> (x, Hx) as an (m+n) x m matrix."""
    return np.vstack([qeye(H.ctx.m), H.matrix]) if H.ctx.m else qzeros((H.ctx.n, 0))


def check_graph_equivalence(H: CrossedMap) -> bool:
    crossed = not is_crossed_hom(H)
    hom = not homomorphism_violations(graph_map(H), H.ctx.g, H.ctx.semidirect)
    return crossed == hom


def is_relative_rb(T, lam, g: LYAlgebra, h: LYAlgebra, rep: Representation) -> list[Violation]:
    """Weight-lambda relative Rota-Baxter identities for T: h -> g (m x n)."""
    T = qarray(T)
    m, n = g.dim, h.dim
    if T.shape != (m, n):
        raise ValueError(f"operator shape {T.shape}, expected ({m}, {n})")
    if rep.alg != g or rep.target_dim != n:
        raise ValueError("representation does not match the algebras")
    if m == 0 or n == 0:
        return []
    lam = qarray(lam).item()
    rho, mu, D = rep.rho, rep.mu, rep.D
    inner2 = (ein("iu,iav->uva", T, rho) - ein("iv,iau->uva", T, rho)
              + lam * h.binary)
    r1 = ein("iu,jv,ijk->uvk", T, T, g.binary) - ein("ka,uva->uvk", T, inner2)
    inner3 = (ein("iu,jv,ijaw->uvwa", T, T, D)
              + ein("iv,jw,ijau->uvwa", T, T, mu)
              - ein("iu,jw,ijav->uvwa", T, T, mu)
              + lam * h.ternary)
    r2 = (ein("iu,jv,pw,ijpk->uvwk", T, T, T, g.ternary)
          - ein("ka,uvwa->uvwk", T, inner3))
    return collect("rb-binary", r1, 2) + collect("rb-ternary", r2, 3)


def inverse_correspondence(H: CrossedMap) -> tuple[np.ndarray, bool]:
    """T = H^-1 and whether T is a weight-1 relative Rota-Baxter operator."""
    ctx = H.ctx
    if ctx.m != ctx.n:
        raise NotInvertibleError("a non-square map has no inverse")
    try:
        T = inverse(H.matrix)
    except ZeroDivisionError:
        raise NotInvertibleError("map is singular") from None
    return T, not is_relative_rb(T, 1, ctx.g, ctx.h, ctx.rep)


def is_crossed_morphism(mor: CrossedMorphism, h_from: CrossedMap, h_to: CrossedMap) -> list[Violation]:
    """Conditions for (psi_g, psi_h) to be a morphism from h_from to h_to."""
    if h_from.ctx != h_to.ctx:
        raise ContextMismatchError("crossed maps live over different action contexts")
    ctx = h_from.ctx
    m, n = ctx.m, ctx.n
    pg, ph = mor.psi_g, mor.psi_h
    if pg.shape != (m, m) or ph.shape != (n, n):
        raise ValueError(f"morphism shapes {pg.shape}, {ph.shape}, expected ({m},{m}), ({n},{n})")
    out = [Violation("psi_g-" + v.check, v.witness, v.residual)
           for v in homomorphism_violations(pg, ctx.g, ctx.g)]
    out += [Violation("psi_h-" + v.check, v.witness, v.residual)
            for v in homomorphism_violations(ph, ctx.h, ctx.h)]
    if m == 0 or n == 0:
        return out
    inter = ph.dot(h_from.matrix) - h_to.matrix.dot(pg)
    out += collect("intertwine", inter.T, 1)
    rho, mu = ctx.rep.rho, ctx.rep.mu
    r = ein("ab,xbu->xua", ph, rho) - ein("ix,iab,bu->xua", pg, rho, ph)
    out += collect("rho-compat", r, 2)
    s = (ein("ab,xybu->xyua", ph, mu)
         - ein("ix,jy,ijab,bu->xyua", pg, pg, mu, ph))
    out += collect("mu-compat", s, 3)
    if not out:
        D = ctx.rep.D
        t = (ein("ab,xybu->xyua", ph, D)
             - ein("ix,jy,ijab,bu->xyua", pg, pg, D, ph))
        out += collect("D-compat", t, 3)
    return out
