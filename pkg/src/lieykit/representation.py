"""Representations and actions of Lie-Yamaguti algebras.

A representation of g (dim m) on an n-dimensional space holds
``rho[i]`` = rho(e_i) and ``mu[i, j]`` = mu(e_i, e_j) as n x n matrices.
The operator D(x, y) = mu(y,x) - mu(x,y) + [rho(x), rho(y)] - rho([x,y]) is
always derived from rho and mu.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import LYAlgebra, center_constraints, check_axioms, ein
from .linalg import qarray, qzeros
from .reports import Violation, collect

__all__ = [
    "InvalidAlgebraError",
    "InvalidActionError",
    "Representation",
    "ActionContext",
    "d_tensor",
    "D_of",
    "check_representation",
    "check_derived_identities",
    "adjoint_rep",
    "trivial_rep",
    "check_action",
    "semidirect",
]


class InvalidAlgebraError(ValueError):
    pass


class InvalidActionError(ValueError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


def d_tensor(alg: LYAlgebra, rho: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """D(e_i, e_j) for all i, j, stacked as an (m, m, n, n) array."""
    if alg.dim == 0:
        return qzeros(mu.shape)
    comm = ein("iab,jbc->ijac", rho, rho)
    return (ein("jiab->ijab", mu) - mu + comm - ein("jiab->ijab", comm)
            - ein("ijk,kab->ijab", alg.binary, rho))


@dataclass(frozen=True, eq=False)
class Representation:
    alg: LYAlgebra
    rho: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        rho = qarray(self.rho)
        mu = qarray(self.mu)
        m = self.alg.dim
        n = rho.shape[-1] if rho.ndim == 3 else (mu.shape[-1] if mu.ndim == 4 else 0)
        if rho.shape != (m, n, n) or mu.shape != (m, m, n, n):
            raise ValueError(
                f"rho shape {rho.shape} / mu shape {mu.shape} do not match ({m},n,n) / ({m},{m},n,n)")
        rho.setflags(write=False)
        mu.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "mu", mu)

    @property
    def target_dim(self) -> int:
        return self.rho.shape[-1]

    @cached_property
    def D(self) -> np.ndarray:
        out = d_tensor(self.alg, self.rho, self.mu)
        out.setflags(write=False)
        return out

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.alg == other.alg and self.rho.shape == other.rho.shape
                and bool(np.all(self.rho == other.rho)) and bool(np.all(self.mu == other.mu)))

    __hash__ = object.__hash__


def D_of(rep: Representation, i: int, j: int) -> np.ndarray:
    """D(e_i, e_j) with 0-based indices."""
    m = rep.alg.dim
    if not (0 <= i < m and 0 <= j < m):
        raise IndexError(f"basis index out of range for dimension {m}")
    return rep.D[i, j]


def check_representation(alg: LYAlgebra, rep: Representation) -> list[Violation]:
    if rep.alg != alg:
        raise ValueError("representation belongs to a different algebra")
    if alg.dim == 0 or rep.target_dim == 0:
        return []
    c, d = alg.binary, alg.ternary
    rho, mu, D = rep.rho, rep.mu, rep.D
    r1 = (ein("xyv,vzab->xyzab", c, mu)
          - ein("xzab,ybc->xyzac", mu, rho)
          + ein("yzab,xbc->xyzac", mu, rho))
    r2 = (ein("yzv,xvab->xyzab", c, mu)
          - ein("yab,xzbc->xyzac", rho, mu)
          + ein("zab,xybc->xyzac", rho, mu))
    r3 = (ein("xyzv,vab->xyzab", d, rho)
          - ein("xyab,zbc->xyzac", D, rho)
          + ein("zab,xybc->xyzac", rho, D))
    r4 = (ein("zwab,xybc->xyzwac", mu, mu)
          - ein("ywab,xzbc->xyzwac", mu, mu)
          - ein("yzwv,xvab->xyzwab", d, mu)
          + ein("yzab,xwbc->xyzwac", D, mu))
    r5 = (ein("xyzv,vwab->xyzwab", d, mu)
          + ein("xywv,zvab->xyzwab", d, mu)
          - ein("xyab,zwbc->xyzwac", D, mu)
          + ein("zwab,xybc->xyzwac", mu, D))
    return (collect("rep-1", r1, 3) + collect("rep-2", r2, 3) + collect("rep-3", r3, 3)
            + collect("rep-4", r4, 4) + collect("rep-5", r5, 4))


def check_derived_identities(alg: LYAlgebra, rep: Representation) -> list[Violation]:
    """Identities that every representation satisfies as a consequence of the
    axioms; a nonempty result on a valid representation indicates a bug."""
    if alg.dim == 0 or rep.target_dim == 0:
        return []
    c, d = alg.binary, alg.ternary
    mu, D = rep.mu, rep.D
    t = ein("xyv,vzab->xyzab", c, D)
    a = t + ein("yzxab->xyzab", t) + ein("zxyab->xyzab", t)
    b = (ein("xyzv,vwab->xyzwab", d, D)
         + ein("xywv,zvab->xyzwab", d, D)
         - ein("xyab,zwbc->xyzwac", D, D)
         + ein("zwab,xybc->xyzwac", D, D))
    e = (ein("xyzv,vwab->xyzwab", d, mu)
         - ein("xwab,zybc->xyzwac", mu, mu)
         + ein("ywab,zxbc->xyzwac", mu, mu)
         + ein("zwab,xybc->xyzwac", mu, D))
    return collect("lemma-1", a, 3) + collect("lemma-2", b, 4) + collect("lemma-3", e, 4)


def adjoint_rep(alg: LYAlgebra) -> Representation:
    """rho(x) z = [x, z] and mu(x, y) z = <<z, x, y>>."""
    bad = check_axioms(alg)
    if bad:
        raise InvalidAlgebraError(f"not a Lie-Yamaguti algebra: {bad[0]}")
    rho = ein("iba->iab", alg.binary) if alg.dim else qzeros((0, 0, 0))
    mu = ein("bija->ijab", alg.ternary) if alg.dim else qzeros((0, 0, 0, 0))
    return Representation(alg, rho, mu)


def trivial_rep(alg: LYAlgebra, n: int) -> Representation:
    m = alg.dim
    return Representation(alg, qzeros((m, n, n)), qzeros((m, m, n, n)))


def _derived_span(h: LYAlgebra) -> np.ndarray:
    """Columns spanning span{[u,v]} + span{<<u,v,w>>} in h."""
    n = h.dim
    cols = [h.binary.reshape(-1, n), h.ternary.reshape(-1, n)]
    return np.concatenate(cols, axis=0).T


def check_action(g: LYAlgebra, h: LYAlgebra, rep: Representation) -> list[Violation]:
    """Representation axioms plus the action conditions on basis elements.

    Center containment is tested against the strict center of h (the common
    kernel of all three bracket conditions)."""
    if rep.alg != g:
        raise ValueError("representation is not of the source algebra")
    if rep.target_dim != h.dim:
        raise ValueError(
            f"representation acts on dimension {rep.target_dim}, target algebra has {h.dim}")
    out = check_representation(g, rep)
    if g.dim == 0 or h.dim == 0:
        return out
    cons = center_constraints(h)
    span = _derived_span(h)
    for label, ops, nargs in (("rho", rep.rho, 1), ("mu", rep.mu, 2), ("D", rep.D, 2)):
        not_central = ein("ra,...ab->...rb", cons, ops)
        out += collect(f"action-{label}-center", not_central, nargs)
        kills = ein("...ab,bk->...ak", ops, span)
        out += collect(f"action-{label}-annihilate", kills, nargs)
    return out


def semidirect(g: LYAlgebra, h: LYAlgebra, rep: Representation) -> LYAlgebra:
    """Brackets on g + h built from an action (basis: g first, then h)."""
    bad = check_action(g, h, rep)
    if bad:
        raise InvalidActionError(f"not an action: {bad[0]}", bad)
    m, n = g.dim, h.dim
    N = m + n
    c = qzeros((N, N, N))
    d = qzeros((N, N, N, N))
    G, Hs = slice(0, m), slice(m, N)
    c[G, G, G] = g.binary
    c[Hs, Hs, Hs] = h.binary
    if m and n:
        c[G, Hs, Hs] = ein("iab->iba", rep.rho)
        c[Hs, G, Hs] = -ein("iab->bia", rep.rho)
        d[G, G, Hs, Hs] = ein("ijab->ijba", rep.D)
        d[Hs, G, G, Hs] = ein("jkab->bjka", rep.mu)
        d[G, Hs, G, Hs] = -ein("ikab->ibka", rep.mu)
    d[G, G, G, G] = g.ternary
    d[Hs, Hs, Hs, Hs] = h.ternary
    name = f"{g.name or 'g'} x| {h.name or 'h'}"
    return LYAlgebra(c, d, name)


@dataclass(frozen=True, eq=False)
class ActionContext:
    """Source g, target h and an action of g on h (validated on creation)."""
    g: LYAlgebra
    h: LYAlgebra
    rep: Representation

    def __post_init__(self):
        bad = check_action(self.g, self.h, self.rep)
        if bad:
            raise InvalidActionError(f"not an action: {bad[0]}", bad)

    @property
    def m(self) -> int:
        return self.g.dim

    @property
    def n(self) -> int:
        return self.h.dim

    @cached_property
    def semidirect(self) -> LYAlgebra:
        return semidirect(self.g, self.h, self.rep)

    def __eq__(self, other):
        if not isinstance(other, ActionContext):
            return NotImplemented
        return self is other or (self.g == other.g and self.h == other.h and self.rep == other.rep)

    __hash__ = object.__hash__
