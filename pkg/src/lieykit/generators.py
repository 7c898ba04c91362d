"""Random desk-scale action contexts with known crossed homomorphisms.

Used by the property tests and the experiment scripts.  Every family comes
with a sampler for crossed homomorphisms that is correct by construction;
the checkers are never consulted to decide membership.

Families:

``lie-abelian``  a Lie-derived algebra g acting on an abelian copy of its
                 underlying space by the adjoint operators; crossed maps are
                 the 1-cocycles, a linear space.
``central``      central-type algebras V + Z (all brackets take V arguments
                 and land in Z) with random actions V_h -> Z_h; crossed maps
                 kill Z_g and land in Z_h.
``trivial``      trivial action of a Lie-derived algebra on itself; crossed
                 maps are endomorphisms (explicit parametrised families).
``k4``           the 4-dimensional example with its adjoint action and the
                 family H(e4) = 0, image in span{e3, e4}.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import (LYAlgebra, abelian, ein, filiform4, heisenberg, k4_example, nonabelian2,
                      sl2, transform)
from .cohomology import ComplexContext, operator_matrix
from .linalg import inverse, kernel_basis, qarray, qeye, qzeros
from .representation import ActionContext, Representation, adjoint_rep, trivial_rep

__all__ = [
    "Desk",
    "random_unimodular",
    "transform_context",
    "k4_desk",
    "lie_abelian_desk",
    "central_desk",
    "trivial_desk",
    "heisenberg_obstructed_desk",
    "random_desk",
    "random_matrix",
    "k4_crossed_family",
]

Sampler = Callable[[random.Random], np.ndarray]


@dataclass
class Desk:
    name: str
    ctx: ActionContext
    sample: Sampler


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -2, hi: int = 2) -> np.ndarray:
    return qarray([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]).reshape(rows, cols)


def random_unimodular(rng: random.Random, k: int, steps: int = 4) -> np.ndarray:
    """Product of elementary matrices: integer entries, determinant +-1."""
    p = qeye(k)
    if k < 2:
        return p
    for _ in range(steps):
        i, j = rng.sample(range(k), 2)
        e = qeye(k)
        e[i, j] = rng.choice([-1, 1])
        p = p.dot(e)
    perm = list(range(k))
    rng.shuffle(perm)
    return p[:, perm]


def transform_context(ctx: ActionContext, P, Q) -> tuple[ActionContext, Callable]:
    """Rewrite a context in new bases (columns of P for g, Q for h).
    Returns the new context and the matching map on crossed matrices."""
    P, Q = qarray(P), qarray(Q)
    Qi = inverse(Q)
    g = transform(ctx.g, P)
    h = transform(ctx.h, Q)
    rho = ein("ai,cb,abd,de->ice", P, Qi, ctx.rep.rho, Q) if ctx.m and ctx.n else ctx.rep.rho
    mu = (ein("ai,bj,pq,abqr,rs->ijps", P, P, Qi, ctx.rep.mu, Q)
          if ctx.m and ctx.n else ctx.rep.mu)
    new = ActionContext(g, h, Representation(g, rho, mu))
    return new, (lambda H: Qi.dot(qarray(H)).dot(P))


def k4_crossed_family(params) -> np.ndarray:
    """H with H(e4) = 0 and H(e1), H(e2), H(e3) in span{e3, e4}; ``params``
    lists the six coordinates column by column."""
    H = qzeros((4, 4))
    a = list(params)
    for col in range(3):
        H[2, col] = a[2 * col]
        H[3, col] = a[2 * col + 1]
    return H


def k4_desk() -> Desk:
    k = k4_example()
    ctx = ActionContext(k, k, adjoint_rep(k))
    return Desk("k4", ctx, lambda rng: k4_crossed_family([rng.randint(-3, 3) for _ in range(6)]))


def _lie_catalogue():
    return [nonabelian2(), heisenberg(), sl2(), filiform4(), abelian(2)]


def lie_abelian_desk(rng: random.Random, g: LYAlgebra | None = None, twist: bool = True) -> Desk:
    g = g or rng.choice(_lie_catalogue()[:3])
    rep = adjoint_rep(g)
    h = abelian(g.dim)
    ctx = ActionContext(g, h, Representation(g, rep.rho, rep.mu))
    if twist:
        ctx, _ = transform_context(ctx, random_unimodular(rng, g.dim), random_unimodular(rng, g.dim))
    basis = kernel_basis(operator_matrix(ComplexContext(ctx.g, ctx.rep), 1))
    m, n = ctx.m, ctx.n

    def sample(r):
        v = qzeros(m * n)
        for b in basis:
            v = v + r.randint(-2, 2) * qarray(b)
        return v.reshape(m, n).T

    return Desk(f"lie-abelian[{g.name}]", ctx, sample)


def _central_algebra(rng: random.Random, v: int, z: int, name: str) -> LYAlgebra:
    dim = v + z
    c = qzeros((dim,) * 3)
    d = qzeros((dim,) * 4)
    for i in range(v):
        for j in range(i + 1, v):
            for k in range(v, dim):
                val = rng.randint(-2, 2)
                c[i, j, k], c[j, i, k] = val, -val
            for k in range(v):
                for l in range(v, dim):
                    val = rng.randint(-2, 2)
                    d[i, j, k, l], d[j, i, k, l] = val, -val
    if v:
        # subtract a third of the cyclic sum so that it vanishes
        s = d + ein("yzxl->xyzl", d) + ein("zxyl->xyzl", d)
        d = 3 * d - s
    return LYAlgebra(c, d, name)


def central_desk(rng: random.Random, vg: int = 2, zg: int = 1, vh: int = 1, zh: int = 1) -> Desk:
    g = _central_algebra(rng, vg, zg, "central-g")
    h = _central_algebra(rng, vh, zh, "central-h")
    m, n = vg + zg, vh + zh
    rho = qzeros((m, n, n))
    mu = qzeros((m, m, n, n))
    for i in range(vg):
        for a in range(vh, n):
            for b in range(vh):
                rho[i, a, b] = rng.randint(-1, 1)
        for j in range(vg):
            for a in range(vh, n):
                for b in range(vh):
                    mu[i, j, a, b] = rng.randint(-1, 1)
    ctx = ActionContext(g, h, Representation(g, rho, mu))

    def sample(r):
        H = qzeros((n, m))
        for a in range(vh, n):
            for b in range(vg):
                H[a, b] = r.randint(-2, 2)
        return H

    return Desk(f"central[{vg}+{zg},{vh}+{zh}]", ctx, sample)


def _endomorphism_sampler(g: LYAlgebra) -> Sampler:
    name = g.name

    def heis(r):
        a, b, c, d, e, f = (r.randint(-2, 2) for _ in range(6))
        return qarray([[a, b, 0], [c, d, 0], [e, f, a * d - b * c]])

    def fili(r):
        a, b = r.randint(-2, 2), r.randint(-2, 2)
        return qarray(np.diag([a, b, a * b, a * a * b]).tolist())

    def r2(r):
        c, d = r.randint(-2, 2), r.randint(-2, 2)
        return qarray([[1, 0], [c, d]]) if r.random() < 0.8 else qzeros((2, 2))

    def generic(r):
        return qeye(g.dim) * r.choice([0, 1])

    return {"heisenberg3": heis, "filiform4": fili, "r2": r2}.get(name, generic)


def trivial_desk(rng: random.Random, g: LYAlgebra | None = None, twist: bool = True) -> Desk:
    g = g or rng.choice(_lie_catalogue()[:4])
    ctx = ActionContext(g, g, trivial_rep(g, g.dim))
    base = _endomorphism_sampler(g)
    fix = lambda H: H
    if twist:
        P = random_unimodular(rng, g.dim)
        ctx, fix = transform_context(ctx, P, P)
    return Desk(f"trivial[{g.name}]", ctx, lambda r: fix(base(r)))


def heisenberg_obstructed_desk() -> Desk:
    """Abelian 2-dim g acting trivially on the Heisenberg algebra.  With
    H = 0 every linear map is a 1-cocycle and the only obstruction is
    [K e1, K e2]."""
    g = abelian(2)
    h = heisenberg()
    ctx = ActionContext(g, h, trivial_rep(g, 3))
    return Desk("heisenberg-obstructed", ctx, lambda r: qzeros((3, 2)))


def random_desk(rng: random.Random) -> Desk:
    kind = rng.choice(["lie-abelian", "central", "trivial", "k4"])
    if kind == "lie-abelian":
        return lie_abelian_desk(rng)
    if kind == "central":
        return central_desk(rng, rng.randint(1, 2), 1, rng.randint(1, 2), rng.randint(1, 2))
    if kind == "trivial":
        return trivial_desk(rng)
    return k4_desk()
