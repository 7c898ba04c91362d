import random

import pytest
from hypothesis import settings, strategies as st

from lieykit.algebra import k4_example
from lieykit.crossed import CrossedMap
from lieykit.generators import k4_crossed_family
from lieykit.linalg import qarray, qzeros
from lieykit.representation import ActionContext, adjoint_rep

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

# member of the crossed family used for golden values: H(e1) = e3, H(e2) = e4,
# H(e3) = 2 e3 - e4, H(e4) = 0
H_GOLDEN = [[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 2, 0], [0, 1, -1, 0]]

small_ints = st.integers(-3, 3)


def rational_matrices(rows, cols, elements=small_ints):
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@pytest.fixture(scope="session")
def k4():
    return k4_example()


@pytest.fixture(scope="session")
def k4_ctx(k4):
    return ActionContext(k4, k4, adjoint_rep(k4))


@pytest.fixture(scope="session")
def k4_H(k4_ctx):
    return CrossedMap(k4_ctx, qarray(H_GOLDEN))


@pytest.fixture
def rng():
    return random.Random(20240611)


def k4_family_member(rng):
    return k4_crossed_family([rng.randint(-3, 3) for _ in range(6)])


def unit(i, m=4):
    """1-based standard basis vector."""
    v = qzeros(m)
    v[i - 1] = 1
    return v


desk_seeds = st.integers(0, 10**6)


def nijenhuis_examples():
    """(H, X) pairs on trivial-action desks with H = id where X is a
    Nijenhuis element with delta0(X, H) != 0.  Candidates are wedge basis
    elements and sums of two of them."""
    from itertools import combinations

    from lieykit.algebra import filiform4, nonabelian2
    from lieykit.cohomology import delta0, wedge_pairs
    from lieykit.crossed import CrossedMap
    from lieykit.deformation import is_nijenhuis
    from lieykit.linalg import qeye
    from lieykit.representation import trivial_rep

    out = []
    for g in (filiform4(), k4_example(), nonabelian2()):
        H = CrossedMap(ActionContext(g, g, trivial_rep(g, g.dim)), qeye(g.dim))
        P = len(wedge_pairs(g.dim))
        cands = [[int(k == a) for k in range(P)] for a in range(P)]
        cands += [[int(k in (a, b)) for k in range(P)] for a, b in combinations(range(P), 2)]
        for X in cands:
            X = qarray(X)
            if not is_nijenhuis(X, H) and not delta0(X, H).is_zero():
                out.append((H, X))
    return out


def extension_system_consistent(s):
    """Independent check that some H_(n+1) makes the t^(n+1) coefficients of
    both crossed equations vanish.  The residual is affine in H_(n+1); build
    it column by column from series_residuals and solve."""
    from lieykit.deformation import series_residuals
    from lieykit.linalg import matrix, solve

    ctx, N = s.ctx, s.order
    n, m = ctx.n, ctx.m

    def residual(E):
        r1, r2 = series_residuals(ctx, list(s.terms) + [E], N + 1)
        return list(r1.reshape(-1)) + list(r2.reshape(-1))

    r0 = residual(qzeros((n, m)))
    cols = []
    for a in range(n):
        for b in range(m):
            E = qzeros((n, m))
            E[a, b] = 1
            cols.append([x - y for x, y in zip(residual(E), r0)])
    A = matrix([list(row) for row in zip(*cols)])
    return solve(A, [-x for x in r0]) is not None


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
