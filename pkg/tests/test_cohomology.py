import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import desk_seeds, k4_family_member, unit
from lieykit.algebra import abelian, bracket2, bracket3, filiform4
from lieykit.crossed import CrossedMap, CrossedMorphism, NotCrossedError, NotInvertibleError
from lieykit.cohomology import (Cochain, ComplexContext, MissingCrossedMapError,
                                UnsupportedDegreeError, coboundary, cochain_dim, cohomology_dim,
                                delta0, induced_rep, is_coboundary, is_cocycle, operator_matrix,
                                pushforward, wedge, wedge_pairs, wedge_square)
from lieykit.generators import random_desk, transform_context, trivial_desk
from lieykit.linalg import kernel_basis, qarray, qeye, qzeros, rank, to_array
from lieykit.representation import ActionContext, check_representation, trivial_rep

# computed by scripts/oracle_cohomology.py
GOLDEN_K4 = [6, 8, 43]
GOLDEN_K4_ZERO = [6, 8, 43]
GOLDEN_FILIFORM_ID = [5, 6, 37]
GOLDEN_FILIFORM_ZERO = [6, 8, 48]


def random_cochain(rng, p, m, n):
    return Cochain(p, m, n, qarray([rng.randint(-2, 2) for _ in range(cochain_dim(p, m, n))]))


def is_zero_matrix(M):
    return not any(v != 0 for v in to_array(M).reshape(-1))


@pytest.fixture(scope="module")
def k4_zero(k4_ctx):
    return ComplexContext.for_crossed(CrossedMap(k4_ctx, qzeros((4, 4))))


@pytest.fixture(scope="module")
def k4_golden(k4_H):
    return ComplexContext.for_crossed(k4_H)


@pytest.fixture(scope="module")
def filiform_ctx():
    g = filiform4()
    return ActionContext(g, g, trivial_rep(g, 4))


class TestWedge:
    def test_pairs(self):
        assert wedge_pairs(3) == [(0, 1), (0, 2), (1, 2)]

    def test_antisymmetric(self):
        assert list(wedge(unit(2), unit(1))) == [-1, 0, 0, 0, 0, 0]
        assert not wedge(unit(3), unit(3)).any()

    def test_wedge_square_identity(self):
        assert (wedge_square(qeye(4)) == qeye(6)).all()


class TestCochain:
    def test_dims(self):
        assert [cochain_dim(p, 4, 4) for p in range(4)] == [6, 16, 120, 720]

    def test_shape_error(self):
        with pytest.raises(ValueError):
            Cochain(1, 4, 4, qzeros(15))

    def test_parts_round_trip(self, rng):
        c = random_cochain(rng, 2, 4, 3)
        assert c.F.shape == (6, 3) and c.G.shape == (6, 4, 3)
        assert Cochain.from_parts(2, 4, 3, F=c.F, G=c.G) == c

    def test_arithmetic(self, rng):
        a, b = random_cochain(rng, 2, 3, 2), random_cochain(rng, 2, 3, 2)
        assert (a + b) - b == a
        assert (2 * a - a - a).is_zero()


class TestInducedRep:
    def test_zero_map(self, k4_ctx):
        rep = induced_rep(CrossedMap(k4_ctx, qzeros((4, 4))))
        assert rep == k4_ctx.rep

    def test_abelian_target(self):
        g = filiform4()
        ctx = ActionContext(g, abelian(2), trivial_rep(g, 2))
        H = qzeros((2, 4))
        H[0, 0] = 1
        rep = induced_rep(CrossedMap(ctx, H))
        assert not rep.rho.any() and not rep.mu.any()

    def test_not_crossed(self, k4_ctx):
        with pytest.raises(NotCrossedError):
            induced_rep(CrossedMap(k4_ctx, qeye(4)))

    def test_golden_formula(self, k4, k4_H):
        rep = induced_rep(k4_H)
        assert check_representation(k4, rep) == []
        M = k4_H.matrix
        for i in range(4):
            for u in range(4):
                He = M[:, i]
                expect = bracket2(k4, He, unit(u + 1)) + k4_H.ctx.rep.rho[i].dot(unit(u + 1))
                assert (rep.rho[i].dot(unit(u + 1)) == expect).all()
            for j in range(4):
                expect = (np.array([bracket3(k4, M[:, i], M[:, j], unit(u + 1)) for u in range(4)]).T
                          + k4_H.ctx.rep.D[i, j])
                assert (rep.D[i, j] == expect).all()

    @given(desk_seeds)
    def test_is_representation(self, seed):
        rng = random.Random(seed)
        desk = random_desk(rng)
        rep = induced_rep(CrossedMap(desk.ctx, desk.sample(rng)))
        assert check_representation(desk.ctx.g, rep) == []


class TestDelta0:
    def test_zero_map(self, k4_ctx):
        assert delta0(unit(1, 6), CrossedMap(k4_ctx, qzeros((4, 4)))).is_zero()

    def test_zero_element(self, k4_H):
        assert delta0(qzeros(6), k4_H).is_zero()

    def test_golden_e1e2(self, k4_golden, k4_H):
        d = delta0(unit(1, 6), k4_H)
        assert d.degree == 1 and is_cocycle(k4_golden, d)
        # z -> mu(e2,z)He1 - mu(e1,z)He2 + <<He1,He2,Hz>>, He1 = e3, He2 = e4 central
        assert d.is_zero()

    def test_needs_crossed(self, k4_ctx):
        with pytest.raises(NotCrossedError):
            delta0(unit(1, 6), CrossedMap(k4_ctx, qeye(4)))

    @given(desk_seeds)
    def test_cocycle(self, seed):
        rng = random.Random(seed)
        desk = random_desk(rng)
        H = CrossedMap(desk.ctx, desk.sample(rng))
        cc = ComplexContext.for_crossed(H)
        for K in range(len(wedge_pairs(desk.ctx.m))):
            assert is_cocycle(cc, delta0(unit(K + 1, len(wedge_pairs(desk.ctx.m))), H))


class TestCoboundary:
    def test_zero(self, k4_golden):
        for p in range(1, 4):
            assert coboundary(k4_golden, Cochain.zero(p, 4, 4)).is_zero()

    def test_abelian_trivial_vanishes(self, rng):
        g = abelian(3)
        cc = ComplexContext(g, trivial_rep(g, 2))
        for p in (1, 2, 3):
            assert coboundary(cc, random_cochain(rng, p, 3, 2)).is_zero()

    def test_shape_mismatch(self, k4_golden):
        with pytest.raises(ValueError):
            coboundary(k4_golden, Cochain.zero(1, 3, 4))

    def test_operator_shapes(self, k4_zero):
        assert operator_matrix(k4_zero, 1).shape == (120, 16)
        assert operator_matrix(k4_zero, 2).shape == (720, 120)

    def test_matrix_matches_pointwise(self, k4_golden, rng):
        for p in (1, 2):
            c = random_cochain(rng, p, 4, 4)
            via_matrix = to_array(operator_matrix(k4_golden, p)).dot(c.vector)
            assert list(via_matrix) == list(coboundary(k4_golden, c).vector)

    @pytest.mark.parametrize("which", ["k4_zero", "k4_golden"])
    def test_square_zero(self, which, request):
        cc = request.getfixturevalue(which)
        for p in (0, 1, 2):
            assert is_zero_matrix(operator_matrix(cc, p + 1).matmul(operator_matrix(cc, p)))

    def test_missing_crossed(self, k4, k4_ctx):
        cc = ComplexContext(k4, k4_ctx.rep)
        with pytest.raises(MissingCrossedMapError):
            operator_matrix(cc, 0)
        with pytest.raises(MissingCrossedMapError):
            is_coboundary(cc, Cochain.zero(1, 4, 4))

    def test_unsupported_degree(self, k4_zero):
        with pytest.raises(UnsupportedDegreeError):
            operator_matrix(k4_zero, 4)
        with pytest.raises(UnsupportedDegreeError):
            cohomology_dim(k4_zero, 3)

    @settings(max_examples=20)
    @given(desk_seeds)
    def test_square_zero_random_desks(self, seed):
        rng = random.Random(seed)
        desk = random_desk(rng)
        cc = ComplexContext.for_crossed(CrossedMap(desk.ctx, desk.sample(rng)))
        for p in (0, 1):
            assert is_zero_matrix(operator_matrix(cc, p + 1).matmul(operator_matrix(cc, p)))


class TestCocycles:
    def test_zero(self, k4_golden):
        z = Cochain.zero(1, 4, 4)
        assert is_cocycle(k4_golden, z) and is_coboundary(k4_golden, z)

    def test_cocycle_not_coboundary(self, k4_golden):
        image = rank(operator_matrix(k4_golden, 0))
        found = False
        for v in kernel_basis(operator_matrix(k4_golden, 1)):
            c = Cochain(1, 4, 4, qarray(v))
            assert is_cocycle(k4_golden, c)
            if not is_coboundary(k4_golden, c):
                found = True
        assert found and image < len(kernel_basis(operator_matrix(k4_golden, 1)))


class TestDims:
    def test_golden(self, k4_golden):
        assert [cohomology_dim(k4_golden, p) for p in range(3)] == GOLDEN_K4

    def test_golden_zero_map(self, k4_zero):
        assert [cohomology_dim(k4_zero, p) for p in range(3)] == GOLDEN_K4_ZERO

    def test_filiform(self, filiform_ctx):
        for M, expect in ((qeye(4), GOLDEN_FILIFORM_ID), (qzeros((4, 4)), GOLDEN_FILIFORM_ZERO)):
            cc = ComplexContext.for_crossed(CrossedMap(filiform_ctx, M))
            assert [cohomology_dim(cc, p) for p in range(3)] == expect

    def test_everything_survives_when_trivial(self):
        g = abelian(2)
        ctx = ActionContext(g, abelian(2), trivial_rep(g, 2))
        cc = ComplexContext.for_crossed(CrossedMap(ctx, qzeros((2, 2))))
        assert [cohomology_dim(cc, p) for p in range(3)] == [cochain_dim(p, 2, 2) for p in range(3)]

    def test_plain_h1_is_kernel(self, k4):
        cc = ComplexContext(k4, trivial_rep(k4, 1))
        assert cohomology_dim(cc, 1) == cochain_dim(1, 4, 1) - rank(operator_matrix(cc, 1))

    @settings(max_examples=10)
    @given(st.permutations(range(4)), st.integers(0, 10**6))
    def test_relabeling_invariance(self, k4_ctx, perm, seed):
        P = qzeros((4, 4))
        for i, j in enumerate(perm):
            P[j, i] = 1
        H = k4_family_member(random.Random(seed))
        new_ctx, move = transform_context(k4_ctx, P, P)
        a = ComplexContext.for_crossed(CrossedMap(k4_ctx, H))
        b = ComplexContext.for_crossed(CrossedMap(new_ctx, move(H)))
        assert [cohomology_dim(a, p) for p in range(3)] == [cohomology_dim(b, p) for p in range(3)]


class TestPushforward:
    def test_identity(self, rng):
        mor = CrossedMorphism(qeye(4), qeye(4))
        for p in (1, 2, 3):
            c = random_cochain(rng, p, 4, 4)
            assert pushforward(mor, c) == c

    def test_zero(self):
        mor = CrossedMorphism(qeye(3) * 2, qeye(2))
        assert pushforward(mor, Cochain.zero(2, 3, 2)).is_zero()

    def test_singular(self):
        with pytest.raises(NotInvertibleError):
            pushforward(CrossedMorphism(qzeros((2, 2)), qeye(2)), Cochain.zero(1, 2, 2))

    def test_degree_one_values(self):
        # p(f)(z) = psi_h f(psi_g^-1 z)
        f = Cochain.from_parts(1, 2, 2, G=qarray([[1, 0], [0, 0]]))
        mor = CrossedMorphism(qarray([[1, 1], [0, 1]]), qarray([[0, 1], [1, 0]]))
        out = pushforward(mor, f).G
        assert out.tolist() == [[0, 1], [0, -1]]

    def test_cochain_map_on_trivial_desks(self, rng):
        from lieykit.deformation import (is_nijenhuis, nijenhuis_morphism, trivial_deformation)
        from lieykit.crossed import is_crossed_morphism
        from lieykit.algebra import nonabelian2
        checked = 0
        for seed in range(6):
            desk = trivial_desk(random.Random(seed), nonabelian2())
            H = CrossedMap(desk.ctx, desk.sample(rng))
            X = qarray([1])
            if is_nijenhuis(X, H) or delta0(X, H).is_zero():
                continue
            Ht = CrossedMap(desk.ctx, trivial_deformation(X, H).evaluate(1))
            mor = nijenhuis_morphism(X, desk.ctx, 1)
            assert is_crossed_morphism(mor, Ht, H) == []
            src, dst = ComplexContext.for_crossed(Ht), ComplexContext.for_crossed(H)
            for p in (1, 2):
                c = random_cochain(rng, p, 2, 2)
                assert coboundary(dst, pushforward(mor, c)) == pushforward(mor, coboundary(src, c))
            checked += 1
        assert checked
