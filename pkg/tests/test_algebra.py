import random

import pytest
from hypothesis import given, strategies as st

from lieykit.algebra import (LYAlgebra, NotALieAlgebraError, StructureError, abelian, bracket2,
                             bracket3, center, center_membership_literal, check_axioms,
                             direct_sum, filiform4, from_lie_algebra, heisenberg, is_homomorphism,
                             k4_example, ly_algebra, nonabelian2, sl2, transform)
from lieykit.generators import _central_algebra, random_unimodular
from lieykit.linalg import qarray, qeye, qzeros


def e(i, m=4):
    v = qzeros(m)
    v[i - 1] = 1
    return v


def lie_catalogue():
    return [abelian(2), nonabelian2(), heisenberg(), sl2(), filiform4()]


@st.composite
def lie_algebras(draw):
    """Known Lie algebras, direct sums of them, in a random integral basis."""
    pool = lie_catalogue()
    g = pool[draw(st.integers(0, len(pool) - 1))]
    if draw(st.booleans()):
        g = direct_sum(g, pool[draw(st.integers(0, 2))])
    seed = draw(st.integers(0, 10**6))
    if g.dim > 5:
        return g
    return transform(g, random_unimodular(random.Random(seed), g.dim))


@st.composite
def ly_algebras(draw):
    if draw(st.booleans()):
        return from_lie_algebra(draw(lie_algebras()).binary)
    rng = random.Random(draw(st.integers(0, 10**6)))
    return _central_algebra(rng, draw(st.integers(1, 3)), draw(st.integers(1, 2)), "central")


class TestBrackets:
    def test_k4_binary(self, k4):
        assert list(bracket2(k4, e(1), e(2))) == [0, 0, 0, 2]
        assert not any(bracket2(k4, e(1), e(3)))

    def test_k4_ternary(self, k4):
        assert list(bracket3(k4, e(1), e(2), e(1))) == [0, 0, 0, 1]
        assert list(bracket3(k4, e(2), e(1), e(1))) == [0, 0, 0, -1]
        assert not any(bracket3(k4, e(1), e(2), e(2)))

    @given(st.lists(st.integers(-5, 5), min_size=4, max_size=4),
           st.lists(st.integers(-5, 5), min_size=4, max_size=4))
    def test_repeated_argument_vanishes(self, x, z):
        k4 = k4_example()
        assert not any(bracket2(k4, x, x))
        assert not any(bracket3(k4, x, x, z))

    def test_dimension_mismatch(self, k4):
        with pytest.raises(ValueError):
            bracket2(k4, e(1, 3), e(2, 3))


class TestConstruction:
    def test_mirror_filled(self):
        alg = ly_algebra(4, {(1, 2): {4: 2}})
        assert alg.binary[1, 0, 3] == -2

    def test_consistent_double_declaration(self):
        alg = ly_algebra(4, {(1, 2): {4: 2}, (2, 1): {4: -2}})
        assert (alg.binary == k4_example().binary).all()

    def test_inconsistent_double_declaration(self):
        with pytest.raises(StructureError):
            ly_algebra(4, {(1, 2): {4: 2}, (2, 1): {4: 2}})

    def test_broken_ternary_antisymmetry(self, k4):
        d = k4.ternary.copy()
        d[1, 0, 0, 3] = 1
        with pytest.raises(StructureError, match="ternary"):
            LYAlgebra(k4.binary, d)

    def test_diagonal_must_vanish(self):
        with pytest.raises(StructureError):
            ly_algebra(2, {(1, 1): {2: 1}})


class TestAxioms:
    def test_k4(self, k4):
        assert check_axioms(k4) == []

    def test_abelian(self):
        assert check_axioms(abelian(3)) == []

    def test_empty(self):
        assert check_axioms(abelian(0)) == []

    def test_lie_part_alone_is_not_enough(self):
        # the Heisenberg bracket with an arbitrary ternary bracket breaks LY1
        c = qzeros((3, 3, 3))
        c[0, 1, 2], c[1, 0, 2] = 1, -1
        d = qzeros((3,) * 4)
        d[0, 1, 0, 0], d[1, 0, 0, 0] = 1, -1
        viol = check_axioms(LYAlgebra(c, d))
        assert viol and all(min(v.witness) >= 1 for v in viol)

    @given(ly_algebras())
    def test_generated_algebras_pass(self, alg):
        assert check_axioms(alg) == []

    @given(ly_algebras(), st.data())
    def test_identities_on_random_vectors(self, alg, data):
        m = alg.dim
        vec = st.lists(st.integers(-3, 3), min_size=m, max_size=m).map(qarray)
        x, y, z, w, t = (data.draw(vec) for _ in range(5))
        b2 = lambda a, b: bracket2(alg, a, b)
        b3 = lambda a, b, c: bracket3(alg, a, b, c)
        cyc = [(x, y, z), (y, z, x), (z, x, y)]
        assert not any(sum(b2(b2(a, b), c) + b3(a, b, c) for a, b, c in cyc))
        assert not any(sum(b3(b2(a, b), c, w) for a, b, c in cyc))
        assert not any(b3(x, y, b2(z, w)) - b2(b3(x, y, z), w) - b2(z, b3(x, y, w)))
        lhs = b3(x, y, b3(z, w, t))
        rhs = b3(b3(x, y, z), w, t) + b3(z, b3(x, y, w), t) + b3(z, w, b3(x, y, t))
        assert not any(lhs - rhs)


class TestCenter:
    def test_k4(self, k4):
        z = center(k4)
        assert z.dim == 2 and z.contains(e(3)) and z.contains(e(4))

    def test_abelian(self):
        assert center(abelian(3)).dim == 3

    def test_sl2(self):
        assert center(sl2()).dim == 0

    def test_literal_membership(self, k4):
        assert center_membership_literal(k4, e(3))
        assert not center_membership_literal(k4, e(1))
        assert center_membership_literal(k4, qzeros(4))

    @given(ly_algebras())
    def test_strict_center_is_literally_central(self, alg):
        for v in center(alg).basis:
            assert center_membership_literal(alg, v)


class TestHomomorphism:
    def test_identity(self, k4):
        assert is_homomorphism(qeye(4), k4, k4)

    def test_zero_between_different_algebras(self, k4):
        assert is_homomorphism(qzeros((3, 4)), k4, sl2())

    def test_scaling_e4_fails(self, k4):
        phi = qeye(4)
        phi[3, 3] = 2
        assert not is_homomorphism(phi, k4, k4)

    def test_dimension_mismatch(self, k4):
        with pytest.raises(ValueError):
            is_homomorphism(qeye(3), k4, k4)

    @given(lie_algebras(), st.integers(0, 10**6))
    def test_basis_change_is_isomorphism(self, g, seed):
        p = random_unimodular(random.Random(seed), g.dim)
        assert is_homomorphism(p, transform(g, p), g)


class TestFromLie:
    def test_abelian(self):
        assert from_lie_algebra(qzeros((3, 3, 3))) == abelian(3)

    def test_r2(self):
        alg = nonabelian2()
        assert list(bracket3(alg, e(1, 2), e(2, 2), e(1, 2))) == [0, -1]
        assert list(bracket3(alg, e(1, 2), e(2, 2), e(2, 2))) == [0, 0]

    def test_heisenberg_ternary_vanishes(self):
        assert not heisenberg().ternary.any()

    def test_jacobi_failure(self):
        c = qzeros((3, 3, 3))
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 0)]:
            c[i, j, k], c[j, i, k] = 1, -1
        with pytest.raises(NotALieAlgebraError):
            from_lie_algebra(c)

    @given(lie_algebras())
    def test_output_passes_axioms(self, g):
        assert check_axioms(from_lie_algebra(g.binary)) == []
