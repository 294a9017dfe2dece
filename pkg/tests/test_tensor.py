from fractions import Fraction

import pytest

from qkzkit.errors import ShapeMismatch, SingularMatrix
from qkzkit.ratfn import RF_ONE, RF_ZERO, RatFn
from qkzkit.scalar import Scalar
from qkzkit.tensor import (
    LegMatrix,
    LegShape,
    kernel_basis,
    rref,
    solve_linear,
)

D = 3


def rf(c):
    return RatFn.from_fraction(Fraction(c))


def sc(c):
    return Scalar.const(Fraction(c), D)


def sigma(n=2):
    return LegMatrix.from_leg_permutation(LegShape([n, n]), (1, 0), D)


class TestLegShape:
    def test_ravel_unravel(self):
        shape = LegShape([2, 3, 2])
        for flat in range(shape.total):
            assert shape.ravel(shape.unravel(flat)) == flat

    def test_strides_row_major(self):
        shape = LegShape([2, 3])
        assert shape.ravel((1, 2)) == 5


class TestPermutation:
    def test_sigma_squares_to_identity(self):
        s = sigma()
        assert s * s == LegMatrix.identity(LegShape([2, 2]), D)

    def test_sigma_action(self):
        s = sigma()
        shape = LegShape([2, 2])
        vec = [sc(i) for i in range(4)]
        out = s.apply(vec)
        # basis vector e_i (x) e_j maps to e_j (x) e_i
        for i in range(2):
            for j in range(2):
                assert out[shape.ravel((i, j))] == vec[shape.ravel((j, i))]


class TestEmbed:
    def test_identity_embeds_to_identity(self):
        small = LegMatrix.identity(LegShape([2, 2]), D)
        big = LegShape([2, 2, 2])
        assert small.embed(big, (1, 3)) == LegMatrix.identity(big, D)

    def test_embedding_commutes_on_disjoint_legs(self):
        s = sigma()
        big = LegShape([2] * 4)
        a = s.embed(big, (1, 2))
        b = s.embed(big, (3, 4))
        assert a * b == b * a

    def test_leg_count_mismatch(self):
        with pytest.raises(ShapeMismatch):
            sigma().embed(LegShape([2, 2, 2]), (1,))


class TestPartialTranspose:
    def test_involution(self):
        m = sigma() + LegMatrix.identity(LegShape([2, 2]), D).mul_scalar(
            Scalar.coordinate(D)
        )
        for leg in (1, 2):
            assert m.partial_transpose(leg).partial_transpose(leg) == m

    def test_transposes_commute(self):
        m = sigma()
        assert (
            m.partial_transpose(1).partial_transpose(2)
            == m.partial_transpose(2).partial_transpose(1)
        )


class TestInverse:
    def test_inverse_of_unit_matrix(self):
        w = Scalar.coordinate(D)
        ident = LegMatrix.identity(LegShape([2, 2]), D)
        m = ident.mul_scalar(Scalar.one(D) + w.inv().times_h()) + sigma(
        ).mul_scalar(w.times_h(2))
        assert m * m.inv() == ident
        assert m.inv() * m == ident

    def test_singular_raises(self):
        z = LegMatrix.zero(LegShape([2, 2]), D)
        with pytest.raises(SingularMatrix):
            z.inv()


class TestTheta:
    def test_theta_is_transposed_inverse(self):
        m = sigma().mul_scalar(Scalar.coordinate(D)) + LegMatrix.identity(
            LegShape([2, 2]), D
        )
        assert m.theta() == m.inv().partial_transpose(1)


class TestNullspace:
    def test_symmetric_kernel(self):
        # kernel of (sigma - 1) is the symmetric subspace, dimension 3
        s = sigma()
        ident = LegMatrix.identity(LegShape([2, 2]), D)
        basis = (s - ident).nullspace()
        assert len(basis) == 3
        for vec in basis:
            assert all(x.is_zero for x in (s - ident).apply(vec))

    def test_antisymmetric_kernel(self):
        # kernel of (sigma + 1) is the antisymmetric line, dimension 1
        s = sigma()
        ident = LegMatrix.identity(LegShape([2, 2]), D)
        basis = (s + ident).nullspace()
        assert len(basis) == 1
        vec = basis[0]
        shape = LegShape([2, 2])
        assert vec[shape.ravel((0, 1))] == -vec[shape.ravel((1, 0))]
        assert vec[shape.ravel((0, 0))].is_zero
        assert vec[shape.ravel((1, 1))].is_zero

    def test_nullspace_exact_with_h_corrections(self):
        # a matrix whose kernel needs an h-dependent lift
        w = Scalar.coordinate(D)
        s = sigma()
        ident = LegMatrix.identity(LegShape([2, 2]), D)
        m = (s - ident) + ident.mul_scalar(w.times_h()) - ident.mul_scalar(
            w.times_h()
        )  # still sigma - 1, sanity form
        basis = m.nullspace()
        assert len(basis) == 3

    def test_invertible_has_no_kernel(self):
        assert sigma().nullspace() == []


class TestFieldLinearAlgebra:
    def test_rref_pivots(self):
        rows = [[rf(1), rf(2)], [rf(2), rf(4)]]
        pivots = rref(rows, 2)
        assert pivots == [0]
        assert rows[0] == [rf(1), rf(2)]

    def test_kernel_basis_oracle(self):
        mat = [[rf(1), rf(2), rf(3)], [rf(2), rf(4), rf(6)]]
        basis = kernel_basis(mat, 3)
        assert len(basis) == 2
        for v in basis:
            for row in mat:
                acc = RF_ZERO
                for a, b in zip(row, v):
                    acc = acc + a * b
                assert acc == RF_ZERO

    def test_solve_linear(self):
        mat = [[rf(2), rf(0)], [rf(0), rf(3)]]
        sol = solve_linear(mat, [rf(4), rf(9)])
        assert sol == [rf(2), rf(3)]

    def test_solve_linear_inconsistent(self):
        mat = [[rf(1), rf(1)], [rf(2), rf(2)]]
        assert solve_linear(mat, [rf(1), rf(3)]) is None
