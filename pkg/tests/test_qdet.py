from fractions import Fraction

import pytest

from qkzkit.errors import NonUnitError
from qkzkit.families import ArgShift, shift_scalar
from qkzkit.hseries import HSeries
from qkzkit.qdet import (
    _perm_sign,
    check_pairing_qdet,
    compute_rho,
    find_qdet_vector,
    ladder_shifts,
    solve_f0,
)
from qkzkit.ratfn import RatFn
from qkzkit.scalar import Scalar


class TestLadderShifts:
    def test_symmetric_around_zero(self):
        for N in (2, 3, 4):
            shifts = ladder_shifts(N, 3)
            total = shifts[0]
            for s in shifts[1:]:
                total = total + s
            assert total.is_zero

    def test_spacing(self):
        shifts = ladder_shifts(3, 3)
        h = HSeries.h(3)
        assert shifts[1] - shifts[0] == h
        assert shifts[2] - shifts[1] == h


class TestEigenvector:
    @pytest.mark.parametrize("name", ["rat2", "rat3"])
    def test_rational_coeffs_are_permutation_signs(self, name, request):
        F = request.getfixturevalue(name)
        qd = find_qdet_vector(F)
        assert set(qd.coeffs) == {
            idx for idx in qd.coeffs if sorted(idx) == list(range(F.N))
        }
        for idx, c in qd.coeffs.items():
            want = Scalar.const(Fraction(_perm_sign(list(idx))), F.D, F.mode)
            assert c == want

    def test_pivot_coefficient_is_one(self, trig):
        qd = find_qdet_vector(trig)
        assert qd.coeffs[(0, 1)] == Scalar.one(trig.D, trig.mode)

    def test_eigenvalue_is_unit(self, rat2, trig):
        for F in (rat2, trig):
            qd = find_qdet_vector(F)
            assert qd.eigenvalue.is_unit


class TestRho:
    @pytest.mark.parametrize("name", ["rat2", "rat3", "trig"])
    def test_rho_is_one_plus_higher_order(self, name, request):
        F = request.getfixturevalue(name)
        qd = find_qdet_vector(F)
        rho = compute_rho(F, qd)
        assert rho.grades[0] == RatFn.from_fraction(1)
        assert rho.is_unit


class TestNormalizingScalar:
    @pytest.mark.parametrize("name", ["nf_rat2", "nf_trig"])
    def test_ladder_product_equation(self, name, request):
        nf = request.getfixturevalue(name)
        F = nf.family
        prod = Scalar.one(F.D, F.mode)
        for s in ladder_shifts(F.N, F.D):
            prod = prod * shift_scalar(nf.f0, ArgShift.of_h(s), F.hshift_scale)
        assert prod == nf.rho.inv()

    def test_target_must_be_unit_normalized(self, rat2):
        with pytest.raises(NonUnitError):
            solve_f0(rat2, Scalar.const(Fraction(2), rat2.D, rat2.mode))

    def test_f0_leading_one(self, nf_rat2, nf_trig):
        for nf in (nf_rat2, nf_trig):
            assert nf.f0.grades[0] == RatFn.from_fraction(1)


class TestNormalizedFamily:
    @pytest.mark.parametrize("name", ["nf_rat2", "nf_rat3", "nf_trig"])
    def test_rescaled_determinant_acts_as_one(self, name, request):
        nf = request.getfixturevalue(name)
        assert nf.normalized_rho() == Scalar.one(nf.D, nf.mode)

    @pytest.mark.parametrize("name", ["nf_rat2", "nf_trig"])
    def test_unitarity_exact(self, name, request):
        nf = request.getfixturevalue(name)
        assert nf.unitarity_scalar() == Scalar.one(nf.D, nf.mode)

    @pytest.mark.parametrize("name", ["nf_rat2", "nf_trig"])
    def test_crossing_on_the_nose(self, name, request):
        nf = request.getfixturevalue(name)
        assert nf.crossing_defect() is None


class TestPairing:
    @pytest.mark.parametrize("name", ["nf_rat2", "nf_trig"])
    def test_identity_with_normalization(self, name, request):
        nf = request.getfixturevalue(name)
        pts1 = [Fraction(2)]
        pts2 = (
            [Fraction(1), Fraction(5, 2)]
            if nf.mode == "additive"
            else [Fraction(2), Fraction(3)]
        )
        assert check_pairing_qdet(nf, pts1) is None
        assert check_pairing_qdet(nf, pts2) is None

    @pytest.mark.parametrize("name", ["nf_rat2", "nf_trig"])
    def test_unnormalized_control_fails(self, name, request):
        nf = request.getfixturevalue(name)
        pts = (
            [Fraction(1), Fraction(5, 2)]
            if nf.mode == "additive"
            else [Fraction(2), Fraction(3)]
        )
        grade = check_pairing_qdet(nf, pts, raw=True)
        assert grade is not None and grade >= 1
