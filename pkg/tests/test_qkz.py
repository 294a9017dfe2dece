from fractions import Fraction

import pytest

from qkzkit.errors import ShapeMismatch
from qkzkit.families import ArgShift
from qkzkit.hseries import HSeries
from qkzkit.qkz import (
    QKZInstance,
    build_nabla,
    check_braiding_equivariance,
    check_commutativity_at_zero_step,
    check_flatness,
    check_quasiclassical,
    check_translation_invariance,
    first_order_solution,
    residual_qkz,
)
from qkzkit.reps import ComoduleWord
from qkzkit.scalar import Scalar


def make_instance(nf, n=3, second_base=False):
    D = nf.D
    neutral = Fraction(0) if nf.mode == "additive" else Fraction(1)
    words = tuple(ComoduleWord.of([neutral], D) for _ in range(n))
    if nf.mode == "additive":
        zs = [Fraction(0), Fraction(1), Fraction(5, 2), Fraction(9, 2)]
        if second_base:
            zs = [Fraction(1, 3), Fraction(3, 2), Fraction(7, 2), Fraction(6)]
    else:
        zs = [Fraction(1), Fraction(2), Fraction(5), Fraction(11)]
        if second_base:
            zs = [Fraction(3), Fraction(7), Fraction(13), Fraction(29)]
    z = tuple(ArgShift.of(c, D) for c in zs[:n])
    return QKZInstance(nf, z, words, HSeries.constant(1, D))


class TestInstance:
    def test_word_count_must_match(self, nf_rat2):
        nf = nf_rat2
        inst = make_instance(nf, 2)
        with pytest.raises(ShapeMismatch):
            QKZInstance(nf, inst.z, inst.words[:1], inst.K)

    def test_kappa(self, nf_rat2):
        inst = make_instance(nf_rat2, 2)
        assert inst.kappa.constant_part == 1 + nf_rat2.N

    def test_regular(self, nf_rat2, nf_trig):
        for nf in (nf_rat2, nf_trig):
            make_instance(nf, 3).check_regular()

    def test_swapped_involution(self, nf_rat2):
        inst = make_instance(nf_rat2, 3)
        again = inst.swapped(1).swapped(1)
        assert again.z == inst.z and again.words == inst.words


class TestNabla:
    def test_leading_grade_is_identity(self, nf_rat2):
        inst = make_instance(nf_rat2, 3)
        for i in range(1, 4):
            nab = build_nabla(inst, i)
            ident = nab.grade_matrix(0)
            assert ident == inst.nf.identity(3)

    def test_invertible(self, nf_rat2):
        inst = make_instance(nf_rat2, 2)
        nab = build_nabla(inst, 1)
        ident = inst.nf.identity(2)
        assert nab * nab.inv() == ident


class TestFlatness:
    @pytest.mark.parametrize("name", ["nf_rat2", "nf_trig"])
    @pytest.mark.parametrize("n", [2, 3])
    def test_exact(self, name, n, request):
        nf = request.getfixturevalue(name)
        inst = make_instance(nf, n)
        assert all(g is None for _, g in check_flatness(inst))

    def test_second_base_point(self, nf_rat2):
        inst = make_instance(nf_rat2, 3, second_base=True)
        assert all(g is None for _, g in check_flatness(inst))

    def test_zero_step_commutativity(self, nf_rat2):
        inst = make_instance(nf_rat2, 3)
        assert all(
            g is None for _, g in check_commutativity_at_zero_step(inst)
        )

    def test_translation_invariance(self, nf_rat2):
        inst = make_instance(nf_rat2, 3)
        assert check_translation_invariance(inst, Fraction(7, 3))


class TestEquivariance:
    @pytest.mark.parametrize("name", ["nf_rat2", "nf_trig"])
    def test_all_indices(self, name, request):
        nf = request.getfixturevalue(name)
        inst = make_instance(nf, 3)
        for i in range(1, 4):
            assert check_braiding_equivariance(inst, i) is None


class TestQuasiclassical:
    @pytest.mark.parametrize("name", ["nf_rat2", "nf_trig"])
    def test_h1_grade_additivity(self, name, request):
        nf = request.getfixturevalue(name)
        inst = make_instance(nf, 3)
        for i in range(1, 4):
            assert check_quasiclassical(inst, i) is None


class TestResidual:
    def test_first_order_solution(self, nf_rat2):
        nf = nf_rat2
        inst = make_instance(nf, 2)
        total = inst.fiber_shape().total
        v = [Scalar.const(Fraction(k + 1), nf.D, nf.mode) for k in range(total)]
        fmap = first_order_solution(inst, 1, v)
        res = residual_qkz(inst, fmap, 1)
        grades = [s.first_nonzero_grade() for s in res]
        worst = min((g for g in grades if g is not None), default=None)
        # exact at grades 0 and 1; the ansatz stops there, so grade 2 fails
        assert worst is not None and worst >= 2

    def test_constant_map_fails_at_grade_one(self, nf_rat2):
        nf = nf_rat2
        inst = make_instance(nf, 2)
        total = inst.fiber_shape().total
        v = [Scalar.const(Fraction(k + 1), nf.D, nf.mode) for k in range(total)]
        res = residual_qkz(inst, lambda z: list(v), 1)
        grades = [s.first_nonzero_grade() for s in res]
        worst = min((g for g in grades if g is not None), default=None)
        assert worst == 1
