from fractions import Fraction

import pytest

from qkzkit.errors import KernelError
from qkzkit.families import ArgShift
from qkzkit.hseries import HSeries
from qkzkit.reps import ComoduleWord
from qkzkit.scalar import ADDITIVE, MULTIPLICATIVE, Scalar
from qkzkit.serialize import (
    RunConfig,
    argshift_to_str,
    decode_instance,
    dict_to_legmatrix,
    dict_to_word,
    encode_instance,
    legmatrix_to_dict,
    scalar_to_str,
    str_to_argshift,
    str_to_scalar,
    word_to_dict,
)

D = 3


class TestScalarRoundTrip:
    def test_round_trip(self):
        w = Scalar.coordinate(D)
        s = (w * w + Scalar.one(D).times_h()) * w.inv()
        assert str_to_scalar(scalar_to_str(s)) == s

    def test_mode_preserved(self):
        s = Scalar.coordinate(D, MULTIPLICATIVE)
        back = str_to_scalar(scalar_to_str(s), MULTIPLICATIVE)
        assert back == s and back.mode == MULTIPLICATIVE


class TestLegMatrixRoundTrip:
    def test_round_trip(self, rat2):
        m = rat2.base
        back = dict_to_legmatrix(legmatrix_to_dict(m))
        assert back == m
        assert back.mode == m.mode and back.D == m.D

    def test_trig_round_trip(self, trig):
        m = trig.base
        assert dict_to_legmatrix(legmatrix_to_dict(m)) == m


class TestArgShiftRoundTrip:
    def test_plain(self):
        a = ArgShift.of(Fraction(5, 3), D)
        assert str_to_argshift(argshift_to_str(a), D) == a

    def test_with_h_part(self):
        a = ArgShift(Fraction(2), HSeries.h(D).scale(Fraction(7, 2)))
        assert str_to_argshift(argshift_to_str(a), D) == a


class TestWordRoundTrip:
    def test_round_trip(self):
        w = ComoduleWord.of([Fraction(0), Fraction(1, 2)], D)
        assert dict_to_word(word_to_dict(w), D) == w

    def test_unknown_field_rejected(self):
        with pytest.raises(KernelError, match="unknown word fields"):
            dict_to_word({"factors": [], "extra": 1}, D)


class TestRunConfig:
    def test_round_trip(self):
        cfg = RunConfig(
            "rational", 2, 3, suite="qkz",
            instances=[{"points": ["0", "1"], "words": [
                {"factors": ["0"]}, {"factors": ["0"]}
            ], "K": "1"}],
            jobs=2,
        )
        again = RunConfig.from_dict(cfg.to_dict())
        assert again.to_dict() == cfg.to_dict()

    def test_unknown_config_field_rejected(self):
        with pytest.raises(KernelError, match="unknown config fields"):
            RunConfig.from_dict({"family": "rational", "wat": 1})

    def test_unknown_instance_field_rejected(self):
        with pytest.raises(KernelError, match="unknown instance fields"):
            RunConfig.from_dict({
                "family": "rational",
                "instances": [{"points": [], "words": [], "seed": 3}],
            })

    def test_unknown_suite_rejected(self):
        with pytest.raises(KernelError, match="unknown suite"):
            RunConfig("rational", 2, 3, suite="everything")


class TestInstanceRoundTrip:
    def test_encode_decode(self, nf_rat2):
        nf = nf_rat2
        raw = {
            "points": ["0", "1", "5/2"],
            "words": [{"factors": ["0"]}] * 3,
            "K": "1",
        }
        inst = decode_instance(raw, nf, nf.D)
        encoded = encode_instance(inst)
        again = decode_instance(encoded, nf, nf.D)
        assert again.z == inst.z
        assert again.words == inst.words
        assert again.K == inst.K
